//! Block disorder analysis.
//!
//! The embedding path uses only the MSB-sum classifier: a block whose nine
//! most significant bits sum to 4, 5 or 6 is disordered. The DCT, entropy and
//! edge scorers exist for the comparison harness, which turns their scores
//! into a map with [`top_nd_map`] so that every analyzer marks the same
//! number of blocks.

use std::fmt;

use crate::canny;
use crate::dct::DctBasis;
use crate::error::{Error, Result};
use crate::image::{get_bit, BitPlane, BlockGrid, GrayImage, BLOCK, BLOCK_PIXELS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockType {
    Ordered,
    Disordered,
}

impl BlockType {
    pub fn is_disordered(self) -> bool {
        self == BlockType::Disordered
    }
}

/// Count of set MSBs in a block, in `[0, 9]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MsbSum(u8);

impl MsbSum {
    pub fn new(s: u8) -> Option<Self> {
        (s <= 9).then_some(MsbSum(s))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

pub fn msb_sum(block: &[u8; BLOCK_PIXELS]) -> MsbSum {
    MsbSum(block.iter().filter(|&&p| get_bit(p, BitPlane::MSB)).count() as u8)
}

pub fn classify(s: MsbSum) -> BlockType {
    match s.0 {
        4..=6 => BlockType::Disordered,
        _ => BlockType::Ordered,
    }
}

/// Per-block labels in row-major block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongestionMap {
    grid: BlockGrid,
    labels: Vec<BlockType>,
}

impl CongestionMap {
    pub fn new(grid: BlockGrid, labels: Vec<BlockType>) -> Result<Self> {
        if labels.len() != grid.len() {
            return Err(Error::LengthMismatch(labels.len(), grid.len()));
        }
        Ok(Self { grid, labels })
    }

    pub fn grid(&self) -> &BlockGrid {
        &self.grid
    }

    pub fn labels(&self) -> &[BlockType] {
        &self.labels
    }

    pub fn get(&self, index: usize) -> BlockType {
        self.labels[index]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// N_D, the number of disordered blocks.
    pub fn disordered_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_disordered()).count()
    }

    /// One line per block row, `O` for ordered and `D` for disordered.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let blocks_y = rows.len();
        let blocks_x = rows.first().map_or(0, |r| r.len());
        let mut labels = Vec::with_capacity(blocks_x * blocks_y);
        for row in &rows {
            if row.len() != blocks_x {
                return Err(Error::LengthMismatch(row.len(), blocks_x));
            }
            for c in row.chars() {
                labels.push(match c {
                    'O' => BlockType::Ordered,
                    'D' => BlockType::Disordered,
                    other => return Err(Error::MessageChar(other)),
                });
            }
        }
        let grid = BlockGrid::new(blocks_x * BLOCK, blocks_y * BLOCK)?;
        Self::new(grid, labels)
    }
}

impl fmt::Display for CongestionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.labels.chunks(self.grid.blocks_x) {
            for l in row {
                f.write_str(if l.is_disordered() { "D" } else { "O" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// MSB-sum analysis of every block.
pub fn analyze(image: &GrayImage) -> Result<CongestionMap> {
    let grid = image.partition()?;
    let labels = image.blocks(&grid).map(|b| classify(msb_sum(&b))).collect();
    CongestionMap::new(grid, labels)
}

/// Reconstruction error of each block after discarding every AC coefficient
/// of its 3×3 DCT.
pub fn dct_scores(image: &GrayImage) -> Result<Vec<f64>> {
    let grid = image.partition()?;
    let dct = DctBasis::<3>::new();
    Ok(image
        .blocks(&grid)
        .map(|b| {
            let mut m = [[0.0; 3]; 3];
            for (k, &p) in b.iter().enumerate() {
                m[k / 3][k % 3] = p as f64;
            }
            let mut coeffs = dct.forward(&m);
            for (v, row) in coeffs.iter_mut().enumerate() {
                for (u, c) in row.iter_mut().enumerate() {
                    if u + v > 0 {
                        *c = 0.0;
                    }
                }
            }
            let rec = dct.inverse(&coeffs);
            let mut se = 0.0;
            for y in 0..3 {
                for x in 0..3 {
                    let d = m[y][x] - rec[y][x];
                    se += d * d;
                }
            }
            // exact zero for constant blocks, not rounding noise
            if b.iter().all(|&p| p == b[0]) {
                0.0
            } else {
                se / BLOCK_PIXELS as f64
            }
        })
        .collect())
}

/// Shannon entropy (bits) of each block's intensity histogram.
pub fn entropy_scores(image: &GrayImage) -> Result<Vec<f64>> {
    let grid = image.partition()?;
    Ok(image.blocks(&grid).map(|b| block_entropy(&b)).collect())
}

fn block_entropy(block: &[u8; BLOCK_PIXELS]) -> f64 {
    let mut hist = [0u8; 256];
    for &p in block {
        hist[p as usize] += 1;
    }
    let n = BLOCK_PIXELS as f64;
    hist.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Canny edge pixels inside each block.
pub fn edge_scores(image: &GrayImage) -> Result<Vec<u32>> {
    let grid = image.partition()?;
    let edges = canny::canny(image);
    let w = image.width();
    Ok((0..grid.len())
        .map(|i| grid.pixel_coords(i).filter(|&(x, y)| edges[y * w + x]).count() as u32)
        .collect())
}

/// Mark the `n_d` highest-scoring blocks disordered. Ties go to the lower
/// block index.
pub fn top_nd_map(grid: BlockGrid, scores: &[f64], n_d: usize) -> Result<CongestionMap> {
    if scores.len() != grid.len() {
        return Err(Error::LengthMismatch(scores.len(), grid.len()));
    }
    if n_d > scores.len() {
        return Err(Error::DisorderedCount {
            n_d,
            blocks: scores.len(),
        });
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut labels = vec![BlockType::Ordered; scores.len()];
    for &i in &order[..n_d] {
        labels[i] = BlockType::Disordered;
    }
    CongestionMap::new(grid, labels)
}

/// The four analyzers compared by the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Analyzer {
    Dct,
    Entropy,
    Edge,
    MsbSum,
}

impl Analyzer {
    pub const ALL: [Analyzer; 4] = [Analyzer::Dct, Analyzer::Entropy, Analyzer::Edge, Analyzer::MsbSum];

    pub fn name(self) -> &'static str {
        match self {
            Analyzer::Dct => "DCT",
            Analyzer::Entropy => "Entropy",
            Analyzer::Edge => "Edge",
            Analyzer::MsbSum => "Proposed",
        }
    }

    /// Congestion map for this analyzer. Score-based analyzers mark exactly
    /// the N_D found by the MSB-sum analyzer.
    pub fn map(self, image: &GrayImage) -> Result<CongestionMap> {
        let reference = analyze(image)?;
        let n_d = reference.disordered_count();
        let grid = *reference.grid();
        match self {
            Analyzer::MsbSum => Ok(reference),
            Analyzer::Dct => top_nd_map(grid, &dct_scores(image)?, n_d),
            Analyzer::Entropy => top_nd_map(grid, &entropy_scores(image)?, n_d),
            Analyzer::Edge => {
                let scores: Vec<f64> = edge_scores(image)?.into_iter().map(f64::from).collect();
                top_nd_map(grid, &scores, n_d)
            }
        }
    }
}
