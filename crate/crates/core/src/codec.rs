//! Block watermark embedding and blind extraction.
//!
//! One message bit is carried by each complete 3×3 block, in row-major block
//! order. The bit is written into the same bit-plane of all nine pixels, and
//! extraction takes a majority vote over those nine bits. Adaptive modes pick
//! plane 3 for ordered blocks and plane 5 for disordered ones; the enhanced
//! mode also writes the complemented bit into the plane just below.
//!
//! Plane 8 is never written, so the MSB-sum classification of a watermarked
//! image equals that of its host and the extractor recovers the same plane
//! choices without side information.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congestion::{analyze, BlockType, CongestionMap};
use crate::error::{Error, Result};
use crate::image::{get_bit, set_bit, BitPlane, BlockGrid, GrayImage, BLOCK_PIXELS};
use crate::pgm;

/// Plane used for ordered blocks by the adaptive modes.
pub const ORDERED_PLANE: BitPlane = BitPlane::from_const(3);
/// Plane used for disordered blocks by the adaptive modes.
pub const DISORDERED_PLANE: BitPlane = BitPlane::from_const(5);

/// A binary watermark, one bit per block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WatermarkMessage {
    bits: Vec<bool>,
}

impl WatermarkMessage {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Seeded pseudo-random message; identical seeds give identical bits.
    pub fn random(length: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self {
            bits: (0..length).map(|_| rng.gen()).collect(),
        }
    }

    /// Binary logo image flattened row-major, pixels ≥ 128 read as 1.
    pub fn from_logo(logo: &GrayImage) -> Self {
        Self {
            bits: logo.pixels().iter().map(|&p| p >= 128).collect(),
        }
    }

    /// Render as a logo image (1 → 255, 0 → 0).
    pub fn to_logo(&self, width: usize, height: usize) -> Result<GrayImage> {
        GrayImage::new(width, height, self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect())
    }

    /// Read a message file: either a line of `0`/`1` characters, or a PGM
    /// logo when the file starts with a PGM magic number.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let data = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        if data.starts_with(b"P5") || data.starts_with(b"P2") {
            return Ok(Self::from_logo(&pgm::decode(&data)?));
        }
        String::from_utf8_lossy(&data).parse()
    }

    pub fn store(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, format!("{self}\n")).map_err(|e| Error::io(path, e))
    }
}

impl FromStr for WatermarkMessage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::MessageChar(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for WatermarkMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// How a block's target plane is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbedMode {
    /// Every block uses the same plane (1 to 7).
    FixedPlane(BitPlane),
    BasicAdaptive,
    EnhancedAdaptive,
}

impl EmbedMode {
    pub fn fixed(plane: u8) -> Result<Self> {
        let plane = BitPlane::new(plane)?;
        if plane == BitPlane::MSB {
            return Err(Error::MsbPlane);
        }
        Ok(EmbedMode::FixedPlane(plane))
    }

    pub fn is_enhanced(self) -> bool {
        self == EmbedMode::EnhancedAdaptive
    }

    pub fn is_adaptive(self) -> bool {
        !matches!(self, EmbedMode::FixedPlane(_))
    }

    /// Plane carrying the message bit for a block of the given type.
    pub fn target_plane(self, block: BlockType) -> BitPlane {
        match (self, block) {
            (EmbedMode::FixedPlane(p), _) => p,
            (_, BlockType::Ordered) => ORDERED_PLANE,
            (_, BlockType::Disordered) => DISORDERED_PLANE,
        }
    }

    /// Short name used on the command line and in reports.
    pub fn name(self) -> String {
        match self {
            EmbedMode::FixedPlane(p) => format!("plane{}", p.get()),
            EmbedMode::BasicAdaptive => "basic".into(),
            EmbedMode::EnhancedAdaptive => "enhanced".into(),
        }
    }
}

impl fmt::Display for EmbedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for EmbedMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(EmbedMode::BasicAdaptive),
            "enhanced" => Ok(EmbedMode::EnhancedAdaptive),
            _ => match s.strip_prefix("plane").and_then(|p| p.parse::<u8>().ok()) {
                Some(p) => EmbedMode::fixed(p),
                None => Err(Error::EmbedMode(s.to_string())),
            },
        }
    }
}

/// Write `w` into `plane` and, when `enhanced`, `!w` into the plane below.
#[inline]
pub fn embed_pixel(pixel: u8, w: bool, plane: BitPlane, enhanced: bool) -> u8 {
    let out = set_bit(pixel, plane, w);
    match (enhanced, plane.lower()) {
        (true, Some(lower)) => set_bit(out, lower, !w),
        _ => out,
    }
}

fn check_grid(image: &GrayImage, map: &CongestionMap) -> Result<BlockGrid> {
    let grid = image.partition()?;
    let other = map.grid();
    if (grid.blocks_x, grid.blocks_y) != (other.blocks_x, other.blocks_y) {
        return Err(Error::LengthMismatch(grid.len(), map.len()));
    }
    Ok(grid)
}

fn check_length(map: &CongestionMap, message: &WatermarkMessage) -> Result<()> {
    if message.len() != map.len() {
        return Err(Error::MessageLength {
            got: message.len(),
            blocks: map.len(),
        });
    }
    Ok(())
}

/// Embed `message` into `image`.
pub fn embed(image: &GrayImage, message: &WatermarkMessage, mode: EmbedMode) -> Result<GrayImage> {
    if let EmbedMode::FixedPlane(p) = mode {
        if p == BitPlane::MSB {
            return Err(Error::MsbPlane);
        }
    }
    let map = analyze(image)?;
    embed_with_map(image, message, &map, mode)
}

/// Embed using an externally supplied congestion map.
pub fn embed_with_map(
    image: &GrayImage,
    message: &WatermarkMessage,
    map: &CongestionMap,
    mode: EmbedMode,
) -> Result<GrayImage> {
    let grid = check_grid(image, map)?;
    check_length(map, message)?;
    let mut out = image.clone();
    for (index, &w) in message.bits().iter().enumerate() {
        let plane = mode.target_plane(map.get(index));
        if plane == BitPlane::MSB {
            return Err(Error::MsbPlane);
        }
        for (x, y) in grid.pixel_coords(index) {
            out.set(x, y, embed_pixel(image.get(x, y), w, plane, mode.is_enhanced()));
        }
    }
    Ok(out)
}

/// Majority vote over the nine bits of `plane`.
pub fn vote(block: &[u8; BLOCK_PIXELS], plane: BitPlane) -> bool {
    block.iter().filter(|&&p| get_bit(p, plane)).count() > BLOCK_PIXELS / 2
}

/// Blind adaptive extraction: the map is recomputed from `image` itself.
pub fn extract(image: &GrayImage) -> Result<WatermarkMessage> {
    let map = analyze(image)?;
    extract_with_map(image, &map, EmbedMode::BasicAdaptive)
}

/// Extraction matching any embedding mode.
pub fn extract_mode(image: &GrayImage, mode: EmbedMode) -> Result<WatermarkMessage> {
    let map = analyze(image)?;
    extract_with_map(image, &map, mode)
}

pub fn extract_with_map(image: &GrayImage, map: &CongestionMap, mode: EmbedMode) -> Result<WatermarkMessage> {
    let grid = check_grid(image, map)?;
    Ok(WatermarkMessage::new(
        (0..grid.len())
            .map(|i| vote(&image.block(&grid, i), mode.target_plane(map.get(i))))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn noise_image(w: usize, h: usize, seed: u64) -> GrayImage {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GrayImage::from_fn(w, h, |_, _| rng.gen())
    }

    #[test]
    fn ordered_zero_block_gets_four() {
        let img = GrayImage::filled(3, 3, 0);
        let out = embed(&img, &WatermarkMessage::new(vec![true]), EmbedMode::BasicAdaptive).unwrap();
        assert_eq!(out.pixels(), &[4; 9]);
    }

    #[test]
    fn enhanced_disordered_pixel() {
        // 108 in a block with S = 5, so plane 5 is the target
        let block = [108, 200, 200, 200, 200, 0, 0, 0, 0];
        let img = GrayImage::new(3, 3, block.to_vec()).unwrap();
        let out = embed(&img, &WatermarkMessage::new(vec![true]), EmbedMode::EnhancedAdaptive).unwrap();
        assert_eq!(out.get(0, 0), 116);
        assert_eq!(out.get(0, 0) as i32 - 108, 8);
    }

    #[test]
    fn rewriting_existing_bits_is_identity() {
        let mut img = noise_image(12, 9, 3);
        let grid = img.partition().unwrap();
        // force every block's plane-3 bits to agree
        let mut bits = Vec::new();
        for i in 0..grid.len() {
            let w = i % 3 == 0;
            for (x, y) in grid.pixel_coords(i) {
                let p = img.get(x, y);
                img.set(x, y, set_bit(p, ORDERED_PLANE, w));
            }
            bits.push(w);
        }
        let out = embed(&img, &WatermarkMessage::new(bits), EmbedMode::fixed(3).unwrap()).unwrap();
        assert_eq!(out, img);
    }

    #[test]
    fn vote_threshold() {
        let five = [4, 4, 4, 4, 4, 0, 0, 0, 0];
        assert!(vote(&five, ORDERED_PLANE));
        let four = [4, 4, 4, 4, 0, 0, 0, 0, 0];
        assert!(!vote(&four, ORDERED_PLANE));
        let img = GrayImage::filled(3, 3, 4);
        assert_eq!(extract(&img).unwrap().bits(), &[true]);
    }

    #[test]
    fn contract_errors() {
        let img = GrayImage::filled(9, 9, 0);
        assert!(matches!(
            embed(&img, &WatermarkMessage::new(vec![true; 8]), EmbedMode::BasicAdaptive),
            Err(Error::MessageLength { got: 8, blocks: 9 })
        ));
        assert!(matches!(EmbedMode::fixed(8), Err(Error::MsbPlane)));
        assert!(matches!(
            embed(&img, &WatermarkMessage::new(vec![true; 9]), EmbedMode::FixedPlane(BitPlane::MSB)),
            Err(Error::MsbPlane)
        ));
        assert!(extract(&GrayImage::filled(2, 2, 0)).is_err());
    }

    #[test]
    fn margin_untouched() {
        let img = noise_image(11, 10, 9);
        let msg = WatermarkMessage::random(9, 1);
        let out = embed(&img, &msg, EmbedMode::EnhancedAdaptive).unwrap();
        for y in 0..10 {
            for x in 0..11 {
                if x >= 9 || y >= 9 {
                    assert_eq!(out.get(x, y), img.get(x, y));
                }
            }
        }
    }

    #[test]
    fn message_text_and_modes() {
        let m: WatermarkMessage = "0110 1\n".parse().unwrap();
        assert_eq!(m.bits(), &[false, true, true, false, true]);
        assert_eq!(m.to_string(), "01101");
        assert!("01x".parse::<WatermarkMessage>().is_err());
        for s in ["plane3", "plane5", "basic", "enhanced"] {
            assert_eq!(s.parse::<EmbedMode>().unwrap().name(), s);
        }
        assert!("plane8".parse::<EmbedMode>().is_err());
    }

    #[test]
    fn logo_threshold() {
        let logo = GrayImage::new(2, 2, vec![0, 127, 128, 255]).unwrap();
        assert_eq!(WatermarkMessage::from_logo(&logo).bits(), &[false, false, true, true]);
    }

    #[test]
    fn random_is_seeded_and_balanced() {
        let a = WatermarkMessage::random(10_000, 7);
        assert_eq!(a, WatermarkMessage::random(10_000, 7));
        assert_ne!(a, WatermarkMessage::random(10_000, 8));
        // 4 sigma of a fair binomial
        assert!((a.ones() as i64 - 5000).abs() < 200);
    }

    #[test]
    fn message_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let msg = WatermarkMessage::random(40, 2);
        msg.store(dir.path().join("m.txt")).unwrap();
        assert_eq!(WatermarkMessage::load(dir.path().join("m.txt")).unwrap(), msg);
        let logo = msg.to_logo(8, 5).unwrap();
        pgm::store_image(&logo, dir.path().join("logo.pgm")).unwrap();
        assert_eq!(WatermarkMessage::load(dir.path().join("logo.pgm")).unwrap(), msg);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip_all_modes(bw in 1usize..12, bh in 1usize..12, extra_w in 0usize..3, extra_h in 0usize..3, seed: u64) {
            let img = noise_image(bw * 3 + extra_w, bh * 3 + extra_h, seed);
            let msg = WatermarkMessage::random(bw * bh, seed ^ 0x5555);
            for mode in [EmbedMode::fixed(3).unwrap(), EmbedMode::fixed(5).unwrap(), EmbedMode::BasicAdaptive, EmbedMode::EnhancedAdaptive] {
                let out = embed(&img, &msg, mode).unwrap();
                prop_assert_eq!(&extract_mode(&out, mode).unwrap(), &msg);
                prop_assert_eq!(analyze(&out).unwrap(), analyze(&img).unwrap());
            }
        }

        #[test]
        fn plane_isolation(seed: u64) {
            let img = noise_image(15, 15, seed);
            let msg = WatermarkMessage::random(25, seed);
            let basic = embed(&img, &msg, EmbedMode::BasicAdaptive).unwrap();
            let enh = embed(&img, &msg, EmbedMode::EnhancedAdaptive).unwrap();
            let map = analyze(&img).unwrap();
            let grid = *map.grid();
            for i in 0..grid.len() {
                let (basic_mask, enh_mask) = match map.get(i) {
                    BlockType::Ordered => (0b0000_0100u8, 0b0000_0110u8),
                    BlockType::Disordered => (0b0001_0000, 0b0001_1000),
                };
                for (x, y) in grid.pixel_coords(i) {
                    prop_assert_eq!((img.get(x, y) ^ basic.get(x, y)) & !basic_mask, 0);
                    prop_assert_eq!((img.get(x, y) ^ enh.get(x, y)) & !enh_mask, 0);
                }
            }
        }
    }
}
