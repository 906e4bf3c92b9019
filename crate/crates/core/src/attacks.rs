//! Deterministic image attacks: JPEG-style requantization, salt-and-pepper
//! noise and median filtering.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dct::DctBasis;
use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Standard JPEG luminance quantization table (quality 50), row-major.
pub const LUMINANCE_TABLE: [u16; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
];

/// Luminance table scaled for `quality` with the IJG mapping.
pub fn quant_table(quality: u32) -> Result<[u16; 64]> {
    if !(1..=100).contains(&quality) {
        return Err(Error::Quality(quality));
    }
    let scale = if quality < 50 { 5000 / quality } else { 200 - 2 * quality };
    Ok(LUMINANCE_TABLE.map(|q| ((q as u32 * scale + 50) / 100).clamp(1, 255) as u16))
}

/// Lossy JPEG round trip without entropy coding: per 8×8 tile, level shift,
/// DCT, quantize/dequantize, inverse DCT, round and clamp. Partial edge tiles
/// are padded by replication and the padding is discarded afterwards.
pub fn jpeg_attack(image: &GrayImage, quality: u32) -> Result<GrayImage> {
    let table = quant_table(quality)?;
    let dct = DctBasis::<8>::new();
    let (w, h) = (image.width(), image.height());
    let mut out = image.clone();
    for ty in (0..h).step_by(8) {
        for tx in (0..w).step_by(8) {
            let mut tile = [[0.0; 8]; 8];
            for (y, row) in tile.iter_mut().enumerate() {
                for (x, v) in row.iter_mut().enumerate() {
                    *v = image.get((tx + x).min(w - 1), (ty + y).min(h - 1)) as f64 - 128.0;
                }
            }
            let mut coeffs = dct.forward(&tile);
            for (v, row) in coeffs.iter_mut().enumerate() {
                for (u, c) in row.iter_mut().enumerate() {
                    let q = table[v * 8 + u] as f64;
                    *c = (*c / q).round() * q;
                }
            }
            let rec = dct.inverse(&coeffs);
            for (y, row) in rec.iter().enumerate().take(h - ty) {
                for (x, v) in row.iter().enumerate().take(w - tx) {
                    out.set(tx + x, ty + y, (v + 128.0).round().clamp(0.0, 255.0) as u8);
                }
            }
        }
    }
    Ok(out)
}

/// Each pixel independently becomes 0 or 255 (equally likely) with
/// probability `density`.
pub fn salt_pepper(image: &GrayImage, density: f64, seed: u64) -> Result<GrayImage> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Density(density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = image.clone();
    for p in out.pixels_mut() {
        // draw both values for every pixel so the stream does not depend on density
        let hit = rng.gen::<f64>() < density;
        let salt: bool = rng.gen();
        if hit {
            *p = if salt { 255 } else { 0 };
        }
    }
    Ok(out)
}

/// Median over a `window×window` neighbourhood with edge replication.
pub fn median_filter(image: &GrayImage, window: usize) -> Result<GrayImage> {
    if window < 3 || window.is_multiple_of(2) {
        return Err(Error::Window(window));
    }
    let r = (window / 2) as isize;
    let mut buf = Vec::with_capacity(window * window);
    let mut out = image.clone();
    for y in 0..image.height() {
        for x in 0..image.width() {
            buf.clear();
            for dy in -r..=r {
                for dx in -r..=r {
                    buf.push(image.get_clamped(x as isize + dx, y as isize + dy));
                }
            }
            let mid = buf.len() / 2;
            out.set(x, y, *buf.select_nth_unstable(mid).1);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AttackSpec {
    Jpeg { quality: u32 },
    SaltPepper { density: f64, seed: u64 },
    Median { window: usize },
}

impl AttackSpec {
    pub fn apply(&self, image: &GrayImage) -> Result<GrayImage> {
        match *self {
            AttackSpec::Jpeg { quality } => jpeg_attack(image, quality),
            AttackSpec::SaltPepper { density, seed } => salt_pepper(image, density, seed),
            AttackSpec::Median { window } => median_filter(image, window),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            AttackSpec::Jpeg { quality } => quant_table(quality).map(|_| ()),
            AttackSpec::SaltPepper { density, .. } if !(0.0..=1.0).contains(&density) => Err(Error::Density(density)),
            AttackSpec::Median { window } if window < 3 || window.is_multiple_of(2) => Err(Error::Window(window)),
            _ => Ok(()),
        }
    }
}

/// Apply attacks in order.
pub fn apply_chain(image: &GrayImage, chain: &[AttackSpec]) -> Result<GrayImage> {
    chain.iter().try_fold(image.clone(), |img, a| a.apply(&img))
}

impl FromStr for AttackSpec {
    type Err = Error;

    /// `jpeg:80`, `saltpepper:0.01:42` (seed optional), `median:3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::AttackSpec(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["jpeg", q] => AttackSpec::Jpeg {
                quality: q.parse().map_err(|_| bad())?,
            },
            ["saltpepper", d] => AttackSpec::SaltPepper {
                density: d.parse().map_err(|_| bad())?,
                seed: 0,
            },
            ["saltpepper", d, seed] => AttackSpec::SaltPepper {
                density: d.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            },
            ["median", w] => AttackSpec::Median {
                window: w.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for AttackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackSpec::Jpeg { quality } => write!(f, "jpeg:{quality}"),
            AttackSpec::SaltPepper { density, seed } => write!(f, "saltpepper:{density}:{seed}"),
            AttackSpec::Median { window } => write!(f, "median:{window}"),
        }
    }
}
