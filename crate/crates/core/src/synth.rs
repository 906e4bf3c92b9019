//! Seeded synthetic test images.
//!
//! Standard test photographs are not bundled; these generators give
//! reproducible stand-ins with controlled content.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::GrayImage;

/// Independent uniform pixels.
pub fn uniform_noise(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(width, height, |_, _| rng.gen())
}

/// Horizontal ramp from `lo` to `hi`.
pub fn gradient(width: usize, height: usize, lo: u8, hi: u8) -> GrayImage {
    let span = hi as f64 - lo as f64;
    let denom = (width.max(2) - 1) as f64;
    GrayImage::from_fn(width, height, |x, _| (lo as f64 + span * x as f64 / denom).round() as u8)
}

/// Left half constant at `flat`, right half uniform noise. The split falls on
/// a block boundary when `width` is a multiple of 6.
pub fn half_flat_half_noise(width: usize, height: usize, flat: u8, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(width, height, |x, _| {
        let v: u8 = rng.gen();
        if x < width / 2 {
            flat
        } else {
            v
        }
    })
}

/// Bilinearly interpolated random lattice with the given cell size.
fn value_noise(width: usize, height: usize, cell: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let gw = width / cell + 2;
    let gh = height / cell + 2;
    let lattice: Vec<f64> = (0..gw * gh).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut out = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let (fx, fy) = (x as f64 / cell as f64, y as f64 / cell as f64);
            let (ix, iy) = (fx as usize, fy as usize);
            let (tx, ty) = (fx - ix as f64, fy - iy as f64);
            // smoothstep
            let (sx, sy) = (tx * tx * (3.0 - 2.0 * tx), ty * ty * (3.0 - 2.0 * ty));
            let at = |i: usize, j: usize| lattice[j * gw + i];
            let top = at(ix, iy) * (1.0 - sx) + at(ix + 1, iy) * sx;
            let bottom = at(ix, iy + 1) * (1.0 - sx) + at(ix + 1, iy + 1) * sx;
            out.push(top * (1.0 - sy) + bottom * sy);
        }
    }
    out
}

const TEXTURE_THRESHOLD: f64 = -0.2;
const TEXTURE_AMPLITUDE: f64 = 60.0;

/// Photograph-like content: smooth shading, multi-scale texture, patches of
/// strong fine-grained texture, a few sharp-edged shapes and mild sensor
/// noise. Tuned so that roughly 10–20% of 3×3 blocks classify as disordered,
/// which is the range estimated for standard test photographs.
pub fn natural_like(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut field = vec![0.0; width * height];

    let (gx, gy) = (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let base = rng.gen_range(70.0..180.0);
    for y in 0..height {
        for x in 0..width {
            field[y * width + x] = base + gx * x as f64 + gy * y as f64;
        }
    }
    for (cell, amp) in [(48, 45.0), (16, 22.0), (6, 10.0), (2, 5.0)] {
        let layer = value_noise(width, height, cell, &mut rng);
        for (f, l) in field.iter_mut().zip(layer) {
            *f += amp * l;
        }
    }
    // textured patches (foliage, fabric, hair)
    let mask = value_noise(width, height, 32, &mut rng);
    let grain = value_noise(width, height, 1, &mut rng);
    for ((f, m), g) in field.iter_mut().zip(mask).zip(grain) {
        if m > TEXTURE_THRESHOLD {
            *f += TEXTURE_AMPLITUDE * g;
        }
    }
    let shapes = rng.gen_range(3..7);
    for _ in 0..shapes {
        let cx = rng.gen_range(0.0..width as f64);
        let cy = rng.gen_range(0.0..height as f64);
        let r = rng.gen_range(0.08..0.25) * width.min(height) as f64;
        let shift = rng.gen_range(-70.0..70.0);
        let disc = rng.gen_bool(0.5);
        for y in 0..height {
            for x in 0..width {
                let (dx, dy) = (x as f64 - cx, y as f64 - cy);
                let inside = if disc { dx * dx + dy * dy < r * r } else { dx.abs() < r && dy.abs() < r * 0.6 };
                if inside {
                    field[y * width + x] += shift;
                }
            }
        }
    }
    let mut out = GrayImage::filled(width, height, 0);
    for (p, f) in out.pixels_mut().iter_mut().zip(field) {
        let noisy = f + rng.gen_range(-2.0..2.0);
        *p = noisy.round().clamp(0.0, 255.0) as u8;
    }
    out
}
