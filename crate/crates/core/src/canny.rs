//! Canny edge detector with fixed parameters.
//!
//! Gaussian smoothing (σ = 1.4, 5×5), Sobel gradients, non-maximum
//! suppression over four quantized directions, and hysteresis with low/high
//! thresholds at 10%/20% of the maximum gradient magnitude. Borders use edge
//! replication.

use crate::image::GrayImage;

pub const SIGMA: f64 = 1.4;
pub const LOW_RATIO: f64 = 0.10;
pub const HIGH_RATIO: f64 = 0.20;

fn gaussian_kernel() -> [f64; 5] {
    let mut k = [0.0; 5];
    for (i, v) in k.iter_mut().enumerate() {
        let d = i as f64 - 2.0;
        *v = (-d * d / (2.0 * SIGMA * SIGMA)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.map(|v| v / sum)
}

struct Plane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Plane {
    fn at(&self, x: isize, y: isize) -> f64 {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.data[y * self.width + x]
    }
}

fn smooth(image: &GrayImage) -> Plane {
    let (w, h) = (image.width(), image.height());
    let k = gaussian_kernel();
    let mut horiz = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            horiz[y * w + x] = (0..5)
                .map(|i| k[i] * image.get_clamped(x as isize + i as isize - 2, y as isize) as f64)
                .sum();
        }
    }
    let horiz = Plane {
        width: w,
        height: h,
        data: horiz,
    };
    let mut data = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            data[y * w + x] = (0..5)
                .map(|i| k[i] * horiz.at(x as isize, y as isize + i as isize - 2))
                .sum();
        }
    }
    Plane {
        width: w,
        height: h,
        data,
    }
}

/// Binary edge map, row-major, `true` on edge pixels.
pub fn canny(image: &GrayImage) -> Vec<bool> {
    let (w, h) = (image.width(), image.height());
    let s = smooth(image);

    let mut mag = vec![0.0; w * h];
    let mut dir = vec![0u8; w * h];
    for y in 0..h as isize {
        for x in 0..w as isize {
            let gx = (s.at(x + 1, y - 1) + 2.0 * s.at(x + 1, y) + s.at(x + 1, y + 1))
                - (s.at(x - 1, y - 1) + 2.0 * s.at(x - 1, y) + s.at(x - 1, y + 1));
            let gy = (s.at(x - 1, y + 1) + 2.0 * s.at(x, y + 1) + s.at(x + 1, y + 1))
                - (s.at(x - 1, y - 1) + 2.0 * s.at(x, y - 1) + s.at(x + 1, y - 1));
            let i = y as usize * w + x as usize;
            mag[i] = gx.hypot(gy);
            let mut angle = gy.atan2(gx).to_degrees();
            if angle < 0.0 {
                angle += 180.0;
            }
            dir[i] = if !(22.5..157.5).contains(&angle) {
                0
            } else if angle < 67.5 {
                1
            } else if angle < 112.5 {
                2
            } else {
                3
            };
        }
    }

    let max = mag.iter().cloned().fold(0.0, f64::max);
    if max <= 1e-9 {
        return vec![false; w * h];
    }
    let (low, high) = (LOW_RATIO * max, HIGH_RATIO * max);

    let m = Plane {
        width: w,
        height: h,
        data: mag,
    };
    // 0 = none, 1 = weak, 2 = strong
    let mut class = vec![0u8; w * h];
    for y in 0..h as isize {
        for x in 0..w as isize {
            let i = y as usize * w + x as usize;
            let (dx, dy) = match dir[i] {
                0 => (1, 0),
                1 => (1, 1),
                2 => (0, 1),
                _ => (-1, 1),
            };
            let v = m.data[i];
            if v < m.at(x + dx, y + dy) || v < m.at(x - dx, y - dy) {
                continue;
            }
            class[i] = if v >= high {
                2
            } else if v >= low {
                1
            } else {
                0
            };
        }
    }

    let mut edges = vec![false; w * h];
    let mut stack: Vec<usize> = (0..w * h).filter(|&i| class[i] == 2).collect();
    for &i in &stack {
        edges[i] = true;
    }
    while let Some(i) = stack.pop() {
        let (x, y) = ((i % w) as isize, (i / w) as isize);
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if !edges[j] && class[j] == 1 {
                    edges[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    edges
}
