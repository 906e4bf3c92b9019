//! Orthonormal type-II DCT on small square blocks.
//!
//! With the orthonormal scaling the 8×8 transform coincides with the one
//! assumed by the JPEG quantization tables (`C(u)C(v)/4` with `C(0) = 1/√2`).

/// `N×N` orthonormal DCT-II basis, `basis[u][x]`.
#[derive(Clone, Debug)]
pub struct DctBasis<const N: usize> {
    basis: [[f64; N]; N],
}

impl<const N: usize> DctBasis<N> {
    pub fn new() -> Self {
        let mut basis = [[0.0; N]; N];
        let n = N as f64;
        for (u, row) in basis.iter_mut().enumerate() {
            let scale = if u == 0 { (1.0 / n).sqrt() } else { (2.0 / n).sqrt() };
            for (x, b) in row.iter_mut().enumerate() {
                *b = scale * (std::f64::consts::PI * (2 * x + 1) as f64 * u as f64 / (2.0 * n)).cos();
            }
        }
        Self { basis }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn forward(&self, block: &[[f64; N]; N]) -> [[f64; N]; N] {
        // rows then columns
        let mut tmp = [[0.0; N]; N];
        for y in 0..N {
            for u in 0..N {
                tmp[y][u] = (0..N).map(|x| self.basis[u][x] * block[y][x]).sum();
            }
        }
        let mut out = [[0.0; N]; N];
        for v in 0..N {
            for u in 0..N {
                out[v][u] = (0..N).map(|y| self.basis[v][y] * tmp[y][u]).sum();
            }
        }
        out
    }

    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self, coeffs: &[[f64; N]; N]) -> [[f64; N]; N] {
        let mut tmp = [[0.0; N]; N];
        for v in 0..N {
            for x in 0..N {
                tmp[v][x] = (0..N).map(|u| self.basis[u][x] * coeffs[v][u]).sum();
            }
        }
        let mut out = [[0.0; N]; N];
        for y in 0..N {
            for x in 0..N {
                out[y][x] = (0..N).map(|v| self.basis[v][y] * tmp[v][x]).sum();
            }
        }
        out
    }
}

impl<const N: usize> Default for DctBasis<N> {
    fn default() -> Self {
        Self::new()
    }
}
