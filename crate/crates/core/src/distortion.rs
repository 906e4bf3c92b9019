//! Closed-form pixel distortion of single-bit and complemented two-bit
//! embedding.
//!
//! Index convention: bit `b_k` has weight `2^k`, so embedding into bit
//! `b_{i+1}` is embedding into plane `i + 2` (plane 3 is `i = 1`, plane 5 is
//! `i = 3`). The enhanced scheme writes `w` into `b_{i+1}` and `!w` into
//! `b_i`.

use crate::error::{Error, Result};
use crate::image::{set_bit, BitPlane};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Basic,
    Enhanced,
}

/// One row of the distortion case tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistortionCase {
    pub i: u32,
    pub scheme: Scheme,
    /// 1-based case number within the scheme's table.
    pub case: u8,
    pub magnitude: u32,
}

fn check_index(i: u32) -> Result<()> {
    if i > 6 {
        return Err(Error::DistortionIndex(i));
    }
    Ok(())
}

/// Classify `(b_{i+1}, b_i, w)` into its table row. `b_lo` is ignored by the
/// basic scheme.
pub fn distortion_case(b_hi: bool, b_lo: bool, w: bool, i: u32, scheme: Scheme) -> Result<DistortionCase> {
    check_index(i)?;
    let lo = 1u32 << i;
    let hi = 1u32 << (i + 1);
    let (case, magnitude) = match scheme {
        Scheme::Basic if b_hi == w => (1, 0),
        Scheme::Basic => (2, hi),
        Scheme::Enhanced => match (b_hi == b_lo, b_hi == w) {
            (true, true) => (1, lo),
            (false, true) => (2, 0),
            (false, false) => (3, hi - lo),
            (true, false) => (4, hi),
        },
    };
    let out = DistortionCase {
        i,
        scheme,
        case,
        magnitude,
    };
    debug_assert_eq!(magnitude, direct_change(b_hi, b_lo, w, i, scheme));
    Ok(out)
}

/// `|new − old|` obtained by actually rewriting the bits of a pixel whose
/// only set bits are `b_hi` and `b_lo`.
pub fn direct_change(b_hi: bool, b_lo: bool, w: bool, i: u32, scheme: Scheme) -> u32 {
    let hi_plane = BitPlane::new(i as u8 + 2).expect("i in [0, 6]");
    let lo_plane = BitPlane::new(i as u8 + 1).expect("i in [0, 6]");
    let old = set_bit(set_bit(0, hi_plane, b_hi), lo_plane, b_lo);
    let mut new = set_bit(old, hi_plane, w);
    if scheme == Scheme::Enhanced {
        new = set_bit(new, lo_plane, !w);
    }
    (new as i32 - old as i32).unsigned_abs()
}

/// `E[D²]` under uniformly random pixel bits and message bit:
/// `2·4^i` for the basic scheme and `1.5·4^i` for the enhanced one.
pub fn expected_sq_distortion(i: u32, scheme: Scheme) -> Result<f64> {
    check_index(i)?;
    let base = (1u64 << (2 * i)) as f64;
    Ok(match scheme {
        Scheme::Basic => 2.0 * base,
        Scheme::Enhanced => 1.5 * base,
    })
}

/// Same quantity scaled by 2 so that it stays an integer.
pub fn expected_sq_distortion_x2(i: u32, scheme: Scheme) -> Result<u64> {
    check_index(i)?;
    let base = 1u64 << (2 * i);
    Ok(match scheme {
        Scheme::Basic => 4 * base,
        Scheme::Enhanced => 3 * base,
    })
}
