//! Closed-form expected squared distortion next to brute-force enumeration.

use adaptive_wm::codec::embed_pixel;
use adaptive_wm::distortion::{distortion_case, expected_sq_distortion, Scheme};
use adaptive_wm::BitPlane;

fn main() -> adaptive_wm::Result<()> {
    println!("{:>2}  {:>7}  {:>7}  {:>9}  {:>9}", "i", "basic", "enum", "enhanced", "enum");
    for i in 0u32..=6 {
        let plane = BitPlane::new(i as u8 + 2)?;
        let mean_sq = |enhanced: bool| {
            let total: u64 = (0..=255u8)
                .flat_map(|v| [false, true].map(|w| (v, w)))
                .map(|(v, w)| {
                    let d = embed_pixel(v, w, plane, enhanced).abs_diff(v) as u64;
                    d * d
                })
                .sum();
            total as f64 / 512.0
        };
        println!(
            "{i:>2}  {:>7}  {:>7}  {:>9}  {:>9}",
            expected_sq_distortion(i, Scheme::Basic)?,
            mean_sq(false),
            expected_sq_distortion(i, Scheme::Enhanced)?,
            mean_sq(true)
        );
    }

    println!("\nenhanced cases at i = 3 (b_hi, b_lo, w):");
    for (b_hi, b_lo, w) in (0..8).map(|k| (k & 4 != 0, k & 2 != 0, k & 1 != 0)) {
        let c = distortion_case(b_hi, b_lo, w, 3, Scheme::Enhanced)?;
        println!("  ({}, {}, {}) -> case {} |D| = {}", b_hi as u8, b_lo as u8, w as u8, c.case, c.magnitude);
    }
    Ok(())
}
