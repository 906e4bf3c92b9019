//! Embed a random message in every mode, then extract it blindly.
//!
//! `cargo run --example embed_extract [input.pgm]`

use adaptive_wm::codec::extract_mode;
use adaptive_wm::metrics::{format_db, nc, QualityReport};
use adaptive_wm::{analyze, embed, load_image, synth, EmbedMode, WatermarkMessage};

fn main() -> adaptive_wm::Result<()> {
    let host = match std::env::args().nth(1) {
        Some(path) => load_image(path)?,
        None => synth::natural_like(129, 129, 1),
    };
    let map = analyze(&host)?;
    println!(
        "{}x{} image, {} blocks, {} disordered",
        host.width(),
        host.height(),
        map.len(),
        map.disordered_count()
    );
    let message = WatermarkMessage::random(map.len(), 42);
    for mode in [EmbedMode::fixed(3)?, EmbedMode::fixed(5)?, EmbedMode::BasicAdaptive, EmbedMode::EnhancedAdaptive] {
        let marked = embed(&host, &message, mode)?;
        let q = QualityReport::measure(&host, &marked)?;
        let back = extract_mode(&marked, mode)?;
        println!(
            "{:<9} psnr {:>6} dB  ssim {:.4}  nc {:.4}",
            mode.to_string(),
            format_db(q.psnr),
            q.ssim,
            nc(&message, &back)?
        );
    }
    Ok(())
}
