//! Embed a 43×43 binary logo and recover it after noise, median and JPEG
//! attacks. Recovered logos are written as PGM files to the given directory.
//!
//! `cargo run --example logo_attacks [out_dir]`

use std::path::PathBuf;

use adaptive_wm::attacks::AttackSpec;
use adaptive_wm::codec::extract;
use adaptive_wm::metrics::{format_db, nc, psnr};
use adaptive_wm::{embed, store_image, synth, EmbedMode, GrayImage, WatermarkMessage};

fn logo(size: usize) -> GrayImage {
    let c = size as f64 / 2.0;
    GrayImage::from_fn(size, size, |x, y| {
        let (dx, dy) = (x as f64 - c, y as f64 - c);
        let r = (dx * dx + dy * dy).sqrt();
        let ring = (r - size as f64 * 0.35).abs() < 3.0;
        let bar = dx.abs() < 3.0 && dy.abs() < size as f64 * 0.3;
        if ring || bar {
            255
        } else {
            0
        }
    })
}

fn main() -> adaptive_wm::Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    let host = synth::natural_like(129, 129, 6);
    let mark = WatermarkMessage::from_logo(&logo(43));
    let marked = embed(&host, &mark, EmbedMode::BasicAdaptive)?;
    println!("embedded psnr {} dB", format_db(psnr(&host, &marked)?));

    let attacks = [
        AttackSpec::SaltPepper { density: 0.01, seed: 1 },
        AttackSpec::Median { window: 3 },
        AttackSpec::Jpeg { quality: 90 },
    ];
    for attack in attacks {
        let attacked = attack.apply(&marked)?;
        let got = extract(&attacked)?;
        println!(
            "{:<18} psnr {:>6} dB  nc {:.4}",
            attack.to_string(),
            format_db(psnr(&marked, &attacked)?),
            nc(&mark, &got)?
        );
        if let Some(dir) = &out_dir {
            let name = attack.to_string().replace([':', '.'], "_");
            store_image(&got.to_logo(43, 43)?, dir.join(format!("{name}.pgm")))?;
        }
    }
    Ok(())
}
