//! Experiment harnesses and their CSV reports.
//!
//! `bench` compares the four embedding methods on quality and JPEG
//! robustness. `congestion_compare` swaps the analyzer feeding the enhanced
//! embedder while keeping everything else fixed.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::attacks::jpeg_attack;
use crate::codec::{embed, embed_with_map, extract_mode, extract_with_map, EmbedMode, WatermarkMessage};
use crate::congestion::Analyzer;
use crate::error::Result;
use crate::image::GrayImage;
use crate::metrics::{format_db, nc, psnr, ssim};

/// Embedding methods in report order.
pub fn bench_modes() -> [EmbedMode; 4] {
    [
        EmbedMode::fixed(3).expect("plane 3"),
        EmbedMode::fixed(5).expect("plane 5"),
        EmbedMode::BasicAdaptive,
        EmbedMode::EnhancedAdaptive,
    ]
}

pub fn method_label(mode: EmbedMode) -> &'static str {
    match mode {
        EmbedMode::FixedPlane(p) if p.get() == 3 => "plane3",
        EmbedMode::FixedPlane(p) if p.get() == 5 => "plane5",
        EmbedMode::FixedPlane(_) => "fixed",
        EmbedMode::BasicAdaptive => "basic",
        EmbedMode::EnhancedAdaptive => "enhanced",
    }
}

/// Short stable digest of a configuration string.
pub fn config_hash(config: &str) -> String {
    hex::encode(&Sha256::digest(config.as_bytes())[..8])
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub image: String,
    pub mode: EmbedMode,
    pub ssim: f64,
    pub psnr: f64,
    pub nc_q90: f64,
    pub nc_q80: f64,
}

/// Quality and robustness of one embedding run.
pub fn evaluate(host: &GrayImage, message: &WatermarkMessage, mode: EmbedMode) -> Result<(GrayImage, BenchRow)> {
    let marked = embed(host, message, mode)?;
    let nc_at = |q| -> Result<f64> {
        let attacked = jpeg_attack(&marked, q)?;
        nc(message, &extract_mode(&attacked, mode)?)
    };
    let row = BenchRow {
        image: String::new(),
        mode,
        ssim: ssim(host, &marked)?,
        psnr: psnr(host, &marked)?,
        nc_q90: nc_at(90)?,
        nc_q80: nc_at(80)?,
    };
    Ok((marked, row))
}

/// All four methods on one image with a seeded message.
pub fn bench_image(name: &str, host: &GrayImage, seed: u64) -> Result<Vec<BenchRow>> {
    let blocks = host.partition()?.len();
    let message = WatermarkMessage::random(blocks, seed);
    bench_modes()
        .into_iter()
        .map(|mode| {
            let (_, mut row) = evaluate(host, &message, mode)?;
            row.image = name.to_string();
            Ok(row)
        })
        .collect()
}

pub const BENCH_HEADER: &str = "image,method,ssim,psnr_db,nc_q90,nc_q80";

pub fn bench_csv(rows: &[BenchRow], seed: u64) -> String {
    let images: Vec<&str> = rows.iter().map(|r| r.image.as_str()).collect();
    let config = format!("bench seed={seed} images={}", images.join(","));
    let mut out = format!("# seed={seed} config={}\n{BENCH_HEADER}\n", config_hash(&config));
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:.4},{},{:.4},{:.4}",
            r.image,
            method_label(r.mode),
            r.ssim,
            format_db(r.psnr),
            r.nc_q90,
            r.nc_q80
        );
    }
    out
}

/// Per-analyzer outcome of the comparison harness.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyzerRow {
    pub image: String,
    pub analyzer: Analyzer,
    pub disordered: usize,
    pub psnr: f64,
    pub ssim: f64,
    pub nc: f64,
}

/// Enhanced embedding under each analyzer's map, then JPEG at `quality`.
///
/// The MSB-sum analyzer is extracted blindly. The score-based analyzers
/// depend on low bit-planes that embedding rewrites, so their extraction
/// reuses the host's map.
pub fn congestion_compare(name: &str, host: &GrayImage, seed: u64, quality: u32) -> Result<Vec<AnalyzerRow>> {
    let blocks = host.partition()?.len();
    let message = WatermarkMessage::random(blocks, seed);
    let mode = EmbedMode::EnhancedAdaptive;
    Analyzer::ALL
        .into_iter()
        .map(|analyzer| {
            let map = analyzer.map(host)?;
            let marked = embed_with_map(host, &message, &map, mode)?;
            let attacked = jpeg_attack(&marked, quality)?;
            let extracted = match analyzer {
                Analyzer::MsbSum => extract_mode(&attacked, mode)?,
                _ => extract_with_map(&attacked, &map, mode)?,
            };
            Ok(AnalyzerRow {
                image: name.to_string(),
                analyzer,
                disordered: map.disordered_count(),
                psnr: psnr(host, &marked)?,
                ssim: ssim(host, &marked)?,
                nc: nc(&message, &extracted)?,
            })
        })
        .collect()
}

type Column<'a> = (&'a str, &'a dyn Fn(&AnalyzerRow) -> String);

pub const COMPARE_HEADER: &str = "image,metric,DCT,Entropy,Edge,Proposed";

/// Table with one row per (image, metric) and one column per analyzer.
pub fn congestion_csv(rows: &[AnalyzerRow], seed: u64, quality: u32) -> String {
    let mut images: Vec<&str> = Vec::new();
    for r in rows {
        if !images.contains(&r.image.as_str()) {
            images.push(&r.image);
        }
    }
    let config = format!("congestion-compare seed={seed} quality={quality} images={}", images.join(","));
    let mut out = format!(
        "# seed={seed} quality={quality} config={}\n{COMPARE_HEADER}\n",
        config_hash(&config)
    );
    for image in images {
        let cell = |a: Analyzer, f: &dyn Fn(&AnalyzerRow) -> String| {
            rows.iter()
                .find(|r| r.image == image && r.analyzer == a)
                .map(f)
                .unwrap_or_default()
        };
        let metrics: [Column; 4] = [
            ("PSNR", &|r| format_db(r.psnr)),
            ("SSIM", &|r| format!("{:.4}", r.ssim)),
            ("NC", &|r| format!("{:.4}", r.nc)),
            ("disordered", &|r| r.disordered.to_string()),
        ];
        for (metric, f) in metrics {
            let cells: Vec<String> = Analyzer::ALL.iter().map(|&a| cell(a, f)).collect();
            let _ = writeln!(out, "{image},{metric},{}", cells.join(","));
        }
    }
    out
}

/// Render CSV (comment lines dropped) as an aligned text table.
pub fn csv_to_table(csv: &str) -> String {
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split(',').collect())
        .collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        if i == 0 {
            out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * cols.saturating_sub(1)));
            out.push('\n');
        }
    }
    out
}
