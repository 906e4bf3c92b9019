use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adaptive_wm::attacks::{apply_chain, AttackSpec};
use adaptive_wm::codec::{embed, extract_mode, EmbedMode, WatermarkMessage};
use adaptive_wm::metrics::{format_db, nc, psnr, ssim};
use adaptive_wm::{hwsim, load_image, report, store_image, synth, GrayImage};
use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "adaptive-wm", version, about = "Adaptive bit-plane watermarking of PGM images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a message into a PGM image.
    Embed(EmbedArgs),
    /// Extract a message from a (possibly attacked) PGM image.
    Extract(ExtractArgs),
    /// Apply a chain of attacks to a PGM image.
    Attack(AttackArgs),
    /// Compare plane3/plane5/basic/enhanced on quality and JPEG robustness.
    Bench(ReportArgs),
    /// Compare the MSB-sum analyzer against DCT, entropy and edge analyzers.
    CongestionCompare(ReportArgs),
    /// Check the gate-level model against the software codec.
    Hwverify(HwArgs),
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value = "enhanced")]
    mode: EmbedMode,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Message file ('0'/'1' text or PGM logo). Generated from the seed when absent.
    #[arg(long)]
    message: Option<PathBuf>,
    /// Where to write the message used; defaults to the output path with a `.msg` extension.
    #[arg(long)]
    message_out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value = "enhanced")]
    mode: EmbedMode,
    /// Reference message; NC against it is printed.
    #[arg(long)]
    message: Option<PathBuf>,
    /// Also write the extracted bits as a logo of this width.
    #[arg(long)]
    logo_width: Option<usize>,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Attack spec such as `jpeg:80`, `saltpepper:0.01:42`, `median:3`. Repeatable, applied in order.
    #[arg(long = "attack")]
    attacks: Vec<AttackSpec>,
    /// Shorthand for a trailing `jpeg:<q>`.
    #[arg(long)]
    quality: Option<u32>,
    /// Shorthand for a trailing `saltpepper:<d>:<seed>`.
    #[arg(long)]
    density: Option<f64>,
    /// Shorthand for a trailing `median:<w>`.
    #[arg(long)]
    window: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct ReportArgs {
    /// PGM files or directories of PGM files. A synthetic corpus is used when empty.
    inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// JPEG quality for congestion-compare.
    #[arg(long, default_value_t = 80)]
    quality: u32,
    /// Print an aligned table instead of CSV.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct HwArgs {
    /// Square PGM image; a 27x27 synthetic image is used when absent.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the pipeline timeline here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the compressor, indicator and mux netlists here.
    #[arg(long)]
    netlist: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Embed(a) => cmd_embed(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Attack(a) => cmd_attack(a),
        Command::Bench(a) => cmd_bench(a),
        Command::CongestionCompare(a) => cmd_congestion_compare(a),
        Command::Hwverify(a) => cmd_hwverify(a),
    }
}

fn distinct(a: &Path, b: &Path) -> Result<()> {
    ensure!(a != b, "input and output must differ: {}", a.display());
    Ok(())
}

fn cmd_embed(a: EmbedArgs) -> Result<ExitCode> {
    distinct(&a.input, &a.output)?;
    let host = load_image(&a.input)?;
    let blocks = host.partition()?.len();
    let message = match &a.message {
        Some(p) => WatermarkMessage::load(p)?,
        None => WatermarkMessage::random(blocks, a.seed),
    };
    let marked = embed(&host, &message, a.mode)?;
    store_image(&marked, &a.output)?;
    let msg_path = a.message_out.unwrap_or_else(|| a.output.with_extension("msg"));
    message.store(&msg_path)?;
    println!(
        "mode={} seed={} blocks={} psnr={} ssim={:.4}",
        a.mode,
        a.seed,
        blocks,
        format_db(psnr(&host, &marked)?),
        ssim(&host, &marked)?
    );
    println!("message written to {}", msg_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_extract(a: ExtractArgs) -> Result<ExitCode> {
    distinct(&a.input, &a.output)?;
    let img = load_image(&a.input)?;
    let extracted = extract_mode(&img, a.mode)?;
    extracted.store(&a.output)?;
    if let Some(w) = a.logo_width {
        ensure!(w > 0 && extracted.len() % w == 0, "logo width {w} does not divide {} bits", extracted.len());
        store_image(&extracted.to_logo(w, extracted.len() / w)?, a.output.with_extension("pgm"))?;
    }
    if let Some(reference) = &a.message {
        let reference = WatermarkMessage::load(reference)?;
        println!("nc={:.4}", nc(&reference, &extracted)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_attack(a: AttackArgs) -> Result<ExitCode> {
    distinct(&a.input, &a.output)?;
    let mut chain = a.attacks;
    if let Some(quality) = a.quality {
        chain.push(AttackSpec::Jpeg { quality });
    }
    if let Some(density) = a.density {
        chain.push(AttackSpec::SaltPepper { density, seed: a.seed });
    }
    if let Some(window) = a.window {
        chain.push(AttackSpec::Median { window });
    }
    if chain.is_empty() {
        bail!("no attack given");
    }
    for spec in &chain {
        spec.validate()?;
    }
    let img = load_image(&a.input)?;
    let out = apply_chain(&img, &chain)?;
    store_image(&out, &a.output)?;
    let names: Vec<String> = chain.iter().map(ToString::to_string).collect();
    println!("attacks={} psnr={}", names.join(","), format_db(psnr(&img, &out)?));
    Ok(ExitCode::SUCCESS)
}

/// `(name, image)` pairs sorted by name.
fn collect_images(inputs: &[PathBuf], seed: u64) -> Result<Vec<(String, GrayImage)>> {
    if inputs.is_empty() {
        return Ok((0..4)
            .map(|i| (format!("synthetic{i}"), synth::natural_like(129, 129, seed.wrapping_add(i))))
            .collect());
    }
    let mut paths = Vec::new();
    for p in inputs {
        if p.is_dir() {
            for entry in fs::read_dir(p).with_context(|| format!("reading {}", p.display()))? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")) {
                    paths.push(path);
                }
            }
        } else {
            paths.push(p.clone());
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
            Ok((name, load_image(&p)?))
        })
        .collect()
}

fn emit(csv: String, a: &ReportArgs) -> Result<()> {
    let text = if a.table { report::csv_to_table(&csv) } else { csv };
    match &a.report {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_bench(a: ReportArgs) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for (name, img) in collect_images(&a.inputs, a.seed)? {
        rows.extend(report::bench_image(&name, &img, a.seed)?);
    }
    emit(report::bench_csv(&rows, a.seed), &a)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_congestion_compare(a: ReportArgs) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for (name, img) in collect_images(&a.inputs, a.seed)? {
        rows.extend(report::congestion_compare(&name, &img, a.seed, a.quality)?);
    }
    emit(report::congestion_csv(&rows, a.seed, a.quality), &a)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_hwverify(a: HwArgs) -> Result<ExitCode> {
    let img = match &a.input {
        Some(p) => load_image(p)?,
        None => synth::natural_like(27, 27, a.seed),
    };
    let message = WatermarkMessage::random(img.partition()?.len(), a.seed);
    let r = hwsim::verify(&img, &message)?;
    if let Some(path) = &a.trace {
        let (_, trace) = hwsim::pipeline_run(&img, &message, true)?;
        fs::write(path, trace.timeline())?;
    }
    if let Some(path) = &a.netlist {
        let text = [hwsim::compressor_9_4_net(), hwsim::type_indicator_net(), hwsim::embed_mux_net()]
            .iter()
            .map(|n| n.dump())
            .collect::<Vec<_>>()
            .join("\n");
        fs::write(path, text)?;
    }
    println!("compressor: {} mismatches over 512 inputs", r.compressor_mismatches);
    println!(
        "compressor cells: {} FA, {} HA, {} gates",
        r.compressor_cells.full_adders, r.compressor_cells.half_adders, r.compressor_cells.gates
    );
    println!("type indicator: {} mismatches over sums 0..=9, {} gates", r.indicator_mismatches, r.indicator_gates);
    println!("pipeline vs codec: basic {} / enhanced {} differing pixels", r.basic_pixel_diffs, r.enhanced_pixel_diffs);
    println!("cycles: {} (expected {})", r.total_cycles, r.expected_cycles);
    if r.passed() {
        println!("PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL");
        Ok(ExitCode::FAILURE)
    }
}
