//! End-to-end acceptance checks. Each test prints one `criterion N` line with
//! PASS or FAIL and the measured values, then fails if the criterion is not met.
//!
//! Run with `cargo test --test acceptance -- --nocapture --test-threads=1`.

use std::time::{Duration, Instant};

use adaptive_wm::attacks::jpeg_attack;
use adaptive_wm::codec::{embed_pixel, extract_mode};
use adaptive_wm::congestion::Analyzer;
use adaptive_wm::distortion::{direct_change, distortion_case, expected_sq_distortion, expected_sq_distortion_x2, Scheme};
use adaptive_wm::hwsim::{compressor_9_4, compressor_9_4_net, pipeline_run, type_indicator};
use adaptive_wm::metrics::{nc, psnr, ssim};
use adaptive_wm::report::{congestion_compare, congestion_csv, COMPARE_HEADER};
use adaptive_wm::{analyze, embed, extract, synth, BitPlane, EmbedMode, GrayImage, WatermarkMessage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, title: &str, elapsed: Duration, limit: Option<Duration>, failures: Vec<String>, detail: String) {
    let mut failures = failures;
    if let Some(limit) = limit {
        if elapsed > limit {
            failures.push(format!("runtime {elapsed:.2?} exceeds {limit:?}"));
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n} [{title}]: {verdict} ({detail}; {elapsed:.2?})");
    assert!(failures.is_empty(), "criterion {n} failed: {}", failures.join("; "));
}

fn all_modes() -> [EmbedMode; 4] {
    [
        EmbedMode::fixed(3).unwrap(),
        EmbedMode::fixed(5).unwrap(),
        EmbedMode::BasicAdaptive,
        EmbedMode::EnhancedAdaptive,
    ]
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn criterion_1_distortion_theory() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for i in 0u32..=6 {
        let (hi, lo) = (1u32 << (i + 1), 1u32 << i);
        for scheme in [Scheme::Basic, Scheme::Enhanced] {
            // every 8-bit pixel with both message bits: all (b_{i+1}, b_i, w) are equiprobable
            let mut sum_sq = 0u64;
            for v in 0u32..256 {
                for w in [false, true] {
                    let mut new = (v & !hi) | if w { hi } else { 0 };
                    if scheme == Scheme::Enhanced {
                        new = (new & !lo) | if w { 0 } else { lo };
                    }
                    let d = new.abs_diff(v) as u64;
                    sum_sq += d * d;
                    let via_codec = embed_pixel(v as u8, w, BitPlane::new(i as u8 + 2).unwrap(), scheme == Scheme::Enhanced);
                    if via_codec as u32 != new {
                        failures.push(format!("embed_pixel({v}, {w}, i={i}, {scheme:?}) = {via_codec}, want {new}"));
                    }
                }
            }
            // mean = sum_sq / 512 must equal x2 / 2 exactly
            let x2 = expected_sq_distortion_x2(i, scheme).unwrap();
            let closed = match scheme {
                Scheme::Basic => 4 * 4u64.pow(i),
                Scheme::Enhanced => 3 * 4u64.pow(i),
            };
            if sum_sq * 2 != 512 * x2 || x2 != closed {
                failures.push(format!("i={i} {scheme:?}: sum {sum_sq} over 512, x2 {x2}, closed form {closed}"));
            }
            if expected_sq_distortion(i, scheme).unwrap() * 2.0 != closed as f64 {
                failures.push(format!("i={i} {scheme:?}: float form disagrees"));
            }
        }
        if expected_sq_distortion(i, Scheme::Basic).unwrap() <= expected_sq_distortion(i, Scheme::Enhanced).unwrap() {
            failures.push(format!("i={i}: basic not above enhanced"));
        }
    }
    report(
        1,
        "distortion theory",
        start.elapsed(),
        Some(Duration::from_secs(1)),
        failures,
        "i in 0..=6, 512 (pixel, w) pairs each".into(),
    );
}

#[test]
fn criterion_2_case_tables() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rows = 0;
    for i in 0u32..=6 {
        let (hi, lo) = (1u32 << (i + 1), 1u32 << i);
        for (b_hi, b_lo, w) in (0..8).map(|k| (k & 4 != 0, k & 2 != 0, k & 1 != 0)) {
            // case tables written out independently of the library
            let basic = if b_hi == w { (1, 0) } else { (2, hi) };
            let enhanced = match (b_hi == b_lo, b_hi == w) {
                (true, true) => (1, lo),
                (false, true) => (2, 0),
                (false, false) => (3, hi - lo),
                (true, false) => (4, hi),
            };
            for (scheme, (case, magnitude)) in [(Scheme::Basic, basic), (Scheme::Enhanced, enhanced)] {
                rows += 1;
                let got = distortion_case(b_hi, b_lo, w, i, scheme).unwrap();
                let direct = direct_change(b_hi, b_lo, w, i, scheme);
                if (got.case, got.magnitude, direct) != (case, magnitude, magnitude) {
                    failures.push(format!(
                        "i={i} {scheme:?} ({b_hi},{b_lo},{w}): case {} |D| {} direct {direct}, want case {case} |D| {magnitude}",
                        got.case, got.magnitude
                    ));
                }
            }
        }
    }
    if distortion_case(true, true, false, 3, Scheme::Enhanced).unwrap().magnitude != 16 {
        failures.push("enhanced case 4 at i=3 is not 16".into());
    }
    report(2, "case tables", start.elapsed(), None, failures, format!("{rows} rows"));
}

/// Random hosts for the round-trip and stability criteria.
fn random_hosts(count: usize, seed: u64) -> Vec<GrayImage> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let w = 3 * rng.gen_range(1..=33);
            let h = 3 * rng.gen_range(1..=33);
            let s = rng.gen();
            match k % 3 {
                0 => synth::uniform_noise(w, h, s),
                1 => synth::natural_like(w, h, s),
                _ => synth::gradient(w, h, rng.gen_range(0..128), rng.gen_range(128..=255)),
            }
        })
        .collect()
}

#[test]
fn criterion_3_lossless_round_trip() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let hosts = random_hosts(100, 3);
    for (k, host) in hosts.iter().enumerate() {
        let msg = WatermarkMessage::random(host.partition().unwrap().len(), 1000 + k as u64);
        for mode in all_modes() {
            let marked = embed(host, &msg, mode).unwrap();
            let got = extract_mode(&marked, mode).unwrap();
            let score = nc(&msg, &got).unwrap();
            if got != msg || score != 1.0 {
                failures.push(format!("image {k} {}x{} {mode}: NC {score}", host.width(), host.height()));
            }
            if mode == EmbedMode::BasicAdaptive && extract(&marked).unwrap() != msg {
                failures.push(format!("image {k}: blind extract differs"));
            }
        }
    }
    report(3, "lossless round trip", start.elapsed(), None, failures, "100 images x 4 modes".into());
}

#[test]
fn criterion_4_classifier_stability() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut hosts = random_hosts(100, 4);
    hosts.push(synth::half_flat_half_noise(102, 99, 60, 4));
    hosts.push(GrayImage::filled(30, 30, 127));
    hosts.push(GrayImage::filled(30, 30, 128));
    for (k, host) in hosts.iter().enumerate() {
        let before = analyze(host).unwrap();
        let msg = WatermarkMessage::random(before.len(), k as u64);
        for mode in all_modes() {
            let after = analyze(&embed(host, &msg, mode).unwrap()).unwrap();
            if after != before {
                failures.push(format!("image {k} {mode}: map changed"));
            }
        }
    }
    report(4, "classifier stability", start.elapsed(), None, failures, format!("{} images x 4 modes", hosts.len()));
}

#[test]
fn criterion_5_quality_ordering() {
    let start = Instant::now();
    let trials = 20;
    let mut psnrs = vec![Vec::new(); 4];
    for t in 0..trials {
        let host = synth::uniform_noise(99, 99, 500 + t);
        let msg = WatermarkMessage::random(33 * 33, 900 + t);
        for (m, mode) in all_modes().into_iter().enumerate() {
            psnrs[m].push(psnr(&host, &embed(&host, &msg, mode).unwrap()).unwrap());
        }
    }
    let [p3, p5, basic, enh] = [mean(&psnrs[0]), mean(&psnrs[1]), mean(&psnrs[2]), mean(&psnrs[3])];
    let mut failures = Vec::new();
    if !(p3 > enh && enh > basic && basic > p5) {
        failures.push("ordering plane3 > enhanced > basic > plane5 violated".into());
    }
    if enh - basic < 0.8 {
        failures.push(format!("enhanced gain {:.3} dB < 0.8 dB", enh - basic));
    }
    report(
        5,
        "quality ordering",
        start.elapsed(),
        Some(Duration::from_secs(30)),
        failures,
        format!("{trials} images, mean PSNR plane3 {p3:.2} enhanced {enh:.2} basic {basic:.2} plane5 {p5:.2}, gain {:.2} dB", enh - basic),
    );
}

#[test]
fn criterion_6_robustness_ordering() {
    let start = Instant::now();
    let images = 12;
    let mut ncs = vec![Vec::new(); 4];
    for k in 0..images {
        let host = synth::natural_like(129, 129, 60 + k);
        let msg = WatermarkMessage::random(43 * 43, 70 + k);
        for (m, mode) in all_modes().into_iter().enumerate() {
            let attacked = jpeg_attack(&embed(&host, &msg, mode).unwrap(), 80).unwrap();
            ncs[m].push(nc(&msg, &extract_mode(&attacked, mode).unwrap()).unwrap());
        }
    }
    let [p3, p5, basic, enh] = [mean(&ncs[0]), mean(&ncs[1]), mean(&ncs[2]), mean(&ncs[3])];
    let mut failures = Vec::new();
    if !(p5 >= enh && enh >= basic && basic >= p3) {
        failures.push("ordering plane5 >= enhanced >= basic >= plane3 violated".into());
    }
    let mut detail = format!("{images} images, mean NC@Q80 plane5 {p5:.4} enhanced {enh:.4} basic {basic:.4} plane3 {p3:.4}");

    // optional range check on a user-supplied copy of the standard Lena image
    match std::env::var_os("ADAPTIVE_WM_LENA") {
        Some(path) => {
            let lena = adaptive_wm::load_image(&path).unwrap();
            let msg = WatermarkMessage::random(lena.partition().unwrap().len(), 1);
            let mode = EmbedMode::BasicAdaptive;
            let attacked = jpeg_attack(&embed(&lena, &msg, mode).unwrap(), 80).unwrap();
            let score = nc(&msg, &extract_mode(&attacked, mode).unwrap()).unwrap();
            if (score - 0.8559).abs() > 0.1 {
                failures.push(format!("Lena basic NC {score:.4} outside 0.8559 +- 0.1"));
            }
            detail.push_str(&format!(", Lena basic NC {score:.4}"));
        }
        None => detail.push_str(", Lena range check skipped (ADAPTIVE_WM_LENA unset)"),
    }
    report(6, "robustness ordering", start.elapsed(), None, failures, detail);
}

#[test]
fn criterion_7_hardware_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for v in 0u32..512 {
        let bits: [bool; 9] = std::array::from_fn(|i| v >> i & 1 == 1);
        if compressor_9_4(bits) as u32 != v.count_ones() {
            failures.push(format!("compressor({v:09b})"));
        }
    }
    for s in 0u8..=9 {
        if type_indicator(s) != matches!(s, 4..=6) {
            failures.push(format!("type_indicator({s})"));
        }
    }
    let cells = compressor_9_4_net().counts();
    if (cells.full_adders, cells.half_adders, cells.gates) != (5, 2, 0) {
        failures.push(format!("compressor cells {cells:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..50 {
        let host = if k % 2 == 0 {
            synth::uniform_noise(27, 27, rng.gen())
        } else {
            synth::natural_like(27, 27, rng.gen())
        };
        let msg = WatermarkMessage::random(81, rng.gen());
        for (enhanced, mode) in [(false, EmbedMode::BasicAdaptive), (true, EmbedMode::EnhancedAdaptive)] {
            let (hw, _) = pipeline_run(&host, &msg, enhanced).unwrap();
            if hw != embed(&host, &msg, mode).unwrap() {
                failures.push(format!("pipeline differs from codec on image {k} {mode}"));
            }
        }
    }
    let mut cycles = Vec::new();
    for n in [9usize, 27, 99, 512] {
        let host = synth::natural_like(n, n, n as u64);
        let msg = WatermarkMessage::random(host.partition().unwrap().len(), 1);
        let (_, trace) = pipeline_run(&host, &msg, true).unwrap();
        if trace.total_cycles != n as u64 + 6 {
            failures.push(format!("N={n}: {} cycles", trace.total_cycles));
        }
        cycles.push(format!("{n}->{}", trace.total_cycles));
    }
    report(
        7,
        "hardware equivalence",
        start.elapsed(),
        Some(Duration::from_secs(10)),
        failures,
        format!("512 compressor inputs, 10 sums, 5 FA + 2 HA, 50 pipeline images, cycles {}", cycles.join(" ")),
    );
}

#[test]
fn criterion_8_congestion_comparison() {
    let start = Instant::now();
    let mut failures = Vec::new();
    // 102 wide: the split at x = 51 falls on block column 17
    let host = synth::half_flat_half_noise(102, 99, 60, 8);
    let grid = host.partition().unwrap();
    let n_d = analyze(&host).unwrap().disordered_count();
    let mut shares = Vec::new();
    for analyzer in Analyzer::ALL {
        let map = analyzer.map(&host).unwrap();
        let marked: Vec<usize> = (0..map.len()).filter(|&i| map.get(i).is_disordered()).collect();
        let noisy = marked.iter().filter(|&&i| grid.position(i).0 >= grid.blocks_x / 2).count();
        let share = noisy as f64 / marked.len().max(1) as f64;
        if marked.len() != n_d {
            failures.push(format!("{} marks {} blocks, N_D = {n_d}", analyzer.name(), marked.len()));
        }
        if share < 0.9 {
            failures.push(format!("{} puts {:.1}% in the noisy half", analyzer.name(), 100.0 * share));
        }
        shares.push(format!("{} {:.1}%", analyzer.name(), 100.0 * share));
    }

    let rows = congestion_compare("halfnoise", &host, 1, 80).unwrap();
    if rows.len() != 4 || rows.iter().any(|r| r.disordered != n_d) {
        failures.push("harness rows disagree on N_D".into());
    }
    let csv = congestion_csv(&rows, 1, 80);
    let lines: Vec<&str> = csv.lines().collect();
    let metrics: Vec<&str> = lines.iter().skip(2).map(|l| l.split(',').nth(1).unwrap_or("")).collect();
    if !lines[0].starts_with("# seed=1 ")
        || lines.get(1) != Some(&COMPARE_HEADER)
        || metrics != ["PSNR", "SSIM", "NC", "disordered"]
        || lines[2..].iter().any(|l| l.split(',').count() != 6)
    {
        failures.push(format!("unexpected CSV shape:\n{csv}"));
    }
    report(
        8,
        "congestion comparison",
        start.elapsed(),
        None,
        failures,
        format!("N_D {n_d}, noisy-half share {}", shares.join(", ")),
    );
}

#[test]
fn criterion_9_metric_sanity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let a = synth::natural_like(33, 33, 9);
    let b = GrayImage::from_fn(33, 33, |x, y| {
        let v = a.get(x, y);
        if v < 128 {
            v + 4
        } else {
            v - 4
        }
    });
    let want = 10.0 * (65025.0f64 / 16.0).log10();
    let got = psnr(&a, &b).unwrap();
    if (got - want).abs() > 1e-9 {
        failures.push(format!("PSNR {got} vs {want}"));
    }
    let s = ssim(&a, &a).unwrap();
    if (s - 1.0).abs() > 1e-9 {
        failures.push(format!("SSIM(x, x) = {s}"));
    }
    let bits = |s: &str| s.parse::<WatermarkMessage>().unwrap();
    let cases = [
        ("10110", "10110", 1.0),
        ("1100", "0011", 0.0),
        ("11110000", "11001100", 0.5),
        ("0000", "0000", 1.0),
        ("0000", "0100", 0.0),
    ];
    for (x, y, expect) in cases {
        let v = nc(&bits(x), &bits(y)).unwrap();
        if (v - expect).abs() > 1e-12 {
            failures.push(format!("NC({x}, {y}) = {v}, want {expect}"));
        }
    }
    report(
        9,
        "metric sanity",
        start.elapsed(),
        None,
        failures,
        format!("PSNR {got:.6} dB, SSIM(x,x) {s}, {} NC cases", cases.len()),
    );
}
