//! MSB-sum classification against DCT, entropy and Canny-edge analyzers.

use adaptive_wm::congestion::Analyzer;
use adaptive_wm::report::{congestion_compare, congestion_csv, csv_to_table};
use adaptive_wm::synth;

fn main() -> adaptive_wm::Result<()> {
    let host = synth::half_flat_half_noise(60, 30, 90, 5);
    println!("half flat / half noise, proposed map:");
    println!("{}", Analyzer::MsbSum.map(&host)?);

    let mut rows = Vec::new();
    for seed in 0..3 {
        let img = synth::natural_like(129, 129, seed);
        rows.extend(congestion_compare(&format!("natural{seed}"), &img, 1, 80)?);
    }
    print!("{}", csv_to_table(&congestion_csv(&rows, 1, 80)));
    Ok(())
}
