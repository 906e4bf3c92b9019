//! NC after JPEG re-quantization across a range of quality factors.

use adaptive_wm::attacks::jpeg_attack;
use adaptive_wm::codec::extract_mode;
use adaptive_wm::metrics::nc;
use adaptive_wm::report::{bench_modes, method_label};
use adaptive_wm::{embed, synth, WatermarkMessage};

fn main() -> adaptive_wm::Result<()> {
    let host = synth::natural_like(129, 129, 3);
    let message = WatermarkMessage::random(host.partition()?.len(), 3);
    let qualities = [100, 95, 90, 85, 80, 70, 50];
    print!("{:<9}", "method");
    for q in qualities {
        print!("  q{q:<4}");
    }
    println!();
    for mode in bench_modes() {
        let marked = embed(&host, &message, mode)?;
        print!("{:<9}", method_label(mode));
        for q in qualities {
            let attacked = jpeg_attack(&marked, q)?;
            print!("  {:.3}", nc(&message, &extract_mode(&attacked, mode)?)?);
        }
        println!();
    }
    Ok(())
}
