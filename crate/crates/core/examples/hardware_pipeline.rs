//! Gate-level compressor and type indicator, and the row pipeline timeline.

use adaptive_wm::hwsim::{compressor_9_4, compressor_9_4_net, pipeline_run, type_indicator, type_indicator_net};
use adaptive_wm::{embed, synth, EmbedMode, WatermarkMessage};

fn main() -> adaptive_wm::Result<()> {
    print!("{}", compressor_9_4_net().dump());
    println!("cells: {:?}\n", compressor_9_4_net().counts());
    print!("{}", type_indicator_net().dump());
    for s in 0..=9u8 {
        print!("{s}:{} ", type_indicator(s) as u8);
    }
    println!("\n");
    let bits = [true, false, true, true, false, false, true, false, true];
    println!("compressor({bits:?}) = {}\n", compressor_9_4(bits));

    let host = synth::natural_like(9, 9, 2);
    let message = WatermarkMessage::random(9, 2);
    let (out, trace) = pipeline_run(&host, &message, true)?;
    print!("{}", trace.timeline());
    println!("matches software embed: {}", out == embed(&host, &message, EmbedMode::EnhancedAdaptive)?);
    Ok(())
}
