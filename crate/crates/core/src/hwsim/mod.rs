//! Gate-level, cycle-level model of the embedding hardware.
//!
//! [`circuits`] holds the combinational pieces as netlists, [`pipeline`] the
//! clocked row pipeline that drives them. [`verify`] checks the whole model
//! against the software codec.

pub mod circuits;
pub mod netlist;
pub mod pipeline;

pub use circuits::{compressor_9_4, compressor_9_4_net, embed_mux, embed_mux_net, type_indicator, type_indicator_net};
pub use netlist::{Cell, CellCounts, GateNet, Net, NetBuilder};
pub use pipeline::{pipeline_run, Event, Pipeline, PipelineTrace, ROW_LATENCY};

use crate::codec::{embed, EmbedMode, WatermarkMessage};
use crate::error::Result;
use crate::image::GrayImage;

/// Outcome of [`verify`]; every mismatch counter must be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HwReport {
    pub compressor_mismatches: usize,
    pub indicator_mismatches: usize,
    pub compressor_cells: CellCounts,
    pub indicator_gates: usize,
    pub basic_pixel_diffs: usize,
    pub enhanced_pixel_diffs: usize,
    pub total_cycles: u64,
    pub expected_cycles: u64,
}

impl HwReport {
    pub fn passed(&self) -> bool {
        self.compressor_mismatches == 0
            && self.indicator_mismatches == 0
            && self.compressor_cells.full_adders == 5
            && self.compressor_cells.half_adders == 2
            && self.compressor_cells.gates == 0
            && self.basic_pixel_diffs == 0
            && self.enhanced_pixel_diffs == 0
            && self.total_cycles == self.expected_cycles
    }
}

/// Exhaustive compressor and indicator sweeps plus pipeline-vs-codec
/// equivalence on `image` in both adaptive modes.
pub fn verify(image: &GrayImage, message: &WatermarkMessage) -> Result<HwReport> {
    let compressor_mismatches = (0u32..512)
        .filter(|&v| {
            let bits: [bool; 9] = std::array::from_fn(|i| v >> i & 1 == 1);
            compressor_9_4(bits) as u32 != v.count_ones()
        })
        .count();
    let indicator_mismatches = (0u8..=9).filter(|&s| type_indicator(s) != (4..=6).contains(&s)).count();

    let diff = |a: &GrayImage, b: &GrayImage| a.pixels().iter().zip(b.pixels()).filter(|(x, y)| x != y).count();
    let (hw_basic, trace) = pipeline_run(image, message, false)?;
    let (hw_enh, _) = pipeline_run(image, message, true)?;
    let sw_basic = embed(image, message, EmbedMode::BasicAdaptive)?;
    let sw_enh = embed(image, message, EmbedMode::EnhancedAdaptive)?;

    Ok(HwReport {
        compressor_mismatches,
        indicator_mismatches,
        compressor_cells: compressor_9_4_net().counts(),
        indicator_gates: type_indicator_net().counts().gates,
        basic_pixel_diffs: diff(&hw_basic, &sw_basic),
        enhanced_pixel_diffs: diff(&hw_enh, &sw_enh),
        total_cycles: trace.total_cycles,
        expected_cycles: image.height() as u64 + ROW_LATENCY as u64,
    })
}
