//! Row-per-clock pipeline model of the embedder.
//!
//! Every clock reads one image row into a six-deep row delay line and writes
//! the row leaving the far end to the output RAM, so each row is written
//! exactly six cycles after it was read and an `N`-row image finishes in
//! `N + 6` cycles.
//!
//! Stage timing for block row `k` (rows `3k..3k+2`, last one read at cycle
//! `c = 3k + 3`):
//!
//! | cycle   | action                                                      |
//! |---------|-------------------------------------------------------------|
//! | `c + 1` | MSB extraction and 9→4 compressor on delay slots 0–2        |
//! | `c + 2` | type indicator on the latched sums                          |
//! | `c + 3` | embedding muxes rewrite the rows, now in delay slots 2–4    |
//! | `c + 4` | first row of the block row reaches the output RAM           |
//!
//! Trailing rows and columns outside complete blocks ride the delay line
//! untouched.

use std::fmt;

use super::circuits::{bits_to_u8, compressor_9_4_net, embed_mux_with, type_indicator_net};
use super::netlist::GateNet;
use crate::codec::WatermarkMessage;
use crate::error::{Error, Result};
use crate::image::{GrayImage, BLOCK};

/// Depth of the row delay line, i.e. read-to-write latency in cycles.
pub const ROW_LATENCY: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    ReadRow(usize),
    Analyze(usize),
    Classify(usize),
    Embed(usize),
    WriteRow(usize),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::ReadRow(r) => write!(f, "read row {r}"),
            Event::Analyze(k) => write!(f, "analyze block-row {k}"),
            Event::Classify(k) => write!(f, "classify block-row {k}"),
            Event::Embed(k) => write!(f, "embed block-row {k}"),
            Event::WriteRow(r) => write!(f, "write row {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    pub cycle: u64,
    pub events: Vec<Event>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineTrace {
    pub total_cycles: u64,
    pub cycles: Vec<CycleRecord>,
}

impl PipelineTrace {
    pub fn first_write_cycle(&self) -> Option<u64> {
        self.cycles
            .iter()
            .find(|c| c.events.iter().any(|e| matches!(e, Event::WriteRow(_))))
            .map(|c| c.cycle)
    }

    pub fn events(&self) -> impl Iterator<Item = (u64, Event)> + '_ {
        self.cycles.iter().flat_map(|c| c.events.iter().map(move |&e| (c.cycle, e)))
    }

    /// Text timeline, one cycle per line.
    pub fn timeline(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PipelineTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let events: Vec<String> = c.events.iter().map(Event::to_string).collect();
            writeln!(f, "cycle {:>5}: {}", c.cycle, events.join(", "))?;
        }
        writeln!(f, "total cycles: {}", self.total_cycles)
    }
}

struct Row {
    index: usize,
    pixels: Vec<u8>,
}

/// Clock-stepped machine state.
pub struct Pipeline<'a> {
    image: &'a GrayImage,
    message: &'a WatermarkMessage,
    enhanced: bool,
    blocks_x: usize,
    block_rows: usize,
    compressor: GateNet,
    indicator: GateNet,
    scratch: Vec<bool>,
    cycle: u64,
    next_row: usize,
    delay: [Option<Row>; ROW_LATENCY],
    /// Block row and 4-bit sums latched by the analysis stage.
    sum_reg: Option<(usize, Vec<u8>)>,
    /// Block row and type bits latched by the classification stage.
    type_reg: Option<(usize, Vec<bool>)>,
    output: GrayImage,
    written: usize,
    trace: PipelineTrace,
}

impl<'a> Pipeline<'a> {
    pub fn new(image: &'a GrayImage, message: &'a WatermarkMessage, enhanced: bool) -> Result<Self> {
        let (w, h) = (image.width(), image.height());
        if w != h {
            return Err(Error::NotSquare { width: w, height: h });
        }
        let grid = image.partition()?;
        if message.len() != grid.len() {
            return Err(Error::MessageLength {
                got: message.len(),
                blocks: grid.len(),
            });
        }
        Ok(Self {
            image,
            message,
            enhanced,
            blocks_x: grid.blocks_x,
            block_rows: grid.blocks_y,
            compressor: compressor_9_4_net(),
            indicator: type_indicator_net(),
            scratch: Vec::new(),
            cycle: 0,
            next_row: 0,
            delay: Default::default(),
            sum_reg: None,
            type_reg: None,
            output: GrayImage::filled(w, h, 0),
            written: 0,
            trace: PipelineTrace::default(),
        })
    }

    pub fn done(&self) -> bool {
        self.written == self.image.height()
    }

    pub fn cycle(&self) -> u64 {
        self.cycle
    }

    /// Advance one clock. All stages read the registers as they were at the
    /// start of the cycle; updates land together at the end.
    pub fn step(&mut self) {
        self.cycle += 1;
        let mut events = Vec::new();

        // write port
        if let Some(row) = &self.delay[ROW_LATENCY - 1] {
            let w = self.output.width();
            self.output.pixels_mut()[row.index * w..(row.index + 1) * w].copy_from_slice(&row.pixels);
            self.written += 1;
            events.push(Event::WriteRow(row.index));
        }

        // embedding stage: block row k sits in slots 2..=4
        if let Some((k, types)) = self.type_reg.take() {
            let base = k * self.blocks_x;
            let enhanced = self.enhanced;
            for slot in 2..=4 {
                let row = self.delay[slot].as_mut().expect("block row in delay line");
                debug_assert_eq!(row.index / BLOCK, k);
                for (bx, &ty) in types.iter().enumerate() {
                    let w = self.message.bits()[base + bx];
                    for px in &mut row.pixels[bx * BLOCK..bx * BLOCK + BLOCK] {
                        *px = embed_mux_with(*px, w, !w, ty, enhanced, &mut self.scratch);
                    }
                }
            }
            events.push(Event::Embed(k));
        }

        // classification stage
        let classified = self.sum_reg.take().map(|(k, sums)| {
            let mut out = [false];
            let types = sums
                .iter()
                .map(|&s| {
                    let ins = [s & 1 != 0, s & 2 != 0, s & 4 != 0, s & 8 != 0];
                    self.indicator.eval_with(&ins, &mut self.scratch, &mut out);
                    out[0]
                })
                .collect::<Vec<_>>();
            events.push(Event::Classify(k));
            (k, types)
        });

        // analysis stage: a complete block row occupies slots 0..=2
        let analyzed = match &self.delay[0] {
            Some(row) if row.index % BLOCK == BLOCK - 1 && row.index / BLOCK < self.block_rows => {
                let k = row.index / BLOCK;
                let rows = [&self.delay[2], &self.delay[1], &self.delay[0]].map(|r| r.as_ref().expect("staged row"));
                let mut out = [false; 4];
                let sums = (0..self.blocks_x)
                    .map(|bx| {
                        let mut msbs = [false; 9];
                        for (r, row) in rows.iter().enumerate() {
                            for c in 0..BLOCK {
                                msbs[r * BLOCK + c] = row.pixels[bx * BLOCK + c] & 0x80 != 0;
                            }
                        }
                        self.compressor.eval_with(&msbs, &mut self.scratch, &mut out);
                        bits_to_u8(&out)
                    })
                    .collect::<Vec<_>>();
                events.push(Event::Analyze(k));
                Some((k, sums))
            }
            _ => None,
        };

        // shift the delay line and read the next row
        self.delay.rotate_right(1);
        self.delay[0] = (self.next_row < self.image.height()).then(|| {
            let index = self.next_row;
            self.next_row += 1;
            events.push(Event::ReadRow(index));
            Row {
                index,
                pixels: self.image.row(index).to_vec(),
            }
        });

        self.sum_reg = analyzed;
        self.type_reg = classified;

        events.sort_by_key(|e| match e {
            Event::ReadRow(_) => 0,
            Event::Analyze(_) => 1,
            Event::Classify(_) => 2,
            Event::Embed(_) => 3,
            Event::WriteRow(_) => 4,
        });
        self.trace.cycles.push(CycleRecord {
            cycle: self.cycle,
            events,
        });
    }

    pub fn finish(mut self) -> (GrayImage, PipelineTrace) {
        while !self.done() {
            self.step();
        }
        self.trace.total_cycles = self.cycle;
        (self.output, self.trace)
    }
}

/// Run the pipeline to completion on a square image.
pub fn pipeline_run(image: &GrayImage, message: &WatermarkMessage, enhanced: bool) -> Result<(GrayImage, PipelineTrace)> {
    Ok(Pipeline::new(image, message, enhanced)?.finish())
}
