//! The three combinational blocks of the datapath: the 9→4 compressor that
//! sums a block's MSBs, the type indicator, and the per-pixel embedding mux.

use std::sync::OnceLock;

use super::netlist::{GateNet, NetBuilder};

/// Nine-input population count built from 5 full adders and 2 half adders.
///
/// Three FAs reduce the inputs to three weight-1 and three weight-2 bits; a
/// fourth FA sums the weight-1 bits (giving `s0`), a fifth FA and a HA fold
/// the four weight-2 bits into `s1` plus two weight-4 carries, and the last
/// HA turns those into `s2` and `s3`.
pub fn compressor_9_4_net() -> GateNet {
    let mut b = NetBuilder::new("compressor_9_4");
    let x: Vec<_> = (0..9).map(|i| b.input(format!("x{i}"))).collect();
    let (s_a, c_a) = b.full_adder(x[0], x[1], x[2]);
    let (s_b, c_b) = b.full_adder(x[3], x[4], x[5]);
    let (s_c, c_c) = b.full_adder(x[6], x[7], x[8]);
    let (s0, c_d) = b.full_adder(s_a, s_b, s_c);
    let (t, c_e) = b.full_adder(c_a, c_b, c_c);
    let (s1, c_f) = b.half_adder(t, c_d);
    let (s2, s3) = b.half_adder(c_e, c_f);
    for (i, s) in [s0, s1, s2, s3].into_iter().enumerate() {
        b.output(format!("s{i}"), s);
    }
    b.build()
}

/// `s2 ∧ ¬s3 ∧ ¬(s1 ∧ s0)`: 1 exactly for sums 4, 5 and 6 within `[0, 9]`.
/// Sums 10 to 15 never occur and their output is unconstrained.
pub fn type_indicator_net() -> GateNet {
    let mut b = NetBuilder::new("type_indicator");
    let s: Vec<_> = (0..4).map(|i| b.input(format!("s{i}"))).collect();
    let low_pair = b.nand(&[s[1], s[0]]);
    let not_s3 = b.not(s[3]);
    let out = b.and(&[s[2], not_s3, low_pair]);
    b.output("disordered", out);
    b.build()
}

/// One pixel's embedding datapath.
///
/// Inputs `p0..p7` (pixel bits, LSB first), `w`, `w_inv`, `type` and
/// `enhanced`; outputs `o0..o7`. With `type = 0` the watermark bit replaces
/// bit 2 (plane 3), with `type = 1` bit 4 (plane 5); in enhanced mode `w_inv`
/// replaces the bit just below. All other bits pass straight through.
pub fn embed_mux_net() -> GateNet {
    let mut b = NetBuilder::new("embed_mux");
    let p: Vec<_> = (0..8).map(|i| b.input(format!("p{i}"))).collect();
    let w = b.input("w");
    let w_inv = b.input("w_inv");
    let ty = b.input("type");
    let enhanced = b.input("enhanced");

    let ordered = b.not(ty);
    let o2 = b.mux(ordered, w, p[2]);
    let o4 = b.mux(ty, w, p[4]);
    let en_low = b.and(&[ordered, enhanced]);
    let o1 = b.mux(en_low, w_inv, p[1]);
    let en_high = b.and(&[ty, enhanced]);
    let o3 = b.mux(en_high, w_inv, p[3]);

    let outs = [p[0], o1, o2, o3, o4, p[5], p[6], p[7]];
    for (i, o) in outs.into_iter().enumerate() {
        b.output(format!("o{i}"), o);
    }
    b.build()
}

fn compressor() -> &'static GateNet {
    static NET: OnceLock<GateNet> = OnceLock::new();
    NET.get_or_init(compressor_9_4_net)
}

fn indicator() -> &'static GateNet {
    static NET: OnceLock<GateNet> = OnceLock::new();
    NET.get_or_init(type_indicator_net)
}

fn mux() -> &'static GateNet {
    static NET: OnceLock<GateNet> = OnceLock::new();
    NET.get_or_init(embed_mux_net)
}

pub(crate) fn bits_to_u8(bits: &[bool]) -> u8 {
    bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as u8) << i))
}

/// Gate-level evaluation of the compressor; the result is the 4-bit sum.
pub fn compressor_9_4(bits: [bool; 9]) -> u8 {
    let mut out = [false; 4];
    compressor().eval_with(&bits, &mut Vec::new(), &mut out);
    bits_to_u8(&out)
}

/// Gate-level evaluation of the type indicator on a 4-bit sum.
pub fn type_indicator(sum: u8) -> bool {
    let ins = [sum & 1 != 0, sum & 2 != 0, sum & 4 != 0, sum & 8 != 0];
    let mut out = [false];
    indicator().eval_with(&ins, &mut Vec::new(), &mut out);
    out[0]
}

/// Gate-level evaluation of the embedding mux for one pixel.
pub fn embed_mux(pixel: u8, w: bool, w_inv: bool, type_bit: bool, enhanced: bool) -> u8 {
    let mut scratch = Vec::new();
    embed_mux_with(pixel, w, w_inv, type_bit, enhanced, &mut scratch)
}

pub(crate) fn embed_mux_with(pixel: u8, w: bool, w_inv: bool, type_bit: bool, enhanced: bool, scratch: &mut Vec<bool>) -> u8 {
    let mut ins = [false; 12];
    for (i, b) in ins.iter_mut().take(8).enumerate() {
        *b = pixel >> i & 1 == 1;
    }
    ins[8] = w;
    ins[9] = w_inv;
    ins[10] = type_bit;
    ins[11] = enhanced;
    let mut out = [false; 8];
    mux().eval_with(&ins, scratch, &mut out);
    bits_to_u8(&out)
}
