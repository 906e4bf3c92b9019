//! Two-valued combinational netlists of logic gates and adder cells.
//!
//! Nets are numbered in creation order and every cell may only read nets
//! that already exist, so a netlist built through [`NetBuilder`] is acyclic
//! and its cell list is already in topological order.

use std::fmt;

pub type Net = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    And(Vec<Net>),
    Or(Vec<Net>),
    Xor(Vec<Net>),
    Nand(Vec<Net>),
    Not(Net),
    /// Outputs `[sum, carry]`.
    FullAdder { a: Net, b: Net, cin: Net },
    /// Outputs `[sum, carry]`.
    HalfAdder { a: Net, b: Net },
}

impl Cell {
    fn kind(&self) -> &'static str {
        match self {
            Cell::And(_) => "AND",
            Cell::Or(_) => "OR",
            Cell::Xor(_) => "XOR",
            Cell::Nand(_) => "NAND",
            Cell::Not(_) => "NOT",
            Cell::FullAdder { .. } => "FA",
            Cell::HalfAdder { .. } => "HA",
        }
    }

    fn inputs(&self) -> Vec<Net> {
        match self {
            Cell::And(v) | Cell::Or(v) | Cell::Xor(v) | Cell::Nand(v) => v.clone(),
            Cell::Not(a) => vec![*a],
            Cell::FullAdder { a, b, cin } => vec![*a, *b, *cin],
            Cell::HalfAdder { a, b } => vec![*a, *b],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub cell: Cell,
    pub outputs: Vec<Net>,
}

/// Cell usage of a netlist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CellCounts {
    pub full_adders: usize,
    pub half_adders: usize,
    pub gates: usize,
}

#[derive(Clone, Debug)]
pub struct GateNet {
    name: String,
    net_count: usize,
    inputs: Vec<(String, Net)>,
    outputs: Vec<(String, Net)>,
    cells: Vec<Instance>,
}

impl GateNet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> &[(String, Net)] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[(String, Net)] {
        &self.outputs
    }

    pub fn cells(&self) -> &[Instance] {
        &self.cells
    }

    pub fn net_count(&self) -> usize {
        self.net_count
    }

    pub fn counts(&self) -> CellCounts {
        let mut c = CellCounts::default();
        for inst in &self.cells {
            match inst.cell {
                Cell::FullAdder { .. } => c.full_adders += 1,
                Cell::HalfAdder { .. } => c.half_adders += 1,
                _ => c.gates += 1,
            }
        }
        c
    }

    /// Evaluate with a caller-owned net buffer, writing output values into `out`.
    pub fn eval_with(&self, inputs: &[bool], nets: &mut Vec<bool>, out: &mut [bool]) {
        assert_eq!(inputs.len(), self.inputs.len(), "input width of {}", self.name);
        assert_eq!(out.len(), self.outputs.len(), "output width of {}", self.name);
        nets.clear();
        nets.resize(self.net_count, false);
        for ((_, net), &v) in self.inputs.iter().zip(inputs) {
            nets[*net] = v;
        }
        for inst in &self.cells {
            match &inst.cell {
                Cell::And(v) => nets[inst.outputs[0]] = v.iter().all(|&n| nets[n]),
                Cell::Or(v) => nets[inst.outputs[0]] = v.iter().any(|&n| nets[n]),
                Cell::Xor(v) => nets[inst.outputs[0]] = v.iter().fold(false, |acc, &n| acc ^ nets[n]),
                Cell::Nand(v) => nets[inst.outputs[0]] = !v.iter().all(|&n| nets[n]),
                Cell::Not(a) => nets[inst.outputs[0]] = !nets[*a],
                Cell::FullAdder { a, b, cin } => {
                    let (a, b, c) = (nets[*a], nets[*b], nets[*cin]);
                    nets[inst.outputs[0]] = a ^ b ^ c;
                    nets[inst.outputs[1]] = (a & b) | (c & (a ^ b));
                }
                Cell::HalfAdder { a, b } => {
                    let (a, b) = (nets[*a], nets[*b]);
                    nets[inst.outputs[0]] = a ^ b;
                    nets[inst.outputs[1]] = a & b;
                }
            }
        }
        for (o, (_, net)) in out.iter_mut().zip(&self.outputs) {
            *o = nets[*net];
        }
    }

    pub fn eval(&self, inputs: &[bool]) -> Vec<bool> {
        let mut nets = Vec::new();
        let mut out = vec![false; self.outputs.len()];
        self.eval_with(inputs, &mut nets, &mut out);
        out
    }

    /// One cell per line, e.g. `u0 FA a=n0 b=n1 cin=n2 -> n9 n10`.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GateNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "netlist {}", self.name)?;
        for (name, net) in &self.inputs {
            writeln!(f, "input {name} n{net}")?;
        }
        for (i, inst) in self.cells.iter().enumerate() {
            let ins: Vec<String> = match &inst.cell {
                Cell::FullAdder { a, b, cin } => vec![format!("a=n{a}"), format!("b=n{b}"), format!("cin=n{cin}")],
                Cell::HalfAdder { a, b } => vec![format!("a=n{a}"), format!("b=n{b}")],
                other => other.inputs().iter().map(|n| format!("n{n}")).collect(),
            };
            let outs: Vec<String> = inst.outputs.iter().map(|n| format!("n{n}")).collect();
            writeln!(f, "u{i} {} {} -> {}", inst.cell.kind(), ins.join(" "), outs.join(" "))?;
        }
        for (name, net) in &self.outputs {
            writeln!(f, "output {name} n{net}")?;
        }
        Ok(())
    }
}

/// Incremental netlist construction.
#[derive(Debug, Default)]
pub struct NetBuilder {
    name: String,
    net_count: usize,
    inputs: Vec<(String, Net)>,
    outputs: Vec<(String, Net)>,
    cells: Vec<Instance>,
}

impl NetBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    fn fresh(&mut self) -> Net {
        self.net_count += 1;
        self.net_count - 1
    }

    fn check(&self, nets: &[Net]) {
        for &n in nets {
            assert!(n < self.net_count, "net n{n} used before it is driven");
        }
    }

    fn push(&mut self, cell: Cell, width: usize) -> Vec<Net> {
        self.check(&cell.inputs());
        let outputs: Vec<Net> = (0..width).map(|_| self.fresh()).collect();
        self.cells.push(Instance {
            cell,
            outputs: outputs.clone(),
        });
        outputs
    }

    pub fn input(&mut self, name: impl Into<String>) -> Net {
        let n = self.fresh();
        self.inputs.push((name.into(), n));
        n
    }

    pub fn output(&mut self, name: impl Into<String>, net: Net) {
        self.check(&[net]);
        self.outputs.push((name.into(), net));
    }

    pub fn and(&mut self, ins: &[Net]) -> Net {
        self.push(Cell::And(ins.to_vec()), 1)[0]
    }

    pub fn or(&mut self, ins: &[Net]) -> Net {
        self.push(Cell::Or(ins.to_vec()), 1)[0]
    }

    pub fn xor(&mut self, ins: &[Net]) -> Net {
        self.push(Cell::Xor(ins.to_vec()), 1)[0]
    }

    pub fn nand(&mut self, ins: &[Net]) -> Net {
        self.push(Cell::Nand(ins.to_vec()), 1)[0]
    }

    pub fn not(&mut self, a: Net) -> Net {
        self.push(Cell::Not(a), 1)[0]
    }

    /// `(sum, carry)`
    pub fn full_adder(&mut self, a: Net, b: Net, cin: Net) -> (Net, Net) {
        let o = self.push(Cell::FullAdder { a, b, cin }, 2);
        (o[0], o[1])
    }

    /// `(sum, carry)`
    pub fn half_adder(&mut self, a: Net, b: Net) -> (Net, Net) {
        let o = self.push(Cell::HalfAdder { a, b }, 2);
        (o[0], o[1])
    }

    /// 2:1 multiplexer from gates: `sel ? one : zero`.
    pub fn mux(&mut self, sel: Net, one: Net, zero: Net) -> Net {
        let nsel = self.not(sel);
        let a = self.and(&[sel, one]);
        let b = self.and(&[nsel, zero]);
        self.or(&[a, b])
    }

    pub fn build(self) -> GateNet {
        GateNet {
            name: self.name,
            net_count: self.net_count,
            inputs: self.inputs,
            outputs: self.outputs,
            cells: self.cells,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adder_cells_truth_tables() {
        let mut b = NetBuilder::new("fa");
        let (x, y, z) = (b.input("x"), b.input("y"), b.input("z"));
        let (s, c) = b.full_adder(x, y, z);
        let (hs, hc) = b.half_adder(x, y);
        b.output("s", s);
        b.output("c", c);
        b.output("hs", hs);
        b.output("hc", hc);
        let net = b.build();
        for v in 0..8u8 {
            let ins = [v & 1 == 1, v & 2 == 2, v & 4 == 4];
            let out = net.eval(&ins);
            let total = ins.iter().filter(|&&b| b).count();
            assert_eq!(out[0] as usize + 2 * out[1] as usize, total);
            let half = ins[0] as usize + ins[1] as usize;
            assert_eq!(out[2] as usize + 2 * out[3] as usize, half);
        }
    }

    #[test]
    fn mux_selects() {
        let mut b = NetBuilder::new("mux");
        let (s, one, zero) = (b.input("s"), b.input("one"), b.input("zero"));
        let m = b.mux(s, one, zero);
        b.output("m", m);
        let net = b.build();
        for v in 0..8u8 {
            let (s, one, zero) = (v & 1 == 1, v & 2 == 2, v & 4 == 4);
            assert_eq!(net.eval(&[s, one, zero])[0], if s { one } else { zero });
        }
        assert_eq!(net.counts(), CellCounts { full_adders: 0, half_adders: 0, gates: 4 });
    }

    #[test]
    #[should_panic(expected = "used before it is driven")]
    fn rejects_forward_reference() {
        let mut b = NetBuilder::new("bad");
        let a = b.input("a");
        b.and(&[a, 7]);
    }

    #[test]
    fn dump_format() {
        let mut b = NetBuilder::new("t");
        let a = b.input("a");
        let n = b.not(a);
        b.output("y", n);
        let text = b.build().dump();
        assert_eq!(text, "netlist t\ninput a n0\nu0 NOT n0 -> n1\noutput y n1\n");
    }
}
