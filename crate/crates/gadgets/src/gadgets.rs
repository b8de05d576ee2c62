//! The four gadget kinds. Each `add` declares the gadget's own vertices and
//! edges on both sides; its boundary blocks must already exist.

use crate::builder::{Block, PairBuilder};
use crate::config::{Configuration, Inc, Side};

/// Spoiler's `a` is adjacent to every `x^i_n`; Duplicator's `a_i` to every
/// input vertex except `x^i_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinGadget {
    pub prefix: String,
    pub input: Block,
}

impl WinGadget {
    pub fn a(&self) -> String {
        format!("{}.a", self.prefix)
    }

    pub fn a_d(&self, i: u32) -> String {
        format!("{}.a.{i}", self.prefix)
    }

    pub fn add(&self, pb: &mut PairBuilder) {
        let p = pb.params();
        let c = format!("c.{}", self.prefix);
        pb.s_vertex(&self.a(), &c);
        for i in p.blocks() {
            pb.s_edge(&self.a(), &self.input.id(i, p.n));
        }
        for i in p.blocks() {
            pb.d_vertex(&self.a_d(i), &c);
            for i2 in p.blocks() {
                for s in 0..=p.m {
                    if i2 != i || s != p.m {
                        pb.d_edge(&self.a_d(i), &self.input.id(i2, s));
                    }
                }
            }
        }
    }
}

/// Increment gadget: input and output blocks joined by a matching-like edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncGadget {
    pub inc: Inc,
    pub prefix: String,
    pub input: Block,
    pub output: Block,
}

impl IncGadget {
    /// Duplicator-side neighbor row of input row `s` in block `i`.
    pub fn d_neighbor(&self, i: u32, s: u32, m: u32) -> u32 {
        let l = self.inc.level;
        match self.inc.side {
            Side::Right if i < l => s,
            Side::Right if i == l => {
                if s == 0 || s == m {
                    0
                } else {
                    s + 1
                }
            }
            _ => {
                if s == m {
                    1
                } else {
                    0
                }
            }
        }
    }

    /// Spoiler-side neighbor row of input row `j` in block `i`, if any.
    pub fn s_neighbor(&self, i: u32, j: u32, n: u32) -> Option<u32> {
        let l = self.inc.level;
        match self.inc.side {
            Side::Right => Some(j),
            Side::Left if i < l => Some(j),
            Side::Left if i == l => (j < n).then_some(j + 1),
            Side::Left => (j == n).then_some(1),
        }
    }

    pub fn add(&self, pb: &mut PairBuilder) {
        let p = pb.params();
        for i in p.blocks() {
            for j in 1..=p.n {
                if let Some(j2) = self.s_neighbor(i, j, p.n) {
                    pb.s_edge(&self.input.id(i, j), &self.output.id(i, j2));
                }
            }
            for s in 0..=p.m {
                pb.d_edge(&self.input.id(i, s), &self.output.id(i, self.d_neighbor(i, s, p.m)));
            }
        }
    }
}

/// The one-way switch between an input and an output block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchGadget {
    pub prefix: String,
    pub input: Block,
    pub output: Block,
}

impl SwitchGadget {
    pub fn a_s(&self, i: u32, j: u32) -> String {
        format!("{}.a.{i}.{j}", self.prefix)
    }

    pub fn b_s(&self, i: u32, j: u32) -> String {
        format!("{}.b.{i}.{j}", self.prefix)
    }

    /// `a^i_{s,l}` for `s ≥ 1`.
    pub fn a_d(&self, i: u32, s: u32, l: u32) -> String {
        format!("{}.a.{i}.{s}.{l}", self.prefix)
    }

    /// The hollow `a^i_0`.
    pub fn a0(&self, i: u32) -> String {
        format!("{}.a.{i}.0", self.prefix)
    }

    /// `b^i_{s,l}` for `s ≥ 0`.
    pub fn b_d(&self, i: u32, s: u32, l: u32) -> String {
        format!("{}.b.{i}.{s}.{l}", self.prefix)
    }

    pub fn a_color(&self, i: u32) -> String {
        format!("c.{}.a.{i}", self.prefix)
    }

    pub fn b_color(&self, i: u32) -> String {
        format!("c.{}.b.{i}", self.prefix)
    }

    /// Duplicator `A^i`: every `a^i_{s,l}`, then `a^i_0`.
    pub fn a_row(&self, i: u32, m: u32, kk: u32) -> Vec<String> {
        let mut out: Vec<String> = (1..=m).flat_map(|s| (1..=kk).map(move |l| (s, l))).map(|(s, l)| self.a_d(i, s, l)).collect();
        out.push(self.a0(i));
        out
    }

    pub fn add(&self, pb: &mut PairBuilder) {
        let p = pb.params();
        let (kk, n, m) = (p.kk, p.n, p.m);
        for i in p.blocks() {
            for j in 1..=n {
                pb.s_vertex(&self.a_s(i, j), &self.a_color(i));
            }
            for j in 1..=n {
                pb.s_vertex(&self.b_s(i, j), &self.b_color(i));
            }
        }
        for i in p.blocks() {
            for j in 1..=n {
                pb.s_edge(&self.input.id(i, j), &self.a_s(i, j));
                pb.s_edge(&self.a_s(i, j), &self.b_s(i, j));
                pb.s_edge(&self.b_s(i, j), &self.output.id(i, j));
            }
            for i2 in p.blocks().filter(|&i2| i2 > i) {
                for j in 1..=n {
                    for j2 in 1..=n {
                        pb.s_edge(&self.a_s(i, j), &self.a_s(i2, j2));
                        pb.s_edge(&self.b_s(i, j), &self.b_s(i2, j2));
                        pb.s_edge(&self.a_s(i, j), &self.b_s(i2, j2));
                        pb.s_edge(&self.b_s(i, j), &self.a_s(i2, j2));
                    }
                }
            }
        }

        for i in p.blocks() {
            for s in 1..=m {
                for l in 1..=kk {
                    pb.d_vertex(&self.a_d(i, s, l), &self.a_color(i));
                }
            }
            pb.d_vertex(&self.a0(i), &self.a_color(i));
            for s in 0..=m {
                for l in 1..=kk {
                    pb.d_vertex(&self.b_d(i, s, l), &self.b_color(i));
                }
            }
        }
        let pairs = |lo: u32| (lo..=m).flat_map(move |s| (1..=kk).map(move |l| (s, l)));
        for i in p.blocks() {
            let x0 = self.input.id(i, 0);
            // neutral input row and neutral a-vertex
            for a in self.a_row(i, m, kk) {
                pb.d_edge(&x0, &a);
            }
            for (s, l) in pairs(0) {
                pb.d_edge(&self.a0(i), &self.b_d(i, s, l));
            }
            for (s, l) in pairs(1) {
                // row s carried through the a- and b-vertices of level l
                pb.d_edge(&self.input.id(i, s), &self.a_d(i, s, l));
                pb.d_edge(&self.a_d(i, s, l), &self.b_d(i, s, l));
                pb.d_edge(&self.b_d(i, s, l), &self.output.id(i, s));
                // a-vertices against neutral b-vertices of other levels
                for l2 in (1..=kk).filter(|&l2| l2 != l) {
                    pb.d_edge(&self.a_d(i, s, l), &self.b_d(i, 0, l2));
                }
            }
            // neutral b-vertices reach every output row
            for l in 1..=kk {
                for s in 0..=m {
                    pb.d_edge(&self.b_d(i, 0, l), &self.output.id(i, s));
                }
            }
        }
        for i in p.blocks() {
            for j in p.blocks().filter(|&j| j != i) {
                for (s, l) in pairs(1) {
                    for (s2, l2) in pairs(0).filter(|&(_, l2)| l2 != l) {
                        // across blocks, distinct levels only
                        if s2 > 0 {
                            pb.d_edge(&self.a_d(i, s, l), &self.a_d(j, s2, l2));
                        }
                        pb.d_edge(&self.b_d(i, s, l), &self.b_d(j, s2, l2));
                        pb.d_edge(&self.a_d(i, s, l), &self.b_d(j, s2, l2));
                    }
                }
                // neutral b-vertices across blocks
                for l in 1..=kk {
                    for l2 in 1..=kk {
                        pb.d_edge(&self.b_d(i, 0, l), &self.b_d(j, 0, l2));
                    }
                }
                // neutral a-vertex against everything in other blocks, including their neutral a-vertex
                for a in self.a_row(j, m, kk) {
                    pb.d_edge(&self.a0(i), &a);
                }
                for (s, l) in pairs(0) {
                    pb.d_edge(&self.a0(i), &self.b_d(j, s, l));
                }
            }
        }
    }
}

/// Two switches fed from a selector vertex `z`, both writing to one output block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitGadget {
    pub prefix: String,
    pub q0: Configuration,
    pub output: Block,
}

impl InitGadget {
    pub fn z(&self) -> String {
        format!("{}.z", self.prefix)
    }

    /// Duplicator's `z_1` or `z_2`.
    pub fn z_d(&self, which: u32) -> String {
        format!("{}.z{which}", self.prefix)
    }

    /// Switch `M^1` or `M^2`.
    pub fn switch(&self, which: u32) -> SwitchGadget {
        let prefix = format!("{}.M{which}", self.prefix);
        SwitchGadget {
            input: Block::new(format!("{prefix}.x")),
            output: Block::new(format!("{prefix}.y")),
            prefix,
        }
    }

    pub fn add(&self, pb: &mut PairBuilder) {
        let p = pb.params();
        let c = format!("c.{}.z", self.prefix);
        pb.s_vertex(&self.z(), &c);
        pb.d_vertex(&self.z_d(1), &c);
        pb.d_vertex(&self.z_d(2), &c);
        for which in [1, 2] {
            let sw = self.switch(which);
            pb.block(sw.input.name());
            pb.block(sw.output.name());
            sw.add(pb);
        }
        for which in [1, 2] {
            let own = self.switch(which).input;
            let other = self.switch(3 - which).input;
            let z = self.z_d(which);
            for i in p.blocks() {
                pb.s_edge(&self.z(), &own.id(i, self.q0.a(i)));
                pb.d_edge(&z, &own.id(i, self.q0.b(i)));
                pb.d_edge(&z, &other.id(i, 0));
                pb.d_edge(&z, &other.id(i, self.q0.b(i)));
            }
            let out = self.switch(which).output;
            for i in p.blocks() {
                for j in 1..=p.n {
                    pb.s_edge(&out.id(i, j), &self.output.id(i, j));
                }
                for s in 0..=p.m {
                    pb.d_edge(&out.id(i, 0), &self.output.id(i, s));
                    if s > 0 {
                        pb.d_edge(&out.id(i, s), &self.output.id(i, s));
                    }
                }
            }
        }
    }
}
