use std::collections::BTreeMap;

use pdl_core::{Structure, Vertex};

use crate::builder::{Block, PairBuilder, Sides};
use crate::config::{alpha_inverse, Configuration, Inc, Params};
use crate::gadgets::{IncGadget, InitGadget, SwitchGadget, WinGadget};
use crate::GadgetError;

/// A single gadget with its own boundary blocks `x` (input) and `y` (output).
#[derive(Debug, Clone)]
pub struct GadgetPair {
    pub spoiler: Structure,
    pub duplicator: Structure,
    pub params: Params,
    pub input: Option<Block>,
    pub output: Option<Block>,
}

impl Sides for GadgetPair {
    fn spoiler(&self) -> &Structure {
        &self.spoiler
    }
    fn duplicator(&self) -> &Structure {
        &self.duplicator
    }
    fn params(&self) -> Params {
        self.params
    }
}

fn pair(params: Params, input: bool, output: bool, add: impl FnOnce(&mut PairBuilder)) -> GadgetPair {
    let mut pb = PairBuilder::new(params, "spoiler", "duplicator");
    let x = Block::new("x");
    let y = Block::new("y");
    if input {
        pb.block("x");
    }
    if output {
        pb.block("y");
    }
    add(&mut pb);
    let (spoiler, duplicator, _) = pb.finish();
    GadgetPair {
        spoiler,
        duplicator,
        params,
        input: input.then_some(x),
        output: output.then_some(y),
    }
}

pub fn win_gadget() -> WinGadget {
    WinGadget {
        prefix: "win".into(),
        input: Block::new("x"),
    }
}

pub fn build_win(params: Params) -> GadgetPair {
    pair(params, true, false, |pb| win_gadget().add(pb))
}

pub fn inc_gadget(inc: Inc) -> IncGadget {
    IncGadget {
        inc,
        prefix: inc.name(),
        input: Block::new("x"),
        output: Block::new("y"),
    }
}

pub fn build_inc(inc: Inc, params: Params) -> Result<GadgetPair, GadgetError> {
    inc.check(params)?;
    Ok(pair(params, true, true, |pb| inc_gadget(inc).add(pb)))
}

pub fn switch_gadget() -> SwitchGadget {
    SwitchGadget {
        prefix: "sw".into(),
        input: Block::new("x"),
        output: Block::new("y"),
    }
}

pub fn build_switch(params: Params) -> GadgetPair {
    pair(params, true, true, |pb| switch_gadget().add(pb))
}

pub fn init_gadget(q0: &Configuration) -> InitGadget {
    InitGadget {
        prefix: "init".into(),
        q0: q0.clone(),
        output: Block::new("y"),
    }
}

pub fn build_init(q0: &Configuration, params: Params) -> Result<GadgetPair, GadgetError> {
    q0.check(params)?;
    if !q0.is_valid() {
        return Err(GadgetError::InvalidConfiguration(q0.to_string()));
    }
    Ok(pair(params, false, true, |pb| init_gadget(q0).add(pb)))
}

/// An increment gadget of the instance together with the switch after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncStage {
    pub inc: IncGadget,
    pub switch: SwitchGadget,
}

/// Where each gadget sits inside an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub x: Block,
    pub y: Block,
    pub init: InitGadget,
    pub win: WinGadget,
    /// Right increments for levels `1..=kk`, then left increments.
    pub stages: Vec<IncStage>,
    /// The single switch from `y` back to `x`.
    pub back: SwitchGadget,
}

/// The glued hard instance `(A_n, B_m)` for `k = kk + 1` pebbles.
#[derive(Debug, Clone)]
pub struct InstancePair {
    pub a: Structure,
    pub b: Structure,
    pub k: u32,
    pub params: Params,
    pub layout: Layout,
    aliases: BTreeMap<String, String>,
}

impl Sides for InstancePair {
    fn spoiler(&self) -> &Structure {
        &self.a
    }
    fn duplicator(&self) -> &Structure {
        &self.b
    }
    fn params(&self) -> Params {
        self.params
    }
}

impl InstancePair {
    /// Canonical id of a role name (gadget-local boundary names are aliases).
    pub fn resolve<'r>(&'r self, role: &'r str) -> &'r str {
        self.aliases.get(role).map_or(role, String::as_str)
    }

    pub fn a_vertex(&self, role: &str) -> Option<Vertex> {
        self.a.index_of(self.resolve(role))
    }

    pub fn b_vertex(&self, role: &str) -> Option<Vertex> {
        self.b.index_of(self.resolve(role))
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }
}

/// Builds `(A_n, B_m)` for `k ≥ 3` pebbles.
pub fn build_instance(k: u32, n: u32, m: u32) -> Result<InstancePair, GadgetError> {
    if k < 3 {
        return Err(GadgetError::BadParams(format!("k must be at least 3 (got {k})")));
    }
    let params = Params::new(k - 1, n, m)?;
    let q0 = alpha_inverse(0, params)?;
    let mut pb = PairBuilder::new(params, &format!("A_k{k}_n{n}"), &format!("B_k{k}_m{m}"));
    let x = pb.block("x");
    let y = pb.block("y");

    let init = InitGadget {
        output: x.clone(),
        ..init_gadget(&q0)
    };
    init.add(&mut pb);
    pb.alias_block("init.y", &x);

    let win = WinGadget {
        prefix: "win".into(),
        input: x.clone(),
    };
    win.add(&mut pb);
    pb.alias_block("win.x", &x);

    let mut stages = Vec::new();
    for (g, inc) in Inc::all(params.kk).enumerate() {
        let out = pb.block(&format!("{}.y", inc.name()));
        let inc = IncGadget {
            inc,
            prefix: inc.name(),
            input: x.clone(),
            output: out.clone(),
        };
        inc.add(&mut pb);
        pb.alias_block(&format!("{}.x", inc.prefix), &x);
        let switch = SwitchGadget {
            prefix: format!("sw{}", g + 1),
            input: out.clone(),
            output: y.clone(),
        };
        switch.add(&mut pb);
        pb.alias_block(&format!("{}.x", switch.prefix), &out);
        pb.alias_block(&format!("{}.y", switch.prefix), &y);
        stages.push(IncStage { inc, switch });
    }
    let back = SwitchGadget {
        prefix: "sw0".into(),
        input: y.clone(),
        output: x.clone(),
    };
    back.add(&mut pb);
    pb.alias_block("sw0.x", &y);
    pb.alias_block("sw0.y", &x);

    let (a, b, aliases) = pb.finish();
    Ok(InstancePair {
        a,
        b,
        k,
        params,
        layout: Layout {
            x,
            y,
            init,
            win,
            stages,
            back,
        },
        aliases,
    })
}
