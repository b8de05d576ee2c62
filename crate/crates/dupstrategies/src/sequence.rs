//! The global sequence of critical strategies on a full instance.

use pdl_gadgets::{alpha_inverse, Configuration, IncStage, InstancePair};
use pdl_pebblegame::Strategy;

use crate::gadget::{
    inc_strategy, init_critical, init_strategies, switch_in, switch_out, switch_restart, win_strategy,
};
use crate::DupError;

#[derive(Debug, Clone, Copy)]
pub struct SequenceOptions {
    /// Fail once the stored maximal maps exceed this many bytes.
    pub memory_limit: u64,
}

impl Default for SequenceOptions {
    fn default() -> Self {
        SequenceOptions {
            memory_limit: 4 << 30,
        }
    }
}

/// Rough size of the maximal maps held by `h`, in bytes.
pub fn footprint(h: &Strategy) -> u64 {
    h.alternatives()
        .iter()
        .flat_map(|alt| alt.factors())
        .flat_map(|f| f.maximal())
        .map(|m| 8 * m.len() as u64 + 32)
        .sum()
}

/// Builds the global strategies of one instance.
pub struct Globals<'i> {
    inst: &'i InstancePair,
    zero: Configuration,
    init_zero: Strategy,
}

impl<'i> Globals<'i> {
    pub fn new(inst: &'i InstancePair) -> Result<Self, DupError> {
        let zero = Configuration::zero(inst.params.kk);
        let init_zero = init_critical(inst, &inst.layout.init, &zero)?;
        Ok(Globals { inst, zero, init_zero })
    }

    fn q(&self, i: u64) -> Result<Configuration, DupError> {
        Ok(alpha_inverse(i, self.inst.params)?)
    }

    fn assemble(
        &self,
        init: &Strategy,
        x_conf: &Configuration,
        stage: impl Fn(&IncStage) -> Result<Strategy, DupError>,
        back: &Strategy,
    ) -> Result<Strategy, DupError> {
        let layout = &self.inst.layout;
        let mut acc = init.compose(&win_strategy(self.inst, &layout.win, x_conf)?)?;
        for st in &layout.stages {
            acc = acc.compose(&inc_strategy(self.inst, &st.inc, x_conf)?)?;
            acc = acc.compose(&stage(st)?)?;
        }
        Ok(acc.compose(back)?)
    }

    /// `q = α⁻¹(i)` on `x`: the applicable increment feeds its switch's input
    /// strategy, the others feed restart strategies, and the back switch plays
    /// the output strategy. `winning_init` selects the winning strategy on the
    /// initialization gadget instead of the critical one.
    pub fn g(&self, i: u64, winning_init: bool) -> Result<Strategy, DupError> {
        let inst = self.inst;
        let p = inst.params;
        let q = self.q(i)?;
        let init = if winning_init {
            init_strategies(inst, &inst.layout.init, &q)?.winning
        } else {
            init_critical(inst, &inst.layout.init, &q)?
        };
        let stage = |st: &IncStage| {
            let out = st.inc.inc.output(&q, p);
            if out.is_valid() {
                Ok(switch_in(inst, &st.switch, &out)?.strategy)
            } else {
                switch_restart(inst, &st.switch, &out)
            }
        };
        self.assemble(&init, &q, stage, &switch_out(inst, &inst.layout.back, &q)?)
    }

    /// `x` at row 0 and `q = α⁻¹(i)` on `y`; the back switch plays the input strategy.
    pub fn f(&self, i: u64) -> Result<Strategy, DupError> {
        let inst = self.inst;
        let q = self.q(i)?;
        let stage = |st: &IncStage| switch_out(inst, &st.switch, &q);
        let back = switch_in(inst, &inst.layout.back, &q)?.strategy;
        self.assemble(&self.init_zero, &self.zero, stage, &back)
    }

    /// Handles restart-critical positions of `G_i` (or of the start strategy for `i = 0`).
    pub fn g_restart(&self, i: u64, t: u32) -> Result<Strategy, DupError> {
        let inst = self.inst;
        let p = inst.params;
        let qt = self.q(i)?.with_blocked([t]);
        let init = init_critical(inst, &inst.layout.init, &qt)?;
        let stage = |st: &IncStage| switch_restart(inst, &st.switch, &st.inc.inc.output(&qt, p));
        self.assemble(&init, &qt, stage, &switch_out(inst, &inst.layout.back, &qt)?)
    }

    /// Handles restart-critical positions of `F_i`. The switches after the
    /// increments must agree with `q_t` on `y`, so they play output strategies.
    pub fn f_restart(&self, i: u64, t: u32) -> Result<Strategy, DupError> {
        let inst = self.inst;
        let qt = self.q(i)?.with_blocked([t]);
        let stage = |st: &IncStage| switch_out(inst, &st.switch, &qt);
        let back = switch_restart(inst, &inst.layout.back, &qt)?;
        self.assemble(&self.init_zero, &self.zero, stage, &back)
    }

    /// Union of the winning-initialization strategy and all restart handlers.
    pub fn start(&self, guard: &mut Guard) -> Result<Strategy, DupError> {
        let p = self.inst.params;
        let last = p.count() - 1;
        let mut acc = self.g(0, true)?;
        guard.add(&acc)?;
        for i in 0..last {
            for t in p.blocks() {
                let h = self.g_restart(i, t)?;
                guard.add(&h)?;
                acc = acc.union(&h);
            }
        }
        for i in 1..last {
            for t in p.blocks() {
                let h = self.f_restart(i, t)?;
                guard.add(&h)?;
                acc = acc.union(&h);
            }
        }
        Ok(acc)
    }
}

/// Running memory estimate against a limit.
pub struct Guard {
    used: u64,
    limit: u64,
}

impl Guard {
    pub fn new(limit: u64) -> Self {
        Guard { used: 0, limit }
    }

    pub fn add(&mut self, h: &Strategy) -> Result<(), DupError> {
        self.used += footprint(h);
        if self.used > self.limit {
            return Err(DupError::TooLarge {
                estimate: self.used,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// The sequence `G^start, F_1, G_1, …, G_{N-2}, F_{N-1}` with `N = n^kk m^kk`.
/// For `N = 1` the start configuration is already winning for Spoiler and the
/// sequence is empty.
pub fn build_duplicator_sequence(inst: &InstancePair, opts: SequenceOptions) -> Result<Vec<Strategy>, DupError> {
    let count = inst.params.count();
    if count < 2 {
        return Ok(Vec::new());
    }
    let globals = Globals::new(inst)?;
    let mut guard = Guard::new(opts.memory_limit);
    let mut seq = vec![globals.start(&mut guard)?];
    for i in 1..count {
        let f = globals.f(i)?;
        guard.add(&f)?;
        seq.push(f);
        if i + 1 < count {
            let g = globals.g(i, false)?;
            guard.add(&g)?;
            seq.push(g);
        }
    }
    Ok(seq)
}
