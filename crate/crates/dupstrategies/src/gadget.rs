//! Duplicator strategies on single gadgets.

use std::collections::BTreeSet;

use pdl_core::{PartialMap, Vertex};
use pdl_gadgets::{Block, Configuration, IncGadget, InitGadget, Sides, SwitchGadget, WinGadget};
use pdl_pebblegame::{Family, Strategy};

use crate::DupError;

/// All permutations of `1..=kk` in lexicographic order; `σ[i-1] = σ(i)`.
pub fn permutations(kk: u32) -> Vec<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for idx in 0..rest.len() {
            let v = rest.remove(idx);
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            rest.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=kk).collect(), &mut Vec::new(), &mut out);
    out
}

struct Pairs<'g, S: Sides> {
    g: &'g S,
    pairs: Vec<(Vertex, Vertex)>,
}

impl<'g, S: Sides> Pairs<'g, S> {
    fn new(g: &'g S) -> Self {
        Pairs { g, pairs: Vec::new() }
    }

    fn put(&mut self, s: &str, d: &str) {
        self.pairs.push((self.g.s(s), self.g.d(d)));
    }

    fn block(&mut self, q: &Configuration, block: &Block) {
        let h = self.g.h_block(q, block).expect("block of this gadget");
        self.pairs.extend(h.iter());
    }

    fn done(self) -> PartialMap {
        PartialMap::from_pairs(self.pairs).expect("each vertex is assigned once")
    }
}

fn family(region: Vec<Vertex>, maximal: Vec<PartialMap>) -> Family {
    Family::new(region, maximal).expect("maximal maps stay inside the gadget")
}

/// Winning strategy on the winning gadget for `q ≠ q_win`: answer `a` with
/// `a_j` for the least block `j` whose `x^j_n` is not sent to `x^j_m`.
pub fn win_strategy<S: Sides>(g: &S, win: &WinGadget, q: &Configuration) -> Result<Strategy, DupError> {
    let p = g.params();
    q.check(p)?;
    let j = p
        .blocks()
        .find(|&j| q.is_blocked(j) || q.a(j) != p.n || q.b(j) != p.m)
        .ok_or(DupError::WinningConfiguration)?;
    let mut h = Pairs::new(g);
    h.block(q, &win.input);
    h.put(&win.a(), &win.a_d(j));
    let h = h.done();
    let mut region = g.block_vertices(&win.input);
    region.push(g.s(&win.a()));
    Ok(Strategy::from_family(family(region, vec![h]), []))
}

/// Winning strategy on an increment gadget: `h^x_q` on the input and the
/// configuration the gadget realizes on the output (the successor when the
/// gadget is applicable, an invalid configuration otherwise).
pub fn inc_strategy<S: Sides>(g: &S, inc: &IncGadget, q: &Configuration) -> Result<Strategy, DupError> {
    let p = g.params();
    q.check(p)?;
    let out = inc.inc.output(q, p);
    let mut h = Pairs::new(g);
    h.block(q, &inc.input);
    h.block(&out, &inc.output);
    let mut region = g.block_vertices(&inc.input);
    region.extend(g.block_vertices(&inc.output));
    Ok(Strategy::from_family(family(region, vec![h.done()]), []))
}

fn switch_region<S: Sides>(g: &S, sw: &SwitchGadget) -> Vec<Vertex> {
    let p = g.params();
    let mut region = g.block_vertices(&sw.input);
    for i in p.blocks() {
        for j in 1..=p.n {
            region.push(g.s(&sw.a_s(i, j)));
            region.push(g.s(&sw.b_s(i, j)));
        }
    }
    region.extend(g.block_vertices(&sw.output));
    region
}

/// Output strategy: input at row 0, output at `h^y_q`. For valid `q` it also
/// holds the maps that carry `q` through the switch, one per permutation.
pub fn switch_out<S: Sides>(g: &S, sw: &SwitchGadget, q: &Configuration) -> Result<Strategy, DupError> {
    let p = g.params();
    q.check(p)?;
    let zero = Configuration::zero(p.kk);
    let mut maximal = Vec::new();
    let mut h = Pairs::new(g);
    h.block(&zero, &sw.input);
    for i in p.blocks() {
        for j in 1..=p.n {
            h.put(&sw.a_s(i, j), &sw.a0(i));
            h.put(&sw.b_s(i, j), &sw.b_d(i, 0, 1));
        }
    }
    h.block(q, &sw.output);
    maximal.push(h.done());
    if q.is_valid() {
        for sigma in permutations(p.kk) {
            let mut h = Pairs::new(g);
            h.block(&zero, &sw.input);
            for i in p.blocks() {
                let l = sigma[i as usize - 1];
                for j in 1..=p.n {
                    if j == q.a(i) {
                        h.put(&sw.a_s(i, j), &sw.a_d(i, q.b(i), l));
                        h.put(&sw.b_s(i, j), &sw.b_d(i, q.b(i), l));
                    } else {
                        h.put(&sw.a_s(i, j), &sw.a0(i));
                        h.put(&sw.b_s(i, j), &sw.b_d(i, 0, l));
                    }
                }
            }
            h.block(q, &sw.output);
            maximal.push(h.done());
        }
    }
    Ok(Strategy::from_family(family(switch_region(g, sw), maximal), []))
}

/// Restart strategy for invalid `q`: input at `h^x_q`, output at row 0. The
/// maximal maps are the total homomorphisms `g_{σ,t}` for every permutation
/// `σ` and blocked `t`.
pub fn switch_restart<S: Sides>(g: &S, sw: &SwitchGadget, q: &Configuration) -> Result<Strategy, DupError> {
    let p = g.params();
    q.check(p)?;
    if q.is_valid() {
        return Err(DupError::NeedsInvalid(q.to_string()));
    }
    let zero = Configuration::zero(p.kk);
    let mut maximal = Vec::new();
    for sigma in permutations(p.kk) {
        for &t in q.t() {
            let mut h = Pairs::new(g);
            h.block(q, &sw.input);
            for i in p.blocks() {
                for j in 1..=p.n {
                    if j == q.a(i) && !q.is_blocked(i) {
                        h.put(&sw.a_s(i, j), &sw.a_d(i, q.b(i), sigma[i as usize - 1]));
                    } else {
                        h.put(&sw.a_s(i, j), &sw.a0(i));
                    }
                    h.put(&sw.b_s(i, j), &sw.b_d(i, 0, sigma[t as usize - 1]));
                }
            }
            h.block(&zero, &sw.output);
            maximal.push(h.done());
        }
    }
    Ok(Strategy::from_family(family(switch_region(g, sw), maximal), []))
}

/// Critical input strategy of a switch with its two kinds of critical positions.
#[derive(Debug, Clone)]
pub struct SwitchIn {
    pub strategy: Strategy,
    /// Positions handled by the output strategy for the same configuration.
    pub out_crit: BTreeSet<PartialMap>,
    /// Entry `t-1`: positions handled by the restart strategy for `(a, b, {t})`.
    pub restart_crit: Vec<BTreeSet<PartialMap>>,
}

/// Input strategy for valid `q`: input at `h^x_q`, output at row 0, with the
/// `a`-row sent into `A^i_+` along a permutation.
pub fn switch_in<S: Sides>(g: &S, sw: &SwitchGadget, q: &Configuration) -> Result<SwitchIn, DupError> {
    let p = g.params();
    q.check(p)?;
    if !q.is_valid() {
        return Err(DupError::NeedsValid(q.to_string()));
    }
    let zero = Configuration::zero(p.kk);
    let a_img = |i: u32, l: u32| sw.a_d(i, q.b(i), l);
    // With `b_level = Some(l)` the b-row goes to `b_{0,l}` and the block with
    // σ(i) = l is undefined on the a-row; with None the b-row is undefined.
    let base = |sigma: &[u32], b_level: Option<u32>| {
        let mut h = Pairs::new(g);
        h.block(q, &sw.input);
        for i in p.blocks() {
            let l = sigma[i as usize - 1];
            for j in 1..=p.n {
                if j != q.a(i) {
                    h.put(&sw.a_s(i, j), &sw.a0(i));
                } else if b_level != Some(l) {
                    h.put(&sw.a_s(i, j), &a_img(i, l));
                }
                if let Some(lb) = b_level {
                    h.put(&sw.b_s(i, j), &sw.b_d(i, 0, lb));
                }
            }
        }
        h.block(&zero, &sw.output);
        h.done()
    };
    let sigmas = permutations(p.kk);
    let mut maximal = Vec::new();
    for sigma in &sigmas {
        maximal.push(base(sigma, None));
        for l in p.blocks() {
            maximal.push(base(sigma, Some(l)));
        }
    }
    let mut out_crit = BTreeSet::new();
    let mut restart_crit = vec![BTreeSet::new(); p.kk as usize];
    for sigma in &sigmas {
        let row = |skip: Option<u32>| {
            let mut h = Pairs::new(g);
            for i in p.blocks().filter(|&i| Some(i) != skip) {
                h.put(&sw.a_s(i, q.a(i)), &a_img(i, sigma[i as usize - 1]));
            }
            h
        };
        out_crit.insert(row(None).done());
        for t in p.blocks() {
            for u in p.blocks() {
                for s in 1..=p.n {
                    let mut h = row(Some(t));
                    h.put(&sw.b_s(u, s), &sw.b_d(u, 0, sigma[t as usize - 1]));
                    restart_crit[t as usize - 1].insert(h.done());
                }
            }
        }
    }
    let crit: Vec<PartialMap> = out_crit.iter().chain(restart_crit.iter().flatten()).cloned().collect();
    Ok(SwitchIn {
        strategy: Strategy::from_family(family(switch_region(g, sw), maximal), crit),
        out_crit,
        restart_crit,
    })
}

/// Strategies on the initialization gadget.
#[derive(Debug, Clone)]
pub struct InitStrategies {
    /// Winning, with boundary `h^y_{q0}`.
    pub winning: Strategy,
    /// Critical, with boundary `h^y_{q'}`; its critical positions lie in `winning`.
    pub critical: Strategy,
}

fn single<S: Sides>(g: &S, s: &str, d: &str) -> Strategy {
    let h = PartialMap::singleton(g.s(s), g.d(d));
    Strategy::from_family(family(vec![g.s(s)], vec![h]), [])
}

fn block_strategy<S: Sides>(g: &S, q: &Configuration, block: &Block) -> Strategy {
    let h = g.h_block(q, block).expect("block of this gadget");
    Strategy::from_family(family(g.block_vertices(block), vec![h]), [])
}

fn compose_all(parts: &[&Strategy]) -> Result<Strategy, DupError> {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = acc.compose(p)?;
    }
    Ok(acc)
}

/// The critical strategy `I^init_{q'}` alone.
pub fn init_critical<S: Sides>(g: &S, init: &InitGadget, q_out: &Configuration) -> Result<Strategy, DupError> {
    let p = g.params();
    q_out.check(p)?;
    let q0 = &init.q0;
    let (m1, m2) = (init.switch(1), init.switch(2));
    let y = block_strategy(g, q_out, &init.output);
    let in1 = switch_in(g, &m1, q0)?.strategy;
    let in2 = switch_in(g, &m2, q0)?.strategy;
    let mut acc: Option<Strategy> = None;
    for t in p.blocks() {
        let qt = q0.with_blocked([t]);
        let first = compose_all(&[&single(g, &init.z(), &init.z_d(1)), &in1, &switch_restart(g, &m2, &qt)?, &y])?;
        let second = compose_all(&[&single(g, &init.z(), &init.z_d(2)), &switch_restart(g, &m1, &qt)?, &in2, &y])?;
        let both = first.union(&second);
        acc = Some(match acc {
            None => both,
            Some(a) => a.union(&both),
        });
    }
    Ok(acc.expect("at least one block"))
}

pub fn init_strategies<S: Sides>(g: &S, init: &InitGadget, q_out: &Configuration) -> Result<InitStrategies, DupError> {
    let p = g.params();
    let q0 = &init.q0;
    q0.check(p)?;
    if !q0.is_valid() {
        return Err(DupError::NeedsValid(q0.to_string()));
    }
    let (m1, m2) = (init.switch(1), init.switch(2));
    let y = block_strategy(g, q0, &init.output);
    let one = compose_all(&[
        &single(g, &init.z(), &init.z_d(2)),
        &switch_out(g, &m1, q0)?,
        &switch_in(g, &m2, q0)?.strategy,
        &y,
    ])?;
    let two = compose_all(&[
        &single(g, &init.z(), &init.z_d(1)),
        &switch_in(g, &m1, q0)?.strategy,
        &switch_out(g, &m2, q0)?,
        &y,
    ])?;
    let winning = one.union(&two).union(&init_critical(g, init, q0)?);
    let critical = init_critical(g, init, q_out)?;
    Ok(InitStrategies { winning, critical })
}
