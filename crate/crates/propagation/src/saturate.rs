use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use pdl_core::{Exec, HomChecker, PartialMap, Structure, Vertex};

use crate::derivation::{Derivation, DerivationLine, LineKind};
use crate::PropagationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every derivable map is added each round; round labels are minimal depths.
    ParallelRounds,
    /// Worklist order; only the final fixpoint is meaningful.
    Fifo,
}

/// Why `p ∪ {pivot ↦ b}` is inconsistent for one `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Premise {
    Axiom(PartialMap),
    Derived(usize),
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub map: PartialMap,
    /// Round label in parallel-rounds mode; witness depth in fifo mode.
    pub round: u32,
    pub pivot: Vertex,
    /// One premise per same-colored candidate of the pivot, in B's vertex order.
    /// Every other B-vertex is refuted by the color axiom `{pivot ↦ b}`.
    pub premises: Vec<Premise>,
}

#[derive(Debug, Clone)]
pub struct SaturationResult {
    k: usize,
    mode: Mode,
    entries: Vec<Entry>,
    index: HashMap<PartialMap, usize>,
    rounds: u32,
}

impl SaturationResult {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn refuted(&self) -> bool {
        self.index.contains_key(&PartialMap::new())
    }

    /// Label of the empty map, i.e. the propagation depth in parallel-rounds mode.
    pub fn empty_round(&self) -> Option<u32> {
        self.round_of(&PartialMap::new())
    }

    pub fn round_of(&self, p: &PartialMap) -> Option<u32> {
        self.index.get(p).map(|&i| self.entries[i].round)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Number of rounds (parallel) or derivation steps (fifo) performed.
    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    /// Inconsistent in the closure sense: some submap was derived.
    pub fn is_inconsistent(&self, p: &PartialMap) -> bool {
        p.subsets().iter().any(|s| self.index.contains_key(s))
    }

    /// The derived maps that have no derived proper submap. Equal for both modes.
    pub fn minimal_inconsistent(&self) -> BTreeSet<PartialMap> {
        self.entries
            .iter()
            .filter(|e| {
                e.map
                    .subsets()
                    .iter()
                    .all(|s| s.len() == e.map.len() || !self.index.contains_key(s))
            })
            .map(|e| e.map.clone())
            .collect()
    }
}

struct Engine<'s> {
    hc: HomChecker<'s>,
    k: usize,
    index: HashMap<PartialMap, usize>,
    entries: Vec<Entry>,
}

impl<'s> Engine<'s> {
    fn has_derived_subset(&self, p: &PartialMap) -> bool {
        p.subsets().iter().any(|s| self.index.contains_key(s))
    }

    /// Least inconsistent submap of `p ∪ {x ↦ b}` containing `x`, as a premise.
    fn premise(&self, p: &PartialMap, x: Vertex, b: Vertex) -> Option<(PartialMap, Premise)> {
        let mut best: Option<(PartialMap, Premise)> = None;
        let mut offer = |m: PartialMap, pr: Premise| {
            if best.as_ref().is_none_or(|(bm, _)| m < *bm) {
                best = Some((m, pr));
            }
        };
        if !self.hc.pair_ok(x, b) {
            offer(PartialMap::singleton(x, b), Premise::Axiom(PartialMap::singleton(x, b)));
        }
        for (u, v) in p.iter() {
            if !self.hc.edge_ok(x, b, u, v) {
                let m = PartialMap::from_pairs([(u, v), (x, b)]).expect("x outside dom(p)");
                offer(m.clone(), Premise::Axiom(m));
            }
        }
        for s in p.subsets() {
            if s.len() + 1 > self.k - 1 {
                continue;
            }
            let m = s.with(x, b).expect("x outside dom(p)");
            if let Some(&i) = self.index.get(&m) {
                offer(m, Premise::Derived(i));
            }
        }
        best
    }

    fn try_pivot(&self, p: &PartialMap, x: Vertex) -> Option<Vec<Premise>> {
        self.hc
            .candidates(x)
            .iter()
            .map(|&b| self.premise(p, x, b).map(|(_, pr)| pr))
            .collect()
    }

    fn least_pivot(&self, p: &PartialMap) -> Option<(Vertex, Vec<Premise>)> {
        self.hc
            .a()
            .vertices()
            .filter(|&x| !p.contains_vertex(x))
            .find_map(|x| self.try_pivot(p, x).map(|pr| (x, pr)))
    }

    fn premise_depth(&self, pr: &Premise) -> u32 {
        match pr {
            Premise::Axiom(_) => 0,
            Premise::Derived(i) => self.entries[*i].round,
        }
    }

    fn insert(&mut self, map: PartialMap, round: u32, pivot: Vertex, premises: Vec<Premise>) -> usize {
        let i = self.entries.len();
        self.index.insert(map.clone(), i);
        self.entries.push(Entry {
            map,
            round,
            pivot,
            premises,
        });
        i
    }

    /// Homomorphic supersets of `base` of size ≤ k−1 that avoid vertex `avoid`.
    fn supersets(&self, base: &PartialMap, avoid: Option<Vertex>, out: &mut Vec<PartialMap>) {
        fn go(
            e: &Engine,
            cur: &PartialMap,
            from: Vertex,
            base: &PartialMap,
            avoid: Option<Vertex>,
            out: &mut Vec<PartialMap>,
        ) {
            out.push(cur.clone());
            if cur.len() >= e.k - 1 {
                return;
            }
            let n = e.hc.a().len() as Vertex;
            for v in from..n {
                if Some(v) == avoid || base.contains_vertex(v) {
                    continue;
                }
                for &b in e.hc.candidates(v) {
                    if e.hc.extends(cur, v, b) {
                        let next = cur.with(v, b).expect("fresh vertex");
                        go(e, &next, v + 1, base, avoid, out);
                    }
                }
            }
        }
        if self.hc.is_hom(base) {
            go(self, base, 0, base, avoid, out);
        }
    }

    /// Candidate (map, pivot) pairs whose premise set changed when `s` was derived.
    fn affected(&self, s: &PartialMap, out: &mut Vec<(PartialMap, Vertex)>) {
        let mut buf = Vec::new();
        for (x, _) in s.iter() {
            buf.clear();
            self.supersets(&s.without(x), Some(x), &mut buf);
            out.extend(buf.drain(..).map(|p| (p, x)));
        }
    }
}

fn check_args(b: &Structure, k: usize) -> Result<(), PropagationError> {
    if k < 2 {
        return Err(PropagationError::BadK(k));
    }
    if b.is_empty() {
        return Err(PropagationError::EmptyB);
    }
    Ok(())
}

pub fn saturate(a: &Structure, b: &Structure, k: usize, mode: Mode) -> Result<SaturationResult, PropagationError> {
    saturate_with(a, b, k, mode, &Exec::sequential())
}

/// [`saturate`] with an explicit worker pool. Output is identical for any pool.
pub fn saturate_with(
    a: &Structure,
    b: &Structure,
    k: usize,
    mode: Mode,
    exec: &Exec,
) -> Result<SaturationResult, PropagationError> {
    check_args(b, k)?;
    let mut eng = Engine {
        hc: HomChecker::new(a, b),
        k,
        index: HashMap::new(),
        entries: Vec::new(),
    };
    let mut universe = Vec::new();
    eng.supersets(&PartialMap::new(), None, &mut universe);
    universe.sort();
    let rounds = match mode {
        Mode::ParallelRounds => parallel_rounds(&mut eng, universe, exec),
        Mode::Fifo => fifo(&mut eng, universe),
    };
    Ok(SaturationResult {
        k,
        mode,
        entries: eng.entries,
        index: eng.index,
        rounds,
    })
}

type Outcome = (PartialMap, Option<(Vertex, Vec<Premise>)>);

fn parallel_rounds(eng: &mut Engine, universe: Vec<PartialMap>, exec: &Exec) -> u32 {
    let first: Vec<Outcome> = {
        let e = &*eng;
        exec.map(&universe, |p| (p.clone(), e.least_pivot(p)))
    };
    let mut fresh = commit(eng, first, 1);
    let mut round = 1;
    while !fresh.is_empty() && !eng.index.contains_key(&PartialMap::new()) {
        round += 1;
        let mut pairs = Vec::new();
        for &i in &fresh {
            eng.affected(&eng.entries[i].map, &mut pairs);
        }
        let mut groups: BTreeMap<PartialMap, BTreeSet<Vertex>> = BTreeMap::new();
        for (p, x) in pairs {
            if !eng.index.contains_key(&p) {
                groups.entry(p).or_default().insert(x);
            }
        }
        let groups: Vec<(PartialMap, BTreeSet<Vertex>)> = groups.into_iter().collect();
        let results = {
            let e = &*eng;
            exec.map(&groups, |(p, xs)| {
                if e.has_derived_subset(p) {
                    return (p.clone(), None);
                }
                let found = xs.iter().find_map(|&x| e.try_pivot(p, x).map(|pr| (x, pr)));
                (p.clone(), found)
            })
        };
        fresh = commit(eng, results, round);
    }
    round
}

fn commit(eng: &mut Engine, results: Vec<Outcome>, round: u32) -> Vec<usize> {
    results
        .into_iter()
        .filter_map(|(p, r)| r.map(|(x, pr)| eng.insert(p, round, x, pr)))
        .collect()
}

fn fifo(eng: &mut Engine, universe: Vec<PartialMap>) -> u32 {
    let mut queued: HashSet<PartialMap> = universe.iter().cloned().collect();
    let mut queue: VecDeque<PartialMap> = universe.into();
    let mut steps = 0;
    while let Some(p) = queue.pop_front() {
        queued.remove(&p);
        if eng.index.contains_key(&PartialMap::new()) {
            break;
        }
        if eng.has_derived_subset(&p) {
            continue;
        }
        let Some((x, premises)) = eng.least_pivot(&p) else {
            continue;
        };
        let depth = 1 + premises.iter().map(|pr| eng.premise_depth(pr)).max().unwrap_or(0);
        steps += 1;
        let i = eng.insert(p, depth, x, premises);
        let mut pairs = Vec::new();
        eng.affected(&eng.entries[i].map, &mut pairs);
        for (q, _) in pairs {
            if !eng.index.contains_key(&q) && queued.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    steps
}

/// `depth^k(A, B)`: the round label of the empty map, absent if k-consistency holds.
pub fn depth_via_saturation(a: &Structure, b: &Structure, k: usize) -> Result<Option<u32>, PropagationError> {
    Ok(saturate(a, b, k, Mode::ParallelRounds)?.empty_round())
}

/// Builds the refutation recorded by `result`, premises before conclusions.
pub fn extract_refutation(
    result: &SaturationResult,
    a: &Structure,
    b: &Structure,
) -> Result<Derivation, PropagationError> {
    let Some(&root) = result.index.get(&PartialMap::new()) else {
        return Err(PropagationError::NotRefuted);
    };
    let hc = HomChecker::new(a, b);
    let mut lines: Vec<DerivationLine> = Vec::new();
    let mut axiom_ids: HashMap<PartialMap, usize> = HashMap::new();
    let mut entry_ids: HashMap<usize, usize> = HashMap::new();
    let mut axiom = |lines: &mut Vec<DerivationLine>, m: PartialMap| -> usize {
        *axiom_ids.entry(m.clone()).or_insert_with(|| {
            lines.push(DerivationLine {
                id: lines.len(),
                map: m,
                kind: LineKind::Axiom,
                round: 0,
            });
            lines.len() - 1
        })
    };
    // Iterative post-order over entries.
    let mut stack = vec![(root, false)];
    while let Some((e, expanded)) = stack.pop() {
        if entry_ids.contains_key(&e) {
            continue;
        }
        let entry = &result.entries[e];
        if !expanded {
            stack.push((e, true));
            for pr in entry.premises.iter().rev() {
                if let Premise::Derived(j) = pr {
                    if !entry_ids.contains_key(j) {
                        stack.push((*j, false));
                    }
                }
            }
            continue;
        }
        let x = entry.pivot;
        let cands = hc.candidates(x);
        let mut premises = Vec::with_capacity(b.len());
        let mut round = 0;
        let mut next = 0;
        for bv in b.vertices() {
            let id = if next < cands.len() && cands[next] == bv {
                let pr = &entry.premises[next];
                next += 1;
                match pr {
                    Premise::Axiom(m) => axiom(&mut lines, m.clone()),
                    Premise::Derived(j) => entry_ids[j],
                }
            } else {
                axiom(&mut lines, PartialMap::singleton(x, bv))
            };
            round = round.max(lines[id].round + 1);
            premises.push(id);
        }
        let id = lines.len();
        lines.push(DerivationLine {
            id,
            map: entry.map.clone(),
            kind: LineKind::Propagated { pivot: x, premises },
            round,
        });
        entry_ids.insert(e, id);
    }
    Ok(Derivation { k: result.k, lines })
}
