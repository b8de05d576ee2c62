use std::fmt;

use pdl_core::{HomChecker, PartialMap, Structure, Vertex};

use crate::strategy::Strategy;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyFailure {
    Empty,
    NotHomomorphism { map: PartialMap },
    CritNotMember { map: PartialMap },
    CritWrongSize { map: PartialMap, size: usize },
    NoExtension { map: PartialMap, vertex: Vertex },
}

impl fmt::Display for StrategyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyFailure::Empty => f.write_str("strategy has no members"),
            StrategyFailure::NotHomomorphism { map } => write!(f, "member {map:?} is not a partial homomorphism"),
            StrategyFailure::CritNotMember { map } => write!(f, "critical position {map:?} is not a member"),
            StrategyFailure::CritWrongSize { map, size } => {
                write!(f, "critical position {map:?} has size {size}, expected k-1")
            }
            StrategyFailure::NoExtension { map, vertex } => {
                write!(f, "non-critical member {map:?} has no extension at vertex {vertex}")
            }
        }
    }
}

impl std::error::Error for StrategyFailure {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceFailure {
    Empty,
    Strategy { index: usize, failure: StrategyFailure },
    Unhandled { index: usize, map: PartialMap },
}

impl fmt::Display for SequenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceFailure::Empty => f.write_str("empty strategy sequence"),
            SequenceFailure::Strategy { index, failure } => write!(f, "strategy {index}: {failure}"),
            SequenceFailure::Unhandled { index, map } => write!(
                f,
                "critical position {map:?} of strategy {index} is not a safe member of any strategy up to {}",
                index + 1
            ),
        }
    }
}

impl std::error::Error for SequenceFailure {}

/// Members of size ≤ k−1, each with the alternatives that contain it.
struct Member {
    map: PartialMap,
    alts: Vec<u32>,
}

fn members(h: &Strategy, images: &[Vec<Vertex>], max: usize) -> Vec<Member> {
    let all: Vec<u32> = (0..h.alternatives().len() as u32).collect();
    let mut out = vec![Member {
        map: PartialMap::new(),
        alts: all,
    }];
    let mut start = 0;
    for _ in 0..max {
        let end = out.len();
        for i in start..end {
            let from = out[i].map.domain().last().map_or(0, |v| v + 1);
            for v in from..images.len() as Vertex {
                for &y in &images[v as usize] {
                    let g = &out[i];
                    let alts: Vec<u32> = g
                        .alts
                        .iter()
                        .copied()
                        .filter(|&j| h.alternatives()[j as usize].contains_with(&g.map, v, y))
                        .collect();
                    if !alts.is_empty() {
                        let map = g.map.with(v, y).expect("fresh vertex");
                        out.push(Member { map, alts });
                    }
                }
            }
        }
        start = end;
    }
    out
}

/// Checks that `h` is a critical strategy: nonempty, made of partial
/// homomorphisms, critical positions are members of size k−1, and every other
/// member of size below k extends to every vertex inside `h`. Returns the
/// number of members of size ≤ k−1.
pub fn verify_critical_strategy(h: &Strategy, a: &Structure, b: &Structure, k: usize) -> Result<usize, StrategyFailure> {
    if h.is_empty() {
        return Err(StrategyFailure::Empty);
    }
    for p in h.crit() {
        if p.len() + 1 != k {
            return Err(StrategyFailure::CritWrongSize {
                map: p.clone(),
                size: p.len(),
            });
        }
        if !h.contains(p) {
            return Err(StrategyFailure::CritNotMember { map: p.clone() });
        }
    }
    let hc = HomChecker::new(a, b);
    let images = h.images(a.len());
    // Binary signature: a map is a homomorphism iff all its submaps of size ≤ 2 are.
    let small = members(h, &images, (k - 1).max(2));
    for g in small.iter().filter(|g| g.map.len() <= 2) {
        if !hc.is_hom(&g.map) {
            return Err(StrategyFailure::NotHomomorphism { map: g.map.clone() });
        }
    }
    let mut count = 0;
    for g in small.iter().filter(|g| g.map.len() < k) {
        count += 1;
        if h.is_critical(&g.map) {
            continue;
        }
        for x in a.vertices().filter(|&x| !g.map.contains_vertex(x)) {
            let ok = images[x as usize].iter().any(|&y| {
                g.alts
                    .iter()
                    .any(|&j| h.alternatives()[j as usize].contains_with(&g.map, x, y))
            });
            if !ok {
                return Err(StrategyFailure::NoExtension {
                    map: g.map.clone(),
                    vertex: x,
                });
            }
        }
    }
    Ok(count)
}

/// Every strategy is critical, and each critical position of `seq[i]` for
/// `i` below the last index is a safe member of some `seq[j]` with `j ≤ i+1`.
/// Success certifies that Spoiler needs at least `seq.len() + 1` rounds.
pub fn verify_strategy_sequence(seq: &[Strategy], a: &Structure, b: &Structure, k: usize) -> Result<(), SequenceFailure> {
    if seq.is_empty() {
        return Err(SequenceFailure::Empty);
    }
    for (index, h) in seq.iter().enumerate() {
        verify_critical_strategy(h, a, b, k).map_err(|failure| SequenceFailure::Strategy { index, failure })?;
    }
    verify_handoff(seq)
}

/// The hand-off half of [`verify_strategy_sequence`], without per-strategy checks.
pub fn verify_handoff(seq: &[Strategy]) -> Result<(), SequenceFailure> {
    for (index, h) in seq.iter().enumerate().take(seq.len().saturating_sub(1)) {
        for p in h.crit() {
            if !seq[..=index + 1].iter().any(|g| g.is_safe(p)) {
                return Err(SequenceFailure::Unhandled { index, map: p.clone() });
            }
        }
    }
    Ok(())
}
