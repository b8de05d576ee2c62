//! Retrograde solver for the existential k-pebble game.
//!
//! A position is a color-respecting partial map of size at most k. Positions
//! are numbered densely: by size, then by the colex rank of the pebbled
//! A-vertices, then by a mixed-radix number over the color-class choices.
//!
//! `rank(q) = 0` for non-homomorphisms. A map `p` with `|p| < k` is *won in
//! r+1* when some `x ∉ dom(p)` has every answer `a ∈ class(x)` leading to a
//! position of rank ≤ r; a homomorphic position then has rank r+1 as soon as
//! one of its submaps is won in r+1. One round is one pick-up-and-place pair,
//! and the opening placement starts from the empty position.
//!
//! Each counter `(p, x)` counts answers `a` whose position is already ranked.
//! Rounds are synchronized: ranks of round r are published before any counter
//! of round r is read, so the result does not depend on the worker count.

use std::sync::atomic::{AtomicU16, AtomicU32, Ordering};

use pdl_core::{Exec, HomChecker, PartialMap, Structure, Vertex};
use smallvec::SmallVec;

use crate::GameError;

const UNRANKED: u32 = u32::MAX;
const CHUNK: usize = 1 << 14;

type Pairs = SmallVec<[(Vertex, Vertex); 4]>;

#[derive(Debug, Clone)]
pub struct GameOptions {
    /// Refuse instances with more positions than this.
    pub max_positions: u64,
    pub exec: Exec,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions {
            max_positions: 100_000_000,
            exec: Exec::sequential(),
        }
    }
}

struct Level {
    base: u64,
    size: usize,
    /// Supports in colex order, `size` vertices each.
    supports: Vec<Vertex>,
    /// Prefix sums of positions per support, relative to `base`.
    offsets: Vec<u64>,
}

struct Space<'s> {
    hc: HomChecker<'s>,
    k: usize,
    n: usize,
    slot: Vec<u32>,
    binom: Vec<Vec<u64>>,
    levels: Vec<Level>,
    total: u64,
}

impl<'s> Space<'s> {
    fn new(a: &'s Structure, b: &'s Structure, k: usize, limit: u64) -> Result<Self, GameError> {
        let hc = HomChecker::new(a, b);
        let n = a.len();
        let mut slot = vec![0u32; b.len()];
        let mut seen = vec![0u32; b.color_names().len()];
        for y in b.vertices() {
            let c = b.color_index(y) as usize;
            slot[y as usize] = seen[c];
            seen[c] += 1;
        }
        let binom: Vec<Vec<u64>> = (0..=n as u64)
            .map(|v| (0..=k as u64).map(|j| choose(v, j)).collect())
            .collect();
        let mut levels = Vec::with_capacity(k + 1);
        let mut base = 0u64;
        for (s, &count) in binom[n].iter().enumerate().take(k.min(n) + 1) {
            let count = count as usize;
            let mut supports = Vec::with_capacity(count * s);
            let mut offsets = Vec::with_capacity(count + 1);
            let mut acc = 0u64;
            offsets.push(0);
            let mut c: Vec<Vertex> = (0..s as Vertex).collect();
            for _ in 0..count {
                supports.extend_from_slice(&c);
                let width: u64 = c.iter().map(|&v| hc.candidates(v).len() as u64).product();
                acc = acc.checked_add(width).ok_or(GameError::TooLarge {
                    positions: u64::MAX,
                    limit,
                })?;
                if base.saturating_add(acc) > limit {
                    return Err(GameError::TooLarge {
                        positions: base.saturating_add(acc),
                        limit,
                    });
                }
                offsets.push(acc);
                next_colex(&mut c, n);
            }
            levels.push(Level {
                base,
                size: s,
                supports,
                offsets,
            });
            base += acc;
        }
        Ok(Space {
            hc,
            k,
            n,
            slot,
            binom,
            levels,
            total: base,
        })
    }

    fn class_size(&self, x: Vertex) -> usize {
        self.hc.candidates(x).len()
    }

    /// Index of a sorted pair list, `None` if some image leaves its color class.
    fn encode(&self, pairs: &[(Vertex, Vertex)]) -> Option<u64> {
        let s = pairs.len();
        let level = self.levels.get(s)?;
        let mut colex = 0u64;
        let mut digits = 0u64;
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if !self.hc.color_ok(x, y) {
                return None;
            }
            colex += self.binom[x as usize][i + 1];
            digits = digits * self.class_size(x) as u64 + self.slot[y as usize] as u64;
        }
        Some(level.base + level.offsets[colex as usize] + digits)
    }

    fn decode(&self, idx: u64) -> Pairs {
        let level = self
            .levels
            .iter()
            .rev()
            .find(|l| l.base <= idx)
            .expect("index in range");
        let rel = idx - level.base;
        let si = level.offsets.partition_point(|&o| o <= rel) - 1;
        let support = &level.supports[si * level.size..(si + 1) * level.size];
        let mut rem = rel - level.offsets[si];
        let mut out: Pairs = support.iter().map(|&v| (v, 0)).collect();
        for i in (0..level.size).rev() {
            let x = out[i].0;
            let c = self.class_size(x) as u64;
            out[i].1 = self.hc.candidates(x)[(rem % c) as usize];
            rem /= c;
        }
        out
    }

    fn is_hom(&self, pairs: &[(Vertex, Vertex)]) -> bool {
        pairs.iter().enumerate().all(|(i, &(x, y))| {
            self.hc.pair_ok(x, y) && pairs[..i].iter().all(|&(u, v)| self.hc.edge_ok(x, y, u, v))
        })
    }

    fn counter_len(&self) -> usize {
        self.levels.get(self.k).map_or(self.total, |l| l.base) as usize * self.n
    }

    /// Calls `f` on every superset of `p` (including `p`) of size at most k.
    fn for_supersets(&self, p: &Pairs, f: &mut impl FnMut(&Pairs)) {
        fn go(sp: &Space, cur: &mut Pairs, from: Vertex, f: &mut impl FnMut(&Pairs)) {
            f(cur);
            if cur.len() >= sp.k {
                return;
            }
            for v in from..sp.n as Vertex {
                let Err(pos) = cur.binary_search_by_key(&v, |q| q.0) else {
                    continue;
                };
                for &y in sp.hc.candidates(v) {
                    cur.insert(pos, (v, y));
                    go(sp, cur, v + 1, f);
                    cur.remove(pos);
                }
            }
        }
        let mut cur = p.clone();
        go(self, &mut cur, 0, f);
    }
}

fn choose(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn next_colex(c: &mut [Vertex], n: usize) {
    let s = c.len();
    for i in 0..s {
        let limit = if i + 1 < s { c[i + 1] } else { n as Vertex };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, v) in c[..i].iter_mut().enumerate() {
                *v = j as Vertex;
            }
            return;
        }
    }
}

/// Solved game: ranks of every position.
pub struct GameSolution<'s> {
    space: Space<'s>,
    ranks: Vec<u32>,
    rounds: u32,
}

impl<'s> GameSolution<'s> {
    pub fn k(&self) -> usize {
        self.space.k
    }

    /// Number of color-respecting positions of size ≤ k.
    pub fn positions(&self) -> u64 {
        self.space.total
    }

    /// Rounds of the fixpoint that were executed.
    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    /// Rounds Spoiler needs from the empty position; absent if Duplicator wins forever.
    pub fn spoiler_min_rounds(&self) -> Option<u32> {
        self.rank(&PartialMap::new())
    }

    /// Rounds Spoiler needs from `p`, `Some(0)` when `p` is already lost for
    /// Duplicator, absent when Duplicator survives forever. Panics if `|p| > k`.
    pub fn rank(&self, p: &PartialMap) -> Option<u32> {
        assert!(p.len() <= self.space.k, "position larger than k");
        match self.space.encode(p.pairs()) {
            None => Some(0),
            Some(i) => Some(self.ranks[i as usize]).filter(|&r| r != UNRANKED),
        }
    }

    /// Homomorphic positions of size ≤ `max_size` that Spoiler wins.
    pub fn won_positions(&self, max_size: usize) -> u64 {
        let end = self
            .space
            .levels
            .get(max_size + 1)
            .map_or(self.space.total, |l| l.base) as usize;
        self.ranks[..end].iter().filter(|&&r| r != UNRANKED && r > 0).count() as u64
    }

    /// An optimal Spoiler move from `p`: the least `(x, p')` in canonical order
    /// with `p' ⊆ p`, `|p'| < k`, such that every answer at `x` has smaller rank.
    pub fn spoiler_move(&self, p: &PartialMap) -> Option<(Vertex, PartialMap)> {
        let r = self.rank(p)?;
        if r == 0 {
            return None;
        }
        let mut subs: Vec<PartialMap> = p.subsets().into_iter().filter(|s| s.len() < self.space.k).collect();
        subs.sort();
        for x in 0..self.space.n as Vertex {
            for s in subs.iter().filter(|s| !s.contains_vertex(x)) {
                let ok = self.space.hc.candidates(x).iter().all(|&a| {
                    let q = s.with(x, a).expect("x outside dom");
                    self.rank(&q).is_some_and(|qr| qr < r)
                });
                if ok {
                    return Some((x, s.clone()));
                }
            }
        }
        None
    }
}

pub fn solve_game<'s>(
    a: &'s Structure,
    b: &'s Structure,
    k: usize,
    opts: &GameOptions,
) -> Result<GameSolution<'s>, GameError> {
    if k < 2 {
        return Err(GameError::BadK(k));
    }
    if b.is_empty() {
        return Err(GameError::EmptyB);
    }
    let space = Space::new(a, b, k, opts.max_positions)?;
    let exec = &opts.exec;
    let total = space.total as usize;
    let ranks: Vec<AtomicU32> = (0..total).map(|_| AtomicU32::new(UNRANKED)).collect();
    let counters: Vec<AtomicU16> = (0..space.counter_len()).map(|_| AtomicU16::new(0)).collect();

    let propagate = |q: &Pairs, out: &mut Vec<u64>| {
        for i in 0..q.len() {
            let x = q[i].0;
            let mut p = q.clone();
            p.remove(i);
            let pi = space.encode(&p).expect("submap of a position") as usize;
            let c = counters[pi * space.n + x as usize].fetch_add(1, Ordering::Relaxed) + 1;
            if c as usize == space.class_size(x) && ranks[pi].load(Ordering::Relaxed) == UNRANKED {
                out.push(pi as u64);
            }
        }
    };

    exec.flat_map_ranges(total, CHUNK, |lo, hi| {
        for (i, r) in ranks.iter().enumerate().take(hi).skip(lo) {
            if !space.is_hom(&space.decode(i as u64)) {
                r.store(0, Ordering::Relaxed);
            }
        }
        Vec::<()>::new()
    });
    let mut won: Vec<u64> = exec.flat_map_ranges(total, CHUNK, |lo, hi| {
        let mut out = Vec::new();
        for (i, r) in ranks.iter().enumerate().take(hi).skip(lo) {
            if r.load(Ordering::Relaxed) == 0 {
                propagate(&space.decode(i as u64), &mut out);
            }
        }
        out
    });
    if a.vertices().any(|x| space.class_size(x) == 0) {
        won.push(0);
    }

    let mut round = 0;
    while !won.is_empty() && ranks[0].load(Ordering::Relaxed) == UNRANKED {
        round += 1;
        if won.contains(&0) {
            exec.flat_map_ranges(total, CHUNK, |lo, hi| {
                for r in &ranks[lo..hi] {
                    let _ = r.compare_exchange(UNRANKED, round, Ordering::Relaxed, Ordering::Relaxed);
                }
                Vec::<()>::new()
            });
            break;
        }
        let fresh: Vec<u64> = exec.flat_map_chunks(&won, 256, |chunk| {
            let mut out = Vec::new();
            for &p in chunk {
                space.for_supersets(&space.decode(p), &mut |q| {
                    let qi = space.encode(q).expect("superset of a position") as usize;
                    if ranks[qi]
                        .compare_exchange(UNRANKED, round, Ordering::Relaxed, Ordering::Relaxed)
                        .is_ok()
                    {
                        out.push(qi as u64);
                    }
                });
            }
            out
        });
        won = exec.flat_map_chunks(&fresh, 1024, |chunk| {
            let mut out = Vec::new();
            for &q in chunk {
                propagate(&space.decode(q), &mut out);
            }
            out
        });
    }

    Ok(GameSolution {
        ranks: ranks.into_iter().map(AtomicU32::into_inner).collect(),
        space,
        rounds: round,
    })
}

/// Minimal number of rounds Spoiler needs; absent iff Duplicator wins forever.
pub fn spoiler_min_rounds(a: &Structure, b: &Structure, k: usize) -> Result<Option<u32>, GameError> {
    Ok(solve_game(a, b, k, &GameOptions::default())?.spoiler_min_rounds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pdl_core::StructureBuilder;

    fn graph(name: &str, n: usize, edges: &[(u32, u32)], color: &str) -> Structure {
        let mut b = StructureBuilder::new(name);
        for i in 0..n {
            b.vertex(&format!("{name}{i}"), color).unwrap();
        }
        for &(u, v) in edges {
            b.edge_idx(u, v).unwrap();
        }
        b.build()
    }

    #[test]
    fn encode_decode_are_inverse() {
        let a = graph("a", 6, &[], "c");
        let b = graph("b", 3, &[], "c");
        let sp = Space::new(&a, &b, 3, u64::MAX).unwrap();
        assert_eq!(sp.total, 1 + 6 * 3 + 15 * 9 + 20 * 27);
        for i in 0..sp.total {
            let p = sp.decode(i);
            assert_eq!(sp.encode(&p), Some(i));
        }
    }

    #[test]
    fn small_games() {
        let red = graph("a", 1, &[], "red");
        let blue = graph("b", 1, &[], "blue");
        assert_eq!(spoiler_min_rounds(&red, &blue, 2).unwrap(), Some(1));
        assert_eq!(spoiler_min_rounds(&red, &red, 2).unwrap(), None);
        let tri = graph("a", 3, &[(0, 1), (1, 2), (2, 0)], "c");
        let edge = graph("b", 2, &[(0, 1)], "c");
        assert_eq!(spoiler_min_rounds(&tri, &edge, 3).unwrap(), Some(3));
        assert_eq!(spoiler_min_rounds(&tri, &edge, 2).unwrap(), None);
        assert_eq!(spoiler_min_rounds(&tri, &tri, 3).unwrap(), None);
    }

    #[test]
    fn errors() {
        let a = graph("a", 1, &[], "c");
        let e = graph("e", 0, &[], "c");
        assert!(matches!(spoiler_min_rounds(&a, &a, 1), Err(GameError::BadK(1))));
        assert!(matches!(spoiler_min_rounds(&a, &e, 2), Err(GameError::EmptyB)));
        let big = graph("a", 10, &[], "c");
        let opts = GameOptions {
            max_positions: 50,
            ..GameOptions::default()
        };
        assert!(matches!(solve_game(&big, &big, 3, &opts), Err(GameError::TooLarge { .. })));
    }

    #[test]
    fn spoiler_move_decreases_rank() {
        let tri = graph("a", 3, &[(0, 1), (1, 2), (2, 0)], "c");
        let edge = graph("b", 2, &[(0, 1)], "c");
        let sol = solve_game(&tri, &edge, 3, &GameOptions::default()).unwrap();
        let (x, p) = sol.spoiler_move(&PartialMap::new()).unwrap();
        assert_eq!((x, p), (0, PartialMap::new()));
        let q = PartialMap::singleton(0, 0);
        assert_eq!(sol.rank(&q), Some(2));
        assert_eq!(sol.spoiler_move(&q), Some((1, q.clone())));
    }
}
