use std::collections::HashMap;

use pdl_core::{enumerate_homomorphisms, Exec, HomChecker, PartialMap, Structure, StructureBuilder};
use pdl_pebblegame::{solve_game, spoiler_min_rounds, verify_strategy_sequence, GameOptions, Strategy as DupStrategy};
use pdl_propagation::depth_via_saturation;
use proptest::prelude::*;

fn arb_structure(name: &'static str, max_v: usize, colors: usize) -> impl Strategy<Value = Structure> {
    (1..=max_v).prop_flat_map(move |n| {
        (
            proptest::collection::vec(0..colors, n),
            proptest::collection::vec((0..n, 0..n), 0..2 * n),
        )
            .prop_map(move |(cols, edges)| {
                let mut b = StructureBuilder::new(name);
                for (i, c) in cols.iter().enumerate() {
                    b.vertex(&format!("{name}{i}"), &format!("c{c}")).unwrap();
                }
                for (u, v) in edges {
                    b.edge_idx(u as u32, v as u32).unwrap();
                }
                b.build()
            })
    })
}

/// Game values straight from the move rules, iterated to a fixpoint:
/// value(p) = 0 on non-homomorphisms, else 1 + min over (p' ⊆ p, |p'| < k, x)
/// of max over all B-vertices a of value(p' ∪ {x ↦ a}).
fn naive_values(a: &Structure, b: &Structure, k: usize) -> HashMap<PartialMap, u32> {
    let hc = HomChecker::new(a, b);
    let mut positions = vec![PartialMap::new()];
    let mut frontier = vec![PartialMap::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &frontier {
            let from = p.domain().last().map_or(0, |v| v + 1);
            for x in from..a.len() as u32 {
                for y in b.vertices() {
                    next.push(p.with(x, y).unwrap());
                }
            }
        }
        positions.extend(next.iter().cloned());
        frontier = next;
    }
    let mut value: HashMap<PartialMap, u32> = positions
        .iter()
        .filter(|p| !hc.is_hom(p))
        .map(|p| (p.clone(), 0))
        .collect();
    for r in 1.. {
        let mut fresh = Vec::new();
        for p in positions.iter().filter(|p| !value.contains_key(*p)) {
            let wins = p.subsets().into_iter().filter(|s| s.len() < k).any(|s| {
                a.vertices().filter(|&x| !s.contains_vertex(x)).any(|x| {
                    b.vertices()
                        .all(|y| value.get(&s.with(x, y).unwrap()).is_some_and(|&v| v < r))
                })
            });
            if wins {
                fresh.push(p.clone());
            }
        }
        if fresh.is_empty() {
            break;
        }
        for p in fresh {
            value.insert(p, r);
        }
    }
    value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn game_matches_saturation_depth(
        a in arb_structure("a", 5, 2),
        b in arb_structure("b", 4, 2),
        k in 2usize..=3,
    ) {
        prop_assert_eq!(spoiler_min_rounds(&a, &b, k).unwrap(), depth_via_saturation(&a, &b, k).unwrap());
    }

    #[test]
    fn more_pebbles_never_hurt_spoiler(
        a in arb_structure("a", 5, 2),
        b in arb_structure("b", 4, 2),
    ) {
        let two = spoiler_min_rounds(&a, &b, 2).unwrap();
        let three = spoiler_min_rounds(&a, &b, 3).unwrap();
        if let Some(t) = two {
            prop_assert!(three.is_some_and(|s| s <= t));
        }
        if !enumerate_homomorphisms(&a, &b, 1).is_empty() {
            prop_assert_eq!(two, None);
            prop_assert_eq!(three, None);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn every_rank_matches_naive_minimax(
        a in arb_structure("a", 4, 2),
        b in arb_structure("b", 3, 2),
        k in 2usize..=3,
    ) {
        let sol = solve_game(&a, &b, k, &GameOptions::default()).unwrap();
        let naive = naive_values(&a, &b, k);
        let hc = HomChecker::new(&a, &b);
        let mut all = vec![PartialMap::new()];
        let mut frontier = all.clone();
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &frontier {
                let from = p.domain().last().map_or(0, |v| v + 1);
                for x in from..a.len() as u32 {
                    for &y in hc.candidates(x) {
                        next.push(p.with(x, y).unwrap());
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        for p in &all {
            prop_assert_eq!(sol.rank(p), naive.get(p).copied(), "position {:?}", p);
        }
    }

    #[test]
    fn worker_count_does_not_change_ranks(
        a in arb_structure("a", 5, 2),
        b in arb_structure("b", 4, 2),
    ) {
        let seq = solve_game(&a, &b, 3, &GameOptions::default()).unwrap();
        let par = solve_game(&a, &b, 3, &GameOptions { exec: Exec::with_threads(4), ..GameOptions::default() }).unwrap();
        prop_assert_eq!(seq.spoiler_min_rounds(), par.spoiler_min_rounds());
        prop_assert_eq!(seq.won_positions(3), par.won_positions(3));
        prop_assert_eq!(seq.won_positions(1), par.won_positions(1));
    }

    #[test]
    fn explicit_spoiler_moves_realize_the_rank(
        a in arb_structure("a", 5, 2),
        b in arb_structure("b", 4, 2),
        k in 2usize..=3,
        answers in proptest::collection::vec(0usize..8, 16),
    ) {
        let sol = solve_game(&a, &b, k, &GameOptions::default()).unwrap();
        let hc = HomChecker::new(&a, &b);
        if let Some(r) = sol.spoiler_min_rounds() {
            // Play Spoiler's chosen moves against arbitrary answers.
            let mut p = PartialMap::new();
            let mut played = 0;
            while hc.is_hom(&p) {
                let (x, base) = sol.spoiler_move(&p).expect("won position has a move");
                let cands = hc.candidates(x);
                if cands.is_empty() {
                    played += 1;
                    break;
                }
                let y = cands[answers[played % answers.len()] % cands.len()];
                p = base.with(x, y).unwrap();
                played += 1;
            }
            prop_assert!(played as u32 <= r);
        }
    }
}

#[test]
fn single_winning_strategy_certifies_duplicator() {
    let mut s = StructureBuilder::new("s");
    for i in 0..3 {
        s.vertex(&format!("v{i}"), "c").unwrap();
    }
    s.edge_idx(0, 1).unwrap();
    let s = s.build();
    let h = DupStrategy::winning(PartialMap::from_pairs([(0, 0), (1, 1), (2, 2)]).unwrap());
    assert!(verify_strategy_sequence(&[h], &s, &s, 3).is_ok());
    assert_eq!(spoiler_min_rounds(&s, &s, 3).unwrap(), None);
}

#[test]
fn critical_sequence_bounds_rounds() {
    // Triangle against a single edge.
    let mut a = StructureBuilder::new("a");
    for i in 0..3 {
        a.vertex(&format!("a{i}"), "c").unwrap();
    }
    for (u, v) in [(0, 1), (1, 2), (2, 0)] {
        a.edge_idx(u, v).unwrap();
    }
    let a = a.build();
    let mut b = StructureBuilder::new("b");
    b.vertex("b0", "c").unwrap();
    b.vertex("b1", "c").unwrap();
    b.edge_idx(0, 1).unwrap();
    let b = b.build();
    // Duplicator answers along the edge; every pair of pebbles is critical.
    let pm = |p: &[(u32, u32)]| PartialMap::from_pairs(p.iter().copied()).unwrap();
    let maximal: Vec<PartialMap> = [(0, 1), (1, 2), (0, 2)]
        .iter()
        .flat_map(|&(u, v)| [pm(&[(u, 0), (v, 1)]), pm(&[(u, 1), (v, 0)])])
        .collect();
    let crit = maximal.clone();
    let h = DupStrategy::explicit(maximal, crit);
    assert!(verify_strategy_sequence(std::slice::from_ref(&h), &a, &b, 3).is_ok());
    let rounds = spoiler_min_rounds(&a, &b, 3).unwrap().unwrap();
    assert!(rounds >= 2);
    assert_eq!(rounds, 3);
    assert!(verify_strategy_sequence(&[h.clone(), h], &a, &b, 3).is_err());
}
