use std::collections::BTreeSet;

use pdl_core::{csp_to_structures, enumerate_homomorphisms, Constraint, ConstraintNetwork};
use proptest::prelude::*;

fn all_assignments(nv: usize, nd: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..nv {
        out = out
            .into_iter()
            .flat_map(|a| (0..nd).map(move |d| [a.clone(), vec![d]].concat()))
            .collect();
    }
    out
}

fn check_bijection(net: &ConstraintNetwork) {
    let (a, b) = csp_to_structures(net).unwrap();
    let homs: BTreeSet<_> = enumerate_homomorphisms(&a, &b, usize::MAX).into_iter().collect();
    let sols: BTreeSet<_> = all_assignments(net.variables.len(), net.domain.len())
        .into_iter()
        .filter(|s| net.satisfies(s))
        .map(|s| net.assignment_to_map(&s))
        .collect();
    assert_eq!(homs, sols);
    for h in &homs {
        let s = net.map_to_assignment(h).unwrap();
        assert_eq!(&net.assignment_to_map(&s), h);
    }
}

fn arb_net() -> impl Strategy<Value = ConstraintNetwork> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(nv, nd)| {
        let constraint = (0..nv, 0..nv, proptest::collection::btree_set((0..nd, 0..nd), 0..=nd * nd))
            .prop_map(|(x, y, allowed)| Constraint { scope: (x, y), allowed });
        proptest::collection::vec(constraint, 0..4).prop_map(move |constraints| ConstraintNetwork {
            variables: (0..nv).map(|i| format!("v{i}")).collect(),
            domain: (0..nd).map(|i| format!("{i}")).collect(),
            constraints,
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]
    #[test]
    fn solutions_match_homomorphisms(net in arb_net()) {
        check_bijection(&net);
    }
}

#[test]
fn every_single_binary_relation_on_two_variables() {
    for nd in 1..=2usize {
        let pairs: Vec<(usize, usize)> = (0..nd).flat_map(|d| (0..nd).map(move |e| (d, e))).collect();
        for mask in 0u32..1 << pairs.len() {
            let allowed: BTreeSet<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p).collect();
            for scope in [(0, 1), (1, 0), (0, 0)] {
                check_bijection(&ConstraintNetwork {
                    variables: vec!["x".into(), "y".into()],
                    domain: (0..nd).map(|d| d.to_string()).collect(),
                    constraints: vec![Constraint { scope, allowed: allowed.clone() }],
                });
            }
        }
    }
}
