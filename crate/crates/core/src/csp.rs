//! Binary constraint networks as colored graph pairs.
//!
//! Encoding: the A-side has one vertex per variable, colored by the variable's
//! name. The B-side has one vertex `x=d` per variable `x` and value `d`, with the
//! same color as `x`. Colors pin each variable to its own copy of the domain.
//! For variables `x ≠ y` sharing at least one constraint, A gets the edge `x - y`
//! and B gets `x=d - y=e` exactly when `(d, e)` passes every constraint on the
//! pair, in either scope orientation. A constraint with scope `(x, x)` becomes a
//! loop on `x`, and `x=d` carries a loop iff `(d, d)` is allowed.
//!
//! An assignment `f` corresponds to the homomorphism `x ↦ x=f(x)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::{CoreError, PartialMap, Structure, StructureBuilder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub scope: (usize, usize),
    pub allowed: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintNetwork {
    pub variables: Vec<String>,
    pub domain: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl ConstraintNetwork {
    pub fn validate(&self) -> Result<(), CoreError> {
        let nv = self.variables.len();
        let nd = self.domain.len();
        for c in &self.constraints {
            if c.scope.0 >= nv || c.scope.1 >= nv {
                return Err(CoreError::Network(format!("scope {:?} names an undeclared variable", c.scope)));
            }
            if let Some(p) = c.allowed.iter().find(|&&(d, e)| d >= nd || e >= nd) {
                return Err(CoreError::Network(format!("allowed pair {p:?} outside the domain")));
            }
        }
        let uniq: BTreeSet<_> = self.variables.iter().collect();
        if uniq.len() != nv {
            return Err(CoreError::Network("duplicate variable name".into()));
        }
        let uniq: BTreeSet<_> = self.domain.iter().collect();
        if uniq.len() != nd {
            return Err(CoreError::Network("duplicate domain value".into()));
        }
        Ok(())
    }

    pub fn satisfies(&self, assignment: &[usize]) -> bool {
        self.constraints
            .iter()
            .all(|c| c.allowed.contains(&(assignment[c.scope.0], assignment[c.scope.1])))
    }

    /// B-vertex index of the pair `(variable, value)` under the encoding.
    pub fn value_vertex(&self, var: usize, value: usize) -> u32 {
        (var * self.domain.len() + value) as u32
    }

    pub fn assignment_to_map(&self, assignment: &[usize]) -> PartialMap {
        assignment
            .iter()
            .enumerate()
            .map(|(x, &d)| (x as u32, self.value_vertex(x, d)))
            .collect()
    }

    /// Inverse of [`ConstraintNetwork::assignment_to_map`] on total homomorphisms.
    pub fn map_to_assignment(&self, map: &PartialMap) -> Option<Vec<usize>> {
        let nd = self.domain.len();
        let mut out = vec![usize::MAX; self.variables.len()];
        for (x, y) in map.iter() {
            let (var, val) = (y as usize / nd, y as usize % nd);
            if var != x as usize {
                return None;
            }
            out[var] = val;
        }
        out.iter().all(|&v| v != usize::MAX).then_some(out)
    }
}

pub fn csp_to_structures(net: &ConstraintNetwork) -> Result<(Structure, Structure), CoreError> {
    net.validate()?;
    let nd = net.domain.len();
    let mut by_pair: BTreeMap<(usize, usize), Vec<&Constraint>> = BTreeMap::new();
    for c in &net.constraints {
        let key = (c.scope.0.min(c.scope.1), c.scope.0.max(c.scope.1));
        by_pair.entry(key).or_default().push(c);
    }
    let mut a = StructureBuilder::new("csp_vars");
    let mut b = StructureBuilder::new("csp_values");
    for x in &net.variables {
        a.vertex(x, x)?;
        for d in &net.domain {
            b.vertex(&format!("{x}={d}"), x)?;
        }
    }
    let allowed = |cs: &[&Constraint], x: usize, d: usize, e: usize| {
        cs.iter().all(|c| {
            let pair = if c.scope.0 == x { (d, e) } else { (e, d) };
            c.allowed.contains(&pair)
        })
    };
    for (&(x, y), cs) in &by_pair {
        a.edge_idx(x as u32, y as u32)?;
        for d in 0..nd {
            for e in 0..nd {
                if x == y && d != e {
                    continue;
                }
                if allowed(cs, x, d, e) {
                    b.edge_idx((x * nd + d) as u32, (y * nd + e) as u32)?;
                }
            }
        }
    }
    Ok((a.build(), b.build()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate_homomorphisms;

    fn net(vars: &[&str], dom: &[&str], cons: Vec<Constraint>) -> ConstraintNetwork {
        ConstraintNetwork {
            variables: vars.iter().map(|s| s.to_string()).collect(),
            domain: dom.iter().map(|s| s.to_string()).collect(),
            constraints: cons,
        }
    }

    #[test]
    fn unconstrained_is_edgeless() {
        let n = net(&["x", "y"], &["1", "2"], vec![]);
        let (a, b) = csp_to_structures(&n).unwrap();
        assert_eq!(a.edge_count(), 0);
        assert_eq!(enumerate_homomorphisms(&a, &b, usize::MAX).len(), 4);
    }

    #[test]
    fn empty_unary_relation_kills_everything() {
        let n = net(
            &["x"],
            &["1"],
            vec![Constraint {
                scope: (0, 0),
                allowed: BTreeSet::new(),
            }],
        );
        let (a, b) = csp_to_structures(&n).unwrap();
        assert!(enumerate_homomorphisms(&a, &b, usize::MAX).is_empty());
    }

    #[test]
    fn disequality_has_two_solutions() {
        let n = net(
            &["x", "y"],
            &["1", "2"],
            vec![Constraint {
                scope: (0, 1),
                allowed: [(0, 1), (1, 0)].into_iter().collect(),
            }],
        );
        let (a, b) = csp_to_structures(&n).unwrap();
        assert_eq!(enumerate_homomorphisms(&a, &b, usize::MAX).len(), 2);
    }

    #[test]
    fn rejects_bad_scope() {
        let n = net(
            &["x"],
            &["1"],
            vec![Constraint {
                scope: (0, 3),
                allowed: BTreeSet::new(),
            }],
        );
        assert!(csp_to_structures(&n).is_err());
    }
}
