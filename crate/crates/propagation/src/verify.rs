use std::fmt;

use pdl_core::{HomChecker, Structure};

use crate::derivation::{Derivation, LineKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    KMismatch { declared: usize, expected: usize },
    Empty,
    IdNotDense,
    VertexOutOfRange,
    AxiomIsHomomorphism,
    AxiomTooLarge,
    LineTooLarge,
    PropagatedNotHomomorphism,
    PivotInDomain,
    PivotOutOfRange,
    PremiseCoverageIncomplete { got: usize, need: usize },
    PremiseCoverageExcess { got: usize, need: usize },
    PremiseForwardReference { premise: usize },
    PremiseMissingPivot { position: usize },
    PremiseNotContained { position: usize },
    NoEmptyMap,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FailureReason::*;
        match self {
            KMismatch { declared, expected } => write!(f, "derivation declares k={declared}, expected k={expected}"),
            Empty => f.write_str("derivation has no lines"),
            IdNotDense => f.write_str("line ids are not 0, 1, 2, ..."),
            VertexOutOfRange => f.write_str("map mentions a vertex outside the structures"),
            AxiomIsHomomorphism => f.write_str("axiom is a partial homomorphism"),
            AxiomTooLarge => f.write_str("axiom larger than k"),
            LineTooLarge => f.write_str("propagated map larger than k-1"),
            PropagatedNotHomomorphism => f.write_str("propagated map is not a partial homomorphism"),
            PivotInDomain => f.write_str("pivot already in the domain of the map"),
            PivotOutOfRange => f.write_str("pivot is not a vertex of A"),
            PremiseCoverageIncomplete { got, need } => {
                write!(f, "premise coverage incomplete ({got} premises, {need} B-vertices)")
            }
            PremiseCoverageExcess { got, need } => {
                write!(f, "premise coverage excess ({got} premises, {need} B-vertices)")
            }
            PremiseForwardReference { premise } => write!(f, "premise {premise} does not precede the line"),
            PremiseMissingPivot { position } => {
                write!(f, "premise #{position} does not map the pivot to B-vertex #{position}")
            }
            PremiseNotContained { position } => {
                write!(f, "premise #{position} minus the pivot is not contained in the map")
            }
            NoEmptyMap => f.write_str("no line derives the empty map"),
        }
    }
}

/// First failing check. `line` is absent for whole-derivation failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub line: Option<usize>,
    pub reason: FailureReason,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

impl std::error::Error for Failure {}

/// Checks every line against the axiom condition and the propagation rule.
pub fn verify_derivation(d: &Derivation, a: &Structure, b: &Structure, k: usize) -> Result<(), Failure> {
    let whole = |reason| Failure { line: None, reason };
    if d.k != k {
        return Err(whole(FailureReason::KMismatch {
            declared: d.k,
            expected: k,
        }));
    }
    if d.lines.is_empty() {
        return Err(whole(FailureReason::Empty));
    }
    let hc = HomChecker::new(a, b);
    let (na, nb) = (a.len() as u32, b.len() as u32);
    for (i, line) in d.lines.iter().enumerate() {
        let fail = |reason| Err(Failure { line: Some(i), reason });
        if line.id != i {
            return fail(FailureReason::IdNotDense);
        }
        if line.map.iter().any(|(x, y)| x >= na || y >= nb) {
            return fail(FailureReason::VertexOutOfRange);
        }
        match &line.kind {
            LineKind::Axiom => {
                if line.map.len() > k {
                    return fail(FailureReason::AxiomTooLarge);
                }
                if hc.is_hom(&line.map) {
                    return fail(FailureReason::AxiomIsHomomorphism);
                }
            }
            LineKind::Propagated { pivot, premises } => {
                if line.map.len() + 1 > k {
                    return fail(FailureReason::LineTooLarge);
                }
                if !hc.is_hom(&line.map) {
                    return fail(FailureReason::PropagatedNotHomomorphism);
                }
                if *pivot >= na {
                    return fail(FailureReason::PivotOutOfRange);
                }
                if line.map.contains_vertex(*pivot) {
                    return fail(FailureReason::PivotInDomain);
                }
                let need = b.len();
                if premises.len() < need {
                    return fail(FailureReason::PremiseCoverageIncomplete {
                        got: premises.len(),
                        need,
                    });
                }
                if premises.len() > need {
                    return fail(FailureReason::PremiseCoverageExcess {
                        got: premises.len(),
                        need,
                    });
                }
                for (pos, (&j, bv)) in premises.iter().zip(b.vertices()).enumerate() {
                    if j >= i {
                        return fail(FailureReason::PremiseForwardReference { premise: j });
                    }
                    let pm = &d.lines[j].map;
                    if pm.get(*pivot) != Some(bv) {
                        return fail(FailureReason::PremiseMissingPivot { position: pos });
                    }
                    if !pm.without(*pivot).is_subset_of(&line.map) {
                        return fail(FailureReason::PremiseNotContained { position: pos });
                    }
                }
            }
        }
    }
    Ok(())
}

/// [`verify_derivation`] plus: some line derives the empty map.
pub fn verify_refutation(d: &Derivation, a: &Structure, b: &Structure, k: usize) -> Result<(), Failure> {
    verify_derivation(d, a, b, k)?;
    if d.lines.iter().any(|l| l.map.is_empty() && !l.is_axiom()) {
        Ok(())
    } else {
        Err(Failure {
            line: None,
            reason: FailureReason::NoEmptyMap,
        })
    }
}
