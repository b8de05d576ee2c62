//! Duplicator strategies as unions of products of families.
//!
//! A [`Family`] is the downward closure of a list of maximal maps, all with
//! domain inside a fixed vertex region. An [`Alternative`] glues families on
//! (possibly overlapping) regions: `p` is a member when its domain lies in
//! the union of the regions and its restriction to each region is below some
//! maximal map of that family. A [`Strategy`] is a union of alternatives with
//! a set of critical positions. An explicit strategy is one alternative with
//! one family.

use std::collections::{BTreeMap, BTreeSet};

use pdl_core::{PartialMap, Vertex};

use crate::StrategyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    region: Vec<Vertex>,
    maximal: Vec<PartialMap>,
}

impl Family {
    /// Fails if some maximal map leaves the region.
    pub fn new(region: impl IntoIterator<Item = Vertex>, maximal: Vec<PartialMap>) -> Result<Self, StrategyError> {
        let mut region: Vec<Vertex> = region.into_iter().collect();
        region.sort_unstable();
        region.dedup();
        for m in &maximal {
            if let Some(v) = m.domain().find(|v| region.binary_search(v).is_err()) {
                return Err(StrategyError::OutsideRegion { vertex: v });
            }
        }
        Ok(Family { region, maximal })
    }

    /// Region is the union of the maximal domains.
    pub fn from_maximal(maximal: Vec<PartialMap>) -> Self {
        let region: Vec<Vertex> = maximal.iter().flat_map(|m| m.domain()).collect();
        Family::new(region, maximal).expect("region covers every domain")
    }

    pub fn region(&self) -> &[Vertex] {
        &self.region
    }

    pub fn maximal(&self) -> &[PartialMap] {
        &self.maximal
    }

    pub fn in_region(&self, v: Vertex) -> bool {
        self.region.binary_search(&v).is_ok()
    }

    /// `p` restricted to the region lies below some maximal map.
    pub fn covers(&self, p: &PartialMap) -> bool {
        self.maximal.iter().any(|m| {
            p.iter()
                .filter(|(u, _)| self.in_region(*u))
                .all(|(u, v)| m.get(u) == Some(v))
        })
    }

    /// [`Family::covers`] for `p ∪ {x ↦ y}`, with `x ∉ dom(p)`.
    pub fn covers_with(&self, p: &PartialMap, x: Vertex, y: Vertex) -> bool {
        self.maximal.iter().any(|m| {
            m.get(x) == Some(y)
                && p.iter()
                    .filter(|(u, _)| self.in_region(*u))
                    .all(|(u, v)| m.get(u) == Some(v))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alternative {
    factors: Vec<Family>,
    region: Vec<Vertex>,
}

impl Alternative {
    pub fn new(factors: Vec<Family>) -> Self {
        let mut region: Vec<Vertex> = factors.iter().flat_map(|f| f.region.iter().copied()).collect();
        region.sort_unstable();
        region.dedup();
        Alternative { factors, region }
    }

    pub fn factors(&self) -> &[Family] {
        &self.factors
    }

    pub fn region(&self) -> &[Vertex] {
        &self.region
    }

    pub fn in_region(&self, v: Vertex) -> bool {
        self.region.binary_search(&v).is_ok()
    }

    pub fn contains(&self, p: &PartialMap) -> bool {
        p.domain().all(|v| self.in_region(v)) && self.factors.iter().all(|f| f.covers(p))
    }

    /// Membership of `p ∪ {x ↦ y}` given that `p` is already a member.
    pub fn contains_with(&self, p: &PartialMap, x: Vertex, y: Vertex) -> bool {
        self.in_region(x)
            && self
                .factors
                .iter()
                .filter(|f| f.in_region(x))
                .all(|f| f.covers_with(p, x, y))
    }

    fn maximal_elements(&self, cap: usize) -> Result<Vec<PartialMap>, StrategyError> {
        let mut acc = vec![PartialMap::new()];
        for f in &self.factors {
            let mut next = Vec::new();
            for g in &acc {
                for m in &f.maximal {
                    if let Some(u) = g.union(m) {
                        next.push(u);
                        if next.len() > cap {
                            return Err(StrategyError::TooManyMaximal { cap });
                        }
                    }
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    alternatives: Vec<Alternative>,
    crit: BTreeSet<PartialMap>,
}

impl Strategy {
    pub fn new(alternatives: Vec<Alternative>, crit: impl IntoIterator<Item = PartialMap>) -> Self {
        Strategy {
            alternatives,
            crit: crit.into_iter().collect(),
        }
    }

    /// One family given by its maximal maps.
    pub fn explicit(maximal: Vec<PartialMap>, crit: impl IntoIterator<Item = PartialMap>) -> Self {
        Strategy::new(vec![Alternative::new(vec![Family::from_maximal(maximal)])], crit)
    }

    pub fn from_family(family: Family, crit: impl IntoIterator<Item = PartialMap>) -> Self {
        Strategy::new(vec![Alternative::new(vec![family])], crit)
    }

    /// The downward closure of a single map, without critical positions.
    pub fn winning(h: PartialMap) -> Self {
        Strategy::explicit(vec![h], [])
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn crit(&self) -> &BTreeSet<PartialMap> {
        &self.crit
    }

    pub fn is_empty(&self) -> bool {
        self.alternatives.is_empty()
    }

    pub fn contains(&self, p: &PartialMap) -> bool {
        self.alternatives.iter().any(|alt| alt.contains(p))
    }

    pub fn is_critical(&self, p: &PartialMap) -> bool {
        self.crit.contains(p)
    }

    /// Member outside the critical set.
    pub fn is_safe(&self, p: &PartialMap) -> bool {
        !self.crit.contains(p) && self.contains(p)
    }

    /// Union of all alternative regions.
    pub fn region(&self) -> BTreeSet<Vertex> {
        self.alternatives
            .iter()
            .flat_map(|a| a.region.iter().copied())
            .collect()
    }

    /// Per A-vertex, every image used by some maximal map (sorted).
    pub fn images(&self, a_len: usize) -> Vec<Vec<Vertex>> {
        let mut out: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); a_len];
        for alt in &self.alternatives {
            for f in &alt.factors {
                for m in &f.maximal {
                    for (u, v) in m.iter() {
                        if let Some(s) = out.get_mut(u as usize) {
                            s.insert(v);
                        }
                    }
                }
            }
        }
        out.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Common values of the maximal maps on `boundary`. A vertex on which no
    /// maximal map is defined is left out.
    pub fn boundary_function(&self, boundary: &BTreeSet<Vertex>) -> Result<PartialMap, StrategyError> {
        Ok(self.boundary_values(boundary, false)?.into_iter().collect())
    }

    fn boundary_values(&self, boundary: &BTreeSet<Vertex>, strict: bool) -> Result<BTreeMap<Vertex, Vertex>, StrategyError> {
        let mut beta: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for alt in &self.alternatives {
            for f in &alt.factors {
                for &z in boundary.iter().filter(|&&z| f.in_region(z)) {
                    for m in &f.maximal {
                        match m.get(z) {
                            Some(v) => {
                                if *beta.entry(z).or_insert(v) != v {
                                    return Err(StrategyError::BoundaryDisagreement { vertex: z });
                                }
                            }
                            None if strict => return Err(StrategyError::BoundaryUndefined { vertex: z }),
                            None => {}
                        }
                    }
                }
            }
        }
        Ok(beta)
    }

    /// Product strategy. The two sides must have the same boundary function on
    /// their shared vertices, and every maximal map touching a shared vertex
    /// must be defined on it.
    pub fn compose(&self, other: &Strategy) -> Result<Strategy, StrategyError> {
        let shared: BTreeSet<Vertex> = self.region().intersection(&other.region()).copied().collect();
        let left = self.boundary_values(&shared, true)?;
        let right = other.boundary_values(&shared, true)?;
        for (z, v) in &left {
            if right.get(z).is_some_and(|w| w != v) {
                return Err(StrategyError::BoundaryDisagreement { vertex: *z });
            }
        }
        let mut alternatives = Vec::with_capacity(self.alternatives.len() * other.alternatives.len());
        for g in &self.alternatives {
            for h in &other.alternatives {
                alternatives.push(Alternative::new(g.factors.iter().chain(&h.factors).cloned().collect()));
            }
        }
        Ok(Strategy {
            alternatives,
            crit: self.crit.union(&other.crit).cloned().collect(),
        })
    }

    /// Union of the member sets. A position stays critical only if no side
    /// holds it as a safe member.
    pub fn union(&self, other: &Strategy) -> Strategy {
        let crit = self
            .crit
            .iter()
            .chain(&other.crit)
            .filter(|p| !self.is_safe(p) && !other.is_safe(p))
            .cloned()
            .collect();
        Strategy {
            alternatives: self.alternatives.iter().chain(&other.alternatives).cloned().collect(),
            crit,
        }
    }

    /// All maximal maps of all alternatives, deduplicated and sorted. Fails
    /// beyond `cap` maps.
    pub fn maximal_elements(&self, cap: usize) -> Result<Vec<PartialMap>, StrategyError> {
        let mut out = BTreeSet::new();
        for alt in &self.alternatives {
            out.extend(alt.maximal_elements(cap)?);
            if out.len() > cap {
                return Err(StrategyError::TooManyMaximal { cap });
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Same members and critical set, as one explicit family.
    pub fn flatten(&self, cap: usize) -> Result<Strategy, StrategyError> {
        Ok(Strategy::explicit(self.maximal_elements(cap)?, self.crit.iter().cloned()))
    }
}
