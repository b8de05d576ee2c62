use std::fmt;

use smallvec::SmallVec;

use crate::{CoreError, Structure, Vertex};

/// A finite partial function from A-vertices to B-vertices.
///
/// Pairs are kept sorted by the A-vertex, so equal maps compare, hash and
/// serialize identically. The derived `Ord` is lexicographic on that pair list.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    pairs: SmallVec<[(Vertex, Vertex); 4]>,
}

impl PartialMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(a: Vertex, b: Vertex) -> Self {
        let mut pairs = SmallVec::new();
        pairs.push((a, b));
        PartialMap { pairs }
    }

    /// Builds a map, rejecting an A-vertex bound to two different images.
    /// Repeated identical pairs collapse.
    pub fn from_pairs<I: IntoIterator<Item = (Vertex, Vertex)>>(iter: I) -> Result<Self, CoreError> {
        let mut pairs: SmallVec<[(Vertex, Vertex); 4]> = iter.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CoreError::NonFunctional(w[0].0.to_string()));
            }
        }
        Ok(PartialMap { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn get(&self, a: Vertex) -> Option<Vertex> {
        self.pairs
            .binary_search_by_key(&a, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn contains_vertex(&self, a: Vertex) -> bool {
        self.get(a).is_some()
    }

    /// `self ∪ {a ↦ b}`, or `None` when `a` already has a different image.
    pub fn with(&self, a: Vertex, b: Vertex) -> Option<Self> {
        match self.pairs.binary_search_by_key(&a, |p| p.0) {
            Ok(i) => (self.pairs[i].1 == b).then(|| self.clone()),
            Err(i) => {
                let mut pairs = self.pairs.clone();
                pairs.insert(i, (a, b));
                Some(PartialMap { pairs })
            }
        }
    }

    pub fn without(&self, a: Vertex) -> Self {
        PartialMap {
            pairs: self.pairs.iter().copied().filter(|p| p.0 != a).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &PartialMap) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut j = 0;
        for &(a, b) in &self.pairs {
            while j < other.pairs.len() && other.pairs[j].0 < a {
                j += 1;
            }
            if j == other.pairs.len() || other.pairs[j] != (a, b) {
                return false;
            }
            j += 1;
        }
        true
    }

    /// Union of two maps, `None` if they disagree somewhere.
    pub fn union(&self, other: &PartialMap) -> Option<Self> {
        let mut pairs = SmallVec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() || j < other.pairs.len() {
            let next = match (self.pairs.get(i), other.pairs.get(j)) {
                (Some(&p), Some(&q)) if p.0 == q.0 => {
                    if p.1 != q.1 {
                        return None;
                    }
                    i += 1;
                    j += 1;
                    p
                }
                (Some(&p), Some(&q)) if p.0 < q.0 => {
                    i += 1;
                    p
                }
                (_, Some(&q)) => {
                    j += 1;
                    q
                }
                (Some(&p), None) => {
                    i += 1;
                    p
                }
                (None, None) => unreachable!(),
            };
            pairs.push(next);
        }
        Some(PartialMap { pairs })
    }

    pub fn restrict<F: Fn(Vertex) -> bool>(&self, keep: F) -> Self {
        PartialMap {
            pairs: self.pairs.iter().copied().filter(|p| keep(p.0)).collect(),
        }
    }

    /// All submaps, in no particular order. Exponential; meant for maps of size ≤ k.
    pub fn subsets(&self) -> Vec<PartialMap> {
        let n = self.pairs.len();
        (0u32..1 << n)
            .map(|mask| PartialMap {
                pairs: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.pairs[i]).collect(),
            })
            .collect()
    }

    /// Renders as `[a:b ...]` using vertex ids.
    pub fn display(&self, a: &Structure, b: &Structure) -> String {
        let body: Vec<String> = self
            .pairs
            .iter()
            .map(|&(x, y)| format!("{}:{}", a.id(x), b.id(y)))
            .collect();
        format!("[{}]", body.join(" "))
    }

    /// Parses the `[a:b ...]` form against the two structures.
    pub fn parse(text: &str, a: &Structure, b: &Structure) -> Result<Self, CoreError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| CoreError::MalformedMap(text.to_string()))?;
        let mut pairs = Vec::new();
        for tok in inner.split_whitespace() {
            let (x, y) = tok
                .split_once(':')
                .ok_or_else(|| CoreError::MalformedMap(tok.to_string()))?;
            pairs.push((a.vertex(x)?, b.vertex(y)?));
        }
        PartialMap::from_pairs(pairs).map_err(|e| match e {
            CoreError::NonFunctional(v) => {
                CoreError::NonFunctional(a.id(v.parse().unwrap_or(0)).to_string())
            }
            other => other,
        })
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}↦{b}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<(Vertex, Vertex)> for PartialMap {
    /// Panics on a non-functional pair list; use [`PartialMap::from_pairs`] for checked input.
    fn from_iter<I: IntoIterator<Item = (Vertex, Vertex)>>(iter: I) -> Self {
        PartialMap::from_pairs(iter).expect("non-functional pair list")
    }
}
