use crate::{CoreError, PartialMap, Structure, Vertex};

/// Precomputed color correspondence for a fixed pair (A, B).
///
/// Colors match by name. `candidates(x)` lists the B-vertices that may receive
/// the A-vertex `x`, in B's vertex order.
pub struct HomChecker<'s> {
    a: &'s Structure,
    b: &'s Structure,
    color_map: Vec<Option<u32>>,
    candidates: Vec<Vec<Vertex>>,
}

impl<'s> HomChecker<'s> {
    pub fn new(a: &'s Structure, b: &'s Structure) -> Self {
        let color_map: Vec<Option<u32>> = a
            .color_names()
            .iter()
            .map(|c| b.color_names().iter().position(|d| d == c).map(|i| i as u32))
            .collect();
        let candidates = a
            .vertices()
            .map(|x| match color_map[a.color_index(x) as usize] {
                Some(c) => b.vertices().filter(|&y| b.color_index(y) == c).collect(),
                None => Vec::new(),
            })
            .collect();
        HomChecker {
            a,
            b,
            color_map,
            candidates,
        }
    }

    pub fn a(&self) -> &'s Structure {
        self.a
    }

    pub fn b(&self) -> &'s Structure {
        self.b
    }

    pub fn candidates(&self, x: Vertex) -> &[Vertex] {
        &self.candidates[x as usize]
    }

    pub fn color_ok(&self, x: Vertex, y: Vertex) -> bool {
        self.color_map[self.a.color_index(x) as usize] == Some(self.b.color_index(y))
    }

    /// `{x ↦ y}` alone is a partial homomorphism (color and self-loop).
    pub fn pair_ok(&self, x: Vertex, y: Vertex) -> bool {
        self.color_ok(x, y) && (!self.a.adjacent(x, x) || self.b.adjacent(y, y))
    }

    /// `{x ↦ y, u ↦ v}` respects the possible edge between `x` and `u`.
    pub fn edge_ok(&self, x: Vertex, y: Vertex, u: Vertex, v: Vertex) -> bool {
        !self.a.adjacent(x, u) || self.b.adjacent(y, v)
    }

    /// `p ∪ {x ↦ y}` is a partial homomorphism, assuming `p` is one and `x ∉ dom(p)`.
    pub fn extends(&self, p: &PartialMap, x: Vertex, y: Vertex) -> bool {
        self.pair_ok(x, y) && p.iter().all(|(u, v)| self.edge_ok(x, y, u, v))
    }

    pub fn is_hom(&self, p: &PartialMap) -> bool {
        let pairs = p.pairs();
        pairs.iter().enumerate().all(|(i, &(x, y))| {
            self.pair_ok(x, y) && pairs[..i].iter().all(|&(u, v)| self.edge_ok(x, y, u, v))
        })
    }

    /// A least violating submap (size 1 or 2) of a non-homomorphism, or `None`.
    pub fn violation(&self, p: &PartialMap) -> Option<PartialMap> {
        let pairs = p.pairs();
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if !self.pair_ok(x, y) {
                return Some(PartialMap::singleton(x, y));
            }
            for &(u, v) in &pairs[..i] {
                if !self.edge_ok(x, y, u, v) {
                    return Some(PartialMap::from_pairs([(u, v), (x, y)]).expect("distinct vertices"));
                }
            }
        }
        None
    }
}

/// True iff `p` preserves colors and maps every A-edge inside `dom(p)` onto a B-edge.
pub fn is_partial_homomorphism(p: &PartialMap, a: &Structure, b: &Structure) -> Result<bool, CoreError> {
    for (x, y) in p.iter() {
        if x as usize >= a.len() {
            return Err(CoreError::VertexOutOfRange(x));
        }
        if y as usize >= b.len() {
            return Err(CoreError::VertexOutOfRange(y));
        }
    }
    Ok(HomChecker::new(a, b).is_hom(p))
}

/// Every total homomorphism A → B, by backtracking in A's vertex order.
/// Stops after `limit` results.
pub fn enumerate_homomorphisms(a: &Structure, b: &Structure, limit: usize) -> Vec<PartialMap> {
    let hc = HomChecker::new(a, b);
    let mut out = Vec::new();
    let mut current = PartialMap::new();
    fn go(hc: &HomChecker, x: Vertex, cur: &mut PartialMap, out: &mut Vec<PartialMap>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if x as usize == hc.a().len() {
            out.push(cur.clone());
            return;
        }
        for &y in hc.candidates(x) {
            if hc.extends(cur, x, y) {
                let saved = cur.clone();
                *cur = cur.with(x, y).expect("fresh vertex");
                go(hc, x + 1, cur, out, limit);
                *cur = saved;
            }
        }
    }
    go(&hc, 0, &mut current, &mut out, limit);
    out
}
