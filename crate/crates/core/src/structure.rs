use std::collections::HashMap;
use std::fmt;

use crate::{CoreError, Vertex};

const RESERVED: [char; 4] = [':', '[', ']', '#'];

pub(crate) fn check_token(tok: &str) -> Result<(), CoreError> {
    if tok.is_empty() || tok.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
        return Err(CoreError::ReservedCharacter(tok.to_string()));
    }
    Ok(())
}

/// A vertex-colored undirected graph with a fixed vertex order.
#[derive(Clone)]
pub struct Structure {
    name: String,
    ids: Vec<String>,
    index: HashMap<String, Vertex>,
    colors: Vec<u32>,
    color_names: Vec<String>,
    adj: Vec<Vec<Vertex>>,
    bits: Vec<u64>,
    words: usize,
}

impl Structure {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        0..self.ids.len() as Vertex
    }

    pub fn id(&self, v: Vertex) -> &str {
        &self.ids[v as usize]
    }

    pub fn index_of(&self, id: &str) -> Option<Vertex> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex, CoreError> {
        self.index_of(id).ok_or_else(|| CoreError::UnknownVertex(id.to_string()))
    }

    pub fn color(&self, v: Vertex) -> &str {
        &self.color_names[self.colors[v as usize] as usize]
    }

    /// Index of the vertex color into [`Structure::color_names`].
    pub fn color_index(&self, v: Vertex) -> u32 {
        self.colors[v as usize]
    }

    /// Color names in order of first use.
    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let bit = v as usize;
        self.bits[u as usize * self.words + bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    /// Each edge once as `(u, v)` with `u <= v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v as usize >= u).map(move |&v| (u as Vertex, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn has_self_loops(&self) -> bool {
        self.vertices().any(|v| self.adjacent(v, v))
    }

    /// Vertices of the given color, in vertex order.
    pub fn class_of(&self, color: &str) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.color(v) == color).collect()
    }
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.ids == other.ids
            && self.vertices().all(|v| self.color(v) == other.color(v))
            && self.adj == other.adj
    }
}

impl Eq for Structure {}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure({}, {} vertices, {} edges)", self.name, self.len(), self.edge_count())
    }
}

/// Incremental constructor; vertices keep insertion order.
#[derive(Clone, Debug)]
pub struct StructureBuilder {
    name: String,
    ids: Vec<String>,
    index: HashMap<String, Vertex>,
    colors: Vec<u32>,
    color_names: Vec<String>,
    color_index: HashMap<String, u32>,
    edges: Vec<(Vertex, Vertex)>,
}

impl StructureBuilder {
    pub fn new(name: &str) -> Self {
        StructureBuilder {
            name: name.to_string(),
            ids: Vec::new(),
            index: HashMap::new(),
            colors: Vec::new(),
            color_names: Vec::new(),
            color_index: HashMap::new(),
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<Vertex> {
        self.index.get(id).copied()
    }

    pub fn vertex(&mut self, id: &str, color: &str) -> Result<Vertex, CoreError> {
        if self.index.contains_key(id) {
            return Err(CoreError::DuplicateVertex(id.to_string()));
        }
        check_token(id)?;
        check_token(color)?;
        let next = self.color_names.len() as u32;
        let c = *self.color_index.entry(color.to_string()).or_insert(next);
        if c == next {
            self.color_names.push(color.to_string());
        }
        let v = self.ids.len() as Vertex;
        self.ids.push(id.to_string());
        self.index.insert(id.to_string(), v);
        self.colors.push(c);
        Ok(v)
    }

    /// Declares `id` or returns the existing vertex; merging requires equal colors.
    pub fn merge_vertex(&mut self, id: &str, color: &str) -> Result<Vertex, CoreError> {
        match self.index.get(id) {
            Some(&v) => {
                let old = &self.color_names[self.colors[v as usize] as usize];
                if old != color {
                    return Err(CoreError::ColorConflict {
                        id: id.to_string(),
                        old: old.clone(),
                        new: color.to_string(),
                    });
                }
                Ok(v)
            }
            None => self.vertex(id, color),
        }
    }

    pub fn edge(&mut self, u: &str, v: &str) -> Result<(), CoreError> {
        let a = self.index_of(u).ok_or_else(|| CoreError::UnknownVertex(u.to_string()))?;
        let b = self.index_of(v).ok_or_else(|| CoreError::UnknownVertex(v.to_string()))?;
        self.edges.push((a, b));
        Ok(())
    }

    pub fn edge_idx(&mut self, u: Vertex, v: Vertex) -> Result<(), CoreError> {
        for x in [u, v] {
            if x as usize >= self.ids.len() {
                return Err(CoreError::VertexOutOfRange(x));
            }
        }
        self.edges.push((u, v));
        Ok(())
    }

    pub fn build(self) -> Structure {
        let n = self.ids.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let mut adj = vec![Vec::new(); n];
        for (u, v) in self.edges {
            for (p, q) in [(u, v), (v, u)] {
                let slot = &mut bits[p as usize * words + q as usize / 64];
                let mask = 1u64 << (q % 64);
                if *slot & mask == 0 {
                    *slot |= mask;
                    adj[p as usize].push(q);
                }
            }
        }
        for ns in &mut adj {
            ns.sort_unstable();
        }
        Structure {
            name: self.name,
            ids: self.ids,
            index: self.index,
            colors: self.colors,
            color_names: self.color_names,
            adj,
            bits,
            words,
        }
    }
}
