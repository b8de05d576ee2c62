//! Building both sides of a gadget (or a glued instance) at once.

use std::collections::BTreeMap;

use pdl_core::{PartialMap, Structure, StructureBuilder, Vertex};

use crate::config::{Configuration, Params};
use crate::GadgetError;

/// A boundary block family: Spoiler vertices `<name>.<i>.<j>` for `j ∈ 1..=n`,
/// Duplicator vertices `<name>.<i>.<s>` for `s ∈ 0..=m`, one color per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    name: String,
}

impl Block {
    pub fn new(name: impl Into<String>) -> Self {
        Block { name: name.into() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn id(&self, i: u32, j: u32) -> String {
        format!("{}.{i}.{j}", self.name)
    }

    pub fn color(&self, i: u32) -> String {
        format!("c.{}.{i}", self.name)
    }
}

/// Read access to the two sides by vertex id.
pub trait Sides {
    fn spoiler(&self) -> &Structure;
    fn duplicator(&self) -> &Structure;
    fn params(&self) -> Params;

    /// Spoiler-side vertex by id. Panics on unknown ids: callers pass ids
    /// produced by the builders.
    fn s(&self, id: &str) -> Vertex {
        self.spoiler()
            .index_of(id)
            .unwrap_or_else(|| panic!("no spoiler vertex `{id}`"))
    }

    fn d(&self, id: &str) -> Vertex {
        self.duplicator()
            .index_of(id)
            .unwrap_or_else(|| panic!("no duplicator vertex `{id}`"))
    }

    /// `h^x_q` on `block`: `x^i_{a(i)} ↦ x^i_{b(i)}` for unblocked `i`, every
    /// other vertex to row 0.
    fn h_block(&self, q: &Configuration, block: &Block) -> Result<PartialMap, GadgetError> {
        let p = self.params();
        q.check(p)?;
        let mut pairs = Vec::new();
        for i in p.blocks() {
            for j in 1..=p.n {
                let sv = self.spoiler().index_of(&block.id(i, j));
                let target = if j == q.a(i) && !q.is_blocked(i) { q.b(i) } else { 0 };
                let dv = self.duplicator().index_of(&block.id(i, target));
                match (sv, dv) {
                    (Some(u), Some(v)) => pairs.push((u, v)),
                    _ => return Err(GadgetError::UnknownBlock(block.name().to_string())),
                }
            }
        }
        Ok(PartialMap::from_pairs(pairs).expect("distinct spoiler vertices"))
    }

    /// `h_0` on `block`: everything to row 0.
    fn h_zero(&self, block: &Block) -> Result<PartialMap, GadgetError> {
        self.h_block(&Configuration::zero(self.params().kk), block)
    }

    /// Spoiler vertices of `block`.
    fn block_vertices(&self, block: &Block) -> Vec<Vertex> {
        let p = self.params();
        p.blocks()
            .flat_map(|i| (1..=p.n).map(move |j| (i, j)))
            .map(|(i, j)| self.s(&block.id(i, j)))
            .collect()
    }
}

/// Accumulates Spoiler and Duplicator vertices, edges and role aliases.
#[derive(Debug, Clone)]
pub struct PairBuilder {
    params: Params,
    s: StructureBuilder,
    d: StructureBuilder,
    aliases: BTreeMap<String, String>,
}

impl PairBuilder {
    pub fn new(params: Params, s_name: &str, d_name: &str) -> Self {
        PairBuilder {
            params,
            s: StructureBuilder::new(s_name),
            d: StructureBuilder::new(d_name),
            aliases: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Declares a boundary block on both sides (idempotent).
    pub fn block(&mut self, name: &str) -> Block {
        let b = Block::new(name);
        for i in self.params.blocks() {
            let c = b.color(i);
            for j in 1..=self.params.n {
                self.s.merge_vertex(&b.id(i, j), &c).expect("block colors are consistent");
            }
            for s in 0..=self.params.m {
                self.d.merge_vertex(&b.id(i, s), &c).expect("block colors are consistent");
            }
        }
        b
    }

    /// Records that the gadget-local block `local` is the block `target`.
    pub fn alias_block(&mut self, local: &str, target: &Block) {
        let p = self.params;
        for i in p.blocks() {
            for j in 0..=p.n.max(p.m) {
                self.aliases.insert(format!("{local}.{i}.{j}"), target.id(i, j));
            }
        }
    }

    pub fn s_vertex(&mut self, id: &str, color: &str) {
        self.s.vertex(id, color).expect("fresh spoiler vertex");
    }

    pub fn d_vertex(&mut self, id: &str, color: &str) {
        self.d.vertex(id, color).expect("fresh duplicator vertex");
    }

    pub fn s_edge(&mut self, u: &str, v: &str) {
        self.s.edge(u, v).expect("declared spoiler endpoints");
    }

    pub fn d_edge(&mut self, u: &str, v: &str) {
        self.d.edge(u, v).expect("declared duplicator endpoints");
    }

    pub fn finish(self) -> (Structure, Structure, BTreeMap<String, String>) {
        (self.s.build(), self.d.build(), self.aliases)
    }
}
