use pdl_core::{PartialMap, Structure, Vertex};

use crate::PropagationError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineKind {
    Axiom,
    /// Rule application on `pivot`, one premise line id per B-vertex in B's order.
    Propagated { pivot: Vertex, premises: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationLine {
    pub id: usize,
    pub map: PartialMap,
    pub kind: LineKind,
    /// 0 for axioms, otherwise one more than the largest premise round.
    pub round: u32,
}

impl DerivationLine {
    pub fn is_axiom(&self) -> bool {
        matches!(self.kind, LineKind::Axiom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub k: usize,
    pub lines: Vec<DerivationLine>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    pub width: usize,
    pub depth: u32,
    pub prop_count: usize,
}

/// Width, depth and propagation count. Depth is recomputed from the premise
/// graph, not read from the stored round labels.
pub fn metrics(d: &Derivation) -> Metrics {
    let mut depth = vec![0u32; d.lines.len()];
    let mut m = Metrics {
        width: 0,
        depth: 0,
        prop_count: 0,
    };
    for (i, line) in d.lines.iter().enumerate() {
        if let LineKind::Propagated { premises, .. } = &line.kind {
            m.width = m.width.max(line.map.len());
            m.prop_count += 1;
            depth[i] = 1 + premises
                .iter()
                .filter(|&&j| j < i)
                .map(|&j| depth[j])
                .max()
                .unwrap_or(0);
        }
        m.depth = m.depth.max(depth[i]);
    }
    m
}

pub fn write_derivation(d: &Derivation, a: &Structure, b: &Structure) -> String {
    let mut out = format!("derivation k={}\n", d.k);
    for line in &d.lines {
        out.push_str(&format!("line {} {}", line.id, line.map.display(a, b)));
        match &line.kind {
            LineKind::Axiom => out.push_str(" axiom"),
            LineKind::Propagated { pivot, premises } => {
                out.push_str(&format!(" from {}", a.id(*pivot)));
                for p in premises {
                    out.push_str(&format!(" {p}"));
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Parses the text form. Round labels are recomputed; no validity checks beyond syntax.
pub fn read_derivation(text: &str, a: &Structure, b: &Structure) -> Result<Derivation, PropagationError> {
    let err = |line: usize, msg: String| PropagationError::Parse { line, msg };
    let mut k = None;
    let mut lines: Vec<DerivationLine> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if k.is_none() {
            let v = t
                .strip_prefix("derivation k=")
                .ok_or_else(|| err(no, "expected `derivation k=<k>` header".into()))?;
            k = Some(v.trim().parse::<usize>().map_err(|e| err(no, format!("bad k: {e}")))?);
            continue;
        }
        let rest = t
            .strip_prefix("line ")
            .ok_or_else(|| err(no, format!("expected `line`, got `{t}`")))?;
        let (id_tok, rest) = rest
            .trim_start()
            .split_once(char::is_whitespace)
            .ok_or_else(|| err(no, "truncated line".into()))?;
        let id: usize = id_tok.parse().map_err(|_| err(no, format!("bad line id `{id_tok}`")))?;
        let rest = rest.trim_start();
        let close = rest.find(']').ok_or_else(|| err(no, "missing `]`".into()))?;
        let map = PartialMap::parse(&rest[..=close], a, b).map_err(|e| err(no, e.to_string()))?;
        let mut toks = rest[close + 1..].split_whitespace();
        let (kind, round) = match toks.next() {
            Some("axiom") => {
                if toks.next().is_some() {
                    return Err(err(no, "trailing tokens after `axiom`".into()));
                }
                (LineKind::Axiom, 0)
            }
            Some("from") => {
                let pv = toks.next().ok_or_else(|| err(no, "missing pivot".into()))?;
                let pivot = a.vertex(pv).map_err(|e| err(no, e.to_string()))?;
                let premises = toks
                    .map(|s| s.parse::<usize>().map_err(|_| err(no, format!("bad premise id `{s}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let round = 1 + premises
                    .iter()
                    .filter_map(|&j| lines.iter().find(|l| l.id == j).map(|l| l.round))
                    .max()
                    .unwrap_or(0);
                (LineKind::Propagated { pivot, premises }, round)
            }
            other => return Err(err(no, format!("expected `axiom` or `from`, got {other:?}"))),
        };
        lines.push(DerivationLine { id, map, kind, round });
    }
    let k = k.ok_or_else(|| err(0, "empty derivation text".into()))?;
    Ok(Derivation { k, lines })
}
