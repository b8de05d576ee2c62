use pdl_core::{PartialMap, Structure};

use crate::strategy::Strategy;
use crate::StrategyError;

/// Explicit text form: one `maximal` line per maximal map, one `crit` line per
/// critical position. Composite strategies are flattened first.
pub fn write_strategy(h: &Strategy, a: &Structure, b: &Structure, cap: usize) -> Result<String, StrategyError> {
    let mut out = String::from("strategy\n");
    for m in h.maximal_elements(cap)? {
        out.push_str(&format!("maximal {}\n", m.display(a, b)));
    }
    for p in h.crit() {
        out.push_str(&format!("crit {}\n", p.display(a, b)));
    }
    Ok(out)
}

pub fn read_strategy(text: &str, a: &Structure, b: &Structure) -> Result<Strategy, StrategyError> {
    let err = |line: usize, msg: String| StrategyError::Parse { line, msg };
    let mut header = false;
    let mut maximal = Vec::new();
    let mut crit = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if !header {
            if t != "strategy" {
                return Err(err(no, "expected `strategy` header".into()));
            }
            header = true;
            continue;
        }
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let map = || PartialMap::parse(rest, a, b).map_err(|e| err(no, e.to_string()));
        match kw {
            "maximal" => maximal.push(map()?),
            "crit" => crit.push(map()?),
            "strategy" => return Err(err(no, "duplicate `strategy` header".into())),
            other => return Err(err(no, format!("unknown keyword `{other}`"))),
        }
    }
    if !header {
        return Err(err(0, "empty strategy text".into()));
    }
    Ok(Strategy::explicit(maximal, crit))
}
