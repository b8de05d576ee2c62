use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use pdl_cli::{map_count_bound, run_experiment, ExperimentRow, Method};
use pdl_core::{read_structure, write_structure, Exec, PartialMap, Structure, StructureBuilder};
use pdl_dupstrategies::*;
use pdl_gadgets::*;
use pdl_pebblegame::{
    solve_game, spoiler_min_rounds, verify_critical_strategy, verify_strategy_sequence, write_strategy, GameOptions,
    Strategy,
};
use pdl_propagation::{read_derivation, saturate_with, verify_refutation, Derivation, FailureReason, LineKind, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x00c0_ffee;
const WORKERS: [usize; 2] = [1, 8];

type Outcome = Result<String, String>;

/// k, |A|, |B|, saturation depth, derived maps.
type Run = (usize, usize, usize, Option<u32>, u64);

fn pdl(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pdl")).args(args).output().expect("run pdl");
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    if t.elapsed() > limit {
        return Err(format!("{what} took {:?}, limit {limit:?}", t.elapsed()));
    }
    Ok(())
}

fn random_structure(rng: &mut ChaCha8Rng, name: &str, max: usize) -> Structure {
    let n = rng.gen_range(1..=max);
    let mut b = StructureBuilder::new(name);
    for i in 0..n {
        let c = if rng.gen_bool(0.7) { "c0" } else { "c1" };
        b.vertex(&format!("{name}{i}"), c).unwrap();
    }
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(0.45) {
                b.edge_idx(u, v).unwrap();
            }
        }
    }
    b.build()
}

/// One report line per random instance: saturation depth and game depth.
fn cross_check_report(threads: usize) -> Result<(String, Vec<Run>), String> {
    let exec = Exec::with_threads(threads);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut report = String::new();
    let mut runs = Vec::new();
    for i in 0..200 {
        let a = random_structure(&mut rng, "a", 5);
        let b = random_structure(&mut rng, "b", 4);
        let k = rng.gen_range(2..=3);
        let sat = saturate_with(&a, &b, k, Mode::ParallelRounds, &exec).map_err(|e| e.to_string())?;
        let opts = GameOptions {
            exec: exec.clone(),
            ..GameOptions::default()
        };
        let game = solve_game(&a, &b, k, &opts).map_err(|e| e.to_string())?;
        let (ds, dg) = (sat.empty_round(), game.spoiler_min_rounds());
        report.push_str(&format!("{i} k={k} |A|={} |B|={} sat={ds:?} game={dg:?}\n", a.len(), b.len()));
        if ds != dg {
            return Err(format!("instance {i}: saturation {ds:?} vs game {dg:?}\n{report}"));
        }
        runs.push((k, a.len(), b.len(), ds, sat.entries().len() as u64));
    }
    Ok((report, runs))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let (_, runs) = cross_check_report(1)?;
    within(t, Duration::from_secs(60), "cross-check")?;
    let refuted = runs.iter().filter(|r| r.3.is_some()).count();
    Ok(format!("200 random instances agree ({refuted} refuted) in {:?}", t.elapsed()))
}

/// gen, consistency and verify derivation through the binary; returns the
/// printed reports and emitted derivation texts.
fn refutation_report(dir: &Path, threads: usize) -> Result<String, String> {
    let th = threads.to_string();
    let mut report = String::new();
    for n in 1..=2 {
        for m in 1..=2 {
            let stem = dir.join(format!("t{threads}_{n}_{m}"));
            let (fa, fb, fd) = (stem.with_extension("a"), stem.with_extension("b"), stem.with_extension("d"));
            let (fa, fb, fd) = (fa.to_str().unwrap(), fb.to_str().unwrap(), fd.to_str().unwrap());
            let (ns, ms) = (n.to_string(), m.to_string());
            let (code, out) = pdl(&["gen", "--k", "3", "--n", &ns, "--m", &ms, "--out-a", fa, "--out-b", fb]);
            if code != 0 {
                return Err(format!("gen ({n},{m}) exit {code}: {out}"));
            }
            let t = Instant::now();
            let (code, out) = pdl(&["--threads", &th, "consistency", "--k", "3", fa, fb, "--emit-derivation", fd]);
            within(t, Duration::from_secs(600), "consistency")?;
            let line = out.trim().to_string();
            if code != 0 || !line.starts_with("REFUTED") {
                return Err(format!("consistency ({n},{m}): exit {code}, {line}"));
            }
            let width: usize = line
                .split_whitespace()
                .find_map(|w| w.strip_prefix("width="))
                .and_then(|w| w.parse().ok())
                .ok_or(format!("no width in {line}"))?;
            if width > 2 {
                return Err(format!("({n},{m}) width {width} > 2"));
            }
            let (code, out) = pdl(&["verify", "derivation", "--k", "3", fa, fb, fd]);
            if code != 0 || out.trim() != "OK" {
                return Err(format!("verify derivation ({n},{m}): exit {code}, {out}"));
            }
            let derivation = std::fs::read_to_string(fd).map_err(|e| e.to_string())?;
            report.push_str(&format!("({n},{m}) {line}\n{derivation}"));
        }
    }
    Ok(report)
}

fn criterion_2(dir: &Path) -> Outcome {
    let report = refutation_report(dir, 1)?;
    let summary: Vec<&str> = report.lines().filter(|l| l.starts_with('(')).collect();
    Ok(summary.join("; "))
}

fn growth_check(rows: &[ExperimentRow]) -> Result<(), String> {
    let depth = |n: u32, m: u32, method: Method| {
        rows.iter()
            .find(|r| r.n == n && r.m == m && r.method == method)
            .and_then(|r| r.depth)
            .ok_or(format!("no depth for ({n},{m}) {method}"))
    };
    for method in [Method::Saturation, Method::Game] {
        for n in 1..=2 {
            for m in 1..=2 {
                let d = depth(n, m, method)?;
                if d < n * n * m * m {
                    return Err(format!("({n},{m}) {method}: depth {d} < {}", n * n * m * m));
                }
                if n > 1 && depth(n - 1, m, method)? > d {
                    return Err(format!("{method}: depth decreases in n at m={m}"));
                }
                if m > 1 && depth(n, m - 1, method)? > d {
                    return Err(format!("{method}: depth decreases in m at n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn experiment(threads: usize) -> Result<Vec<ExperimentRow>, String> {
    run_experiment(3, 2, 2, &Exec::with_threads(threads), 100_000_000).map_err(|e| e.to_string())
}

fn criterion_3(rows: &[ExperimentRow]) -> Outcome {
    growth_check(rows)?;
    for pair in rows.chunks(2) {
        if pair[0].depth != pair[1].depth {
            return Err(format!("({},{}): saturation and game depths differ", pair[0].n, pair[0].m));
        }
    }
    let ds: Vec<String> = rows
        .iter()
        .filter(|r| r.method == Method::Saturation)
        .map(|r| format!("({},{})={}", r.n, r.m, r.depth.unwrap()))
        .collect();
    Ok(format!("depths {} agree across methods", ds.join(" ")))
}

fn criterion_4(rows: &[ExperimentRow]) -> Outcome {
    let (_, runs) = cross_check_report(1)?;
    let mut checked = 0;
    let mut check = |k: usize, va: usize, vb: usize, depth: Option<u32>, props: u64| -> Result<(), String> {
        checked += 1;
        let bound = map_count_bound(va, vb, k);
        if props as u128 > bound {
            return Err(format!("k={k} |A|={va} |B|={vb}: prop_count {props} > {bound}"));
        }
        let cap = (va as u128).pow(k as u32 - 1) * (vb as u128).pow(k as u32 - 1);
        if depth.is_some_and(|d| d as u128 > cap) {
            return Err(format!("k={k} |A|={va} |B|={vb}: depth {depth:?} > {cap}"));
        }
        Ok(())
    };
    for r in rows {
        check(r.k as usize, r.vertices_a, r.vertices_b, r.depth, r.prop_count)?;
    }
    for (k, va, vb, d, props) in runs {
        check(k, va, vb, d, props)?;
    }
    Ok(format!("{checked} runs within the map-count and depth bounds"))
}

fn check(h: &Strategy, a: &Structure, b: &Structure) -> Result<(), String> {
    verify_critical_strategy(h, a, b, 3).map(|_| ()).map_err(|e| e.to_string())
}

fn criterion_5(dir: &Path) -> Outcome {
    let t = Instant::now();
    let e = |e: DupError| e.to_string();
    let mut count = 0;
    let mut files = 0;
    for n in 1..=2 {
        for m in 1..=2 {
            let p = Params::new(2, n, m).unwrap();
            let g = build_win(p);
            for q in p.all_configurations().iter().filter(|q| **q != p.q_win()) {
                check(&win_strategy(&g, &win_gadget(), q).map_err(e)?, &g.spoiler, &g.duplicator)?;
                count += 1;
            }
            for inc in Inc::all(p.kk) {
                let g = build_inc(inc, p).unwrap();
                for q in p.all_configurations() {
                    check(&inc_strategy(&g, &inc_gadget(inc), &q).map_err(e)?, &g.spoiler, &g.duplicator)?;
                    count += 1;
                }
            }
            let g = build_switch(p);
            let sw = switch_gadget();
            let fa = dir.join(format!("sw_{n}_{m}.a"));
            let fb = dir.join(format!("sw_{n}_{m}.b"));
            std::fs::write(&fa, write_structure(&g.spoiler)).unwrap();
            std::fs::write(&fb, write_structure(&g.duplicator)).unwrap();
            for q in p.all_configurations() {
                check(&switch_out(&g, &sw, &q).map_err(e)?, &g.spoiler, &g.duplicator)?;
                count += 1;
                if !q.is_valid() {
                    check(&switch_restart(&g, &sw, &q).map_err(e)?, &g.spoiler, &g.duplicator)?;
                    count += 1;
                    continue;
                }
                let si = switch_in(&g, &sw, &q).map_err(e)?;
                check(&si.strategy, &g.spoiler, &g.duplicator)?;
                count += 1;
                let out = switch_out(&g, &sw, &q).map_err(e)?;
                if let Some(c) = si.out_crit.iter().find(|c| !out.contains(c)) {
                    return Err(format!("output-critical {c:?} not in the output strategy"));
                }
                for t in p.blocks() {
                    let r = switch_restart(&g, &sw, &q.with_blocked([t])).map_err(e)?;
                    if let Some(c) = si.restart_crit[t as usize - 1].iter().find(|c| !r.contains(c)) {
                        return Err(format!("restart-critical {c:?} not in the restart strategy"));
                    }
                }
                let fs = dir.join(format!("sw_{n}_{m}_{}.strategy", alpha(&q, p).unwrap()));
                let text = write_strategy(&si.strategy, &g.spoiler, &g.duplicator, 1 << 16).map_err(|e| e.to_string())?;
                std::fs::write(&fs, text).unwrap();
                let (code, out) = pdl(&[
                    "verify",
                    "strategy",
                    "--k",
                    "3",
                    fa.to_str().unwrap(),
                    fb.to_str().unwrap(),
                    fs.to_str().unwrap(),
                ]);
                if code != 0 || out.trim() != "OK" {
                    return Err(format!("verify strategy {}: exit {code}, {out}", fs.display()));
                }
                files += 1;
            }
        }
    }
    let p = Params::new(2, 1, 1).unwrap();
    let q0 = alpha_inverse(0, p).unwrap();
    let g = build_init(&q0, p).unwrap();
    for q_out in p.all_configurations() {
        let s = init_strategies(&g, &init_gadget(&q0), &q_out).map_err(e)?;
        check(&s.winning, &g.spoiler, &g.duplicator)?;
        check(&s.critical, &g.spoiler, &g.duplicator)?;
        if let Some(c) = s.critical.crit().iter().find(|c| !s.winning.is_safe(c)) {
            return Err(format!("initialization critical {c:?} not safe in the winning strategy"));
        }
        count += 2;
    }
    within(t, Duration::from_secs(300), "strategy validation")?;
    Ok(format!("{count} gadget strategies accepted, {files} strategy files accepted by the binary"))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let inst = build_instance(3, 1, 2).map_err(|e| e.to_string())?;
    let seq = build_duplicator_sequence(&inst, SequenceOptions::default()).map_err(|e| e.to_string())?;
    verify_strategy_sequence(&seq, &inst.a, &inst.b, 3).map_err(|e| e.to_string())?;
    let rounds = spoiler_min_rounds(&inst.a, &inst.b, 3)
        .map_err(|e| e.to_string())?
        .ok_or("Duplicator wins the game")?;
    if (rounds as usize) < seq.len() + 1 {
        return Err(format!("solver gives {rounds} rounds, sequence certifies {}", seq.len() + 1));
    }
    within(t, Duration::from_secs(600), "sequence")?;
    Ok(format!("{} strategies accepted; bound {} ≤ exact {rounds}", seq.len(), seq.len() + 1))
}

fn criterion_7(dir: &Path, rows_1: &[ExperimentRow]) -> Outcome {
    let (c1_1, _) = cross_check_report(WORKERS[0])?;
    let (c1_8, _) = cross_check_report(WORKERS[1])?;
    if c1_1 != c1_8 {
        return Err("cross-check reports differ".into());
    }
    let c2_1 = refutation_report(dir, WORKERS[0])?;
    let c2_8 = refutation_report(dir, WORKERS[1])?;
    if c2_1 != c2_8 {
        return Err("refutation reports differ".into());
    }
    let stable = |rows: &[ExperimentRow]| rows.iter().map(ExperimentRow::stable_fields).collect::<Vec<_>>().join("\n");
    let rows_8 = experiment(WORKERS[1])?;
    if stable(rows_1) != stable(&rows_8) {
        return Err("experiment rows differ".into());
    }
    Ok(format!(
        "reports identical for {} and {} workers ({} + {} + {} bytes)",
        WORKERS[0],
        WORKERS[1],
        c1_1.len(),
        c2_1.len(),
        stable(rows_1).len()
    ))
}

fn mutations(d: &Derivation, a: &Structure, b: &Structure) -> Vec<(&'static str, Derivation)> {
    let (na, nb) = (a.len() as u32, b.len() as u32);
    let last = d.lines.len() - 1;
    let prop = |i: usize| match &d.lines[i].kind {
        LineKind::Propagated { pivot, premises } => Some((*pivot, premises.clone())),
        LineKind::Axiom => None,
    };
    let axiom = d.lines.iter().position(|l| l.is_axiom()).unwrap();
    let nonempty = (0..d.lines.len())
        .find(|&i| prop(i).is_some() && !d.lines[i].map.is_empty())
        .unwrap();
    let mut out: Vec<(&'static str, Derivation)> = Vec::new();
    let mut mutate = |name, f: &dyn Fn(&mut Derivation)| {
        let mut m = d.clone();
        f(&mut m);
        out.push((name, m));
    };
    let set_premises = |m: &mut Derivation, i: usize, f: &dyn Fn(&mut Vec<usize>)| {
        if let LineKind::Propagated { premises, .. } = &mut m.lines[i].kind {
            f(premises);
        }
    };
    mutate("dropped premise", &|m| set_premises(m, last, &|p| {
        p.pop();
    }));
    mutate("two dropped premises", &|m| set_premises(m, last, &|p| p.truncate(p.len() - 2)));
    mutate("duplicated premise", &|m| set_premises(m, last, &|p| p.push(p[0])));
    mutate("oversized line", &|m| {
        let map = &m.lines[nonempty].map;
        let free: Vec<u32> = (0..na).filter(|&x| !map.contains_vertex(x)).take(3 - map.len()).collect();
        m.lines[nonempty].map = free.iter().fold(map.clone(), |acc, &x| acc.with(x, 0).unwrap());
    });
    mutate("homomorphic axiom", &|m| m.lines[axiom].map = PartialMap::new());
    mutate("oversized axiom", &|m| {
        m.lines[axiom].map = PartialMap::from_pairs((0..4).map(|x| (x, 0))).unwrap();
    });
    mutate("declared k too large", &|m| m.k += 1);
    mutate("declared k too small", &|m| m.k -= 1);
    mutate("no lines", &|m| m.lines.clear());
    mutate("shuffled ids", &|m| {
        m.lines[0].id = 1;
        m.lines[1].id = 0;
    });
    mutate("vertex outside A", &|m| m.lines[axiom].map = PartialMap::singleton(na, 0));
    mutate("non-homomorphic line", &|m| {
        let (pivot, _) = prop(last).unwrap();
        let x = (0..na).find(|&x| x != pivot).unwrap();
        let y = b.vertices().find(|&y| b.color(y) != a.color(x)).unwrap_or(nb - 1);
        m.lines[last].map = PartialMap::singleton(x, y);
    });
    mutate("pivot outside A", &|m| {
        if let LineKind::Propagated { pivot, .. } = &mut m.lines[last].kind {
            *pivot = na;
        }
    });
    mutate("pivot in domain", &|m| {
        let x = m.lines[nonempty].map.domain().next().unwrap();
        if let LineKind::Propagated { pivot, .. } = &mut m.lines[nonempty].kind {
            *pivot = x;
        }
    });
    mutate("self reference", &|m| set_premises(m, last, &|p| p[0] = last));
    mutate("dangling reference", &|m| set_premises(m, last, &|p| p[0] = last + 5));
    mutate("premise for the wrong B-vertex", &|m| set_premises(m, last, &|p| p[0] = p[1]));
    mutate("premise for the wrong B-vertex, second slot", &|m| set_premises(m, last, &|p| p[1] = p[0]));
    mutate("premise not contained", &|m| {
        let (i, pivot, premises) = (0..m.lines.len())
            .filter_map(|i| prop(i).map(|(v, p)| (i, v, p)))
            .find(|(_, v, p)| p.iter().any(|&j| d.lines[j].map.without(*v).len() == 1))
            .unwrap();
        let j = premises.iter().find(|&&j| d.lines[j].map.without(pivot).len() == 1).unwrap();
        let x = d.lines[*j].map.without(pivot).domain().next().unwrap();
        m.lines[i].map = m.lines[i].map.without(x);
    });
    mutate("missing empty map", &|m| {
        m.lines.pop();
    });
    out
}

fn criterion_8(dir: &Path) -> Outcome {
    let fa = dir.join("t1_1_1.a");
    let a = read_structure(&std::fs::read_to_string(&fa).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let b = read_structure(&std::fs::read_to_string(dir.join("t1_1_1.b")).unwrap()).map_err(|e| e.to_string())?;
    let d = read_derivation(&std::fs::read_to_string(dir.join("t1_1_1.d")).unwrap(), &a, &b).map_err(|e| e.to_string())?;
    verify_refutation(&d, &a, &b, 3).map_err(|e| format!("original rejected: {e}"))?;
    let muts = mutations(&d, &a, &b);
    let mut reasons: Vec<FailureReason> = Vec::new();
    for (name, m) in &muts {
        match verify_refutation(m, &a, &b, 3) {
            Ok(()) => return Err(format!("mutation '{name}' accepted")),
            Err(f) => {
                if reasons.contains(&f.reason) {
                    return Err(format!("mutation '{name}' repeats the reason '{}'", f.reason));
                }
                let expected = match *name {
                    "dropped premise" => Some(matches!(f.reason, FailureReason::PremiseCoverageIncomplete { .. })),
                    "oversized line" => Some(f.reason == FailureReason::LineTooLarge),
                    "homomorphic axiom" => Some(f.reason == FailureReason::AxiomIsHomomorphism),
                    _ => None,
                };
                if expected == Some(false) {
                    return Err(format!("mutation '{name}' rejected for the wrong reason: {f}"));
                }
                reasons.push(f.reason);
            }
        }
    }
    let kinds: HashSet<_> = reasons.iter().map(std::mem::discriminant).collect();
    Ok(format!(
        "{} mutations rejected with distinct reasons ({} reason kinds)",
        muts.len(),
        kinds.len()
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let dir = dir.path();
    let rows = experiment(1);
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2(dir)),
        (3, rows.clone().and_then(|r| criterion_3(&r))),
        (4, rows.clone().and_then(|r| criterion_4(&r))),
        (5, criterion_5(dir)),
        (6, criterion_6()),
        (7, rows.and_then(|r| criterion_7(dir, &r))),
        (8, criterion_8(dir)),
    ];
    let mut failed = false;
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {n}: {msg}"),
            Err(msg) => {
                failed = true;
                println!("FAIL criterion {n}: {msg}");
            }
        }
    }
    if failed {
        std::process::exit(1);
    }
}
