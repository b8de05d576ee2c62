use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pdl_cli::{run_experiment, CSV_HEADER};
use pdl_core::{read_structure, write_structure, Exec, Structure};
use pdl_gadgets::build_instance;
use pdl_pebblegame::{read_strategy, solve_game, verify_critical_strategy, GameOptions};
use pdl_propagation::{extract_refutation, metrics, read_derivation, saturate_with, verify_refutation, write_derivation, Mode};

/// Propagation depth of k-consistency: instance generation, consistency runs,
/// exact pebble-game solving and certificate checking.
///
/// Generated instances accept every n, m ≥ 1; the growth of the lower bound is
/// only expected for large n and m.
#[derive(Parser)]
#[command(name = "pdl", version)]
struct Cli {
    /// Worker threads for the fixpoint engines (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the generated instance pair (A_n, B_m) as two structure files.
    Gen {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out_a: PathBuf,
        #[arg(long)]
        out_b: PathBuf,
    },
    /// Run the k-consistency test on a pair of structures.
    Consistency {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = ModeArg::Parallel)]
        mode: ModeArg,
        /// Write the refutation to this file when one is found.
        #[arg(long)]
        emit_derivation: Option<PathBuf>,
    },
    /// Solve the existential k-pebble game exactly.
    Game {
        #[command(flatten)]
        pair: Pair,
        /// Abort when the game has more positions than this.
        #[arg(long, default_value_t = 100_000_000)]
        max_positions: u64,
    },
    /// Check a certificate file.
    #[command(subcommand)]
    Verify(Verify),
    /// Sweep generated instances and report saturation and game depths as CSV.
    Experiment {
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        #[arg(long, default_value_t = 100_000_000)]
        max_positions: u64,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Check a refutation (CSP-derivation of the empty map).
    Derivation {
        #[command(flatten)]
        pair: Pair,
        file: PathBuf,
    },
    /// Check a critical Duplicator strategy.
    Strategy {
        #[command(flatten)]
        pair: Pair,
        file: PathBuf,
    },
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    k: usize,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Parallel,
    Fifo,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_structure(path: &Path) -> Result<Structure> {
    read_structure(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

impl Pair {
    fn load(&self) -> Result<(Structure, Structure)> {
        if self.k < 2 {
            bail!("k must be at least 2 (got {})", self.k);
        }
        Ok((load_structure(&self.a)?, load_structure(&self.b)?))
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = Exec::with_threads(cli.threads);
    match cli.cmd {
        Cmd::Gen { k, n, m, out_a, out_b } => {
            let inst = build_instance(k, n, m)?;
            write(&out_a, &write_structure(&inst.a))?;
            write(&out_b, &write_structure(&inst.b))?;
            println!("A: {} vertices, B: {} vertices", inst.a.len(), inst.b.len());
        }
        Cmd::Consistency {
            pair,
            mode,
            emit_derivation,
        } => {
            let (a, b) = pair.load()?;
            let mode = match mode {
                ModeArg::Parallel => Mode::ParallelRounds,
                ModeArg::Fifo => Mode::Fifo,
            };
            let res = saturate_with(&a, &b, pair.k, mode, &exec)?;
            if !res.refuted() {
                println!("ESTABLISHED");
                return Ok(ExitCode::SUCCESS);
            }
            let d = extract_refutation(&res, &a, &b)?;
            let mt = metrics(&d);
            println!("REFUTED depth={} width={} props={}", mt.depth, mt.width, mt.prop_count);
            if let Some(path) = emit_derivation {
                write(&path, &write_derivation(&d, &a, &b))?;
            }
        }
        Cmd::Game { pair, max_positions } => {
            let (a, b) = pair.load()?;
            let sol = solve_game(&a, &b, pair.k, &GameOptions { max_positions, exec })?;
            match sol.spoiler_min_rounds() {
                Some(r) => println!("SPOILER rounds={r} positions={}", sol.positions()),
                None => println!("DUPLICATOR positions={}", sol.positions()),
            }
        }
        Cmd::Verify(Verify::Derivation { pair, file }) => {
            let (a, b) = pair.load()?;
            let d = read_derivation(&read(&file)?, &a, &b)?;
            if let Err(f) = verify_refutation(&d, &a, &b, pair.k) {
                println!("FAIL {f}");
                return Ok(ExitCode::from(1));
            }
            println!("OK");
        }
        Cmd::Verify(Verify::Strategy { pair, file }) => {
            let (a, b) = pair.load()?;
            let h = read_strategy(&read(&file)?, &a, &b)?;
            match verify_critical_strategy(&h, &a, &b, pair.k) {
                Ok(_) => println!("OK"),
                Err(f) => {
                    println!("FAIL {f}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Cmd::Experiment {
            k,
            n_max,
            m_max,
            max_positions,
            csv,
        } => {
            if n_max == 0 || m_max == 0 {
                bail!("n_max and m_max must be at least 1");
            }
            let rows = run_experiment(k, n_max, m_max, &exec, max_positions)?;
            let mut out = format!("{CSV_HEADER}\n");
            for r in &rows {
                out.push_str(&r.csv());
                out.push('\n');
            }
            match csv {
                Some(path) => write(&path, &out)?,
                None => print!("{out}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
