//! Shared pieces of the `pdl` command line: the scaling experiment and its CSV rows.

use std::fmt;
use std::time::Instant;

use anyhow::Result;
use pdl_core::Exec;
use pdl_gadgets::build_instance;
use pdl_pebblegame::{solve_game, GameOptions};
use pdl_propagation::{saturate_with, Mode};

pub const CSV_HEADER: &str = "k,n,m,vertices_a,vertices_b,method,depth,prop_count,elapsed_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Saturation,
    Game,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Saturation => "saturation",
            Method::Game => "game",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub k: u32,
    pub n: u32,
    pub m: u32,
    pub vertices_a: usize,
    pub vertices_b: usize,
    pub method: Method,
    /// Absent when k-consistency can be established.
    pub depth: Option<u32>,
    /// Saturation: derived inconsistent maps. Game: Spoiler-won positions of size ≤ k−1.
    pub prop_count: u64,
    pub elapsed_ms: u128,
}

impl ExperimentRow {
    /// The CSV line without the trailing timing column.
    pub fn stable_fields(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.k,
            self.n,
            self.m,
            self.vertices_a,
            self.vertices_b,
            self.method,
            self.depth.map(|d| d.to_string()).unwrap_or_default(),
            self.prop_count
        )
    }

    pub fn csv(&self) -> String {
        format!("{},{}", self.stable_fields(), self.elapsed_ms)
    }
}

/// Saturation and game rows for the generated instance `(k, n, m)`.
pub fn run_instance(k: u32, n: u32, m: u32, exec: &Exec, max_positions: u64) -> Result<[ExperimentRow; 2]> {
    let inst = build_instance(k, n, m)?;
    let (a, b) = (&inst.a, &inst.b);
    let row = |method, depth, prop_count, elapsed_ms| ExperimentRow {
        k,
        n,
        m,
        vertices_a: a.len(),
        vertices_b: b.len(),
        method,
        depth,
        prop_count,
        elapsed_ms,
    };

    let t = Instant::now();
    let sat = saturate_with(a, b, k as usize, Mode::ParallelRounds, exec)?;
    let sat_row = row(
        Method::Saturation,
        sat.empty_round(),
        sat.entries().len() as u64,
        t.elapsed().as_millis(),
    );

    let t = Instant::now();
    let opts = GameOptions {
        max_positions,
        exec: exec.clone(),
    };
    let game = solve_game(a, b, k as usize, &opts)?;
    let game_row = row(
        Method::Game,
        game.spoiler_min_rounds(),
        game.won_positions(k as usize - 1),
        t.elapsed().as_millis(),
    );
    Ok([sat_row, game_row])
}

/// Rows for every `n ≤ n_max`, `m ≤ m_max`, in row-major order.
pub fn run_experiment(k: u32, n_max: u32, m_max: u32, exec: &Exec, max_positions: u64) -> Result<Vec<ExperimentRow>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for m in 1..=m_max {
            rows.extend(run_instance(k, n, m, exec, max_positions)?);
        }
    }
    Ok(rows)
}

/// `Σ_{ℓ<k} C(a, ℓ) b^ℓ`, the number of candidate maps of size at most k−1.
pub fn map_count_bound(a: usize, b: usize, k: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    let mut pow = 1u128;
    for l in 0..k as u128 {
        total += binom * pow;
        binom = binom * (a as u128).saturating_sub(l) / (l + 1);
        pow *= b as u128;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_count_bound_small_cases() {
        assert_eq!(map_count_bound(3, 2, 1), 1);
        assert_eq!(map_count_bound(3, 2, 2), 1 + 6);
        assert_eq!(map_count_bound(3, 2, 3), 1 + 6 + 12);
        assert_eq!(map_count_bound(1, 5, 4), 1 + 5);
    }

    #[test]
    fn csv_row_leaves_depth_empty_when_established() {
        let r = ExperimentRow {
            k: 3,
            n: 1,
            m: 1,
            vertices_a: 2,
            vertices_b: 3,
            method: Method::Game,
            depth: None,
            prop_count: 0,
            elapsed_ms: 5,
        };
        assert_eq!(r.csv(), "3,1,1,2,3,game,,0,5");
        assert_eq!(CSV_HEADER.split(',').count(), r.csv().split(',').count());
    }
}
