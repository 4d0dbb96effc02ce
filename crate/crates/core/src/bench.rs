//! Operation-count benchmark: measured equality checks of the one-letter
//! pipeline (DiagPar2 partitioning) against the cost bound, with the
//! brute-force bound alongside.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::oracle::{brute_force_recover, random_family, BruteConfig, GenConfig, GenError, NcClass};
use crate::polyalg::rat::{self, Rat};
use crate::recover::stats::cost_bound;
use crate::recover::{recover, AlgChoice, RecoverOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub degree: u32,
    pub trials: usize,
    pub seed: u64,
    /// Also run the exhaustive search on each trial family when k ≤ 2.
    pub brute: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub k: usize,
    pub degree: u32,
    pub trials: usize,
    pub found: usize,
    pub max_equality_checks: u64,
    pub mean_equality_checks: u64,
    pub equality_bound: u64,
    pub within_bound: bool,
    pub max_linear_solve_ops: u64,
    /// Σ_{i=2}^{d} 2^{3i+1}/3, the arithmetic count for square systems.
    pub linear_ops_reference: String,
    pub max_coefficient_list_calls: u64,
    /// (2k²)!·(k²)!·Σ_{i=2}^{d} 2^{3i+1}/3, as a decimal string.
    pub brute_force_bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_max_linear_solve_ops: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub format: u32,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub all_within_bound: bool,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// Σ_{i=2}^{d} 2^{3i+1}/3.
pub fn linear_ops_reference(d: u32) -> Rat {
    (2..=d).map(|i| rat::int(1i64 << (3 * i + 1)) / rat::int(3)).fold(rat::zero(), |a, b| a + b)
}

pub fn brute_force_bound(k: usize, d: u32) -> BigUint {
    let ops = linear_ops_reference(d).ceil().to_integer();
    let ops = ops.to_biguint().unwrap_or_default();
    factorial(2 * k * k) * factorial(k * k) * ops
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, GenError> {
    let mut rows = Vec::new();
    if cfg.trials > 0 {
        for k in cfg.k_min..=cfg.k_max {
            rows.push(bench_row(cfg, k)?);
        }
    }
    Ok(BenchReport {
        format: crate::io::FORMAT,
        seed: cfg.seed,
        all_within_bound: rows.iter().all(|r| r.within_bound),
        rows,
    })
}

fn bench_row(cfg: &BenchConfig, k: usize) -> Result<BenchRow, GenError> {
    let d = cfg.degree;
    let gen = GenConfig::new(k, d, NcClass::PowerPar2);
    let opts = RecoverOptions {
        alg: AlgChoice::Two,
        ..Default::default()
    };
    let bound = cost_bound(k as u64, d as u64);
    let (mut found, mut max_eq, mut sum_eq, mut max_lin, mut max_cl) = (0, 0u64, 0u64, 0u64, 0u64);
    let mut brute_max: Option<u64> = None;
    for t in 0..cfg.trials {
        let seed = cfg.seed.wrapping_add((k as u64) << 32).wrapping_add(t as u64);
        let sample = random_family(&gen, seed)?;
        let v = recover(&sample.family, &opts);
        if v.is_found() {
            found += 1;
        }
        let eq = v.stats.equality_checks();
        max_eq = max_eq.max(eq);
        sum_eq += eq;
        max_lin = max_lin.max(v.stats.linear_solve_ops);
        max_cl = max_cl.max(v.stats.coefficient_list_calls);
        if cfg.brute && k <= 2 {
            if let Ok(b) = brute_force_recover(&sample.family, &BruteConfig::default()) {
                let ops = b.stats.linear_solve_ops;
                brute_max = Some(brute_max.map_or(ops, |m| m.max(ops)));
            }
        }
    }
    Ok(BenchRow {
        k,
        degree: d,
        trials: cfg.trials,
        found,
        max_equality_checks: max_eq,
        mean_equality_checks: sum_eq / cfg.trials.max(1) as u64,
        equality_bound: bound,
        within_bound: max_eq <= bound,
        max_linear_solve_ops: max_lin,
        linear_ops_reference: rat::format(&linear_ops_reference(d)),
        max_coefficient_list_calls: max_cl,
        brute_force_bound: brute_force_bound(k, d).to_string(),
        brute_force_max_linear_solve_ops: brute_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(linear_ops_reference(2), rat::int(128) / rat::int(3));
        // 8!·4!·43
        assert_eq!(brute_force_bound(2, 2), BigUint::from(40320u64 * 24 * 43));
    }

    #[test]
    fn small_report() {
        let cfg = BenchConfig {
            k_min: 2,
            k_max: 2,
            degree: 3,
            trials: 3,
            seed: 1,
            brute: false,
        };
        let r = run_bench(&cfg).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.all_within_bound, "{r:?}");
        let empty = run_bench(&BenchConfig { trials: 0, ..cfg }).unwrap();
        assert!(empty.rows.is_empty());
    }
}
