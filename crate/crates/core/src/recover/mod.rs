//! The recovery pipeline: one-letter detection, partitioning, positioning,
//! coefficient solving, and the reduced-family search for two-letter
//! families.

pub mod diag;
pub mod equivalence;
pub mod failure;
pub mod frame;
pub mod nccoef;
pub mod partition;
pub mod position;
pub mod stats;
pub mod two_letter;
pub mod verdict;
pub mod verify;

use serde_json::{json, Map, Value};

use crate::polyalg::{rat, strip_constants, Arrangement, NcPoly, NcWord, PolyFamily, VarId};
use diag::{diag_a_at, one_letter_degrees, DiagCase, DiagReport};
use failure::{Failure, FailureKind};
use frame::{run_frame, Frame, PartitionMethod};
use partition::FrameSpec;
use stats::Stats;
use verdict::{Verdict, VerdictKind};

pub use equivalence::{grid_equivalent, permutation_equivalent, EquivCase, Equivalence};
pub use nccoef::{nc_coef, NcCoefError};
pub use verify::{verify, Mismatch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlgChoice {
    /// One-letter algorithms with both partition methods, then the
    /// two-letter search.
    #[default]
    Auto,
    /// One-letter algorithms partitioning with DiagPar1 only.
    One,
    /// One-letter algorithms partitioning with DiagPar2 only.
    Two,
    /// The two-letter search only.
    TwoLetter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecoverOptions {
    pub alg: AlgChoice,
    /// Place the higher-numbered variable first when the first off-diagonal
    /// pair is oriented, which yields the transposed arrangement.
    pub transpose_tiebreak: bool,
}

/// Attempts kept in a witness; the total is reported alongside.
const MAX_LOGGED_ATTEMPTS: usize = 40;

struct Run<'a> {
    full: &'a PolyFamily,
    constant: rat::Rat,
    stats: Stats,
    attempts: Vec<Value>,
    attempt_count: usize,
    nc_refutation: Option<(u32, Value)>,
    found: Option<(NcPoly, Arrangement, Value)>,
}

impl Run<'_> {
    /// Records an attempt; returns true once a representation is accepted.
    fn record(&mut self, label: Value, res: Result<(NcPoly, Arrangement), Failure>, one_letter: bool) -> bool {
        let failure = match res {
            Ok((p, arr)) => {
                let mut p = p;
                p.add_term(NcWord::empty(), self.constant.clone());
                match verify(self.full, &arr, &p) {
                    Ok(()) => {
                        self.found = Some((p, arr, label));
                        return true;
                    }
                    Err(m) => Failure {
                        stage: "verify",
                        kind: FailureKind::Verify,
                        detail: format!("constant term misplaced at entry ({},{})", m.row, m.col),
                    },
                }
            }
            Err(f) => f,
        };
        if let (true, FailureKind::NcCoef { degree }) = (one_letter, &failure.kind) {
            if self.nc_refutation.is_none() {
                self.nc_refutation = Some((*degree, label.clone()));
            }
        }
        self.attempt_count += 1;
        if self.attempts.len() < MAX_LOGGED_ATTEMPTS {
            let mut entry = label;
            entry["failure"] = failure.to_json();
            self.attempts.push(entry);
        }
        false
    }
}

fn methods(alg: AlgChoice) -> Vec<PartitionMethod> {
    match alg {
        AlgChoice::One => vec![PartitionMethod::Par1],
        AlgChoice::Two => vec![PartitionMethod::Par2],
        _ => vec![PartitionMethod::Par1, PartitionMethod::Par2],
    }
}

/// Frame specs for one DiagA report, in the order they are tried.
fn one_letter_specs(rep: &DiagReport) -> Vec<(String, FrameSpec)> {
    let sorted = |pairs: Vec<(VarId, Option<VarId>)>| {
        let mut v = pairs;
        v.sort();
        let p: Vec<VarId> = v.iter().map(|x| x.0).collect();
        let o: Option<Vec<VarId>> = v.iter().map(|x| x.1).collect();
        (p, o)
    };
    let n = rep.degree;
    let mk = |c: &rat::Rat, pairs: Vec<(VarId, Option<VarId>)>| {
        let (p_diag, o_diag) = sorted(pairs);
        FrameSpec {
            n,
            c: c.clone(),
            p_diag,
            o_diag,
        }
    };
    match rep.case {
        DiagCase::NoOneLetter => Vec::new(),
        DiagCase::SingleCoeff => vec![("single".into(), mk(&rep.coeff_a, rep.pairs.iter().map(|p| (p.var_a, None)).collect()))],
        DiagCase::TwoCoeff => {
            let b = rep.coeff_b.as_ref().expect("two coefficients");
            vec![
                ("coeff_a".into(), mk(&rep.coeff_a, rep.pairs.iter().map(|p| (p.var_a, p.var_b)).collect())),
                ("coeff_b".into(), mk(b, rep.pairs.iter().map(|p| (p.var_b.unwrap(), Some(p.var_a))).collect())),
            ]
        }
        DiagCase::EqualCoeff2k => {
            let k = rep.pairs.len();
            let all = (1u64 << k) - 1;
            let mut masks = vec![0, all];
            masks.extend((1..all).filter(|m| *m != all));
            masks
                .into_iter()
                .map(|mask| {
                    let pairs = rep
                        .pairs
                        .iter()
                        .enumerate()
                        .map(|(i, p)| {
                            let b = p.var_b.unwrap();
                            if mask >> i & 1 == 1 { (b, Some(p.var_a)) } else { (p.var_a, Some(b)) }
                        })
                        .collect();
                    (format!("orientation_{mask}"), mk(&rep.coeff_a, pairs))
                })
                .collect()
        }
    }
}

fn case_name(c: DiagCase) -> &'static str {
    match c {
        DiagCase::NoOneLetter => "no_one_letter",
        DiagCase::SingleCoeff => "single_coeff",
        DiagCase::TwoCoeff => "two_coeff",
        DiagCase::EqualCoeff2k => "equal_coeff_2k",
    }
}

/// Top-level recovery. Never fails on a valid family; the outcome is in the
/// verdict. A Found verdict has been checked by expanding it.
pub fn recover(fam: &PolyFamily, opts: &RecoverOptions) -> Verdict {
    let mut stats = Stats::default();
    let (stripped, constant, _) = match strip_constants(fam) {
        Ok(x) => x,
        Err(e) => {
            let w = json!({"check": "constant_pattern", "reason": e.to_string(), "scope": "no representation exists"});
            return Verdict::without_representation(VerdictKind::Refuted, as_map(w), stats);
        }
    };
    if stripped.is_zero() {
        let p = NcPoly::from_terms([(NcWord::empty(), constant)]);
        let arr = Arrangement::standard(fam.k);
        let w = json!({"frame": "constant"});
        return Verdict::found(p, arr, as_map(w), stats);
    }
    let mut run = Run {
        full: fam,
        constant,
        stats: Stats::default(),
        attempts: Vec::new(),
        attempt_count: 0,
        nc_refutation: None,
        found: None,
    };
    let ms = methods(opts.alg);
    if opts.alg != AlgChoice::TwoLetter {
        for n in one_letter_degrees(&stripped) {
            let rep = match diag_a_at(&stripped, n, &mut stats) {
                Ok(Some(r)) => r,
                Ok(None) => continue,
                Err(v) => {
                    let mut w = v.to_json();
                    w["scope"] = json!("no representation exists");
                    stats = merge(stats, &run.stats);
                    return Verdict::without_representation(VerdictKind::Refuted, as_map(w), stats);
                }
            };
            for (name, spec) in one_letter_specs(&rep) {
                for &method in &ms {
                    let frame = Frame {
                        original: &stripped,
                        work: &stripped,
                        spec: spec.clone(),
                        method,
                        transpose_tiebreak: opts.transpose_tiebreak,
                    };
                    let res = run_frame(&frame, &mut stats);
                    let label = json!({
                        "frame": "one_letter",
                        "case": case_name(rep.case),
                        "primary": name,
                        "degree": n,
                        "method": method.name(),
                    });
                    if run.record(label, res, true) {
                        return finish_found(run, stats);
                    }
                }
            }
        }
    }
    if matches!(opts.alg, AlgChoice::Auto | AlgChoice::TwoLetter) {
        let mut done = false;
        two_letter::two_letter_search(&stripped, &ms, opts.transpose_tiebreak, &mut stats, &mut |(label, res), _| {
            done = run.record(label, res, false);
            done
        });
        if done {
            return finish_found(run, stats);
        }
    }
    let stats = merge(stats, &run.stats);
    let mut w = Map::new();
    w.insert("attempts".into(), Value::Array(run.attempts));
    w.insert("attempt_count".into(), json!(run.attempt_count));
    match run.nc_refutation {
        Some((degree, frame)) => {
            w.insert("check".into(), json!("nc_coef"));
            w.insert("nc_coef_inconsistent_degree".into(), json!(degree));
            w.insert("refuting_frame".into(), frame);
            w.insert(
                "scope".into(),
                json!("no representation in the classes handled by the one-letter algorithms: their arrangement is forced and its coefficient system is inconsistent"),
            );
            Verdict::without_representation(VerdictKind::Refuted, w, stats)
        }
        None => {
            w.insert("reason".into(), json!(if run.attempt_count == 0 { "no one-letter or two-letter pattern to start from" } else { "no attempt produced a representation" }));
            Verdict::without_representation(VerdictKind::Inconclusive, w, stats)
        }
    }
}

fn finish_found(run: Run, stats: Stats) -> Verdict {
    let stats = merge(stats, &run.stats);
    let (p, arr, label) = run.found.expect("found");
    let mut w = Map::new();
    w.insert("frame".into(), label);
    w.insert("attempts_before".into(), json!(run.attempt_count));
    Verdict::found(p, arr, w, stats)
}

fn merge(mut a: Stats, b: &Stats) -> Stats {
    a.diag_a += b.diag_a;
    a.partition += b.partition;
    a.par_pos_x += b.par_pos_x;
    a.pos_pol += b.pos_pol;
    a.pos_y += b.pos_y;
    a.coefficient_list_calls += b.coefficient_list_calls;
    a.linear_solve_ops += b.linear_solve_ops;
    a
}

fn as_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}
