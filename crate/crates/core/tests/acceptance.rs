//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p ncrep-core --test acceptance`.

#[allow(dead_code)]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncrep::bench::{run_bench, BenchConfig};
use ncrep::io::{to_json, verdict_to_file};
use ncrep::oracle::{brute_force_recover, random_arrangement, random_family, random_nc_poly, BruteConfig, GenConfig, NcClass};
use ncrep::polyalg::{expand, rat, t_operator, Arrangement, CommPoly, Letter, NcPoly, PolyFamily, VarId};
use ncrep::recover::stats::{cost_bound, Stats};
use ncrep::recover::verdict::{Verdict, VerdictKind};
use ncrep::recover::{grid_equivalent, nc_coef, permutation_equivalent, recover, verify, EquivCase, RecoverOptions};

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const ROUND_TRIP_BUDGET: Duration = Duration::from_secs(120);
const TWO_LETTER_BUDGET: Duration = Duration::from_secs(180);
const BRUTE_BUDGET: Duration = Duration::from_secs(300);
const IDENTITY_BUDGET: Duration = Duration::from_secs(60);
const BENCH_BUDGET: Duration = Duration::from_secs(120);
const DETERMINISM_BUDGET: Duration = Duration::from_secs(60);

const ROUND_TRIP_SAMPLES: usize = 200;
const TWO_LETTER_PER_REGIME: usize = 15;
const TAIL_SAMPLES: usize = 20;
const BRUTE_FAMILIES: usize = 15;
const IDENTITY_CASES: u64 = 100;
const BENCH_TRIALS: usize = 10;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let r = f();
    let t = start.elapsed();
    let (ok, detail) = match r {
        Ok(d) if t <= budget => (true, d),
        Ok(d) => (false, format!("{d}; took {t:.2?}, budget {budget:?}")),
        Err(e) => (false, e),
    };
    println!("{} {id:>2} {name} ({t:.2?} / {budget:?}): {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

/// Runs `f` and fails if that single call exceeds `budget`.
fn timed<T>(label: &str, budget: Duration, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let v = f();
    let t = start.elapsed();
    check(t <= budget, format!("{label} took {t:.2?}, budget {budget:?}"))?;
    Ok(v)
}

fn found(fam: &PolyFamily, opts: &RecoverOptions, label: &str) -> Result<(NcPoly, Arrangement), String> {
    let v = recover(fam, opts);
    let (p, arr) = v
        .representation
        .ok_or_else(|| format!("{label}: expected found, got {:?} {:?}", v.kind, v.witness))?;
    verify(fam, &arr, &p).map_err(|m| format!("{label}: recovered representation fails at ({},{})", m.row, m.col))?;
    Ok((p, arr))
}

fn matches_truth(p: &NcPoly, arr: &Arrangement, want_p: &NcPoly, want_arr: &Arrangement) -> bool {
    permutation_equivalent(want_arr, arr).is_some_and(|e| &e.case.apply_poly(p) == want_p)
}

#[derive(PartialEq)]
enum Agreement {
    Exact,
    /// Arrangements are equivalent and the polynomials differ by an identity
    /// of k×k matrices.
    ModuloIdentity,
    No,
}

fn agreement(p: &NcPoly, arr: &Arrangement, want_p: &NcPoly, want_arr: &Arrangement) -> Agreement {
    let Some(e) = permutation_equivalent(want_arr, arr) else {
        return Agreement::No;
    };
    let q = e.case.apply_poly(p);
    if &q == want_p {
        return Agreement::Exact;
    }
    let diff = &q - want_p;
    let m = expand(&diff, &Arrangement::standard(arr.k));
    if (0..arr.k).all(|i| (0..arr.k).all(|j| m.get(i, j).is_zero())) {
        Agreement::ModuloIdentity
    } else {
        Agreement::No
    }
}

fn golden_expansion() -> Outcome {
    let arr = Arrangement::standard(2);
    let fam = expand(&nc("X^2 + XY"), &arr).to_family(&arr);
    check(fam == intro_family(), "expansion differs from the four-polynomial family")?;
    Ok("X^2 + XY expands to the expected family".into())
}

fn golden_recoveries() -> Outcome {
    let opts = RecoverOptions::default();
    let mut done = Vec::new();

    let (p, arr) = timed("3/1/1/6 family", GOLDEN_BUDGET, || found(&coeffs_3_6_family(), &opts, "3/1/1/6 family"))??;
    let (want_p, want_arr) = coeffs_3_6_answer();
    check(matches_truth(&p, &arr, &want_p, &want_arr), format!("3/1/1/6 family: got {p}"))?;
    done.push(format!("a,b,c,d = 3,1,1,6 via {p}"));

    let q = timed("fixed arrangement", GOLDEN_BUDGET, || {
        nc_coef(&fixed_arrangement_family(), &Arrangement::standard(2), &mut Stats::default())
    })?
    .map_err(|e| format!("fixed arrangement: {e}"))?;
    check(q == nc("4X^2 + XY + YX + 6Y^2"), format!("fixed arrangement: got {q}"))?;
    done.push(format!("nc_coef {q}"));

    let fam = five_x2_family();
    let (p, arr) = timed("5X^2+XY", GOLDEN_BUDGET, || found(&fam, &opts, "5X^2+XY"))??;
    let (want_p, want_arr) = five_x2_answer();
    check(matches_truth(&p, &arr, &want_p, &want_arr), format!("5X^2+XY: got {p}"))?;
    let wrong = verify(&fam, &want_arr, &nc("5X^2 + YX"));
    check(wrong.is_err(), "5X^2+YX unexpectedly verifies")?;
    let m = wrong.unwrap_err();
    done.push(format!("5X^2+XY (5X^2+YX fails at ({},{}))", m.row, m.col));

    let fam = commutator_family();
    let (p, arr) = timed("commutator", GOLDEN_BUDGET, || found(&fam, &opts, "commutator"))??;
    let (want_p, want_arr) = commutator_answer();
    check(matches_truth(&p, &arr, &want_p, &want_arr), format!("commutator: got {p}"))?;
    let first_y = Arrangement::new(want_arr.x.clone(), vec![vec![5, 6], vec![7, 8]], want_arr.lambda.clone()).map_err(|e| e.to_string())?;
    check(
        nc_coef(&fam, &first_y, &mut Stats::default()).map_or(true, |q| verify(&fam, &first_y, &q).is_err()),
        "commutator: the unswapped Y diagonal also works",
    )?;
    done.push(format!("{want_p} with swapped Y diagonal"));

    let fam = cube_family();
    let (p, arr) = timed("X^3 at k=5", GOLDEN_BUDGET, || found(&fam, &opts, "X^3 at k=5"))??;
    check(p == nc("X^3"), format!("k=5: got {p}"))?;
    let e = grid_equivalent(&cube_grid(), &arr.x).ok_or("k=5: X grid not conjugate to the expected one")?;
    check(matches!(e.case, EquivCase::Identity | EquivCase::Transpose), "k=5: unexpected case")?;
    done.push(format!("X^3 at k=5 (case {})", e.case.number()));
    Ok(done.join("; "))
}

fn negative_verdicts() -> Outcome {
    let opts = RecoverOptions::default();
    let v = timed("all-ones family", GOLDEN_BUDGET, || recover(&all_ones_family(), &opts))?;
    check(v.kind == VerdictKind::Inconclusive, format!("all-ones family: {:?}", v.kind))?;
    let v = timed("cubic family", GOLDEN_BUDGET, || recover(&inconsistent_cubic_family(), &opts))?;
    check(v.kind == VerdictKind::Refuted, format!("cubic family: {:?}", v.kind))?;
    check(v.witness.get("nc_coef_inconsistent_degree") == Some(&3.into()), format!("cubic family witness {:?}", v.witness))?;
    Ok("all-ones inconclusive; cubic family refuted at degree 3".into())
}

fn commutator_square() -> Outcome {
    let m = expand(&nc("XYXY - XYYX - YXXY + YXYX"), &Arrangement::standard(2));
    let d = commutator_square_diagonal();
    check(m.get(0, 0) == &d && m.get(1, 1) == &d, "diagonal differs from the expected p(x)")?;
    check(m.get(0, 1).is_zero() && m.get(1, 0).is_zero(), "off-diagonal entries are non-zero")?;
    Ok(format!("scalar matrix, {} terms per diagonal entry", d.len()))
}

fn round_trip(class: NcClass, k: usize, d: u32, seed: u64) -> Result<Agreement, String> {
    let s = random_family(&GenConfig::new(k, d, class), seed).map_err(|e| e.to_string())?;
    let (p, arr) = found(&s.family, &RecoverOptions::default(), &format!("{class} k={k} d={d} seed={seed}"))?;
    Ok(agreement(&p, &arr, &s.p, &s.arrangement))
}

fn round_trip_suite() -> Outcome {
    let classes = [NcClass::PowerPar1, NcClass::PowerPar2, NcClass::PowerPar1Swapped, NcClass::PowerPar2Swapped];
    let (mut exact, mut modulo) = (0, 0);
    for i in 0..ROUND_TRIP_SAMPLES {
        let class = classes[i % 4];
        let k = 2 + (i / 4) % 2;
        let d = 2 + (i / 8) as u32 % 4;
        match round_trip(class, k, d, 1000 + i as u64)? {
            Agreement::Exact => exact += 1,
            Agreement::ModuloIdentity => modulo += 1,
            Agreement::No => return Err(format!("{class} k={k} d={d} seed={}: not equivalent to ground truth", 1000 + i)),
        }
    }
    Ok(format!(
        "{ROUND_TRIP_SAMPLES}/{ROUND_TRIP_SAMPLES} found with equivalent arrangement; p equal in {exact}, equal modulo a matrix identity in {modulo}"
    ))
}

fn two_letter_suite() -> Outcome {
    let regimes = [(NcClass::Gap, 2, 6), (NcClass::Gap, 3, 6), (NcClass::Adjacent, 3, 5), (NcClass::Balanced, 3, 4)];
    let mut n = 0;
    for (r, &(class, k, d)) in regimes.iter().enumerate() {
        for i in 0..TWO_LETTER_PER_REGIME {
            check(
                round_trip(class, k, d, 5000 + 100 * r as u64 + i as u64)? != Agreement::No,
                format!("{class} k={k}: not equivalent to ground truth"),
            )?;
            n += 1;
        }
    }
    for i in 0..TAIL_SAMPLES {
        check(round_trip(NcClass::Tail, 2 + i % 2, 4, 7000 + i as u64)? != Agreement::No, "tail: not equivalent")?;
        n += 1;
    }
    Ok(format!("{n}/{n} found with expand-equality"))
}

/// Homogeneous degree-2 family from the power classes: p = aXY + bYX has
/// nothing for recovery to start from. Resamples until the degree-2 part is
/// still in the class.
fn degree_2_family(seed: u64) -> Result<PolyFamily, String> {
    for attempt in 0..1000 {
        let s = random_family(&GenConfig::new(2, 2, NcClass::Power), seed * 1000 + attempt).map_err(|e| e.to_string())?;
        let p = s.p.homogeneous_part(2);
        if NcClass::Power.contains(&p) {
            return Ok(expand(&p, &s.arrangement).to_family(&s.arrangement));
        }
    }
    Err(format!("seed {seed}: no degree-2 power-class sample"))
}

fn perturb(fam: &mut PolyFamily, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero: Vec<usize> = (0..fam.polys.len()).filter(|&i| !fam.polys[i].is_zero()).collect();
    let i = nonzero[rng.gen_range(0..nonzero.len())];
    let terms: Vec<_> = fam.polys[i].terms().map(|(m, _)| m.clone()).collect();
    let m = terms[rng.gen_range(0..terms.len())].clone();
    fam.polys[i] = &fam.polys[i] + &CommPoly::term(m, rat::one());
}

fn oracle_agreement() -> Outcome {
    let mut brute_time = Duration::ZERO;
    let (mut found_both, mut absent_both) = (0, 0);
    for i in 0..2 * BRUTE_FAMILIES {
        let seed = 9000 + i as u64;
        let mut fam = degree_2_family(seed)?;
        if i >= BRUTE_FAMILIES {
            perturb(&mut fam, seed);
        }
        let ours = recover(&fam, &RecoverOptions::default()).is_found();
        let start = Instant::now();
        let theirs = brute_force_recover(&fam, &BruteConfig::default()).map_err(|e| e.to_string())?;
        brute_time += start.elapsed();
        check(
            ours == theirs.is_found(),
            format!("seed {seed}: recover found={ours}, brute force {:?}", theirs.kind),
        )?;
        if ours {
            found_both += 1;
        } else {
            absent_both += 1;
        }
    }
    Ok(format!(
        "{} families agree ({found_both} found, {absent_both} without representation); brute force {brute_time:.2?}",
        2 * BRUTE_FAMILIES
    ))
}

fn identity_case(seed: u64) -> Result<(NcPoly, Arrangement), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=3);
    let d = rng.gen_range(2..=4);
    let p = random_nc_poly(&mut rng, &GenConfig::new(k, d, NcClass::Any)).map_err(|e| e.to_string())?;
    Ok((p, random_arrangement(&mut rng, k)))
}

fn diagonal(arr: &Arrangement, l: Letter) -> Vec<VarId> {
    let g = arr.grid(l);
    (0..arr.k).map(|i| g[i][i]).collect()
}

fn algebraic_identities() -> Outcome {
    use ncrep::polyalg::Monomial;
    let mut counts = [0u64; 6];
    for seed in 0..IDENTITY_CASES {
        let (p, arr) = identity_case(seed)?;
        let fam = expand(&p, &arr).to_family(&arr);
        let d = p.degree().unwrap_or(0);
        let c = p.collapse();
        let mut ok = true;
        let mut ends = true;
        for i in 0..=d {
            for j in 0..=d - i {
                ok &= c.coeff(&Monomial::from_pairs([(1, i), (2, j)])) == p.phi(i, j);
                if i + j > 0 {
                    ends &= p.phi_end(i, j, Letter::X) + p.phi_end(i, j, Letter::Y) == p.phi(i, j)
                        && p.phi_begin(Letter::X, i, j) + p.phi_begin(Letter::Y, i, j) == p.phi(i, j);
                }
            }
        }
        check(ok, format!("seed {seed}: collapse/phi"))?;
        check(ends, format!("seed {seed}: begin/end sums"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ff_ee);
        let mut perm: Vec<usize> = (0..arr.k).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        check(expand(&p, &arr.conjugate(&perm)).to_family(&arr.conjugate(&perm)) == fam, format!("seed {seed}: conjugation"))?;
        check(expand(&p.transpose(), &arr.transposed()).to_family(&arr.transposed()) == fam, format!("seed {seed}: transpose"))?;
        check(expand(&p.swap(), &arr.swapped()).to_family(&arr.swapped()) == fam, format!("seed {seed}: swap"))?;
        let xd = diagonal(&arr, Letter::X);
        let mut t = fam.clone();
        for i in 0..=d {
            check(
                t == expand(&p.directional_derivative(Letter::X, i), &arr).to_family(&arr),
                format!("seed {seed}: derivative order {i}"),
            )?;
            t = t_operator(&t, &xd);
        }
        for n in counts.iter_mut() {
            *n += 1;
        }
    }
    Ok(format!(
        "{} cases each: collapse/phi, begin/end sums, conjugation, transpose, swap, derivative commutation",
        counts[0]
    ))
}

fn cost_bound_check() -> Outcome {
    let cfg = BenchConfig {
        k_min: 2,
        k_max: 5,
        degree: 3,
        trials: BENCH_TRIALS,
        seed: 0,
        brute: false,
    };
    let report = run_bench(&cfg).map_err(|e| e.to_string())?;
    for r in &report.rows {
        check(r.equality_bound == cost_bound(r.k as u64, 3), "bound mismatch")?;
        check(r.found == r.trials, format!("k={}: {}/{} found", r.k, r.found, r.trials))?;
        check(
            r.within_bound,
            format!("k={}: {} equality checks > bound {}", r.k, r.max_equality_checks, r.equality_bound),
        )?;
    }
    let table: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("k={} max {} <= {}", r.k, r.max_equality_checks, r.equality_bound))
        .collect();
    Ok(table.join(", "))
}

fn verdict_bytes(v: &Verdict) -> String {
    to_json(&verdict_to_file(v, true))
}

fn determinism() -> Outcome {
    let run = || -> Result<Vec<String>, String> {
        let mut out = Vec::new();
        for seed in 0..5 {
            let s = random_family(&GenConfig::new(3, 4, NcClass::Power), seed).map_err(|e| e.to_string())?;
            out.push(verdict_bytes(&recover(&s.family, &RecoverOptions::default())));
            let s = random_family(&GenConfig::new(3, 6, NcClass::Gap), seed).map_err(|e| e.to_string())?;
            out.push(verdict_bytes(&recover(&s.family, &RecoverOptions::default())));
            let mut fam = degree_2_family(seed)?;
            out.push(verdict_bytes(&brute_force_recover(&fam, &BruteConfig::default()).map_err(|e| e.to_string())?));
            perturb(&mut fam, seed);
            out.push(verdict_bytes(&brute_force_recover(&fam, &BruteConfig::default()).map_err(|e| e.to_string())?));
        }
        out.push(verdict_bytes(&recover(&all_ones_family(), &RecoverOptions::default())));
        out.push(verdict_bytes(&recover(&inconsistent_cubic_family(), &RecoverOptions::default())));
        Ok(out)
    };
    let a = run()?;
    let b = run()?;
    let same = a.iter().zip(&b).filter(|(x, y)| x == y).count();
    check(same == a.len() && a.len() == b.len(), format!("{same}/{} verdict files identical", a.len()))?;
    Ok(format!("{same}/{} verdict files byte-identical", a.len()))
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "golden expansion", GOLDEN_BUDGET, golden_expansion),
        criterion(2, "golden recoveries", 5 * GOLDEN_BUDGET, golden_recoveries),
        criterion(3, "inconclusive and refuted verdicts", 2 * GOLDEN_BUDGET, negative_verdicts),
        criterion(4, "commutator square identity", GOLDEN_BUDGET, commutator_square),
        criterion(5, "one-letter round trips", ROUND_TRIP_BUDGET, round_trip_suite),
        criterion(6, "two-letter round trips", TWO_LETTER_BUDGET, two_letter_suite),
        criterion(7, "brute-force agreement", BRUTE_BUDGET, oracle_agreement),
        criterion(8, "algebraic identities", IDENTITY_BUDGET, algebraic_identities),
        criterion(9, "equality-check cost bound", BENCH_BUDGET, cost_bound_check),
        criterion(10, "determinism", DETERMINISM_BUDGET, determinism),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
