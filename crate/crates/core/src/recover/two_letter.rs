use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde_json::{json, Value};

use super::failure::Failure;
use super::frame::{finish, run_frame, Frame, PartitionMethod};
use super::partition::{FrameSpec, Partition};
use super::stats::Stats;
use crate::polyalg::rat::Rat;
use crate::polyalg::{t_operator, Arrangement, Monomial, NcPoly, PolyFamily, VarId};

/// Cap on pair orientations tried per candidate set.
pub const MAX_ORIENTATIONS: usize = 64;

/// Single variable reduction: `order` applications of the sum of partial
/// derivatives along one letter's diagonal variables.
pub fn svr_reduce(fam: &PolyFamily, diag: &[VarId], order: u32) -> PolyFamily {
    let mut out = fam.clone();
    for _ in 0..order {
        out = t_operator(&out, diag);
    }
    out
}

/// Diagonal pairs read from two-letter monomials u^s·v^t. Each entry is
/// (var with exponent s, var with exponent t, 0-based polynomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyslexicPairs {
    pub s: u32,
    pub t: u32,
    pub pairs: Vec<(VarId, VarId, usize)>,
    /// True when s > t, so the first members all belong to one letter.
    pub partitioned: bool,
}

fn two_var(m: &Monomial) -> Option<(VarId, u32, VarId, u32)> {
    let p = m.pairs();
    (p.len() == 2).then(|| (p[0].0, p[0].1, p[1].0, p[1].1))
}

/// Candidate diagonal pair sets: groups of k structurally equivalent
/// monomials u^s·v^t (equal exponents and coefficient, s ≥ 2, t ≥ 1) that sit
/// in k distinct polynomials and use 2k distinct variables, and, for each
/// exponent pattern found in exactly k polynomials, every choice of one
/// pattern monomial per polynomial with 2k distinct variables.
pub fn two_letter_dyslexic(fam: &PolyFamily) -> Vec<DyslexicPairs> {
    let k = fam.k;
    let mut groups: BTreeMap<(u32, u32, Rat), Vec<(VarId, VarId, usize)>> = BTreeMap::new();
    let mut per_poly: BTreeMap<(u32, u32), BTreeMap<usize, BTreeSet<(VarId, VarId)>>> = BTreeMap::new();
    for (q, p) in fam.polys.iter().enumerate() {
        for (m, c) in p.terms() {
            let Some((a, ea, b, eb)) = two_var(m) else { continue };
            let (hi, s, lo, t) = if ea >= eb { (a, ea, b, eb) } else { (b, eb, a, ea) };
            if s < 2 || t < 1 {
                continue;
            }
            groups.entry((s, t, c.clone())).or_default().push((hi, lo, q));
            per_poly.entry((s, t)).or_default().entry(q).or_default().insert((a.min(b), a.max(b)));
        }
    }
    let valid = |pairs: &[(VarId, VarId, usize)]| {
        let polys: BTreeSet<usize> = pairs.iter().map(|p| p.2).collect();
        let vars: BTreeSet<VarId> = pairs.iter().flat_map(|p| [p.0, p.1]).collect();
        pairs.len() == k && polys.len() == k && vars.len() == 2 * k
    };
    let mut out: Vec<DyslexicPairs> = Vec::new();
    let mut seen: BTreeSet<BTreeSet<(VarId, VarId)>> = BTreeSet::new();
    let mut push = |out: &mut Vec<DyslexicPairs>, s: u32, t: u32, mut pairs: Vec<(VarId, VarId, usize)>| {
        let key: BTreeSet<(VarId, VarId)> = pairs.iter().map(|p| (p.0.min(p.1), p.0.max(p.1))).collect();
        if seen.insert(key) {
            pairs.sort();
            out.push(DyslexicPairs {
                s,
                t,
                pairs,
                partitioned: s > t,
            });
        }
    };
    for ((s, t, _), pairs) in &groups {
        if valid(pairs) {
            push(&mut out, *s, *t, pairs.clone());
        }
    }
    for (&(s, t), polys) in &per_poly {
        if polys.len() != k {
            continue;
        }
        // One pair per polynomial with all 2k variables distinct; a
        // polynomial may hold several candidates when other words produce
        // the same exponent pattern.
        let choices: Vec<(usize, Vec<(VarId, VarId)>)> = polys.iter().map(|(&q, set)| (q, set.iter().copied().collect())).collect();
        let mut partial: Vec<Vec<(VarId, VarId, usize)>> = vec![Vec::new()];
        for (q, cands) in &choices {
            let mut next = Vec::new();
            for prefix in &partial {
                for &(a, b) in cands {
                    if next.len() >= MAX_ORIENTATIONS {
                        break;
                    }
                    if prefix.iter().any(|p| p.0 == a || p.0 == b || p.1 == a || p.1 == b) {
                        continue;
                    }
                    let mut v = prefix.clone();
                    v.push((a, b, *q));
                    next.push(v);
                }
            }
            partial = next;
        }
        for pairs in partial {
            if valid(&pairs) {
                push(&mut out, s, t, pairs);
            }
        }
    }
    out
}

/// Orders each pair so that the same letter comes first in every pair. For
/// s > t the exponent pattern decides; a pair whose two readings look alike
/// is branched on. The first pair's order is fixed, since swapping every
/// pair only exchanges the letters.
pub fn orient_pairs(fam: &PolyFamily, dp: &DyslexicPairs) -> Vec<Vec<(VarId, VarId, usize)>> {
    let sig = |a: VarId, b: VarId, q: usize| -> (Rat, Rat) {
        let p = &fam.polys[q];
        (
            p.coeff(&Monomial::from_pairs([(a, dp.s), (b, dp.t)])),
            p.coeff(&Monomial::from_pairs([(b, dp.s), (a, dp.t)])),
        )
    };
    let (a0, b0, q0) = dp.pairs[0];
    let reference = sig(a0, b0, q0);
    let mut options: Vec<Vec<(VarId, VarId, usize)>> = vec![vec![(a0, b0, q0)]];
    for &(a, b, q) in &dp.pairs[1..] {
        let mut opts = Vec::new();
        if sig(a, b, q) == reference {
            opts.push((a, b, q));
        }
        if sig(b, a, q) == reference {
            opts.push((b, a, q));
        }
        if opts.is_empty() {
            return Vec::new();
        }
        options.push(opts);
    }
    let mut out = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::new();
        for prefix in &out {
            for &o in &opts {
                if next.len() >= MAX_ORIENTATIONS {
                    break;
                }
                let mut v: Vec<(VarId, VarId, usize)> = prefix.clone();
                v.push(o);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Degrees n at which every `diag` variable d has d^n in the family with one
/// common coefficient, each in its own polynomial.
fn power_degrees(work: &PolyFamily, diag: &[VarId]) -> Vec<(u32, Rat)> {
    let mut found: BTreeMap<u32, Vec<(usize, Rat)>> = BTreeMap::new();
    let set: BTreeSet<VarId> = diag.iter().copied().collect();
    for (q, p) in work.polys.iter().enumerate() {
        for (m, c) in p.terms() {
            if m.num_vars() == 1 && set.contains(&m.pairs()[0].0) {
                found.entry(m.degree()).or_default().push((q, c.clone()));
            }
        }
    }
    found
        .into_iter()
        .filter_map(|(n, hits)| {
            let polys: BTreeSet<usize> = hits.iter().map(|h| h.0).collect();
            let c = hits[0].1.clone();
            (hits.len() == diag.len() && polys.len() == diag.len() && hits.iter().all(|h| h.1 == c)).then_some((n, c))
        })
        .collect()
}

/// Records one attempt and returns a success if there is one.
pub type Attempt = (Value, Result<(NcPoly, Arrangement), Failure>);

/// Runs the reduced-family frames for every candidate pair set and
/// orientation, calling `visit` on each attempt until it returns true.
pub fn two_letter_search(
    fam: &PolyFamily,
    methods: &[PartitionMethod],
    transpose_tiebreak: bool,
    stats: &mut Stats,
    visit: &mut dyn FnMut(Attempt, &mut Stats) -> bool,
) {
    let d = fam.degree().unwrap_or(0);
    for dp in two_letter_dyslexic(fam) {
        for oriented in orient_pairs(fam, &dp) {
            let a: Vec<(VarId, VarId)> = oriented.iter().map(|p| (p.0, p.1)).collect();
            let b: Vec<(VarId, VarId)> = oriented.iter().map(|p| (p.1, p.0)).collect();
            for (lm_name, lm) in [("first", &a), ("second", &b)] {
                // lm pairs are (L var, M var): differentiate along L, read M.
                let mut sorted = lm.clone();
                sorted.sort_by_key(|p| p.1);
                let l_diag: Vec<VarId> = sorted.iter().map(|p| p.0).collect();
                let m_diag: Vec<VarId> = sorted.iter().map(|p| p.1).collect();
                let mut work = fam.clone();
                for order in 1..d {
                    work = t_operator(&work, &l_diag);
                    if work.is_zero() {
                        break;
                    }
                    for (n, c) in power_degrees(&work, &m_diag) {
                        let spec = FrameSpec {
                            n,
                            c,
                            p_diag: m_diag.clone(),
                            o_diag: Some(l_diag.clone()),
                        };
                        let label = |method: &str| {
                            json!({
                                "frame": "two_letter",
                                "pattern": [dp.s, dp.t],
                                "differentiated": lm_name,
                                "order": order,
                                "degree": n,
                                "method": method,
                            })
                        };
                        if n == 1 {
                            let res = linear_frame(fam, &work, &spec, order, transpose_tiebreak, stats);
                            if visit((label("linear"), res), stats) {
                                return;
                            }
                            continue;
                        }
                        for &method in methods {
                            let frame = Frame {
                                original: fam,
                                work: &work,
                                spec: spec.clone(),
                                method,
                                transpose_tiebreak,
                            };
                            let res = run_frame(&frame, stats);
                            if visit((label(method.name()), res), stats) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Frame for a reduced family of degree 1, where every entry is
/// c·m_ij plus possibly a multiple of l_ij. The M variable of each
/// polynomial fixes the placement; slot pairs of the M variables come from
/// the monomials l_a^e·l_b^f·u (e + f = order) of the input family.
fn linear_frame(fam: &PolyFamily, work: &PolyFamily, spec: &FrameSpec, order: u32, transpose_tiebreak: bool, stats: &mut Stats) -> Result<(NcPoly, Arrangement), Failure> {
    const STAGE: &str = "linear_partition";
    let k = fam.k;
    let l_diag = spec.o_diag.clone().expect("two-letter frames know both diagonals");
    let w1 = work.homogeneous_part(1);
    let mut m_of_poly = vec![0; k * k];
    for (q, p) in w1.polys.iter().enumerate() {
        let hits: Vec<VarId> = p
            .terms()
            .filter(|(_, c)| stats.same(super::stats::Phase::Partition, c, &spec.c))
            .map(|(m, _)| m.pairs()[0].0)
            .collect();
        match hits.len() {
            1 => m_of_poly[q] = hits[0],
            2 => return Err(Failure::collision(STAGE, "both letters carry the same linear coefficient")),
            n => return Err(Failure::mismatch(STAGE, format!("polynomial {} has {n} variables with coefficient c", q + 1))),
        }
    }
    let m_vars: BTreeSet<VarId> = m_of_poly.iter().copied().collect();
    if m_vars.len() != k * k || spec.p_diag.iter().any(|v| !m_vars.contains(v)) || l_diag.iter().any(|v| m_vars.contains(v)) {
        return Err(Failure::mismatch(STAGE, "linear terms do not split the variables"));
    }
    let l_slot: BTreeMap<VarId, usize> = l_diag.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // profile[u][(a, b, e)]: coefficient of l_a^e·l_b^(order-e)·u, a < b.
    let mut profile: BTreeMap<VarId, BTreeMap<(usize, usize, u32), Rat>> = BTreeMap::new();
    let mut partners: BTreeMap<VarId, BTreeSet<usize>> = BTreeMap::new();
    for p in &fam.polys {
        for (m, c) in p.terms() {
            if m.degree() != order + 1 {
                continue;
            }
            let mut u = None;
            let mut ls = Vec::new();
            for &(v, e) in m.pairs() {
                if let Some(&s) = l_slot.get(&v) {
                    ls.push((s, e));
                } else if e == 1 && u.is_none() && m_vars.contains(&v) && !spec.p_diag.contains(&v) {
                    u = Some(v);
                } else {
                    u = None;
                    ls.clear();
                    break;
                }
            }
            let Some(u) = u else { continue };
            if ls.is_empty() || ls.len() > 2 {
                continue;
            }
            partners.entry(u).or_default().extend(ls.iter().map(|x| x.0));
            if ls.len() == 2 {
                profile.entry(u).or_default().insert((ls[0].0, ls[1].0, ls[0].1), c.clone());
            } else {
                profile.entry(u).or_default().insert((ls[0].0, usize::MAX, ls[0].1), c.clone());
            }
        }
    }
    let mut pairs: BTreeMap<(usize, usize), Vec<VarId>> = BTreeMap::new();
    for &u in &m_vars {
        if spec.p_diag.contains(&u) {
            continue;
        }
        let Some(ps) = partners.get(&u) else {
            return Err(Failure::mismatch(STAGE, format!("x{u} has no diagonal partners")));
        };
        if ps.len() != 2 {
            return Err(Failure::mismatch(STAGE, format!("x{u} has {} diagonal partners, expected 2", ps.len())));
        }
        let v: Vec<usize> = ps.iter().copied().collect();
        pairs.entry((v[0], v[1])).or_default().push(u);
    }
    if pairs.len() != k * (k - 1) / 2 || pairs.values().any(|v| v.len() != 2) {
        return Err(Failure::mismatch(STAGE, "diagonal partners do not pair the variables"));
    }
    // Profile of u read as sitting at (row, col), in slot-free form.
    let read = |u: VarId, row: usize, col: usize| -> Vec<(u32, u32, Rat)> {
        let mut out: Vec<(u32, u32, Rat)> = Vec::new();
        if let Some(pr) = profile.get(&u) {
            for (&(a, b, e), c) in pr {
                if c.is_zero() {
                    continue;
                }
                let (er, ec) = if b == usize::MAX {
                    if a == row {
                        (e, 0)
                    } else if a == col {
                        (0, e)
                    } else {
                        continue;
                    }
                } else if a == row {
                    (e, order - e)
                } else {
                    (order - e, e)
                };
                out.push((er, ec, c.clone()));
            }
        }
        out.sort();
        out
    };
    let keys: Vec<(usize, usize)> = pairs.keys().copied().collect();
    let (r0, c0) = keys[0];
    let first = &pairs[&keys[0]];
    let (lo, hi) = (first[0].min(first[1]), first[0].max(first[1]));
    let u0 = if transpose_tiebreak { hi } else { lo };
    let reference = read(u0, r0, c0);
    let mut options: Vec<Vec<[(usize, usize, VarId); 2]>> = Vec::new();
    for &(a, b) in &keys {
        let pr = &pairs[&(a, b)];
        let mut opts = Vec::new();
        for (u, v) in [(pr[0], pr[1]), (pr[1], pr[0])] {
            if (a, b) == (r0, c0) && u != u0 {
                continue;
            }
            if read(u, a, b) == reference && read(v, b, a) == reference {
                opts.push([(a, b, u), (b, a, v)]);
            }
        }
        if opts.is_empty() {
            return Err(Failure::mismatch("linear_position", format!("no orientation of slots ({},{}) fits", a + 1, b + 1)));
        }
        options.push(opts);
    }
    let mut combos: Vec<Vec<[(usize, usize, VarId); 2]>> = vec![Vec::new()];
    for opts in &options {
        let mut next = Vec::new();
        for prefix in &combos {
            for o in opts {
                if next.len() >= MAX_ORIENTATIONS {
                    break;
                }
                let mut v = prefix.clone();
                v.push(*o);
                next.push(v);
            }
        }
        combos = next;
    }
    let p_diag = spec.p_diag.clone();
    let part = Partition {
        p_vars: m_vars.clone(),
        o_vars: (1..=fam.num_vars() as VarId).filter(|v| !m_vars.contains(v)).collect(),
        p_diag: p_diag.clone(),
        o_diag: Some(l_diag.clone()),
    };
    let poly_of: BTreeMap<VarId, usize> = m_of_poly.iter().enumerate().map(|(q, &v)| (v, q)).collect();
    let mut first_failure = None;
    for combo in combos {
        let mut grid = vec![vec![0; k]; k];
        for (i, &v) in p_diag.iter().enumerate() {
            grid[i][i] = v;
        }
        for pair in combo {
            for (a, b, u) in pair {
                grid[a][b] = u;
            }
        }
        let placement: Vec<Vec<usize>> = grid.iter().map(|r| r.iter().map(|v| poly_of[v]).collect()).collect();
        match finish(fam, &grid, &placement, &part, stats) {
            Ok(r) => return Ok(r),
            Err(f) => {
                first_failure.get_or_insert(f);
            }
        }
    }
    Err(first_failure.unwrap_or_else(|| Failure::mismatch("linear_position", "no orientation")))
}
