use std::collections::{BTreeMap, BTreeSet};

use super::failure::Failure;
use super::stats::{Phase, Stats};
use crate::polyalg::rat::{self, Rat};
use crate::polyalg::{PolyFamily, VarId};

/// What is known before partitioning: the degree n and coefficient c of the
/// primary letter's pure power, its diagonal variables in slot order, and
/// optionally the other letter's diagonal aligned with those slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSpec {
    pub n: u32,
    pub c: Rat,
    pub p_diag: Vec<VarId>,
    pub o_diag: Option<Vec<VarId>>,
}

impl FrameSpec {
    fn known(&self) -> BTreeSet<VarId> {
        let mut s: BTreeSet<VarId> = self.p_diag.iter().copied().collect();
        if let Some(o) = &self.o_diag {
            s.extend(o.iter().copied());
        }
        s
    }
}

/// Split of the variables between the primary letter P and the other O.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub p_vars: BTreeSet<VarId>,
    pub o_vars: BTreeSet<VarId>,
    pub p_diag: Vec<VarId>,
    pub o_diag: Option<Vec<VarId>>,
}

impl Partition {
    pub fn p_off(&self) -> BTreeSet<VarId> {
        let d: BTreeSet<VarId> = self.p_diag.iter().copied().collect();
        self.p_vars.difference(&d).copied().collect()
    }
}

/// A bivariate polynomial in the formal parameters (α, β), keyed by
/// exponent pairs.
pub type AlphaBeta = BTreeMap<(u32, u32), Rat>;

fn build_partition(work_n: &PolyFamily, spec: &FrameSpec, tagged: BTreeSet<VarId>, stage: &'static str) -> Result<Partition, Failure> {
    let k = work_n.k;
    let want = k * k - k;
    if tagged.len() == 2 * want {
        return Err(Failure::collision(
            stage,
            format!("{} variables carry the off-diagonal pattern; both letters look alike", tagged.len()),
        ));
    }
    if tagged.len() != want {
        return Err(Failure::mismatch(
            stage,
            format!("{} variables carry the off-diagonal pattern, expected k²-k = {want}", tagged.len()),
        ));
    }
    let mut p_vars = tagged;
    p_vars.extend(spec.p_diag.iter().copied());
    let o_vars = (1..=work_n.num_vars() as VarId).filter(|v| !p_vars.contains(v)).collect();
    Ok(Partition {
        p_vars,
        o_vars,
        p_diag: spec.p_diag.clone(),
        o_diag: spec.o_diag.clone(),
    })
}

/// Partial evaluation of every polynomial at P-diagonal = α, `v` = β and all
/// other variables 0.
pub fn probe(work_n: &PolyFamily, p_diag: &[VarId], v: VarId) -> Vec<AlphaBeta> {
    let diag: BTreeSet<VarId> = p_diag.iter().copied().collect();
    work_n
        .polys
        .iter()
        .map(|p| {
            let mut out = AlphaBeta::new();
            for (m, c) in p.terms() {
                let (mut a, mut b) = (0, 0);
                let mut ok = true;
                for &(u, e) in m.pairs() {
                    if diag.contains(&u) {
                        a += e;
                    } else if u == v {
                        b += e;
                    } else {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    *out.entry((a, b)).or_insert_with(rat::zero) += c;
                }
            }
            out.retain(|_, c| !num_traits::Zero::is_zero(c));
            out
        })
        .collect()
}

/// DiagPar1: a P-off-diagonal variable x_ij shows up, after the α/β
/// substitution, as the single term n·c·α^{n-1}β in one polynomial with no
/// pure α part. An O-off-diagonal variable gives φ(n-1,1)·α^{n-1}β instead.
pub fn diag_par1(work_n: &PolyFamily, spec: &FrameSpec, stats: &mut Stats) -> Result<Partition, Failure> {
    const STAGE: &str = "diag_par1";
    let n = spec.n;
    let c = &spec.c;
    let diag: BTreeSet<VarId> = spec.p_diag.iter().copied().collect();
    let known = spec.known();
    let polys = work_n.polys.len();
    let mut base: Vec<Rat> = vec![rat::zero(); polys];
    let mut probes: BTreeMap<VarId, BTreeMap<usize, AlphaBeta>> = BTreeMap::new();
    for (q, p) in work_n.polys.iter().enumerate() {
        for (m, coef) in p.terms() {
            let mut a = 0;
            let mut other: Option<(VarId, u32)> = None;
            let mut ok = true;
            for &(u, e) in m.pairs() {
                if diag.contains(&u) {
                    a += e;
                } else if other.is_none() && !known.contains(&u) {
                    other = Some((u, e));
                } else {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            match other {
                None => base[q] += coef,
                Some((v, b)) => {
                    *probes.entry(v).or_default().entry(q).or_default().entry((a, b)).or_insert_with(rat::zero) += coef;
                }
            }
        }
    }
    let mut base_count = 0;
    for b in &base {
        if num_traits::Zero::is_zero(b) {
            continue;
        }
        if !stats.same(Phase::Partition, b, c) {
            return Err(Failure::mismatch(STAGE, "pure α part differs from c·αⁿ"));
        }
        base_count += 1;
    }
    if base_count != work_n.k {
        return Err(Failure::mismatch(STAGE, format!("{base_count} polynomials carry c·αⁿ, expected k")));
    }
    let nc = c * rat::int(n as i64);
    let mut tagged = BTreeSet::new();
    for (v, per) in &probes {
        let per: Vec<(&usize, &AlphaBeta)> = per.iter().filter(|(_, ab)| ab.values().any(|x| !num_traits::Zero::is_zero(x))).collect();
        if per.len() != 1 {
            continue;
        }
        let (q, ab) = per[0];
        if !num_traits::Zero::is_zero(&base[*q]) || ab.len() != 1 {
            continue;
        }
        if let Some(x) = ab.get(&(n - 1, 1)) {
            if stats.same(Phase::Partition, x, &nc) {
                tagged.insert(*v);
            }
        }
    }
    build_partition(work_n, spec, tagged, STAGE)
}

/// DiagPar2: x_ij is the only non-diagonal variable u for which both
/// c·x_ii^{n-1}·u and c·u·x_jj^{n-1} appear.
pub fn diag_par2(work_n: &PolyFamily, spec: &FrameSpec, stats: &mut Stats) -> Result<Partition, Failure> {
    const STAGE: &str = "diag_par2";
    let n = spec.n;
    let diag: BTreeSet<VarId> = spec.p_diag.iter().copied().collect();
    let known = spec.known();
    let mut partners: BTreeMap<VarId, BTreeSet<VarId>> = BTreeMap::new();
    for p in &work_n.polys {
        for (m, coef) in p.terms() {
            if let Some((d, u)) = split_power_times_var(m.pairs(), n, &diag, &known) {
                if stats.same(Phase::Partition, coef, &spec.c) {
                    partners.entry(u).or_default().insert(d);
                }
            }
        }
    }
    let tagged = partners.into_iter().filter(|(_, s)| s.len() == 2).map(|(u, _)| u).collect();
    build_partition(work_n, spec, tagged, STAGE)
}

/// Recognizes d^{n-1}·u with d diagonal and u an unknown variable.
pub(crate) fn split_power_times_var(pairs: &[(VarId, u32)], n: u32, diag: &BTreeSet<VarId>, known: &BTreeSet<VarId>) -> Option<(VarId, VarId)> {
    if n < 2 || pairs.len() != 2 {
        return None;
    }
    let [(a, ea), (b, eb)] = [pairs[0], pairs[1]];
    if diag.contains(&a) && ea == n - 1 && eb == 1 && !known.contains(&b) {
        Some((a, b))
    } else if diag.contains(&b) && eb == n - 1 && ea == 1 && !known.contains(&a) {
        Some((b, a))
    } else {
        None
    }
}
