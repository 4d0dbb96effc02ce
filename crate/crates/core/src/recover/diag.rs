use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::stats::{Phase, Stats};
use crate::polyalg::{PolyFamily, Rat, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagCase {
    NoOneLetter,
    SingleCoeff,
    TwoCoeff,
    EqualCoeff2k,
}

/// One diagonal slot: the variable(s) of its one-letter monomials and the
/// 0-based index of the polynomial holding them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagPair {
    pub var_a: VarId,
    pub var_b: Option<VarId>,
    pub poly: usize,
}

/// One-letter monomial pattern of a family at one degree. For `TwoCoeff`
/// `coeff_a` is the smaller coefficient and `var_a` carries it; for
/// `EqualCoeff2k` `var_a` is the lower-numbered variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagReport {
    pub case: DiagCase,
    pub degree: u32,
    pub coeff_a: Rat,
    pub coeff_b: Option<Rat>,
    pub pairs: Vec<DiagPair>,
}

impl DiagReport {
    pub fn vars_a(&self) -> Vec<VarId> {
        self.pairs.iter().map(|p| p.var_a).collect()
    }

    pub fn vars_b(&self) -> Option<Vec<VarId>> {
        self.pairs.iter().map(|p| p.var_b).collect()
    }
}

/// A one-letter pattern that no representation can produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagViolation {
    pub degree: u32,
    pub reason: String,
}

impl DiagViolation {
    pub fn to_json(&self) -> Value {
        json!({"check": "one_letter_count", "degree": self.degree, "reason": self.reason})
    }
}

/// Degrees ≥ 2 at which some polynomial has a monomial x_v^n.
pub fn one_letter_degrees(fam: &PolyFamily) -> Vec<u32> {
    let mut out = BTreeSet::new();
    for p in &fam.polys {
        for (m, _) in p.terms() {
            if m.num_vars() == 1 && m.degree() >= 2 {
                out.insert(m.degree());
            }
        }
    }
    out.into_iter().collect()
}

/// Reads the degree-n one-letter monomials. Only the diagonal polynomials can
/// hold them, one per letter, so the count is 0, k or 2k.
pub fn diag_a_at(fam: &PolyFamily, n: u32, stats: &mut Stats) -> Result<Option<DiagReport>, DiagViolation> {
    let k = fam.k;
    let fail = |reason: String| DiagViolation { degree: n, reason };
    let mut per_poly: BTreeMap<usize, Vec<(VarId, Rat)>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (i, p) in fam.polys.iter().enumerate() {
        for (m, c) in p.terms() {
            if m.num_vars() == 1 && m.degree() == n {
                let v = m.pairs()[0].0;
                if !seen.insert(v) {
                    return Err(fail(format!("x{v}^{n} appears in more than one polynomial")));
                }
                per_poly.entry(i).or_default().push((v, c.clone()));
            }
        }
    }
    if per_poly.is_empty() {
        return Ok(None);
    }
    let count: usize = per_poly.values().map(Vec::len).sum();
    if per_poly.len() != k || !(count == k || count == 2 * k) || per_poly.values().any(|v| v.len() * k != count) {
        return Err(fail(format!(
            "{count} one-letter monomials in {} polynomials; expected k = {k} or 2k = {} spread over exactly k polynomials",
            per_poly.len(),
            2 * k
        )));
    }
    let first = per_poly.values().next().unwrap()[0].1.clone();
    if count == k {
        for terms in per_poly.values() {
            if !stats.same(Phase::DiagA, &terms[0].1, &first) {
                return Err(fail("one-letter coefficients differ between polynomials".into()));
            }
        }
        let mut pairs: Vec<DiagPair> = per_poly
            .iter()
            .map(|(&poly, t)| DiagPair {
                var_a: t[0].0,
                var_b: None,
                poly,
            })
            .collect();
        pairs.sort_by_key(|p| p.var_a);
        return Ok(Some(DiagReport {
            case: DiagCase::SingleCoeff,
            degree: n,
            coeff_a: first,
            coeff_b: None,
            pairs,
        }));
    }
    let mut values: Vec<Rat> = Vec::new();
    for terms in per_poly.values() {
        for (_, c) in terms {
            if !values.iter().any(|v| stats.same(Phase::DiagA, v, c)) {
                values.push(c.clone());
            }
        }
    }
    values.sort();
    match values.len() {
        1 => {
            let mut pairs: Vec<DiagPair> = per_poly
                .iter()
                .map(|(&poly, t)| DiagPair {
                    var_a: t[0].0.min(t[1].0),
                    var_b: Some(t[0].0.max(t[1].0)),
                    poly,
                })
                .collect();
            pairs.sort_by_key(|p| p.var_a);
            Ok(Some(DiagReport {
                case: DiagCase::EqualCoeff2k,
                degree: n,
                coeff_a: values[0].clone(),
                coeff_b: Some(values[0].clone()),
                pairs,
            }))
        }
        2 => {
            let mut pairs = Vec::with_capacity(k);
            for (&poly, t) in &per_poly {
                let (lo, hi) = if t[0].1 < t[1].1 { (&t[0], &t[1]) } else { (&t[1], &t[0]) };
                stats.add(Phase::DiagA, 2);
                if lo.1 != values[0] || hi.1 != values[1] {
                    return Err(fail(format!(
                        "polynomial {} does not carry both one-letter coefficients",
                        poly + 1
                    )));
                }
                pairs.push(DiagPair {
                    var_a: lo.0,
                    var_b: Some(hi.0),
                    poly,
                });
            }
            pairs.sort_by_key(|p| p.var_a);
            Ok(Some(DiagReport {
                case: DiagCase::TwoCoeff,
                degree: n,
                coeff_a: values[0].clone(),
                coeff_b: Some(values[1].clone()),
                pairs,
            }))
        }
        m => Err(fail(format!("{m} distinct one-letter coefficients; at most 2 are possible"))),
    }
}

/// DiagA on the lowest degree with one-letter monomials.
pub fn diag_a(fam: &PolyFamily, stats: &mut Stats) -> Result<DiagReport, DiagViolation> {
    for n in one_letter_degrees(fam) {
        if let Some(r) = diag_a_at(fam, n, stats)? {
            return Ok(r);
        }
    }
    Ok(DiagReport {
        case: DiagCase::NoOneLetter,
        degree: 0,
        coeff_a: crate::polyalg::rat::zero(),
        coeff_b: None,
        pairs: Vec::new(),
    })
}
