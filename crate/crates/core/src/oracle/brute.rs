//! Exhaustive search over arrangements, used as ground truth at small k.

use std::ops::ControlFlow;

use num_traits::Zero;
use serde_json::json;
use thiserror::Error;

use crate::polyalg::{Arrangement, Grid, Monomial, PolyFamily, VarId};
use crate::recover::position::has_trail;
use crate::recover::stats::Stats;
use crate::recover::verdict::{witness, Verdict, VerdictKind};
use crate::recover::{nc_coef, verify};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteConfig {
    pub max_k: usize,
    pub max_degree: u32,
    pub symmetry_pruning: bool,
    /// Node limit. Setting one also lifts the k and degree limits.
    pub budget: Option<u64>,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig {
            max_k: 2,
            max_degree: 3,
            symmetry_pruning: true,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("k={k}, degree {degree} is beyond the default limits (k ≤ {max_k}, degree ≤ {max_degree}); set a node budget to search anyway")]
    OutOfScope { k: usize, degree: u32, max_k: usize, max_degree: u32 },
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
}

struct Search<'a> {
    fam: &'a PolyFamily,
    k: usize,
    /// Per polynomial: its monomials as variable lists with multiplicity.
    monos: Vec<Vec<Vec<VarId>>>,
    has_constant: Vec<bool>,
    budget: Option<u64>,
    nodes: u64,
    arrangements: u64,
    stats: Stats,
}

fn expand_vars(m: &Monomial) -> Vec<VarId> {
    m.pairs().iter().flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize)).collect()
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), BruteError> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(BruteError::BudgetExceeded { budget: b }),
            _ => Ok(()),
        }
    }

    /// Entries (row-major index) each polynomial can occupy: every monomial
    /// must be a walk from the row index to the column index.
    fn compatible(&self, slot_of: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
        let k = self.k;
        let mut out = Vec::with_capacity(self.monos.len());
        for (q, monos) in self.monos.iter().enumerate() {
            let mut ok: Vec<usize> = (0..k * k).filter(|e| !self.has_constant[q] || e / k == e % k).collect();
            for m in monos {
                let edges: Vec<(usize, usize)> = m.iter().map(|&v| slot_of[v as usize]).collect();
                ok.retain(|&e| has_trail(&edges, e / k, e % k, k));
                if ok.is_empty() {
                    return None;
                }
            }
            out.push(ok);
        }
        Some(out)
    }

    fn try_grid(&mut self, x: &Grid, y: &Grid) -> Result<ControlFlow<Verdict>, BruteError> {
        self.arrangements += 1;
        self.tick()?;
        let k = self.k;
        let mut slot_of = vec![(0usize, 0usize); 2 * k * k + 1];
        for g in [x, y] {
            for (i, row) in g.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    slot_of[v as usize] = (i, j);
                }
            }
        }
        let Some(compat) = self.compatible(&slot_of) else {
            return Ok(ControlFlow::Continue(()));
        };
        let mut entry_of = vec![usize::MAX; k * k];
        let mut used = vec![false; k * k];
        self.lambdas(x, y, &compat, 0, &mut entry_of, &mut used)
    }

    fn lambdas(
        &mut self,
        x: &Grid,
        y: &Grid,
        compat: &[Vec<usize>],
        q: usize,
        entry_of: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Result<ControlFlow<Verdict>, BruteError> {
        let k = self.k;
        if q == compat.len() {
            self.tick()?;
            let mut lambda = vec![vec![0usize; k]; k];
            for (poly, &e) in entry_of.iter().enumerate() {
                lambda[e / k][e % k] = poly + 1;
            }
            let arr = Arrangement::new(x.clone(), y.clone(), Some(lambda)).expect("enumerated arrangement is valid");
            if let Ok(p) = nc_coef(self.fam, &arr, &mut self.stats) {
                if verify(self.fam, &arr, &p).is_ok() {
                    let w = witness([("arrangements_checked", json!(self.arrangements)), ("nodes", json!(self.nodes))]);
                    return Ok(ControlFlow::Break(Verdict::found(p, arr, w, self.stats.clone())));
                }
            }
            return Ok(ControlFlow::Continue(()));
        }
        for &e in &compat[q] {
            if used[e] {
                continue;
            }
            used[e] = true;
            entry_of[q] = e;
            let r = self.lambdas(x, y, compat, q + 1, entry_of, used)?;
            used[e] = false;
            if r.is_break() {
                return Ok(r);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Fills slots 0..2k² (X row-major, then Y) with the unused variables in
    /// increasing order.
    fn fill(&mut self, slots: &mut Vec<VarId>, used: &mut Vec<bool>, first_slots: &[usize]) -> Result<ControlFlow<Verdict>, BruteError> {
        let k = self.k;
        let n = 2 * k * k;
        if slots.len() == n {
            let x: Grid = slots[..k * k].chunks(k).map(|r| r.to_vec()).collect();
            let y: Grid = slots[k * k..].chunks(k).map(|r| r.to_vec()).collect();
            return self.try_grid(&x, &y);
        }
        let s = slots.len();
        for v in 1..=n as VarId {
            if used[v as usize] {
                continue;
            }
            // Variable 1 only goes to the representative slots.
            if v == 1 && !first_slots.contains(&s) {
                continue;
            }
            if v != 1 && !used[1] && s == *first_slots.last().unwrap() {
                continue;
            }
            used[v as usize] = true;
            slots.push(v);
            let r = self.fill(slots, used, first_slots)?;
            slots.pop();
            used[v as usize] = false;
            if r.is_break() {
                return Ok(r);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Tries every arrangement (and every compatible placement of the
/// polynomials). With symmetry pruning, variable 1 is only placed at X(1,1)
/// or X(1,2): conjugation, transposition and exchanging the letters map any
/// slot to one of these, and each maps representations to representations.
pub fn brute_force_recover(fam: &PolyFamily, cfg: &BruteConfig) -> Result<Verdict, BruteError> {
    let k = fam.k;
    let degree = fam.degree().unwrap_or(0);
    if cfg.budget.is_none() && (k > cfg.max_k || degree > cfg.max_degree) {
        return Err(BruteError::OutOfScope {
            k,
            degree,
            max_k: cfg.max_k,
            max_degree: cfg.max_degree,
        });
    }
    let mut search = Search {
        fam,
        k,
        monos: fam
            .polys
            .iter()
            .map(|p| p.terms().filter(|(m, _)| !m.is_one()).map(|(m, _)| expand_vars(m)).collect())
            .collect(),
        has_constant: fam.polys.iter().map(|p| !p.constant_term().is_zero()).collect(),
        budget: cfg.budget,
        nodes: 0,
        arrangements: 0,
        stats: Stats::default(),
    };
    let n = 2 * k * k;
    let first_slots: Vec<usize> = if cfg.symmetry_pruning && k > 1 { vec![0, 1] } else { (0..n).collect() };
    let mut slots = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    match search.fill(&mut slots, &mut used, &first_slots)? {
        ControlFlow::Break(v) => Ok(v),
        ControlFlow::Continue(()) => {
            let w = witness([
                ("check", json!("exhaustive")),
                ("arrangements_checked", json!(search.arrangements)),
                ("nodes", json!(search.nodes)),
                ("symmetry_pruning", json!(cfg.symmetry_pruning)),
                ("scope", json!("no representation exists for any arrangement")),
            ]);
            Ok(Verdict::without_representation(VerdictKind::Refuted, w, search.stats))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{expand, parse_nc, parse_poly};

    fn intro() -> PolyFamily {
        let arr = Arrangement::standard(2);
        expand(&parse_nc("X^2 + XY").unwrap(), &arr).to_family(&arr)
    }

    #[test]
    fn finds_intro_family() {
        let v = brute_force_recover(&intro(), &BruteConfig::default()).unwrap();
        assert!(v.is_found());
        let (p, arr) = v.representation.unwrap();
        verify(&intro(), &arr, &p).unwrap();
    }

    #[test]
    fn refutes_perturbed_family() {
        let mut fam = intro();
        fam.polys[0] = &fam.polys[0] + &parse_poly("x1^2").unwrap();
        let v = brute_force_recover(&fam, &BruteConfig::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::Refuted);
    }

    #[test]
    fn guards_k3() {
        let arr = Arrangement::standard(3);
        let fam = expand(&parse_nc("XY").unwrap(), &arr).to_family(&arr);
        assert!(matches!(brute_force_recover(&fam, &BruteConfig::default()), Err(BruteError::OutOfScope { .. })));
        let cfg = BruteConfig { budget: Some(1), ..Default::default() };
        assert!(matches!(brute_force_recover(&fam, &cfg), Err(BruteError::BudgetExceeded { budget: 1 })));
    }
}
