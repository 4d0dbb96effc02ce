use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use super::stats::Stats;
use crate::polyalg::expand::all_word_counts;
use crate::polyalg::rat::{self, Rat};
use crate::polyalg::{homogeneous_sort, Arrangement, Monomial, NcPoly, NcWord, PolyFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcCoefError {
    #[error("arrangement has no polynomial placement")]
    MissingLambda,
    #[error("degree {degree} system is inconsistent at entry ({row},{col}), monomial {monomial}")]
    NoSolution {
        degree: u32,
        row: usize,
        col: usize,
        monomial: String,
    },
}

/// Incrementally maintained reduced row echelon form over the rationals.
/// Pivots are the lowest nonzero column of each reduced row.
struct Rref {
    cols: usize,
    rows: Vec<(usize, Vec<Rat>, Rat)>,
}

enum Insert {
    Pivot,
    Redundant,
    Inconsistent,
}

impl Rref {
    fn new(cols: usize) -> Self {
        Rref {
            cols,
            rows: Vec::new(),
        }
    }

    fn full_rank(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn insert(&mut self, sparse: &[(usize, u64)], rhs: &Rat, ops: &mut u64) -> Insert {
        let mut v = vec![rat::zero(); self.cols];
        for &(c, n) in sparse {
            v[c] += rat::int(n as i64);
        }
        let mut r = rhs.clone();
        for (p, row, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            r -= &f * b;
            *ops += 1;
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return if r.is_zero() {
                Insert::Redundant
            } else {
                Insert::Inconsistent
            };
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        r *= &inv;
        for (_, row, b) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            *b -= &f * &r;
            *ops += 1;
        }
        self.rows.push((p, v, r));
        Insert::Pivot
    }

    /// Once the system has full rank, further rows only need a check.
    fn satisfies(&self, sparse: &[(usize, u64)], rhs: &Rat, solution: &[Rat]) -> bool {
        let mut acc = rat::zero();
        for &(c, n) in sparse {
            acc += &solution[c] * rat::int(n as i64);
        }
        &acc == rhs
    }

    fn solution(&self) -> Vec<Rat> {
        let mut x = vec![rat::zero(); self.cols];
        for (p, _, b) in &self.rows {
            x[*p] = b.clone();
        }
        x
    }
}

/// Solves p(X, Y) = family for the word coefficients of p, one degree at a
/// time. Under-determined unknowns are set to zero.
pub fn nc_coef(fam: &PolyFamily, arr: &Arrangement, stats: &mut Stats) -> Result<NcPoly, NcCoefError> {
    let lambda = arr.lambda.as_ref().ok_or(NcCoefError::MissingLambda)?;
    let k = arr.k;
    stats.coefficient_list_calls += fam.polys.len() as u64;
    let mut out = NcPoly::zero();
    for (degree, part) in homogeneous_sort(fam) {
        let counts = all_word_counts(arr, degree);
        let words = NcWord::all_of_length(degree);
        let mut sys = Rref::new(words.len());
        let mut solution: Option<Vec<Rat>> = None;
        for a in 0..k {
            for b in 0..k {
                let target = &part.polys[lambda[a][b] - 1];
                let mut rows: BTreeMap<&Monomial, Vec<(usize, u64)>> = BTreeMap::new();
                for (w, cm) in counts.iter().enumerate() {
                    for (m, n) in &cm[a][b] {
                        rows.entry(m).or_default().push((w, *n));
                    }
                }
                let empty = Vec::new();
                let mut check = |m: &Monomial, sparse: &[(usize, u64)], rhs: &Rat| -> Result<(), NcCoefError> {
                    let ok = match &solution {
                        Some(x) => sys.satisfies(sparse, rhs, x),
                        None => match sys.insert(sparse, rhs, &mut stats.linear_solve_ops) {
                            Insert::Inconsistent => false,
                            _ => {
                                if sys.full_rank() {
                                    solution = Some(sys.solution());
                                }
                                true
                            }
                        },
                    };
                    if ok {
                        Ok(())
                    } else {
                        Err(NcCoefError::NoSolution {
                            degree,
                            row: a + 1,
                            col: b + 1,
                            monomial: m.to_string(),
                        })
                    }
                };
                for (m, sparse) in &rows {
                    check(m, sparse, &target.coeff(m))?;
                }
                for (m, c) in target.terms() {
                    if !rows.contains_key(m) {
                        check(m, &empty, c)?;
                    }
                }
            }
        }
        let x = solution.unwrap_or_else(|| sys.solution());
        for (w, c) in words.into_iter().zip(x) {
            out.add_term(w, c);
        }
    }
    Ok(out)
}
