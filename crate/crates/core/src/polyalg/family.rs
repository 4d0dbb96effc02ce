use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use super::arrangement::Arrangement;
use super::commpoly::CommPoly;
use super::monomial::VarId;
use super::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("k must be at least 2, got {0}")]
    SmallK(usize),
    #[error("expected {expected} polynomials, got {got}")]
    Count { expected: usize, got: usize },
    #[error("polynomial {poly} uses x{var}, beyond the bound 2k^2 = {bound}")]
    VarOutOfRange { poly: usize, var: VarId, bound: usize },
    #[error("variable index 0 in polynomial {0}")]
    ZeroVar(usize),
}

/// The unordered input family: k² commutative polynomials in x_1..x_{2k²}.
/// Polynomials are stored 0-based; user-facing indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    pub k: usize,
    pub polys: Vec<CommPoly>,
}

impl PolyFamily {
    pub fn new(k: usize, polys: Vec<CommPoly>) -> Result<Self, FamilyError> {
        if k < 2 {
            return Err(FamilyError::SmallK(k));
        }
        if polys.len() != k * k {
            return Err(FamilyError::Count {
                expected: k * k,
                got: polys.len(),
            });
        }
        let bound = 2 * k * k;
        for (i, p) in polys.iter().enumerate() {
            for (m, _) in p.terms() {
                for v in m.vars() {
                    if v == 0 {
                        return Err(FamilyError::ZeroVar(i + 1));
                    }
                    if v as usize > bound {
                        return Err(FamilyError::VarOutOfRange {
                            poly: i + 1,
                            var: v,
                            bound,
                        });
                    }
                }
            }
        }
        Ok(PolyFamily { k, polys })
    }

    pub fn num_vars(&self) -> usize {
        2 * self.k * self.k
    }

    pub fn degree(&self) -> Option<u32> {
        self.polys.iter().filter_map(CommPoly::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(CommPoly::is_zero)
    }

    pub fn homogeneous_part(&self, d: u32) -> PolyFamily {
        PolyFamily {
            k: self.k,
            polys: self.polys.iter().map(|p| p.homogeneous_part(d)).collect(),
        }
    }

    pub fn map<F: Fn(&CommPoly) -> CommPoly>(&self, f: F) -> PolyFamily {
        PolyFamily {
            k: self.k,
            polys: self.polys.iter().map(f).collect(),
        }
    }

    /// Variables that occur in some polynomial.
    pub fn support(&self) -> BTreeSet<VarId> {
        self.polys
            .iter()
            .flat_map(|p| p.terms().flat_map(|(m, _)| m.vars().collect::<Vec<_>>()))
            .collect()
    }
}

/// k×k matrix of commutative polynomials, e.g. the entries of p(X, Y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub k: usize,
    pub entries: Vec<Vec<CommPoly>>,
}

impl PolyMatrix {
    pub fn zero(k: usize) -> Self {
        PolyMatrix {
            k,
            entries: vec![vec![CommPoly::zero(); k]; k],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &CommPoly {
        &self.entries[i][j]
    }

    pub fn add_assign_scaled(&mut self, other: &PolyMatrix, c: &Rat) {
        for i in 0..self.k {
            for j in 0..self.k {
                self.entries[i][j] = &self.entries[i][j] + &other.entries[i][j].scale(c);
            }
        }
    }

    pub fn transposed(&self) -> PolyMatrix {
        PolyMatrix {
            k: self.k,
            entries: super::arrangement::transpose_grid(&self.entries),
        }
    }

    /// Lays the matrix out as a family using `arr.lambda` (row-major order
    /// if absent).
    pub fn to_family(&self, arr: &Arrangement) -> PolyFamily {
        let k = self.k;
        let mut polys = vec![CommPoly::zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                let idx = match &arr.lambda {
                    Some(l) => l[i][j] - 1,
                    None => i * k + j,
                };
                polys[idx] = self.entries[i][j].clone();
            }
        }
        PolyFamily { k, polys }
    }

    /// Reads the family into matrix form through lambda.
    pub fn from_family(fam: &PolyFamily, lambda: &[Vec<usize>]) -> PolyMatrix {
        let k = fam.k;
        PolyMatrix {
            k,
            entries: (0..k)
                .map(|i| (0..k).map(|j| fam.polys[lambda[i][j] - 1].clone()).collect())
                .collect(),
        }
    }
}

/// Splits a family into its homogeneous parts; degrees whose part is zero in
/// every polynomial are omitted.
pub fn homogeneous_sort(fam: &PolyFamily) -> BTreeMap<u32, PolyFamily> {
    let mut degrees = BTreeSet::new();
    for p in &fam.polys {
        for (m, _) in p.terms() {
            degrees.insert(m.degree());
        }
    }
    degrees
        .into_iter()
        .map(|d| (d, fam.homogeneous_part(d)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantError {
    #[error("constant terms appear in {count} polynomials with values {values:?}; a representation puts one common constant on exactly k = {k} polynomials")]
    Inconsistent {
        k: usize,
        count: usize,
        values: Vec<String>,
    },
}

/// Removes the constant contributed by a scalar term c·I, which lands on
/// exactly the k diagonal polynomials.
pub fn strip_constants(fam: &PolyFamily) -> Result<(PolyFamily, Rat, Vec<usize>), ConstantError> {
    let consts: Vec<(usize, Rat)> = fam
        .polys
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p.constant_term()))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if consts.is_empty() {
        return Ok((fam.clone(), Rat::zero(), Vec::new()));
    }
    let first = consts[0].1.clone();
    if consts.len() != fam.k || consts.iter().any(|(_, c)| *c != first) {
        return Err(ConstantError::Inconsistent {
            k: fam.k,
            count: consts.len(),
            values: consts.iter().map(|(_, c)| super::rat::format(c)).collect(),
        });
    }
    let carriers = consts.iter().map(|(i, _)| *i).collect();
    Ok((fam.map(CommPoly::without_constant), first, carriers))
}

/// Sum of the partial derivatives of each polynomial with respect to `diag`.
pub fn t_operator(fam: &PolyFamily, diag: &[VarId]) -> PolyFamily {
    fam.map(|p| {
        let mut acc = CommPoly::zero();
        for &v in diag {
            acc = &acc + &p.partial(v);
        }
        acc
    })
}
