use std::collections::BTreeSet;

use thiserror::Error;

use super::monomial::VarId;

pub type Grid = Vec<Vec<VarId>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("k must be at least 2, got {0}")]
    SmallK(usize),
    #[error("{0} grid is not {1}x{1}")]
    Shape(&'static str, usize),
    #[error("variables of X and Y must be exactly 1..={0} without repetition")]
    NotAPermutation(usize),
    #[error("lambda must be a bijection onto 1..={0}")]
    BadLambda(usize),
}

/// Placement of the 2k² variables in X and Y, plus the optional placement
/// of the family's polynomials (1-based indices) in the k×k result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub k: usize,
    pub x: Grid,
    pub y: Grid,
    pub lambda: Option<Vec<Vec<usize>>>,
}

impl Arrangement {
    pub fn new(
        x: Grid,
        y: Grid,
        lambda: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, ArrangementError> {
        let arr = Arrangement {
            k: x.len(),
            x,
            y,
            lambda,
        };
        arr.validate()?;
        Ok(arr)
    }

    /// X filled row-major with 1..k², Y with k²+1..2k², lambda row-major.
    pub fn standard(k: usize) -> Self {
        let kk = (k * k) as VarId;
        let x = (0..k)
            .map(|i| (0..k).map(|j| (i * k + j) as VarId + 1).collect())
            .collect();
        let y = (0..k)
            .map(|i| (0..k).map(|j| kk + (i * k + j) as VarId + 1).collect())
            .collect();
        let lambda = (0..k).map(|i| (0..k).map(|j| i * k + j + 1).collect()).collect();
        Arrangement {
            k,
            x,
            y,
            lambda: Some(lambda),
        }
    }

    pub fn validate(&self) -> Result<(), ArrangementError> {
        let k = self.k;
        if k < 2 {
            return Err(ArrangementError::SmallK(k));
        }
        for (name, g) in [("X", &self.x), ("Y", &self.y)] {
            if g.len() != k || g.iter().any(|r| r.len() != k) {
                return Err(ArrangementError::Shape(name, k));
            }
        }
        let n = 2 * k * k;
        let vars: BTreeSet<VarId> = self.x.iter().chain(self.y.iter()).flatten().copied().collect();
        if vars.len() != n || vars.iter().next() != Some(&1) || vars.iter().last() != Some(&(n as VarId)) {
            return Err(ArrangementError::NotAPermutation(n));
        }
        if let Some(l) = &self.lambda {
            if l.len() != k || l.iter().any(|r| r.len() != k) {
                return Err(ArrangementError::Shape("lambda", k));
            }
            let idx: BTreeSet<usize> = l.iter().flatten().copied().collect();
            if idx.len() != k * k || idx.iter().next() != Some(&1) || idx.iter().last() != Some(&(k * k)) {
                return Err(ArrangementError::BadLambda(k * k));
            }
        }
        Ok(())
    }

    pub fn grid(&self, letter: super::ncword::Letter) -> &Grid {
        match letter {
            super::ncword::Letter::X => &self.x,
            super::ncword::Letter::Y => &self.y,
        }
    }

    /// Transposes both grids and lambda.
    pub fn transposed(&self) -> Self {
        Arrangement {
            k: self.k,
            x: transpose_grid(&self.x),
            y: transpose_grid(&self.y),
            lambda: self.lambda.as_ref().map(|l| transpose_grid(l)),
        }
    }

    /// Exchanges the X and Y grids.
    pub fn swapped(&self) -> Self {
        Arrangement {
            k: self.k,
            x: self.y.clone(),
            y: self.x.clone(),
            lambda: self.lambda.clone(),
        }
    }

    /// Moves entry (s, t) of every grid to (perm[s], perm[t]).
    pub fn conjugate(&self, perm: &[usize]) -> Self {
        Arrangement {
            k: self.k,
            x: conjugate_grid(&self.x, perm),
            y: conjugate_grid(&self.y, perm),
            lambda: self.lambda.as_ref().map(|l| conjugate_grid(l, perm)),
        }
    }

    pub fn without_lambda(&self) -> Self {
        Arrangement {
            lambda: None,
            ..self.clone()
        }
    }
}

pub fn transpose_grid<T: Clone>(g: &[Vec<T>]) -> Vec<Vec<T>> {
    let k = g.len();
    (0..k).map(|i| (0..k).map(|j| g[j][i].clone()).collect()).collect()
}

pub fn conjugate_grid<T: Clone>(g: &[Vec<T>], perm: &[usize]) -> Vec<Vec<T>> {
    let k = g.len();
    let mut out = g.to_vec();
    for s in 0..k {
        for t in 0..k {
            out[perm[s]][perm[t]] = g[s][t].clone();
        }
    }
    out
}

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let a = Arrangement::standard(2);
        assert!(a.validate().is_ok());
        let mut bad = a.clone();
        bad.y[0][0] = 1;
        assert_eq!(bad.validate(), Err(ArrangementError::NotAPermutation(8)));
        let mut bad = a.clone();
        bad.lambda = Some(vec![vec![1, 1], vec![2, 3]]);
        assert_eq!(bad.validate(), Err(ArrangementError::BadLambda(4)));
        assert!(Arrangement::new(vec![vec![1]], vec![vec![2]], None).is_err());
    }

    #[test]
    fn conjugation_moves_entries() {
        let a = Arrangement::standard(3);
        let c = a.conjugate(&[1, 2, 0]);
        assert_eq!(c.x[1][2], a.x[0][1]);
        assert_eq!(a.conjugate(&[0, 1, 2]), a);
        assert!(c.validate().is_ok());
        assert_eq!(a.transposed().transposed(), a);
    }
}
