use crate::polyalg::arrangement::{conjugate_grid, transpose_grid};
use crate::polyalg::{Arrangement, Grid, NcPoly};

/// The four ways two arrangements of one family can be related, each
/// followed by a conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivCase {
    Identity = 1,
    Transpose = 2,
    Swap = 3,
    SwapTranspose = 4,
}

impl EquivCase {
    pub const ALL: [EquivCase; 4] = [EquivCase::Identity, EquivCase::Transpose, EquivCase::Swap, EquivCase::SwapTranspose];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn apply(self, arr: &Arrangement) -> Arrangement {
        match self {
            EquivCase::Identity => arr.clone(),
            EquivCase::Transpose => arr.transposed(),
            EquivCase::Swap => arr.swapped(),
            EquivCase::SwapTranspose => arr.swapped().transposed(),
        }
    }

    /// The polynomial that represents the family with `apply(arr)` when `p`
    /// does with `arr`.
    pub fn apply_poly(self, p: &NcPoly) -> NcPoly {
        match self {
            EquivCase::Identity => p.clone(),
            EquivCase::Transpose => p.transpose(),
            EquivCase::Swap => p.swap(),
            EquivCase::SwapTranspose => p.swap().transpose(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub case: EquivCase,
    /// Slot s of the transformed `b` moves to slot perm[s].
    pub perm: Vec<usize>,
}

fn anchor(a: &Grid, b: &Grid) -> Option<Vec<usize>> {
    let k = a.len();
    let perm: Vec<usize> = (0..k)
        .map(|s| (0..k).find(|&r| a[r][r] == b[s][s]))
        .collect::<Option<_>>()?;
    crate::polyalg::arrangement::is_permutation(&perm).then_some(perm)
}

/// Finds a case and permutation with a = conjugate(case(b), perm). The
/// permutation is forced by matching the X diagonals, so no search over
/// all k! permutations is needed. Lambda is compared only if both have one.
pub fn permutation_equivalent(a: &Arrangement, b: &Arrangement) -> Option<Equivalence> {
    if a.k != b.k {
        return None;
    }
    for case in EquivCase::ALL {
        let t = case.apply(b);
        let Some(perm) = anchor(&a.x, &t.x) else { continue };
        let c = t.conjugate(&perm);
        let lambda_ok = match (&a.lambda, &c.lambda) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        };
        if c.x == a.x && c.y == a.y && lambda_ok {
            return Some(Equivalence { case, perm });
        }
    }
    None
}

/// Single-grid version: a = conjugate(b or bᵀ, perm), reported as case 1
/// or 2.
pub fn grid_equivalent(a: &Grid, b: &Grid) -> Option<Equivalence> {
    for (case, t) in [(EquivCase::Identity, b.clone()), (EquivCase::Transpose, transpose_grid(b))] {
        if let Some(perm) = anchor(a, &t) {
            if &conjugate_grid(&t, &perm) == a {
                return Some(Equivalence { case, perm });
            }
        }
    }
    None
}
