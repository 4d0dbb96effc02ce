use std::collections::BTreeMap;

use super::arrangement::{Arrangement, Grid};
use super::commpoly::CommPoly;
use super::family::PolyMatrix;
use super::monomial::Monomial;
use super::ncpoly::NcPoly;
use super::ncword::NcWord;
use super::rat;

/// Entry-wise path counts of a word evaluated at symbolic matrices.
pub type CountMatrix = Vec<Vec<BTreeMap<Monomial, u64>>>;

fn identity_counts(k: usize) -> CountMatrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut m = BTreeMap::new();
                    if i == j {
                        m.insert(Monomial::one(), 1);
                    }
                    m
                })
                .collect()
        })
        .collect()
}

fn times_grid(m: &CountMatrix, g: &Grid) -> CountMatrix {
    let k = g.len();
    let mut out: CountMatrix = vec![vec![BTreeMap::new(); k]; k];
    for a in 0..k {
        for mid in 0..k {
            let src = &m[a][mid];
            if src.is_empty() {
                continue;
            }
            for b in 0..k {
                let v = g[mid][b];
                let dst = &mut out[a][b];
                for (mono, c) in src {
                    *dst.entry(mono.mul_var(v)).or_insert(0) += c;
                }
            }
        }
    }
    out
}

/// Path counts of a single word, multiplied letter by letter from the left.
pub fn word_counts(w: &NcWord, arr: &Arrangement) -> CountMatrix {
    let mut m = identity_counts(arr.k);
    for l in w.letters() {
        m = times_grid(&m, arr.grid(l));
    }
    m
}

/// Path counts of all 2^n words of length n, in canonical word order.
/// Shares work between words with a common prefix.
pub fn all_word_counts(arr: &Arrangement, n: u32) -> Vec<CountMatrix> {
    let mut out = Vec::with_capacity(1 << n);
    fn rec(arr: &Arrangement, m: CountMatrix, left: u32, out: &mut Vec<CountMatrix>) {
        if left == 0 {
            out.push(m);
            return;
        }
        let mx = times_grid(&m, &arr.x);
        rec(arr, mx, left - 1, out);
        let my = times_grid(&m, &arr.y);
        rec(arr, my, left - 1, out);
    }
    rec(arr, identity_counts(arr.k), n, &mut out);
    out
}

pub fn counts_to_matrix(m: &CountMatrix) -> PolyMatrix {
    let k = m.len();
    PolyMatrix {
        k,
        entries: m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        CommPoly::from_terms(
                            e.iter().map(|(mono, c)| (mono.clone(), rat::int(*c as i64))),
                        )
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Symbolic evaluation p(X, Y) with X and Y filled per `arr`.
pub fn expand(p: &NcPoly, arr: &Arrangement) -> PolyMatrix {
    let k = arr.k;
    let mut entries = vec![vec![CommPoly::zero(); k]; k];
    for (w, c) in p.terms() {
        let counts = word_counts(w, arr);
        for a in 0..k {
            for b in 0..k {
                for (mono, n) in &counts[a][b] {
                    entries[a][b].add_term(mono.clone(), c * rat::int(*n as i64));
                }
            }
        }
    }
    PolyMatrix { k, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::commpoly::parse_poly;
    use crate::polyalg::ncpoly::parse_nc;

    #[test]
    fn two_by_two_worked_example() {
        let arr = Arrangement::standard(2);
        let m = expand(&parse_nc("X^2 + XY").unwrap(), &arr);
        assert_eq!(m.entries[0][0], parse_poly("x1^2+x2x3+x1x5+x2x7").unwrap());
        assert_eq!(m.entries[0][1], parse_poly("x1x2+x2x4+x1x6+x2x8").unwrap());
        assert_eq!(m.entries[1][0], parse_poly("x1x3+x3x4+x3x5+x4x7").unwrap());
        assert_eq!(m.entries[1][1], parse_poly("x2x3+x4^2+x3x6+x4x8").unwrap());
    }

    #[test]
    fn single_letter_and_zero() {
        let arr = Arrangement::standard(3);
        let m = expand(&parse_nc("X").unwrap(), &arr);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entries[i][j], CommPoly::var(arr.x[i][j]));
            }
        }
        let z = expand(&crate::polyalg::ncpoly::NcPoly::zero(), &arr);
        assert_eq!(z, PolyMatrix::zero(3));
    }

    #[test]
    fn shared_prefix_counts_match_single_words() {
        let arr = Arrangement::standard(2);
        let all = all_word_counts(&arr, 3);
        for (w, c) in NcWord::all_of_length(3).iter().zip(&all) {
            assert_eq!(&word_counts(w, &arr), c);
        }
    }
}
