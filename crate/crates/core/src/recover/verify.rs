use crate::polyalg::{expand, Arrangement, CommPoly, NcPoly, PolyFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// 1-based entry of the k×k array.
    pub row: usize,
    pub col: usize,
    pub poly: usize,
    pub expected: CommPoly,
    pub got: CommPoly,
}

/// Checks that p(X, Y) reproduces the family under the arrangement's
/// placement; reports the first differing entry in row-major order.
pub fn verify(fam: &PolyFamily, arr: &Arrangement, p: &NcPoly) -> Result<(), Box<Mismatch>> {
    let m = expand(p, arr);
    let k = arr.k;
    for a in 0..k {
        for b in 0..k {
            let idx = match &arr.lambda {
                Some(l) => l[a][b],
                None => a * k + b + 1,
            };
            let expected = &fam.polys[idx - 1];
            if &m.entries[a][b] != expected {
                return Err(Box::new(Mismatch {
                    row: a + 1,
                    col: b + 1,
                    poly: idx,
                    expected: expected.clone(),
                    got: m.entries[a][b].clone(),
                }));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_nc, rat, Monomial};

    #[test]
    fn detects_perturbation() {
        let arr = Arrangement::standard(2);
        let p = parse_nc("XX + XY").unwrap();
        let mut fam = expand(&p, &arr).to_family(&arr);
        assert!(verify(&fam, &arr, &p).is_ok());
        fam.polys[2].add_term(Monomial::from_pairs([(3, 1), (4, 1)]), rat::int(1));
        let e = verify(&fam, &arr, &p).unwrap_err();
        assert_eq!((e.row, e.col), (2, 1));
    }
}
