use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use super::commpoly::CommPoly;
use super::monomial::Monomial;
use super::ncword::{Letter, NcWord};
use super::rat::{self, Rat};

/// Non-commutative polynomial in the letters X and Y.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<NcWord, Rat>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (NcWord, Rat)>>(terms: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: NcWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NcWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(rat::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(NcWord::len).max()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&NcWord::empty())
    }

    pub fn scale(&self, c: &Rat) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    pub fn homogeneous_part(&self, d: u32) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The commutative collapse p(xI, yI) as a polynomial in two formal
    /// variables: variable 1 stands for x, variable 2 for y.
    pub fn collapse(&self) -> CommPoly {
        CommPoly::from_terms(self.terms.iter().map(|(w, c)| {
            let (i, j) = w.bidegree();
            (Monomial::from_pairs([(1, i), (2, j)]), c.clone())
        }))
    }

    /// Sum of coefficients of words with `i` X's and `j` Y's.
    pub fn phi(&self, i: u32, j: u32) -> Rat {
        self.terms
            .iter()
            .filter(|(w, _)| w.bidegree() == (i, j))
            .fold(rat::zero(), |acc, (_, c)| acc + c)
    }

    /// As `phi`, restricted to words ending in `last`.
    pub fn phi_end(&self, i: u32, j: u32, last: Letter) -> Rat {
        self.terms
            .iter()
            .filter(|(w, _)| w.bidegree() == (i, j) && w.last() == Some(last))
            .fold(rat::zero(), |acc, (_, c)| acc + c)
    }

    /// As `phi`, restricted to words beginning with `first`.
    pub fn phi_begin(&self, first: Letter, i: u32, j: u32) -> Rat {
        self.terms
            .iter()
            .filter(|(w, _)| w.bidegree() == (i, j) && w.first() == Some(first))
            .fold(rat::zero(), |acc, (_, c)| acc + c)
    }

    /// p(Y, X): exchanges the letters.
    pub fn swap(&self) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.swapped(), c.clone())))
    }

    /// Reverses every word, so that the result evaluated at transposed
    /// matrices is the transpose of p.
    pub fn transpose(&self) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())))
    }

    /// One application of the directional derivative in `l` along the
    /// identity: each word goes to the sum of its single deletions of `l`.
    pub fn derivative(&self, l: Letter) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            for (v, mult) in w.deletions(l) {
                out.add_term(v, c * rat::int(mult as i64));
            }
        }
        out
    }

    /// `order`-fold directional derivative in `l`.
    pub fn directional_derivative(&self, l: Letter, order: u32) -> NcPoly {
        let mut p = self.clone();
        for _ in 0..order {
            p = p.derivative(l);
        }
        p
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{}", rat::format(c))?;
            } else if c.is_one() {
                write!(f, "{w:?}")?;
            } else {
                write!(f, "{}*{w:?}", rat::format(c))?;
            }
        }
        Ok(())
    }
}

/// Parses sums such as `3XX + XY - 2YX + 6YY` or `X^2 + 5`. Letters may carry
/// exponents; a bare number is a constant term.
pub fn parse_nc(src: &str) -> Option<NcPoly> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return None;
    }
    let mut i = 0;
    let mut out = NcPoly::zero();
    while i < bytes.len() {
        let mut sign = 1i64;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let mut coeff = if start == i {
            rat::one()
        } else {
            rat::parse(&s[start..i])?
        };
        coeff *= rat::int(sign);
        let mut runs = Vec::new();
        while i < bytes.len() && matches!(bytes[i], b'X' | b'Y' | b'*') {
            if bytes[i] == b'*' {
                i += 1;
                continue;
            }
            let l = if bytes[i] == b'X' { Letter::X } else { Letter::Y };
            i += 1;
            let mut e = 1u32;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                e = s[es..i].parse().ok()?;
            }
            runs.push((l, e));
        }
        if start == i {
            return None;
        }
        out.add_term(NcWord::from_runs(runs), coeff);
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return None;
        }
    }
    Some(out)
}
