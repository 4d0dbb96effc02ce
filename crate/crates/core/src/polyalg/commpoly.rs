use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Monomial, VarId};
use super::rat::{self, Rat};

/// Sparse commutative polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Monomial::var(v), rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut p = CommPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(rat::zero)
    }

    pub fn coeff_ref(&self, m: &Monomial) -> Option<&Rat> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn max_var(&self) -> Option<VarId> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> CommPoly {
        CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into nonzero homogeneous parts keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, CommPoly> {
        let mut out: BTreeMap<u32, CommPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_var(&self, v: VarId) -> CommPoly {
        CommPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul_var(v), c.clone()))
                .collect(),
        }
    }

    pub fn partial(&self, v: VarId) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            if let Some((q, e)) = m.div_var(v) {
                out.add_term(q, c * rat::int(e as i64));
            }
        }
        out
    }

    /// Keeps the terms whose every variable satisfies `keep`.
    pub fn filter_support<F: Fn(VarId) -> bool>(&self, keep: F) -> CommPoly {
        CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.vars().all(&keep))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn without_constant(&self) -> CommPoly {
        let mut p = self.clone();
        p.terms.remove(&Monomial::one());
        p
    }

    pub fn rename<F: Fn(VarId) -> VarId>(&self, f: F) -> CommPoly {
        CommPoly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }
}

impl Add for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        self.scale(&-rat::one())
    }
}

impl Mul for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", rat::format(c))?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rat::format(c))?;
            }
        }
        Ok(())
    }
}

/// Parses a small expression grammar used by tests and examples:
/// sums and differences of terms such as `3x2x4`, `-x1^2`, `6*x3*x7`, `5`.
pub fn parse_poly(src: &str) -> Option<CommPoly> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = CommPoly::zero();
    if bytes.is_empty() {
        return None;
    }
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
        let mut pairs = Vec::new();
        while i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'*') {
            if bytes[i] == b'*' {
                i += 1;
                continue;
            }
            i += 1;
            let vs = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: VarId = s[vs..i].parse().ok()?;
            let mut e = 1u32;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                e = s[es..i].parse().ok()?;
            }
            pairs.push((v, e));
        }
        if start == i {
            return None;
        }
        out.add_term(Monomial::from_pairs(pairs), coeff);
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return None;
        }
    }
    Some(out)
}
