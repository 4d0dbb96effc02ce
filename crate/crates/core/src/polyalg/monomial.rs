use std::cmp::Ordering;
use std::fmt;

/// 1-based index of a commuting variable `x_i`.
pub type VarId = u32;

/// Commutative monomial as a sorted list of `(var, exponent)` pairs with
/// positive exponents. The empty list is the constant monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn power(v: VarId, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monomial { exps: vec![(v, e)] }
    }

    /// Builds from arbitrary pairs; repeated variables are merged and zero
    /// exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(VarId, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        exps.sort_unstable();
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        match self.exps.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|p| p.0)
    }

    pub fn max_var(&self) -> Option<VarId> {
        self.exps.last().map(|p| p.0)
    }

    pub fn mul_var(&self, v: VarId) -> Self {
        let mut exps = self.exps.clone();
        match exps.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => exps[i].1 += 1,
            Err(i) => exps.insert(i, (v, 1)),
        }
        Monomial { exps }
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        Self::from_pairs(self.exps.iter().chain(other.exps.iter()).copied())
    }

    /// Removes one power of `v`, returning the old exponent, or `None` if `v`
    /// does not divide the monomial.
    pub fn div_var(&self, v: VarId) -> Option<(Self, u32)> {
        let i = self.exps.binary_search_by_key(&v, |p| p.0).ok()?;
        let mut exps = self.exps.clone();
        let e = exps[i].1;
        if e == 1 {
            exps.remove(i);
        } else {
            exps[i].1 -= 1;
        }
        Some((Monomial { exps }, e))
    }

    /// Keeps only the variables for which `keep` holds.
    pub fn restrict<F: Fn(VarId) -> bool>(&self, keep: F) -> Self {
        Monomial {
            exps: self.exps.iter().copied().filter(|p| keep(p.0)).collect(),
        }
    }

    pub fn rename<F: Fn(VarId) -> VarId>(&self, f: F) -> Self {
        Self::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }
}

/// Graded order: total degree first, then the `(var, exp)` lists compared
/// lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}
