//! Class predicates evaluated exactly on a known nc polynomial. Each class
//! is a set of coefficient conditions under which one of the recovery
//! algorithms is guaranteed to succeed.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::polyalg::rat::{self, Rat};
use crate::polyalg::{Letter, NcPoly, NcWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NcClass {
    /// No filter.
    Any,
    /// A one-letter power with coefficient unlike its mirror and unlike the
    /// collapsed coefficient of the next words, read by DiagPar1.
    PowerPar1,
    /// As above with the end/begin conditions read by DiagPar2.
    PowerPar2,
    /// `PowerPar1` with the letters exchanged.
    PowerPar1Swapped,
    /// `PowerPar2` with the letters exchanged.
    PowerPar2Swapped,
    /// Union of the four power classes.
    Power,
    /// Two-letter words of bidegree (s,t) with s ≥ t+2 ≥ 4.
    Gap,
    /// Two-letter words of bidegree (t+1,t), t ≥ 2.
    Adjacent,
    /// Two-letter words of bidegree (r,r), r ≥ 2, with no pure 2r-th powers.
    Balanced,
    /// Words of bidegree (d−1,1) and (1,d−1), degree d ≥ 4.
    Tail,
}

impl NcClass {
    pub const ALL: [NcClass; 10] = [
        NcClass::Any,
        NcClass::PowerPar1,
        NcClass::PowerPar2,
        NcClass::PowerPar1Swapped,
        NcClass::PowerPar2Swapped,
        NcClass::Power,
        NcClass::Gap,
        NcClass::Adjacent,
        NcClass::Balanced,
        NcClass::Tail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NcClass::Any => "any",
            NcClass::PowerPar1 => "power-par1",
            NcClass::PowerPar2 => "power-par2",
            NcClass::PowerPar1Swapped => "power-par1-swapped",
            NcClass::PowerPar2Swapped => "power-par2-swapped",
            NcClass::Power => "power",
            NcClass::Gap => "gap",
            NcClass::Adjacent => "adjacent",
            NcClass::Balanced => "balanced",
            NcClass::Tail => "tail",
        }
    }

    /// Classes recovered through the reduced-family search. Samples for
    /// these avoid pure powers so that search is what gets exercised.
    pub fn is_two_letter(self) -> bool {
        matches!(self, NcClass::Gap | NcClass::Adjacent | NcClass::Balanced | NcClass::Tail)
    }

    pub fn contains(self, p: &NcPoly) -> bool {
        match self {
            NcClass::Any => true,
            NcClass::PowerPar1 => power_par1(p),
            NcClass::PowerPar2 => power_par2(p),
            NcClass::PowerPar1Swapped => power_par1(&p.swap()),
            NcClass::PowerPar2Swapped => power_par2(&p.swap()),
            NcClass::Power => power_par1(p) || power_par2(p) || power_par1(&p.swap()) || power_par2(&p.swap()),
            NcClass::Gap => gap(p),
            NcClass::Adjacent => adjacent(p),
            NcClass::Balanced => balanced(p),
            NcClass::Tail => tail(p),
        }
    }
}

impl fmt::Display for NcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NcClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        NcClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class '{s}'"))
    }
}

fn int(n: u32) -> Rat {
    rat::int(n as i64)
}

fn has_mixed_word(p: &NcPoly) -> bool {
    let d = p.degree().unwrap_or(0);
    (1..=d).any(|t| (0..=d - t).any(|s| !p.phi(s, t).is_zero()))
}

fn power_base(p: &NcPoly) -> Option<u32> {
    let d = p.degree()?;
    (d > 1 && has_mixed_word(p)).then_some(d)
}

fn power_par1(p: &NcPoly) -> bool {
    let Some(d) = power_base(p) else { return false };
    (2..=d).any(|n| {
        let a = p.phi(n, 0);
        !a.is_zero() && a != p.phi(0, n) && &int(n) * &a != p.phi(n - 1, 1)
    })
}

fn power_par2(p: &NcPoly) -> bool {
    let Some(d) = power_base(p) else { return false };
    (2..=d).any(|n| {
        let a = p.phi(n, 0);
        !a.is_zero() && a != p.phi(0, n) && (a != p.phi_end(n - 1, 1, Letter::Y) || a != p.phi_begin(Letter::Y, n - 1, 1))
    })
}

fn gap(p: &NcPoly) -> bool {
    let d = p.degree().unwrap_or(0);
    (2..=d).any(|t| {
        (t + 2..=d.saturating_sub(t)).any(|s| {
            let f = p.phi(s, t);
            !f.is_zero()
                && f != p.phi(t, s)
                && (&int(t) * &f != &int(s + 1) * &p.phi(s + 1, t - 1) || &int(s) * &f != &int(t + 1) * &p.phi(s - 1, t + 1))
        })
    })
}

fn alternating(first: Letter, len: u32) -> NcWord {
    NcWord::from_letters((0..len).map(|i| if i % 2 == 0 { first } else { first.other() }))
}

fn adjacent(p: &NcPoly) -> bool {
    let d = p.degree().unwrap_or(0);
    (2..=d).filter(|t| 2 * t + 1 <= d).any(|t| {
        let f = p.phi(t + 1, t);
        !f.is_zero()
            && f != p.phi(t, t + 1)
            && f != p.coeff(&alternating(Letter::X, 2 * t + 1))
            && f != p.coeff(&alternating(Letter::Y, 2 * t + 1))
    })
}

fn balanced(p: &NcPoly) -> bool {
    let d = p.degree().unwrap_or(0);
    if d < 4 {
        return false;
    }
    (2..=d / 2).any(|r| {
        let n = 2 * r;
        let iff = |a: Rat, b: Rat| a.is_zero() == b.is_zero();
        !p.phi(r, r).is_zero()
            && p.phi(n, 0).is_zero()
            && p.phi(0, n).is_zero()
            && (1..n).all(|s| {
                let t = n - s;
                iff(p.phi_end(s, t, Letter::X), p.phi_end(s, t, Letter::Y))
                    && iff(p.phi_begin(Letter::X, s, t), p.phi_begin(Letter::Y, s, t))
            })
    })
}

fn tail(p: &NcPoly) -> bool {
    let Some(d) = p.degree() else { return false };
    if d < 4 {
        return false;
    }
    let a = p.phi(d - 1, 1);
    let b = p.phi(1, d - 1);
    a != b
        && (a.is_zero() || a != p.phi(d, 0))
        && (b.is_zero() || b != p.phi(0, d))
        && !p.phi_begin(Letter::Y, d - 1, 1).is_zero()
        && !p.phi_end(d - 1, 1, Letter::Y).is_zero()
        && !p.phi_begin(Letter::X, 1, d - 1).is_zero()
        && !p.phi_end(1, d - 1, Letter::X).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_nc;

    fn nc(s: &str) -> NcPoly {
        parse_nc(s).unwrap()
    }

    #[test]
    fn power_classes() {
        assert!(NcClass::PowerPar1.contains(&nc("X^2 + XY")));
        assert!(NcClass::PowerPar1.contains(&nc("3X^2 + XY + YX + 6Y^2")));
        // 2·φ(2,0) = φ(1,1) rules out the first partition method only.
        assert!(!NcClass::PowerPar1.contains(&nc("X^2 + 2XY")));
        assert!(NcClass::PowerPar2.contains(&nc("X^2 + 2XY")));
        assert!(!NcClass::PowerPar1Swapped.contains(&nc("X^2 + 2XY")));
        assert!(NcClass::PowerPar1Swapped.contains(&nc("X^2 + XY + YX + 2Y^2")));
        assert!(!NcClass::Power.contains(&nc("X^2 + XY + YX + Y^2")));
        assert!(!NcClass::Power.contains(&nc("X^3")));
    }

    #[test]
    fn two_letter_classes() {
        assert!(NcClass::Tail.contains(&nc("X^3Y + YX^3 + 2XY^3 + 2Y^3X")));
        assert!(!NcClass::Tail.contains(&nc("X^3Y + YX^3 + XY^3 + Y^3X")));
        // Needs a word starting with Y among the (3,1) words.
        assert!(!NcClass::Tail.contains(&nc("X^3Y + 2XY^3")));
        assert!(NcClass::Gap.contains(&nc("X^4Y^2")));
        assert!(!NcClass::Gap.contains(&nc("X^3Y^2")));
        assert!(NcClass::Adjacent.contains(&nc("X^3Y^2")));
        assert!(!NcClass::Adjacent.contains(&nc("XYXYX")));
        assert!(NcClass::Balanced.contains(&nc("XYXY + YXYX")));
        assert!(!NcClass::Balanced.contains(&nc("XYXY")));
    }

    #[test]
    fn names_round_trip() {
        for c in NcClass::ALL {
            assert_eq!(c.name().parse::<NcClass>().unwrap(), c);
        }
    }
}
