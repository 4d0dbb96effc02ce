use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'X',
            Letter::Y => 'Y',
        }
    }
}

/// Word over {X, Y} in run-length form; adjacent runs carry distinct letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NcWord {
    runs: Vec<(Letter, u32)>,
}

impl NcWord {
    pub fn empty() -> Self {
        NcWord { runs: Vec::new() }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut runs: Vec<(Letter, u32)> = Vec::new();
        for l in letters {
            match runs.last_mut() {
                Some(r) if r.0 == l => r.1 += 1,
                _ => runs.push((l, 1)),
            }
        }
        NcWord { runs }
    }

    pub fn from_runs<I: IntoIterator<Item = (Letter, u32)>>(runs: I) -> Self {
        Self::from_letters(
            runs.into_iter()
                .flat_map(|(l, e)| std::iter::repeat(l).take(e as usize)),
        )
    }

    pub fn power(l: Letter, e: u32) -> Self {
        Self::from_runs([(l, e)])
    }

    /// Parses a string over the characters `X` and `Y`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            letters.push(match ch {
                'X' => Letter::X,
                'Y' => Letter::Y,
                _ => return None,
            });
        }
        Some(Self::from_letters(letters))
    }

    pub fn runs(&self) -> &[(Letter, u32)] {
        &self.runs
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs
            .iter()
            .flat_map(|&(l, e)| std::iter::repeat(l).take(e as usize))
    }

    pub fn len(&self) -> u32 {
        self.runs.iter().map(|r| r.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn degree_in(&self, l: Letter) -> u32 {
        self.runs.iter().filter(|r| r.0 == l).map(|r| r.1).sum()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.degree_in(Letter::X), self.degree_in(Letter::Y))
    }

    pub fn first(&self) -> Option<Letter> {
        self.runs.first().map(|r| r.0)
    }

    pub fn last(&self) -> Option<Letter> {
        self.runs.last().map(|r| r.0)
    }

    pub fn swapped(&self) -> Self {
        NcWord {
            runs: self.runs.iter().map(|&(l, e)| (l.other(), e)).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        NcWord {
            runs: self.runs.iter().rev().copied().collect(),
        }
    }

    /// Every word obtained by deleting one occurrence of `l`, with
    /// multiplicity (deleting any letter of a run of length e gives the same
    /// word, counted e times).
    pub fn deletions(&self, l: Letter) -> Vec<(NcWord, u32)> {
        let mut out = Vec::new();
        for (i, &(rl, e)) in self.runs.iter().enumerate() {
            if rl != l {
                continue;
            }
            let mut runs = self.runs.clone();
            if e == 1 {
                runs.remove(i);
            } else {
                runs[i].1 -= 1;
            }
            out.push((NcWord::from_runs(runs), e));
        }
        out
    }

    /// All 2^n words of length n in canonical order.
    pub fn all_of_length(n: u32) -> Vec<NcWord> {
        (0..(1u64 << n))
            .map(|bits| {
                NcWord::from_letters((0..n).map(|i| {
                    if bits >> (n - 1 - i) & 1 == 1 {
                        Letter::Y
                    } else {
                        Letter::X
                    }
                }))
            })
            .collect()
    }
}

/// Graded order, then lexicographic with X before Y.
impl Ord for NcWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for NcWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for &(l, e) in &self.runs {
            if e == 1 {
                write!(f, "{}", l.as_char())?;
            } else {
                write!(f, "{}^{}", l.as_char(), e)?;
            }
        }
        Ok(())
    }
}
