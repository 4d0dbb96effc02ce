//! Seeded random nc polynomials, arrangements and families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::classes::NcClass;
use crate::polyalg::rat;
use crate::polyalg::{expand, Arrangement, Letter, NcPoly, NcWord, PolyFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub k: usize,
    pub degree: u32,
    /// Coefficients are drawn uniformly from [-coeff_bound, coeff_bound] \ {0}.
    pub coeff_bound: i64,
    pub max_terms: usize,
    pub class: NcClass,
    pub max_tries: usize,
}

impl GenConfig {
    pub fn new(k: usize, degree: u32, class: NcClass) -> Self {
        GenConfig {
            k,
            degree,
            coeff_bound: 9,
            max_terms: 6,
            class,
            max_tries: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no sample in class {class} after {tries} tries (degree {degree})")]
    RejectionLimit { class: NcClass, degree: u32, tries: usize },
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
}

fn random_word<R: Rng>(rng: &mut R, len: u32, mixed: bool) -> NcWord {
    loop {
        let w = NcWord::from_letters((0..len).map(|_| if rng.gen_bool(0.5) { Letter::X } else { Letter::Y }));
        let (a, b) = w.bidegree();
        if !mixed || (a > 0 && b > 0) {
            return w;
        }
    }
}

/// One unfiltered sample: the first word has the full degree, the others a
/// geometrically distributed shortfall.
fn sample<R: Rng>(rng: &mut R, cfg: &GenConfig) -> NcPoly {
    let mixed = cfg.class.is_two_letter();
    let min_len = if mixed { 2 } else { 1 };
    let terms = rng.gen_range(1..=cfg.max_terms.max(1));
    let mut p = NcPoly::zero();
    for i in 0..terms {
        let mut len = cfg.degree;
        if i > 0 {
            while len > min_len && rng.gen_bool(0.5) {
                len -= 1;
            }
        }
        let w = random_word(rng, len, mixed);
        let mut c = rng.gen_range(1..=cfg.coeff_bound);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        p.add_term(w, rat::int(c));
    }
    p
}

/// Rejection-samples a polynomial of the configured degree in the
/// configured class.
pub fn random_nc_poly<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Result<NcPoly, GenError> {
    if cfg.degree < 2 {
        return Err(GenError::Degree(cfg.degree));
    }
    for _ in 0..cfg.max_tries {
        let p = sample(rng, cfg);
        if p.degree() == Some(cfg.degree) && cfg.class.contains(&p) {
            return Ok(p);
        }
    }
    Err(GenError::RejectionLimit {
        class: cfg.class,
        degree: cfg.degree,
        tries: cfg.max_tries,
    })
}

/// Uniformly random placement of x1..x_{2k²} and of the k² polynomials.
pub fn random_arrangement<R: Rng>(rng: &mut R, k: usize) -> Arrangement {
    let mut vars: Vec<u32> = (1..=(2 * k * k) as u32).collect();
    vars.shuffle(rng);
    let mut polys: Vec<usize> = (1..=k * k).collect();
    polys.shuffle(rng);
    let grid = |s: &[u32]| s.chunks(k).map(|r| r.to_vec()).collect::<Vec<_>>();
    let x = grid(&vars[..k * k]);
    let y = grid(&vars[k * k..]);
    let lambda = polys.chunks(k).map(|r| r.to_vec()).collect();
    Arrangement::new(x, y, Some(lambda)).expect("shuffled arrangement is valid")
}

/// A generated family together with the polynomial and arrangement that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub family: PolyFamily,
    pub p: NcPoly,
    pub arrangement: Arrangement,
}

pub fn random_family(cfg: &GenConfig, seed: u64) -> Result<Sample, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_nc_poly(&mut rng, cfg)?;
    let arrangement = random_arrangement(&mut rng, cfg.k);
    let family = expand(&p, &arrangement).to_family(&arrangement);
    Ok(Sample { family, p, arrangement })
}
