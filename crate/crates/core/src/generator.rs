//! Seeded random tame automorphisms with known factorizations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Coeff, FieldMode};
use crate::map::PolyMap;
use crate::poly::Polynomial;
use crate::tame::{recompose, AffineMap, Decomposition, Factor};

/// Upper bound on the worst-case degree of a generated composition.
pub const MAX_COMPOSED_DEGREE: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Number of factors, alternating triangular and affine (triangular first).
    pub depth: usize,
    pub max_tri_degree: u32,
    /// Numerators lie in `[-coeff_bound, coeff_bound]`, denominators in `[1, coeff_bound]`.
    pub coeff_bound: u32,
    pub field_mode: FieldMode,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, depth: 3, max_tri_degree: 3, coeff_bound: 3, field_mode: FieldMode::Rational }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("max_tri_degree must be at least 2")]
    LowTriDegree,
    #[error("coeff_bound must be at least 1")]
    ZeroCoeffBound,
    #[error("worst-case composed degree {0} exceeds {MAX_COMPOSED_DEGREE}")]
    DegreeTooLarge(u64),
}

impl GenConfig {
    pub fn triangular_count(&self) -> usize {
        self.depth.div_ceil(2)
    }

    pub fn worst_case_degree(&self) -> u64 {
        (self.max_tri_degree as u64).saturating_pow(self.triangular_count() as u32)
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.depth == 0 {
            return Err(GenError::ZeroDepth);
        }
        if self.max_tri_degree < 2 {
            return Err(GenError::LowTriDegree);
        }
        if self.coeff_bound == 0 {
            return Err(GenError::ZeroCoeffBound);
        }
        let w = self.worst_case_degree();
        if w > MAX_COMPOSED_DEGREE {
            return Err(GenError::DegreeTooLarge(w));
        }
        Ok(())
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
    mode: FieldMode,
}

impl Sampler {
    fn rational(&mut self) -> BigRational {
        let n = self.rng.random_range(-self.bound..=self.bound);
        let d = self.rng.random_range(1..=self.bound);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn coeff(&mut self) -> Coeff {
        let re = self.rational();
        match self.mode {
            FieldMode::Rational => Coeff::real(re),
            FieldMode::Gaussian => {
                // Keep roughly half the coefficients real so both code paths get exercised.
                let im = if self.rng.random_bool(0.5) { self.rational() } else { BigRational::zero() };
                Coeff::new(re, im)
            }
        }
    }

    fn nonzero_coeff(&mut self) -> Coeff {
        loop {
            let c = self.coeff();
            if !c.is_zero() {
                return c;
            }
        }
    }

    fn triangular(&mut self, max_deg: u32) -> Factor {
        let deg = self.rng.random_range(2..=max_deg);
        let on_x = self.rng.random_bool(0.5);
        let mut terms = vec![(deg, self.nonzero_coeff())];
        for k in 2..deg {
            terms.push((k, self.coeff()));
        }
        let poly = Polynomial::from_terms(
            terms.into_iter().map(|(k, c)| if on_x { (0, k, c) } else { (k, 0, c) }),
            self.mode,
        )
        .expect("sampled in field mode");
        if on_x {
            Factor::TriangularX(poly)
        } else {
            Factor::TriangularY(poly)
        }
    }

    fn affine(&mut self) -> Factor {
        loop {
            let m = AffineMap {
                a: self.coeff(),
                b: self.coeff(),
                c: self.coeff(),
                d: self.coeff(),
                e: self.coeff(),
                f: self.coeff(),
            };
            if let Ok(f) = Factor::affine(m) {
                return f;
            }
        }
    }
}

/// Draws `depth` factors (triangular, affine, triangular, ...) and returns
/// their composition together with the factor list. Deterministic in `cfg`.
pub fn random_tame(cfg: &GenConfig) -> Result<(PolyMap, Decomposition), GenError> {
    cfg.validate()?;
    let mut s = Sampler {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        bound: cfg.coeff_bound as i64,
        mode: cfg.field_mode,
    };
    let factors = (0..cfg.depth)
        .map(|k| if k % 2 == 0 { s.triangular(cfg.max_tri_degree) } else { s.affine() })
        .collect();
    let d = Decomposition::new(factors, cfg.field_mode);
    Ok((recompose(&d), d))
}
