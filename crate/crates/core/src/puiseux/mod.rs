//! Newton-Puiseux expansions of plane curves at infinity.
//!
//! Exponents are exact rationals; coefficients are double-precision complex
//! numbers. Every computed value tracks the magnitude of what was summed into
//! it so that cancellations can be told apart from genuine small values.

mod approx;
mod fact1;
mod newton;
mod param;
pub mod residual;
pub mod roots;
mod series;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Polynomial, Var};

pub use fact1::{fact1_product, ApproxPoly};
pub use param::{fmt_rounded, lift_simple_root, render_xi_poly, substitute_param, FaceData, ParamSeries};
pub use series::{BranchSet, Order, PuiseuxSeries};

pub(crate) use approx::YPoly;
pub(crate) use series::{complex_pair, ratio_pair};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Values below `drop_tol` times their accumulated magnitude are zero.
    pub drop_tol: f64,
    /// Relative step size at which root iteration stops.
    pub root_tol: f64,
    /// Minimum normalized derivative for a root to count as simple.
    pub simple_tol: f64,
    pub max_iter: usize,
    /// Relative tolerance for recognising a perfect power; its square root is
    /// the radius within which approximate roots are merged.
    pub cluster_tol: f64,
    /// Relative distance within which two series count as conjugate.
    pub match_tol: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            drop_tol: 1e-10,
            root_tol: 1e-12,
            simple_tol: 1e-8,
            max_iter: 200,
            cluster_tol: 1e-8,
            match_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PuiseuxError {
    #[error("expected a polynomial whose top power of y has a constant coefficient")]
    NotMonic,
    #[error("polynomial has no y-degree")]
    ConstantInY,
    #[error("root iteration failed on face polynomial {face:?}")]
    RootRefinement { face: Vec<Complex64> },
    #[error("roots still coincide at exponent {exponent} (multiplicity {multiplicity})")]
    NotSeparated { exponent: Rational64, multiplicity: usize },
    #[error("numerical breakdown: {detail}")]
    NumericBreakdown { detail: String },
    #[error("conjugates of {series} are missing from the computed roots")]
    ConjugacyMismatch { series: String },
    #[error("conjugate index {index} out of range for ramification {ram}")]
    ConjugateIndex { index: u32, ram: u32 },
    #[error("series is indistinguishable from zero above x^({trunc_ord})")]
    Indistinguishable { trunc_ord: Rational64 },
    #[error("{c} is not a simple zero of the face polynomial (|h0'| = {derivative:e})")]
    NotSimple { c: Complex64, derivative: f64 },
    #[error("{c} is not a zero of the face polynomial (|h0| = {value:e})")]
    NotARoot { c: Complex64, value: f64 },
    #[error("truncation too shallow: term x^({exponent}) of size {size:e} does not cancel")]
    InsufficientTruncation { exponent: Rational64, size: f64 },
    #[error("parameter family is not normalized: gcd of its support is {gcd}")]
    NotNormalized { gcd: i64 },
    #[error("ramification {ram} does not match the requested degree {d}")]
    RamMismatch { ram: u32, d: u32 },
}

/// Default truncation for a curve of degree `d`.
pub fn default_trunc_terms(d: u32) -> usize {
    2 * d as usize + 4
}

/// `h` divided by the constant coefficient of its top power of `y`.
fn monic_in_y(h: &Polynomial) -> Result<Polynomial, PuiseuxError> {
    let dy = h.degree_in(Var::Y).finite().ok_or(PuiseuxError::ConstantInY)?;
    if dy == 0 {
        return Err(PuiseuxError::ConstantInY);
    }
    let lead: Vec<_> = h.terms().filter(|(m, _)| m.y == dy).collect();
    if lead.len() != 1 || lead[0].0.x != 0 {
        return Err(PuiseuxError::NotMonic);
    }
    let inv = lead[0].1.inv().expect("stored coefficients are nonzero");
    Ok(h.scale(&inv))
}

/// Every root `y = u(x^(1/m))` of `h` as `x -> infinity`, grouped into
/// conjugacy classes.
///
/// Each root is resolved down to exponent `1 - trunc_terms / m`; roots that
/// agree that far are followed further until they separate.
pub fn expansions_at_infinity(h: &Polynomial, trunc_terms: usize, cfg: &EngineConfig) -> Result<BranchSet, PuiseuxError> {
    let roots = all_roots(h, trunc_terms, cfg)?;
    series::group_classes(roots, cfg.match_tol)
}

/// The individual roots, `deg_y h` of them, before grouping.
pub fn all_roots(h: &Polynomial, trunc_terms: usize, cfg: &EngineConfig) -> Result<Vec<PuiseuxSeries>, PuiseuxError> {
    let h = monic_in_y(h)?;
    let poly = YPoly::from_poly(&h);
    let k = poly.degree();
    let ex = newton::Expander { cfg, trunc_terms };
    let mut out = Vec::with_capacity(k);
    ex.expand(newton::Node { poly, prefix: Vec::new(), e_cur: None, k }, &mut out)?;
    debug_assert_eq!(out.len(), k);
    Ok(out)
}
