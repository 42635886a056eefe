//! Affine and triangular automorphisms, and decompositions into them.

mod decompose;

pub use decompose::{decompose, invert, invert_decomposition, is_keller, leading_match, recompose, reduce_step};

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::coeff::{Coeff, FieldMode};
use crate::map::PolyMap;
use crate::poly::{powers, Polynomial, Var};

/// `(x, y) -> (a x + b y + e, c x + d y + f)` with `ad - bc != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub a: Coeff,
    pub b: Coeff,
    pub c: Coeff,
    pub d: Coeff,
    pub e: Coeff,
    pub f: Coeff,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            a: Coeff::one(),
            b: Coeff::zero(),
            c: Coeff::zero(),
            d: Coeff::one(),
            e: Coeff::zero(),
            f: Coeff::zero(),
        }
    }

    /// `(x, y) -> (y, x)`.
    pub fn swap() -> Self {
        AffineMap {
            a: Coeff::zero(),
            b: Coeff::one(),
            c: Coeff::one(),
            d: Coeff::zero(),
            e: Coeff::zero(),
            f: Coeff::zero(),
        }
    }

    pub fn det(&self) -> Coeff {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Reads the linear and constant parts of a map of degree at most one.
    pub fn from_map(m: &PolyMap) -> Option<AffineMap> {
        if m.max_degree() > 1 {
            return None;
        }
        Some(AffineMap {
            a: m.p.coeff(1, 0),
            b: m.p.coeff(0, 1),
            c: m.q.coeff(1, 0),
            d: m.q.coeff(0, 1),
            e: m.p.constant_term(),
            f: m.q.constant_term(),
        })
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let inv_det = self.det().inv()?;
        let a = &self.d * &inv_det;
        let b = -&(&self.b * &inv_det);
        let c = -&(&self.c * &inv_det);
        let d = &self.a * &inv_det;
        let e = -&(&(&a * &self.e) + &(&b * &self.f));
        let f = -&(&(&c * &self.e) + &(&d * &self.f));
        Some(AffineMap { a, b, c, d, e, f })
    }

    fn linear(&self, u: &Coeff, v: &Coeff, w: &Coeff, mode: FieldMode) -> Polynomial {
        Polynomial::from_terms([(1, 0, u.clone()), (0, 1, v.clone()), (0, 0, w.clone())], mode)
            .expect("coefficients checked against field mode")
    }

    pub fn to_map(&self, mode: FieldMode) -> PolyMap {
        PolyMap {
            p: self.linear(&self.a, &self.b, &self.e, mode),
            q: self.linear(&self.c, &self.d, &self.f, mode),
        }
    }
}

/// One elementary automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // factor lists are short; boxing buys nothing
pub enum Factor {
    Affine(AffineMap),
    /// `(x, y) -> (x + p(y), y)`.
    TriangularX(Polynomial),
    /// `(x, y) -> (x, y + q(x))`.
    TriangularY(Polynomial),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("affine factor is singular (ad - bc = 0)")]
    SingularAffine,
    #[error("triangular polynomial must involve only {0:?}")]
    WrongVariable(Var),
    #[error("triangular polynomial of degree <= 1 belongs in an affine factor")]
    LowDegree,
}

impl Factor {
    pub fn affine(m: AffineMap) -> Result<Factor, FactorError> {
        if m.det().is_zero() {
            return Err(FactorError::SingularAffine);
        }
        Ok(Factor::Affine(m))
    }

    pub fn triangular_x(p: Polynomial) -> Result<Factor, FactorError> {
        check_triangular(&p, Var::Y)?;
        Ok(Factor::TriangularX(p))
    }

    pub fn triangular_y(q: Polynomial) -> Result<Factor, FactorError> {
        check_triangular(&q, Var::X)?;
        Ok(Factor::TriangularY(q))
    }

    pub fn to_map(&self, mode: FieldMode) -> PolyMap {
        self.apply_after(&PolyMap::identity(mode))
    }

    /// `self ∘ inner`. Only powers of one component of `inner` are needed,
    /// so this is much cheaper than a general composition.
    pub fn apply_after(&self, inner: &PolyMap) -> PolyMap {
        match self {
            Factor::Affine(m) => {
                let lin = |u: &Coeff, v: &Coeff, w: &Coeff| {
                    &(&inner.p.scale(u) + &inner.q.scale(v)) + &Polynomial::constant(w.clone(), inner.mode())
                };
                PolyMap { p: lin(&m.a, &m.b, &m.e), q: lin(&m.c, &m.d, &m.f) }
            }
            Factor::TriangularX(p) => PolyMap {
                p: &inner.p + &eval_univariate(p, Var::Y, &inner.q),
                q: inner.q.clone(),
            },
            Factor::TriangularY(q) => PolyMap {
                p: inner.p.clone(),
                q: &inner.q + &eval_univariate(q, Var::X, &inner.p),
            },
        }
    }

    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Affine(m) => Factor::Affine(m.inverse().expect("affine factors are invertible")),
            Factor::TriangularX(p) => Factor::TriangularX(-p),
            Factor::TriangularY(q) => Factor::TriangularY(-q),
        }
    }

    /// The (constant) Jacobian determinant of this factor.
    pub fn jacobian_const(&self) -> Coeff {
        match self {
            Factor::Affine(m) => m.det(),
            _ => Coeff::one(),
        }
    }
}

fn check_triangular(p: &Polynomial, v: Var) -> Result<(), FactorError> {
    if !p.is_univariate_in(v) {
        return Err(FactorError::WrongVariable(v));
    }
    match p.degree().finite() {
        Some(d) if d < 2 => Err(FactorError::LowDegree),
        _ => Ok(()),
    }
}

/// `p(arg)` for `p` univariate in `v`.
fn eval_univariate(p: &Polynomial, v: Var, arg: &Polynomial) -> Polynomial {
    let n = p.degree_in(v).finite().unwrap_or(0);
    let pw = powers(arg, n);
    let mut acc = Polynomial::zero(arg.mode());
    for (m, c) in p.terms() {
        let e = match v {
            Var::X => m.x,
            Var::Y => m.y,
        };
        acc = &acc + &pw[e as usize].scale(c);
    }
    acc
}

/// An ordered factor list; `factors[0]` is applied first, so `[f1, ..., fn]`
/// denotes `fn ∘ ... ∘ f1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub mode: FieldMode,
}

impl Decomposition {
    pub fn new(factors: Vec<Factor>, mode: FieldMode) -> Self {
        Decomposition { factors, mode }
    }

    /// Whole decomposition applied after `inner`, i.e. `recompose(self) ∘ inner`.
    pub fn apply_after(&self, inner: &PolyMap) -> PolyMap {
        self.factors.iter().fold(inner.clone(), |m, f| f.apply_after(&m))
    }

    /// Factor list of the inverse map.
    pub fn inverse(&self) -> Decomposition {
        Decomposition {
            factors: self.factors.iter().rev().map(Factor::inverse).collect(),
            mode: self.mode,
        }
    }

    pub fn jacobian_const(&self) -> Coeff {
        self.factors.iter().fold(Coeff::one(), |acc, f| &acc * &f.jacobian_const())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            Factor::Affine(a) => {
                let x = |c: &Coeff| c.to_exact_string();
                m.serialize_entry("type", "affine")?;
                m.serialize_entry("matrix", &[[x(&a.a), x(&a.b)], [x(&a.c), x(&a.d)]])?;
                m.serialize_entry("shift", &[x(&a.e), x(&a.f)])?;
            }
            Factor::TriangularX(p) => {
                m.serialize_entry("type", "triangular")?;
                m.serialize_entry("axis", "x")?;
                m.serialize_entry("poly", &p.to_string())?;
            }
            Factor::TriangularY(q) => {
                m.serialize_entry("type", "triangular")?;
                m.serialize_entry("axis", "y")?;
                m.serialize_entry("poly", &q.to_string())?;
            }
        }
        m.end()
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Affine(a) => write!(
                f,
                "affine [[{}, {}], [{}, {}]] + [{}, {}]",
                a.a, a.b, a.c, a.d, a.e, a.f
            ),
            Factor::TriangularX(p) => write!(f, "(x + {p}, y)"),
            Factor::TriangularY(q) => write!(f, "(x, y + {q})"),
        }
    }
}

/// Why a map was not decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectionReason {
    NonConstantJacobian,
    ZeroJacobian,
    DegreeNotDivisible,
    LeadingFormMismatch,
    SingularAffineTail,
    DegenerateComponent,
}

impl fmt::Display for RejectionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RejectionReason::NonConstantJacobian => "non_constant_jacobian",
            RejectionReason::ZeroJacobian => "zero_jacobian",
            RejectionReason::DegreeNotDivisible => "degree_not_divisible",
            RejectionReason::LeadingFormMismatch => "leading_form_mismatch",
            RejectionReason::SingularAffineTail => "singular_affine_tail",
            RejectionReason::DegenerateComponent => "degenerate_component",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectionDetail {
    Poly(Polynomial),
    Degrees(u32, u32),
}

impl fmt::Display for RejectionDetail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectionDetail::Poly(p) => write!(f, "{p}"),
            RejectionDetail::Degrees(a, b) => write!(f, "degrees ({a}, {b})"),
        }
    }
}

/// Machine-checkable evidence that a map is not (shown to be) tame.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason}: {detail}")]
pub struct RejectionEvidence {
    pub reason: RejectionReason,
    pub detail: RejectionDetail,
}

impl RejectionEvidence {
    fn poly(reason: RejectionReason, p: Polynomial) -> Self {
        RejectionEvidence { reason, detail: RejectionDetail::Poly(p) }
    }

    /// Re-derives `reason` from `detail`; true when they agree.
    pub fn is_consistent(&self) -> bool {
        match (&self.reason, &self.detail) {
            (RejectionReason::NonConstantJacobian, RejectionDetail::Poly(j)) => !j.is_constant(),
            (RejectionReason::ZeroJacobian, RejectionDetail::Poly(j)) => j.is_zero(),
            (RejectionReason::DegreeNotDivisible, RejectionDetail::Degrees(a, b)) => {
                *b == 0 || a % b != 0
            }
            (RejectionReason::DegenerateComponent, RejectionDetail::Poly(p)) => p.is_constant(),
            (RejectionReason::LeadingFormMismatch, RejectionDetail::Poly(p)) => !p.is_zero(),
            (RejectionReason::SingularAffineTail, RejectionDetail::Poly(p)) => p.is_constant(),
            _ => false,
        }
    }
}

impl Serialize for RejectionEvidence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("reason", &self.reason)?;
        match &self.detail {
            RejectionDetail::Poly(p) => m.serialize_entry("detail", &p.to_string())?,
            RejectionDetail::Degrees(a, b) => m.serialize_entry("detail", &[a, b])?,
        }
        m.end()
    }
}
