//! Sparse bivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{Coeff, FieldMode};
use crate::error::PolyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Exponent pair `x^x * y^y`.
///
/// Ordered for display: higher total degree first, then higher power of `y`.
/// A `BTreeMap<Monomial, _>` therefore iterates leading terms first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    fn mul(self, o: Monomial) -> Monomial {
        Monomial { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (other.degree(), other.y).cmp(&(self.degree(), self.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree; the zero polynomial sits below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `x, y`. No stored coefficient is ever zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
    mode: FieldMode,
}

impl Polynomial {
    pub fn zero(mode: FieldMode) -> Self {
        Polynomial { terms: BTreeMap::new(), mode }
    }

    pub fn one(mode: FieldMode) -> Self {
        Polynomial::constant(Coeff::one(), mode)
    }

    pub fn constant(c: Coeff, mode: FieldMode) -> Self {
        Polynomial::monomial(c, 0, 0, mode)
    }

    pub fn x(mode: FieldMode) -> Self {
        Polynomial::monomial(Coeff::one(), 1, 0, mode)
    }

    pub fn y(mode: FieldMode) -> Self {
        Polynomial::monomial(Coeff::one(), 0, 1, mode)
    }

    pub fn var(v: Var, mode: FieldMode) -> Self {
        match v {
            Var::X => Polynomial::x(mode),
            Var::Y => Polynomial::y(mode),
        }
    }

    /// `c * x^i * y^j`. Panics if an imaginary `c` is given in rational mode.
    pub fn monomial(c: Coeff, i: u32, j: u32, mode: FieldMode) -> Self {
        assert!(
            mode == FieldMode::Gaussian || c.is_real(),
            "imaginary coefficient in rational field mode"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        Polynomial { terms, mode }
    }

    /// Builds from `(i, j, c)` triples, summing repeated exponents.
    pub fn from_terms<I>(terms: I, mode: FieldMode) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (u32, u32, Coeff)>,
    {
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (i, j, c) in terms {
            if mode == FieldMode::Rational && !c.is_real() {
                return Err(PolyError::ImaginaryInRationalMode);
            }
            *map.entry(Monomial::new(i, j)).or_insert_with(Coeff::zero) += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial { terms: map, mode })
    }

    /// Convenience for tests and fixtures: integer coefficients.
    pub fn from_int_terms(terms: &[(i64, u32, u32)], mode: FieldMode) -> Self {
        Polynomial::from_terms(terms.iter().map(|&(c, i, j)| (i, j, Coeff::from_int(c))), mode)
            .expect("integer coefficients are real")
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    /// Reinterprets in another field mode. Fails when moving imaginary
    /// coefficients into rational mode.
    pub fn with_mode(&self, mode: FieldMode) -> Result<Self, PolyError> {
        if mode == FieldMode::Rational && self.terms.values().any(|c| !c.is_real()) {
            return Err(PolyError::ImaginaryInRationalMode);
        }
        Ok(Polynomial { terms: self.terms.clone(), mode })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded-lex, `y` before `x`) order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Coeff)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Coeff {
        self.terms.get(&Monomial::new(i, j)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(0, 0)
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next() {
            Some(m) => Degree::Finite(m.degree()),
            None => Degree::NegInfinity,
        }
    }

    pub fn degree_in(&self, v: Var) -> Degree {
        self.terms
            .keys()
            .map(|m| match v {
                Var::X => m.x,
                Var::Y => m.y,
            })
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Top-degree homogeneous part.
    pub fn leading_form(&self) -> Result<Polynomial, PolyError> {
        let d = self.degree().finite().ok_or(PolyError::ZeroPolynomial)?;
        let terms = self
            .terms
            .iter()
            .take_while(|(m, _)| m.degree() == d)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Ok(Polynomial { terms, mode: self.mode })
    }

    /// True when the polynomial involves only `v` (constants included).
    pub fn is_univariate_in(&self, v: Var) -> bool {
        self.terms.keys().all(|m| match v {
            Var::X => m.y == 0,
            Var::Y => m.x == 0,
        })
    }

    /// `y^deg + lower terms in y`, with `deg` the total degree.
    pub fn is_monic_in_y(&self) -> bool {
        match self.degree() {
            Degree::Finite(d) => self.terms.get(&Monomial::new(0, d)).is_some_and(Coeff::is_one),
            Degree::NegInfinity => false,
        }
    }

    pub fn partial(&self, v: Var) -> Polynomial {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, dm) = match v {
                Var::X => (m.x, Monomial { x: m.x.wrapping_sub(1), y: m.y }),
                Var::Y => (m.y, Monomial { x: m.x, y: m.y.wrapping_sub(1) }),
            };
            if e > 0 {
                out.insert(dm, c * &Coeff::from_int(e as i64));
            }
        }
        Polynomial { terms: out, mode: self.mode }
    }

    fn check_mode(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch { left: self.mode, right: other.mode })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_mode(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, c);
        }
        Ok(Polynomial { terms, mode: self.mode })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_mode(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, &-c);
        }
        Ok(Polynomial { terms, mode: self.mode })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_mode(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.mode));
        }
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(*mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial { terms, mode: self.mode })
    }

    /// Scalar multiple. In rational mode the scalar must be real.
    pub fn scale(&self, c: &Coeff) -> Polynomial {
        assert!(
            self.mode == FieldMode::Gaussian || c.is_real(),
            "imaginary scalar in rational field mode"
        );
        if c.is_zero() {
            return Polynomial::zero(self.mode);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        Polynomial { terms, mode: self.mode }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.mode);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &Coeff, y: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            acc += &(c * &(&x.pow(m.x) * &y.pow(m.y)));
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex() * x.powu(m.x) * y.powu(m.y))
            .sum()
    }

    /// `self(xs, ys)`: substitutes polynomials for both variables.
    pub fn substitute(&self, xs: &Polynomial, ys: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_mode(xs)?;
        self.check_mode(ys)?;
        let max_x = self.degree_in(Var::X).finite().unwrap_or(0);
        let max_y = self.degree_in(Var::Y).finite().unwrap_or(0);
        let xp = powers(xs, max_x);
        let yp = powers(ys, max_y);
        // Horner in x over y-polynomial coefficients keeps intermediate products small.
        let mut by_x: BTreeMap<u32, Vec<(u32, &Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_x.entry(m.x).or_default().push((m.y, c));
        }
        let mut acc = Polynomial::zero(self.mode);
        for (i, row) in by_x {
            let mut inner = Polynomial::zero(self.mode);
            for (j, c) in row {
                inner = &inner + &yp[j as usize].scale(c);
            }
            acc = &acc + &(&inner * &xp[i as usize]);
        }
        Ok(acc)
    }

    /// `self(x + lambda*y, y)`, computed by binomial expansion.
    pub fn shear_x(&self, lambda: &Coeff) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut binom = BigInt::one();
            let mut lam_pow = Coeff::one();
            for k in 0..=m.x {
                let coef = &(c * &lam_pow) * &Coeff::real(BigRational::from_integer(binom.clone()));
                add_term(&mut terms, Monomial::new(m.x - k, m.y + k), &coef);
                binom = binom * BigInt::from(m.x - k) / BigInt::from(k + 1);
                lam_pow = &lam_pow * lambda;
            }
        }
        Polynomial { terms, mode: self.mode }
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: &Coeff) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

/// `[p^0, p^1, ..., p^n]`.
pub(crate) fn powers(p: &Polynomial, n: u32) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Polynomial::one(p.mode));
    for k in 1..=n as usize {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics if the field modes differ; use the `checked_*` form to recover.
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("field mode mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Polynomial { terms, mode: self.mode }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn fmt_monomial(m: Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("x", m.x), ("y", m.y)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: graded-lex order, `y` before `x`, explicit `^` powers,
/// e.g. `y^2 + x`, `x^2 - 3/2*x*y + 1`. Parses back to the same value.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            // A purely negative real or purely negative imaginary coefficient
            // is written with a leading minus; mixed ones stay parenthesized.
            let negative = if c.is_real() {
                c.re() < &BigRational::zero()
            } else {
                c.re().is_zero() && c.im() < &BigRational::zero()
            };
            let mag = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                fmt_monomial(*m, f)?;
            } else {
                write!(f, "{mag}*")?;
                fmt_monomial(*m, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldMode = FieldMode::Rational;

    fn x() -> Polynomial {
        Polynomial::x(Q)
    }
    fn y() -> Polynomial {
        Polynomial::y(Q)
    }

    #[test]
    fn ring_op_examples() {
        assert_eq!(&(&x() + &y()) + &(&x() - &y()), x().scale(&Coeff::from_int(2)));
        assert_eq!(&(&y() - &x()) * &(&y() + &x()), &y().pow(2) - &x().pow(2));
        let sq = (&x() + &y()).pow(2);
        assert_eq!(sq, Polynomial::from_int_terms(&[(1, 2, 0), (2, 1, 1), (1, 0, 2)], Q));
    }

    #[test]
    fn degrees() {
        assert_eq!((&x() + &y().pow(2)).degree(), Degree::Finite(2));
        assert_eq!(Polynomial::constant(Coeff::from_int(7), Q).degree(), Degree::Finite(0));
        assert_eq!(Polynomial::zero(Q).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn leading_forms() {
        assert_eq!((&x() + &y().pow(2)).leading_form().unwrap(), y().pow(2));
        let p = Polynomial::from_int_terms(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (1, 1, 0), (3, 0, 0)], Q);
        assert_eq!(p.leading_form().unwrap(), (&x() + &y()).pow(2));
        let cube = &y() + &(&x() + &y().pow(2)).pow(3);
        assert_eq!(cube.leading_form().unwrap(), y().pow(6));
        assert!(Polynomial::zero(Q).leading_form().is_err());
    }

    #[test]
    fn partials() {
        let p = &x() + &y().pow(2);
        assert_eq!(p.partial(Var::Y), y().scale(&Coeff::from_int(2)));
        assert_eq!(p.partial(Var::X), Polynomial::one(Q));
        assert!(Polynomial::constant(Coeff::from_int(5), Q).partial(Var::X).is_zero());
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let g = Polynomial::x(FieldMode::Gaussian);
        assert!(matches!(x().checked_add(&g), Err(PolyError::FieldMismatch { .. })));
        assert!(Polynomial::from_terms([(0, 0, Coeff::i())], Q).is_err());
    }

    #[test]
    fn shear_matches_substitution() {
        let p = &(&x().pow(3) + &(&x() * &y())) - &y();
        let lam = Coeff::from_int(2);
        let direct = p
            .substitute(&(&x() + &y().scale(&lam)), &y())
            .unwrap();
        assert_eq!(p.shear_x(&lam), direct);
    }

    #[test]
    fn rendering() {
        assert_eq!((&x() + &y().pow(2)).to_string(), "y^2 + x");
        let p = Polynomial::from_terms(
            [(1, 1, Coeff::from_ratio(-3, 2)), (0, 0, Coeff::from_int(1)), (2, 0, Coeff::from_int(1))],
            Q,
        )
        .unwrap();
        assert_eq!(p.to_string(), "-3/2*x*y + x^2 + 1");
        assert_eq!((-&x()).to_string(), "-x");
        assert_eq!(Polynomial::zero(Q).to_string(), "0");
        let g = Polynomial::monomial(Coeff::i(), 0, 1, FieldMode::Gaussian);
        assert_eq!(g.to_string(), "i*y");
    }
}
