//! Polynomial maps of the plane.

use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{Coeff, FieldMode};
use crate::error::PolyError;
use crate::poly::{Degree, Polynomial, Var};

/// `(x, y) -> (p(x, y), q(x, y))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    pub p: Polynomial,
    pub q: Polynomial,
}

impl PolyMap {
    pub fn new(p: Polynomial, q: Polynomial) -> Result<Self, PolyError> {
        if p.mode() != q.mode() {
            return Err(PolyError::FieldMismatch { left: p.mode(), right: q.mode() });
        }
        Ok(PolyMap { p, q })
    }

    pub fn identity(mode: FieldMode) -> Self {
        PolyMap { p: Polynomial::x(mode), q: Polynomial::y(mode) }
    }

    pub fn mode(&self) -> FieldMode {
        self.p.mode()
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMap::identity(self.mode())
    }

    pub fn degrees(&self) -> (Degree, Degree) {
        (self.p.degree(), self.q.degree())
    }

    /// Larger of the two component degrees; zero components count as 0.
    pub fn max_degree(&self) -> u32 {
        let d = |p: &Polynomial| p.degree().finite().unwrap_or(0);
        d(&self.p).max(d(&self.q))
    }

    pub fn swapped(&self) -> PolyMap {
        PolyMap { p: self.q.clone(), q: self.p.clone() }
    }

    /// `P_x Q_y - P_y Q_x`.
    pub fn jacobian(&self) -> Polynomial {
        let px = self.p.partial(Var::X);
        let py = self.p.partial(Var::Y);
        let qx = self.q.partial(Var::X);
        let qy = self.q.partial(Var::Y);
        &(&px * &qy) - &(&py * &qx)
    }

    /// `self ∘ inner`, i.e. `(p(inner.p, inner.q), q(inner.p, inner.q))`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, PolyError> {
        Ok(PolyMap {
            p: self.p.substitute(&inner.p, &inner.q)?,
            q: self.q.substitute(&inner.p, &inner.q)?,
        })
    }

    pub fn eval(&self, x: &Coeff, y: &Coeff) -> (Coeff, Coeff) {
        (self.p.eval(x, y), self.q.eval(x, y))
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.p, self.q)
    }
}

/// Coordinate change applied by [`monic_normalize`]: the map was replaced by
/// `(scale_p * P(x + lambda*y, y), scale_q * Q(x + lambda*y, y))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    pub lambda: u32,
    pub scale_p: Coeff,
    pub scale_q: Coeff,
}

impl LinearChange {
    pub fn is_identity(&self) -> bool {
        self.lambda == 0 && self.scale_p.is_one() && self.scale_q.is_one()
    }

    /// The coordinate substitution `(x + lambda*y, y)` alone.
    pub fn coordinate_map(&self, mode: FieldMode) -> PolyMap {
        let lam = Coeff::from_int(self.lambda as i64);
        PolyMap {
            p: &Polynomial::x(mode) + &Polynomial::y(mode).scale(&lam),
            q: Polynomial::y(mode),
        }
    }
}

/// Makes both components monic in `y` with `y`-degree equal to total degree.
///
/// Scans `lambda = 0, 1, 2, ...` for the first value where both leading forms
/// are nonzero at `(lambda, 1)`, shears `x -> x + lambda*y`, then divides each
/// component by its new `y^deg` coefficient.
pub fn monic_normalize(f: &PolyMap) -> Result<(PolyMap, LinearChange), PolyError> {
    let lp = f.p.leading_form()?;
    let lq = f.q.leading_form()?;
    let one = Coeff::one();
    let mut lambda = 0u32;
    let (vp, vq) = loop {
        let lam = Coeff::from_int(lambda as i64);
        let vp = lp.eval(&lam, &one);
        let vq = lq.eval(&lam, &one);
        if !vp.is_zero() && !vq.is_zero() {
            break (vp, vq);
        }
        lambda += 1;
    };
    let lam = Coeff::from_int(lambda as i64);
    let scale_p = vp.inv().expect("nonzero");
    let scale_q = vq.inv().expect("nonzero");
    let p = f.p.shear_x(&lam).scale(&scale_p);
    let q = f.q.shear_x(&lam).scale(&scale_q);
    Ok((PolyMap { p, q }, LinearChange { lambda, scale_p, scale_q }))
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
    fn map(p: Polynomial, q: Polynomial) -> PolyMap {
        PolyMap::new(p, q).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let shear = map(&x() + &y().pow(2), y());
        assert_eq!(shear.jacobian(), Polynomial::one(Q));
        let two = map(&x() + &y().pow(2), &y() + &x().pow(2));
        // 1 - 4xy, expanded by hand: P_x Q_y - P_y Q_x = 1*1 - 2y*2x.
        let expected = Polynomial::from_int_terms(&[(1, 0, 0), (-4, 1, 1)], Q);
        assert_eq!(two.jacobian(), expected);
        assert_eq!(map(x().pow(2), y()).jacobian(), x().scale(&Coeff::from_int(2)));
    }

    #[test]
    fn compose_examples() {
        let outer = map(x(), &y() + &x().pow(3));
        let inner = map(&x() + &y().pow(2), y());
        let got = outer.compose(&inner).unwrap();
        assert_eq!(got, map(&x() + &y().pow(2), &y() + &(&x() + &y().pow(2)).pow(3)));
        assert_eq!(inner.compose(&PolyMap::identity(Q)).unwrap(), inner);
    }

    #[test]
    fn chain_rule_on_fixed_pair() {
        let f = map(&x() + &y().pow(3), &y() - &x().pow(2));
        let g = map(&x().scale(&Coeff::from_int(2)) + &y(), &y() + &x().pow(2));
        let lhs = f.compose(&g).unwrap().jacobian();
        let rhs = &f.jacobian().substitute(&g.p, &g.q).unwrap() * &g.jacobian();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_examples() {
        let shear = map(&x() + &y().pow(2), y());
        let (n, l) = monic_normalize(&shear).unwrap();
        assert_eq!(l.lambda, 0);
        assert_eq!(n, shear);

        let id = PolyMap::identity(Q);
        let (n, l) = monic_normalize(&id).unwrap();
        assert_eq!(l.lambda, 1);
        assert_eq!(n, map(&x() + &y(), y()));
        assert!(n.p.is_monic_in_y() && n.q.is_monic_in_y());
    }

    #[test]
    fn normalize_scales_leading_coefficients() {
        let f = map(&y().pow(2).scale(&Coeff::from_int(3)) + &x(), y().scale(&Coeff::from_int(-2)));
        let (n, l) = monic_normalize(&f).unwrap();
        assert_eq!(l.lambda, 0);
        assert!(n.p.is_monic_in_y() && n.q.is_monic_in_y());
        assert_eq!(l.scale_p, Coeff::from_ratio(1, 3));
    }
}
