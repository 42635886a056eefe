//! The contact exponent between two curves and the family it determines.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::puiseux::roots::derivative;
use crate::puiseux::{BranchSet, FaceData, Order, ParamSeries, PuiseuxError, PuiseuxSeries};

/// `min ord(u_i - v_j)` over every root `u_i` of the first set and `v_j` of
/// the second, with the first minimizing pair `(i, j)`.
///
/// Roots are enumerated class by class, each class in conjugate order, so
/// for single-class sets `i` and `j` are conjugate indices. Coefficients that
/// agree to relative `tol` count as equal.
pub fn compute_theta(us: &BranchSet, vs: &BranchSet, tol: f64) -> Result<(Order, u32, u32), PuiseuxError> {
    let ur = us.all_roots();
    let vr = vs.all_roots();
    let mut best: Option<(Order, u32, u32)> = None;
    for (i, u) in ur.iter().enumerate() {
        for (j, v) in vr.iter().enumerate() {
            let o = u.difference(v, tol).ord_at_infinity()?;
            if best.is_none_or(|b| o < b.0) {
                best = Some((o, i as u32, j as u32));
            }
        }
    }
    best.ok_or(PuiseuxError::ConstantInY)
}

/// Keeps the terms of `u` above `theta` and puts the parameter at `x^theta`.
pub fn build_phi(u: &PuiseuxSeries, theta: Rational64) -> Result<ParamSeries, PuiseuxError> {
    if u.trunc_ord().is_some_and(|t| t >= theta) {
        return Err(PuiseuxError::InsufficientTruncation { exponent: theta, size: f64::NAN });
    }
    let one = Rational64::from_integer(1);
    let kept: Vec<(Rational64, Complex64)> = u.terms().iter().filter(|t| t.0 > theta).copied().collect();
    if let Some(t) = kept.iter().find(|t| t.0 > one) {
        return Err(PuiseuxError::NumericBreakdown { detail: format!("term x^({}) lies above x^1", t.0) });
    }
    // The lcm of reduced denominators is already the smallest grid, so the
    // family comes out normalized.
    let grid = kept.iter().fold(*theta.denom(), |g, t| g.lcm(t.0.denom()));
    let slot = |e: Rational64| ((one - e) * grid).to_integer();
    let n = slot(theta);
    let mut coeffs = vec![Complex64::zero(); n.max(0) as usize];
    for (e, c) in &kept {
        coeffs[slot(*e) as usize] = *c;
    }
    ParamSeries::new(grid as u32, n, coeffs)
}

/// `a P dQ/dxi - b Q dP/dxi` on ascending coefficient vectors.
pub fn j_phi(p: &FaceData, q: &FaceData) -> Vec<Complex64> {
    let mul = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
        if x.is_empty() || y.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Complex64::zero(); x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let left = mul(&p.face_poly, &derivative(&q.face_poly));
    let right = mul(&q.face_poly, &derivative(&p.face_poly));
    let len = left.len().max(right.len()).max(1);
    (0..len)
        .map(|k| {
            let l = left.get(k).copied().unwrap_or_default();
            let r = right.get(k).copied().unwrap_or_default();
            l * p.a as f64 - r * q.a as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }
    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }
    fn face(a: i64, p: Vec<Complex64>) -> FaceData {
        FaceData { a, face_poly: p, tail_bound: r(0, 1) }
    }

    #[test]
    fn shear_pair_theta() {
        let us = BranchSet { branches: vec![PuiseuxSeries::monomial(c(0.0, 1.0), r(1, 2))] };
        let vs = BranchSet { branches: vec![PuiseuxSeries::zero_exact()] };
        assert_eq!(compute_theta(&us, &vs, 1e-9).unwrap(), (Order::Finite(r(1, 2)), 0, 0));
    }

    #[test]
    fn cancelling_leads() {
        let us = BranchSet { branches: vec![PuiseuxSeries::monomial(c(1.0, 0.0), r(1, 1))] };
        let v = PuiseuxSeries::new(vec![(r(1, 1), c(1.0, 0.0)), (r(-1, 1), c(1.0, 0.0))], None);
        let vs = BranchSet { branches: vec![v] };
        assert_eq!(compute_theta(&us, &vs, 1e-9).unwrap().0, Order::Finite(r(-1, 1)));
        let same = BranchSet { branches: vec![PuiseuxSeries::monomial(c(1.0, 0.0), r(1, 1))] };
        assert_eq!(compute_theta(&us, &same, 1e-9).unwrap().0, Order::NegInfinity);
    }

    #[test]
    fn phi_examples() {
        let phi = build_phi(&PuiseuxSeries::monomial(c(0.0, 1.0), r(1, 2)), r(1, 2)).unwrap();
        assert_eq!((phi.m_phi(), phi.n_phi(), phi.coeffs().len()), (2, 1, 1));
        assert_eq!(phi.coeffs()[0], c(0.0, 0.0));

        let u = PuiseuxSeries::new(vec![(r(1, 1), c(1.0, 0.0)), (r(1, 2), c(2.0, 0.0)), (r(0, 1), c(3.0, 0.0))], None);
        let phi = build_phi(&u, r(1, 2)).unwrap();
        assert_eq!((phi.m_phi(), phi.n_phi()), (2, 1));
        assert_eq!(phi.coeffs(), &[c(1.0, 0.0)]);
        assert_eq!(phi.theta(), r(1, 2));

        // Self-comparison of x^(3/2): the slot sits above x^1.
        let phi = build_phi(&PuiseuxSeries::monomial(c(1.0, 0.0), r(3, 2)), r(3, 2)).unwrap();
        assert_eq!((phi.m_phi(), phi.n_phi(), phi.theta()), (2, -1, r(3, 2)));
    }

    #[test]
    fn integer_grid_family() {
        let u = PuiseuxSeries::new(vec![(r(1, 1), c(1.0, 0.0)), (r(-1, 1), c(1.0, 0.0))], None);
        let phi = build_phi(&u, r(-1, 1)).unwrap();
        assert_eq!((phi.m_phi(), phi.n_phi()), (1, 2));
        assert_eq!(phi.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn j_phi_examples() {
        // 2 (1 + xi^2) - xi (2 xi) = 2
        let j = j_phi(&face(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]), &face(1, vec![c(0.0, 0.0), c(1.0, 0.0)]));
        assert_eq!(j, vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let j = j_phi(&face(1, vec![c(0.0, 0.0), c(1.0, 0.0)]), &face(1, vec![c(0.0, 0.0), c(1.0, 0.0)]));
        assert!(j.iter().all(|z| z.norm() == 0.0));
        let j = j_phi(&face(2, vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]), &face(1, vec![c(0.0, 0.0), c(1.0, 0.0)]));
        assert!(j.iter().all(|z| z.norm() == 0.0));
    }
}
