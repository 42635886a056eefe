use num_traits::Zero;

use super::{AffineMap, Decomposition, Factor, RejectionDetail, RejectionEvidence, RejectionReason};
use crate::coeff::Coeff;
use crate::map::PolyMap;
use crate::poly::{Degree, Polynomial};

/// True iff the Jacobian determinant is a nonzero constant. The Jacobian is
/// returned either way.
pub fn is_keller(f: &PolyMap) -> (bool, Polynomial) {
    let j = f.jacobian();
    (!j.is_zero() && j.is_constant(), j)
}

/// Finds `(m, c)` with `deg big = m * deg small` and
/// `leading_form(big) = c * leading_form(small)^m`, if they exist.
pub fn leading_match(big: &Polynomial, small: &Polynomial) -> Option<(u32, Coeff)> {
    let db = big.degree().finite()?;
    let ds = small.degree().finite()?;
    if ds == 0 || db < ds || db % ds != 0 {
        return None;
    }
    let m = db / ds;
    let lsm = small.leading_form().ok()?.pow(m);
    let c = leading_ratio(&big.leading_form().ok()?, &lsm)?;
    Some((m, c))
}

/// `c` with `lb = c * ls`, both homogeneous of the same degree.
fn leading_ratio(lb: &Polynomial, ls: &Polynomial) -> Option<Coeff> {
    let (mb, cb) = lb.terms().next()?;
    let (ms, cs) = ls.terms().next()?;
    if mb != ms {
        return None;
    }
    let c = cb / cs;
    (*lb == ls.scale(&c)).then_some(c)
}

/// Powers of one fixed polynomial, extended on demand.
struct PowerCache {
    base: Polynomial,
    pows: Vec<Polynomial>,
}

impl PowerCache {
    fn new(base: &Polynomial) -> Self {
        PowerCache { base: base.clone(), pows: vec![Polynomial::one(base.mode()), base.clone()] }
    }

    fn pow(&mut self, m: u32) -> &Polynomial {
        while self.pows.len() <= m as usize {
            let next = self.pows.last().expect("nonempty") * &self.base;
            self.pows.push(next);
        }
        &self.pows[m as usize]
    }
}

fn degenerate(p: &Polynomial) -> RejectionEvidence {
    RejectionEvidence::poly(RejectionReason::DegenerateComponent, p.clone())
}

fn positive_degree(p: &Polynomial) -> Result<u32, RejectionEvidence> {
    match p.degree() {
        Degree::Finite(d) if d >= 1 => Ok(d),
        _ => Err(degenerate(p)),
    }
}

/// One degree-reduction step: returns the elementary factor `g` and `g ∘ f`.
///
/// The larger component is reduced by `c` times the matching power of the
/// smaller one; ties reduce `P` by `Q`.
pub fn reduce_step(f: &PolyMap) -> Result<(Factor, PolyMap), RejectionEvidence> {
    let mut cache = None;
    step(f, &mut cache)
}

fn step(f: &PolyMap, cache: &mut Option<PowerCache>) -> Result<(Factor, PolyMap), RejectionEvidence> {
    let dp = positive_degree(&f.p)?;
    let dq = positive_degree(&f.q)?;
    let reduce_p = dp >= dq;
    let (big, small, db, ds) = if reduce_p { (&f.p, &f.q, dp, dq) } else { (&f.q, &f.p, dq, dp) };
    if db % ds != 0 {
        return Err(RejectionEvidence {
            reason: RejectionReason::DegreeNotDivisible,
            detail: RejectionDetail::Degrees(db, ds),
        });
    }
    let m = db / ds;
    if cache.as_ref().is_none_or(|c| c.base != *small) {
        *cache = Some(PowerCache::new(small));
    }
    let sm = cache.as_mut().expect("just set").pow(m);

    let lb = big.leading_form().expect("nonzero");
    let c = leading_ratio(&lb, &sm.leading_form().expect("nonzero"))
        .ok_or_else(|| RejectionEvidence::poly(RejectionReason::LeadingFormMismatch, lb.clone()))?;
    let reduced = big - &sm.scale(&c);
    positive_degree(&reduced)?;

    let mode = f.mode();
    let neg_c = -&c;
    let factor = match (reduce_p, m) {
        (true, 1) => Factor::Affine(AffineMap { b: neg_c, ..AffineMap::identity() }),
        (false, 1) => Factor::Affine(AffineMap { c: neg_c, ..AffineMap::identity() }),
        (true, _) => Factor::TriangularX(Polynomial::monomial(neg_c, 0, m, mode)),
        (false, _) => Factor::TriangularY(Polynomial::monomial(neg_c, m, 0, mode)),
    };
    let next = if reduce_p {
        PolyMap { p: reduced, q: f.q.clone() }
    } else {
        PolyMap { p: f.p.clone(), q: reduced }
    };
    Ok((factor, next))
}

/// Writes `f` as a composition of elementary factors.
///
/// The returned list starts with the affine tail and then undoes each
/// reduction step in reverse, so that `recompose(decompose(f)) == f`.
pub fn decompose(f: &PolyMap) -> Result<Decomposition, RejectionEvidence> {
    positive_degree(&f.p)?;
    positive_degree(&f.q)?;
    let (keller, j) = is_keller(f);
    if !keller {
        let reason = if j.is_zero() {
            RejectionReason::ZeroJacobian
        } else {
            RejectionReason::NonConstantJacobian
        };
        return Err(RejectionEvidence::poly(reason, j));
    }

    let mut cur = f.clone();
    let mut reducers = Vec::new();
    let mut cache = None;
    while cur.max_degree() >= 2 {
        let (g, next) = step(&cur, &mut cache)?;
        reducers.push(g);
        cur = next;
    }
    let tail = AffineMap::from_map(&cur).expect("degree <= 1");
    if tail.det().is_zero() {
        return Err(RejectionEvidence::poly(RejectionReason::SingularAffineTail, cur.jacobian()));
    }

    let mut factors = Vec::with_capacity(reducers.len() + 1);
    factors.push(Factor::Affine(tail));
    factors.extend(reducers.iter().rev().map(Factor::inverse));
    let d = Decomposition::new(factors, f.mode());
    assert_eq!(recompose(&d), *f, "decomposition does not reproduce its input");
    Ok(d)
}

/// Folds the factor list into a single map.
pub fn recompose(d: &Decomposition) -> PolyMap {
    d.apply_after(&PolyMap::identity(d.mode))
}

/// Factor list of `f^{-1}`: each factor inverted, order reversed.
pub fn invert_decomposition(f: &PolyMap) -> Result<Decomposition, RejectionEvidence> {
    Ok(decompose(f)?.inverse())
}

pub fn invert(f: &PolyMap) -> Result<PolyMap, RejectionEvidence> {
    Ok(recompose(&invert_decomposition(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldMode;

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
    fn shear() -> PolyMap {
        map(&x() + &y().pow(2), y())
    }
    fn two_shears() -> PolyMap {
        map(&x() + &y().pow(2), &y() + &(&x() + &y().pow(2)).pow(3))
    }

    #[test]
    fn keller_examples() {
        assert_eq!(is_keller(&shear()), (true, Polynomial::one(Q)));
        let (k, j) = is_keller(&map(&x() + &y().pow(2), &y() + &x().pow(2)));
        assert!(!k);
        assert_eq!(j, Polynomial::from_int_terms(&[(1, 0, 0), (-4, 1, 1)], Q));
        let (k, j) = is_keller(&map(x().pow(2), y()));
        assert!(!k);
        assert_eq!(j.to_string(), "2*x");
    }

    #[test]
    fn leading_match_examples() {
        let big = &y().pow(6) + &x();
        let small = &y().pow(2) + &x();
        assert_eq!(leading_match(&big, &small), Some((3, Coeff::from_int(1))));
        assert_eq!(leading_match(&y().pow(6), &y().pow(3)), Some((2, Coeff::from_int(1))));
        assert_eq!(leading_match(&(&x() * &y()), &y()), None);
        assert_eq!(leading_match(&y().pow(5), &y().pow(2)), None);
    }

    #[test]
    fn reduce_step_examples() {
        let (g, rest) = reduce_step(&shear()).unwrap();
        assert_eq!(g, Factor::TriangularX(-&y().pow(2)));
        assert!(rest.is_identity());

        let (g, rest) = reduce_step(&two_shears()).unwrap();
        assert_eq!(g, Factor::TriangularY(-&x().pow(3)));
        assert_eq!(rest, shear());
    }

    #[test]
    fn decompose_identity() {
        let d = decompose(&PolyMap::identity(Q)).unwrap();
        assert_eq!(d.factors, vec![Factor::Affine(AffineMap::identity())]);
    }

    #[test]
    fn decompose_two_shears_recovers_generators() {
        let d = decompose(&two_shears()).unwrap();
        assert_eq!(
            d.factors,
            vec![
                Factor::Affine(AffineMap::identity()),
                Factor::TriangularX(y().pow(2)),
                Factor::TriangularY(x().pow(3)),
            ]
        );
        assert_eq!(recompose(&d), two_shears());
    }

    #[test]
    fn rejections() {
        let e = decompose(&map(x().pow(2), y())).unwrap_err();
        assert_eq!(e.reason, RejectionReason::NonConstantJacobian);
        assert_eq!(e.detail, RejectionDetail::Poly(x().scale(&Coeff::from_int(2))));
        assert!(e.is_consistent());

        let e = decompose(&map(x(), x())).unwrap_err();
        assert_eq!(e.reason, RejectionReason::ZeroJacobian);

        let e = decompose(&map(x(), Polynomial::one(Q))).unwrap_err();
        assert_eq!(e.reason, RejectionReason::DegenerateComponent);
        assert!(e.is_consistent());
    }

    #[test]
    fn reduce_step_rejects_bad_degrees() {
        // Not Keller, but exercises the divisibility branch of a single step.
        let e = reduce_step(&map(&y().pow(3) + &x(), &y().pow(2) + &x())).unwrap_err();
        assert_eq!(e.reason, RejectionReason::DegreeNotDivisible);
        assert_eq!(e.detail, RejectionDetail::Degrees(3, 2));
        let e = reduce_step(&map(&x() * &y(), y())).unwrap_err();
        assert_eq!(e.reason, RejectionReason::LeadingFormMismatch);
    }

    #[test]
    fn recompose_examples() {
        assert!(recompose(&Decomposition::new(vec![], Q)).is_identity());
        let d = Decomposition::new(vec![Factor::TriangularX(y().pow(2))], Q);
        assert_eq!(recompose(&d), shear());
        let d = Decomposition::new(
            vec![Factor::TriangularX(y().pow(2)), Factor::TriangularY(x().pow(3))],
            Q,
        );
        assert_eq!(recompose(&d), two_shears());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&shear()).unwrap(), map(&x() - &y().pow(2), y()));
        let f = two_shears();
        let g = invert(&f).unwrap();
        // (x - (y - x^3)^2, y - x^3)
        let expected = map(&x() - &(&y() - &x().pow(3)).pow(2), &y() - &x().pow(3));
        assert_eq!(g, expected);
        assert!(g.compose(&f).unwrap().is_identity());
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(invert(&map(x().pow(2), y())).is_err());
    }

    #[test]
    fn equal_degrees_use_affine_step() {
        // (x + y^2, x + y + y^2): equal degrees, P^+ = Q^+.
        let f = map(&x() + &y().pow(2), &(&x() + &y()) + &y().pow(2));
        let d = decompose(&f).unwrap();
        assert!(d.factors.iter().any(|g| matches!(g, Factor::Affine(_))));
        assert_eq!(recompose(&d), f);
    }
}
