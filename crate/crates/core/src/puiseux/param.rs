//! One-parameter families `phi(x, xi)` and the face polynomials they cut out.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::approx::YPoly;
use super::newton::{Expander, Node};
use super::roots::{derivative, eval, eval_scale};
use super::series::{complex_pair, ratio_pair};
use super::{EngineConfig, PuiseuxError, PuiseuxSeries};
use crate::poly::Polynomial;

/// `phi(x, xi) = sum_{k < n} c_k x^(1 - k/m) + xi x^(1 - n/m)`.
///
/// `n` may be zero or negative when the parameter slot sits at or above
/// `x^1`; then there are no fixed coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSeries {
    m_phi: u32,
    n_phi: i64,
    coeffs: Vec<Complex64>,
}

impl ParamSeries {
    /// Requires `gcd({m} u {k : c_k != 0} u {n}) = 1`, i.e. that `m` is the
    /// smallest grid carrying every exponent.
    pub fn new(m_phi: u32, n_phi: i64, coeffs: Vec<Complex64>) -> Result<Self, PuiseuxError> {
        assert!(m_phi >= 1, "m_phi must be positive");
        assert_eq!(coeffs.len() as i64, n_phi.max(0), "one coefficient per slot above the parameter");
        let p = ParamSeries { m_phi, n_phi, coeffs };
        let g = p.support_gcd();
        if g != 1 {
            return Err(PuiseuxError::NotNormalized { gcd: g });
        }
        Ok(p)
    }

    pub fn m_phi(&self) -> u32 {
        self.m_phi
    }

    pub fn n_phi(&self) -> i64 {
        self.n_phi
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn exponent(&self, k: i64) -> Rational64 {
        Rational64::from_integer(1) - Rational64::new(k, self.m_phi as i64)
    }

    /// Exponent of the parameter slot.
    pub fn theta(&self) -> Rational64 {
        self.exponent(self.n_phi)
    }

    fn support_gcd(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold((self.m_phi as i64).gcd(&self.n_phi), |g, (k, _)| g.gcd(&(k as i64)))
    }

    /// Nonzero fixed terms as `(exponent, coefficient)`.
    pub fn fixed_terms(&self) -> Vec<(Rational64, Complex64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.exponent(k as i64), *c))
            .collect()
    }

    /// `phi(x, xi)` for a fixed value of the parameter.
    pub fn at(&self, xi: Complex64) -> PuiseuxSeries {
        let mut t = self.fixed_terms();
        t.push((self.theta(), xi));
        PuiseuxSeries::new(t, None)
    }
}

impl Serialize for ParamSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ParamSeries", 4)?;
        st.serialize_field("m_phi", &self.m_phi)?;
        st.serialize_field("n_phi", &self.n_phi)?;
        st.serialize_field("theta", &ratio_pair(&self.theta()))?;
        st.serialize_field("coeffs", &self.coeffs.iter().map(complex_pair).collect::<Vec<_>>())?;
        st.end()
    }
}

/// `h(x, phi(x, xi)) = x^(a/m) (face_poly(xi) + terms of order <= tail_bound)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceData {
    pub a: i64,
    /// Ascending coefficients in `xi`.
    pub face_poly: Vec<Complex64>,
    /// Exponent (in `x`) bounding the neglected lower terms.
    pub tail_bound: Rational64,
}

impl FaceData {
    pub fn eval(&self, xi: Complex64) -> Complex64 {
        eval(&self.face_poly, xi)
    }

    pub fn degree(&self) -> usize {
        self.face_poly.len().saturating_sub(1)
    }
}

impl Serialize for FaceData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FaceData", 4)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("poly", &render_xi_poly(&self.face_poly))?;
        st.serialize_field("coeffs", &self.face_poly.iter().map(complex_pair).collect::<Vec<_>>())?;
        st.serialize_field("tail_bound", &ratio_pair(&self.tail_bound))?;
        st.end()
    }
}

/// `h(x, phi_fixed + y1)` on the grid `1/m_phi`, plus the numerator of the
/// parameter exponent on that grid.
fn shifted(h: &Polynomial, phi: &ParamSeries, cfg: &EngineConfig) -> (YPoly, i64) {
    let m = phi.m_phi as i64;
    let mut poly = YPoly::from_poly(h);
    poly.regrid(m);
    for (k, c) in phi.coeffs.iter().enumerate() {
        if !c.is_zero() {
            poly = poly.shift(*c, m - k as i64, cfg.drop_tol);
        }
    }
    (poly, m - phi.n_phi)
}

fn face_of(poly: &YPoly, theta_num: i64, m: u32, tol: f64) -> Result<FaceData, PuiseuxError> {
    let tops: Vec<Option<i64>> = poly.a.iter().enumerate().map(|(j, s)| s.top(tol).map(|t| t + j as i64 * theta_num)).collect();
    let a = tops.iter().flatten().copied().max().ok_or_else(|| PuiseuxError::NumericBreakdown {
        detail: "substitution vanished identically".into(),
    })?;
    let mut face: Vec<Complex64> = poly
        .a
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let n = s.get(a - j as i64 * theta_num);
            if n.is_negligible(tol) {
                Complex64::zero()
            } else {
                n.v
            }
        })
        .collect();
    while face.last().is_some_and(|c| c.is_zero()) {
        face.pop();
    }
    Ok(FaceData { a, face_poly: face, tail_bound: Rational64::new(a - 1, m as i64) })
}

/// Substitutes `y = phi(x, xi)` into `h` and returns the top power of `x`
/// together with its coefficient polynomial in `xi`.
pub fn substitute_param(h: &Polynomial, phi: &ParamSeries, cfg: &EngineConfig) -> Result<FaceData, PuiseuxError> {
    let (poly, theta_num) = shifted(h, phi, cfg);
    face_of(&poly, theta_num, phi.m_phi, cfg.drop_tol)
}

/// The expansion `phi(x, c + lower terms)` solving `h = 0`, for a simple zero
/// `c` of the face polynomial.
pub fn lift_simple_root(
    h: &Polynomial,
    phi: &ParamSeries,
    c: Complex64,
    trunc_terms: usize,
    cfg: &EngineConfig,
) -> Result<PuiseuxSeries, PuiseuxError> {
    let (poly, theta_num) = shifted(h, phi, cfg);
    let face = face_of(&poly, theta_num, phi.m_phi, cfg.drop_tol)?;
    let h0 = &face.face_poly;
    let dh0 = derivative(h0);
    // The caller's root is only approximate; polish it, but never far enough
    // to jump to a different zero.
    let value = eval(h0, c).norm() / eval_scale(h0, c).max(f64::MIN_POSITIVE);
    if value > cfg.simple_tol.sqrt() {
        return Err(PuiseuxError::NotARoot { c, value });
    }
    let c = polish_simple(h0, &dh0, c);
    let slope = eval(&dh0, c).norm() / eval_scale(&dh0, c).max(f64::MIN_POSITIVE);
    if slope < cfg.simple_tol {
        return Err(PuiseuxError::NotSimple { c, derivative: slope });
    }

    let theta = phi.theta();
    let mut prefix = phi.fixed_terms();
    let mut poly = poly;
    let c_scale = phi.coeffs.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if c.norm() > cfg.drop_tol * c_scale {
        poly = poly.shift(c, theta_num, cfg.drop_tol);
        prefix.push((theta, c));
    }
    let ex = Expander { cfg, trunc_terms };
    let mut out = Vec::with_capacity(1);
    ex.expand(Node { poly, prefix, e_cur: Some(theta), k: 1 }, &mut out)?;
    Ok(out.pop().expect("a simple root yields one series"))
}

fn polish_simple(p: &[Complex64], dp: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut best = eval(p, z).norm();
    for _ in 0..20 {
        let d = eval(dp, z);
        if d.is_zero() || best == 0.0 {
            break;
        }
        let cand = z - eval(p, z) / d;
        let r = eval(p, cand).norm();
        if !cand.is_finite() || r >= best {
            break;
        }
        z = cand;
        best = r;
    }
    z
}

/// Renders ascending `xi` coefficients as `"c*xi^k + ..."`, highest power first.
pub fn render_xi_poly(p: &[Complex64]) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = fmt_rounded(*c);
        let mono = match k {
            0 => String::new(),
            1 => "xi".to_string(),
            _ => format!("xi^{k}"),
        };
        parts.push(match (coef.as_str(), k) {
            (s, 0) => s.to_string(),
            ("1", _) => mono,
            ("-1", _) => format!("-{mono}"),
            (s, _) => format!("{s}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn round12(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let mag = 10f64.powi(11 - v.abs().log10().floor() as i32);
    let r = (v * mag).round() / mag;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Complex number rounded to 12 significant digits, dropping a part that is
/// negligible next to the other.
pub fn fmt_rounded(c: Complex64) -> String {
    let scale = c.norm();
    let re = if c.re.abs() <= 1e-12 * scale { 0.0 } else { round12(c.re) };
    let im = if c.im.abs() <= 1e-12 * scale { 0.0 } else { round12(c.im) };
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) if im == 1.0 => "i".into(),
        (true, false) if im == -1.0 => "-i".into(),
        (true, false) => format!("{im}i"),
        (false, false) => format!("({re} {} {}i)", if im < 0.0 { '-' } else { '+' }, im.abs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldMode;
    use crate::text::parse_poly;

    fn h(s: &str) -> Polynomial {
        parse_poly(s, FieldMode::Rational).unwrap()
    }
    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }
    fn close_poly(p: &[Complex64], q: &[Complex64]) -> bool {
        p.len() == q.len() && p.iter().zip(q).all(|(a, b)| (a - b).norm() < 1e-12)
    }

    #[test]
    fn normalization_gate() {
        assert!(ParamSeries::new(2, 1, vec![c(0.0, 0.0)]).is_ok());
        assert!(ParamSeries::new(1, 0, vec![]).is_ok());
        assert!(ParamSeries::new(1, 2, vec![c(1.0, 0.0), c(0.0, 0.0)]).is_ok());
        // x + xi x^0 written on the grid 1/2.
        assert!(matches!(ParamSeries::new(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0)]), Err(PuiseuxError::NotNormalized { gcd: 2 })));
        let p = ParamSeries::new(2, 2, vec![c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(p.theta(), Rational64::from_integer(0));
        assert_eq!(p.fixed_terms(), vec![(Rational64::new(1, 2), c(0.0, 1.0))]);
    }

    #[test]
    fn cusp_face() {
        // y^2 - x^3 at y = xi x^(3/2): x^3 (xi^2 - 1).
        let phi = ParamSeries::new(2, -1, vec![]).unwrap();
        let f = substitute_param(&h("y^2 - x^3"), &phi, &EngineConfig::default()).unwrap();
        assert_eq!(Rational64::new(f.a, 2), Rational64::from_integer(3));
        assert!(close_poly(&f.face_poly, &[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]));
    }

    #[test]
    fn shear_faces() {
        let phi = ParamSeries::new(2, 1, vec![c(0.0, 0.0)]).unwrap();
        let cfg = EngineConfig::default();
        let p = substitute_param(&h("x + y^2"), &phi, &cfg).unwrap();
        assert_eq!(p.a, 2);
        assert!(close_poly(&p.face_poly, &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]));
        let q = substitute_param(&h("y"), &phi, &cfg).unwrap();
        assert_eq!(q.a, 1);
        assert!(close_poly(&q.face_poly, &[c(0.0, 0.0), c(1.0, 0.0)]));
        assert_eq!(render_xi_poly(&p.face_poly), "xi^2 + 1");
        assert_eq!(render_xi_poly(&q.face_poly), "xi");
    }

    #[test]
    fn lifts() {
        let cfg = EngineConfig::default();
        let cusp = ParamSeries::new(2, -1, vec![]).unwrap();
        let u = lift_simple_root(&h("y^2 - x^3"), &cusp, c(1.0, 0.0), 10, &cfg).unwrap();
        assert!(u.is_exact());
        assert_eq!(u.terms(), &[(Rational64::new(3, 2), c(1.0, 0.0))]);

        let phi = ParamSeries::new(2, 1, vec![c(0.0, 0.0)]).unwrap();
        let u = lift_simple_root(&h("x + y^2"), &phi, c(0.0, 1.0), 10, &cfg).unwrap();
        assert_eq!(u.multiplicity(), 2);
        assert!((u.coeff_at(Rational64::new(1, 2)) - c(0.0, 1.0)).norm() < 1e-14);
        assert_eq!(u.terms().len(), 1);

        let v = lift_simple_root(&h("y"), &phi, c(0.0, 0.0), 10, &cfg).unwrap();
        assert!(v.terms().is_empty());
        assert_eq!(v.multiplicity(), 1);
    }

    #[test]
    fn lift_refuses_double_root() {
        // y^2 at y = xi x: face xi^2 has a double zero at 0.
        let phi = ParamSeries::new(1, 0, vec![]).unwrap();
        let e = lift_simple_root(&h("y^2"), &phi, c(0.0, 0.0), 10, &EngineConfig::default()).unwrap_err();
        assert!(matches!(e, PuiseuxError::NotSimple { .. }));
        let e = lift_simple_root(&h("y^2 - x^2"), &phi, c(0.5, 0.0), 10, &EngineConfig::default()).unwrap_err();
        assert!(matches!(e, PuiseuxError::NotARoot { .. }));
    }

    #[test]
    fn rounding_for_display() {
        assert_eq!(fmt_rounded(c(0.9999999999999998, 1e-17)), "1");
        assert_eq!(fmt_rounded(c(-0.5, 2.0)), "(-0.5 + 2i)");
        assert_eq!(fmt_rounded(c(0.0, -1.0)), "-i");
    }
}
