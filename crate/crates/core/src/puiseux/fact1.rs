//! Rebuilding a one-branch curve from a single expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use super::param::fmt_rounded;
use super::{EngineConfig, PuiseuxError, PuiseuxSeries};
use crate::poly::{Monomial, Polynomial};

/// Polynomial in `x, y` with double-precision complex coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ApproxPoly {
    terms: BTreeMap<Monomial, Complex64>,
}

impl ApproxPoly {
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Complex64 {
        self.terms.get(&Monomial::new(i, j)).copied().unwrap_or_default()
    }

    /// Largest coefficient discrepancy against `h`, relative to the largest
    /// coefficient of `h`.
    pub fn relative_error(&self, h: &Polynomial) -> f64 {
        let exact: BTreeMap<Monomial, Complex64> = h.terms().map(|(m, c)| (m, c.to_complex())).collect();
        let scale = exact.values().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let keys: std::collections::BTreeSet<Monomial> = exact.keys().chain(self.terms.keys()).copied().collect();
        keys.into_iter()
            .map(|m| (exact.get(&m).copied().unwrap_or_default() - self.terms.get(&m).copied().unwrap_or_default()).norm())
            .fold(0.0, f64::max)
            / scale
    }
}

impl fmt::Display for ApproxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let text = fmt_rounded(*c);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts = Vec::new();
            if body != "1" || (m.x == 0 && m.y == 0) {
                parts.push(body);
            }
            for (v, e) in [("x", m.x), ("y", m.y)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// Coefficient value together with the magnitude of what was summed into it.
type Ser = BTreeMap<Rational64, (Complex64, f64)>;

/// `prod_i (y - conjugate(u, i))` over the `d` conjugates of `u`.
///
/// Fails if `u` is not truncated deeply enough for every exponent `>= 0` of
/// the product to be determined, or if a fractional power survives.
pub fn fact1_product(u: &PuiseuxSeries, d: u32, cfg: &EngineConfig) -> Result<ApproxPoly, PuiseuxError> {
    if u.ram() != d {
        return Err(PuiseuxError::RamMismatch { ram: u.ram(), d });
    }
    let e0 = u.terms().first().map_or(Rational64::zero(), |t| t.0.max(Rational64::zero()));
    let dd = Rational64::from_integer(d as i64);
    if let Some(t) = u.trunc_ord() {
        let worst = t + (dd - 1) * e0;
        if !worst.is_negative() {
            return Err(PuiseuxError::InsufficientTruncation { exponent: worst, size: f64::NAN });
        }
    }

    // coeffs[j] multiplies y^j.
    let mut coeffs: Vec<Ser> = vec![BTreeMap::from([(Rational64::zero(), (Complex64::new(1.0, 0.0), 1.0))])];
    for (i, w) in u.conjugates().into_iter().enumerate() {
        let remaining = dd - (i as i64 + 1);
        let keep = |s: &Rational64| *s + remaining * e0 >= Rational64::zero();
        let mut next: Vec<Ser> = vec![BTreeMap::new(); coeffs.len() + 1];
        for (j, ser) in coeffs.iter().enumerate() {
            for (s, (v, mag)) in ser {
                let slot = next[j + 1].entry(*s).or_insert((Complex64::zero(), 0.0));
                slot.0 += v;
                slot.1 += mag;
                for (e, c) in w.terms() {
                    let s2 = *s + e;
                    if !keep(&s2) {
                        continue;
                    }
                    let slot = next[j].entry(s2).or_insert((Complex64::zero(), 0.0));
                    slot.0 -= v * c;
                    slot.1 += mag * c.norm();
                }
            }
        }
        coeffs = next;
    }

    let mut out = ApproxPoly::default();
    for (j, ser) in coeffs.iter().enumerate() {
        for (s, (v, mag)) in ser {
            if s.is_negative() || v.norm() <= cfg.drop_tol * mag {
                continue;
            }
            if !s.is_integer() {
                if v.norm() > 1e-9 * mag {
                    return Err(PuiseuxError::InsufficientTruncation { exponent: *s, size: v.norm() });
                }
                continue;
            }
            out.terms.insert(Monomial::new(s.to_integer() as u32, j as u32), *v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldMode;
    use crate::text::parse_poly;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn cusp_rebuilds() {
        let u = PuiseuxSeries::monomial(Complex64::new(1.0, 0.0), r(3, 2));
        let p = fact1_product(&u, 2, &EngineConfig::default()).unwrap();
        let h = parse_poly("y^2 - x^3", FieldMode::Rational).unwrap();
        assert!(p.relative_error(&h) < 1e-12);
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn shear_rebuilds() {
        let u = PuiseuxSeries::monomial(Complex64::new(0.0, 1.0), r(1, 2));
        let p = fact1_product(&u, 2, &EngineConfig::default()).unwrap();
        let h = parse_poly("y^2 + x", FieldMode::Rational).unwrap();
        assert!(p.relative_error(&h) < 1e-12);
        assert_eq!(p.to_string(), "y^2 + x");
    }

    #[test]
    fn line_rebuilds() {
        let u = PuiseuxSeries::monomial(Complex64::new(1.0, 0.0), r(1, 1));
        let p = fact1_product(&u, 1, &EngineConfig::default()).unwrap();
        assert!((p.coeff(0, 1) - 1.0).norm() < 1e-15);
        assert!((p.coeff(1, 0) + 1.0).norm() < 1e-15);
    }

    #[test]
    fn shallow_truncation_refused() {
        let u = PuiseuxSeries::new(vec![(r(1, 2), Complex64::new(1.0, 0.0))], Some(r(-1, 2)));
        assert!(matches!(
            fact1_product(&u, 2, &EngineConfig::default()),
            Err(PuiseuxError::InsufficientTruncation { .. })
        ));
        assert_eq!(
            fact1_product(&u, 3, &EngineConfig::default()),
            Err(PuiseuxError::RamMismatch { ram: 2, d: 3 })
        );
    }
}
