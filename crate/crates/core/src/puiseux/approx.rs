//! Dense fractional-power series with magnitude tracking.
//!
//! Each value carries `mag`, an upper bound on the sum of absolute values of
//! everything that was added into it. A value whose modulus is below
//! `drop_tol * mag` is indistinguishable from an exact cancellation and is
//! treated as zero.

use num_complex::Complex64;

use crate::coeff::Coeff;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Num {
    pub v: Complex64,
    pub mag: f64,
}

impl Num {
    pub fn exact(v: Complex64) -> Self {
        Num { v, mag: v.norm() }
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.v.norm() <= tol * self.mag
    }

    fn add_scaled(&mut self, f: Complex64, fabs: f64, o: &Num) {
        self.v += f * o.v;
        self.mag += fabs * o.mag;
    }
}

/// Coefficients of `x^((hi - i) / den)` for `i = 0, 1, ...`; `den` is owned
/// by the enclosing [`YPoly`].
#[derive(Debug, Clone, Default)]
pub(crate) struct XSer {
    pub hi: i64,
    pub c: Vec<Num>,
}

impl XSer {
    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    fn lo(&self) -> i64 {
        self.hi - self.c.len() as i64 + 1
    }

    pub fn get(&self, num: i64) -> Num {
        let i = self.hi - num;
        if i < 0 || i >= self.c.len() as i64 {
            Num::default()
        } else {
            self.c[i as usize]
        }
    }

    /// Numerator of the largest exponent with a non-negligible coefficient.
    pub fn top(&self, tol: f64) -> Option<i64> {
        self.c.iter().position(|n| !n.is_negligible(tol)).map(|i| self.hi - i as i64)
    }

    fn regrid(&mut self, f: i64) {
        if self.c.is_empty() {
            return;
        }
        let mut out = vec![Num::default(); (self.c.len() - 1) * f as usize + 1];
        for (i, n) in self.c.iter().enumerate() {
            out[i * f as usize] = *n;
        }
        self.hi *= f;
        self.c = out;
    }

    /// Drops negligible entries at both ends.
    fn trim(&mut self, tol: f64) {
        let Some(first) = self.c.iter().position(|n| !n.is_negligible(tol)) else {
            self.c.clear();
            return;
        };
        let last = self.c.iter().rposition(|n| !n.is_negligible(tol)).expect("nonempty");
        self.c.truncate(last + 1);
        self.c.drain(..first);
        self.hi -= first as i64;
    }
}

/// `sum_j a[j] * y^j` with coefficients in `x^(1/den)`.
#[derive(Debug, Clone)]
pub(crate) struct YPoly {
    pub den: i64,
    pub a: Vec<XSer>,
}

impl YPoly {
    /// Exact polynomial converted to floating coefficients, grid `1`.
    pub fn from_poly(h: &Polynomial) -> Self {
        let dy = h.terms().map(|(m, _)| m.y).max().unwrap_or(0) as usize;
        let mut a = vec![XSer::default(); dy + 1];
        for (j, slot) in a.iter_mut().enumerate() {
            let col: Vec<(u32, &Coeff)> = h.terms().filter(|(m, _)| m.y as usize == j).map(|(m, c)| (m.x, c)).collect();
            let Some(hi) = col.iter().map(|t| t.0).max() else { continue };
            let lo = col.iter().map(|t| t.0).min().expect("nonempty");
            let mut c = vec![Num::default(); (hi - lo + 1) as usize];
            for (i, coef) in col {
                c[(hi - i) as usize] = Num::exact(coef.to_complex());
            }
            *slot = XSer { hi: hi as i64, c };
        }
        YPoly { den: 1, a }
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// Refines the exponent grid to `den` (a multiple of the current one).
    pub fn regrid(&mut self, den: i64) {
        assert_eq!(den % self.den, 0, "grid refinement must be a multiple");
        let f = den / self.den;
        if f == 1 {
            return;
        }
        for s in &mut self.a {
            s.regrid(f);
        }
        self.den = den;
    }

    /// Taylor shift `y -> c * x^(e_num/den) + y`.
    pub fn shift(&self, c: Complex64, e_num: i64, tol: f64) -> YPoly {
        let d = self.degree();
        let mut cp = vec![Complex64::new(1.0, 0.0); d + 1];
        for s in 1..=d {
            cp[s] = cp[s - 1] * c;
        }
        let binom = binomials(d);
        let mut out = Vec::with_capacity(d + 1);
        for t in 0..=d {
            let mut hi = i64::MIN;
            let mut lo = i64::MAX;
            for j in t..=d {
                let s = &self.a[j];
                if s.is_empty() {
                    continue;
                }
                let off = (j - t) as i64 * e_num;
                hi = hi.max(s.hi + off);
                lo = lo.min(s.lo() + off);
            }
            if hi == i64::MIN {
                out.push(XSer::default());
                continue;
            }
            let mut acc = vec![Num::default(); (hi - lo + 1) as usize];
            for j in t..=d {
                let s = &self.a[j];
                if s.is_empty() {
                    continue;
                }
                let f = cp[j - t] * binom[j][t];
                let fabs = f.norm();
                let start = (hi - (s.hi + (j - t) as i64 * e_num)) as usize;
                for (i, n) in s.c.iter().enumerate() {
                    acc[start + i].add_scaled(f, fabs, n);
                }
            }
            let mut ser = XSer { hi, c: acc };
            ser.trim(tol);
            out.push(ser);
        }
        YPoly { den: self.den, a: out }
    }
}

pub(crate) fn binomials(d: usize) -> Vec<Vec<f64>> {
    let mut b = vec![vec![0.0; d + 1]; d + 1];
    for n in 0..=d {
        b[n][0] = 1.0;
        for k in 1..=n {
            b[n][k] = b[n - 1][k - 1] + if k < n { b[n - 1][k] } else { 0.0 };
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldMode;

    #[test]
    fn from_poly_layout() {
        // y^2 - x^3 + 2x
        let h = Polynomial::from_int_terms(&[(1, 0, 2), (-1, 3, 0), (2, 1, 0)], FieldMode::Rational);
        let p = YPoly::from_poly(&h);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.a[0].hi, 3);
        assert_eq!(p.a[0].get(3).v.re, -1.0);
        assert_eq!(p.a[0].get(2).v.re, 0.0);
        assert_eq!(p.a[0].get(1).v.re, 2.0);
        assert!(p.a[1].is_empty());
        assert_eq!(p.a[2].get(0).v.re, 1.0);
    }

    #[test]
    fn shift_cancels_exact_root() {
        // y^2 - x^2 shifted by y -> x + y: y^2 + 2x y, constant term cancels.
        let h = Polynomial::from_int_terms(&[(1, 0, 2), (-1, 2, 0)], FieldMode::Rational);
        let p = YPoly::from_poly(&h).shift(Complex64::new(1.0, 0.0), 1, 1e-10);
        assert!(p.a[0].is_empty());
        assert_eq!(p.a[1].top(1e-10), Some(1));
        assert_eq!(p.a[1].get(1).v.re, 2.0);
    }

    #[test]
    fn regrid_spreads_entries() {
        let h = Polynomial::from_int_terms(&[(1, 0, 1), (3, 2, 0), (5, 0, 0)], FieldMode::Rational);
        let mut p = YPoly::from_poly(&h);
        p.regrid(3);
        assert_eq!(p.a[0].hi, 6);
        assert_eq!(p.a[0].get(6).v.re, 3.0);
        assert_eq!(p.a[0].get(0).v.re, 5.0);
        assert_eq!(p.a[0].get(3).v.re, 0.0);
    }

    #[test]
    fn binomial_rows() {
        let b = binomials(4);
        assert_eq!(b[4], vec![1.0, 4.0, 6.0, 4.0, 1.0]);
    }
}
