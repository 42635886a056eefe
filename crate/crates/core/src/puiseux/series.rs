//! Truncated Puiseux series at infinity and sets of branches.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::PuiseuxError;

/// Order at infinity of a series: its largest exponent, or `-inf` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    NegInfinity,
    Finite(Rational64),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::NegInfinity => f.write_str("-inf"),
            Order::Finite(e) => write!(f, "{e}"),
        }
    }
}

/// `y = sum c_e x^e` over finitely many descending rational exponents.
///
/// `trunc_ord = Some(t)` means every exponent `> t` is accounted for (either
/// stored or known to vanish) and nothing is known at or below `t`. `None`
/// marks a finite series that solves its equation exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxSeries {
    ram: u32,
    terms: Vec<(Rational64, Complex64)>,
    trunc_ord: Option<Rational64>,
}

fn lcm_of_denominators<'a>(exps: impl Iterator<Item = &'a Rational64>) -> i64 {
    exps.fold(1i64, |m, e| m.lcm(e.denom()))
}

impl PuiseuxSeries {
    /// Sorts terms descending and drops exact zeros; `ram` is the lcm of the
    /// exponent denominators. Panics on repeated exponents.
    pub fn new(mut terms: Vec<(Rational64, Complex64)>, trunc_ord: Option<Rational64>) -> Self {
        terms.retain(|t| t.1 != Complex64::zero());
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        assert!(terms.windows(2).all(|w| w[0].0 != w[1].0), "repeated exponent");
        if let Some(t) = trunc_ord {
            assert!(terms.iter().all(|(e, _)| *e > t), "term at or below trunc_ord");
        }
        let ram = lcm_of_denominators(terms.iter().map(|t| &t.0)) as u32;
        PuiseuxSeries { ram, terms, trunc_ord }
    }

    pub fn zero_exact() -> Self {
        PuiseuxSeries::new(Vec::new(), None)
    }

    pub fn monomial(c: Complex64, e: Rational64) -> Self {
        PuiseuxSeries::new(vec![(e, c)], None)
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn terms(&self) -> &[(Rational64, Complex64)] {
        &self.terms
    }

    pub fn trunc_ord(&self) -> Option<Rational64> {
        self.trunc_ord
    }

    pub fn is_exact(&self) -> bool {
        self.trunc_ord.is_none()
    }

    pub fn coeff_at(&self, e: Rational64) -> Complex64 {
        self.terms.iter().find(|t| t.0 == e).map_or(Complex64::zero(), |t| t.1)
    }

    /// Minimal `m` making every exponent a multiple of `1/m`.
    pub fn multiplicity(&self) -> u32 {
        self.ram
    }

    /// `x^(1/m) -> eps^i x^(1/m)` with `eps = exp(2 pi i / m)`, `m = ram`.
    pub fn conjugate(&self, i: u32) -> Result<Self, PuiseuxError> {
        if i >= self.ram {
            return Err(PuiseuxError::ConjugateIndex { index: i, ram: self.ram });
        }
        let terms = self.terms.iter().map(|&(e, c)| (e, c * root_of_unity(e * i as i64))).collect();
        Ok(PuiseuxSeries { ram: self.ram, terms, trunc_ord: self.trunc_ord })
    }

    pub fn conjugates(&self) -> Vec<PuiseuxSeries> {
        (0..self.ram).map(|i| self.conjugate(i).expect("in range")).collect()
    }

    /// The first `k` terms, truncated at the exponent of the next one.
    pub fn prefix(&self, k: usize) -> Self {
        if k >= self.terms.len() {
            return self.clone();
        }
        PuiseuxSeries::new(self.terms[..k].to_vec(), Some(self.terms[k].0))
    }

    /// Same series with terms at or below `t` discarded.
    pub fn truncated_at(&self, t: Rational64) -> Self {
        let t = self.trunc_ord.map_or(t, |old| old.max(t));
        PuiseuxSeries::new(self.terms.iter().filter(|x| x.0 > t).copied().collect(), Some(t))
    }

    /// Termwise difference. Coefficients that agree to relative `tol` cancel.
    pub fn difference(&self, other: &Self, tol: f64) -> Self {
        let trunc = match (self.trunc_ord, other.trunc_ord) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        loop {
            let next = match (self.terms.get(i), other.terms.get(j)) {
                (None, None) => break,
                (Some(a), None) => {
                    i += 1;
                    (a.0, a.1, a.1.norm())
                }
                (None, Some(b)) => {
                    j += 1;
                    (b.0, -b.1, b.1.norm())
                }
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Greater => {
                        i += 1;
                        (a.0, a.1, a.1.norm())
                    }
                    Ordering::Less => {
                        j += 1;
                        (b.0, -b.1, b.1.norm())
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (a.0, a.1 - b.1, a.1.norm().max(b.1.norm()))
                    }
                },
            };
            let (e, c, scale) = next;
            if trunc.is_some_and(|t| e <= t) {
                continue;
            }
            if c.norm() > tol * scale {
                out.push((e, c));
            }
        }
        PuiseuxSeries::new(out, trunc)
    }

    /// Largest exponent with a stored coefficient; `-inf` for an exact zero.
    pub fn ord_at_infinity(&self) -> Result<Order, PuiseuxError> {
        match (self.terms.first(), self.trunc_ord) {
            (Some(t), _) => Ok(Order::Finite(t.0)),
            (None, None) => Ok(Order::NegInfinity),
            (None, Some(t)) => Err(PuiseuxError::Indistinguishable { trunc_ord: t }),
        }
    }

    /// Value at `x = t^ram`, i.e. with `t` standing for `x^(1/ram)`.
    pub fn eval_at_root(&self, t: Complex64) -> Complex64 {
        let m = self.ram as i64;
        self.terms
            .iter()
            .map(|(e, c)| {
                let k = (e * m).to_integer();
                c * t.powi(k as i32)
            })
            .sum()
    }

    /// Largest relative coefficient discrepancy over exponents above both
    /// truncations.
    pub fn distance(&self, other: &Self) -> f64 {
        let d = self.difference(other, 0.0);
        d.terms
            .iter()
            .map(|(e, c)| c.norm() / self.coeff_at(*e).norm().max(other.coeff_at(*e).norm()))
            .fold(0.0, f64::max)
    }

    /// The conjugate whose coefficient arguments, read from the top, are
    /// lexicographically smallest in `[0, 2 pi)`.
    pub fn canonical_conjugate(&self) -> (u32, Self) {
        let key = |s: &PuiseuxSeries| -> Vec<f64> {
            s.terms
                .iter()
                .map(|(_, c)| {
                    let a = c.arg().rem_euclid(2.0 * PI);
                    if 2.0 * PI - a < 1e-9 {
                        0.0
                    } else {
                        a
                    }
                })
                .collect()
        };
        let mut best = (0u32, self.clone(), key(self));
        for i in 1..self.ram {
            let c = self.conjugate(i).expect("in range");
            let k = key(&c);
            if lex_less(&k, &best.2, 1e-9) {
                best = (i, c, k);
            }
        }
        (best.0, best.1)
    }
}

fn lex_less(a: &[f64], b: &[f64], tol: f64) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x < y;
        }
    }
    false
}

/// `exp(2 pi i r)` computed from the reduced fractional part of `r`.
pub(crate) fn root_of_unity(r: Rational64) -> Complex64 {
    let frac = r - r.floor();
    if frac.is_zero() {
        return Complex64::one();
    }
    if frac == Rational64::new(1, 2) {
        return Complex64::new(-1.0, 0.0);
    }
    if frac == Rational64::new(1, 4) {
        return Complex64::new(0.0, 1.0);
    }
    if frac == Rational64::new(3, 4) {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::from_polar(1.0, 2.0 * PI * (*frac.numer() as f64) / (*frac.denom() as f64))
}

fn fmt_complex(c: Complex64) -> String {
    match super::param::fmt_rounded(c).as_str() {
        "i" => "1i".into(),
        "-i" => "-1i".into(),
        s => s.into(),
    }
}

fn fmt_exp(e: Rational64) -> String {
    if e.is_integer() {
        format!("x^({})", e.numer())
    } else {
        format!("x^({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{} * {}", fmt_complex(*c), fmt_exp(*e))).collect();
        if let Some(t) = self.trunc_ord {
            parts.push(format!("O({})", fmt_exp(t)));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

pub(crate) fn ratio_pair(e: &Rational64) -> [i64; 2] {
    [*e.numer(), *e.denom()]
}

pub(crate) fn complex_pair(c: &Complex64) -> [f64; 2] {
    [c.re, c.im]
}

struct TermJson<'a>(&'a (Rational64, Complex64));

impl Serialize for TermJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("exp", &ratio_pair(&self.0 .0))?;
        m.serialize_entry("coeff", &complex_pair(&self.0 .1))?;
        m.end()
    }
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PuiseuxSeries", 3)?;
        st.serialize_field("ram", &self.ram)?;
        st.serialize_field("terms", &self.terms.iter().map(TermJson).collect::<Vec<_>>())?;
        st.serialize_field("trunc_ord", &self.trunc_ord.as_ref().map(ratio_pair))?;
        st.end()
    }
}

/// Branches of a curve at infinity, one representative per conjugacy class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchSet {
    pub branches: Vec<PuiseuxSeries>,
}

impl BranchSet {
    pub fn total_ram(&self) -> u32 {
        self.branches.iter().map(PuiseuxSeries::ram).sum()
    }

    pub fn class_count(&self) -> usize {
        self.branches.len()
    }

    /// Every root, i.e. all conjugates of every representative.
    pub fn all_roots(&self) -> Vec<PuiseuxSeries> {
        self.branches.iter().flat_map(PuiseuxSeries::conjugates).collect()
    }
}

/// Groups individually computed roots into conjugacy classes. Each class is
/// represented by its canonical conjugate and must account for exactly `ram`
/// of the input roots.
pub(crate) fn group_classes(mut roots: Vec<PuiseuxSeries>, tol: f64) -> Result<BranchSet, PuiseuxError> {
    let mut branches = Vec::new();
    while let Some(u) = roots.pop() {
        for i in 1..u.ram() {
            let c = u.conjugate(i).expect("in range");
            let best = roots
                .iter()
                .enumerate()
                .map(|(k, r)| (k, if r.ram() == u.ram() { c.distance(r) } else { f64::INFINITY }))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((k, d)) if d <= tol => {
                    roots.swap_remove(k);
                }
                _ => return Err(PuiseuxError::ConjugacyMismatch { series: u.to_string() }),
            }
        }
        branches.push(u.canonical_conjugate().1);
    }
    branches.sort_by(|a, b| b.terms.first().map(|t| t.0).cmp(&a.terms.first().map(|t| t.0)));
    Ok(BranchSet { branches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }
    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiplicity_from_denominators() {
        assert_eq!(PuiseuxSeries::monomial(c(1.0, 0.0), r(3, 2)).multiplicity(), 2);
        assert_eq!(PuiseuxSeries::monomial(c(1.0, 0.0), r(1, 1)).multiplicity(), 1);
        let u = PuiseuxSeries::new(vec![(r(1, 2), c(1.0, 0.0)), (r(-1, 2), c(1.0, 0.0))], None);
        assert_eq!(u.multiplicity(), 2);
        let u = PuiseuxSeries::new(vec![(r(1, 2), c(1.0, 0.0)), (r(-1, 3), c(1.0, 0.0))], None);
        assert_eq!(u.multiplicity(), 6);
    }

    #[test]
    fn conjugates() {
        let u = PuiseuxSeries::monomial(c(1.0, 0.0), r(3, 2));
        assert_eq!(u.conjugate(1).unwrap(), PuiseuxSeries::monomial(c(-1.0, 0.0), r(3, 2)));
        let v = PuiseuxSeries::monomial(c(0.0, 1.0), r(1, 2));
        assert_eq!(v.conjugate(1).unwrap(), PuiseuxSeries::monomial(c(0.0, -1.0), r(1, 2)));
        assert_eq!(v.conjugate(0).unwrap(), v);
        assert!(matches!(v.conjugate(2), Err(PuiseuxError::ConjugateIndex { index: 2, ram: 2 })));
    }

    #[test]
    fn ord_examples() {
        let u = PuiseuxSeries::monomial(c(0.0, 1.0), r(1, 2));
        assert_eq!(u.ord_at_infinity().unwrap(), Order::Finite(r(1, 2)));
        // x - x + x^-2
        let a = PuiseuxSeries::new(vec![(r(1, 1), c(1.0, 0.0)), (r(-2, 1), c(1.0, 0.0))], None);
        let b = PuiseuxSeries::monomial(c(1.0, 0.0), r(1, 1));
        assert_eq!(a.difference(&b, 1e-10).ord_at_infinity().unwrap(), Order::Finite(r(-2, 1)));
        assert_eq!(PuiseuxSeries::zero_exact().ord_at_infinity().unwrap(), Order::NegInfinity);
        let t = PuiseuxSeries::new(vec![], Some(r(-3, 1)));
        assert!(matches!(t.ord_at_infinity(), Err(PuiseuxError::Indistinguishable { .. })));
    }

    #[test]
    fn difference_respects_truncation() {
        let a = PuiseuxSeries::new(vec![(r(1, 1), c(1.0, 0.0)), (r(0, 1), c(2.0, 0.0))], Some(r(-1, 1)));
        let b = PuiseuxSeries::new(vec![(r(1, 1), c(1.0, 0.0)), (r(-2, 1), c(5.0, 0.0))], None);
        let d = a.difference(&b, 1e-10);
        assert_eq!(d.terms(), &[(r(0, 1), c(2.0, 0.0))]);
        assert_eq!(d.trunc_ord(), Some(r(-1, 1)));
    }

    #[test]
    fn canonical_conjugate_prefers_small_arguments() {
        let u = PuiseuxSeries::monomial(c(0.0, -1.0), r(1, 2));
        assert_eq!(u.canonical_conjugate().1, PuiseuxSeries::monomial(c(0.0, 1.0), r(1, 2)));
        let v = PuiseuxSeries::monomial(c(-1.0, 0.0), r(3, 2));
        assert_eq!(v.canonical_conjugate(), (1, PuiseuxSeries::monomial(c(1.0, 0.0), r(3, 2))));
    }

    #[test]
    fn eval_and_render() {
        let u = PuiseuxSeries::new(vec![(r(1, 2), c(0.0, 1.0)), (r(-1, 2), c(2.0, 0.0))], Some(r(-1, 1)));
        assert_eq!(u.to_string(), "1i * x^(1/2) + 2 * x^(-1/2) + O(x^(-1))");
        // t = 2: x = 4, i*2 + 2/2
        assert!((u.eval_at_root(c(2.0, 0.0)) - c(1.0, 2.0)).norm() < 1e-15);
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(
            json,
            r#"{"ram":2,"terms":[{"exp":[1,2],"coeff":[0.0,1.0]},{"exp":[-1,2],"coeff":[2.0,0.0]}],"trunc_ord":[-1,1]}"#
        );
    }

    #[test]
    fn grouping_into_classes() {
        let roots = vec![
            PuiseuxSeries::monomial(c(0.0, 1.0), r(1, 2)),
            PuiseuxSeries::monomial(c(0.0, -1.0), r(1, 2)),
            PuiseuxSeries::monomial(c(3.0, 0.0), r(1, 1)),
        ];
        let b = group_classes(roots, 1e-8).unwrap();
        assert_eq!(b.class_count(), 2);
        assert_eq!(b.total_ram(), 3);
        assert_eq!(b.branches[0].coeff_at(r(1, 1)), c(3.0, 0.0));
        assert_eq!(b.branches[1].coeff_at(r(1, 2)), c(0.0, 1.0));
        let lonely = vec![PuiseuxSeries::monomial(c(0.0, 1.0), r(1, 2))];
        assert!(group_classes(lonely, 1e-8).is_err());
    }
}
