//! Roots of univariate complex polynomials, with multiplicities.
//!
//! Coefficient vectors are ascending: `p[i]` multiplies `z^i`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use super::EngineConfig;

pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// `sum |p_i| |z|^i`, the natural scale for judging `|p(z)|`.
pub fn eval_scale(p: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    p.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

pub(crate) fn degree(p: &[Complex64]) -> Option<usize> {
    p.iter().rposition(|c| *c != Complex64::new(0.0, 0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootFailure {
    pub poly: Vec<Complex64>,
    pub reason: &'static str,
}

/// All roots of `p`, grouped into `(root, multiplicity)` with multiplicities
/// summing to `deg p`.
///
/// Exact zero coefficients are structural: a power of `z` dividing `p` gives
/// the root `0`, and a gcd `g > 1` of the remaining exponents reduces to a
/// polynomial in `w = z^g`. A single high-multiplicity root is recognised
/// directly; otherwise Aberth iteration runs and nearby roots are merged.
pub fn roots_with_multiplicity(p: &[Complex64], cfg: &EngineConfig) -> Result<Vec<(Complex64, usize)>, RootFailure> {
    let fail = |reason| RootFailure { poly: p.to_vec(), reason };
    let n = degree(p).ok_or_else(|| fail("zero polynomial"))?;
    let zero = Complex64::new(0.0, 0.0);
    let low = p.iter().position(|c| *c != zero).expect("nonzero");
    let mut out = Vec::new();
    if low > 0 {
        out.push((zero, low));
    }
    if n == low {
        return Ok(out);
    }
    let q = &p[low..=n];
    let g = q.iter().enumerate().skip(1).filter(|(_, c)| **c != zero).fold(0usize, |g, (i, _)| g.gcd(&i));
    let w: Vec<Complex64> = q.iter().step_by(g).copied().collect();
    for (r, mult) in decimated_roots(&w, cfg).map_err(|_| fail("root iteration did not converge"))? {
        let base = r.powf(1.0 / g as f64);
        for s in 0..g {
            let z = base * Complex64::from_polar(1.0, 2.0 * PI * s as f64 / g as f64);
            out.push((polish(q, z, mult), mult));
        }
    }
    Ok(out)
}

fn decimated_roots(w: &[Complex64], cfg: &EngineConfig) -> Result<Vec<(Complex64, usize)>, ()> {
    let n = w.len() - 1;
    if n == 1 {
        return Ok(vec![(-w[0] / w[1], 1)]);
    }
    if let Some(r) = perfect_power_root(w, cfg.cluster_tol) {
        return Ok(vec![(r, n)]);
    }
    let zs = aberth(w, cfg)?;
    Ok(cluster(w, &zs, cfg.cluster_tol))
}

/// `r` with `w = w_n (z - r)^n` up to relative `tol`, if such `r` exists.
fn perfect_power_root(w: &[Complex64], tol: f64) -> Option<Complex64> {
    let n = w.len() - 1;
    let r = -w[n - 1] / (w[n] * n as f64);
    let mut binom = 1.0f64;
    let mut scale = 0.0;
    let mut err = 0.0f64;
    // Coefficient of z^i in (z - r)^n is C(n, i) (-r)^(n-i).
    for i in (0..=n).rev() {
        let expect = w[n] * binom * (-r).powu((n - i) as u32);
        scale += w[n].norm() * binom * r.norm().powi((n - i) as i32);
        err = err.max((w[i] - expect).norm());
        binom = binom * i as f64 / (n - i + 1) as f64;
    }
    (err <= tol * scale).then_some(r)
}

fn aberth(p: &[Complex64], cfg: &EngineConfig) -> Result<Vec<Complex64>, ()> {
    let n = p.len() - 1;
    let dp = derivative(p);
    let lead = p[n].norm();
    // Geometric-mean radius |p0/pn|^(1/n), offset angle to avoid symmetric stalls.
    let rad = (p[0].norm() / lead).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(rad, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..cfg.max_iter {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pv = eval(p, z[i]);
            let dv = eval(&dp, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved <= cfg.root_tol {
            break;
        }
    }
    // Clustered roots converge only linearly; accept them when the residual is small.
    for &zi in &z {
        if !zi.is_finite() || eval(p, zi).norm() > 1e-6 * eval_scale(p, zi) {
            return Err(());
        }
    }
    Ok(z)
}

fn cluster(p: &[Complex64], zs: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let radius = tol.sqrt();
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &z in zs {
        match groups.iter_mut().find(|g| {
            let c: Complex64 = g.iter().sum::<Complex64>() / g.len() as f64;
            (c - z).norm() <= radius * c.norm().max(1.0)
        }) {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let c = g.iter().sum::<Complex64>() / g.len() as f64;
            (polish(p, c, g.len()), g.len())
        })
        .collect()
}

/// Newton steps on the `(mult-1)`-th derivative, kept only while they reduce
/// the residual of `p`.
fn polish(p: &[Complex64], z0: Complex64, mult: usize) -> Complex64 {
    let mut f = p.to_vec();
    for _ in 1..mult {
        f = derivative(&f);
    }
    let df = derivative(&f);
    let mut z = z0;
    let mut best = eval(p, z).norm();
    for _ in 0..8 {
        let d = eval(&df, z);
        if d.norm() == 0.0 {
            break;
        }
        let cand = z - eval(&f, z) / d;
        let r = eval(p, cand).norm();
        if !cand.is_finite() || r >= best {
            break;
        }
        z = cand;
        best = r;
    }
    z
}
