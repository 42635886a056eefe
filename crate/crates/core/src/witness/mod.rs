//! A checkable witness that one component degree of an automorphism divides
//! the other.
//!
//! The map is put in the form `P = y^deg P + ...`, `Q = y^deg Q + ...`, both
//! curves are expanded at infinity, and the first exponent `theta` at which a
//! root of `P` and a root of `Q` part ways fixes a one-parameter family
//! `phi(x, xi)`. Substituting the family into both components gives two face
//! polynomials whose zeros, degrees and Wronskian-like combination `J_phi`
//! are checked here numerically, with every margin kept in the report.

mod theta;

pub use theta::{build_phi, compute_theta, j_phi};

use num_complex::Complex64;
use num_rational::Rational64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coeff::Coeff;
use crate::map::{monic_normalize, LinearChange, PolyMap};
use crate::puiseux::roots::{derivative, eval, eval_scale, roots_with_multiplicity};
use crate::puiseux::{
    complex_pair, expansions_at_infinity, lift_simple_root, ratio_pair, substitute_param, BranchSet, EngineConfig,
    FaceData, Order, ParamSeries, PuiseuxError, PuiseuxSeries, render_xi_poly,
};
use crate::tame::is_keller;

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessConfig {
    pub engine: EngineConfig,
    /// Relative tolerance for every numerical verdict.
    pub tol: f64,
    /// Starting expansion depth; `max degree + 2` when unset. It is doubled
    /// up to three times while the roots of `P` and `Q` stay indistinguishable.
    pub trunc_terms: Option<usize>,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { engine: EngineConfig::default(), tol: 1e-6, trunc_terms: None }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("jacobian {jacobian} is not a nonzero constant")]
    NotKeller { jacobian: String },
    #[error("component {component} is constant")]
    ConstantComponent { component: &'static str },
    #[error("expansion of {component} failed: {source}")]
    Expansion { component: &'static str, source: PuiseuxError },
    #[error("{component} has {classes} branch classes with ramifications {rams:?}, expected one of ramification {degree}")]
    BranchCount { component: &'static str, classes: usize, rams: Vec<u32>, degree: u32 },
    #[error("the two curves share a branch at infinity")]
    SharedBranch,
    #[error("contact exponent could not be certified: {0}")]
    Theta(PuiseuxError),
    #[error("parameter family could not be built: {0}")]
    Family(PuiseuxError),
}

/// Which degree divides which, in the caller's component order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    QDividesP,
    PDividesQ,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::QDividesP => "degQ_divides_degP",
            Conclusion::PDividesQ => "degP_divides_degQ",
        }
    }
}

impl Serialize for Conclusion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Margins {
    /// Relative residuals `|P_phi(alpha_u)|`, `|Q_phi(beta_v)|`.
    pub claim1a_p: f64,
    pub claim1a_q: f64,
    /// Smallest `max(|P_phi(z)|, |Q_phi(z)|)` over zeros `z` of either face.
    pub claim1b: f64,
    pub min_a_b: i64,
    /// Largest non-constant coefficient of `J_phi` relative to its constant term.
    pub j_phi_nonconstant: f64,
    /// `| |J_phi| - m_phi |J| |` relative to `m_phi |J|`.
    pub j_phi_modulus: f64,
    /// `a_phi + b_phi + n_phi - 2 m_phi`.
    pub degree_relation: i64,
    /// Smallest normalized `|f'(z)|` over zeros `z` of each face.
    pub simple_p: f64,
    pub simple_q: f64,
    pub alpha_abs: f64,
    pub beta_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdicts {
    pub claim1a: bool,
    pub claim1b: bool,
    pub positivity: bool,
    pub j_phi_constant: bool,
    pub j_phi_modulus: bool,
    pub degree_relation: bool,
    pub simple_zeros: bool,
    pub claim2: bool,
    pub finale: bool,
    pub m_phi_equals_deg: bool,
    pub theta_exact: bool,
    pub fact2_lift: bool,
    pub margins: Margins,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        self.claim1a
            && self.claim1b
            && self.positivity
            && self.claim2
            && self.finale
            && self.m_phi_equals_deg
            && self.theta_exact
            && self.fact2_lift
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    /// `(deg P, deg Q)` in the caller's order.
    pub degrees: (u32, u32),
    /// True when `Q` had the larger degree and the roles were exchanged.
    pub swapped: bool,
    pub linear_change: LinearChange,
    /// Jacobian of the normalized, ordered map the witness is built from.
    pub jacobian_const: Coeff,
    pub trunc_terms: usize,
    pub u: PuiseuxSeries,
    pub v: PuiseuxSeries,
    /// Conjugate indices of `u` and `v` attaining `theta`.
    pub conjugates: (u32, u32),
    pub theta: Rational64,
    pub phi: ParamSeries,
    pub p_face: FaceData,
    pub q_face: FaceData,
    pub alpha_u: Complex64,
    pub beta_v: Complex64,
    /// Ascending coefficients in `xi`.
    pub j_phi: Vec<Complex64>,
    /// Sign of the real part of `J_phi / (m_phi J)`; `+1` for `(x + y^2, y)`.
    pub j_phi_sign: i8,
    /// Multiplicities of the expansions lifted from `alpha_u` and `beta_v`.
    pub lifts: (Option<u32>, Option<u32>),
    pub verdicts: Verdicts,
    pub conclusion: Option<Conclusion>,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.all_pass()
    }
}

impl Serialize for WitnessReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("theta", &ratio_pair(&self.theta))?;
        m.serialize_entry("phi", &self.phi)?;
        m.serialize_entry("P_phi", &render_xi_poly(&self.p_face.face_poly))?;
        m.serialize_entry("Q_phi", &render_xi_poly(&self.q_face.face_poly))?;
        m.serialize_entry("a_phi", &self.p_face.a)?;
        m.serialize_entry("b_phi", &self.q_face.a)?;
        m.serialize_entry("m_phi", &self.phi.m_phi())?;
        m.serialize_entry("n_phi", &self.phi.n_phi())?;
        m.serialize_entry("alpha_u", &complex_pair(&self.alpha_u))?;
        m.serialize_entry("beta_v", &complex_pair(&self.beta_v))?;
        m.serialize_entry("J_phi_const", &complex_pair(&self.j_phi[0]))?;
        m.serialize_entry("J_phi", &self.j_phi.iter().map(complex_pair).collect::<Vec<_>>())?;
        m.serialize_entry("J_phi_sign", &self.j_phi_sign)?;
        m.serialize_entry("jacobian_const", &self.jacobian_const.to_string())?;
        m.serialize_entry("degrees", &[self.degrees.0, self.degrees.1])?;
        m.serialize_entry("swapped", &self.swapped)?;
        m.serialize_entry(
            "linear_change",
            &serde_json::json!({
                "lambda": self.linear_change.lambda,
                "scale_p": self.linear_change.scale_p.to_string(),
                "scale_q": self.linear_change.scale_q.to_string(),
            }),
        )?;
        m.serialize_entry("trunc_terms", &self.trunc_terms)?;
        m.serialize_entry("conjugates", &[self.conjugates.0, self.conjugates.1])?;
        m.serialize_entry("u", &self.u)?;
        m.serialize_entry("v", &self.v)?;
        m.serialize_entry("P_face", &self.p_face)?;
        m.serialize_entry("Q_face", &self.q_face)?;
        m.serialize_entry("lifts", &[self.lifts.0, self.lifts.1])?;
        m.serialize_entry("verdicts", &self.verdicts)?;
        m.serialize_entry("all_pass", &self.all_pass())?;
        m.serialize_entry("conclusion", &self.conclusion)?;
        m.end()
    }
}

fn relative_value(p: &[Complex64], z: Complex64) -> f64 {
    eval(p, z).norm() / eval_scale(p, z).max(f64::MIN_POSITIVE)
}

/// Smallest normalized derivative over the zeros of `p`; zero if any zero is
/// repeated. Constant polynomials have no zeros and score `1`.
fn simple_margin(p: &[Complex64], cfg: &EngineConfig) -> f64 {
    if p.len() <= 1 {
        return 1.0;
    }
    let dp = derivative(p);
    match roots_with_multiplicity(p, cfg) {
        Ok(rs) if rs.iter().all(|r| r.1 == 1) => rs.iter().map(|r| relative_value(&dp, r.0)).fold(f64::INFINITY, f64::min),
        _ => 0.0,
    }
}

fn single_class(b: &BranchSet, component: &'static str, degree: u32) -> Result<(), WitnessError> {
    if b.class_count() == 1 && b.branches[0].ram() == degree {
        return Ok(());
    }
    Err(WitnessError::BranchCount {
        component,
        classes: b.class_count(),
        rams: b.branches.iter().map(PuiseuxSeries::ram).collect(),
        degree,
    })
}

fn coeff_scale(u: &PuiseuxSeries) -> f64 {
    u.terms().iter().map(|t| t.1.norm()).fold(1.0, f64::max)
}

fn divides(m: u32, d: u32) -> bool {
    m > 0 && d.is_multiple_of(m)
}

/// Builds the witness for a Keller map with two non-constant components.
pub fn verify_division(f: &PolyMap, cfg: &WitnessConfig) -> Result<WitnessReport, WitnessError> {
    let (keller, jac) = is_keller(f);
    if !keller {
        return Err(WitnessError::NotKeller { jacobian: jac.to_string() });
    }
    let (dp, dq) = (f.p.degree().finite().unwrap_or(0), f.q.degree().finite().unwrap_or(0));
    if dp == 0 {
        return Err(WitnessError::ConstantComponent { component: "P" });
    }
    if dq == 0 {
        return Err(WitnessError::ConstantComponent { component: "Q" });
    }
    let swapped = dq > dp;
    let ordered = if swapped { f.swapped() } else { f.clone() };
    let (g, change) = monic_normalize(&ordered).expect("nonzero components");
    let (big, small) = (dp.max(dq), dp.min(dq));
    let jacobian_const = g.jacobian().constant_term();
    // Deep terms only add rounding, so start shallow and deepen on demand.
    let base_trunc = cfg.trunc_terms.unwrap_or(big as usize + 2);

    let mut attempt = 0;
    let (trunc_terms, us, vs, (order, i, j)) = loop {
        let t = base_trunc << attempt;
        let us = expansions_at_infinity(&g.p, t, &cfg.engine).map_err(|e| WitnessError::Expansion { component: "P", source: e })?;
        let vs = expansions_at_infinity(&g.q, t, &cfg.engine).map_err(|e| WitnessError::Expansion { component: "Q", source: e })?;
        single_class(&us, "P", big)?;
        single_class(&vs, "Q", small)?;
        match compute_theta(&us, &vs, cfg.engine.match_tol) {
            Ok(found) => break (t, us, vs, found),
            Err(PuiseuxError::Indistinguishable { .. }) if attempt < 3 => attempt += 1,
            Err(e) => return Err(WitnessError::Theta(e)),
        }
    };
    let theta = match order {
        Order::Finite(t) => t,
        Order::NegInfinity => return Err(WitnessError::SharedBranch),
    };
    let u = us.branches[0].conjugate(i).expect("index from enumeration");
    let v = vs.branches[0].conjugate(j).expect("index from enumeration");
    let phi = build_phi(&u, theta).map_err(WitnessError::Family)?;
    let p_face = substitute_param(&g.p, &phi, &cfg.engine).map_err(WitnessError::Family)?;
    let q_face = substitute_param(&g.q, &phi, &cfg.engine).map_err(WitnessError::Family)?;
    let alpha_u = u.coeff_at(theta);
    let beta_v = v.coeff_at(theta);
    let tol = cfg.tol;
    let m_phi = phi.m_phi();

    let claim1a_p = relative_value(&p_face.face_poly, alpha_u);
    let claim1a_q = relative_value(&q_face.face_poly, beta_v);

    let mut candidates = Vec::new();
    let mut roots_ok = true;
    for face in [&p_face.face_poly, &q_face.face_poly] {
        if face.len() > 1 {
            match roots_with_multiplicity(face, &cfg.engine) {
                Ok(rs) => candidates.extend(rs.into_iter().map(|r| r.0)),
                Err(_) => roots_ok = false,
            }
        }
    }
    let claim1b = if roots_ok {
        candidates
            .iter()
            .map(|&z| relative_value(&p_face.face_poly, z).max(relative_value(&q_face.face_poly, z)))
            .fold(f64::INFINITY, f64::min)
    } else {
        f64::NAN
    };

    let jp = j_phi(&p_face, &q_face);
    let j0 = jp[0];
    let j_phi_nonconstant = jp[1..].iter().map(|z| z.norm()).fold(0.0, f64::max) / j0.norm();
    let jac_c = jacobian_const.to_complex();
    let target = m_phi as f64 * jac_c.norm();
    let j_phi_modulus = (j0.norm() - target).abs() / target;
    let ratio = j0 / (jac_c * m_phi as f64);
    let j_phi_sign = if ratio.re < 0.0 { -1 } else { 1 };
    let degree_relation = p_face.a + q_face.a + phi.n_phi() - 2 * m_phi as i64;
    let simple_p = simple_margin(&p_face.face_poly, &cfg.engine);
    let simple_q = simple_margin(&q_face.face_poly, &cfg.engine);

    let alpha_abs = alpha_u.norm();
    let beta_abs = beta_v.norm();
    let strict = big > small;
    let finale = !strict || (alpha_abs > tol * coeff_scale(&u) && beta_abs <= tol * coeff_scale(&v) && m_phi == big);
    let m_phi_equals_deg = !strict || m_phi == big;

    let lift_u = lift_simple_root(&g.p, &phi, alpha_u, trunc_terms, &cfg.engine).ok().map(|s| s.multiplicity());
    let lift_v = lift_simple_root(&g.q, &phi, beta_v, trunc_terms, &cfg.engine).ok().map(|s| s.multiplicity());
    let lift_ok = |mult: Option<u32>, c: Complex64| match mult {
        Some(k) => divides(k, m_phi) && (c.norm() <= cfg.engine.drop_tol || k == m_phi),
        None => false,
    };
    let fact2_lift = lift_ok(lift_u, alpha_u) && lift_ok(lift_v, beta_v);

    let j_phi_constant = j_phi_nonconstant <= tol;
    let j_phi_mod_ok = j_phi_modulus <= tol;
    let relation_ok = degree_relation == 0;
    let simple_zeros = simple_p > cfg.engine.simple_tol && simple_q > cfg.engine.simple_tol;
    let verdicts = Verdicts {
        claim1a: claim1a_p <= tol && claim1a_q <= tol,
        claim1b: claim1b > tol,
        positivity: p_face.a > 0 && q_face.a > 0,
        j_phi_constant,
        j_phi_modulus: j_phi_mod_ok,
        degree_relation: relation_ok,
        simple_zeros,
        claim2: j_phi_constant && j_phi_mod_ok && relation_ok && simple_zeros,
        finale,
        m_phi_equals_deg,
        theta_exact: phi.theta() == theta,
        fact2_lift,
        margins: Margins {
            claim1a_p,
            claim1a_q,
            claim1b,
            min_a_b: p_face.a.min(q_face.a),
            j_phi_nonconstant,
            j_phi_modulus,
            degree_relation,
            simple_p,
            simple_q,
            alpha_abs,
            beta_abs,
        },
    };
    let conclusion = verdicts.all_pass().then_some(if swapped { Conclusion::PDividesQ } else { Conclusion::QDividesP });
    Ok(WitnessReport {
        degrees: (dp, dq),
        swapped,
        linear_change: change,
        jacobian_const,
        trunc_terms,
        u,
        v,
        conjugates: (i, j),
        theta,
        phi,
        p_face,
        q_face,
        alpha_u,
        beta_v,
        j_phi: jp,
        j_phi_sign,
        lifts: (lift_u, lift_v),
        verdicts,
        conclusion,
    })
}

/// Exact degree ratio used to cross-check a conclusion.
pub fn degree_quotient(f: &PolyMap) -> Option<u32> {
    let (a, b) = (f.p.degree().finite()?, f.q.degree().finite()?);
    let (big, small) = (a.max(b), a.min(b));
    (small > 0 && big % small == 0).then(|| big / small)
}
