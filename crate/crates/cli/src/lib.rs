//! Argument handling and verb dispatch for the `jung-tame` binary.
//!
//! [`run`] never prints; it returns the text for stdout and stderr together
//! with the exit code, so the binary and the tests share one code path.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jung_tame::puiseux::default_trunc_terms;
use jung_tame::puiseux::residual::check_root;
use jung_tame::{
    decompose, expansions_at_infinity, invert, is_keller, parse_map, parse_poly, random_tame, verify_division,
    EngineConfig, FieldMode, GenConfig, PolyMap, Var, WitnessConfig, WitnessReport,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Residual slopes must match their prediction to this much.
const SLOPE_TOL: f64 = 0.2;

#[derive(Debug, Parser)]
#[command(name = "jung-tame", version, about = "Tame decomposition and degree-divisibility witnesses for plane polynomial automorphisms")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Coefficient field: rationals or Gaussian rationals.
    #[arg(long, global = true, value_enum, default_value_t = Field::Q)]
    pub field: Field,
    /// Relative tolerance for numerical verdicts.
    #[arg(long, global = true, env = "JUNG_TAME_TOL", default_value_t = 1e-6)]
    pub tol: f64,
    /// Number of series terms to resolve.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Q,
    Qi,
}

impl From<Field> for FieldMode {
    fn from(f: Field) -> Self {
        match f {
            Field::Q => FieldMode::Rational,
            Field::Qi => FieldMode::Gaussian,
        }
    }
}

/// A map given inline as `"P; Q"`, or a file with one map per line.
#[derive(Debug, Args)]
pub struct MapInput {
    /// Map text such as "x + y^2; y".
    #[arg(required_unless_present = "file", conflicts_with = "file", allow_hyphen_values = true)]
    pub map: Option<String>,
    /// Read maps from a file, one per line; blank lines and lines starting with '#' are skipped.
    #[arg(long)]
    pub file: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobian test followed by a tame decomposition attempt.
    Check(MapInput),
    /// Factor list, first-applied first.
    Decompose(MapInput),
    /// Exact inverse.
    Invert(MapInput),
    /// OUTER composed after INNER.
    Compose {
        #[arg(allow_hyphen_values = true)]
        outer: String,
        #[arg(allow_hyphen_values = true)]
        inner: String,
    },
    /// Degree-divisibility witness built from branches at infinity.
    VerifyDivision(MapInput),
    /// Expansions at infinity of a curve, monic in y.
    Puiseux {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Random tame automorphism with its ground-truth factors.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        max_tri_degree: u32,
        #[arg(long, default_value_t = 3)]
        coeff_bound: u32,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

/// One processed input: exit code, a JSON value and a text rendering.
struct Item {
    code: i32,
    json: Value,
    text: String,
}

impl Item {
    fn ok(json: Value, text: String) -> Self {
        Item { code: EXIT_OK, json, text }
    }
    fn rejected(json: Value, text: String) -> Self {
        Item { code: EXIT_REJECTED, json, text }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mode: FieldMode = cli.field.into();
    match &cli.command {
        Command::Check(input) => over_maps(cli, input, check),
        Command::Decompose(input) => over_maps(cli, input, decompose_item),
        Command::Invert(input) => over_maps(cli, input, invert_item),
        Command::VerifyDivision(input) => {
            let wc = WitnessConfig { tol: cli.tol, trunc_terms: cli.trunc, ..WitnessConfig::default() };
            over_maps(cli, input, |f| witness_item(f, &wc))
        }
        Command::Compose { outer, inner } => {
            let (g, f) = match (parse_map(outer, mode), parse_map(inner, mode)) {
                (Ok(g), Ok(f)) => (g, f),
                (Err(e), _) => return Outcome::usage(format!("outer map: {e}\n")),
                (_, Err(e)) => return Outcome::usage(format!("inner map: {e}\n")),
            };
            let h = g.compose(&f).expect("both maps parsed in one field mode");
            emit(cli, vec![Item::ok(json!({ "map": h.to_string() }), h.to_string())])
        }
        Command::Puiseux { poly } => {
            let h = match parse_poly(poly, mode) {
                Ok(h) => h,
                Err(e) => return Outcome::usage(format!("{e}\n")),
            };
            emit(cli, vec![puiseux_item(&h, cli.trunc)])
        }
        Command::Generate { seed, depth, max_tri_degree, coeff_bound } => {
            let cfg = GenConfig {
                seed: *seed,
                depth: *depth,
                max_tri_degree: *max_tri_degree,
                coeff_bound: *coeff_bound,
                field_mode: mode,
            };
            match random_tame(&cfg) {
                Ok((f, d)) => {
                    let factors: Vec<String> = d.factors.iter().map(ToString::to_string).collect();
                    let text = format!("{f}\n{}", factors.join("\n"));
                    emit(cli, vec![Item::ok(json!({ "config": cfg, "map": f.to_string(), "factors": d }), text)])
                }
                Err(e) => Outcome::usage(format!("{e}\n")),
            }
        }
    }
}

fn over_maps(cli: &Cli, input: &MapInput, mut f: impl FnMut(&PolyMap) -> Item) -> Outcome {
    let mode = cli.field.into();
    let sources: Vec<(String, String)> = match (&input.map, &input.file) {
        (Some(m), _) => vec![("argument".into(), m.clone())],
        (None, Some(path)) => match std::fs::read_to_string(path) {
            Ok(text) => text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(|(i, l)| (format!("{path}:{}", i + 1), l.to_string()))
                .collect(),
            Err(e) => return Outcome::usage(format!("cannot read {path}: {e}\n")),
        },
        (None, None) => return Outcome::usage("no map given\n"),
    };
    let mut maps = Vec::with_capacity(sources.len());
    for (origin, src) in &sources {
        match parse_map(src, mode) {
            Ok(m) => maps.push(m),
            Err(e) => return Outcome::usage(format!("{origin}: {e}\n{src}\n{:>width$}\n", "^", width = e.column)),
        }
    }
    emit(cli, maps.iter().map(&mut f).collect())
}

fn emit(cli: &Cli, items: Vec<Item>) -> Outcome {
    let code = items.iter().map(|i| i.code).max().unwrap_or(EXIT_OK);
    let stdout = if cli.json {
        let v = if items.len() == 1 {
            items.into_iter().next().expect("one item").json
        } else {
            Value::Array(items.into_iter().map(|i| i.json).collect())
        };
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    } else {
        items.iter().map(|i| i.text.clone() + "\n").collect::<Vec<_>>().join("\n")
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn check(f: &PolyMap) -> Item {
    let (keller, j) = is_keller(f);
    match decompose(f) {
        Ok(d) => Item::ok(
            json!({ "keller": keller, "jacobian": j.to_string(), "tame": true, "factors": d.len(), "rejection": null }),
            format!("tame automorphism, jacobian {j}, {} factors", d.len()),
        ),
        Err(e) => Item::rejected(
            json!({ "keller": keller, "jacobian": j.to_string(), "tame": false, "factors": null, "rejection": e }),
            format!("rejected: {e}"),
        ),
    }
}

fn decompose_item(f: &PolyMap) -> Item {
    match decompose(f) {
        Ok(d) => Item::ok(json!(d), d.factors.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")),
        Err(e) => Item::rejected(json!({ "rejection": e }), format!("rejected: {e}")),
    }
}

fn invert_item(f: &PolyMap) -> Item {
    match invert(f) {
        Ok(g) => Item::ok(json!({ "map": f.to_string(), "inverse": g.to_string() }), g.to_string()),
        Err(e) => Item::rejected(json!({ "rejection": e }), format!("rejected: {e}")),
    }
}

fn witness_item(f: &PolyMap, wc: &WitnessConfig) -> Item {
    match verify_division(f, wc) {
        Ok(r) => {
            let text = witness_text(&r);
            let json = serde_json::to_value(&r).expect("serializable");
            if r.all_pass() {
                Item::ok(json, text)
            } else {
                Item::rejected(json, text)
            }
        }
        Err(e) => Item::rejected(json!({ "error": e.to_string() }), format!("no witness: {e}")),
    }
}

fn witness_text(r: &WitnessReport) -> String {
    let v = &r.verdicts;
    let mut s = String::new();
    let _ = writeln!(s, "degrees    ({}, {})", r.degrees.0, r.degrees.1);
    let _ = writeln!(s, "theta      {}", r.theta);
    let _ = writeln!(s, "u          {}", r.u);
    let _ = writeln!(s, "v          {}", r.v);
    let _ = writeln!(s, "m_phi      {}   n_phi {}", r.phi.m_phi(), r.phi.n_phi());
    let _ = writeln!(s, "P_phi      {}   (a_phi = {})", jung_tame::puiseux::render_xi_poly(&r.p_face.face_poly), r.p_face.a);
    let _ = writeln!(s, "Q_phi      {}   (b_phi = {})", jung_tame::puiseux::render_xi_poly(&r.q_face.face_poly), r.q_face.a);
    let _ = writeln!(s, "J_phi      {}   (J = {})", jung_tame::puiseux::render_xi_poly(&r.j_phi), r.jacobian_const);
    let flags = [
        ("claim1a", v.claim1a),
        ("claim1b", v.claim1b),
        ("positivity", v.positivity),
        ("claim2", v.claim2),
        ("finale", v.finale),
        ("m_phi_equals_deg", v.m_phi_equals_deg),
        ("theta_exact", v.theta_exact),
        ("fact2_lift", v.fact2_lift),
    ];
    let line: Vec<String> = flags.iter().map(|(k, b)| format!("{k}={}", if *b { "ok" } else { "FAIL" })).collect();
    let _ = writeln!(s, "verdicts   {}", line.join(" "));
    match r.conclusion {
        Some(c) => {
            let _ = write!(s, "conclusion {}", c.as_str());
        }
        None => {
            let _ = write!(s, "conclusion none");
        }
    }
    s
}

fn puiseux_item(h: &jung_tame::Polynomial, trunc: Option<usize>) -> Item {
    let cfg = EngineConfig::default();
    let Some(d) = h.degree_in(Var::Y).finite() else {
        return Item::rejected(json!({ "error": "zero polynomial" }), "zero polynomial".into());
    };
    let t = trunc.unwrap_or_else(|| default_trunc_terms(d));
    let b = match expansions_at_infinity(h, t, &cfg) {
        Ok(b) => b,
        Err(e) => return Item::rejected(json!({ "error": e.to_string() }), format!("no expansion: {e}")),
    };
    let roots = b.all_roots();
    let mut checks = Vec::new();
    let mut pass = b.total_ram() == d;
    for u in &b.branches {
        match check_root(h, u, &roots) {
            Ok(c) => {
                pass &= c.passes(SLOPE_TOL);
                checks.push(json!(c));
            }
            Err(e) => {
                pass = false;
                checks.push(json!({ "error": e.to_string() }));
            }
        }
    }
    let mut text = String::new();
    for (u, c) in b.branches.iter().zip(&checks) {
        let _ = writeln!(text, "ram {}: {u}", u.ram());
        let _ = writeln!(text, "  residual {c}");
    }
    let _ = write!(text, "sum of ramifications {} (deg_y {d})", b.total_ram());
    let json = json!({
        "poly": h.to_string(),
        "trunc_terms": t,
        "branches": b.branches,
        "total_ram": b.total_ram(),
        "residuals": checks,
        "pass": pass,
    });
    if pass {
        Item::ok(json, text)
    } else {
        Item::rejected(json, text)
    }
}
