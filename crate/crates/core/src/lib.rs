//! Exact arithmetic on polynomial maps of the plane: tame decomposition and
//! inversion of automorphisms, Newton-Puiseux expansions at infinity, and a
//! checkable witness for the degree divisibility of automorphism components.

pub mod coeff;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod map;
pub mod poly;
pub mod puiseux;
pub mod tame;
pub mod text;
pub mod witness;

pub use coeff::{Coeff, FieldMode};
pub use error::{ParseError, PolyError};
pub use generator::{random_tame, GenConfig, GenError};
pub use map::{monic_normalize, LinearChange, PolyMap};
pub use poly::{Degree, Monomial, Polynomial, Var};
pub use puiseux::{
    expansions_at_infinity, fact1_product, lift_simple_root, substitute_param, ApproxPoly, BranchSet, EngineConfig,
    FaceData, Order, ParamSeries, PuiseuxError, PuiseuxSeries,
};
pub use tame::{
    decompose, invert, invert_decomposition, is_keller, leading_match, recompose, reduce_step, AffineMap,
    Decomposition, Factor, RejectionDetail, RejectionEvidence, RejectionReason,
};
pub use text::{parse_map, parse_poly};
pub use witness::{verify_division, Conclusion, WitnessConfig, WitnessError, WitnessReport};
