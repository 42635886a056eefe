//! Benchmark inputs; the benches themselves live in `benches/`.

use jung_tame::{random_tame, FieldMode, GenConfig, PolyMap};

/// The first generated map (by seed) reaching the worst-case degree
/// `tri_degree^ceil(depth / 2)`, or the largest one seen in 1000 seeds.
pub fn sample_map(depth: usize, tri_degree: u32) -> PolyMap {
    let mut best: Option<PolyMap> = None;
    for seed in 0..1000 {
        let cfg = GenConfig { seed, depth, max_tri_degree: tri_degree, coeff_bound: 5, field_mode: FieldMode::Rational };
        let f = random_tame(&cfg).expect("benchmark configs are valid").0;
        if f.max_degree() as u64 == cfg.worst_case_degree() {
            return f;
        }
        if best.as_ref().is_none_or(|b| b.max_degree() < f.max_degree()) {
            best = Some(f);
        }
    }
    best.expect("at least one seed")
}
