use jung_tame::{random_tame, verify_division, Conclusion, FieldMode, GenConfig, WitnessConfig};

#[test]
fn generated_maps_pass_every_verdict() {
    let wc = WitnessConfig { tol: 1e-6, ..WitnessConfig::default() };
    let mut checked = 0;
    for seed in 0..200u64 {
        let cfg = GenConfig {
            seed,
            depth: 1 + (seed % 4) as usize,
            max_tri_degree: 2 + (seed % 2) as u32,
            coeff_bound: 3,
            field_mode: if seed % 2 == 0 { FieldMode::Rational } else { FieldMode::Gaussian },
        };
        let (f, _) = random_tame(&cfg).unwrap();
        if f.max_degree() > 8 {
            continue;
        }
        let r = verify_division(&f, &wc).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(r.all_pass(), "seed {seed}: {:?}", r.verdicts);
        let (a, b) = r.degrees;
        match r.conclusion {
            Some(Conclusion::QDividesP) => assert_eq!(a % b, 0),
            Some(Conclusion::PDividesQ) => assert_eq!(b % a, 0),
            None => panic!("seed {seed}: no conclusion"),
        }
        checked += 1;
    }
    assert!(checked >= 100, "{checked}");
}
