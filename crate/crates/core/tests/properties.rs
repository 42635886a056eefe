use jung_tame::{
    decompose, invert, parse_poly, random_tame, recompose, Coeff, FieldMode, GenConfig, PolyMap, Polynomial,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly(max_deg: u32, gaussian: bool) -> impl Strategy<Value = Polynomial> {
    let term = (-9i64..=9, 1i64..=5, -4i64..=4, 0..=max_deg, 0..=max_deg);
    prop::collection::vec(term, 0..6).prop_map(move |ts| {
        let mode = if gaussian { FieldMode::Gaussian } else { FieldMode::Rational };
        let mut p = Polynomial::zero(mode);
        for (n, d, im, i, j) in ts {
            let im = if gaussian { ratio(im, d) } else { ratio(0, 1) };
            let c = Coeff::new(ratio(n, d), im);
            p = p.checked_add(&Polynomial::monomial(c, i, j, mode)).unwrap();
        }
        p
    })
}

fn any_poly(max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop_oneof![poly(max_deg, false), poly(max_deg, true)]
}

fn mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.checked_mul(b).unwrap()
}
fn add(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.checked_add(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3, true), b in poly(3, true), c in poly(3, true)) {
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn leading_form_is_multiplicative(a in poly(4, true), b in poly(4, true)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let lhs = mul(&a, &b).leading_form().unwrap();
        let rhs = mul(&a.leading_form().unwrap(), &b.leading_form().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_then_parse(p in any_poly(6)) {
        let back = parse_poly(&p.to_string(), p.mode()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn jacobian_chain_rule(f in (poly(3, false), poly(3, false)), g in (poly(2, false), poly(2, false))) {
        let f = PolyMap::new(f.0, f.1).unwrap();
        let g = PolyMap::new(g.0, g.1).unwrap();
        let fg = f.compose(&g).unwrap();
        let pulled = f.jacobian().substitute(&g.p, &g.q).unwrap();
        prop_assert_eq!(fg.jacobian(), mul(&pulled, &g.jacobian()));
    }

    #[test]
    fn decomposition_round_trip(seed in any::<u64>(), depth in 1usize..=4, deg in 2u32..=4, gaussian in any::<bool>()) {
        let mode = if gaussian { FieldMode::Gaussian } else { FieldMode::Rational };
        let cfg = GenConfig { seed, depth, max_tri_degree: deg, coeff_bound: 4, field_mode: mode };
        let (f, _) = random_tame(&cfg).unwrap();
        let d = decompose(&f).unwrap();
        prop_assert_eq!(recompose(&d), f.clone());
        prop_assert!(d.inverse().apply_after(&f).is_identity());
        let inv = invert(&f).unwrap();
        prop_assert_eq!(&inv, &recompose(&d.inverse()));
        // Plain substitution is quadratic in the degree, so only small maps go through it.
        if f.max_degree() <= 4 {
            prop_assert!(inv.compose(&f).unwrap().is_identity());
            prop_assert!(f.compose(&inv).unwrap().is_identity());
        }
    }
}
