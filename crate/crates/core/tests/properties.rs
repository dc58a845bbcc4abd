use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tricover::algebra::{random_form, random_line, restrict_to_line};
use tricover::chart::verify_u1_discriminant_identity;
use tricover::miranda::MultiplicationTable;
use tricover::tan::{abc_data, tan_decomposition};
use tricover::testgen::{random_minimal_cubic, random_miranda};
use tricover::{Field, Form};

fn form() -> impl Strategy<Value = Form> {
    (0u32..=3, any::<u64>()).prop_map(|(d, seed)| random_form(d, seed, 4))
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(10007))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_div_inverts_mul(f in form(), g in form()) {
        prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), f);
    }

    #[test]
    fn gcd_scales_by_common_factor(f in form(), g in form(), h in form()) {
        let lhs = (&f * &h).gcd(&(&g * &h)).unwrap();
        let rhs = (&h * &f.gcd(&g).unwrap()).monic();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_parts(f in form(), g in form()) {
        let p = &f * &g.pow(2);
        let dec = p.squarefree_decomposition().unwrap();
        prop_assert_eq!(dec.expand(), p);
        for (part, _) in &dec.parts {
            let g = (0..3).fold(part.clone(), |acc, v| acc.gcd(&part.derivative(v)).unwrap());
            prop_assert!(g.is_constant());
        }
    }

    #[test]
    fn restriction_is_multiplicative(f in form(), g in form(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let line = random_line(&mut rng, 5);
        let lhs = restrict_to_line(&(&f * &g), &line);
        let rhs = &restrict_to_line(&f, &line) * &restrict_to_line(&g, &line);
        prop_assert_eq!(&lhs, &rhs);
        if !lhs.is_zero() {
            prop_assert_eq!(lhs.degree(), f.degree() + g.degree());
        }
    }

    #[test]
    fn tan_round_trip(seed in any::<u64>(), field in fields()) {
        let rc = random_minimal_cubic(seed, field);
        let td = tan_decomposition(&rc.minimal()).unwrap();
        prop_assert_eq!(td.s(), rc.s.expand());
        prop_assert_eq!(td.t(), rc.t.expand());
        prop_assert!(abc_data(&td).unwrap().gcd_formulas_agree);
    }

    #[test]
    fn u1_identity(seed in any::<u64>(), field in fields()) {
        let td = tan_decomposition(&random_minimal_cubic(seed, field).minimal()).unwrap();
        prop_assert!(verify_u1_discriminant_identity(&td).unwrap().holds);
    }

    #[test]
    fn miranda_algebra_is_associative(seed in 0u64..10_000) {
        let md = random_miranda(seed, Field::Rational);
        let table = MultiplicationTable::new(md.a(), md.b(), md.c(), md.d());
        prop_assert!(table.is_associative());
    }
}
