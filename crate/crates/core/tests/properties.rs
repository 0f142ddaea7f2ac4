use defcoh::algebra::Bimodule;
use defcoh::generate;
use defcoh::hochschild::{bar_cochain_complex, cocycle_to_extension, hh, is_split};
use defcoh::linalg::{Field, Matrix, Scalar};
use defcoh::site::nerve_complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prime_field_inverse(n in 1i64..97) {
        let f = Field::Prime(97);
        let x = f.from_i64(n);
        prop_assert!((&x * &x.inverse()).is_one());
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6, field in field_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_fn(field, rows, cols, |_, _| generate::random_scalar(field, &mut rng));
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), cols);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn bar_complex_squares_to_zero(seed in any::<u64>(), field in field_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = generate::random_algebra(field, 3, &mut rng);
        let m = generate::random_bimodule(&s, &mut rng);
        prop_assert!(bar_cochain_complex(&s.algebra, &m, 3).unwrap().is_complex());
    }

    #[test]
    fn extension_classifies(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = generate::random_algebra(Field::Rational, 3, &mut rng);
        let m = Bimodule::regular(&s.algebra);
        let z = generate::random_2_cocycle(&s.algebra, &m, &mut rng);
        let e = cocycle_to_extension(&s.algebra, &m, &z).unwrap();
        prop_assert_eq!(e.cocycle(), z.clone());
        let class = hh(&s.algebra, &m, 2).unwrap().class_of(&z).unwrap();
        prop_assert_eq!(class.iter().all(Scalar::is_zero), is_split(&e).is_some());
    }

    #[test]
    fn final_object_kills_higher_nerve_cohomology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = generate::random_presheaf(Field::Rational, 4, 2, true, &mut rng);
        let b = nerve_complex(&p.site, p.modules.linear()).betti();
        prop_assert!(b.iter().skip(1).all(|&x| x == 0));
    }
}
