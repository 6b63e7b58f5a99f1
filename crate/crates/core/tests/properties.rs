mod common;

use artin_cfe::cfe::{cfe_expand, cfe_period};
use artin_cfe::hecke::{cylinder_measure, CylinderSpec};
use artin_cfe::natext::{natext_step, natext_unstep, pair_make};
use artin_cfe::{FieldCtx, Poly, Surd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7)]
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..7, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divmod_reconstructs(q in field(), a in coeffs(10), b in coeffs(6)) {
        let k = FieldCtx::prime(q).unwrap();
        let (a, b) = (Poly::from_ints(&k, &a), Poly::from_ints(&k, &b));
        prop_assume!(!b.is_zero());
        let (qt, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&qt * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn conjugation_is_an_involution(q in field(), seed in any::<u64>()) {
        let k = FieldCtx::prime(q).unwrap();
        let f = common::random_surd(&k, &mut ChaCha8Rng::seed_from_u64(seed), 4);
        prop_assert_eq!(f.conjugate().conjugate(), f.clone());
        prop_assert_eq!(Surd::parse(&k, &f.to_literal()).unwrap(), f);
    }

    #[test]
    fn cycles_reexpand_to_themselves(q in field(), seed in any::<u64>()) {
        let k = FieldCtx::prime(q).unwrap();
        let f = common::random_surd(&k, &mut ChaCha8Rng::seed_from_u64(seed), 4);
        let c = cfe_period(&f).unwrap();
        let again = cfe_expand(&c.cycle_entry, 2 * c.ell());
        prop_assert_eq!(&again[1..=c.ell()], &c.cycle[..]);
        prop_assert_eq!(&again[c.ell() + 1..], &c.cycle[..]);
        prop_assert_eq!(c.reconstruct().unwrap(), f);
    }

    #[test]
    fn natext_inverse(q in field(), seed in any::<u64>(), steps in 1usize..30) {
        let k = FieldCtx::prime(q).unwrap();
        let f = common::random_reduced(&k, &mut ChaCha8Rng::seed_from_u64(seed), 4);
        let p0 = pair_make(&f).unwrap();
        let mut p = p0.clone();
        for _ in 0..steps {
            p = natext_step(&p).1;
        }
        for _ in 0..steps {
            p = natext_unstep(&p).1;
        }
        prop_assert_eq!(p, p0);
    }

    #[test]
    fn cylinder_mass_is_multiplicative(q in field(), ds in prop::collection::vec(coeffs(4), 1..5)) {
        let k = FieldCtx::prime(q).unwrap();
        let digits: Vec<Poly> = ds.iter().map(|c| Poly::from_ints(&k, c)).collect();
        let spec = CylinderSpec::new(digits.clone());
        prop_assume!(spec.is_ok());
        let s: usize = digits.iter().map(|d| d.deg().unwrap()).sum();
        let expected = BigRational::from_integer(BigInt::from(q)).pow(2 * s as u32).recip();
        prop_assert_eq!(cylinder_measure(&spec.unwrap()), expected);
    }
}
