use std::sync::Arc;

use dgdm::amod::{AModule, ModKey, ModuleElement};
use dgdm::dga::AlgebraElement;
use dgdm::random::{self, SeededRng};
use dgdm::verify::{cmon_instance, hac3_instance, monad_instance, pushout_universal_instance};
use dgdm::weyl::Rational;
use proptest::prelude::*;
use rand::Rng;

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k.is_multiple_of(2) { 1.into() } else { (-1).into() })
}

fn setup(rng: &mut SeededRng) -> Arc<AModule> {
    let a = Arc::new(random::sullivan_algebra(rng, 1));
    let cells = rng.gen_range(1..=3);
    Arc::new(random::sullivan_module(rng, &a, cells, 2))
}

fn probe(rng: &mut SeededRng, m: &AModule) -> (AlgebraElement, usize, ModKey) {
    let c = rng.gen_range(0..m.cells().len());
    let keys = m.keys(c, 2);
    let k = keys[rng.gen_range(0..keys.len())].clone();
    let deg = rng.gen_range(0..=2);
    (random::algebra_element(rng, m.algebra(), deg, 2, 2), deg, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differential_is_the_prescribed_one(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let m = setup(&mut rng);
        let alg = m.algebra().clone();
        for _ in 0..5 {
            let (a, deg, k) = probe(&mut rng, &m);
            let x = m.act(&a, &m.key_element(k.clone()));
            let expected = m
                .act(&alg.d(&a).unwrap(), &m.key_element(k.clone()))
                .add(&m.act(&a, &m.d_key(&k)).scale(&sign(deg)));
            prop_assert_eq!(m.d(&x), expected);
            prop_assert!(m.d(&m.d(&x)).is_zero());
        }
        prop_assert!(m.as_obasis().check_d_squared(2).is_ok());
    }

    #[test]
    fn action_is_associative_and_unital(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let m = setup(&mut rng);
        let alg = m.algebra().clone();
        let deg = rng.gen_range(0..=3);
        let x = random::module_element(&mut rng, &m, deg, 2, 3);
        let (a1, _, _) = probe(&mut rng, &m);
        let (a2, _, _) = probe(&mut rng, &m);
        prop_assert_eq!(m.act(&AlgebraElement::one(1), &x), x.clone());
        let lhs = m.act(&a1, &m.act(&a2, &x));
        let rhs = m.act(&alg.multiply(&a1, &a2).unwrap(), &x);
        prop_assert_eq!(lhs, rhs);
        // d commutes with the D-action
        prop_assert_eq!(m.d(&m.act_d(0, &x)), m.act_d(0, &m.d(&x)));
        prop_assert_eq!(m.d(&ModuleElement::zero()), ModuleElement::zero());
    }

    #[test]
    fn module_and_algebra_pushouts_are_universal(s in any::<u64>()) {
        let step = pushout_universal_instance(&mut random::rng(s)).unwrap();
        prop_assert!(!step.is_fail(), "{:?}", step);
    }

    #[test]
    fn tensoring_with_sullivan_modules_preserves_weqs(s in any::<u64>()) {
        let step = hac3_instance(&mut random::rng(s), 3).unwrap();
        prop_assert!(!step.is_fail(), "{:?}", step);
    }

    #[test]
    fn monoids_and_monads(s in any::<u64>()) {
        prop_assert!(!cmon_instance(&mut random::rng(s)).unwrap().is_fail());
        prop_assert!(!monad_instance(&mut random::rng(s)).unwrap().is_fail());
    }
}
