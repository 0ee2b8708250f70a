use dgdm::dcomplex::obasis::exact_at_level;
use dgdm::dcomplex::{free_as_obasis, mapping_cone, ChainMap, FreeDComplex};
use dgdm::groebner::FreeModuleElement;
use dgdm::random;
use dgdm::verify::{run_check, CheckParams};
use dgdm::weyl::{Monomial, WeylElement};
use proptest::prelude::*;

/// A failing slice witness as an element of `C_p`.
fn witness_element(c: &FreeDComplex, degree: usize, cycle: &[(Vec<u32>, Vec<u32>, dgdm::weyl::Rational)]) -> FreeModuleElement {
    let nvars = c.nvars();
    let mut coords = vec![WeylElement::zero(nvars); c.rank(degree)];
    for (a, key, coef) in cycle {
        coords[key[0] as usize].add_term(Monomial::new(a.clone(), key[1..].to_vec()), coef.clone());
    }
    FreeModuleElement::from_coords(coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_are_deterministic(s in 0u64..1000, which in 0usize..4) {
        let name = ["filtration_splitting", "properness_random", "cmon_under_roundtrip", "kunneth_mapcone"][which];
        let params = CheckParams { seed: s, instances: Some(3), truncation: Some(3) };
        let a = run_check(name, &params).unwrap();
        let b = run_check(name, &params).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert!(a.passed());
    }

    #[test]
    fn failure_witnesses_reverify(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let c = random::complex(&mut rng, 1, 2, 3);
        let cone = mapping_cone(&ChainMap::zero(&c, &FreeDComplex::zero(1)));
        match exact_at_level(&free_as_obasis(&cone), 6) {
            Some(w) => {
                let z = witness_element(&cone, w.degree, &w.cycle);
                prop_assert!(!z.is_zero());
                if w.degree > 0 {
                    prop_assert!(cone.differential(w.degree).apply(&z).is_zero());
                }
                prop_assert!(!cone.boundaries(w.degree).unwrap().member(&z).unwrap());
            }
            None => prop_assert!(c.is_acyclic().unwrap()),
        }
    }
}
