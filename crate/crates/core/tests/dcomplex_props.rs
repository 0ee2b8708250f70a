use dgdm::dcomplex::{
    free_as_obasis, homology, is_weak_equivalence, mapping_cone, tensor_map_with_connection, tensor_with_connection,
    truncated_acyclicity, ChainMap, ConnectionModule, DMatrix, FreeDComplex,
};
use dgdm::random;
use dgdm::Error;
use proptest::prelude::*;

fn connection(s: u64) -> ConnectionModule {
    let mut rng = random::rng(s);
    let p = random::polynomial(&mut rng, 1, 2, 2);
    ConnectionModule::new(1, vec![vec![vec![p]]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mutated_differentials_are_rejected_at_the_right_degree(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let c = random::complex(&mut rng, 1, 3, 4);
        prop_assume!(c.top() >= 2);
        let n = 1 + (s as usize) % c.top();
        prop_assume!(c.rank(n) > 0 && c.rank(n - 1) > 0);
        let mut diffs: Vec<DMatrix> = (1..=c.top()).map(|k| c.differential(k)).collect();
        let (i, j) = ((s >> 8) as usize % c.rank(n), (s >> 16) as usize % c.rank(n - 1));
        let bumped = diffs[n - 1].entry(i, j) + &random::weyl_element(&mut rng, 1, 1, 2);
        diffs[n - 1].set(i, j, bumped);
        let first_bad = (2..=c.top()).find(|&k| !diffs[k - 1].then(&diffs[k - 2]).is_zero());
        let built = FreeDComplex::new(1, c.ranks().to_vec(), diffs);
        match first_bad {
            Some(k) => prop_assert_eq!(built.unwrap_err(), Error::NotAComplex { degree: k }),
            None => prop_assert!(built.is_ok()),
        }
    }

    #[test]
    fn homology_vanishes_exactly_when_acyclic(s in any::<u64>()) {
        let c = random::complex(&mut random::rng(s), 1, 2, 3);
        for n in 0..=c.top() {
            prop_assert_eq!(homology(&c, n).unwrap().is_zero(), c.is_acyclic_at(n).unwrap());
        }
    }

    #[test]
    fn cone_commutes_with_twisting(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let x = random::complex(&mut rng, 1, 2, 2);
        let f = if s % 2 == 0 { random::weq_from(&mut rng, &x, 2) } else {
            let y = random::complex(&mut rng, 1, 2, 2);
            random::null_homotopic(&mut rng, &x, &y)
        };
        let m = connection(s ^ 0xabc);
        let left = mapping_cone(&tensor_map_with_connection(&f, &m).unwrap());
        let right = tensor_with_connection(&mapping_cone(&f), &m).unwrap();
        prop_assert_eq!(left.ranks(), right.ranks());
        for n in 0..=left.top() {
            prop_assert!(left.cycles(n).unwrap().same_module(&right.cycles(n).unwrap()).unwrap());
            prop_assert!(left.boundaries(n).unwrap().same_module(&right.boundaries(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn exact_and_truncated_acyclicity_agree(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let c = random::complex(&mut rng, 1, 2, 3);
        let f = random::weq_from(&mut rng, &c, 2);
        prop_assert!(is_weak_equivalence(&f).unwrap());
        prop_assert!(truncated_acyclicity(&free_as_obasis(&mapping_cone(&f)), 6).unwrap().passed());
        let exact = c.is_acyclic().unwrap();
        prop_assert_eq!(truncated_acyclicity(&free_as_obasis(&c), 6).unwrap().passed(), exact);
        let zero = ChainMap::zero(&c, &c);
        prop_assert_eq!(is_weak_equivalence(&zero).unwrap(), exact);
        prop_assert_eq!(truncated_acyclicity(&free_as_obasis(&mapping_cone(&zero)), 6).unwrap().passed(), exact);
    }
}

#[test]
fn disks_are_acyclic_spheres_are_not() {
    for n in 1..=4 {
        let d = FreeDComplex::disk(1, n).unwrap();
        assert!((0..=n).all(|k| homology(&d, k).unwrap().is_zero()));
        let s = FreeDComplex::sphere(1, n);
        assert!(!homology(&s, n).unwrap().is_zero());
    }
}
