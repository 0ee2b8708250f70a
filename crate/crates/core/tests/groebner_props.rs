use dgdm::groebner::{buchberger, syzygies, FreeModuleElement};
use dgdm::random::{self, SeededRng};
use proptest::prelude::*;

fn vector(rng: &mut SeededRng, nvars: usize, rank: usize) -> FreeModuleElement {
    let max_exp = if nvars == 1 && rank == 1 { 2 } else { 1 };
    FreeModuleElement::from_coords((0..rank).map(|_| random::weyl_element(rng, nvars, max_exp, 2)).collect())
}

fn generators(rng: &mut SeededRng, nvars: usize, rank: usize, count: usize) -> Vec<FreeModuleElement> {
    (0..count).map(|_| vector(rng, nvars, rank)).filter(|v| !v.is_zero()).collect()
}

fn combination(rng: &mut SeededRng, gens: &[FreeModuleElement], nvars: usize, rank: usize) -> FreeModuleElement {
    let mut v = FreeModuleElement::zero(nvars, rank);
    for g in gens {
        v = v.add(&g.left_mul(&random::weyl_element(rng, nvars, 1, 2)));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_form_is_idempotent(s in any::<u64>(), rank in 1usize..=2) {
        let mut rng = random::rng(s);
        let gens = generators(&mut rng, 1, rank, 2);
        let gb = buchberger(1, rank, &gens).unwrap();
        for _ in 0..5 {
            let v = vector(&mut rng, 1, rank);
            let nf = gb.normal_form(&v).unwrap();
            prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
            // v - nf(v) lies in the module
            prop_assert!(gb.member(&v.sub(&nf)).unwrap());
        }
    }

    #[test]
    fn lifts_multiply_out(s in any::<u64>(), rank in 1usize..=2) {
        let mut rng = random::rng(s);
        let gens = generators(&mut rng, 1, rank, 3);
        let gb = buchberger(1, rank, &gens).unwrap();
        let v = combination(&mut rng, &gens, 1, rank);
        let c = gb.lift(&v).unwrap().expect("combinations are members");
        prop_assert_eq!(c.apply(&gens, rank), v);
    }

    #[test]
    fn syzygies_are_relations(s in any::<u64>(), rank in 1usize..=2) {
        let mut rng = random::rng(s);
        let rows = generators(&mut rng, 1, rank, 3);
        let syz = syzygies(1, &rows, rank).unwrap();
        for v in syz.generators() {
            prop_assert!(v.apply(&rows, rank).is_zero());
        }
        // the obvious Koszul-type relation among equal rows is found
        if let Some(r) = rows.first() {
            let twice = vec![r.clone(), r.clone()];
            let syz = syzygies(1, &twice, rank).unwrap();
            let mut rel = FreeModuleElement::unit(1, 2, 0);
            rel = rel.sub(&FreeModuleElement::unit(1, 2, 1));
            prop_assert!(syz.member(&rel).unwrap());
        }
    }

    #[test]
    fn basis_does_not_depend_on_generator_order(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let nvars = 1 + (s % 2) as usize;
        let rank = 3 - nvars;
        let gens = generators(&mut rng, nvars, rank, 3);
        let mut rev = gens.clone();
        rev.reverse();
        let a = buchberger(nvars, rank, &gens).unwrap();
        let b = buchberger(nvars, rank, &rev).unwrap();
        prop_assert!(a.same_module(&b).unwrap());
        for k in 0..50 {
            let v = if k % 2 == 0 { combination(&mut rng, &gens, nvars, rank) } else { vector(&mut rng, nvars, rank) };
            prop_assert_eq!(a.member(&v).unwrap(), b.member(&v).unwrap());
        }
    }
}
