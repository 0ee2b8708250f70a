use dgdm::dcomplex::{ChainMap, DMatrix, FreeDComplex};
use dgdm::groebner::{buchberger, FreeModuleElement};
use dgdm::model::{
    attach_cells, certify_cofibration, is_fibration, is_weq, pushout, CofibrationVerdict, GeneratingMap,
};
use dgdm::random;
use dgdm::verify::properness_free_instance;
use proptest::prelude::*;
use rand::Rng;

fn matrix(nvars: usize, cols: usize, rows: Vec<FreeModuleElement>) -> DMatrix {
    DMatrix::from_rows(nvars, cols, rows).unwrap()
}

/// `B ⊕ C -> B`.
fn projection(b: &FreeDComplex, c: &FreeDComplex) -> ChainMap {
    let e = b.direct_sum(c);
    let maps = (0..=e.top())
        .map(|k| {
            let rows = (0..e.rank(k))
                .map(|i| {
                    if i < b.rank(k) {
                        FreeModuleElement::unit(1, b.rank(k), i)
                    } else {
                        FreeModuleElement::zero(1, b.rank(k))
                    }
                })
                .collect();
            matrix(1, b.rank(k), rows)
        })
        .collect();
    ChainMap::new(e, b.clone(), maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pushouts_factor_uniquely(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let x = random::complex(&mut rng, 1, 2, 3);
        prop_assume!(x.rank(0) > 0);
        let f = if s % 2 == 0 {
            random::weq_from(&mut rng, &x, 2)
        } else {
            let y = random::complex(&mut rng, 1, 2, 2);
            random::null_homotopic(&mut rng, &x, &y)
        };
        let a = random::poly_vector(&mut rng, 1, x.rank(0), 1);
        let g = attach_cells(&x, &[(1, a)]).unwrap();
        let po = pushout(&f, &g).unwrap();
        prop_assert_eq!(f.then(&po.from_y).unwrap(), g.then(&po.from_w).unwrap());
        let h = random::conjugate(&mut rng, &po.object, 1);
        let q = po.from_y.then(&h).unwrap();
        let p = po.from_w.then(&h).unwrap();
        prop_assert_eq!(po.factor(&q, &p).unwrap(), h);
    }

    #[test]
    fn cofibrations_lift_against_trivial_fibrations(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let n = rng.gen_range(1..=2);
        let b = random::complex(&mut rng, 1, 2, 2);
        let c = random::conjugate(&mut rng, &FreeDComplex::disk(1, n).unwrap(), 2).target().clone();
        let e = b.direct_sum(&c);
        let f = projection(&b, &c);
        prop_assert!(is_fibration(&f).unwrap());
        prop_assert!(is_weq(&f).unwrap());
        let g = GeneratingMap::Iota(n).chain_map(1);
        prop_assert_eq!(certify_cofibration(&g).unwrap().verdict, CofibrationVerdict::Certified);

        // a commuting square u: S^{n-1} -> E, v: D^n -> B
        let bn = random::poly_vector(&mut rng, 1, b.rank(n), 1);
        let zb = b.differential(n).apply(&bn);
        let zc = random::poly_vector(&mut rng, 1, c.rank(n - 1), 2);
        let z = zb.concat(&zc);
        let sphere = g.source().clone();
        let disk = g.target().clone();
        let mut umaps: Vec<DMatrix> = (0..n).map(|k| DMatrix::zero(1, sphere.rank(k), e.rank(k))).collect();
        umaps[n - 1] = matrix(1, e.rank(n - 1), vec![z.clone()]);
        let u = ChainMap::new(sphere, e.clone(), umaps).unwrap();
        let mut vmaps: Vec<DMatrix> = (0..=n).map(|k| DMatrix::zero(1, disk.rank(k), b.rank(k))).collect();
        vmaps[n - 1] = matrix(1, b.rank(n - 1), vec![zb]);
        vmaps[n] = matrix(1, b.rank(n), vec![bn.clone()]);
        let v = ChainMap::new(disk.clone(), b.clone(), vmaps).unwrap();
        prop_assert_eq!(g.then(&v).unwrap(), u.then(&f).unwrap());

        // solve d(cn) = zc in the contractible summand
        let gb = buchberger(1, c.rank(n - 1), c.differential(n).rows()).unwrap();
        let cn = gb.lift(&zc).unwrap().expect("the summand is acyclic");
        let mut hmaps: Vec<DMatrix> = (0..=n).map(|k| DMatrix::zero(1, disk.rank(k), e.rank(k))).collect();
        hmaps[n - 1] = matrix(1, e.rank(n - 1), vec![z]);
        hmaps[n] = matrix(1, e.rank(n), vec![bn.concat(&cn)]);
        let h = ChainMap::new(disk, e, hmaps).unwrap();
        prop_assert_eq!(g.then(&h).unwrap(), u);
        prop_assert_eq!(h.then(&f).unwrap(), v);
    }

    #[test]
    fn pushouts_of_weqs_along_cell_attachments_are_weqs(s in any::<u64>()) {
        let step = properness_free_instance(&mut random::rng(s)).unwrap();
        prop_assert!(!step.is_fail(), "{:?}", step);
    }
}
