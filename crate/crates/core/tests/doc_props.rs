use std::sync::Arc;

use dgdm::doc::{Body, Document, SuiteConfig};
use dgdm::random;
use proptest::prelude::*;
use rand::Rng;

fn round_trip(doc: &Document) -> Document {
    let back = Document::parse(&doc.to_text()).unwrap();
    assert_eq!(&back, doc);
    back
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn operators(s in any::<u64>(), nvars in 1usize..=3) {
        let p = random::weyl_element(&mut random::rng(s), nvars, 4, 6);
        prop_assert_eq!(round_trip(&Document::operator(&p)).to_operator().unwrap(), p);
    }

    #[test]
    fn complexes_and_maps(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let c = random::complex(&mut rng, 1, 3, 3);
        prop_assert_eq!(round_trip(&Document::complex(&c)).to_complex().unwrap(), c.clone());
        let f = random::weq_from(&mut rng, &c, 2);
        prop_assert_eq!(round_trip(&Document::chain_map(&f)).to_chain_map().unwrap(), f);
    }

    #[test]
    fn sullivan_objects(s in any::<u64>()) {
        let mut rng = random::rng(s);
        let a = random::sullivan_algebra(&mut rng, 1);
        prop_assert_eq!(round_trip(&Document::algebra(&a)).to_algebra().unwrap(), a.clone());
        let a = Arc::new(a);
        let cells = rng.gen_range(0..=3);
        let m = random::sullivan_module(&mut rng, &a, cells, 2);
        prop_assert_eq!(round_trip(&Document::amodule(&m).unwrap()).to_amodule().unwrap(), m);
    }

    #[test]
    fn suite_configs(seed in any::<u64>(), filter in proptest::option::of("[a-z_]{1,12}"), instances in proptest::option::of(1usize..500), truncation in proptest::option::of(2u32..9)) {
        let cfg = SuiteConfig { seed, filter, instances, truncation };
        let doc = Document::new(Body::SuiteConfig(cfg.clone()));
        prop_assert_eq!(round_trip(&doc).to_suite_config().unwrap(), cfg);
    }
}
