use std::collections::BTreeMap;

use dgdm::random;
use dgdm::weyl::{parse_operator, Monomial, Polynomial, Rational, WeylElement};
use num_traits::Zero;
use proptest::prelude::*;

/// `x^a d^b` applied to `f` by repeated differentiation, term by term.
fn apply(p: &WeylElement, f: &Polynomial) -> Polynomial {
    let n = f.nvars();
    let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (m, c) in p.terms() {
        for (e, fc) in f.terms() {
            let mut e2 = e.clone();
            let mut coeff = c * fc;
            let mut dead = false;
            for i in 0..n {
                for _ in 0..m.d[i] {
                    if e2[i] == 0 {
                        dead = true;
                        break;
                    }
                    coeff *= Rational::from_integer(e2[i].into());
                    e2[i] -= 1;
                }
            }
            if dead {
                continue;
            }
            for i in 0..n {
                e2[i] += m.x[i];
            }
            *out.entry(e2).or_insert_with(Rational::zero) += coeff;
        }
    }
    Polynomial::from_terms(n, out)
}

fn symbol_product(a: &BTreeMap<Monomial, Rational>, b: &BTreeMap<Monomial, Rational>) -> BTreeMap<Monomial, Rational> {
    let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            let x = m1.x.iter().zip(&m2.x).map(|(u, v)| u + v).collect();
            let d = m1.d.iter().zip(&m2.d).map(|(u, v)| u + v).collect();
            *out.entry(Monomial::new(x, d)).or_insert_with(Rational::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn element(seed: u64, nvars: usize, max_exp: u32, terms: usize) -> WeylElement {
    random::weyl_element(&mut random::rng(seed), nvars, max_exp, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_and_unital(s in any::<u64>(), nvars in 1usize..=2) {
        let mut rng = random::rng(s);
        let p = random::weyl_element(&mut rng, nvars, 4, 5);
        let q = random::weyl_element(&mut rng, nvars, 4, 5);
        let r = random::weyl_element(&mut rng, nvars, 4, 5);
        let left = p.multiply(&q).unwrap().multiply(&r).unwrap();
        let right = p.multiply(&q.multiply(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(WeylElement::one(nvars).multiply(&p).unwrap(), p.clone());
        prop_assert_eq!(p.multiply(&WeylElement::one(nvars)).unwrap(), p);
    }

    #[test]
    fn action_is_a_module_structure(s in any::<u64>(), nvars in 1usize..=2) {
        let mut rng = random::rng(s);
        let p = random::weyl_element(&mut rng, nvars, 3, 4);
        let q = random::weyl_element(&mut rng, nvars, 3, 4);
        let f = random::polynomial(&mut rng, nvars, 5, 4);
        let pq = p.multiply(&q).unwrap();
        prop_assert_eq!(pq.act_on_poly(&f).unwrap(), apply(&pq, &f));
        prop_assert_eq!(apply(&pq, &f), apply(&p, &apply(&q, &f)));
    }

    #[test]
    fn order_and_symbol_are_multiplicative(s in any::<u64>(), nvars in 1usize..=2) {
        let p = element(s, nvars, 4, 5);
        let q = element(s ^ 0x5555, nvars, 4, 5);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let (op, sp) = p.order_and_symbol().unwrap();
        let (oq, sq) = q.order_and_symbol().unwrap();
        let (opq, spq) = p.multiply(&q).unwrap().order_and_symbol().unwrap();
        prop_assert_eq!(opq, op + oq);
        prop_assert_eq!(spq, symbol_product(&sp, &sq));
    }

    #[test]
    fn filtration_pieces_are_homogeneous_and_sum_back(s in any::<u64>(), nvars in 1usize..=2) {
        let p = element(s, nvars, 4, 6);
        let parts = p.filtration_decompose();
        let mut sum = WeylElement::zero(nvars);
        for (j, part) in parts.iter().enumerate() {
            prop_assert!(part.terms().all(|(m, _)| m.order() as usize == j));
            sum = &sum + part;
        }
        prop_assert_eq!(sum, p.clone());
        if let Some(last) = parts.last() {
            prop_assert!(!last.is_zero());
        }
        // rebuilding from the pieces gives the same decomposition
        prop_assert_eq!(parts.iter().fold(WeylElement::zero(nvars), |a, b| &a + b).filtration_decompose(), parts);
    }

    #[test]
    fn printing_reparses(s in any::<u64>(), nvars in 1usize..=3) {
        let p = element(s, nvars, 4, 6);
        prop_assert_eq!(parse_operator(&p.to_string(), nvars).unwrap(), p);
    }
}

#[test]
fn defining_relation() {
    let p = parse_operator("d1*x1", 1).unwrap();
    assert_eq!(p, parse_operator("x1*d1 + 1", 1).unwrap());
    assert!(parse_operator("x1 + + d1", 1).is_err());
}
