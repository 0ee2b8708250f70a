//! Seeded generators of small complexes, automorphisms and weak equivalences.
//! Every output is valid by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::sync::Arc;

use crate::amod::{AModule, AModuleMorphism, CellRule, ModuleElement};
use crate::dcomplex::{ChainMap, DMatrix, FreeDComplex};
use crate::dga::{AlgebraElement, SullivanAlgebra};
use crate::groebner::FreeModuleElement;
use crate::weyl::{rat, Monomial, Polynomial, Rational, WeylElement};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_coefficient(rng: &mut SeededRng) -> Rational {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        rat(v)
    } else {
        rat(-v)
    }
}

/// A polynomial with at most `terms` terms of degree at most `max_degree`.
pub fn polynomial(rng: &mut SeededRng, nvars: usize, max_degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let mut left = rng.gen_range(0..=max_degree);
        for slot in e.iter_mut() {
            let k = rng.gen_range(0..=left);
            *slot = k;
            left -= k;
        }
        p.add_term(e, small_coefficient(rng));
    }
    p
}

/// A Weyl element with at most `terms` terms, exponents bounded by `max_exp`.
pub fn weyl_element(rng: &mut SeededRng, nvars: usize, max_exp: u32, terms: usize) -> WeylElement {
    let mut w = WeylElement::zero(nvars);
    for _ in 0..terms {
        let x = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        let d = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        w.add_term(Monomial::new(x, d), small_coefficient(rng));
    }
    w
}

/// A vector of `D^rank` with polynomial coordinates.
pub fn poly_vector(rng: &mut SeededRng, nvars: usize, rank: usize, max_degree: u32) -> FreeModuleElement {
    let coords = (0..rank)
        .map(|_| {
            if rng.gen_bool(0.5) {
                polynomial(rng, nvars, max_degree, 2).to_weyl()
            } else {
                WeylElement::zero(nvars)
            }
        })
        .collect();
    FreeModuleElement::new(nvars, coords).expect("same nvars")
}

/// An elementary automorphism of `D^r` and its inverse: `e_i ↦ e_i + P e_j`.
pub fn elementary(rng: &mut SeededRng, nvars: usize, r: usize, max_degree: u32) -> (DMatrix, DMatrix) {
    let mut m = DMatrix::identity(nvars, r);
    let mut inv = DMatrix::identity(nvars, r);
    if r >= 2 {
        let i = rng.gen_range(0..r);
        let mut j = rng.gen_range(0..r - 1);
        if j >= i {
            j += 1;
        }
        let p = polynomial(rng, nvars, max_degree, 2).to_weyl();
        m.set(i, j, p.clone());
        inv.set(i, j, -&p);
    }
    (m, inv)
}

/// An automorphism of `D^r` composed of a few elementary ones.
pub fn automorphism(rng: &mut SeededRng, nvars: usize, r: usize, steps: usize) -> (DMatrix, DMatrix) {
    let mut m = DMatrix::identity(nvars, r);
    let mut inv = DMatrix::identity(nvars, r);
    for _ in 0..steps {
        let (e, ei) = elementary(rng, nvars, r, 1);
        m = m.then(&e);
        inv = ei.then(&inv);
    }
    (m, inv)
}

/// Transports `c` along degreewise automorphisms; returns the isomorphism
/// `c -> c'`.
pub fn conjugate(rng: &mut SeededRng, c: &FreeDComplex, steps: usize) -> ChainMap {
    let nvars = c.nvars();
    let autos: Vec<(DMatrix, DMatrix)> = (0..=c.top()).map(|n| automorphism(rng, nvars, c.rank(n), steps)).collect();
    let diffs = (1..=c.top())
        .map(|n| autos[n].1.then(&c.differential(n)).then(&autos[n - 1].0))
        .collect();
    let target = FreeDComplex::new(nvars, c.ranks().to_vec(), diffs).expect("conjugate of a complex");
    ChainMap::new(c.clone(), target, autos.into_iter().map(|(m, _)| m).collect()).expect("isomorphism")
}

/// A sum of spheres, disks and two-term pieces `D -(·P)-> D`, conjugated by
/// automorphisms. Degrees stay within `0..=top`.
pub fn complex(rng: &mut SeededRng, nvars: usize, top: usize, pieces: usize) -> FreeDComplex {
    let mut c = FreeDComplex::zero(nvars);
    for _ in 0..pieces {
        let piece = match rng.gen_range(0..3) {
            0 => FreeDComplex::sphere(nvars, rng.gen_range(0..=top)),
            1 if top >= 1 => FreeDComplex::disk(nvars, rng.gen_range(1..=top)).expect("n >= 1"),
            _ if top >= 1 => {
                let n = rng.gen_range(1..=top);
                let p = polynomial(rng, nvars, 2, 2);
                let p = if p.is_zero() { Polynomial::x(nvars, 0) } else { p };
                let mut ranks = vec![0; n + 1];
                ranks[n] = 1;
                ranks[n - 1] = 1;
                let diffs = (1..=n)
                    .map(|k| {
                        if k == n {
                            DMatrix::from_entries(nvars, 1, vec![vec![p.to_weyl()]]).expect("1x1")
                        } else {
                            DMatrix::zero(nvars, ranks[k], ranks[k - 1])
                        }
                    })
                    .collect();
                FreeDComplex::new(nvars, ranks, diffs).expect("two-term complex")
            }
            _ => FreeDComplex::sphere(nvars, 0),
        };
        c = c.direct_sum(&piece);
    }
    conjugate(rng, &c, 2).target().clone()
}

/// A null-homotopic map `h = d s + s d: x -> y` for random `s`.
pub fn null_homotopic(rng: &mut SeededRng, x: &FreeDComplex, y: &FreeDComplex) -> ChainMap {
    let nvars = x.nvars();
    let top = x.top().max(y.top());
    let s: Vec<DMatrix> = (0..=top)
        .map(|n| {
            let rows = (0..x.rank(n)).map(|_| poly_vector(rng, nvars, y.rank(n + 1), 1)).collect();
            DMatrix::from_rows(nvars, y.rank(n + 1), rows).expect("shape")
        })
        .collect();
    let maps = (0..=top)
        .map(|n| {
            let a = s[n].then(&y.differential(n + 1));
            if n == 0 {
                a
            } else {
                a.add(&x.differential(n).then(&s[n - 1]))
            }
        })
        .collect();
    ChainMap::new(x.clone(), y.clone(), maps).expect("d s + s d is a chain map")
}

/// One elementary expansion: cells `u` in degree `n - 1` and `v` in degree
/// `n` with `d u = d w` and `d v = u - w` for a random `w`. The inclusion is
/// a weak equivalence.
pub fn expansion(rng: &mut SeededRng, x: &FreeDComplex, n: usize) -> ChainMap {
    let nvars = x.nvars();
    let w = poly_vector(rng, nvars, x.rank(n - 1), 1);
    let top = x.top().max(n);
    let mut ranks: Vec<usize> = (0..=top).map(|k| x.rank(k)).collect();
    ranks[n - 1] += 1;
    ranks[n] += 1;
    let extra = |k: usize| usize::from(k == n - 1 || k == n);
    let zero = |r: usize| FreeModuleElement::zero(nvars, r);
    let diffs = (1..=top)
        .map(|k| {
            let mut rows: Vec<FreeModuleElement> = x
                .differential(k)
                .rows()
                .iter()
                .map(|r| r.concat(&zero(extra(k - 1))))
                .collect();
            if k == n - 1 {
                let dw = x.differential(k).apply(&w);
                rows.push(dw.concat(&zero(extra(k - 1))));
            }
            if k == n {
                let mut r = w.scale(&rat(-1));
                r = r.concat(&FreeModuleElement::unit(nvars, 1, 0));
                rows.push(r);
            }
            DMatrix::from_rows(nvars, ranks[k - 1], rows).expect("shape")
        })
        .collect();
    let y = FreeDComplex::new(nvars, ranks, diffs).expect("expansion is a complex");
    let maps = (0..=top)
        .map(|k| {
            let rows = (0..x.rank(k))
                .map(|i| FreeModuleElement::unit(nvars, x.rank(k), i).concat(&zero(extra(k))))
                .collect();
            DMatrix::from_rows(nvars, y.rank(k), rows).expect("shape")
        })
        .collect();
    ChainMap::new(x.clone(), y, maps).expect("inclusion")
}

/// A weak equivalence out of `x`: expansions followed by an isomorphism.
pub fn weq_from(rng: &mut SeededRng, x: &FreeDComplex, max_degree: usize) -> ChainMap {
    let mut f = ChainMap::identity(x);
    for _ in 0..rng.gen_range(1..=2) {
        let n = rng.gen_range(1..=max_degree.max(1));
        let step = expansion(rng, f.target(), n);
        f = f.then(&step).expect("composable");
    }
    let iso = conjugate(rng, f.target(), 1);
    f.then(&iso).expect("composable")
}

/// A small Sullivan algebra: up to two closed generators of degree 1 or 2,
/// sometimes with one more generator whose differential is their product.
pub fn sullivan_algebra(rng: &mut SeededRng, nvars: usize) -> SullivanAlgebra {
    let mut a = SullivanAlgebra::ground(nvars);
    let gens = rng.gen_range(0..=2);
    for j in 0..gens {
        let deg = rng.gen_range(1..=2);
        a = a.extend(&format!("g{j}"), deg, AlgebraElement::zero(nvars)).expect("closed generator");
    }
    if gens == 2 && rng.gen_bool(0.5) {
        let prod = a.multiply(&a.generator(0), &a.generator(1)).expect("same algebra");
        if let Some(deg) = a.degree_of(&prod) {
            a = a.extend("e", deg + 1, prod).expect("product of closed generators is closed");
        }
    }
    a
}

/// A sum of up to `terms` basis words of the given degree with polynomial
/// coefficients.
pub fn algebra_element(rng: &mut SeededRng, a: &SullivanAlgebra, degree: usize, max_weight: u32, terms: usize) -> AlgebraElement {
    let words = a.words(degree, max_weight);
    let mut out = AlgebraElement::zero(a.nvars());
    if words.is_empty() {
        return out;
    }
    for _ in 0..terms {
        let w = words[rng.gen_range(0..words.len())].clone();
        let p = polynomial(rng, a.nvars(), 1, 1);
        out.add_word(w, &p);
    }
    out
}

/// A random element of `A ⊗ W` of the given degree.
pub fn module_element(rng: &mut SeededRng, m: &AModule, degree: usize, max_weight: u32, terms: usize) -> ModuleElement {
    let basis = m.basis(degree, max_weight);
    let mut out = ModuleElement::zero();
    if basis.is_empty() {
        return out;
    }
    for _ in 0..terms {
        let (k, w) = basis[rng.gen_range(0..basis.len())].clone();
        let mut a = AlgebraElement::zero(m.nvars());
        a.add_word(w, &polynomial(rng, m.nvars(), 1, 1));
        let mut piece = ModuleElement::zero();
        piece.add_term(k, &a);
        out = out.add(&piece);
    }
    out
}

/// A closed element of the given degree: a boundary plus multiples of
/// closed cells.
pub fn closed_module_element(rng: &mut SeededRng, m: &AModule, degree: usize) -> ModuleElement {
    let mut out = m.d(&module_element(rng, m, degree + 1, 2, 2));
    for (c, cell) in m.cells().iter().enumerate() {
        let closed = matches!(&cell.rule, CellRule::Assigned(v) if v.is_zero());
        if closed && cell.degree == degree && rng.gen_bool(0.5) {
            let p = polynomial(rng, m.nvars(), 1, 2);
            let b: Vec<u32> = (0..cell.arity * m.nvars()).map(|_| rng.gen_range(0..=1)).collect();
            let piece = m.act_d_power(&b, &m.basis_element(c)).times_poly(&p);
            out = out.add(&piece);
        }
    }
    out
}

/// A Sullivan module with `cells` cells of degree at most `max_degree`.
pub fn sullivan_module(rng: &mut SeededRng, a: &Arc<SullivanAlgebra>, cells: usize, max_degree: usize) -> AModule {
    let mut m = AModule::zero(a);
    for j in 0..cells {
        let degree = rng.gen_range(0..=max_degree);
        let value = if degree == 0 {
            ModuleElement::zero()
        } else {
            closed_module_element(rng, &m, degree - 1)
        };
        m = m.extend_differential(&format!("w{j}"), degree, value).expect("closed assignment");
    }
    m
}

/// The inclusion `P -> P ⊕ A⊗{v, u}` with `d v = d y`, `d u = v - y`; a
/// weak equivalence with a contractible quotient.
pub fn module_weq(rng: &mut SeededRng, p: &Arc<AModule>, max_degree: usize) -> AModuleMorphism {
    let n = rng.gen_range(1..=max_degree.max(1));
    let y = module_element(rng, p, n - 1, 0, 2);
    let q = p.extend_differential("v", n - 1, p.d(&y)).expect("boundary is closed");
    let v = q.basis_element(q.cells().len() - 1);
    let q = Arc::new(q.extend_differential("u", n, v.sub(&y)).expect("v - y is closed"));
    let images = (0..p.cells().len()).map(|c| q.basis_element(c)).collect();
    AModuleMorphism::from_cell_images(p, &q, images).expect("inclusion")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::is_weak_equivalence;

    #[test]
    fn deterministic() {
        let a = complex(&mut rng(5), 1, 3, 3);
        let b = complex(&mut rng(5), 1, 3, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn generated_weqs_are_weqs() {
        for seed in 0..5 {
            let mut r = rng(seed);
            let x = complex(&mut r, 1, 2, 2);
            let f = weq_from(&mut r, &x, 2);
            assert!(is_weak_equivalence(&f).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn null_homotopic_maps_are_chain_maps() {
        let mut r = rng(1);
        let x = complex(&mut r, 1, 2, 2);
        let y = complex(&mut r, 1, 2, 2);
        let _ = null_homotopic(&mut r, &x, &y);
    }

    #[test]
    fn module_weqs_are_chain_maps() {
        for seed in 0..5 {
            let mut r = rng(seed);
            let a = Arc::new(sullivan_algebra(&mut r, 1));
            let p = Arc::new(sullivan_module(&mut r, &a, 3, 2));
            let f = module_weq(&mut r, &p, 2);
            f.check_chain_map(2).unwrap();
            f.target().as_obasis().check_d_squared(3).unwrap();
        }
    }
}
