//! Left-ideal membership in the first Weyl algebra against dense linear
//! algebra on the span of `m * g` with `deg(m * g) <= cap`.

use std::collections::BTreeMap;

use dgdm::groebner::{buchberger, FreeModuleElement};
use dgdm::random::{self, SeededRng};
use dgdm::weyl::{Monomial, Rational, WeylElement};
use num_traits::{One, Zero};
use rand::Rng;

struct Oracle {
    index: BTreeMap<(u32, u32), usize>,
    pivots: Vec<(usize, Vec<Rational>)>,
}

fn exps(m: &Monomial) -> (u32, u32) {
    (m.x[0], m.d[0])
}

impl Oracle {
    fn new(gens: &[WeylElement], cap: u32) -> Self {
        let mut index = BTreeMap::new();
        for a in 0..=cap {
            for b in 0..=cap - a {
                let k = index.len();
                index.insert((a, b), k);
            }
        }
        let mut o = Oracle { index, pivots: Vec::new() };
        for g in gens {
            let dg = g.total_degree();
            if dg > cap {
                continue;
            }
            for a in 0..=cap - dg {
                for b in 0..=cap - dg - a {
                    let m = WeylElement::term(Monomial::new(vec![a], vec![b]), Rational::one());
                    let row = m.multiply(g).unwrap();
                    let v = o.dense(&row);
                    o.insert(v);
                }
            }
        }
        o
    }

    fn dense(&self, p: &WeylElement) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.index.len()];
        for (m, c) in p.terms() {
            v[self.index[&exps(m)]] = c.clone();
        }
        v
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (col, row) in &self.pivots {
            if v[*col].is_zero() {
                continue;
            }
            let f = v[*col].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Rational>) {
        let v = self.reduce(v);
        let Some(col) = v.iter().position(|c| !c.is_zero()) else {
            return;
        };
        let inv = v[col].recip();
        let v: Vec<Rational> = v.iter().map(|c| c * &inv).collect();
        for (_, row) in self.pivots.iter_mut() {
            if !row[col].is_zero() {
                let f = row[col].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x -= &f * r;
                }
            }
        }
        self.pivots.push((col, v));
    }

    fn member(&self, p: &WeylElement) -> bool {
        self.reduce(self.dense(p)).iter().all(Zero::is_zero)
    }
}

fn bounded(rng: &mut SeededRng, max_degree: u32, terms: usize) -> WeylElement {
    let mut w = WeylElement::zero(1);
    for _ in 0..terms {
        let a = rng.gen_range(0..=max_degree);
        let b = rng.gen_range(0..=max_degree - a);
        let c = Rational::from_integer(rng.gen_range(-3i64..=3).into());
        w.add_term(Monomial::new(vec![a], vec![b]), c);
    }
    w
}

fn nonzero(rng: &mut SeededRng, max_degree: u32, terms: usize) -> WeylElement {
    loop {
        let w = bounded(rng, max_degree, terms);
        if !w.is_zero() {
            return w;
        }
    }
}

fn generator_set(rng: &mut SeededRng, k: usize) -> Vec<WeylElement> {
    match k % 3 {
        0 => vec![nonzero(rng, 3, 3)],
        1 => {
            let h = nonzero(rng, 2, 2);
            (0..2).map(|_| nonzero(rng, 1, 2).multiply(&h).unwrap()).collect()
        }
        _ => (0..2).map(|_| nonzero(rng, 2, 2)).collect(),
    }
}

fn vec1(p: &WeylElement) -> FreeModuleElement {
    FreeModuleElement::from_coords(vec![p.clone()])
}

/// Membership and normal forms on 200 probes across 20 generator sets;
/// returns the number of probes and of members.
pub fn run_probes(seed: u64) -> Result<(usize, usize), String> {
    let mut rng = random::rng(seed);
    let mut probes = 0;
    let mut members = 0;
    for k in 0..20 {
        let gens = generator_set(&mut rng, k);
        let gb = buchberger(1, 1, &gens.iter().map(vec1).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        let small = Oracle::new(&gens, 10);
        let large = Oracle::new(&gens, 12);
        for j in 0..10 {
            let p = if j % 2 == 0 {
                let mut p = WeylElement::zero(1);
                for g in &gens {
                    let room = 6u32.saturating_sub(g.total_degree());
                    p = &p + &bounded(&mut rng, room, 2).multiply(g).unwrap();
                }
                p
            } else {
                bounded(&mut rng, 6, 4)
            };
            if p.total_degree() > 6 {
                return Err(format!("probe {p} exceeds degree 6"));
            }
            let expected = large.member(&p);
            if small.member(&p) != expected {
                return Err(format!("oracle not stable for {p}"));
            }
            let got = gb.member(&vec1(&p)).map_err(|e| e.to_string())?;
            if got != expected {
                return Err(format!("generators {gens:?}, probe {p}: member = {got}"));
            }
            let nf = gb.normal_form(&vec1(&p)).map_err(|e| e.to_string())?;
            if gb.normal_form(&nf).map_err(|e| e.to_string())? != nf || nf.is_zero() != expected {
                return Err(format!("normal form of {p} is {nf:?}"));
            }
            probes += 1;
            members += expected as usize;
        }
    }
    Ok((probes, members))
}
