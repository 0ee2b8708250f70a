use super::obasis::{exponents_upto, Key, OBasisComplex, OBasisMap, OComb, OGraded};
use super::{ChainMap, FreeDComplex};
use crate::groebner::FreeModuleElement;
use crate::weyl::{Monomial, Polynomial, Rational, WeylElement};

use num_traits::One;

fn d_monomial(b: &[u32]) -> Monomial {
    Monomial::new(vec![0; b.len()], b.to_vec())
}

/// Expands `d^b . v` on the `O`-basis `d^e e_m`; `key(m, e)` encodes the target.
pub(crate) fn expand_row(v: &FreeModuleElement, b: &[u32], key: impl Fn(usize, &[u32]) -> Key) -> OComb {
    let nvars = v.nvars();
    let dm = d_monomial(b);
    let one = Rational::one();
    let mut out = OComb::new();
    for (m, w) in v.coords().iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let shifted: WeylElement = w.left_mul_monomial(&dm, &one);
        for (mono, c) in shifted.terms() {
            let p = Polynomial::monomial(mono.x.clone(), c.clone());
            debug_assert_eq!(p.nvars(), nvars);
            out.add(key(m, &mono.d), &p);
        }
    }
    out
}

fn unit_row_preimage(f: &ChainMap) -> Option<Vec<Vec<Option<usize>>>> {
    let mut table = Vec::new();
    for n in 0..=f.top() {
        let m = f.component(n);
        let mut back = vec![None; m.ncols()];
        for (i, row) in m.rows().iter().enumerate() {
            let nz: Vec<usize> = (0..row.rank()).filter(|&j| !row.coord(j).is_zero()).collect();
            if nz.len() != 1 || !row.coord(nz[0]).is_one() || back[nz[0]].is_some() {
                return None;
            }
            back[nz[0]] = Some(i);
        }
        table.push(back);
    }
    Some(table)
}

/// A free complex viewed on its `O`-basis `d^a e_k`; keys are `[k, a..]`.
struct FreeOBasis {
    c: FreeDComplex,
}

impl OGraded for FreeOBasis {
    fn nvars(&self) -> usize {
        self.c.nvars()
    }
    fn max_degree(&self, _w: u32) -> usize {
        self.c.top()
    }
    fn basis(&self, degree: usize, w: u32) -> Vec<Key> {
        let mut out = Vec::new();
        for k in 0..self.c.rank(degree) {
            for a in exponents_upto(self.c.nvars(), w) {
                let mut key = vec![k as u32];
                key.extend(a);
                out.push(key);
            }
        }
        out
    }
    fn weight(&self, key: &Key) -> u32 {
        key[1..].iter().sum()
    }
    fn differential(&self, degree: usize, key: &Key) -> OComb {
        let d = self.c.differential(degree);
        expand_row(d.row(key[0] as usize), &key[1..], |m, e| {
            let mut k = vec![m as u32];
            k.extend_from_slice(e);
            k
        })
    }
    fn describe(&self, key: &Key) -> String {
        format!("{}e{}", dpow(&key[1..]), key[0])
    }
}

fn dpow(a: &[u32]) -> String {
    let mut s = String::new();
    for (i, e) in a.iter().enumerate() {
        if *e > 0 {
            s.push_str(&format!("d{}^{}*", i + 1, e));
        }
    }
    s
}

/// The complex `C` on its `O`-basis.
pub fn free_as_obasis(c: &FreeDComplex) -> OBasisComplex {
    OBasisComplex::new(FreeOBasis { c: c.clone() }, format!("{c}"))
}

/// A chain map of free complexes on `O`-bases.
pub fn chain_map_as_obasis(f: &ChainMap) -> OBasisMap {
    let src = free_as_obasis(f.source());
    let tgt = free_as_obasis(f.target());
    let g = f.clone();
    let map = OBasisMap::new(src, tgt, move |deg: usize, key: &Key| {
        let m = g.component(deg);
        expand_row(m.row(key[0] as usize), &key[1..], |j, e| {
            let mut k = vec![j as u32];
            k.extend_from_slice(e);
            k
        })
    });
    match unit_row_preimage(f) {
        Some(table) => map.with_preimage(move |deg: usize, key: &Key| {
            let i = (*table.get(deg)?.get(key[0] as usize)?)?;
            let mut k = key.clone();
            k[0] = i as u32;
            Some(k)
        }),
        None => map,
    }
}

/// `C ⊗_O C'` with the Leibniz `D`-action. Keys are `[i, k, j, l, a.., b..]`
/// for `d^a e_k ⊗ d^b f_l` with `e_k` in `C_i` and `f_l` in `C'_j`.
pub struct TensorComplex {
    left: FreeDComplex,
    right: FreeDComplex,
}

impl TensorComplex {
    pub fn new(left: &FreeDComplex, right: &FreeDComplex) -> Self {
        TensorComplex {
            left: left.clone(),
            right: right.clone(),
        }
    }

    fn key(&self, i: usize, k: usize, j: usize, l: usize, a: &[u32], b: &[u32]) -> Key {
        let mut key = vec![i as u32, k as u32, j as u32, l as u32];
        key.extend_from_slice(a);
        key.extend_from_slice(b);
        key
    }

    fn split<'a>(&self, key: &'a Key) -> (usize, usize, usize, usize, &'a [u32], &'a [u32]) {
        let n = self.left.nvars();
        (
            key[0] as usize,
            key[1] as usize,
            key[2] as usize,
            key[3] as usize,
            &key[4..4 + n],
            &key[4 + n..4 + 2 * n],
        )
    }
}

impl OGraded for TensorComplex {
    fn nvars(&self) -> usize {
        self.left.nvars()
    }
    fn max_degree(&self, _w: u32) -> usize {
        self.left.top() + self.right.top()
    }
    fn basis(&self, degree: usize, w: u32) -> Vec<Key> {
        let n = self.nvars();
        let mut out = Vec::new();
        for i in 0..=degree.min(self.left.top()) {
            let j = degree - i;
            if j > self.right.top() {
                continue;
            }
            for k in 0..self.left.rank(i) {
                for l in 0..self.right.rank(j) {
                    for ab in exponents_upto(2 * n, w) {
                        out.push(self.key(i, k, j, l, &ab[..n], &ab[n..]));
                    }
                }
            }
        }
        out
    }
    fn weight(&self, key: &Key) -> u32 {
        key[4..].iter().sum()
    }
    fn differential(&self, _degree: usize, key: &Key) -> OComb {
        let (i, k, j, l, a, b) = self.split(key);
        let mut out = OComb::new();
        if i > 0 {
            let row = self.left.differential(i).row(k).clone();
            out = expand_row(&row, a, |m, e| self.key(i - 1, m, j, l, e, b));
        }
        if j > 0 {
            let row = self.right.differential(j).row(l).clone();
            let part = expand_row(&row, b, |m, e| self.key(i, k, j - 1, m, a, e));
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            out.add_comb(&part, &Polynomial::constant(self.nvars(), sign));
        }
        out
    }
    fn describe(&self, key: &Key) -> String {
        let (i, k, j, l, a, b) = self.split(key);
        format!("{}e{k}[{i}] ⊗ {}f{l}[{j}]", dpow(a), dpow(b))
    }
}

/// `C ⊗_O C'` on the `O`-basis `{d^a e_k ⊗ d^b f_l}`.
pub fn tensor_free(c: &FreeDComplex, c2: &FreeDComplex) -> OBasisComplex {
    OBasisComplex::new(TensorComplex::new(c, c2), format!("({c}) ⊗ ({c2})"))
}

/// `f ⊗ g` between the tensor products of the sources and of the targets.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> OBasisMap {
    let src = tensor_free(f.source(), g.source());
    let tgt = tensor_free(f.target(), g.target());
    let t = TensorComplex::new(f.target(), g.target());
    let s = TensorComplex::new(f.source(), g.source());
    let (f2, g2) = (f.clone(), g.clone());
    let nvars = f.nvars();
    let map = OBasisMap::new(src, tgt, move |_deg: usize, key: &Key| {
        let (i, k, j, l, a, b) = s.split(key);
        let left = expand_row(f2.component(i).row(k), a, |m, e| {
            let mut v = vec![m as u32];
            v.extend_from_slice(e);
            v
        });
        let right = expand_row(g2.component(j).row(l), b, |m, e| {
            let mut v = vec![m as u32];
            v.extend_from_slice(e);
            v
        });
        let mut out = OComb::new();
        for (lk, lp) in left.terms() {
            for (rk, rp) in right.terms() {
                out.add(t.key(i, lk[0] as usize, j, rk[0] as usize, &lk[1..], &rk[1..]), &(lp * rp));
            }
        }
        let _ = nvars;
        out
    });
    match (unit_row_preimage(f), unit_row_preimage(g)) {
        (Some(tf), Some(tg)) => map.with_preimage(move |_deg: usize, key: &Key| {
            let (i, k, j, l) = (key[0] as usize, key[1] as usize, key[2] as usize, key[3] as usize);
            let k0 = (*tf.get(i)?.get(k)?)?;
            let l0 = (*tg.get(j)?.get(l)?)?;
            let mut v = key.clone();
            v[1] = k0 as u32;
            v[3] = l0 as u32;
            Some(v)
        }),
        _ => map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::obasis::truncated_acyclicity;
    use crate::dcomplex::BoundedVerdict;

    #[test]
    fn spheres_tensor_to_one_module() {
        let t = tensor_free(&FreeDComplex::sphere(1, 1), &FreeDComplex::sphere(1, 2));
        assert!(t.basis(2, 3).is_empty());
        assert_eq!(t.basis(3, 2).len(), 6);
        for k in t.basis(3, 2) {
            assert!(t.differential(3, &k).is_zero());
        }
    }

    #[test]
    fn disk_tensor_sphere_differential() {
        let t = tensor_free(&FreeDComplex::disk(1, 1).unwrap(), &FreeDComplex::sphere(1, 0));
        let key = vec![1, 0, 0, 0, 2, 1];
        let d = t.differential(1, &key);
        assert_eq!(d, OComb::basis(vec![0, 0, 0, 0, 2, 1], 1));
        t.check_d_squared(4).unwrap();
    }

    #[test]
    fn bounded_acyclicity_examples() {
        let d1 = FreeDComplex::disk(1, 1).unwrap();
        let s0 = FreeDComplex::sphere(1, 0);
        assert!(truncated_acyclicity(&tensor_free(&d1, &d1), 6).unwrap().passed());
        assert!(truncated_acyclicity(&tensor_free(&d1, &s0), 6).unwrap().passed());
        match truncated_acyclicity(&tensor_free(&s0, &s0), 6).unwrap() {
            BoundedVerdict::Fail { degree, witness, .. } => {
                assert_eq!(degree, 0);
                assert!(witness.contains('⊗'));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let d2 = FreeDComplex::disk(1, 2).unwrap();
        let s1 = FreeDComplex::sphere(1, 1);
        let f = tensor_maps(&ChainMap::identity(&d2), &ChainMap::identity(&s1));
        f.check_chain_map(3).unwrap();
        for k in f.source().basis(2, 3) {
            assert_eq!(f.apply(2, &k), OComb::basis(k.clone(), 1));
            assert_eq!(f.preimage(2, &k), Some(k));
        }
    }
}
