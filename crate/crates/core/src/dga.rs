//! Sullivan differential graded `D`-algebras: free graded-commutative
//! algebras over `O` on free graded `D`-modules, with lowering differentials.
//!
//! The `O`-basis of the free `D`-module on a generator `g` is `{d^b g}`, so an
//! element is an `O`-combination of sorted words in atoms `d^b g`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::dcomplex::obasis::{exponents_upto, Key, OComb, OGraded};
use crate::dcomplex::{OBasisComplex, OBasisMap};
use crate::error::{Error, Result};
use crate::weyl::{Polynomial, Rational};

/// `d^b g_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub generator: usize,
    pub d: Vec<u32>,
}

pub type Word = Vec<Atom>;

/// An `O`-combination of words; words are sorted and odd atoms occur once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    nvars: usize,
    terms: BTreeMap<Word, Polynomial>,
}

impl AlgebraElement {
    pub fn zero(nvars: usize) -> Self {
        AlgebraElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::scalar(Polynomial::one(nvars))
    }

    pub fn scalar(p: Polynomial) -> Self {
        let mut e = Self::zero(p.nvars());
        e.add_word(Vec::new(), &p);
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `p * word`; the word must already be sorted.
    pub fn add_word(&mut self, word: Word, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(p.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + p;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_word(w.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        self.times_poly(&Polynomial::constant(self.nvars, c.clone()))
    }

    pub fn times_poly(&self, q: &Polynomial) -> AlgebraElement {
        let mut out = Self::zero(self.nvars);
        for (w, p) in &self.terms {
            out.add_word(w.clone(), &(p * q));
        }
        out
    }

    /// The coefficient of the empty word.
    pub fn scalar_part(&self) -> Polynomial {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A free graded-commutative `D`-algebra `S(V)` with a lowering differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanAlgebra {
    nvars: usize,
    generators: Vec<Generator>,
    differentials: Vec<AlgebraElement>,
}

fn word_degree(alg: &SullivanAlgebra, w: &[Atom]) -> usize {
    w.iter().map(|a| alg.generators[a.generator].degree).sum()
}

impl SullivanAlgebra {
    /// `O` itself.
    pub fn ground(nvars: usize) -> Self {
        SullivanAlgebra {
            nvars,
            generators: Vec::new(),
            differentials: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential_of_generator(&self, j: usize) -> &AlgebraElement {
        &self.differentials[j]
    }

    pub fn generator(&self, j: usize) -> AlgebraElement {
        self.atom(Atom {
            generator: j,
            d: vec![0; self.nvars],
        })
    }

    pub fn atom(&self, a: Atom) -> AlgebraElement {
        let mut e = AlgebraElement::zero(self.nvars);
        e.add_word(vec![a], &Polynomial::one(self.nvars));
        e
    }

    pub fn is_odd(&self, j: usize) -> bool {
        self.generators[j].degree % 2 == 1
    }

    /// Adds a generator of degree `degree` with `d g = dg`. The value must be
    /// homogeneous of degree `degree - 1` and closed.
    pub fn extend(&self, name: &str, degree: usize, dg: AlgebraElement) -> Result<SullivanAlgebra> {
        self.check(&dg)?;
        if degree == 0 && !dg.is_zero() {
            return Err(Error::ConditionViolated {
                generator: name.into(),
                detail: "degree 0 generators are closed".into(),
            });
        }
        if let Some(d) = self.degree_of(&dg) {
            if d + 1 != degree {
                return Err(Error::ConditionViolated {
                    generator: name.into(),
                    detail: format!("d of a degree {degree} generator has degree {d}"),
                });
            }
        }
        let ddg = self.d(&dg)?;
        if !ddg.is_zero() {
            return Err(Error::ConditionViolated {
                generator: name.into(),
                detail: format!("d(d {name}) = {} ≠ 0", self.show(&ddg)),
            });
        }
        let mut out = self.clone();
        out.generators.push(Generator {
            name: name.into(),
            degree,
        });
        out.differentials.push(dg);
        Ok(out)
    }

    /// Adds a contractible pair `u`, `v` with `d u = v`, `d v = 0`.
    pub fn with_contractible_pair(&self, n: usize) -> Result<SullivanAlgebra> {
        if n == 0 {
            return Err(Error::InvalidArgument("contractible pair needs n >= 1".into()));
        }
        let k = self.generators.len();
        let a = self.extend(&format!("v{k}"), n - 1, AlgebraElement::zero(self.nvars))?;
        let v = a.generator(k);
        a.extend(&format!("u{}", k + 1), n, v)
    }

    fn check(&self, u: &AlgebraElement) -> Result<()> {
        if u.nvars != self.nvars {
            return Err(Error::AlgebraMismatch);
        }
        for w in u.terms.keys() {
            if w.iter().any(|a| a.generator >= self.generators.len() || a.d.len() != self.nvars) {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(())
    }

    /// Degree of a homogeneous element; `None` for zero or inhomogeneous.
    pub fn degree_of(&self, u: &AlgebraElement) -> Option<usize> {
        let mut degs = u.terms.keys().map(|w| word_degree(self, w));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Sorts a word with the Koszul sign; `None` when an odd atom repeats.
    fn normalize(&self, mut w: Word) -> Option<(Word, bool)> {
        let mut negative = false;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                if self.is_odd(w[j - 1].generator) && self.is_odd(w[j].generator) {
                    negative = !negative;
                }
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        for pair in w.windows(2) {
            if pair[0] == pair[1] && self.is_odd(pair[0].generator) {
                return None;
            }
        }
        Some((w, negative))
    }

    fn add_signed(&self, out: &mut AlgebraElement, w: Word, p: &Polynomial) {
        if let Some((w, neg)) = self.normalize(w) {
            if neg {
                out.add_word(w, &p.scale(&-Rational::one()));
            } else {
                out.add_word(w, p);
            }
        }
    }

    /// The graded-commutative product `u ⋆ v`.
    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    pub(crate) fn mul_unchecked(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.nvars);
        for (w1, p1) in &u.terms {
            for (w2, p2) in &v.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                self.add_signed(&mut out, w, &(p1 * p2));
            }
        }
        out
    }

    /// `d_i . u`, acting by derivations.
    pub fn act_d(&self, i: usize, u: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.nvars);
        for (w, p) in &u.terms {
            out.add_word(w.clone(), &p.derivative(i));
            for t in 0..w.len() {
                let mut w2 = w.clone();
                w2[t].d[i] += 1;
                self.add_signed(&mut out, w2, p);
            }
        }
        out
    }

    /// `d^b . u`.
    pub fn act_d_power(&self, b: &[u32], u: &AlgebraElement) -> AlgebraElement {
        let mut out = u.clone();
        for (i, &e) in b.iter().enumerate() {
            for _ in 0..e {
                out = self.act_d(i, &out);
            }
        }
        out
    }

    /// The differential: an odd derivation with `d(d^b g) = d^b . d(g)`.
    pub fn d(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(u)?;
        Ok(self.d_unchecked(u))
    }

    pub(crate) fn d_unchecked(&self, u: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.nvars);
        for (w, p) in &u.terms {
            let mut prefix_degree = 0;
            for t in 0..w.len() {
                let a = &w[t];
                let da = self.act_d_power(&a.d, &self.differentials[a.generator]);
                if !da.is_zero() {
                    let before = word_element(self.nvars, &w[..t]);
                    let after = word_element(self.nvars, &w[t + 1..]);
                    let mut term = self.mul_unchecked(&self.mul_unchecked(&before, &da), &after).times_poly(p);
                    if prefix_degree % 2 == 1 {
                        term = term.scale(&-Rational::one());
                    }
                    out = out.add(&term);
                }
                prefix_degree += self.generators[a.generator].degree;
            }
        }
        out
    }

    pub fn show(&self, u: &AlgebraElement) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = u
            .terms
            .iter()
            .map(|(w, p)| {
                let mut s = format!("({p})");
                for a in w {
                    s.push('*');
                    s.push_str(&self.show_atom(a));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    pub fn show_atom(&self, a: &Atom) -> String {
        let mut s = String::new();
        for (i, e) in a.d.iter().enumerate() {
            if *e > 0 {
                s.push_str(&format!("d{}^{}", i + 1, e));
            }
        }
        s.push_str(&self.generators[a.generator].name);
        s
    }

    /// Sorted atom words of the given degree and weight `<= w`, where an
    /// atom `d^b g` weighs `|b| + 1`.
    pub fn words(&self, degree: usize, max_weight: u32) -> Vec<Word> {
        let mut atoms = Vec::new();
        for j in 0..self.generators.len() {
            if max_weight == 0 {
                break;
            }
            for b in exponents_upto(self.nvars, max_weight - 1) {
                atoms.push(Atom { generator: j, d: b });
            }
        }
        atoms.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.words_rec(&atoms, 0, degree, max_weight, &mut cur, &mut out);
        out
    }

    fn words_rec(&self, atoms: &[Atom], start: usize, degree: usize, weight: u32, cur: &mut Word, out: &mut Vec<Word>) {
        if degree == 0 {
            out.push(cur.clone());
        }
        for i in start..atoms.len() {
            let a = &atoms[i];
            let g = &self.generators[a.generator];
            let w = atom_weight(a);
            if w > weight || g.degree > degree {
                continue;
            }
            let next = if g.degree % 2 == 1 { i + 1 } else { i };
            cur.push(a.clone());
            self.words_rec(atoms, next, degree - g.degree, weight - w, cur, out);
            cur.pop();
        }
    }

    pub fn element_from_comb(&self, c: &OComb) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.nvars);
        for (k, p) in c.terms() {
            out.add_word(decode_word(k, self.nvars), p);
        }
        out
    }

    /// The algebra as an `O`-basis complex.
    pub fn as_obasis(self: &Arc<Self>) -> OBasisComplex {
        OBasisComplex::new(AlgebraComplex { alg: self.clone() }, "S(V)")
    }
}

pub(crate) fn atom_weight(a: &Atom) -> u32 {
    a.d.iter().sum::<u32>() + 1
}

pub(crate) fn word_weight(w: &[Atom]) -> u32 {
    w.iter().map(atom_weight).sum()
}

fn word_element(nvars: usize, w: &[Atom]) -> AlgebraElement {
    let mut e = AlgebraElement::zero(nvars);
    e.add_word(w.to_vec(), &Polynomial::one(nvars));
    e
}

pub(crate) fn encode_word(w: &[Atom]) -> Key {
    let mut k = Vec::new();
    for a in w {
        k.push(a.generator as u32);
        k.extend_from_slice(&a.d);
    }
    k
}

pub(crate) fn decode_word(k: &[u32], nvars: usize) -> Word {
    k.chunks(nvars + 1)
        .map(|c| Atom {
            generator: c[0] as usize,
            d: c[1..].to_vec(),
        })
        .collect()
}

pub(crate) fn element_to_comb(u: &AlgebraElement) -> OComb {
    let mut c = OComb::new();
    for (w, p) in u.terms() {
        c.add(encode_word(w), p);
    }
    c
}

struct AlgebraComplex {
    alg: Arc<SullivanAlgebra>,
}

impl OGraded for AlgebraComplex {
    fn nvars(&self) -> usize {
        self.alg.nvars
    }
    fn max_degree(&self, w: u32) -> usize {
        self.alg.generators.iter().map(|g| g.degree).max().unwrap_or(0) * w as usize
    }
    fn basis(&self, degree: usize, w: u32) -> Vec<Key> {
        self.alg.words(degree, w).iter().map(|w| encode_word(w)).collect()
    }
    fn weight(&self, key: &Key) -> u32 {
        word_weight(&decode_word(key, self.alg.nvars))
    }
    fn differential(&self, _degree: usize, key: &Key) -> OComb {
        let u = word_element(self.alg.nvars, &decode_word(key, self.alg.nvars));
        element_to_comb(&self.alg.d_unchecked(&u))
    }
    fn describe(&self, key: &Key) -> String {
        let w = decode_word(key, self.alg.nvars);
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|a| self.alg.show_atom(a)).collect::<Vec<_>>().join("*")
    }
}

/// A morphism of Sullivan algebras, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<SullivanAlgebra>,
    target: Arc<SullivanAlgebra>,
    images: Vec<AlgebraElement>,
}

impl AlgebraMorphism {
    /// Checks degrees and `d f(g) = f(d g)` on every generator.
    pub fn new(source: Arc<SullivanAlgebra>, target: Arc<SullivanAlgebra>, images: Vec<AlgebraElement>) -> Result<Self> {
        if source.nvars != target.nvars || images.len() != source.generators.len() {
            return Err(Error::AlgebraMismatch);
        }
        for img in &images {
            target.check(img)?;
        }
        let f = AlgebraMorphism { source, target, images };
        for (j, g) in f.source.generators.iter().enumerate() {
            if let Some(d) = f.target.degree_of(&f.images[j]) {
                if d != g.degree {
                    return Err(Error::ConditionViolated {
                        generator: g.name.clone(),
                        detail: format!("image has degree {d}, expected {}", g.degree),
                    });
                }
            }
            let lhs = f.target.d_unchecked(&f.images[j]);
            let rhs = f.apply_unchecked(&f.source.differentials[j]);
            if lhs != rhs {
                return Err(Error::ConditionViolated {
                    generator: g.name.clone(),
                    detail: format!("d f - f d = {}", f.target.show(&lhs.sub(&rhs))),
                });
            }
        }
        Ok(f)
    }

    pub fn identity(a: &Arc<SullivanAlgebra>) -> Self {
        let images = (0..a.generators.len()).map(|j| a.generator(j)).collect();
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            images,
        }
    }

    /// Inclusion of an algebra whose generators form a prefix of the target's.
    pub fn inclusion(source: &Arc<SullivanAlgebra>, target: &Arc<SullivanAlgebra>) -> Result<Self> {
        if !is_extension(source, target) {
            return Err(Error::AlgebraMismatch);
        }
        let images = (0..source.generators.len()).map(|j| target.generator(j)).collect();
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &Arc<SullivanAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SullivanAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    pub fn apply(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        self.source.check(u)?;
        Ok(self.apply_unchecked(u))
    }

    fn apply_unchecked(&self, u: &AlgebraElement) -> AlgebraElement {
        let t = &self.target;
        let mut out = AlgebraElement::zero(t.nvars);
        for (w, p) in &u.terms {
            let mut acc = AlgebraElement::scalar(p.clone());
            for a in w {
                let img = t.act_d_power(&a.d, &self.images[a.generator]);
                acc = t.mul_unchecked(&acc, &img);
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if self.target != other.source {
            return Err(Error::AlgebraMismatch);
        }
        let images = self.images.iter().map(|u| other.apply_unchecked(u)).collect();
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    pub fn as_obasis(&self) -> OBasisMap {
        let f = self.clone();
        let nvars = self.source.nvars;
        OBasisMap::new(self.source.as_obasis(), self.target.as_obasis(), move |_d: usize, k: &Key| {
            element_to_comb(&f.apply_unchecked(&word_element(nvars, &decode_word(k, nvars))))
        })
    }
}

/// Whether `b`'s first generators and differentials are exactly `a`'s.
pub fn is_extension(a: &SullivanAlgebra, b: &SullivanAlgebra) -> bool {
    a.nvars == b.nvars
        && a.generators.len() <= b.generators.len()
        && a.generators == b.generators[..a.generators.len()]
        && a.differentials == b.differentials[..a.differentials.len()]
}

/// The unit `O -> A`, `f ↦ f * 1_A`.
pub fn initial_morphism(a: &Arc<SullivanAlgebra>) -> AlgebraMorphism {
    AlgebraMorphism {
        source: Arc::new(SullivanAlgebra::ground(a.nvars)),
        target: a.clone(),
        images: Vec::new(),
    }
}

/// The pushout of `f: X -> Y` along `X -> X ⊗ S(S^n)` with `d(1_n) = c`.
#[derive(Clone, Debug)]
pub struct DgaPushout {
    pub x_ext: Arc<SullivanAlgebra>,
    pub y_ext: Arc<SullivanAlgebra>,
    /// `Y -> Y ⊗ S(S^n)`.
    pub right_leg: AlgebraMorphism,
    /// `f ⊗ Id: X ⊗ S(S^n) -> Y ⊗ S(S^n)`.
    pub map: AlgebraMorphism,
}

pub fn dga_pushout_gen(f: &AlgebraMorphism, n: usize, c: &AlgebraElement) -> Result<DgaPushout> {
    let x = f.source();
    let y = f.target();
    let name = format!("1_{n}");
    let x_ext = Arc::new(x.extend(&name, n, c.clone())?);
    let fc = f.apply(c)?;
    let y_ext = Arc::new(y.extend(&name, n, fc)?);
    let right_leg = AlgebraMorphism::inclusion(y, &y_ext)?;
    let mut images: Vec<AlgebraElement> = f.images.clone();
    images.push(y_ext.generator(y.generators.len()));
    let map = AlgebraMorphism::new(x_ext.clone(), y_ext.clone(), images)?;
    Ok(DgaPushout {
        x_ext,
        y_ext,
        right_leg,
        map,
    })
}

impl DgaPushout {
    /// The universality map `μ` for a cocone `h: Y -> E`, `k: X ⊗ S(S^n) -> E`
    /// with `k ∘ i_X = h ∘ f`: `μ|_Y = h` and `μ(1_n) = k(1_n)`.
    pub fn universal(&self, h: &AlgebraMorphism, k: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let mut images = h.images.clone();
        images.push(k.images.last().cloned().ok_or(Error::AlgebraMismatch)?);
        AlgebraMorphism::new(self.y_ext.clone(), h.target.clone(), images)
    }

    /// Number of `1_n` atoms in each word of the image of a basis word
    /// equals that of the word itself.
    pub fn respects_filtration(&self, max_weight: u32, max_degree: usize) -> bool {
        let gx = self.x_ext.generators.len() - 1;
        let gy = self.y_ext.generators.len() - 1;
        let nvars = self.x_ext.nvars;
        for deg in 0..=max_degree {
            for w in self.x_ext.words(deg, max_weight) {
                let k = w.iter().filter(|a| a.generator == gx).count();
                let img = self.map.apply_unchecked(&word_element(nvars, &w));
                if img.terms.keys().any(|w2| w2.iter().filter(|a| a.generator == gy).count() != k) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for SullivanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(")?;
        for (j, g) in self.generators.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{} d={}", g.name, g.degree, self.show(&self.differentials[j]))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::truncated_acyclicity;

    fn two_gens() -> SullivanAlgebra {
        // g:1, h:2, k:3 closed; e:4 with d e = g*h
        let a = SullivanAlgebra::ground(1).extend("g", 1, AlgebraElement::zero(1)).unwrap();
        let a = a.extend("h", 2, AlgebraElement::zero(1)).unwrap();
        let a = a.extend("k", 3, AlgebraElement::zero(1)).unwrap();
        let gh = a.multiply(&a.generator(0), &a.generator(1)).unwrap();
        a.extend("e", 4, gh).unwrap()
    }

    #[test]
    fn odd_squares_vanish_and_unit() {
        let a = two_gens();
        let g = a.generator(0);
        assert!(a.multiply(&g, &g).unwrap().is_zero());
        assert_eq!(a.multiply(&AlgebraElement::one(1), &g).unwrap(), g);
    }

    #[test]
    fn graded_commutativity() {
        let a = two_gens();
        let (g, e) = (a.generator(0), a.generator(2));
        let ge = a.multiply(&g, &e).unwrap();
        let eg = a.multiply(&e, &g).unwrap();
        assert_eq!(ge, eg.scale(&-Rational::one()));
    }

    #[test]
    fn d_acts_by_derivations() {
        let a = two_gens();
        let (g, h) = (a.generator(0), a.generator(1));
        let gh = a.multiply(&g, &h).unwrap();
        let lhs = a.act_d(0, &gh);
        let rhs = a.multiply(&a.act_d(0, &g), &h).unwrap().add(&a.multiply(&g, &a.act_d(0, &h)).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_is_a_square_zero_derivation() {
        let a = two_gens();
        let e = a.generator(3);
        let de = a.d(&e).unwrap();
        assert!(a.d(&de).unwrap().is_zero());
        assert!(a.d(&AlgebraElement::one(1)).unwrap().is_zero());
        let x = AlgebraElement::scalar(Polynomial::x(1, 0));
        let xe = a.multiply(&x, &a.act_d(0, &e)).unwrap();
        assert_eq!(a.d(&xe).unwrap(), a.act_d(0, &de).times_poly(&Polynomial::x(1, 0)));
    }

    #[test]
    fn non_closed_assignment_rejected() {
        let a = two_gens();
        assert!(matches!(
            a.extend("bad", 5, a.generator(3)),
            Err(Error::ConditionViolated { .. })
        ));
    }

    #[test]
    fn pushout_of_identity_on_ground() {
        let o = Arc::new(SullivanAlgebra::ground(1));
        let po = dga_pushout_gen(&AlgebraMorphism::identity(&o), 2, &AlgebraElement::zero(1)).unwrap();
        assert_eq!(po.x_ext, po.y_ext);
        assert_eq!(po.map, AlgebraMorphism::identity(&po.x_ext));
        assert!(po.respects_filtration(4, 6));
    }

    #[test]
    fn contractible_pair_inclusion_is_bounded_weq() {
        let x = Arc::new(SullivanAlgebra::ground(1).extend("g", 1, AlgebraElement::zero(1)).unwrap());
        let y = Arc::new(x.with_contractible_pair(2).unwrap());
        let f = AlgebraMorphism::inclusion(&x, &y).unwrap();
        assert!(truncated_acyclicity(&f.as_obasis().cone(), 4).unwrap().passed());
    }

    #[test]
    fn initial_morphism_sends_polynomials_to_multiples_of_one() {
        let a = Arc::new(two_gens());
        let phi = initial_morphism(&a);
        let x2 = AlgebraElement::scalar(Polynomial::monomial(vec![2], Rational::one()));
        assert_eq!(phi.apply(&x2).unwrap(), x2);
    }
}
