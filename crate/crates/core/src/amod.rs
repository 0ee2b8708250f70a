//! Modules over a Sullivan algebra `A`, always of the shape `A ⊗ W` where `W`
//! is built from cells. A cell of arity 1 is a free `D`-module generator
//! (`O`-basis `d^b g`); a cell of arity 0 is a copy of `O` (the unit); cells
//! of higher arity come from tensor products over `O`, with basis
//! `d^b1 g1 ⊗ ... ⊗ d^bk gk` and the Leibniz action.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::dcomplex::obasis::{exponents_upto, Key, OComb, OGraded};
use crate::dcomplex::{truncated_acyclicity, BoundedVerdict, FreeDComplex, OBasisComplex, OBasisMap};
use crate::dga::{decode_word, encode_word, is_extension, word_weight, AlgebraElement, AlgebraMorphism, SullivanAlgebra};
use crate::error::{Error, Result};
use crate::model::GeneratingMap;
use crate::weyl::{Polynomial, Rational, WeylElement};

/// `d^b` applied to the tensor factors of a cell; `d` holds `arity * nvars`
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModKey {
    pub cell: usize,
    pub d: Vec<u32>,
}

/// `sum a_k ⊗ k` with `a_k ∈ A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleElement {
    terms: BTreeMap<ModKey, AlgebraElement>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModKey, &AlgebraElement)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: ModKey, a: &AlgebraElement) {
        if a.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(a.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(a);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (k, a) in &other.terms {
            out.add_term(k.clone(), a);
        }
        out
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (k, a) in &self.terms {
            out.add_term(k.clone(), &a.scale(c));
        }
        out
    }

    pub fn times_poly(&self, p: &Polynomial) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (k, a) in &self.terms {
            out.add_term(k.clone(), &a.times_poly(p));
        }
        out
    }

    pub fn map_keys(&self, f: impl Fn(&ModKey) -> ModKey) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (k, a) in &self.terms {
            out.add_term(f(k), a);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CellRule {
    /// `d(cell) = value`, extended `D`-linearly (arity at most 1).
    Assigned(ModuleElement),
    /// The cell `l ⊗ r` of `L ⊗_A R`, with the transported differential.
    Tensor {
        left: Arc<AModule>,
        lcell: usize,
        right: Arc<AModule>,
        rcell: usize,
        pairs: Arc<BTreeMap<(usize, usize), usize>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub name: String,
    pub degree: usize,
    pub arity: usize,
    pub rule: CellRule,
}

/// An `A`-module `A ⊗ W`; the cells before a given one form the submodule `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct AModule {
    algebra: Arc<SullivanAlgebra>,
    cells: Vec<Cell>,
}

impl AModule {
    pub fn zero(algebra: &Arc<SullivanAlgebra>) -> Self {
        AModule {
            algebra: algebra.clone(),
            cells: Vec::new(),
        }
    }

    /// `A` as a module over itself.
    pub fn unit(algebra: &Arc<SullivanAlgebra>) -> Self {
        AModule {
            algebra: algebra.clone(),
            cells: vec![Cell {
                name: "1".into(),
                degree: 0,
                arity: 0,
                rule: CellRule::Assigned(ModuleElement::zero()),
            }],
        }
    }

    /// `A ⊗ S^n`.
    pub fn free_sphere(algebra: &Arc<SullivanAlgebra>, n: usize) -> Self {
        AModule::zero(algebra)
            .extend_differential(&format!("1_{n}"), n, ModuleElement::zero())
            .expect("zero assignment")
    }

    /// `A ⊗ D^n`: cells `1_{n-1}` and `1_n` with `d 1_n = 1_{n-1}`.
    pub fn free_disk(algebra: &Arc<SullivanAlgebra>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("disk needs n >= 1".into()));
        }
        let s = AModule::free_sphere(algebra, n - 1);
        let b = s.basis_element(0);
        s.extend_differential(&format!("1_{n}"), n, b)
    }

    pub fn algebra(&self) -> &Arc<SullivanAlgebra> {
        &self.algebra
    }

    pub fn nvars(&self) -> usize {
        self.algebra.nvars()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_sullivan(&self) -> bool {
        self.cells.iter().all(|c| matches!(c.rule, CellRule::Assigned(_)))
    }

    /// `1 ⊗ cell`.
    pub fn basis_element(&self, cell: usize) -> ModuleElement {
        let key = ModKey {
            cell,
            d: vec![0; self.cells[cell].arity * self.nvars()],
        };
        self.key_element(key)
    }

    pub fn key_element(&self, key: ModKey) -> ModuleElement {
        let mut m = ModuleElement::zero();
        m.add_term(key, &AlgebraElement::one(self.nvars()));
        m
    }

    pub fn key_degree(&self, key: &ModKey) -> usize {
        self.cells[key.cell].degree
    }

    /// Degree of a homogeneous element.
    pub fn degree_of(&self, m: &ModuleElement) -> Option<usize> {
        let mut degs = m
            .terms
            .iter()
            .map(|(k, a)| self.algebra.degree_of(a).map(|d| d + self.key_degree(k)));
        let first = degs.next()??;
        for d in degs {
            if d != Some(first) {
                return None;
            }
        }
        Some(first)
    }

    fn check(&self, m: &ModuleElement) -> Result<()> {
        for (k, a) in &m.terms {
            let ok = k.cell < self.cells.len() && k.d.len() == self.cells[k.cell].arity * self.nvars();
            if !ok || a.nvars() != self.nvars() {
                return Err(Error::AlgebraMismatch);
            }
            self.algebra.multiply(&AlgebraElement::one(self.nvars()), a)?;
        }
        Ok(())
    }

    /// Lemma-style extension: a new cell of degree `degree` whose boundary is
    /// `value`, which must be a closed element of degree `degree - 1`.
    pub fn extend_differential(&self, name: &str, degree: usize, value: ModuleElement) -> Result<AModule> {
        self.check(&value)?;
        if !value.is_zero() {
            match self.degree_of(&value) {
                Some(d) if degree >= 1 && d == degree - 1 => {}
                other => {
                    return Err(Error::ConditionViolated {
                        generator: name.into(),
                        detail: format!("assignment has degree {other:?}, expected {}", degree as i64 - 1),
                    })
                }
            }
        }
        let dv = self.d(&value);
        if !dv.is_zero() {
            return Err(Error::ConditionViolated {
                generator: name.into(),
                detail: format!("d of the assignment is {}", self.show(&dv)),
            });
        }
        let mut out = self.clone();
        out.cells.push(Cell {
            name: name.into(),
            degree,
            arity: 1,
            rule: CellRule::Assigned(value),
        });
        Ok(out)
    }

    /// `a ◁ m`.
    pub fn act(&self, a: &AlgebraElement, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (k, b) in &m.terms {
            out.add_term(k.clone(), &self.algebra.mul_unchecked(a, b));
        }
        out
    }

    /// `d_i . m` by the Leibniz rule.
    pub fn act_d(&self, i: usize, m: &ModuleElement) -> ModuleElement {
        let nvars = self.nvars();
        let mut out = ModuleElement::zero();
        for (k, a) in &m.terms {
            out.add_term(k.clone(), &self.algebra.act_d(i, a));
            for slot in 0..self.cells[k.cell].arity {
                let mut k2 = k.clone();
                k2.d[slot * nvars + i] += 1;
                out.add_term(k2, a);
            }
        }
        out
    }

    pub fn act_d_power(&self, b: &[u32], m: &ModuleElement) -> ModuleElement {
        let mut out = m.clone();
        for (i, &e) in b.iter().enumerate() {
            for _ in 0..e {
                out = self.act_d(i, &out);
            }
        }
        out
    }

    /// The left action of an operator `P ∈ D`.
    pub fn act_weyl(&self, p: &WeylElement, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (mono, c) in p.terms() {
            let part = self.act_d_power(&mono.d, m);
            out = out.add(&part.times_poly(&Polynomial::monomial(mono.x.clone(), c.clone())));
        }
        out
    }

    /// `d(1 ⊗ k)`.
    pub fn d_key(&self, key: &ModKey) -> ModuleElement {
        let cell = &self.cells[key.cell];
        match &cell.rule {
            CellRule::Assigned(v) => {
                if cell.arity == 0 {
                    v.clone()
                } else {
                    self.act_d_power(&key.d, v)
                }
            }
            CellRule::Tensor {
                left,
                lcell,
                right,
                rcell,
                pairs,
            } => {
                let nvars = self.nvars();
                let split = left.cells[*lcell].arity * nvars;
                let (dl, dr) = key.d.split_at(split);
                let wdeg = left.cells[*lcell].degree;
                let mut out = ModuleElement::zero();
                let du = left.d_key(&ModKey {
                    cell: *lcell,
                    d: dl.to_vec(),
                });
                for (k, alpha) in &du.terms {
                    let mut d = k.d.clone();
                    d.extend_from_slice(dr);
                    out.add_term(ModKey { cell: pairs[&(k.cell, *rcell)], d }, alpha);
                }
                let dv = right.d_key(&ModKey {
                    cell: *rcell,
                    d: dr.to_vec(),
                });
                for (k, a) in &dv.terms {
                    let adeg = self.algebra.degree_of(a).unwrap_or(0);
                    let mut d = dl.to_vec();
                    d.extend_from_slice(&k.d);
                    let a = if (wdeg + adeg * wdeg) % 2 == 1 {
                        a.scale(&-Rational::one())
                    } else {
                        a.clone()
                    };
                    out.add_term(ModKey { cell: pairs[&(*lcell, k.cell)], d }, &a);
                }
                out
            }
        }
    }

    /// `d(a ⊗ k) = d_A(a) ⊗ k + (-1)^|a| a ◁ d(k)`.
    pub fn d(&self, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (k, a) in &m.terms {
            let mut first = ModuleElement::zero();
            first.add_term(k.clone(), &self.algebra.d_unchecked(a));
            let mut second = self.act(a, &self.d_key(k));
            if self.algebra.degree_of(a).unwrap_or(0) % 2 == 1 {
                second = second.scale(&-Rational::one());
            }
            out = out.add(&first).add(&second);
        }
        out
    }

    pub fn show(&self, m: &ModuleElement) -> String {
        if m.is_zero() {
            return "0".into();
        }
        m.terms
            .iter()
            .map(|(k, a)| format!("[{}] ⊗ {}", self.algebra.show(a), self.show_key(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn show_key(&self, k: &ModKey) -> String {
        let nvars = self.nvars();
        let mut s = String::new();
        for (i, e) in k.d.iter().enumerate() {
            if *e > 0 {
                s.push_str(&format!("d{}[{}]^{}", i % nvars + 1, i / nvars, e));
            }
        }
        s.push_str(&self.cells[k.cell].name);
        s
    }

    /// Keys of the given degree whose `A`-coefficient is `1`, up to weight.
    pub fn keys(&self, cell: usize, max_weight: u32) -> Vec<ModKey> {
        let ar = self.cells[cell].arity;
        exponents_upto(ar * self.nvars(), max_weight)
            .into_iter()
            .map(|d| ModKey { cell, d })
            .collect()
    }

    /// `O`-basis elements `word ⊗ key` of a degree, up to weight.
    pub fn basis(&self, degree: usize, max_weight: u32) -> Vec<(ModKey, Vec<crate::dga::Atom>)> {
        let mut out = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            if cell.degree > degree {
                continue;
            }
            for k in self.keys(c, max_weight) {
                let used: u32 = k.d.iter().sum();
                for w in self.algebra.words(degree - cell.degree, max_weight - used) {
                    out.push((k.clone(), w));
                }
            }
        }
        out
    }

    pub fn as_obasis(self: &Arc<Self>) -> OBasisComplex {
        OBasisComplex::new(ModuleComplex { m: self.clone() }, "A⊗W")
    }

    pub fn element_to_comb(&self, m: &ModuleElement) -> OComb {
        let mut out = OComb::new();
        for (k, a) in &m.terms {
            for (w, p) in a.terms() {
                out.add(encode_key(k, w), p);
            }
        }
        out
    }
}

fn encode_key(k: &ModKey, w: &[crate::dga::Atom]) -> Key {
    let mut out = vec![k.cell as u32];
    out.extend_from_slice(&k.d);
    out.extend(encode_word(w));
    out
}

fn decode_key(m: &AModule, key: &Key) -> (ModKey, ModuleElement) {
    let nvars = m.nvars();
    let cell = key[0] as usize;
    let ar = m.cells[cell].arity * nvars;
    let mk = ModKey {
        cell,
        d: key[1..1 + ar].to_vec(),
    };
    let word = decode_word(&key[1 + ar..], nvars);
    let mut a = AlgebraElement::zero(nvars);
    a.add_word(word, &Polynomial::one(nvars));
    let mut el = ModuleElement::zero();
    el.add_term(mk.clone(), &a);
    (mk, el)
}

struct ModuleComplex {
    m: Arc<AModule>,
}

impl OGraded for ModuleComplex {
    fn nvars(&self) -> usize {
        self.m.nvars()
    }
    fn max_degree(&self, w: u32) -> usize {
        let cells = self.m.cells.iter().map(|c| c.degree).max().unwrap_or(0);
        let gens = self.m.algebra.generators().iter().map(|g| g.degree).max().unwrap_or(0);
        cells + gens * w as usize
    }
    fn basis(&self, degree: usize, w: u32) -> Vec<Key> {
        self.m.basis(degree, w).iter().map(|(k, word)| encode_key(k, word)).collect()
    }
    fn weight(&self, key: &Key) -> u32 {
        let nvars = self.m.nvars();
        let ar = self.m.cells[key[0] as usize].arity * nvars;
        key[1..1 + ar].iter().sum::<u32>() + word_weight(&decode_word(&key[1 + ar..], nvars))
    }
    fn differential(&self, _degree: usize, key: &Key) -> OComb {
        let (_, el) = decode_key(&self.m, key);
        self.m.element_to_comb(&self.m.d(&el))
    }
    fn describe(&self, key: &Key) -> String {
        let (_, el) = decode_key(&self.m, key);
        self.m.show(&el)
    }
}

type KeyRule = dyn Fn(&ModKey) -> ModuleElement + Send + Sync;

/// An `A`-linear degree-0 map, determined by its values on keys.
#[derive(Clone)]
pub struct AModuleMorphism {
    source: Arc<AModule>,
    target: Arc<AModule>,
    rule: Arc<KeyRule>,
    images: Option<Vec<ModuleElement>>,
}

impl fmt::Debug for AModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AModuleMorphism({} cells -> {} cells)", self.source.cells.len(), self.target.cells.len())
    }
}

impl AModuleMorphism {
    /// `q(a ⊗ v) = a ◁ q(v)` from the images of the cells of a Sullivan module.
    pub fn from_cell_images(source: &Arc<AModule>, target: &Arc<AModule>, images: Vec<ModuleElement>) -> Result<Self> {
        if !source.is_sullivan() || images.len() != source.cells.len() || source.algebra != target.algebra {
            return Err(Error::InvalidArgument("cell images need a Sullivan source over the same algebra".into()));
        }
        for img in &images {
            target.check(img)?;
        }
        let (src, tgt, imgs) = (source.clone(), target.clone(), images.clone());
        let rule = move |k: &ModKey| {
            if src.cells[k.cell].arity == 0 {
                imgs[k.cell].clone()
            } else {
                tgt.act_d_power(&k.d, &imgs[k.cell])
            }
        };
        Ok(AModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            rule: Arc::new(rule),
            images: Some(images),
        })
    }

    pub fn from_rule(
        source: &Arc<AModule>,
        target: &Arc<AModule>,
        rule: impl Fn(&ModKey) -> ModuleElement + Send + Sync + 'static,
    ) -> Self {
        AModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            rule: Arc::new(rule),
            images: None,
        }
    }

    pub fn identity(m: &Arc<AModule>) -> Self {
        let mm = m.clone();
        Self::from_rule(m, m, move |k| mm.key_element(k.clone()))
    }

    pub fn zero(source: &Arc<AModule>, target: &Arc<AModule>) -> Self {
        Self::from_rule(source, target, |_| ModuleElement::zero())
    }

    /// Inclusion of a module whose cells form a prefix of the target's.
    pub fn inclusion(source: &Arc<AModule>, target: &Arc<AModule>) -> Result<Self> {
        let n = source.cells.len();
        if n > target.cells.len() || source.cells[..] != target.cells[..n] {
            return Err(Error::InvalidArgument("not a sub-cell-complex".into()));
        }
        let t = target.clone();
        Ok(Self::from_rule(source, target, move |k| t.key_element(k.clone())))
    }

    pub fn source(&self) -> &Arc<AModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AModule> {
        &self.target
    }

    pub fn images(&self) -> Option<&[ModuleElement]> {
        self.images.as_deref()
    }

    pub fn apply_key(&self, k: &ModKey) -> ModuleElement {
        (self.rule)(k)
    }

    pub fn apply(&self, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (k, a) in &m.terms {
            out = out.add(&self.target.act(a, &self.apply_key(k)));
        }
        out
    }

    pub fn then(&self, other: &AModuleMorphism) -> AModuleMorphism {
        let (a, b) = (self.clone(), other.clone());
        Self::from_rule(&self.source, &other.target, move |k| b.apply(&a.apply_key(k)))
    }

    /// `d q = q d` on every key of weight at most `max_weight`.
    pub fn check_chain_map(&self, max_weight: u32) -> Result<()> {
        for (c, cell) in self.source.cells.iter().enumerate() {
            for k in self.source.keys(c, max_weight) {
                let lhs = self.target.d(&self.apply_key(&k));
                let rhs = self.apply(&self.source.d_key(&k));
                if lhs != rhs {
                    return Err(Error::NotAChainMap { degree: cell.degree });
                }
            }
        }
        Ok(())
    }

    pub fn as_obasis(&self) -> OBasisMap {
        let f = self.clone();
        let src = self.source.clone();
        OBasisMap::new(self.source.as_obasis(), self.target.as_obasis(), move |_d: usize, key: &Key| {
            let (_, el) = decode_key(&src, key);
            f.target.element_to_comb(&f.apply(&el))
        })
    }

    /// Bounded weak-equivalence test through the mapping cone.
    pub fn bounded_weq(&self, truncation: u32) -> Result<BoundedVerdict> {
        truncated_acyclicity(&self.as_obasis().cone(), truncation)
    }
}

/// Extends `p: T -> B` over the new cells of `source` (whose first cells are
/// `T`'s) by `q(g_j) = images[j]`, after checking `d q(g_j) = p(d g_j)`.
pub fn extend_morphism(p: &AModuleMorphism, source: &Arc<AModule>, images: Vec<ModuleElement>) -> Result<AModuleMorphism> {
    let t = p.source();
    let n = t.cells.len();
    if source.cells.len() != n + images.len() || source.cells[..n] != t.cells[..] {
        return Err(Error::InvalidArgument("source does not extend the domain of p".into()));
    }
    let base = p
        .images()
        .ok_or_else(|| Error::InvalidArgument("p must be given on cells".into()))?
        .to_vec();
    for (j, q) in images.iter().enumerate() {
        let cell = &source.cells[n + j];
        let CellRule::Assigned(dg) = &cell.rule else {
            return Err(Error::InvalidArgument("extension cells must be assigned".into()));
        };
        let lhs = p.target().d(q);
        let rhs = p.apply(dg);
        if lhs != rhs {
            return Err(Error::ConditionViolated {
                generator: cell.name.clone(),
                detail: p.target().show(&lhs.sub(&rhs)),
            });
        }
    }
    let mut all = base;
    all.extend(images);
    AModuleMorphism::from_cell_images(source, p.target(), all)
}

/// `B ⊗_A (A ⊗ V)`, identified with `B ⊗_O V` through `ı`.
pub fn tensor_over_a(b: &Arc<AModule>, m: &Arc<AModule>) -> Result<AModule> {
    if b.algebra != m.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let mut pairs = BTreeMap::new();
    for l in 0..b.cells.len() {
        for r in 0..m.cells.len() {
            let idx = pairs.len();
            pairs.insert((l, r), idx);
        }
    }
    let pairs = Arc::new(pairs);
    let mut cells = Vec::new();
    for (l, lc) in b.cells.iter().enumerate() {
        for (r, rc) in m.cells.iter().enumerate() {
            cells.push(Cell {
                name: format!("{}⊗{}", lc.name, rc.name),
                degree: lc.degree + rc.degree,
                arity: lc.arity + rc.arity,
                rule: CellRule::Tensor {
                    left: b.clone(),
                    lcell: l,
                    right: m.clone(),
                    rcell: r,
                    pairs: pairs.clone(),
                },
            });
        }
    }
    Ok(AModule {
        algebra: b.algebra.clone(),
        cells,
    })
}

/// The cell of `L ⊗_A R` indexed by `(l, r)`.
pub fn pair_cell(l: usize, r: usize, right_cells: usize) -> usize {
    l * right_cells + r
}

/// `ı(b ⊗ (a ⊗ m)) = (-1)^{|a||b|} a ◁ (b ⊗ m)` for `b ∈ B`, `a ∈ A` and a key
/// `m` of `M`.
pub fn iota(bm: &AModule, b: &AModule, m: &AModule, x: &ModuleElement, a: &AlgebraElement, key: &ModKey) -> ModuleElement {
    let rc = m.cells.len();
    let bdeg = b.degree_of(x).unwrap_or(0);
    let adeg = b.algebra.degree_of(a).unwrap_or(0);
    let mut btm = ModuleElement::zero();
    for (k, alpha) in &x.terms {
        let mut d = k.d.clone();
        d.extend_from_slice(&key.d);
        btm.add_term(
            ModKey {
                cell: pair_cell(k.cell, key.cell, rc),
                d,
            },
            alpha,
        );
    }
    let out = bm.act(a, &btm);
    if (adeg * bdeg) % 2 == 1 {
        out.scale(&-Rational::one())
    } else {
        out
    }
}

/// `ı^{-1}`: splits each term `α ⊗ (k ⊗ m)` into `(α ◁ k) ⊗ (1 ⊗ m)`.
pub fn iota_inverse(b: &AModule, m: &AModule, y: &ModuleElement) -> Vec<(ModuleElement, ModKey)> {
    let rc = m.cells.len();
    let nvars = b.nvars();
    let mut out: BTreeMap<ModKey, ModuleElement> = BTreeMap::new();
    for (k, alpha) in &y.terms {
        let (l, r) = (k.cell / rc, k.cell % rc);
        let split = b.cells[l].arity * nvars;
        let bk = ModKey {
            cell: l,
            d: k.d[..split].to_vec(),
        };
        let mk = ModKey {
            cell: r,
            d: k.d[split..].to_vec(),
        };
        let mut piece = ModuleElement::zero();
        piece.add_term(bk, alpha);
        let entry = out.entry(mk).or_default();
        *entry = entry.add(&piece);
    }
    out.into_iter().map(|(k, v)| (v, k)).collect()
}

/// `f ⊗_A Id_M: P ⊗_A M -> Q ⊗_A M`.
pub fn tensor_with_identity(f: &AModuleMorphism, m: &Arc<AModule>) -> Result<AModuleMorphism> {
    let pm = Arc::new(tensor_over_a(f.source(), m)?);
    let qm = Arc::new(tensor_over_a(f.target(), m)?);
    let (ff, mm, q) = (f.clone(), m.clone(), f.target().clone());
    let nvars = m.nvars();
    let src = f.source().clone();
    let rule = move |k: &ModKey| {
        let rc = mm.cells.len();
        let (l, r) = (k.cell / rc, k.cell % rc);
        let split = src.cells[l].arity * nvars;
        let fk = ff.apply_key(&ModKey {
            cell: l,
            d: k.d[..split].to_vec(),
        });
        let mut out = ModuleElement::zero();
        for (k2, a) in &fk.terms {
            let mut d = k2.d.clone();
            d.extend_from_slice(&k.d[split..]);
            out.add_term(
                ModKey {
                    cell: pair_cell(k2.cell, r, rc),
                    d,
                },
                a,
            );
        }
        let _ = &q;
        out
    };
    Ok(AModuleMorphism::from_rule(&pm, &qm, rule))
}

/// `B ⊗_A N` for a Sullivan algebra `B` extending `A`.
pub fn base_change(b: &Arc<SullivanAlgebra>, n: &AModule) -> Result<AModule> {
    if !is_extension(&n.algebra, b) {
        return Err(Error::InvalidArgument("B is not a Sullivan extension of A".into()));
    }
    if n.is_sullivan() {
        return Ok(AModule {
            algebra: b.clone(),
            cells: n.cells.clone(),
        });
    }
    let first = n.cells.first().map(|c| c.rule.clone());
    match first {
        Some(CellRule::Tensor { left, right, .. }) => {
            let l = Arc::new(base_change(b, &left)?);
            let r = Arc::new(base_change(b, &right)?);
            let out = tensor_over_a(&l, &r)?;
            if out.cells.len() != n.cells.len() {
                return Err(Error::InvalidArgument("mixed module shapes".into()));
            }
            Ok(out)
        }
        _ => Err(Error::InvalidArgument("mixed module shapes".into())),
    }
}

/// `B ⊗_A f`, for `f` given on cells.
pub fn base_change_morphism(b: &Arc<SullivanAlgebra>, f: &AModuleMorphism) -> Result<AModuleMorphism> {
    let src = Arc::new(base_change(b, f.source())?);
    let tgt = Arc::new(base_change(b, f.target())?);
    match f.images() {
        Some(images) => AModuleMorphism::from_cell_images(&src, &tgt, images.to_vec()),
        None => {
            let ff = f.clone();
            Ok(AModuleMorphism::from_rule(&src, &tgt, move |k| ff.apply_key(k)))
        }
    }
}

/// The pushout of `f: A ⊗ S^{n-1} -> B` along `A ⊗ S^{n-1} -> A ⊗ D^n`.
#[derive(Clone, Debug)]
pub struct AModPushout {
    pub object: Arc<AModule>,
    /// `g: B -> X`.
    pub from_b: AModuleMorphism,
    /// `h: A ⊗ D^n -> X`.
    pub from_disk: AModuleMorphism,
    pub disk: Arc<AModule>,
    pub attaching: ModuleElement,
}

pub fn amod_pushout_gen(b: &Arc<AModule>, n: usize, attaching: &ModuleElement) -> Result<AModPushout> {
    if n == 0 {
        return Err(Error::InvalidArgument("attaching needs n >= 1".into()));
    }
    let x = Arc::new(b.extend_differential(&format!("1_{n}#{}", b.cells.len()), n, attaching.clone())?);
    let from_b = AModuleMorphism::inclusion(b, &x)?;
    let disk = Arc::new(AModule::free_disk(&b.algebra, n)?);
    let top = x.basis_element(x.cells.len() - 1);
    let from_disk = AModuleMorphism::from_cell_images(&disk, &x, vec![attaching.clone(), top])?;
    Ok(AModPushout {
        object: x,
        from_b,
        from_disk,
        disk,
        attaching: attaching.clone(),
    })
}

impl AModPushout {
    /// The factoring map `u` with `u|_B = p` and `u(1_n) = q(1_n)`.
    pub fn universal(&self, p: &AModuleMorphism, q: &AModuleMorphism) -> Result<AModuleMorphism> {
        let nb = self.from_b.source().cells.len();
        if p.apply(&self.attaching) != q.apply_key(&ModKey { cell: 0, d: vec![0; self.object.nvars()] }) {
            return Err(Error::InvalidArgument("cocone does not commute".into()));
        }
        let (pp, qq, e) = (p.clone(), q.clone(), p.target().clone());
        let u = AModuleMorphism::from_rule(&self.object, p.target(), move |k| {
            if k.cell < nb {
                pp.apply_key(k)
            } else {
                e.act_d_power(&k.d, &qq.apply_key(&ModKey { cell: 1, d: vec![0; k.d.len()] }))
            }
        });
        Ok(u)
    }
}

/// Iterated single-cell pushouts.
pub fn transfinite_compose_finite(b: &Arc<AModule>, stages: &[(usize, ModuleElement)]) -> Result<(Arc<AModule>, AModuleMorphism)> {
    let mut cur = b.clone();
    for (n, att) in stages {
        cur = amod_pushout_gen(&cur, *n, att)?.object;
    }
    let incl = AModuleMorphism::inclusion(b, &cur)?;
    Ok((cur, incl))
}

/// A commutative monoid in `Mod(A)`: an algebra `M` with an `A`-action that
/// is given by the action of the generators of `A` on `1_M`.
#[derive(Clone, Debug, PartialEq)]
pub struct CMonoid {
    pub base: Arc<SullivanAlgebra>,
    pub carrier: Arc<SullivanAlgebra>,
    /// `g_j ◁ 1_M`.
    pub generator_action: Vec<AlgebraElement>,
}

impl CMonoid {
    /// `a ◁ m`, computed atom by atom: `(d^b g) ◁ m = (d^b (g ◁ 1)) ⋆ m`.
    pub fn act(&self, a: &AlgebraElement, m: &AlgebraElement) -> AlgebraElement {
        let c = &self.carrier;
        let mut out = AlgebraElement::zero(c.nvars());
        for (w, p) in a.terms() {
            let mut acc = m.times_poly(p);
            for atom in w.iter().rev() {
                let act = c.act_d_power(&atom.d, &self.generator_action[atom.generator]);
                acc = c.mul_unchecked(&act, &acc);
            }
            out = out.add(&acc);
        }
        out
    }
}

/// `F`: `a ◁ m := φ(a) ⋆ m`.
pub fn under_to_cmon(phi: &AlgebraMorphism) -> CMonoid {
    CMonoid {
        base: phi.source().clone(),
        carrier: phi.target().clone(),
        generator_action: phi.images().to_vec(),
    }
}

/// `G`: `φ(a) := a ◁ 1_M`.
pub fn cmon_to_under(n: &CMonoid) -> Result<AlgebraMorphism> {
    if n.carrier.nvars() != n.base.nvars() {
        return Err(Error::AlgebraMismatch);
    }
    let one = AlgebraElement::one(n.carrier.nvars());
    let images = (0..n.base.generators().len())
        .map(|j| n.act(&n.base.generator(j), &one))
        .collect();
    AlgebraMorphism::new(n.base.clone(), n.carrier.clone(), images)
}

/// `Σ(M) = A ⊗ M` for a free complex `M`; cells are the basis vectors of `M`
/// in increasing degree.
pub fn free_amodule(a: &Arc<SullivanAlgebra>, m: &FreeDComplex) -> Result<AModule> {
    let mut out = AModule::zero(a);
    let mut offsets = Vec::new();
    for n in 0..=m.top() {
        offsets.push(out.cells.len());
        for k in 0..m.rank(n) {
            let mut value = ModuleElement::zero();
            if n > 0 {
                let row = m.differential(n).row(k).clone();
                for (j, p) in row.coords().iter().enumerate() {
                    if !p.is_zero() {
                        value = value.add(&out.act_weyl(p, &out.basis_element(offsets[n - 1] + j)));
                    }
                }
            }
            out = out.extend_differential(&format!("e{n}_{k}"), n, value)?;
        }
    }
    Ok(out)
}

/// `Σ(ι_n) = Id_A ⊗ ι_n` and `Σ(ζ_n) = Id_A ⊗ ζ_n`.
pub fn sigma(a: &Arc<SullivanAlgebra>, g: GeneratingMap) -> Result<AModuleMorphism> {
    match g {
        GeneratingMap::Iota(0) => {
            let src = Arc::new(AModule::zero(a));
            let tgt = Arc::new(AModule::free_sphere(a, 0));
            AModuleMorphism::from_cell_images(&src, &tgt, Vec::new())
        }
        GeneratingMap::Iota(n) => {
            let src = Arc::new(AModule::free_sphere(a, n - 1));
            let tgt = Arc::new(AModule::free_disk(a, n)?);
            AModuleMorphism::inclusion(&src, &tgt)
        }
        GeneratingMap::Zeta(n) => {
            let src = Arc::new(AModule::zero(a));
            let tgt = Arc::new(AModule::free_disk(a, n)?);
            AModuleMorphism::from_cell_images(&src, &tgt, Vec::new())
        }
    }
}

/// `μ(a ⊗ (a' ⊗ m)) = (a ⋆ a') ⊗ m` for the monad `U = ΦΣ`.
pub fn monad_multiply(m: &AModule, a: &AlgebraElement, inner: &ModuleElement) -> ModuleElement {
    m.act(a, inner)
}

/// `η(m) = 1 ⊗ m`.
pub fn monad_unit(m: &AModule, key: &ModKey) -> ModuleElement {
    m.key_element(key.clone())
}

/// A formal product of elements of `S(M)`, read as an element of `S(S(M))`.
pub type FormalWord = Vec<(Rational, Vec<AlgebraElement>)>;

/// `μ: S(S(M)) -> S(M)`.
pub fn sym_multiply(alg: &SullivanAlgebra, x: &FormalWord) -> AlgebraElement {
    let mut out = AlgebraElement::zero(alg.nvars());
    for (c, factors) in x {
        let mut acc = AlgebraElement::one(alg.nvars());
        for f in factors {
            acc = alg.mul_unchecked(&acc, f);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// `S(η): S(M) -> S(S(M))`, sending each atom to the singleton word.
pub fn sym_unit_inside(alg: &SullivanAlgebra, u: &AlgebraElement) -> FormalWord {
    u.terms()
        .map(|(w, p)| {
            let mut factors = vec![AlgebraElement::scalar(p.clone())];
            factors.extend(w.iter().map(|a| alg.atom(a.clone())));
            (Rational::one(), factors)
        })
        .collect()
}

/// `η_{S(M)}: S(M) -> S(S(M))`.
pub fn sym_unit_outside(u: &AlgebraElement) -> FormalWord {
    vec![(Rational::one(), vec![u.clone()])]
}
