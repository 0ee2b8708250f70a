//! Graded modules that are free over `O` on a countable basis, with
//! `O`-linear differentials given basis element by basis element.
//!
//! Such objects are usually of infinite rank over `D` (tensor products over
//! `O`, free graded-commutative algebras), so they are examined on finite
//! slices: the `Q`-span of `x^a * key` with `|a| + weight(key) <= N`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, Indexer, SparseVec};
use crate::weyl::{Polynomial, Rational};

/// Opaque, canonical encoding of a basis element.
pub type Key = Vec<u32>;

/// An `O`-linear combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OComb {
    terms: BTreeMap<Key, Polynomial>,
}

impl OComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(key: Key, nvars: usize) -> Self {
        let mut c = Self::new();
        c.add(key, &Polynomial::one(nvars));
        c
    }

    pub fn add(&mut self, key: Key, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn add_comb(&mut self, other: &OComb, factor: &Polynomial) {
        for (k, p) in &other.terms {
            self.add(k.clone(), &(p * factor));
        }
    }

    pub fn scale(&self, c: &Rational) -> OComb {
        let mut out = OComb::new();
        for (k, p) in &self.terms {
            out.add(k.clone(), &p.scale(c));
        }
        out
    }

    pub fn map_keys(&self, f: impl Fn(&Key) -> Key) -> OComb {
        let mut out = OComb::new();
        for (k, p) in &self.terms {
            out.add(f(k), p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Polynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A graded `O`-free module with an `O`-linear differential of degree -1.
pub trait OGraded: Send + Sync {
    fn nvars(&self) -> usize;
    /// Degrees above this bound carry no basis element of weight <= `max_weight`.
    fn max_degree(&self, max_weight: u32) -> usize;
    /// Basis elements of the given degree and weight at most `max_weight`.
    fn basis(&self, degree: usize, max_weight: u32) -> Vec<Key>;
    fn weight(&self, key: &Key) -> u32;
    fn differential(&self, degree: usize, key: &Key) -> OComb;
    fn describe(&self, key: &Key) -> String {
        format!("{key:?}")
    }
}

/// An `O`-linear degree-0 map between two [`OGraded`] modules.
pub trait OLinear: Send + Sync {
    fn apply(&self, degree: usize, key: &Key) -> OComb;
}

impl<F> OLinear for F
where
    F: Fn(usize, &Key) -> OComb + Send + Sync,
{
    fn apply(&self, degree: usize, key: &Key) -> OComb {
        self(degree, key)
    }
}

/// Shared handle to an `O`-basis complex.
#[derive(Clone)]
pub struct OBasisComplex {
    inner: Arc<dyn OGraded>,
    label: String,
}

impl fmt::Debug for OBasisComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OBasisComplex({})", self.label)
    }
}

impl OBasisComplex {
    pub fn new(inner: impl OGraded + 'static, label: impl Into<String>) -> Self {
        OBasisComplex {
            inner: Arc::new(inner),
            label: label.into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    pub fn max_degree(&self, max_weight: u32) -> usize {
        self.inner.max_degree(max_weight)
    }

    pub fn basis(&self, degree: usize, max_weight: u32) -> Vec<Key> {
        self.inner.basis(degree, max_weight)
    }

    pub fn weight(&self, key: &Key) -> u32 {
        self.inner.weight(key)
    }

    pub fn differential(&self, degree: usize, key: &Key) -> OComb {
        if degree == 0 {
            return OComb::new();
        }
        self.inner.differential(degree, key)
    }

    pub fn describe(&self, key: &Key) -> String {
        self.inner.describe(key)
    }

    /// Differential of an arbitrary combination.
    pub fn differential_of(&self, degree: usize, c: &OComb) -> OComb {
        let mut out = OComb::new();
        for (k, p) in c.terms() {
            out.add_comb(&self.differential(degree, k), p);
        }
        out
    }

    /// Checks `d∘d = 0` on every basis element of weight <= `max_weight`.
    pub fn check_d_squared(&self, max_weight: u32) -> Result<()> {
        for p in 2..=self.max_degree(max_weight) {
            for k in self.basis(p, max_weight) {
                let dd = self.differential_of(p - 1, &self.differential(p, &k));
                if !dd.is_zero() {
                    return Err(Error::NotAComplex { degree: p });
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &OBasisComplex) -> OBasisComplex {
        OBasisComplex::new(
            DirectSum {
                parts: vec![self.clone(), other.clone()],
            },
            format!("({}) ⊕ ({})", self.label, other.label),
        )
    }
}

/// An `O`-linear chain map between two [`OBasisComplex`]es.
#[derive(Clone)]
pub struct OBasisMap {
    source: OBasisComplex,
    target: OBasisComplex,
    f: Arc<dyn OLinear>,
    preimage: Option<Arc<Preimage>>,
}

type Preimage = dyn Fn(usize, &Key) -> Option<Key> + Send + Sync;

impl fmt::Debug for OBasisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OBasisMap({} -> {})", self.source.label, self.target.label)
    }
}

impl OBasisMap {
    pub fn new(source: OBasisComplex, target: OBasisComplex, f: impl OLinear + 'static) -> Self {
        OBasisMap {
            source,
            target,
            f: Arc::new(f),
            preimage: None,
        }
    }

    /// Marks the map as a basis inclusion: `back` returns the source key
    /// sent to a target key, if any.
    pub fn with_preimage(mut self, back: impl Fn(usize, &Key) -> Option<Key> + Send + Sync + 'static) -> Self {
        self.preimage = Some(Arc::new(back));
        self
    }

    pub fn is_basis_inclusion(&self) -> bool {
        self.preimage.is_some()
    }

    pub fn preimage(&self, degree: usize, key: &Key) -> Option<Key> {
        self.preimage.as_ref().and_then(|b| b(degree, key))
    }

    pub fn source(&self) -> &OBasisComplex {
        &self.source
    }

    pub fn target(&self) -> &OBasisComplex {
        &self.target
    }

    pub fn apply(&self, degree: usize, key: &Key) -> OComb {
        self.f.apply(degree, key)
    }

    pub fn apply_comb(&self, degree: usize, c: &OComb) -> OComb {
        let mut out = OComb::new();
        for (k, p) in c.terms() {
            out.add_comb(&self.apply(degree, k), p);
        }
        out
    }

    /// "First `self`, then `other`".
    pub fn then(&self, other: &OBasisMap) -> OBasisMap {
        let (a, b) = (self.clone(), other.clone());
        OBasisMap::new(self.source.clone(), other.target.clone(), move |deg: usize, k: &Key| {
            b.apply_comb(deg, &a.apply(deg, k))
        })
    }

    /// Checks `d f = f d` on basis elements of weight <= `max_weight`.
    pub fn check_chain_map(&self, max_weight: u32) -> Result<()> {
        for p in 1..=self.source.max_degree(max_weight) {
            for k in self.source.basis(p, max_weight) {
                let lhs = self.target.differential_of(p, &self.apply(p, &k));
                let rhs = self.apply_comb(p - 1, &self.source.differential(p, &k));
                if lhs != rhs {
                    return Err(Error::NotAChainMap { degree: p });
                }
            }
        }
        Ok(())
    }

    /// Mapping cone, `Mc(f)_n = X_{n-1} ⊕ Y_n` with `d(c, c') = (-dc, f(c) + dc')`.
    pub fn cone(&self) -> OBasisComplex {
        OBasisComplex::new(
            Cone { map: self.clone() },
            format!("Mc({} -> {})", self.source.label, self.target.label),
        )
    }
}

/// Pushout of `f: A -> Y` along a basis inclusion `g: A -> W`:
/// `Y ⊕ (W keys outside the image of g)`, with keys prefixed `0` and `1`.
/// Returns the object and the two legs `Y -> P` and `W -> P`.
pub fn pushout_along_inclusion(f: &OBasisMap, g: &OBasisMap) -> Result<(OBasisComplex, OBasisMap, OBasisMap)> {
    if !g.is_basis_inclusion() {
        return Err(Error::NotCertified("pushout leg is not a basis inclusion".into()));
    }
    let p = OBasisComplex::new(
        Pushout {
            f: f.clone(),
            g: g.clone(),
        },
        format!("{} ⊔ {}", f.target.label, g.target.label),
    );
    let nvars = p.nvars();
    let y_leg = OBasisMap::new(f.target.clone(), p.clone(), move |_d: usize, k: &Key| {
        OComb::basis(prefixed(0, k), nvars)
    });
    let (f2, g2) = (f.clone(), g.clone());
    let w_leg = OBasisMap::new(g.target.clone(), p.clone(), move |d: usize, k: &Key| match g2.preimage(d, k) {
        Some(a) => f2.apply(d, &a).map_keys(|t| prefixed(0, t)),
        None => OComb::basis(prefixed(1, k), nvars),
    });
    Ok((p, y_leg, w_leg))
}

struct Pushout {
    f: OBasisMap,
    g: OBasisMap,
}

impl OGraded for Pushout {
    fn nvars(&self) -> usize {
        self.f.target.nvars()
    }
    fn max_degree(&self, w: u32) -> usize {
        self.f.target.max_degree(w).max(self.g.target.max_degree(w))
    }
    fn basis(&self, degree: usize, w: u32) -> Vec<Key> {
        let mut out: Vec<Key> = self.f.target.basis(degree, w).iter().map(|k| prefixed(0, k)).collect();
        for k in self.g.target.basis(degree, w) {
            if self.g.preimage(degree, &k).is_none() {
                out.push(prefixed(1, &k));
            }
        }
        out
    }
    fn weight(&self, key: &Key) -> u32 {
        let inner = key[1..].to_vec();
        if key[0] == 0 {
            self.f.target.weight(&inner)
        } else {
            self.g.target.weight(&inner)
        }
    }
    fn differential(&self, degree: usize, key: &Key) -> OComb {
        let inner = key[1..].to_vec();
        if key[0] == 0 {
            return self.f.target.differential(degree, &inner).map_keys(|k| prefixed(0, k));
        }
        let mut out = OComb::new();
        for (k, p) in self.g.target.differential(degree, &inner).terms() {
            match self.g.preimage(degree - 1, k) {
                Some(a) => out.add_comb(&self.f.apply(degree - 1, &a).map_keys(|t| prefixed(0, t)), p),
                None => out.add(prefixed(1, k), p),
            }
        }
        out
    }
    fn describe(&self, key: &Key) -> String {
        let inner = key[1..].to_vec();
        if key[0] == 0 {
            self.f.target.describe(&inner)
        } else {
            self.g.target.describe(&inner)
        }
    }
}

/// Direct sum; keys are prefixed by the summand index.
struct DirectSum {
    parts: Vec<OBasisComplex>,
}

impl OGraded for DirectSum {
    fn nvars(&self) -> usize {
        self.parts[0].nvars()
    }
    fn max_degree(&self, w: u32) -> usize {
        self.parts.iter().map(|p| p.max_degree(w)).max().unwrap_or(0)
    }
    fn basis(&self, degree: usize, w: u32) -> Vec<Key> {
        let mut out = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            for k in p.basis(degree, w) {
                out.push(prefixed(i as u32, &k));
            }
        }
        out
    }
    fn weight(&self, key: &Key) -> u32 {
        self.parts[key[0] as usize].weight(&key[1..].to_vec())
    }
    fn differential(&self, degree: usize, key: &Key) -> OComb {
        let i = key[0];
        self.parts[i as usize]
            .differential(degree, &key[1..].to_vec())
            .map_keys(|k| prefixed(i, k))
    }
    fn describe(&self, key: &Key) -> String {
        format!("{}:{}", key[0], self.parts[key[0] as usize].describe(&key[1..].to_vec()))
    }
}

pub fn prefixed(tag: u32, k: &Key) -> Key {
    let mut v = Vec::with_capacity(k.len() + 1);
    v.push(tag);
    v.extend_from_slice(k);
    v
}

/// Inclusion of summand `i` of a two-term direct sum built by
/// [`OBasisComplex::direct_sum`].
pub fn summand_inclusion(sum: &OBasisComplex, part: &OBasisComplex, i: u32) -> OBasisMap {
    let nvars = sum.nvars();
    OBasisMap::new(part.clone(), sum.clone(), move |_d: usize, k: &Key| OComb::basis(prefixed(i, k), nvars))
}

struct Cone {
    map: OBasisMap,
}

impl OGraded for Cone {
    fn nvars(&self) -> usize {
        self.map.target.nvars()
    }
    fn max_degree(&self, w: u32) -> usize {
        (self.map.source.max_degree(w) + 1).max(self.map.target.max_degree(w))
    }
    fn basis(&self, degree: usize, w: u32) -> Vec<Key> {
        let mut out = Vec::new();
        if degree >= 1 {
            out.extend(self.map.source.basis(degree - 1, w).iter().map(|k| prefixed(0, k)));
        }
        out.extend(self.map.target.basis(degree, w).iter().map(|k| prefixed(1, k)));
        out
    }
    fn weight(&self, key: &Key) -> u32 {
        let inner = key[1..].to_vec();
        if key[0] == 0 {
            self.map.source.weight(&inner)
        } else {
            self.map.target.weight(&inner)
        }
    }
    fn differential(&self, degree: usize, key: &Key) -> OComb {
        let inner = key[1..].to_vec();
        if key[0] == 0 {
            let mut out = self.map.source.differential(degree - 1, &inner).scale(&-Rational::one()).map_keys(|k| prefixed(0, k));
            let image = self.map.apply(degree - 1, &inner).map_keys(|k| prefixed(1, k));
            out.add_comb(&image, &Polynomial::one(self.nvars()));
            out
        } else {
            self.map.target.differential(degree, &inner).map_keys(|k| prefixed(1, k))
        }
    }
    fn describe(&self, key: &Key) -> String {
        let inner = key[1..].to_vec();
        if key[0] == 0 {
            format!("s({})", self.map.source.describe(&inner))
        } else {
            self.map.target.describe(&inner)
        }
    }
}

/// All exponent vectors in `nvars` variables of total degree <= `max`.
pub fn exponents_upto(nvars: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, max, &mut cur, &mut out);
    out
}

/// A `Q`-coordinate: monomial `x^a` times a basis key.
type Coord = (Vec<u32>, Key);

fn slice_coords(c: &OBasisComplex, degree: usize, n: u32) -> Vec<Coord> {
    let nvars = c.nvars();
    let mut out = Vec::new();
    for k in c.basis(degree, n) {
        let w = c.weight(&k);
        if w > n {
            continue;
        }
        for a in exponents_upto(nvars, n - w) {
            out.push((a, k.clone()));
        }
    }
    out
}

fn comb_to_vec(c: &OComb, shift: &[u32], idx: &mut Indexer<Coord>) -> SparseVec {
    let mut v = SparseVec::new();
    for (k, p) in c.terms() {
        for (e, a) in p.terms() {
            let ee: Vec<u32> = e.iter().zip(shift).map(|(u, w)| u + w).collect();
            let i = idx.index(&(ee, k.clone()));
            let slot = v.entry(i).or_insert_with(Rational::zero);
            *slot += a;
            if slot.is_zero() {
                v.remove(&i);
            }
        }
    }
    v
}

/// Outcome of a truncated exactness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundedVerdict {
    /// Exactness verified on every listed truncation level.
    BoundedPass { levels: Vec<u32> },
    /// A cycle that is not a boundary at the given level.
    Fail {
        level: u32,
        degree: usize,
        witness: String,
    },
}

impl BoundedVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BoundedVerdict::BoundedPass { .. })
    }
}

/// A failing cycle: its degree and coordinates.
#[derive(Clone, Debug)]
pub struct CycleWitness {
    pub degree: usize,
    pub cycle: Vec<(Vec<u32>, Key, Rational)>,
}

/// Exactness at one level: every cycle of weight <= `n - 2` must be the
/// boundary of an element of weight <= `n`.
pub fn exact_at_level(c: &OBasisComplex, n: u32) -> Option<CycleWitness> {
    let top = c.max_degree(n);
    for p in 0..=top {
        let mut idx: Indexer<Coord> = Indexer::new();
        let small = slice_coords(c, p, n - 2);
        // cycles among the small slice
        let cycles: Vec<SparseVec> = if p == 0 {
            small
                .iter()
                .map(|co| {
                    let mut v = SparseVec::new();
                    v.insert(idx.index(co), Rational::one());
                    v
                })
                .collect()
        } else {
            let mut lower: Indexer<Coord> = Indexer::new();
            let images: Vec<SparseVec> = small
                .iter()
                .map(|(a, k)| comb_to_vec(&c.differential(p, k), a, &mut lower))
                .collect();
            kernel(&images)
                .into_iter()
                .map(|comb| {
                    let mut v = SparseVec::new();
                    for (i, coef) in comb {
                        v.insert(idx.index(&small[i]), coef);
                    }
                    v
                })
                .collect()
        };
        if cycles.is_empty() {
            continue;
        }
        let mut bounds = Echelon::new();
        for (a, k) in slice_coords(c, p + 1, n) {
            let v = comb_to_vec(&c.differential(p + 1, &k), &a, &mut idx);
            bounds.insert(&v);
        }
        for z in &cycles {
            if !bounds.contains(z) {
                let cycle = z
                    .iter()
                    .map(|(i, coef)| {
                        let (a, k) = idx.key(*i).clone();
                        (a, k, coef.clone())
                    })
                    .collect();
                return Some(CycleWitness { degree: p, cycle });
            }
        }
    }
    None
}

fn render_witness(c: &OBasisComplex, w: &CycleWitness) -> String {
    let nvars = c.nvars();
    let parts: Vec<String> = w
        .cycle
        .iter()
        .map(|(a, k, coef)| {
            let p = Polynomial::monomial(a.clone(), coef.clone());
            let _ = nvars;
            format!("({p})*{}", c.describe(k))
        })
        .collect();
    parts.join(" + ")
}

/// Exactness on the slices of weight `n` and `n + 1`.
pub fn truncated_acyclicity(c: &OBasisComplex, n: u32) -> Result<BoundedVerdict> {
    if n < 2 {
        return Err(Error::TruncationTooSmall(n as usize));
    }
    for level in [n, n + 1] {
        if let Some(w) = exact_at_level(c, level) {
            return Ok(BoundedVerdict::Fail {
                level,
                degree: w.degree,
                witness: render_witness(c, &w),
            });
        }
    }
    Ok(BoundedVerdict::BoundedPass { levels: vec![n, n + 1] })
}

/// Rank of a map on the slice of weight <= `n` in one degree, together with
/// the dimension of that slice.
pub fn slice_rank(f: &OBasisMap, degree: usize, n: u32) -> (usize, usize) {
    let coords = slice_coords(f.source(), degree, n);
    let mut idx: Indexer<Coord> = Indexer::new();
    let mut e = Echelon::new();
    for (a, k) in &coords {
        e.insert(&comb_to_vec(&f.apply(degree, k), a, &mut idx));
    }
    (e.rank(), coords.len())
}

/// Dimension of the slice of weight <= `n` in one degree.
pub fn slice_dimension(c: &OBasisComplex, degree: usize, n: u32) -> usize {
    slice_coords(c, degree, n).len()
}

/// Basis keys of the target not hit by any basis element of the source,
/// when the map sends basis elements to basis elements.
pub fn basis_cokernel_keys(f: &OBasisMap, degree: usize, n: u32) -> Option<BTreeSet<Key>> {
    let one = Polynomial::one(f.source().nvars());
    let mut hit = BTreeSet::new();
    for k in f.source().basis(degree, n) {
        let img = f.apply(degree, &k);
        if img.len() != 1 {
            return None;
        }
        let (t, p) = img.terms().next().expect("one term");
        if *p != one {
            return None;
        }
        if !hit.insert(t.clone()) {
            return None;
        }
    }
    Some(
        f.target()
            .basis(degree, n)
            .into_iter()
            .filter(|k| !hit.contains(k))
            .collect(),
    )
}
