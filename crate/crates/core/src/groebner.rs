//! Left Gröbner bases for submodules of free left `D`-modules `D^r`.
//!
//! Terms are compared position-over-term (position 0 dominates), then by
//! degree-reverse-lexicographic order on the commutative exponents
//! `(x_1..x_n, d_1..d_n)`. Because that order refines total degree, the
//! leading term of `x^a d^b * g` is `(a,b) + lt(g)`, which is all Buchberger
//! needs over the Weyl algebra.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weyl::{Monomial, Rational, WeylElement};

pub const DEFAULT_DEGREE_BOUND: u32 = 40;

/// Resolves the degree guard: `WEYL_BOUND` in the environment wins over
/// the supplied value.
pub fn degree_bound_from_env(fallback: u32) -> u32 {
    std::env::var("WEYL_BOUND")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(fallback)
}

/// An element of `D^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModuleElement {
    nvars: usize,
    coords: Vec<WeylElement>,
}

impl FreeModuleElement {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        FreeModuleElement {
            nvars,
            coords: vec![WeylElement::zero(nvars); rank],
        }
    }

    pub fn unit(nvars: usize, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars, rank);
        v.coords[i] = WeylElement::one(nvars);
        v
    }

    pub fn new(nvars: usize, coords: Vec<WeylElement>) -> Result<Self> {
        for c in &coords {
            if c.nvars() != nvars {
                return Err(Error::NvarsMismatch {
                    left: nvars,
                    right: c.nvars(),
                });
            }
        }
        Ok(FreeModuleElement { nvars, coords })
    }

    pub fn from_coords(coords: Vec<WeylElement>) -> Self {
        let nvars = coords.first().map(WeylElement::nvars).unwrap_or(1);
        Self::new(nvars, coords).expect("coordinates share nvars")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[WeylElement] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &WeylElement {
        &self.coords[i]
    }

    pub fn set(&mut self, i: usize, value: WeylElement) {
        self.coords[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(WeylElement::is_zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.coords.iter().map(WeylElement::total_degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeModuleElement {
            nvars: self.nvars,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeModuleElement {
            nvars: self.nvars,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FreeModuleElement {
            nvars: self.nvars,
            coords: self.coords.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Left scalar multiplication `p * v`.
    pub fn left_mul(&self, p: &WeylElement) -> Self {
        FreeModuleElement {
            nvars: self.nvars,
            coords: self.coords.iter().map(|a| p * a).collect(),
        }
    }

    pub fn left_mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        FreeModuleElement {
            nvars: self.nvars,
            coords: self.coords.iter().map(|a| a.left_mul_monomial(m, c)).collect(),
        }
    }

    /// Concatenation `(self, other)` in `D^(r+s)`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        FreeModuleElement {
            nvars: self.nvars,
            coords,
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        FreeModuleElement {
            nvars: self.nvars,
            coords: self.coords[range].to_vec(),
        }
    }

    /// Image under the left-linear map whose matrix rows are `rows`:
    /// `sum_i v_i * rows[i]`.
    pub fn apply(&self, rows: &[FreeModuleElement], target_rank: usize) -> Self {
        assert_eq!(rows.len(), self.rank(), "matrix height mismatch");
        let mut out = Self::zero(self.nvars, target_rank);
        for (c, row) in self.coords.iter().zip(rows) {
            if c.is_zero() {
                continue;
            }
            out = out.add(&row.left_mul(c));
        }
        out
    }

    /// Leading term under the module order.
    pub fn leading_term(&self) -> Option<Term> {
        for (pos, c) in self.coords.iter().enumerate() {
            if let Some((m, a)) = c.terms().max_by(|(m1, _), (m2, _)| degrevlex(m1, m2)) {
                return Some(Term {
                    position: pos,
                    monomial: m.clone(),
                    coefficient: a.clone(),
                });
            }
        }
        None
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub position: usize,
    pub monomial: Monomial,
    pub coefficient: Rational,
}

/// Degree-reverse-lexicographic comparison on `(x_1..x_n, d_1..d_n)`.
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db) = (a.total_degree(), b.total_degree());
    if da != db {
        return da.cmp(&db);
    }
    let ea = a.x.iter().chain(&a.d);
    let eb = b.x.iter().chain(&b.d);
    let pairs: Vec<(&u32, &u32)> = ea.zip(eb).collect();
    for (u, v) in pairs.into_iter().rev() {
        if u != v {
            // smaller trailing exponent wins
            return v.cmp(u);
        }
    }
    Ordering::Equal
}

/// Position-over-term comparison (earlier positions are larger).
pub fn compare_terms(p1: usize, m1: &Monomial, p2: usize, m2: &Monomial) -> Ordering {
    p2.cmp(&p1).then_with(|| degrevlex(m1, m2))
}

/// Describes the order in use, for reports and documents.
pub const ORDER_DESCRIPTION: &str = "position-over-term, degrevlex on (x1..xn, d1..dn)";

#[derive(Clone, Debug)]
struct Tracked {
    v: FreeModuleElement,
    cof: Option<FreeModuleElement>,
    lead: Term,
}

/// A reduced left Gröbner basis, with each element expressed in the input
/// generators.
#[derive(Clone, Debug)]
pub struct GrobnerBasis {
    nvars: usize,
    rank: usize,
    generators: Vec<FreeModuleElement>,
    cofactors: OnceLock<Vec<FreeModuleElement>>,
    input: Vec<FreeModuleElement>,
    degree_bound: u32,
}

impl GrobnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeModuleElement] {
        &self.generators
    }

    /// `generators[k] = sum_i cofactors[k][i] * input[i]`.
    /// Computed on first use by a tracked rerun, which reaches the same basis.
    pub fn cofactors(&self) -> &[FreeModuleElement] {
        self.cofactors.get_or_init(|| {
            run_buchberger(self.nvars, &self.input, true, self.degree_bound)
                .expect("the untracked run stayed within the bound")
                .into_iter()
                .map(|t| t.cof.expect("tracking enabled"))
                .collect()
        })
    }

    pub fn input(&self) -> &[FreeModuleElement] {
        &self.input
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn order_description(&self) -> &'static str {
        ORDER_DESCRIPTION
    }

    fn check(&self, v: &FreeModuleElement) -> Result<()> {
        if v.nvars() != self.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: v.nvars(),
            });
        }
        if v.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: v.rank(),
            });
        }
        Ok(())
    }

    /// Fully reduced remainder of `v`.
    pub fn normal_form(&self, v: &FreeModuleElement) -> Result<FreeModuleElement> {
        self.check(v)?;
        Ok(self.reduce_with_quotients(v).0)
    }

    pub fn member(&self, v: &FreeModuleElement) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Coefficients `c` with `v = sum_i c_i * input[i]`, if `v` is a member.
    pub fn lift(&self, v: &FreeModuleElement) -> Result<Option<FreeModuleElement>> {
        self.check(v)?;
        let (rem, quotients) = self.reduce_with_quotients(v);
        if !rem.is_zero() {
            return Ok(None);
        }
        let mut out = FreeModuleElement::zero(self.nvars, self.input.len());
        for (q, cof) in quotients.iter().zip(self.cofactors()) {
            if !q.is_zero() {
                out = out.add(&cof.left_mul(q));
            }
        }
        Ok(Some(out))
    }

    /// Same submodule? Tested by mutual membership of generators.
    pub fn same_module(&self, other: &GrobnerBasis) -> Result<bool> {
        for g in other.generators() {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        for g in self.generators() {
            if !other.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Remainder and the left quotients by each basis element.
    fn reduce_with_quotients(&self, v: &FreeModuleElement) -> (FreeModuleElement, Vec<WeylElement>) {
        let leads: Vec<Term> = self
            .generators
            .iter()
            .map(|g| g.leading_term().expect("basis elements are nonzero"))
            .collect();
        let mut quotients = vec![WeylElement::zero(self.nvars); self.generators.len()];
        let mut rem = v.clone();
        let mut out = FreeModuleElement::zero(self.nvars, self.rank);
        while let Some(lt) = rem.leading_term() {
            let hit = leads
                .iter()
                .position(|l| l.position == lt.position && l.monomial.divides(&lt.monomial));
            match hit {
                Some(k) => {
                    let q = leads[k].monomial.quotient(&lt.monomial);
                    let c = &lt.coefficient / &leads[k].coefficient;
                    rem = rem.sub(&self.generators[k].left_mul_monomial(&q, &c));
                    quotients[k].add_term(q, c);
                }
                None => {
                    let mut t = WeylElement::zero(self.nvars);
                    t.add_term(lt.monomial.clone(), lt.coefficient.clone());
                    let mut moved = FreeModuleElement::zero(self.nvars, self.rank);
                    moved.coords[lt.position] = t;
                    rem = rem.sub(&moved);
                    out = out.add(&moved);
                }
            }
        }
        (out, quotients)
    }
}

fn check_inputs(nvars: usize, rank: usize, gens: &[FreeModuleElement]) -> Result<()> {
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::NvarsMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
    }
    Ok(())
}

/// Buchberger's algorithm with the default degree guard.
pub fn buchberger(nvars: usize, rank: usize, gens: &[FreeModuleElement]) -> Result<GrobnerBasis> {
    buchberger_bounded(nvars, rank, gens, degree_bound_from_env(DEFAULT_DEGREE_BOUND))
}

pub fn buchberger_bounded(
    nvars: usize,
    rank: usize,
    gens: &[FreeModuleElement],
    degree_bound: u32,
) -> Result<GrobnerBasis> {
    check_inputs(nvars, rank, gens)?;
    let generators = run_buchberger(nvars, gens, false, degree_bound)?.into_iter().map(|t| t.v).collect();
    Ok(GrobnerBasis {
        nvars,
        rank,
        generators,
        cofactors: OnceLock::new(),
        input: gens.to_vec(),
        degree_bound,
    })
}

/// Top-reduces and then tail-reduces `t` by `basis`, tracking cofactors.
fn reduce_tracked(t: &Tracked, basis: &[Tracked], skip: Option<usize>) -> Option<Tracked> {
    let nvars = t.v.nvars();
    let rank = t.v.rank();
    let mut rem = t.v.clone();
    let mut cof = t.cof.clone();
    let mut out = FreeModuleElement::zero(nvars, rank);
    while let Some(lt) = rem.leading_term() {
        let hit = basis.iter().enumerate().find(|(k, b)| {
            Some(*k) != skip && b.lead.position == lt.position && b.lead.monomial.divides(&lt.monomial)
        });
        match hit {
            Some((_, b)) => {
                let q = b.lead.monomial.quotient(&lt.monomial);
                let c = &lt.coefficient / &b.lead.coefficient;
                rem = rem.sub(&b.v.left_mul_monomial(&q, &c));
                if let (Some(cf), Some(bc)) = (cof.as_mut(), b.cof.as_ref()) {
                    *cf = cf.sub(&bc.left_mul_monomial(&q, &c));
                }
            }
            None => {
                let mut moved = FreeModuleElement::zero(nvars, rank);
                let mut w = WeylElement::zero(nvars);
                w.add_term(lt.monomial.clone(), lt.coefficient.clone());
                moved.coords[lt.position] = w;
                rem = rem.sub(&moved);
                out = out.add(&moved);
            }
        }
    }
    let lead = out.leading_term()?;
    Some(Tracked { v: out, cof, lead })
}

fn make_monic(t: Tracked) -> Tracked {
    let inv = Rational::one() / &t.lead.coefficient;
    if inv.is_one() {
        return t;
    }
    let v = t.v.scale(&inv);
    let cof = t.cof.map(|c| c.scale(&inv));
    let lead = v.leading_term().expect("nonzero");
    Tracked { v, cof, lead }
}

fn s_polynomial(a: &Tracked, b: &Tracked) -> Tracked {
    let l = a.lead.monomial.lcm(&b.lead.monomial);
    let qa = a.lead.monomial.quotient(&l);
    let qb = b.lead.monomial.quotient(&l);
    let ca = Rational::one() / &a.lead.coefficient;
    let cb = Rational::one() / &b.lead.coefficient;
    let v = a.v.left_mul_monomial(&qa, &ca).sub(&b.v.left_mul_monomial(&qb, &cb));
    let cof = match (&a.cof, &b.cof) {
        (Some(x), Some(y)) => Some(x.left_mul_monomial(&qa, &ca).sub(&y.left_mul_monomial(&qb, &cb))),
        _ => None,
    };
    let lead = v.leading_term().unwrap_or(Term {
        position: 0,
        monomial: l,
        coefficient: Rational::zero(),
    });
    Tracked { v, cof, lead }
}

/// Core loop. With `track`, each element carries its expression in the input.
fn run_buchberger(
    nvars: usize,
    gens: &[FreeModuleElement],
    track: bool,
    degree_bound: u32,
) -> Result<Vec<Tracked>> {
    let m = gens.len();
    let mut basis: Vec<Tracked> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |t: Tracked, basis: &mut Vec<Tracked>, pairs: &mut Vec<(usize, usize)>| -> Result<()> {
        let deg = t.v.total_degree();
        if deg > degree_bound {
            return Err(Error::DegreeGuard {
                degree: deg,
                bound: degree_bound,
            });
        }
        let t = make_monic(t);
        let k = basis.len();
        for (j, b) in basis.iter().enumerate() {
            if b.lead.position == t.lead.position {
                pairs.push((j, k));
            }
        }
        basis.push(t);
        Ok(())
    };
    for (i, g) in gens.iter().enumerate() {
        let cof = track.then(|| FreeModuleElement::unit(nvars, m, i));
        let Some(lead) = g.leading_term() else { continue };
        let t = Tracked { v: g.clone(), cof, lead };
        if let Some(r) = reduce_tracked(&t, &basis, None) {
            push(r, &mut basis, &mut pairs)?;
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, (a1, b1)), (_, (a2, b2))| {
                let l1 = basis[*a1].lead.monomial.lcm(&basis[*b1].lead.monomial);
                let l2 = basis[*a2].lead.monomial.lcm(&basis[*b2].lead.monomial);
                degrevlex(&l1, &l2).then((a1, b1).cmp(&(a2, b2)))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        if chain_criterion(&basis, &pairs, i, j) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        if s.v.is_zero() {
            continue;
        }
        if let Some(r) = reduce_tracked(&s, &basis, None) {
            push(r, &mut basis, &mut pairs)?;
        }
    }
    Ok(interreduce(basis))
}

/// Gebauer–Möller style chain test: the pair (i, j) can be skipped when some
/// third element k has a leading monomial dividing lcm(i, j) and both pairs
/// (i, k) and (j, k) have already been treated.
fn chain_criterion(basis: &[Tracked], pending: &[(usize, usize)], i: usize, j: usize) -> bool {
    let pos = basis[i].lead.position;
    let l = basis[i].lead.monomial.lcm(&basis[j].lead.monomial);
    let pending_has = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pending.iter().any(|&(p, q)| (p.min(q), p.max(q)) == (a, b))
    };
    basis.iter().enumerate().any(|(k, t)| {
        k != i
            && k != j
            && t.lead.position == pos
            && t.lead.monomial.divides(&l)
            && t.lead.monomial.lcm(&basis[i].lead.monomial) != l
            && t.lead.monomial.lcm(&basis[j].lead.monomial) != l
            && !pending_has(i, k)
            && !pending_has(j, k)
    })
}

fn interreduce(basis: Vec<Tracked>) -> Vec<Tracked> {
    // drop elements whose leading term is divisible by another's
    let mut keep: Vec<Tracked> = Vec::new();
    for (k, t) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, u)| {
            j != k
                && u.lead.position == t.lead.position
                && u.lead.monomial.divides(&t.lead.monomial)
                && (u.lead.monomial != t.lead.monomial || j < k)
        });
        if !redundant {
            keep.push(t.clone());
        }
    }
    let mut out: Vec<Tracked> = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let r = reduce_tracked(&keep[k], &keep, Some(k)).expect("leading term survives tail reduction");
        out.push(make_monic(r));
    }
    out.sort_by(|a, b| compare_terms(b.lead.position, &b.lead.monomial, a.lead.position, &a.lead.monomial));
    out
}

/// Left kernel of the map `D^r -> D^s` whose matrix rows are `rows`
/// (`rows[i]` is the image of the `i`-th unit vector).
pub fn syzygies(nvars: usize, rows: &[FreeModuleElement], target_rank: usize) -> Result<GrobnerBasis> {
    syzygies_bounded(nvars, rows, target_rank, degree_bound_from_env(DEFAULT_DEGREE_BOUND))
}

pub fn syzygies_bounded(
    nvars: usize,
    rows: &[FreeModuleElement],
    target_rank: usize,
    degree_bound: u32,
) -> Result<GrobnerBasis> {
    let r = rows.len();
    for row in rows {
        if row.rank() != target_rank {
            return Err(Error::MalformedMatrix(format!(
                "row of width {} in a matrix with {} columns",
                row.rank(),
                target_rank
            )));
        }
        if row.nvars() != nvars {
            return Err(Error::NvarsMismatch {
                left: nvars,
                right: row.nvars(),
            });
        }
    }
    // graph module {(phi(e_i), e_i)}; image positions dominate, so the
    // elements with vanishing image part generate the kernel
    let graph: Vec<FreeModuleElement> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| row.concat(&FreeModuleElement::unit(nvars, r, i)))
        .collect();
    let basis = run_buchberger(nvars, &graph, false, degree_bound)?;
    let kernel: Vec<FreeModuleElement> = basis
        .into_iter()
        .filter(|t| t.lead.position >= target_rank)
        .map(|t| t.v.slice(target_rank..target_rank + r))
        .collect();
    for k in &kernel {
        debug_assert!(k.apply(rows, target_rank).is_zero());
    }
    buchberger_bounded(nvars, r, &kernel, degree_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parse_operator;

    fn op(s: &str) -> WeylElement {
        parse_operator(s, 1).unwrap()
    }
    fn el(items: &[&str]) -> FreeModuleElement {
        FreeModuleElement::from_coords(items.iter().map(|s| op(s)).collect())
    }

    #[test]
    fn x_and_d_generate_everything() {
        // 1 = d*x - x*d
        assert_eq!(&(&op("d1") * &op("x1")) - &(&op("x1") * &op("d1")), op("1"));
        let gb = buchberger(1, 1, &[el(&["x1"]), el(&["d1"])]).unwrap();
        assert!(gb.generators().iter().any(|g| *g == el(&["1"])));
        assert!(gb.member(&el(&["1"])).unwrap());
        let lifted = gb.lift(&el(&["1"])).unwrap().unwrap();
        assert_eq!(lifted.apply(gb.input(), 1), el(&["1"]));
    }

    #[test]
    fn single_monomial_basis() {
        let gb = buchberger(1, 1, &[el(&["d1"])]).unwrap();
        assert_eq!(gb.generators(), &[el(&["d1"])]);
        let empty = buchberger(1, 1, &[]).unwrap();
        assert!(empty.is_empty());
        assert!(empty.member(&el(&["0"])).unwrap());
        assert!(!empty.member(&el(&["x1"])).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let gb = buchberger(1, 1, &[el(&["d1"])]).unwrap();
        assert_eq!(gb.normal_form(&el(&["d1*x1"])).unwrap(), el(&["1"]));
        assert_eq!(gb.normal_form(&el(&["x1*d1"])).unwrap(), el(&["0"]));
        assert_eq!(gb.normal_form(&el(&["1"])).unwrap(), el(&["1"]));
        assert!(!gb.member(&el(&["1"])).unwrap());
        assert!(gb.member(&el(&["0"])).unwrap());
    }

    #[test]
    fn incompatible_inputs() {
        let gb = buchberger(1, 1, &[el(&["d1"])]).unwrap();
        assert!(matches!(gb.normal_form(&el(&["1", "1"])), Err(Error::RankMismatch { .. })));
        assert!(buchberger(1, 2, &[el(&["d1"])]).is_err());
        let two = FreeModuleElement::unit(2, 1, 0);
        assert!(matches!(gb.member(&two), Err(Error::NvarsMismatch { .. })));
    }

    #[test]
    fn kernels() {
        // right multiplication by d is injective
        let k = syzygies(1, &[el(&["d1"])], 1).unwrap();
        assert!(k.is_empty());
        // (P, Q) -> P x + Q d
        let rows = [el(&["x1"]), el(&["d1"])];
        let k = syzygies(1, &rows, 1).unwrap();
        let witness = el(&["x1*d1^2", "-x1^2*d1 - 2*x1"]);
        assert!(witness.apply(&rows, 1).is_zero());
        assert!(k.member(&witness).unwrap());
        for g in k.generators() {
            assert!(g.apply(&rows, 1).is_zero());
        }
        // zero map: the whole module
        let k = syzygies(1, &[el(&["0"]), el(&["0"])], 1).unwrap();
        assert!(k.member(&el(&["1", "0"])).unwrap());
        assert!(k.member(&el(&["0", "1"])).unwrap());
    }

    #[test]
    fn degree_guard_aborts() {
        let r = buchberger_bounded(1, 1, &[el(&["x1^5*d1^5 + 1"])], 3);
        assert!(matches!(r, Err(Error::DegreeGuard { .. })));
    }

    #[test]
    fn malformed_matrix() {
        assert!(matches!(syzygies(1, &[el(&["1", "1"])], 1), Err(Error::MalformedMatrix(_))));
    }
}
