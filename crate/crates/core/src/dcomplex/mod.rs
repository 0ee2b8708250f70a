//! Bounded, non-negatively graded chain complexes of finite-rank free left
//! `D`-modules, with homology, cones, shifts and weak-equivalence testing.
//!
//! Sign conventions: the cone of `f: X -> Y` has `Mc(f)_n = X_{n-1} ⊕ Y_n`
//! and `d(c, c') = (-d c, f(c) + d c')`; shifting only reindexes and keeps
//! the differential as is.

mod connection;
mod matrix;
pub mod obasis;
mod tensor;

pub use connection::{tensor_map_with_connection, tensor_with_connection, ConnectionModule};
pub use matrix::DMatrix;
pub use obasis::{pushout_along_inclusion, truncated_acyclicity, BoundedVerdict, OBasisComplex, OBasisMap, OComb};
pub use tensor::{chain_map_as_obasis, free_as_obasis, tensor_free, tensor_maps, TensorComplex};

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, syzygies, FreeModuleElement, GrobnerBasis};
use crate::weyl::rat;

/// A complex `C_top -> ... -> C_1 -> C_0` of free modules `C_n = D^{r_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeDComplex {
    nvars: usize,
    ranks: Vec<usize>,
    /// `diffs[n]` is `d_n: C_n -> C_{n-1}`; `diffs[0]` has no columns.
    diffs: Vec<DMatrix>,
}

impl FreeDComplex {
    /// Builds and validates a complex; `differentials[k]` is `d_{k+1}`.
    pub fn new(nvars: usize, ranks: Vec<usize>, differentials: Vec<DMatrix>) -> Result<Self> {
        let mut ranks = ranks;
        if ranks.is_empty() {
            ranks.push(0);
        }
        if differentials.len() != ranks.len() - 1 {
            return Err(Error::MalformedMatrix(format!(
                "{} differentials for {} degrees",
                differentials.len(),
                ranks.len()
            )));
        }
        let mut diffs = vec![DMatrix::zero(nvars, ranks[0], 0)];
        for (k, m) in differentials.into_iter().enumerate() {
            let n = k + 1;
            if m.nvars() != nvars {
                return Err(Error::NvarsMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            if m.nrows() != ranks[n] || m.ncols() != ranks[n - 1] {
                return Err(Error::MalformedMatrix(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    ranks[n],
                    ranks[n - 1]
                )));
            }
            diffs.push(m);
        }
        for n in 2..ranks.len() {
            if !diffs[n].then(&diffs[n - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        // trim trailing zero modules
        while ranks.len() > 1 && *ranks.last().unwrap() == 0 {
            ranks.pop();
            diffs.pop();
        }
        Ok(FreeDComplex { nvars, ranks, diffs })
    }

    pub fn zero(nvars: usize) -> Self {
        FreeDComplex {
            nvars,
            ranks: vec![0],
            diffs: vec![DMatrix::zero(nvars, 0, 0)],
        }
    }

    /// `D` in degree `n`, zero differential.
    pub fn sphere(nvars: usize, n: usize) -> Self {
        let mut ranks = vec![0; n + 1];
        ranks[n] = 1;
        let diffs = (1..=n).map(|k| DMatrix::zero(nvars, ranks[k], ranks[k - 1])).collect();
        Self::new(nvars, ranks, diffs).expect("sphere is a complex")
    }

    /// `D` in degrees `n` and `n - 1` joined by the identity.
    pub fn disk(nvars: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("disk(n) needs n >= 1".into()));
        }
        let mut ranks = vec![0; n + 1];
        ranks[n] = 1;
        ranks[n - 1] = 1;
        let diffs = (1..=n)
            .map(|k| {
                if k == n {
                    DMatrix::identity(nvars, 1)
                } else {
                    DMatrix::zero(nvars, ranks[k], ranks[k - 1])
                }
            })
            .collect();
        Self::new(nvars, ranks, diffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Highest degree with a nonzero module (0 for the zero complex).
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `d_n`, with the correct (possibly empty) shape in every degree.
    pub fn differential(&self, n: usize) -> DMatrix {
        if n == 0 {
            DMatrix::zero(self.nvars, self.rank(0), 0)
        } else if n < self.diffs.len() {
            self.diffs[n].clone()
        } else {
            DMatrix::zero(self.nvars, self.rank(n), self.rank(n - 1))
        }
    }

    pub fn lowest_nonzero_degree(&self) -> Option<usize> {
        self.ranks.iter().position(|&r| r > 0)
    }

    pub fn direct_sum(&self, other: &FreeDComplex) -> FreeDComplex {
        let top = self.top().max(other.top());
        let ranks: Vec<usize> = (0..=top).map(|n| self.rank(n) + other.rank(n)).collect();
        let diffs = (1..=top)
            .map(|n| DMatrix::block_diagonal(&self.differential(n), &other.differential(n)))
            .collect();
        FreeDComplex::new(self.nvars, ranks, diffs).expect("direct sum of complexes")
    }

    /// Reindexing: `shift(C, k)_n = C_{n+k}`. Negative `k` raises degrees.
    pub fn shift(&self, k: i64) -> Result<FreeDComplex> {
        if k > 0 && (0..k as usize).any(|n| self.rank(n) > 0) {
            return Err(Error::ShiftBelowZero { shift: k });
        }
        let top = self.top() as i64 - k;
        if top < 0 {
            return Ok(FreeDComplex::zero(self.nvars));
        }
        let src = |n: i64| (n + k) as usize;
        let ranks: Vec<usize> = (0..=top).map(|n| if n + k < 0 { 0 } else { self.rank(src(n)) }).collect();
        let diffs = (1..=top)
            .map(|n| {
                if n - 1 + k < 0 {
                    DMatrix::zero(self.nvars, ranks[n as usize], ranks[n as usize - 1])
                } else {
                    self.differential(src(n))
                }
            })
            .collect();
        FreeDComplex::new(self.nvars, ranks, diffs)
    }

    /// Gröbner basis of `ker d_n` (all of `C_0` when `n = 0`).
    pub fn cycles(&self, n: usize) -> Result<GrobnerBasis> {
        let r = self.rank(n);
        if n == 0 {
            let units: Vec<_> = (0..r).map(|i| FreeModuleElement::unit(self.nvars, r, i)).collect();
            return buchberger(self.nvars, r, &units);
        }
        syzygies(self.nvars, self.differential(n).rows(), self.rank(n - 1))
    }

    /// Gröbner basis of `im d_{n+1}` inside `C_n`, expressed in the rows.
    pub fn boundaries(&self, n: usize) -> Result<GrobnerBasis> {
        buchberger(self.nvars, self.rank(n), self.differential(n + 1).rows())
    }

    /// True when `H_n = 0`.
    pub fn is_acyclic_at(&self, n: usize) -> Result<bool> {
        let z = self.cycles(n)?;
        let b = self.boundaries(n)?;
        for g in z.generators() {
            if !b.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        let results: Vec<Result<bool>> = (0..=self.top()).into_par_iter().map(|n| self.is_acyclic_at(n)).collect();
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for FreeDComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ranks {:?}", self.ranks)?;
        for n in 1..=self.top() {
            write!(f, "; d{n} = {}", self.differential(n))?;
        }
        Ok(())
    }
}

/// A degreewise family of matrices commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeDComplex,
    target: FreeDComplex,
    maps: Vec<DMatrix>,
}

impl ChainMap {
    /// `maps[n]` is `f_n: source_n -> target_n`; missing degrees are zero.
    pub fn new(source: FreeDComplex, target: FreeDComplex, maps: Vec<DMatrix>) -> Result<Self> {
        let nvars = source.nvars();
        if target.nvars() != nvars {
            return Err(Error::NvarsMismatch {
                left: nvars,
                right: target.nvars(),
            });
        }
        let top = source.top().max(target.top());
        let mut full = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let m = maps
                .get(n)
                .cloned()
                .unwrap_or_else(|| DMatrix::zero(nvars, source.rank(n), target.rank(n)));
            if m.nrows() != source.rank(n) || m.ncols() != target.rank(n) {
                return Err(Error::MalformedMatrix(format!(
                    "f_{n} is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    source.rank(n),
                    target.rank(n)
                )));
            }
            full.push(m);
        }
        for n in 1..=top {
            let lhs = full[n].then(&target.differential(n));
            let rhs = source.differential(n).then(&full[n - 1]);
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(ChainMap {
            source,
            target,
            maps: full,
        })
    }

    pub fn identity(c: &FreeDComplex) -> Self {
        let maps = (0..=c.top()).map(|n| DMatrix::identity(c.nvars(), c.rank(n))).collect();
        ChainMap::new(c.clone(), c.clone(), maps).expect("identity")
    }

    pub fn zero(source: &FreeDComplex, target: &FreeDComplex) -> Self {
        ChainMap::new(source.clone(), target.clone(), Vec::new()).expect("zero map")
    }

    pub fn source(&self) -> &FreeDComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeDComplex {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.source.nvars()
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn component(&self, n: usize) -> DMatrix {
        self.maps
            .get(n)
            .cloned()
            .unwrap_or_else(|| DMatrix::zero(self.nvars(), self.source.rank(n), self.target.rank(n)))
    }

    /// "First `self`, then `other`".
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::InvalidArgument("composing maps with mismatched ends".into()));
        }
        let top = self.top().max(other.top());
        let maps = (0..=top).map(|n| self.component(n).then(&other.component(n))).collect();
        ChainMap::new(self.source.clone(), other.target.clone(), maps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidArgument("adding maps with different ends".into()));
        }
        let maps = (0..=self.top()).map(|n| self.component(n).add(&other.component(n))).collect();
        ChainMap::new(self.source.clone(), self.target.clone(), maps)
    }

    /// Applies `f_n` to an element of `source_n`.
    pub fn apply(&self, n: usize, v: &FreeModuleElement) -> FreeModuleElement {
        self.component(n).apply(v)
    }
}

/// A finite presentation of `H_n = ker d_n / im d_{n+1}`.
///
/// Generators are the reduced Gröbner basis of `ker d_n`; relation rows are
/// coefficient vectors over those generators: first the boundaries, then the
/// syzygies among the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    pub degree: usize,
    pub nvars: usize,
    pub generators: Vec<FreeModuleElement>,
    pub relations: Vec<FreeModuleElement>,
}

impl HomologyPresentation {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Same generator count and equal relation submodules.
    pub fn presents_same(&self, other: &HomologyPresentation) -> Result<bool> {
        if self.generators.len() != other.generators.len() {
            return Ok(false);
        }
        let g = self.generators.len();
        let a = buchberger(self.nvars, g, &self.relations)?;
        let b = buchberger(other.nvars, g, &other.relations)?;
        a.same_module(&b)
    }

    /// Rows of the relation matrix evaluated back in `C_n`.
    pub fn relation_images(&self) -> Vec<FreeModuleElement> {
        let rank = self.generators.first().map(FreeModuleElement::rank).unwrap_or(0);
        self.relations.iter().map(|r| r.apply(&self.generators, rank)).collect()
    }
}

impl fmt::Display for HomologyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{} = <", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

/// Presentation of `H_n(C)`; empty exactly when `H_n = 0`.
pub fn homology(c: &FreeDComplex, n: usize) -> Result<HomologyPresentation> {
    let nvars = c.nvars();
    let z = c.cycles(n)?;
    let b = c.boundaries(n)?;
    let mut acyclic = true;
    for g in z.generators() {
        if !b.member(g)? {
            acyclic = false;
            break;
        }
    }
    if acyclic {
        return Ok(HomologyPresentation {
            degree: n,
            nvars,
            generators: Vec::new(),
            relations: Vec::new(),
        });
    }
    let gens: Vec<FreeModuleElement> = z.generators().to_vec();
    let kgb = buchberger(nvars, c.rank(n), &gens)?;
    let mut relations = Vec::new();
    for row in c.differential(n + 1).rows() {
        if row.is_zero() {
            continue;
        }
        let lifted = kgb
            .lift(row)?
            .expect("boundaries are cycles");
        relations.push(lifted);
    }
    let syz = syzygies(nvars, &gens, c.rank(n))?;
    relations.extend(syz.generators().iter().cloned());
    Ok(HomologyPresentation {
        degree: n,
        nvars,
        generators: gens,
        relations,
    })
}

/// Mapping cone `Mc(f)_n = X_{n-1} ⊕ Y_n`, `d(c, c') = (-d c, f(c) + d c')`.
pub fn mapping_cone(f: &ChainMap) -> FreeDComplex {
    let (x, y) = (f.source(), f.target());
    let nvars = f.nvars();
    let top = (x.top() + 1).max(y.top());
    let rank = |n: usize| if n == 0 { y.rank(0) } else { x.rank(n - 1) + y.rank(n) };
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    let diffs = (1..=top)
        .map(|n| {
            // rows: X_{n-1} then Y_n; columns: X_{n-2} then Y_{n-1}
            let xm = x.rank(n - 1);
            let xm2 = if n >= 2 { x.rank(n - 2) } else { 0 };
            let top_left = if n >= 2 {
                x.differential(n - 1).scale(&rat(-1))
            } else {
                DMatrix::zero(nvars, xm, 0)
            };
            let top_right = f.component(n - 1);
            let bottom_left = DMatrix::zero(nvars, y.rank(n), xm2);
            let bottom_right = y.differential(n);
            DMatrix::blocks(&top_left, &top_right, &bottom_left, &bottom_right)
        })
        .collect();
    FreeDComplex::new(nvars, ranks, diffs).expect("the cone of a chain map is a complex")
}

pub fn shift(c: &FreeDComplex, k: i64) -> Result<FreeDComplex> {
    c.shift(k)
}

/// Weak equivalence, decided as acyclicity of the mapping cone.
pub fn is_weak_equivalence(f: &ChainMap) -> Result<bool> {
    mapping_cone(f).is_acyclic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{parse_operator, WeylElement};

    fn op(s: &str) -> WeylElement {
        parse_operator(s, 1).unwrap()
    }

    fn mat(cols: usize, rows: &[&[&str]]) -> DMatrix {
        DMatrix::from_entries(1, cols, rows.iter().map(|r| r.iter().map(|s| op(s)).collect()).collect()).unwrap()
    }

    fn d_complex() -> FreeDComplex {
        FreeDComplex::new(1, vec![1, 1], vec![mat(1, &[&["d1"]])]).unwrap()
    }

    #[test]
    fn spheres_and_disks() {
        let s0 = FreeDComplex::sphere(1, 0);
        assert_eq!(s0.ranks(), &[1]);
        let d1 = FreeDComplex::disk(1, 1).unwrap();
        assert_eq!(d1.differential(1), DMatrix::identity(1, 1));
        assert!(FreeDComplex::disk(1, 0).is_err());
        for n in 1..=4 {
            let d = FreeDComplex::disk(1, n).unwrap();
            for k in 0..=n {
                assert!(homology(&d, k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn homology_of_multiplication_by_d() {
        let c = d_complex();
        let h0 = homology(&c, 0).unwrap();
        assert_eq!(h0.generators, vec![FreeModuleElement::unit(1, 1, 0)]);
        assert_eq!(h0.relations, vec![FreeModuleElement::from_coords(vec![op("d1")])]);
        assert!(homology(&c, 1).unwrap().is_zero());
        let s2 = FreeDComplex::sphere(1, 2);
        let h2 = homology(&s2, 2).unwrap();
        assert_eq!(h2.generators.len(), 1);
        assert!(h2.relations.is_empty());
    }

    #[test]
    fn d_squared_rejected_with_degree() {
        let r = FreeDComplex::new(1, vec![1, 1, 1], vec![mat(1, &[&["1"]]), mat(1, &[&["x1"]])]);
        assert_eq!(r, Err(Error::NotAComplex { degree: 2 }));
        let r = FreeDComplex::new(1, vec![1, 2], vec![mat(1, &[&["1"]])]);
        assert!(matches!(r, Err(Error::MalformedMatrix(_))));
    }

    #[test]
    fn cones() {
        let s0 = FreeDComplex::sphere(1, 0);
        assert!(mapping_cone(&ChainMap::identity(&s0)).is_acyclic().unwrap());
        // iota_1: S^0 -> D^1; the cone has the homology of S^1
        let d1 = FreeDComplex::disk(1, 1).unwrap();
        let iota = ChainMap::new(s0.clone(), d1, vec![DMatrix::identity(1, 1)]).unwrap();
        let cone = mapping_cone(&iota);
        let h1 = homology(&cone, 1).unwrap();
        let s1 = homology(&FreeDComplex::sphere(1, 1), 1).unwrap();
        assert!(h1.presents_same(&s1).unwrap());
        assert!(homology(&cone, 0).unwrap().is_zero());
        assert!(homology(&cone, 2).unwrap().is_zero());
    }

    #[test]
    fn shifts() {
        let s2 = FreeDComplex::sphere(1, 2);
        assert_eq!(s2.shift(-1).unwrap(), FreeDComplex::sphere(1, 3));
        assert_eq!(s2.shift(1).unwrap(), FreeDComplex::sphere(1, 1));
        assert!(matches!(s2.shift(3), Err(Error::ShiftBelowZero { .. })));
    }

    #[test]
    fn weak_equivalences() {
        let s0 = FreeDComplex::sphere(1, 0);
        assert!(is_weak_equivalence(&ChainMap::identity(&s0)).unwrap());
        let zero = FreeDComplex::zero(1);
        let d1 = FreeDComplex::disk(1, 1).unwrap();
        assert!(is_weak_equivalence(&ChainMap::zero(&zero, &d1)).unwrap());
        assert!(!is_weak_equivalence(&ChainMap::zero(&zero, &s0)).unwrap());
    }

    #[test]
    fn chain_condition_checked() {
        let c = d_complex();
        let bad = ChainMap::new(c.clone(), c.clone(), vec![DMatrix::identity(1, 1), DMatrix::zero(1, 1, 1)]);
        assert_eq!(bad, Err(Error::NotAChainMap { degree: 1 }));
    }
}
