//! The projective model structure on complexes of `D`-modules, as far as it
//! can be recognized and constructed on free complexes.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::dcomplex::obasis::{basis_cokernel_keys, prefixed, slice_dimension, slice_rank, Key};
use crate::dcomplex::{
    mapping_cone, pushout_along_inclusion, tensor_free, tensor_maps, truncated_acyclicity, BoundedVerdict, ChainMap,
    DMatrix, FreeDComplex, OBasisComplex, OBasisMap,
};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, syzygies, FreeModuleElement};
use crate::weyl::Rational;

/// `ι_n: S^{n-1} -> D^n` (with `ι_0: 0 -> S^0`) or `ζ_n: 0 -> D^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratingMap {
    Iota(usize),
    Zeta(usize),
}

impl GeneratingMap {
    pub fn zeta(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ζ_n needs n >= 1".into()));
        }
        Ok(GeneratingMap::Zeta(n))
    }

    pub fn chain_map(&self, nvars: usize) -> ChainMap {
        match *self {
            GeneratingMap::Iota(0) => ChainMap::zero(&FreeDComplex::zero(nvars), &FreeDComplex::sphere(nvars, 0)),
            GeneratingMap::Iota(n) => {
                let src = FreeDComplex::sphere(nvars, n - 1);
                let tgt = FreeDComplex::disk(nvars, n).expect("n >= 1");
                let mut maps: Vec<DMatrix> = (0..=n).map(|k| DMatrix::zero(nvars, src.rank(k), tgt.rank(k))).collect();
                maps[n - 1] = DMatrix::identity(nvars, 1);
                ChainMap::new(src, tgt, maps).expect("ι_n is a chain map")
            }
            GeneratingMap::Zeta(n) => {
                ChainMap::zero(&FreeDComplex::zero(nvars), &FreeDComplex::disk(nvars, n).expect("n >= 1"))
            }
        }
    }
}

impl fmt::Display for GeneratingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratingMap::Iota(n) => write!(f, "ι_{n}"),
            GeneratingMap::Zeta(n) => write!(f, "ζ_{n}"),
        }
    }
}

/// Every target basis vector in positive degree lies in the image.
pub fn is_fibration(f: &ChainMap) -> Result<bool> {
    let nvars = f.nvars();
    for n in 1..=f.target().top() {
        let r = f.target().rank(n);
        if r == 0 {
            continue;
        }
        let gb = buchberger(nvars, r, f.component(n).rows())?;
        for i in 0..r {
            if !gb.member(&FreeModuleElement::unit(nvars, r, i))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CofibrationVerdict {
    Certified,
    NotCertified,
    Refuted,
}

/// Unit-pivot reduction of one component of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSplitting {
    /// Reduced image rows `R = T * f_n`.
    pub reduced: Vec<FreeModuleElement>,
    /// Row operations `T`, as rows over the source basis.
    pub ops: Vec<FreeModuleElement>,
    /// `(pivot column, unit)` for each reduced row.
    pub pivots: Vec<(usize, Rational)>,
    /// Target basis vectors spanning a free complement of the image.
    pub complement: Vec<usize>,
}

impl DegreeSplitting {
    /// Writes `w = f_n(x) + q` with `q` supported on the complement; returns
    /// `(x, coordinates of q on the complement)`.
    pub fn decompose(&self, w: &FreeModuleElement) -> (FreeModuleElement, FreeModuleElement) {
        let nvars = w.nvars();
        let mut rest = w.clone();
        let mut lambda = FreeModuleElement::zero(nvars, self.reduced.len());
        for (j, (c, u)) in self.pivots.iter().enumerate() {
            let a = rest.coord(*c).scale(&(Rational::one() / u));
            if a.is_zero() {
                continue;
            }
            rest = rest.sub(&self.reduced[j].left_mul(&a));
            lambda.set(j, a);
        }
        let src_rank = self.ops.first().map(FreeModuleElement::rank).unwrap_or(0);
        let x = if self.ops.is_empty() {
            FreeModuleElement::zero(nvars, src_rank)
        } else {
            lambda.apply(&self.ops, src_rank)
        };
        let q = FreeModuleElement::from_coords(self.complement.iter().map(|&c| rest.coord(c).clone()).collect());
        let q = if self.complement.is_empty() {
            FreeModuleElement::zero(nvars, 0)
        } else {
            q
        };
        (x, q)
    }
}

/// Outcome of trying to exhibit a map as a cofibration with free cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofibrationCertificate {
    pub verdict: CofibrationVerdict,
    /// Degree and a nonzero kernel element, when refuted.
    pub kernel_witness: Option<(usize, FreeModuleElement)>,
    /// Per-degree splittings, when certified.
    pub splittings: Vec<DegreeSplitting>,
}

fn split_degree(m: &DMatrix) -> Option<DegreeSplitting> {
    let nvars = m.nvars();
    let r = m.nrows();
    let mut rows: Vec<FreeModuleElement> = m.rows().to_vec();
    let mut ops: Vec<FreeModuleElement> = (0..r).map(|i| FreeModuleElement::unit(nvars, r, i)).collect();
    let mut pivot_of_row: Vec<Option<(usize, Rational)>> = vec![None; r];
    loop {
        let mut found = None;
        'search: for (j, row) in rows.iter().enumerate() {
            if pivot_of_row[j].is_some() {
                continue;
            }
            for c in 0..row.rank() {
                if let Some(u) = row.coord(c).as_constant() {
                    if !num_traits::Zero::is_zero(&u) {
                        found = Some((j, c, u));
                        break 'search;
                    }
                }
            }
        }
        let Some((j, c, u)) = found else { break };
        let inv = Rational::one() / &u;
        for k in 0..r {
            if k == j || rows[k].coord(c).is_zero() {
                continue;
            }
            let factor = rows[k].coord(c).scale(&inv);
            rows[k] = rows[k].sub(&rows[j].left_mul(&factor));
            ops[k] = ops[k].sub(&ops[j].left_mul(&factor));
        }
        pivot_of_row[j] = Some((c, u));
    }
    if pivot_of_row.iter().any(Option::is_none) {
        return None;
    }
    let pivots: Vec<(usize, Rational)> = pivot_of_row.into_iter().map(|p| p.expect("all rows pivoted")).collect();
    let used: BTreeSet<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let complement = (0..m.ncols()).filter(|c| !used.contains(c)).collect();
    Some(DegreeSplitting {
        reduced: rows,
        ops,
        pivots,
        complement,
    })
}

/// Certified when injective with an explicit free complement of the image in
/// every degree; refuted when some component has a nonzero kernel.
pub fn certify_cofibration(f: &ChainMap) -> Result<CofibrationCertificate> {
    let mut splittings = Vec::new();
    let mut certified = true;
    for n in 0..=f.top().max(f.target().top()) {
        let m = f.component(n);
        match split_degree(&m) {
            Some(s) => splittings.push(s),
            None => {
                certified = false;
                let ker = syzygies(f.nvars(), m.rows(), m.ncols())?;
                if let Some(v) = ker.generators().first() {
                    return Ok(CofibrationCertificate {
                        verdict: CofibrationVerdict::Refuted,
                        kernel_witness: Some((n, v.clone())),
                        splittings: Vec::new(),
                    });
                }
            }
        }
    }
    Ok(CofibrationCertificate {
        verdict: if certified {
            CofibrationVerdict::Certified
        } else {
            CofibrationVerdict::NotCertified
        },
        kernel_witness: None,
        splittings: if certified { splittings } else { Vec::new() },
    })
}

/// A pushout square `Y -> Z <- W` of `f: X -> Y` along a certified `g: X -> W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub object: FreeDComplex,
    pub from_y: ChainMap,
    pub from_w: ChainMap,
    certificate: CofibrationCertificate,
}

impl Pushout {
    /// The unique map `Z -> E` restricting to `q` on `Y` and `p` on `W`.
    pub fn factor(&self, q: &ChainMap, p: &ChainMap) -> Result<ChainMap> {
        let z = &self.object;
        let e = q.target();
        let nvars = z.nvars();
        let maps = (0..=z.top())
            .map(|n| {
                let mut rows = q.component(n).rows().to_vec();
                if let Some(s) = self.certificate.splittings.get(n) {
                    for &c in &s.complement {
                        rows.push(p.component(n).row(c).clone());
                    }
                }
                DMatrix::from_rows(nvars, e.rank(n), rows)
            })
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(z.clone(), e.clone(), maps)
    }
}

/// `Z_n = Y_n ⊕ (free complement of g_n)` with the induced differential.
pub fn pushout(f: &ChainMap, g: &ChainMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::InvalidArgument("pushout legs need a common source".into()));
    }
    let cert = certify_cofibration(g)?;
    if cert.verdict != CofibrationVerdict::Certified {
        return Err(Error::NotCertified(format!("{:?}", cert.verdict)));
    }
    let nvars = f.nvars();
    let (y, w) = (f.target(), g.target());
    let top = y.top().max(w.top());
    let comp = |n: usize| cert.splittings.get(n).map(|s| s.complement.len()).unwrap_or(0);
    let ranks: Vec<usize> = (0..=top).map(|n| y.rank(n) + comp(n)).collect();
    // image of a W-element in Z
    let leg = |n: usize, v: &FreeModuleElement| -> FreeModuleElement {
        let s = &cert.splittings[n];
        let (x, q) = s.decompose(v);
        f.apply(n, &x).concat(&q)
    };
    let mut diffs = Vec::new();
    for n in 1..=top {
        let mut rows: Vec<FreeModuleElement> = y
            .differential(n)
            .rows()
            .iter()
            .map(|r| r.concat(&FreeModuleElement::zero(nvars, comp(n - 1))))
            .collect();
        if let Some(s) = cert.splittings.get(n) {
            for &c in &s.complement {
                rows.push(leg(n - 1, w.differential(n).row(c)));
            }
        }
        diffs.push(DMatrix::from_rows(nvars, ranks[n - 1], rows)?);
    }
    let z = FreeDComplex::new(nvars, ranks.clone(), diffs)?;
    let from_y = (0..=top)
        .map(|n| {
            let rows = (0..y.rank(n))
                .map(|i| FreeModuleElement::unit(nvars, y.rank(n), i).concat(&FreeModuleElement::zero(nvars, comp(n))))
                .collect();
            DMatrix::from_rows(nvars, z.rank(n), rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let from_w = (0..=top)
        .map(|n| {
            let rows = (0..w.rank(n)).map(|i| leg(n, &FreeModuleElement::unit(nvars, w.rank(n), i))).collect();
            DMatrix::from_rows(nvars, z.rank(n), rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Pushout {
        from_y: ChainMap::new(y.clone(), z.clone(), from_y)?,
        from_w: ChainMap::new(w.clone(), z.clone(), from_w)?,
        object: z,
        certificate: cert,
    })
}

/// Attaches cells along cycles: each `(n, a)` adds a generator in degree `n`
/// with boundary `a ∈ C_{n-1}`. Returns the inclusion of the base.
pub fn attach_cells(base: &FreeDComplex, attachments: &[(usize, FreeModuleElement)]) -> Result<ChainMap> {
    let mut incl = ChainMap::identity(base);
    for (n, a) in attachments {
        let current = incl.target().clone();
        if *n == 0 {
            return Err(Error::InvalidArgument("cells are attached in degree >= 1".into()));
        }
        if a.rank() != current.rank(n - 1) {
            return Err(Error::RankMismatch {
                expected: current.rank(n - 1),
                found: a.rank(),
            });
        }
        if *n >= 2 && !current.differential(n - 1).apply(a).is_zero() {
            return Err(Error::InvalidArgument(format!("attaching element in degree {} is not a cycle", n - 1)));
        }
        let nvars = base.nvars();
        let sphere = FreeDComplex::sphere(nvars, n - 1);
        let mut maps: Vec<DMatrix> = (0..*n).map(|k| DMatrix::zero(nvars, sphere.rank(k), current.rank(k))).collect();
        maps[n - 1] = DMatrix::from_rows(nvars, current.rank(n - 1), vec![a.clone()])?;
        let attaching = ChainMap::new(sphere, current.clone(), maps)?;
        let po = pushout(&attaching, &GeneratingMap::Iota(*n).chain_map(nvars))?;
        incl = incl.then(&po.from_y)?;
    }
    Ok(incl)
}

/// The pushout-product `a □ b` of two generating maps, on `O`-bases.
pub struct PushoutProduct {
    pub a: GeneratingMap,
    pub b: GeneratingMap,
    pub domain: OBasisComplex,
    pub codomain: OBasisComplex,
    pub map: OBasisMap,
}

/// Structure of `coker(a □ b)` on the slice of weight <= `truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokernelReport {
    pub truncation: u32,
    pub injective: bool,
    /// `(degree, number of O-basis elements)` of the cokernel.
    pub degrees: Vec<(usize, usize)>,
    /// Whether the cokernel in degree `m + n` is exactly `{d^a ⊗ d^b}`.
    pub matches_d_tensor_d: bool,
    pub expected_degree: usize,
}

impl CokernelReport {
    pub fn concentrated(&self) -> bool {
        self.degrees.iter().all(|(d, k)| *k == 0 || *d == self.expected_degree)
    }

    pub fn holds(&self) -> bool {
        self.injective && self.concentrated() && self.matches_d_tensor_d
    }
}

pub fn pushout_product(a: GeneratingMap, b: GeneratingMap, nvars: usize) -> Result<PushoutProduct> {
    let fa = a.chain_map(nvars);
    let fb = b.chain_map(nvars);
    let (sa, ta) = (fa.source().clone(), fa.target().clone());
    let (sb, tb) = (fb.source().clone(), fb.target().clone());
    let left = tensor_maps(&fa, &ChainMap::identity(&sb));
    let right = tensor_maps(&ChainMap::identity(&sa), &fb);
    let (corner, _, _) = pushout_along_inclusion(&right, &left)?;
    let codomain = tensor_free(&ta, &tb);
    let a_y = tensor_maps(&fa, &ChainMap::identity(&tb));
    let x_b = tensor_maps(&ChainMap::identity(&ta), &fb);
    let (ay, xb) = (a_y.clone(), x_b.clone());
    let map = OBasisMap::new(corner.clone(), codomain.clone(), move |deg: usize, key: &Key| {
        let inner = key[1..].to_vec();
        if key[0] == 0 {
            ay.apply(deg, &inner)
        } else {
            xb.apply(deg, &inner)
        }
    })
    .with_preimage(move |deg: usize, key: &Key| {
        // keys of X ⊗ Y coming from A ⊗ Y are hit from the first summand
        match a_y.preimage(deg, key) {
            Some(k) => Some(prefixed(0, &k)),
            None => x_b.preimage(deg, key).map(|k| prefixed(1, &k)),
        }
    });
    Ok(PushoutProduct {
        a,
        b,
        domain: corner,
        codomain,
        map,
    })
}

fn expected_degree(g: GeneratingMap) -> usize {
    match g {
        GeneratingMap::Iota(n) | GeneratingMap::Zeta(n) => n,
    }
}

impl PushoutProduct {
    pub fn expected_degree(&self) -> usize {
        expected_degree(self.a) + expected_degree(self.b)
    }

    /// Checks injectivity and the shape of the cokernel degree by degree.
    pub fn cokernel(&self, truncation: u32) -> CokernelReport {
        let top = self.codomain.max_degree(truncation);
        let m = expected_degree(self.a);
        let n = expected_degree(self.b);
        let mut injective = true;
        let mut degrees = Vec::new();
        let mut matches = true;
        for deg in 0..=top {
            let (rank, dim) = slice_rank(&self.map, deg, truncation);
            if rank != dim {
                injective = false;
            }
            let target_dim = slice_dimension(&self.codomain, deg, truncation);
            degrees.push((deg, target_dim - rank));
            if deg == m + n {
                match basis_cokernel_keys(&self.map, deg, truncation) {
                    Some(keys) => {
                        let nv = self.codomain.nvars();
                        let want: BTreeSet<Key> = self
                            .codomain
                            .basis(deg, truncation)
                            .into_iter()
                            .filter(|k| k[0] as usize == m && k[2] as usize == n && k[1] == 0 && k[3] == 0)
                            .collect();
                        let expected_count = want.len();
                        matches = keys == want && expected_count == crate::dcomplex::obasis::exponents_upto(2 * nv, truncation).len();
                    }
                    None => matches = false,
                }
            }
        }
        CokernelReport {
            truncation,
            injective,
            degrees,
            matches_d_tensor_d: matches,
            expected_degree: m + n,
        }
    }

    /// Bounded acyclicity of the mapping cone of `a □ b`.
    pub fn cone_acyclicity(&self, truncation: u32) -> Result<BoundedVerdict> {
        truncated_acyclicity(&self.map.cone(), truncation)
    }
}

/// Weak equivalence of a free-complex map whose cone is exactly decidable.
pub fn is_weq(f: &ChainMap) -> Result<bool> {
    mapping_cone(f).is_acyclic()
}

/// Scales every component.
pub fn scale_map(f: &ChainMap, c: &Rational) -> Result<ChainMap> {
    let maps = (0..=f.top()).map(|n| f.component(n).scale(c)).collect();
    ChainMap::new(f.source().clone(), f.target().clone(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{parse_operator, WeylElement};

    fn op(s: &str) -> WeylElement {
        parse_operator(s, 1).unwrap()
    }

    #[test]
    fn fibrations() {
        let c = FreeDComplex::disk(1, 2).unwrap();
        assert!(is_fibration(&ChainMap::zero(&c, &FreeDComplex::zero(1))).unwrap());
        let s1 = FreeDComplex::sphere(1, 1);
        let sum = s1.direct_sum(&c);
        let proj: Vec<DMatrix> = (0..=2)
            .map(|n| {
                let rows: Vec<FreeModuleElement> = (0..s1.rank(n))
                    .map(|_| FreeModuleElement::zero(1, c.rank(n)))
                    .chain((0..c.rank(n)).map(|i| FreeModuleElement::unit(1, c.rank(n), i)))
                    .collect();
                DMatrix::from_rows(1, c.rank(n), rows).unwrap()
            })
            .collect();
        assert!(is_fibration(&ChainMap::new(sum, c, proj).unwrap()).unwrap());
        assert!(!is_fibration(&ChainMap::zero(&FreeDComplex::zero(1), &s1)).unwrap());
    }

    #[test]
    fn certificates() {
        for g in [GeneratingMap::Iota(0), GeneratingMap::Iota(2), GeneratingMap::Zeta(1), GeneratingMap::Zeta(3)] {
            let c = certify_cofibration(&g.chain_map(1)).unwrap();
            assert_eq!(c.verdict, CofibrationVerdict::Certified, "{g}");
        }
        let s = FreeDComplex::sphere(1, 0);
        let by_d = ChainMap::new(s.clone(), s.clone(), vec![DMatrix::from_entries(1, 1, vec![vec![op("d1")]]).unwrap()]).unwrap();
        assert_eq!(certify_cofibration(&by_d).unwrap().verdict, CofibrationVerdict::NotCertified);
        let zero = ChainMap::zero(&s, &s);
        let c = certify_cofibration(&zero).unwrap();
        assert_eq!(c.verdict, CofibrationVerdict::Refuted);
        assert_eq!(c.kernel_witness.unwrap().0, 0);
    }

    #[test]
    fn pushout_along_identity_is_the_other_leg() {
        let f = GeneratingMap::Iota(1).chain_map(1);
        let po = pushout(&f, &ChainMap::identity(f.source())).unwrap();
        assert_eq!(&po.object, f.target());
    }

    #[test]
    fn attaching_one_cell_to_a_point_gives_a_disk() {
        let s0 = FreeDComplex::sphere(1, 0);
        let incl = attach_cells(&s0, &[(1, FreeModuleElement::unit(1, 1, 0))]).unwrap();
        assert_eq!(incl.target(), &FreeDComplex::disk(1, 1).unwrap());
        assert_eq!(certify_cofibration(&incl).unwrap().verdict, CofibrationVerdict::Certified);
        assert_eq!(attach_cells(&s0, &[]).unwrap(), ChainMap::identity(&s0));
    }

    #[test]
    fn attaching_a_non_cycle_fails() {
        let d1 = FreeDComplex::disk(1, 1).unwrap();
        assert!(attach_cells(&d1, &[(2, FreeModuleElement::unit(1, 1, 0))]).is_err());
    }

    #[test]
    fn iota_box_iota_cokernel() {
        let pp = pushout_product(GeneratingMap::Iota(1), GeneratingMap::Iota(1), 1).unwrap();
        let r = pp.cokernel(4);
        assert!(r.holds(), "{r:?}");
        let pp = pushout_product(GeneratingMap::Iota(0), GeneratingMap::Iota(0), 1).unwrap();
        assert!(pp.domain.basis(0, 3).is_empty());
        assert!(pp.cokernel(3).holds());
    }

    #[test]
    fn zeta_box_iota_is_trivial() {
        let pp = pushout_product(GeneratingMap::Zeta(1), GeneratingMap::Iota(1), 1).unwrap();
        assert!(pp.cone_acyclicity(4).unwrap().passed());
        assert!(truncated_acyclicity(&pp.domain, 4).unwrap().passed());
        assert!(truncated_acyclicity(&pp.codomain, 4).unwrap().passed());
    }

    #[test]
    fn weq_pushout_along_cell() {
        // f: S^0 -> D^1 ⊕ S^0 ... use the weq S^0 -> S^0 ⊕ D^1 and attach a 1-cell
        let s0 = FreeDComplex::sphere(1, 0);
        let d1 = FreeDComplex::disk(1, 1).unwrap();
        let y = s0.direct_sum(&d1);
        let maps = vec![DMatrix::from_entries(1, 2, vec![vec![op("1"), op("0")]]).unwrap()];
        let f = ChainMap::new(s0.clone(), y, maps).unwrap();
        assert!(is_weq(&f).unwrap());
        let g = attach_cells(&s0, &[(1, FreeModuleElement::new(1, vec![op("x1")]).unwrap())]).unwrap();
        let po = pushout(&g, &f).unwrap();
        assert!(is_weq(&po.from_y).unwrap());
    }
}
