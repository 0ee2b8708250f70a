//! The catalog of named checks. Each check is deterministic in its
//! parameters; instances draw from per-instance seeded generators, so they
//! can run in parallel without changing the report.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amod::{
    amod_pushout_gen, base_change_morphism, cmon_to_under, extend_morphism, free_amodule, iota, iota_inverse,
    monad_multiply, monad_unit, sym_multiply, sym_unit_inside, sym_unit_outside, tensor_over_a, tensor_with_identity,
    under_to_cmon, AModule, AModuleMorphism, CellRule, FormalWord, ModKey, ModuleElement,
};
use crate::dcomplex::obasis::{Key, OComb};
use crate::dcomplex::{
    free_as_obasis, mapping_cone, pushout_along_inclusion, tensor_free, tensor_map_with_connection,
    tensor_with_connection, truncated_acyclicity, BoundedVerdict, ChainMap, ConnectionModule, DMatrix, FreeDComplex,
    OBasisMap,
};
use crate::dga::{dga_pushout_gen, AlgebraElement, AlgebraMorphism, SullivanAlgebra};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, FreeModuleElement};
use crate::model::{attach_cells, is_fibration, is_weq, pushout, pushout_product, GeneratingMap};
use crate::random::{self, SeededRng};
use crate::weyl::{Monomial, Polynomial, Rational, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    BoundedPass,
    Fail,
}

/// Parameters of one run; unset fields take the check's defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    pub seed: u64,
    pub instances: Option<usize>,
    pub truncation: Option<u32>,
}

impl CheckParams {
    pub fn seeded(seed: u64) -> Self {
        CheckParams {
            seed,
            ..Default::default()
        }
    }
}

/// The effective parameters recorded in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UsedParams {
    pub seed: u64,
    pub instances: usize,
    pub truncation: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub summary: String,
    pub witness: Option<String>,
    pub levels: Option<Vec<u32>>,
    pub params: UsedParams,
    /// Wall-clock time; not part of the serialized document.
    #[serde(skip)]
    pub runtime: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// The report as a JSON document with fixed field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Outcome of one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Pass,
    Bounded(Vec<u32>),
    Fail(String),
}

impl Step {
    pub fn is_fail(&self) -> bool {
        matches!(self, Step::Fail(_))
    }
}

fn bounded(v: BoundedVerdict, what: &str) -> Step {
    match v {
        BoundedVerdict::BoundedPass { levels } => Step::Bounded(levels),
        BoundedVerdict::Fail { level, degree, witness } => {
            Step::Fail(format!("{what}: cycle in degree {degree} at level {level}: {witness}"))
        }
    }
}

fn exact(ok: bool, witness: impl FnOnce() -> String) -> Step {
    if ok {
        Step::Pass
    } else {
        Step::Fail(witness())
    }
}

/// Combines steps: the first failure wins, then any bounded step.
fn combine(steps: impl IntoIterator<Item = Step>) -> Step {
    let mut levels: Option<Vec<u32>> = None;
    for s in steps {
        match s {
            Step::Fail(w) => return Step::Fail(w),
            Step::Bounded(l) => levels = Some(l),
            Step::Pass => {}
        }
    }
    match levels {
        Some(l) => Step::Bounded(l),
        None => Step::Pass,
    }
}

struct Ctx {
    seed: u64,
    instances: usize,
    truncation: u32,
}

impl Ctx {
    fn rng(&self, i: usize) -> SeededRng {
        random::rng(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64))
    }

    /// Runs instances in parallel, keeping their order.
    fn each(&self, f: impl Fn(usize, &mut SeededRng) -> Result<Step> + Sync) -> Result<Step> {
        let steps = (0..self.instances)
            .into_par_iter()
            .map(|i| {
                let mut rng = self.rng(i);
                f(i, &mut rng).map(|s| match s {
                    Step::Fail(w) => Step::Fail(format!("instance {i}: {w}")),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(combine(steps))
    }
}

type CheckFn = fn(&Ctx) -> Result<Step>;

struct Entry {
    name: &'static str,
    summary: &'static str,
    instances: usize,
    truncation: Option<u32>,
    run: CheckFn,
}

const CATALOG: &[Entry] = &[
    Entry {
        name: "flatness_counterexample",
        summary: "1 is not in D·d, so d ⊗ 1 is a nonzero element of (D/D·d) ⊗_D O mapping to 0",
        instances: 1,
        truncation: None,
        run: flatness_counterexample,
    },
    Entry {
        name: "filtration_splitting",
        summary: "D splits as the direct sum of its order-homogeneous parts over O",
        instances: 20,
        truncation: Some(4),
        run: filtration_splitting,
    },
    Entry {
        name: "disks_acyclic",
        summary: "H(D^n) = 0 exactly; D^m ⊗ S^(n-1) and D^m ⊗ D^n are acyclic on truncations",
        instances: 1,
        truncation: Some(6),
        run: disks_acyclic,
    },
    Entry {
        name: "pushout_product_cokernel",
        summary: "the cokernel of ι_m □ ι_n is concentrated in degree m+n with O-basis d^a ⊗ d^b",
        instances: 1,
        truncation: Some(4),
        run: pushout_product_cokernel,
    },
    Entry {
        name: "trivial_pp_weq",
        summary: "ζ_m □ ι_n has an acyclic mapping cone",
        instances: 1,
        truncation: Some(4),
        run: trivial_pp_weq,
    },
    Entry {
        name: "monoid_axiom_pushout",
        summary: "the pushout of ζ_n ⊗ Id_M along 0 -> N is a weak equivalence",
        instances: 10,
        truncation: Some(4),
        run: monoid_axiom_pushout,
    },
    Entry {
        name: "properness_random",
        summary: "pushouts of weak equivalences along cell attachments are weak equivalences",
        instances: 10,
        truncation: Some(4),
        run: properness_random,
    },
    Entry {
        name: "hac3_flatness",
        summary: "- ⊗_A M preserves weak equivalences for Sullivan M",
        instances: 10,
        truncation: Some(4),
        run: hac3_flatness,
    },
    Entry {
        name: "hac4_base_change",
        summary: "B ⊗_A - preserves weak equivalences for Sullivan B under A",
        instances: 10,
        truncation: Some(4),
        run: hac4_base_change,
    },
    Entry {
        name: "cmon_under_roundtrip",
        summary: "F and G between A-algebras and commutative monoids in Mod(A) are mutually inverse",
        instances: 10,
        truncation: None,
        run: cmon_under_roundtrip,
    },
    Entry {
        name: "simpl_tens_iso",
        summary: "ı: B ⊗_A (A ⊗ M) -> B ⊗ M is an isomorphism of complexes of A-modules",
        instances: 10,
        truncation: None,
        run: simpl_tens_iso,
    },
    Entry {
        name: "monad_laws",
        summary: "U = ΦΣ and T = FS satisfy the monad laws",
        instances: 10,
        truncation: None,
        run: monad_laws,
    },
    Entry {
        name: "limit_colimit_weq",
        summary: "a filtration with stagewise weak equivalences has a weak equivalence as colimit map",
        instances: 10,
        truncation: None,
        run: limit_colimit_weq,
    },
    Entry {
        name: "graded_filtration_weq",
        summary: "φ_0 and the graded pieces are weak equivalences, hence every φ_β is",
        instances: 10,
        truncation: None,
        run: graded_filtration_weq,
    },
    Entry {
        name: "kunneth_mapcone",
        summary: "Mc(f ⊗ Id_M) = Mc(f) ⊗ M, acyclic when f is a weak equivalence",
        instances: 10,
        truncation: None,
        run: kunneth_mapcone,
    },
    Entry {
        name: "sullivan_pushout_universal",
        summary: "single-cell pushouts of modules and algebras are universal",
        instances: 10,
        truncation: None,
        run: sullivan_pushout_universal,
    },
    Entry {
        name: "hac1_arrows",
        summary: "finite sums are products, and the identity is a fibrant replacement",
        instances: 10,
        truncation: None,
        run: hac1_arrows,
    },
    Entry {
        name: "cofibrant_retract",
        summary: "a cofibrant module is a retract of a Sullivan module",
        instances: 10,
        truncation: None,
        run: cofibrant_retract,
    },
];

/// Names of all checks, in catalog order.
pub fn catalog() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

pub fn run_check(name: &str, params: &CheckParams) -> Result<CheckReport> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCheck(name.into()))?;
    let truncation = entry.truncation.map(|t| params.truncation.unwrap_or(t));
    let ctx = Ctx {
        seed: params.seed,
        instances: params.instances.unwrap_or(entry.instances).max(1),
        truncation: truncation.unwrap_or(0),
    };
    let start = Instant::now();
    let step = (entry.run)(&ctx)?;
    let runtime = start.elapsed();
    let (verdict, witness, levels) = match step {
        Step::Pass => (Verdict::Pass, None, None),
        Step::Bounded(l) => (Verdict::BoundedPass, None, Some(l)),
        Step::Fail(w) => (Verdict::Fail, Some(w), None),
    };
    Ok(CheckReport {
        name: entry.name.into(),
        verdict,
        summary: entry.summary.into(),
        witness,
        levels,
        params: UsedParams {
            seed: params.seed,
            instances: ctx.instances,
            truncation,
        },
        runtime,
    })
}

/// Runs every check whose name starts with `filter` (all when `None`).
pub fn run_suite(filter: Option<&str>, seed: u64) -> Result<Vec<CheckReport>> {
    let names: Vec<&str> = catalog()
        .into_iter()
        .filter(|n| filter.is_none_or(|f| n.starts_with(f)))
        .collect();
    names
        .par_iter()
        .map(|n| run_check(n, &CheckParams::seeded(seed)))
        .collect()
}

/// Pass iff no report fails.
pub fn aggregate(reports: &[CheckReport]) -> Verdict {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if reports.iter().any(|r| r.verdict == Verdict::BoundedPass) {
        Verdict::BoundedPass
    } else {
        Verdict::Pass
    }
}

const NVARS: usize = 1;

fn op(p: WeylElement) -> FreeModuleElement {
    FreeModuleElement::from_coords(vec![p])
}

fn flatness_counterexample(_: &Ctx) -> Result<Step> {
    let d = WeylElement::d(NVARS, 0);
    let gb = buchberger(NVARS, 1, &[op(d.clone())])?;
    let one = op(WeylElement::one(NVARS));
    let member = gb.member(&one)?;
    let image = d.act_on_poly(&Polynomial::one(NVARS))?;
    Ok(exact(!member && image.is_zero(), || {
        format!("member(1) = {member}, d(1) = {image}")
    }))
}

fn filtration_splitting(ctx: &Ctx) -> Result<Step> {
    let n = ctx.truncation;
    ctx.each(|_, rng| {
        let p = random::weyl_element(rng, NVARS, n, 5);
        let q = random::weyl_element(rng, NVARS, n, 5);
        let parts = p.filtration_decompose();
        let mut sum = WeylElement::zero(NVARS);
        for (j, c) in parts.iter().enumerate() {
            if c.terms().any(|(m, _)| m.order() as usize != j) {
                return Ok(Step::Fail(format!("component {j} of {p} is not homogeneous")));
            }
            sum.add_assign_scaled(c, &Rational::one());
        }
        if sum != p {
            return Ok(Step::Fail(format!("components of {p} sum to {sum}")));
        }
        if p.is_zero() || q.is_zero() {
            return Ok(Step::Pass);
        }
        let pq = p.multiply(&q)?;
        let (op_, sp) = p.order_and_symbol()?;
        let (oq, sq) = q.order_and_symbol()?;
        let (opq, spq) = pq.order_and_symbol()?;
        let mut prod: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (a, ca) in &sp {
            for (b, cb) in &sq {
                let e = prod.entry(a.times(b)).or_insert_with(Rational::zero);
                *e += ca * cb;
            }
        }
        prod.retain(|_, c| !c.is_zero());
        Ok(exact(opq == op_ + oq && prod == spq, || format!("symbol of ({p})({q}) is not the product of symbols")))
    })
}

fn disks_acyclic(ctx: &Ctx) -> Result<Step> {
    let mut steps = Vec::new();
    for n in 1..=4 {
        let d = FreeDComplex::disk(NVARS, n)?;
        steps.push(exact(d.is_acyclic()?, || format!("H(D^{n}) ≠ 0")));
    }
    let pairs: Vec<(usize, usize)> = (1..=3).flat_map(|m| (1..=3).map(move |n| (m, n))).collect();
    let bounded_steps = pairs
        .par_iter()
        .map(|&(m, n)| {
            let dm = FreeDComplex::disk(NVARS, m)?;
            let s = tensor_free(&dm, &FreeDComplex::sphere(NVARS, n - 1));
            let d = tensor_free(&dm, &FreeDComplex::disk(NVARS, n)?);
            Ok(combine([
                bounded(truncated_acyclicity(&s, ctx.truncation)?, &format!("D^{m} ⊗ S^{}", n - 1)),
                bounded(truncated_acyclicity(&d, ctx.truncation)?, &format!("D^{m} ⊗ D^{n}")),
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    steps.extend(bounded_steps);
    Ok(combine(steps))
}

fn pp_cases() -> Vec<(usize, usize)> {
    let mut cases: Vec<(usize, usize)> = (1..=3).flat_map(|m| (1..=3).map(move |n| (m, n))).collect();
    cases.extend([(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)]);
    cases
}

fn pushout_product_cokernel(ctx: &Ctx) -> Result<Step> {
    let steps = pp_cases()
        .par_iter()
        .map(|&(m, n)| {
            let pp = pushout_product(GeneratingMap::Iota(m), GeneratingMap::Iota(n), NVARS)?;
            let report = pp.cokernel(ctx.truncation);
            Ok(exact(report.holds(), || format!("ι_{m} □ ι_{n}: {report:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(combine(steps))
}

fn trivial_pp_weq(ctx: &Ctx) -> Result<Step> {
    let cases: Vec<(usize, usize)> = (1..=3).flat_map(|m| (0..=3).map(move |n| (m, n))).collect();
    let steps = cases
        .par_iter()
        .map(|&(m, n)| {
            let pp = pushout_product(GeneratingMap::Zeta(m), GeneratingMap::Iota(n), NVARS)?;
            Ok(bounded(pp.cone_acyclicity(ctx.truncation)?, &format!("ζ_{m} □ ι_{n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(combine(steps))
}

fn zero_map_from_zero(target: &crate::dcomplex::OBasisComplex, inclusion: bool) -> OBasisMap {
    let zero = free_as_obasis(&FreeDComplex::zero(NVARS));
    let f = OBasisMap::new(zero, target.clone(), |_: usize, _: &Key| OComb::new());
    if inclusion {
        f.with_preimage(|_, _| None)
    } else {
        f
    }
}

/// The pushout of `ζ_n ⊗ Id_M` along `0 -> N` and its leg `i_2: N -> P`.
pub fn monoid_axiom_instance(n: usize, m: &FreeDComplex, target_n: &FreeDComplex, truncation: u32) -> Result<BoundedVerdict> {
    let dm = tensor_free(&FreeDComplex::disk(m.nvars(), n)?, m);
    let nn = free_as_obasis(target_n);
    let g = zero_map_from_zero(&dm, true);
    let f = zero_map_from_zero(&nn, false);
    let (_, i2, _) = pushout_along_inclusion(&f, &g)?;
    truncated_acyclicity(&i2.cone(), truncation)
}

fn monoid_axiom_pushout(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| {
        let n = rng.gen_range(1..=2);
        let m = random::complex(rng, NVARS, 1, 1);
        let target = random::complex(rng, NVARS, 2, 2);
        Ok(bounded(monoid_axiom_instance(n, &m, &target, ctx.truncation)?, "i_2"))
    })
}

/// A cycle of `x` in degree `n - 1`, to attach an `n`-cell along.
fn random_cycle(rng: &mut SeededRng, x: &FreeDComplex, n: usize) -> FreeModuleElement {
    let v = random::poly_vector(rng, NVARS, x.rank(n), 1);
    let boundary = x.differential(n).apply(&v);
    if n == 1 && rng.gen_bool(0.5) {
        random::poly_vector(rng, NVARS, x.rank(0), 1)
    } else {
        boundary
    }
}

/// Pushout of a random weak equivalence along a random cell attachment.
pub fn properness_free_instance(rng: &mut SeededRng) -> Result<Step> {
    let x = random::complex(rng, NVARS, 2, 2);
    let f = random::weq_from(rng, &x, 2);
    let n = rng.gen_range(1..=x.top() + 1);
    let c = random_cycle(rng, &x, n);
    let g = attach_cells(&x, &[(n, c)])?;
    let po = pushout(&f, &g)?;
    Ok(exact(is_weq(&po.from_w)?, || format!("pushout of a weq along a {n}-cell on {x} is not a weq")))
}

fn random_closed_algebra_element(rng: &mut SeededRng, a: &SullivanAlgebra, degree: usize) -> Result<AlgebraElement> {
    let u = random::algebra_element(rng, a, degree + 1, 2, 2);
    let mut c = a.d(&u)?;
    for j in 0..a.generators().len() {
        if a.generators()[j].degree == degree && a.differential_of_generator(j).is_zero() && rng.gen_bool(0.5) {
            let b: Vec<u32> = (0..NVARS).map(|_| rng.gen_range(0..=1)).collect();
            c = c.add(&a.act_d_power(&b, &a.generator(j)));
        }
    }
    Ok(c)
}

/// Pushout of `X -> X ⊗ S(u, v)` along a single-cell extension of `X`.
pub fn properness_algebra_instance(rng: &mut SeededRng, truncation: u32) -> Result<Step> {
    let x = Arc::new(random::sullivan_algebra(rng, NVARS));
    let y = Arc::new(x.with_contractible_pair(rng.gen_range(1..=2))?);
    let f = AlgebraMorphism::inclusion(&x, &y)?;
    let n = rng.gen_range(1..=2);
    let c = random_closed_algebra_element(rng, &x, n - 1)?;
    let po = dga_pushout_gen(&f, n, &c)?;
    Ok(bounded(truncated_acyclicity(&po.map.as_obasis().cone(), truncation)?, "f ⊗ Id"))
}

/// Pushout of a module weak equivalence `P -> Q` along `P -> P ⊕ A⊗S^n`.
pub fn properness_module_instance(rng: &mut SeededRng, truncation: u32) -> Result<Step> {
    let a = Arc::new(random::sullivan_algebra(rng, NVARS));
    let p = Arc::new(random::sullivan_module(rng, &a, 2, 1));
    let f = random::module_weq(rng, &p, 2);
    let n = rng.gen_range(1..=2);
    let c = random::closed_module_element(rng, &p, n - 1);
    let p2 = Arc::new(p.extend_differential("c", n, c.clone())?);
    let q2 = Arc::new(f.target().extend_differential("c", n, f.apply(&c))?);
    let mut images: Vec<ModuleElement> = f.images().expect("cell images").to_vec();
    images.push(q2.basis_element(q2.cells().len() - 1));
    let g = extend_morphism(&AModuleMorphism::from_cell_images(&p, &q2, images[..p.cells().len()].to_vec())?, &p2, vec![images[p.cells().len()].clone()])?;
    Ok(bounded(g.bounded_weq(truncation)?, "pushout in Mod(A)"))
}

fn properness_random(ctx: &Ctx) -> Result<Step> {
    ctx.each(|i, rng| match i % 3 {
        0 => properness_free_instance(rng),
        1 => properness_module_instance(rng, ctx.truncation),
        _ => properness_algebra_instance(rng, ctx.truncation),
    })
}

/// `f ⊗_A Id_M` for a random module weak equivalence and Sullivan `M`.
pub fn hac3_instance(rng: &mut SeededRng, truncation: u32) -> Result<Step> {
    let a = Arc::new(random::sullivan_algebra(rng, NVARS));
    let p = Arc::new(random::sullivan_module(rng, &a, 1, 1));
    let f = random::module_weq(rng, &p, 1);
    let m = Arc::new({ let k = rng.gen_range(1..=3); random::sullivan_module(rng, &a, k, 1) });
    let fm = tensor_with_identity(&f, &m)?;
    Ok(bounded(fm.bounded_weq(truncation)?, "f ⊗_A Id_M"))
}

fn hac3_flatness(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| hac3_instance(rng, ctx.truncation))
}

/// `B ⊗_A f` for a random Sullivan extension `B` of `A`.
pub fn hac4_instance(rng: &mut SeededRng, truncation: u32) -> Result<Step> {
    let a = Arc::new(random::sullivan_algebra(rng, NVARS));
    let mut b = (*a).clone();
    for j in 0..rng.gen_range(1..=2) {
        let deg = rng.gen_range(1..=2);
        let c = random_closed_algebra_element(rng, &b, deg - 1)?;
        b = b.extend(&format!("b{j}"), deg, c)?;
    }
    let b = Arc::new(b);
    let p = Arc::new(random::sullivan_module(rng, &a, 2, 1));
    let f = random::module_weq(rng, &p, 2);
    let bf = base_change_morphism(&b, &f)?;
    Ok(bounded(bf.bounded_weq(truncation)?, "B ⊗_A f"))
}

fn hac4_base_change(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| hac4_instance(rng, ctx.truncation))
}

fn closed_algebra(rng: &mut SeededRng) -> Result<SullivanAlgebra> {
    let mut a = SullivanAlgebra::ground(NVARS);
    for j in 0..rng.gen_range(1..=2) {
        a = a.extend(&format!("g{j}"), rng.gen_range(1..=2), AlgebraElement::zero(NVARS))?;
    }
    Ok(a)
}

/// A morphism `A -> M` sending each (closed) generator to itself plus a
/// boundary, with `M = A ⊗ S(u, v)`.
fn random_under(rng: &mut SeededRng, a: &Arc<SullivanAlgebra>) -> Result<AlgebraMorphism> {
    let deg = rng.gen_range(1..=3);
    let m = Arc::new(a.with_contractible_pair(deg)?);
    let images = (0..a.generators().len())
        .map(|j| {
            let g = m.generator(j);
            let h = random::algebra_element(rng, &m, a.generators()[j].degree + 1, 2, 2);
            Ok(g.add(&m.d(&h)?))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::new(a.clone(), m, images)
}

/// Round trips of `F` and `G` on one object and one morphism.
pub fn cmon_instance(rng: &mut SeededRng) -> Result<Step> {
    let a = Arc::new(closed_algebra(rng)?);
    let phi = random_under(rng, &a)?;
    let m = phi.target().clone();
    let n = under_to_cmon(&phi);
    if cmon_to_under(&n)? != phi {
        return Ok(Step::Fail("G(F(φ)) ≠ φ".into()));
    }
    let n2 = under_to_cmon(&cmon_to_under(&n)?);
    if n2 != n {
        return Ok(Step::Fail("F(G(N)) ≠ N".into()));
    }
    for _ in 0..5 {
        let da = rng.gen_range(0..=3);
        let a1 = random::algebra_element(rng, &a, da, 2, 2);
        let a2 = { let k = rng.gen_range(0..=2); random::algebra_element(rng, &a, k, 2, 2) };
        let m1 = { let k = rng.gen_range(0..=2); random::algebra_element(rng, &m, k, 2, 2) };
        let m2 = { let k = rng.gen_range(0..=2); random::algebra_element(rng, &m, k, 2, 2) };
        let via_phi = m.multiply(&phi.apply(&a1)?, &m1)?;
        if n.act(&a1, &m1) != via_phi {
            return Ok(Step::Fail("a ◁ m ≠ φ(a) ⋆ m".into()));
        }
        let nested = n.act(&a1, &n.act(&a2, &m1));
        if nested != n.act(&a.multiply(&a1, &a2)?, &m1) {
            return Ok(Step::Fail("a' ◁ (a'' ◁ m) ≠ (a' a'') ◁ m".into()));
        }
        if n.act(&AlgebraElement::one(NVARS), &m1) != m1 {
            return Ok(Step::Fail("1 ◁ m ≠ m".into()));
        }
        if let (Some(p), Some(q)) = (a.degree_of(&a1), m.degree_of(&m1)) {
            let lhs = m.multiply(&n.act(&a1, &m1), &m2)?;
            let mut rhs = m.multiply(&m1, &n.act(&a1, &m2))?;
            if (p * q) % 2 == 1 {
                rhs = rhs.scale(&-Rational::one());
            }
            if lhs != rhs {
                return Ok(Step::Fail("(a ◁ m') ⋆ m'' ≠ ± m' ⋆ (a ◁ m'')".into()));
            }
        }
    }
    let m2 = Arc::new(m.with_contractible_pair(rng.gen_range(1..=2))?);
    let psi = AlgebraMorphism::inclusion(&m, &m2)?;
    let phi2 = phi.then(&psi)?;
    let n_2 = under_to_cmon(&phi2);
    for _ in 0..5 {
        let a1 = { let k = rng.gen_range(0..=3); random::algebra_element(rng, &a, k, 2, 2) };
        let m1 = { let k = rng.gen_range(0..=2); random::algebra_element(rng, &m, k, 2, 2) };
        if psi.apply(&n.act(&a1, &m1))? != n_2.act(&a1, &psi.apply(&m1)?) {
            return Ok(Step::Fail("F(ψ) is not A-linear".into()));
        }
    }
    Ok(exact(cmon_to_under(&n_2)? == phi2, || "G(F(ψ ∘ φ)) ≠ ψ ∘ φ".into()))
}

fn cmon_under_roundtrip(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| cmon_instance(rng))
}

fn random_key(rng: &mut SeededRng, m: &AModule) -> ModKey {
    let c = rng.gen_range(0..m.cells().len());
    let d = (0..m.cells()[c].arity * NVARS).map(|_| rng.gen_range(0..=1)).collect();
    ModKey { cell: c, d }
}

/// `ı` and its inverse on probes, and `ı` as a chain map.
pub fn simpl_tens_instance(rng: &mut SeededRng) -> Result<Step> {
    let a = Arc::new(random::sullivan_algebra(rng, NVARS));
    let b = Arc::new(random::sullivan_module(rng, &a, 2, 2));
    let m = Arc::new(random::sullivan_module(rng, &a, 2, 1));
    let bm = Arc::new(tensor_over_a(&b, &m)?);
    bm.as_obasis().check_d_squared(2)?;
    for _ in 0..10 {
        let x = { let k = rng.gen_range(0..=2); random::module_element(rng, &b, k, 2, 1) };
        let alpha = { let k = rng.gen_range(0..=2); random::algebra_element(rng, &a, k, 2, 1) };
        let key = random_key(rng, &m);
        if x.is_zero() || alpha.is_zero() {
            continue;
        }
        let y = iota(&bm, &b, &m, &x, &alpha, &key);
        let back = iota_inverse(&b, &m, &y);
        let mut expected = b.act(&alpha, &x);
        if (a.degree_of(&alpha).unwrap_or(0) * b.degree_of(&x).unwrap_or(0)) % 2 == 1 {
            expected = expected.scale(&-Rational::one());
        }
        let ok = (expected.is_zero() && back.is_empty()) || back == vec![(expected, key.clone())];
        if !ok {
            return Ok(Step::Fail("ı⁻¹ ∘ ı ≠ id".into()));
        }
        let mut again = ModuleElement::zero();
        for (piece, k) in iota_inverse(&b, &m, &y) {
            again = again.add(&iota(&bm, &b, &m, &piece, &AlgebraElement::one(NVARS), &k));
        }
        if again != y {
            return Ok(Step::Fail("ı ∘ ı⁻¹ ≠ id".into()));
        }
        let lhs = bm.d(&y);
        let mut rhs = iota(&bm, &b, &m, &b.d(&x), &alpha, &key);
        let xdeg = b.degree_of(&x).unwrap_or(0);
        let am = m.d(&m.act(&alpha, &m.key_element(key.clone())));
        for (k2, a2) in am.terms() {
            let mut t = iota(&bm, &b, &m, &x, a2, k2);
            if xdeg % 2 == 1 {
                t = t.scale(&-Rational::one());
            }
            rhs = rhs.add(&t);
        }
        if lhs != rhs {
            return Ok(Step::Fail(format!("d ı ≠ ı d on {}", bm.show(&y))));
        }
    }
    Ok(Step::Pass)
}

fn simpl_tens_iso(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| simpl_tens_instance(rng))
}

/// `P · atom` for an operator `P`.
fn act_weyl_algebra(alg: &SullivanAlgebra, p: &WeylElement, u: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(alg.nvars());
    for (mono, c) in p.terms() {
        let part = alg.act_d_power(&mono.d, u);
        out = out.add(&part.times_poly(&Polynomial::monomial(mono.x.clone(), c.clone())));
    }
    out
}

/// `S(M)` for a free complex `M`: one generator per basis vector.
pub fn free_symmetric(m: &FreeDComplex) -> Result<SullivanAlgebra> {
    let mut alg = SullivanAlgebra::ground(m.nvars());
    let mut offsets = Vec::new();
    for n in 0..=m.top() {
        offsets.push(alg.generators().len());
        for k in 0..m.rank(n) {
            let mut dg = AlgebraElement::zero(m.nvars());
            if n > 0 {
                for (j, p) in m.differential(n).row(k).coords().iter().enumerate() {
                    if !p.is_zero() {
                        dg = dg.add(&act_weyl_algebra(&alg, p, &alg.generator(offsets[n - 1] + j)));
                    }
                }
            }
            alg = alg.extend(&format!("e{n}_{k}"), n, dg)?;
        }
    }
    Ok(alg)
}

fn formal_product(x: &FormalWord, y: &FormalWord) -> FormalWord {
    let mut out = Vec::new();
    for (c1, f1) in x {
        for (c2, f2) in y {
            let mut f = f1.clone();
            f.extend(f2.iter().cloned());
            out.push((c1 * c2, f));
        }
    }
    out
}

/// Unit and associativity laws for `U = ΦΣ` and `T = FS`, with the chain
/// map property of `μ`.
pub fn monad_instance(rng: &mut SeededRng) -> Result<Step> {
    let a = Arc::new(random::sullivan_algebra(rng, NVARS));
    let mc = random::complex(rng, NVARS, 2, 2);
    let sigma = free_amodule(&a, &mc)?;
    if sigma.cells().is_empty() {
        return Ok(Step::Pass);
    }
    let el = |rng: &mut SeededRng| { let k = rng.gen_range(0..=2); random::algebra_element(rng, &a, k, 2, 2) };
    for _ in 0..5 {
        let key = random_key(rng, &sigma);
        let (x, y, z) = (el(rng), el(rng), el(rng));
        let inner = sigma.act(&z, &sigma.key_element(key.clone()));
        let lhs = monad_multiply(&sigma, &x, &monad_multiply(&sigma, &y, &inner));
        let rhs = monad_multiply(&sigma, &a.multiply(&x, &y)?, &inner);
        if lhs != rhs {
            return Ok(Step::Fail("μ ∘ Uμ ≠ μ ∘ μU".into()));
        }
        let u = monad_multiply(&sigma, &AlgebraElement::one(NVARS), &inner);
        let v = monad_multiply(&sigma, &z, &monad_unit(&sigma, &key));
        if u != inner || v != inner {
            return Ok(Step::Fail("unit law of U".into()));
        }
        let outer = monad_multiply(&sigma, &x, &inner);
        let dmu = sigma.d(&outer);
        let mut mud = monad_multiply(&sigma, &a.d(&x)?, &inner);
        let mut second = monad_multiply(&sigma, &x, &sigma.d(&inner));
        if a.degree_of(&x).unwrap_or(0) % 2 == 1 {
            second = second.scale(&-Rational::one());
        }
        mud = mud.add(&second);
        if dmu != mud {
            return Ok(Step::Fail("μ of U is not a chain map".into()));
        }
    }
    let s = Arc::new(free_symmetric(&mc)?);
    let sel = |rng: &mut SeededRng| { let k = rng.gen_range(0..=2); random::algebra_element(rng, &s, k, 2, 2) };
    for _ in 0..5 {
        let u = sel(rng);
        if sym_multiply(&s, &sym_unit_outside(&u)) != u || sym_multiply(&s, &sym_unit_inside(&s, &u)) != u {
            return Ok(Step::Fail("unit law of T".into()));
        }
        let t2: Vec<FormalWord> = (0..2)
            .map(|_| vec![(Rational::one(), vec![sel(rng), sel(rng)]), (Rational::from_integer(2.into()), vec![sel(rng)])])
            .collect();
        let flattened = t2.iter().skip(1).fold(t2[0].clone(), |acc, w| formal_product(&acc, w));
        let inner_first: FormalWord = vec![(Rational::one(), t2.iter().map(|w| sym_multiply(&s, w)).collect())];
        if sym_multiply(&s, &flattened) != sym_multiply(&s, &inner_first) {
            return Ok(Step::Fail("μ ∘ Tμ ≠ μ ∘ μT".into()));
        }
        let (u1, u2) = (sel(rng), sel(rng));
        let prod = sym_multiply(&s, &vec![(Rational::one(), vec![u1.clone(), u2.clone()])]);
        let mut rhs = s.multiply(&s.d(&u1)?, &u2)?;
        let mut second = s.multiply(&u1, &s.d(&u2)?)?;
        if s.degree_of(&u1).unwrap_or(0) % 2 == 1 {
            second = second.scale(&-Rational::one());
        }
        rhs = rhs.add(&second);
        if s.d(&prod)? != rhs {
            return Ok(Step::Fail("μ of T is not a chain map".into()));
        }
    }
    Ok(Step::Pass)
}

fn monad_laws(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| monad_instance(rng))
}

/// Stagewise weak equivalences give a weak equivalence at the colimit marker.
pub fn limit_colimit_instance(rng: &mut SeededRng) -> Result<Step> {
    let stages = rng.gen_range(1..=3);
    let x0 = random::complex(rng, NVARS, 2, 2);
    let f0 = random::weq_from(rng, &x0, 2);
    if !is_weq(&f0)? {
        return Ok(Step::Fail("f_0 is not a weq".into()));
    }
    let mut f = f0;
    for beta in 0..stages {
        let x = f.source().clone();
        let n = rng.gen_range(1..=x.top() + 1);
        let c = random_cycle(rng, &x, n);
        let g = attach_cells(&x, &[(n, c)])?;
        let po = pushout(&f, &g)?;
        if f.then(&po.from_y)? != g.then(&po.from_w)? {
            return Ok(Step::Fail(format!("stage {beta} square does not commute")));
        }
        if !is_weq(&po.from_w)? {
            return Ok(Step::Fail(format!("f_{} is not a weq", beta + 1)));
        }
        f = po.from_w;
    }
    Ok(exact(is_weq(&f)?, || "colimit map is not a weq".into()))
}

fn limit_colimit_weq(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| limit_colimit_instance(rng))
}

/// The quotient of a complex by a subcomplex spanned by the first
/// `sub[n]` basis vectors in each degree.
fn quotient_by_prefix(c: &FreeDComplex, sub: &FreeDComplex) -> Result<FreeDComplex> {
    let top = c.top();
    let ranks: Vec<usize> = (0..=top).map(|n| c.rank(n) - sub.rank(n)).collect();
    let diffs = (1..=top)
        .map(|n| {
            let rows = c.differential(n).rows()[sub.rank(n)..]
                .iter()
                .map(|r| r.slice(sub.rank(n - 1)..c.rank(n - 1)))
                .collect();
            DMatrix::from_rows(c.nvars(), ranks[n - 1], rows)
        })
        .collect::<Result<Vec<_>>>()?;
    FreeDComplex::new(c.nvars(), ranks, diffs)
}

fn quotient_map(f: &ChainMap, src_sub: &FreeDComplex, tgt_sub: &FreeDComplex) -> Result<ChainMap> {
    let src = quotient_by_prefix(f.source(), src_sub)?;
    let tgt = quotient_by_prefix(f.target(), tgt_sub)?;
    let maps = (0..=f.top())
        .map(|n| {
            let comp = f.component(n);
            let rows = comp.rows()[src_sub.rank(n)..]
                .iter()
                .map(|r| r.slice(tgt_sub.rank(n)..f.target().rank(n)))
                .collect();
            DMatrix::from_rows(f.nvars(), tgt.rank(n), rows)
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(src, tgt, maps)
}

/// `φ_0` a weq and weq graded pieces; every `φ_β` must be a weq.
pub fn graded_filtration_instance(rng: &mut SeededRng) -> Result<Step> {
    let x0 = random::complex(rng, NVARS, 2, 2);
    let mut phi = random::weq_from(rng, &x0, 2);
    if !is_weq(&phi)? {
        return Ok(Step::Fail("φ_0 is not a weq".into()));
    }
    for beta in 0..rng.gen_range(1..=2) {
        let x = phi.source().clone();
        let y = phi.target().clone();
        let n = rng.gen_range(1..=x.top() + 1);
        let c = random_cycle(rng, &x, n);
        let g = attach_cells(&x, &[(n, c)])?;
        let po = pushout(&phi, &g)?;
        let k = rng.gen_range(1..=po.object.top() + 1);
        let expand = random::expansion(rng, &po.object, k);
        let next = po.from_w.then(&expand)?;
        let piece = quotient_map(&next, &x, &y)?;
        if !is_weq(&piece)? {
            continue;
        }
        if !is_weq(&next)? {
            return Ok(Step::Fail(format!("graded piece {} is a weq but φ_{} is not", beta + 1, beta + 1)));
        }
        phi = next;
    }
    Ok(Step::Pass)
}

fn graded_filtration_weq(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| graded_filtration_instance(rng))
}

/// `Mc(f ⊗ Id_M) = Mc(f) ⊗ M`, and the shift by `k` stays acyclic.
pub fn kunneth_instance(rng: &mut SeededRng) -> Result<Step> {
    let x = random::complex(rng, NVARS, 2, 2);
    let f = random::weq_from(rng, &x, 2);
    let s = rng.gen_range(1..=2);
    let matrices = vec![(0..s)
        .map(|_| (0..s).map(|_| random::polynomial(rng, NVARS, 1, 1)).collect())
        .collect()];
    let m = ConnectionModule::new(NVARS, matrices)?;
    let lhs = mapping_cone(&tensor_map_with_connection(&f, &m)?);
    let rhs = tensor_with_connection(&mapping_cone(&f), &m)?;
    if lhs != rhs {
        return Ok(Step::Fail("Mc(f ⊗ Id_M) ≠ Mc(f) ⊗ M".into()));
    }
    let k: i64 = rng.gen_range(0..=2);
    let shifted = rhs.shift(-k)?;
    Ok(exact(shifted.is_acyclic()?, || format!("Mc(f)[{k}] ⊗ M is not acyclic")))
}

fn kunneth_mapcone(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| kunneth_instance(rng))
}

/// Universality of the module and algebra single-cell pushouts against
/// cocones perturbed by boundaries.
pub fn pushout_universal_instance(rng: &mut SeededRng) -> Result<Step> {
    let a = Arc::new(random::sullivan_algebra(rng, NVARS));
    let b = Arc::new(random::sullivan_module(rng, &a, 2, 1));
    let n = rng.gen_range(1..=2);
    let att = random::closed_module_element(rng, &b, n - 1);
    let po = amod_pushout_gen(&b, n, &att)?;
    let x = &po.object;
    let e = x.extend_differential("ev", n, ModuleElement::zero())?;
    let ev = e.basis_element(e.cells().len() - 1);
    let e = Arc::new(e.extend_differential("eu", n + 1, ev)?);
    let p = AModuleMorphism::from_cell_images(&b, &e, (0..b.cells().len()).map(|c| e.basis_element(c)).collect())?;
    let z = random::module_element(rng, &e, n + 1, 2, 2);
    let top = e.basis_element(b.cells().len()).add(&e.d(&z));
    let q = AModuleMorphism::from_cell_images(&po.disk, &e, vec![att.clone(), top.clone()])?;
    q.check_chain_map(2)?;
    let u = po.universal(&p, &q)?;
    u.check_chain_map(2)?;
    for c in 0..b.cells().len() {
        for k in b.keys(c, 2) {
            if po.from_b.then(&u).apply_key(&k) != p.apply_key(&k) {
                return Ok(Step::Fail("u ∘ g ≠ p".into()));
            }
        }
    }
    for c in 0..2 {
        for k in po.disk.keys(c, 2) {
            if po.from_disk.then(&u).apply_key(&k) != q.apply_key(&k) {
                return Ok(Step::Fail("u ∘ h ≠ q".into()));
            }
        }
    }
    let mut images: Vec<ModuleElement> = (0..b.cells().len()).map(|c| p.apply_key(&key0(&b, c))).collect();
    images.push(q.apply_key(&key0(&po.disk, 1)));
    let solved = AModuleMorphism::from_cell_images(x, &e, images)?;
    for c in 0..x.cells().len() {
        if solved.apply_key(&key0(x, c)) != u.apply_key(&key0(x, c)) {
            return Ok(Step::Fail("factoring map is not unique".into()));
        }
    }

    let xa = Arc::new(random::sullivan_algebra(rng, NVARS));
    let ya = Arc::new(xa.with_contractible_pair(rng.gen_range(1..=2))?);
    let f = AlgebraMorphism::inclusion(&xa, &ya)?;
    let na = rng.gen_range(1..=2);
    let c = random_closed_algebra_element(rng, &xa, na - 1)?;
    let dpo = dga_pushout_gen(&f, na, &c)?;
    let ea = dpo.y_ext.clone();
    let h = dpo.right_leg.clone();
    let zz = random::algebra_element(rng, &ea, na + 1, 2, 2);
    let mut kimg = dpo.map.images().to_vec();
    let last = kimg.len() - 1;
    kimg[last] = kimg[last].add(&ea.d(&zz)?);
    let k = AlgebraMorphism::new(dpo.x_ext.clone(), ea.clone(), kimg)?;
    let mu = dpo.universal(&h, &k)?;
    let ok = dpo.right_leg.then(&mu)? == h && dpo.map.then(&mu)? == k && dpo.respects_filtration(2, 3);
    Ok(exact(ok, || "algebra pushout is not universal".into()))
}

fn key0(m: &AModule, c: usize) -> ModKey {
    ModKey {
        cell: c,
        d: vec![0; m.cells()[c].arity * m.nvars()],
    }
}

fn sullivan_pushout_universal(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| pushout_universal_instance(rng))
}

fn unit_rows(nvars: usize, rows: usize, cols: usize, offset: usize) -> DMatrix {
    let r = (0..rows).map(|i| FreeModuleElement::unit(nvars, cols, offset + i)).collect();
    DMatrix::from_rows(nvars, cols, r).expect("shape")
}

fn projection(nvars: usize, total: usize, part: usize, offset: usize) -> DMatrix {
    let rows = (0..total)
        .map(|i| {
            if i >= offset && i < offset + part {
                FreeModuleElement::unit(nvars, part, i - offset)
            } else {
                FreeModuleElement::zero(nvars, part)
            }
        })
        .collect();
    DMatrix::from_rows(nvars, part, rows).expect("shape")
}

/// Sums are products degreewise, and every object is fibrant.
pub fn hac1_instance(rng: &mut SeededRng) -> Result<Step> {
    let x = random::complex(rng, NVARS, 2, 2);
    let y = random::complex(rng, NVARS, 2, 2);
    let s = x.direct_sum(&y);
    let top = s.top();
    let inc = |c: &FreeDComplex, off: &dyn Fn(usize) -> usize| {
        ChainMap::new(c.clone(), s.clone(), (0..=top).map(|n| unit_rows(NVARS, c.rank(n), s.rank(n), off(n))).collect())
    };
    let proj = |c: &FreeDComplex, off: &dyn Fn(usize) -> usize| {
        ChainMap::new(s.clone(), c.clone(), (0..=top).map(|n| projection(NVARS, s.rank(n), c.rank(n), off(n))).collect())
    };
    let i1 = inc(&x, &|_| 0)?;
    let i2 = inc(&y, &|n| x.rank(n))?;
    let p1 = proj(&x, &|_| 0)?;
    let p2 = proj(&y, &|n| x.rank(n))?;
    let ok_sum = i1.then(&p1)? == ChainMap::identity(&x)
        && i2.then(&p2)? == ChainMap::identity(&y)
        && i1.then(&p2)? == ChainMap::zero(&x, &y)
        && p1.then(&i1)?.add(&p2.then(&i2)?)? == ChainMap::identity(&s);
    let zero = FreeDComplex::zero(NVARS);
    let fibrant = is_fibration(&ChainMap::zero(&s, &zero))?;
    let replacement = is_weq(&ChainMap::identity(&s))?;
    Ok(exact(ok_sum && fibrant && replacement, || {
        format!("sum {ok_sum}, fibrant {fibrant}, identity weq {replacement}")
    }))
}

fn hac1_arrows(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| hac1_instance(rng))
}

/// `Q --i--> QC --r--> Q` with `r ∘ i = id`, where `QC` adds a contractible
/// pair to the Sullivan module `Q`.
pub fn retract_instance(rng: &mut SeededRng) -> Result<Step> {
    let a = Arc::new(random::sullivan_algebra(rng, NVARS));
    let q = Arc::new(random::sullivan_module(rng, &a, 2, 2));
    let i = random::module_weq(rng, &q, 2);
    let qc = i.target().clone();
    let nq = q.cells().len();
    let CellRule::Assigned(dv) = &qc.cells()[nq].rule else {
        return Ok(Step::Fail("unexpected cell shape".into()));
    };
    let mut images: Vec<ModuleElement> = (0..nq).map(|c| q.basis_element(c)).collect();
    images.push(dv.clone());
    images.push(ModuleElement::zero());
    // r(v) = y where d v = d y and d u = v - y
    let CellRule::Assigned(du) = &qc.cells()[nq + 1].rule else {
        return Ok(Step::Fail("unexpected cell shape".into()));
    };
    images[nq] = qc.basis_element(nq).sub(du);
    let r = AModuleMorphism::from_cell_images(&qc, &q, images)?;
    r.check_chain_map(2)?;
    i.check_chain_map(2)?;
    let ri = i.then(&r);
    for c in 0..nq {
        for k in q.keys(c, 2) {
            if ri.apply_key(&k) != q.key_element(k.clone()) {
                return Ok(Step::Fail("r ∘ i ≠ id".into()));
            }
        }
    }
    Ok(Step::Pass)
}

fn cofibrant_retract(ctx: &Ctx) -> Result<Step> {
    ctx.each(|_, rng| retract_instance(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::homology;

    #[test]
    fn catalog_has_eighteen_checks() {
        assert_eq!(catalog().len(), 18);
    }

    #[test]
    fn unknown_check() {
        assert!(matches!(run_check("nope", &CheckParams::default()), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn hac_filter() {
        let names: Vec<&str> = catalog().into_iter().filter(|n| n.starts_with("hac")).collect();
        assert_eq!(names, vec!["hac3_flatness", "hac4_base_change", "hac1_arrows"]);
    }

    #[test]
    fn flatness_check_passes() {
        let r = run_check("flatness_counterexample", &CheckParams::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.to_json().starts_with("{\"name\":\"flatness_counterexample\",\"verdict\":\"pass\""));
    }

    #[test]
    fn failing_bounded_witness_reverifies() {
        // S^0 -> 0 is not a weak equivalence; its cone is S^1.
        let s0 = FreeDComplex::sphere(NVARS, 0);
        let zero = FreeDComplex::zero(NVARS);
        let f = crate::dcomplex::chain_map_as_obasis(&ChainMap::zero(&s0, &zero));
        let step = bounded(truncated_acyclicity(&f.cone(), 2).unwrap(), "S^0 -> 0");
        assert!(matches!(step, Step::Fail(_)));
        assert!(!homology(&mapping_cone(&ChainMap::zero(&s0, &zero)), 1).unwrap().is_zero());
    }

    #[test]
    fn monoid_axiom_on_spheres() {
        let m = FreeDComplex::sphere(NVARS, 0);
        let n = FreeDComplex::sphere(NVARS, 1);
        assert!(monoid_axiom_instance(1, &m, &n, 2).unwrap().passed());
    }

    #[test]
    fn free_symmetric_differential() {
        let s = free_symmetric(&FreeDComplex::disk(NVARS, 1).unwrap()).unwrap();
        assert_eq!(s.differential_of_generator(1), &s.generator(0));
    }
}
