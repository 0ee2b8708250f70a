//! Exact arithmetic in the Weyl algebra `D = Q<x_1..x_n, d_1..d_n>`.
//!
//! Elements are kept in normal order `x^a d^b` (all `x` to the left) with
//! arbitrary-precision rational coefficients. Zero coefficients are never
//! stored, so structural equality is mathematical equality.

mod parse;

pub use parse::parse_operator;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A normal-ordered monomial `x^x d^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub d: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            x: vec![0; nvars],
            d: vec![0; nvars],
        }
    }

    pub fn new(x: Vec<u32>, d: Vec<u32>) -> Self {
        debug_assert_eq!(x.len(), d.len());
        Monomial { x, d }
    }

    pub fn nvars(&self) -> usize {
        self.x.len()
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    /// Order in the filtration by `d`-degree.
    pub fn order(&self) -> u32 {
        self.d.iter().sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.x_degree() + self.order()
    }

    /// True when `self` divides `other` as commutative monomials.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.x.iter().zip(&other.x).all(|(a, b)| a <= b)
            && self.d.iter().zip(&other.d).all(|(a, b)| a <= b)
    }

    /// `other - self`, assuming `self.divides(other)`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: other.x.iter().zip(&self.x).map(|(a, b)| a - b).collect(),
            d: other.d.iter().zip(&self.d).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| *a.max(b)).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// Commutative product (sum of exponents).
    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| a + b).collect(),
        }
    }
}

fn falling_factorial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

fn binomial(n: u32, k: u32) -> BigInt {
    falling_factorial(n, k) / falling_factorial(k, k)
}

/// Normal-ordered product of two monomials. Per variable,
/// `d^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) d^(b-k)`.
fn monomial_product(p: &Monomial, q: &Monomial) -> Vec<(Monomial, BigInt)> {
    let n = p.nvars();
    let mut out = vec![(Monomial::one(n), BigInt::one())];
    for i in 0..n {
        let (b, c) = (p.d[i], q.x[i]);
        let mut next = Vec::with_capacity(out.len() * (b.min(c) as usize + 1));
        for k in 0..=b.min(c) {
            let coeff = binomial(b, k) * falling_factorial(c, k);
            for (m, cf) in &out {
                let mut m = m.clone();
                m.x[i] = p.x[i] + c - k;
                m.d[i] = b + q.d[i] - k;
                next.push((m, cf * &coeff));
            }
        }
        out = next;
    }
    out
}

/// An element of the Weyl algebra in normal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl WeylElement {
    pub fn zero(nvars: usize) -> Self {
        WeylElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero(m.nvars());
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// The generator `x_i` (0-based index).
    pub fn x(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.x[i] = 1;
        Self::term(m, Rational::one())
    }

    /// The generator `d_i` (0-based index).
    pub fn d(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.d[i] = 1;
        Self::term(m, Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut e = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong number of variables");
            e.add_term(m, c);
        }
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.total_degree() == 0 && c.is_one())
    }

    /// Some nonzero constant, if the element is one.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && m.total_degree() == 0 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m` in place, keeping canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &WeylElement, c: &Rational) {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> WeylElement {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        WeylElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Total degree in `(x, d)`; zero for the zero element.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// True when no `d` occurs, i.e. the element lies in `O = Q[x]`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.order() == 0)
    }

    /// Normal-ordered product `self * other`.
    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &WeylElement) -> WeylElement {
        let mut out = Self::zero(self.nvars);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let ab = a * b;
                for (m, k) in monomial_product(p, q) {
                    out.add_term(m, &ab * Rational::from_integer(k));
                }
            }
        }
        out
    }

    /// Multiplies on the left by a monomial `c x^a d^b`.
    pub fn left_mul_monomial(&self, m: &Monomial, c: &Rational) -> WeylElement {
        let mut out = Self::zero(self.nvars);
        for (q, b) in &self.terms {
            let cb = c * b;
            for (r, k) in monomial_product(m, q) {
                out.add_term(r, &cb * Rational::from_integer(k));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul_unchecked(self))
    }

    /// Applies the operator to a polynomial (the tautological action on `O`).
    pub fn act_on_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.nvars != f.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: f.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut g = f.clone();
            for (i, &b) in m.d.iter().enumerate() {
                for _ in 0..b {
                    g = g.derivative(i);
                }
            }
            let shifted = g.mul_monomial(&m.x, c);
            out = &out + &shifted;
        }
        Ok(out)
    }

    /// Order (top `d`-degree) and principal symbol.
    pub fn order_and_symbol(&self) -> Result<(u32, BTreeMap<Monomial, Rational>)> {
        let order = self
            .terms
            .keys()
            .map(Monomial::order)
            .max()
            .ok_or(Error::ZeroInput)?;
        let symbol = self
            .terms
            .iter()
            .filter(|(m, _)| m.order() == order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok((order, symbol))
    }

    /// Splits the element into its order-homogeneous pieces, index `j`
    /// holding the terms with `|b| = j`. The zero element gives an empty list.
    pub fn filtration_decompose(&self) -> Vec<WeylElement> {
        let top = match self.terms.keys().map(Monomial::order).max() {
            Some(t) => t as usize,
            None => return Vec::new(),
        };
        let mut parts = vec![Self::zero(self.nvars); top + 1];
        for (m, c) in &self.terms {
            parts[m.order() as usize].add_term(m.clone(), c.clone());
        }
        parts
    }

    /// Converts a `d`-free element to a polynomial.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        if !self.is_polynomial() {
            return None;
        }
        Some(Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.x.clone(), c.clone())),
        ))
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Rational::one())
    }
}

/// Panics on a variable-count mismatch; use [`WeylElement::multiply`] for
/// the checked form.
impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        self.mul_unchecked(rhs)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, name: char, exps: &[u32], first: &mut bool) -> fmt::Result {
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !*first {
            write!(f, "*")?;
        }
        *first = false;
        write!(f, "{}{}", name, i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn write_term(f: &mut fmt::Formatter<'_>, x: &[u32], d: &[u32], c: &Rational, lead: bool) -> fmt::Result {
    let abs = c.abs();
    if c.is_negative() {
        write!(f, "{}", if lead { "-" } else { " - " })?;
    } else if !lead {
        write!(f, " + ")?;
    }
    let trivial = x.iter().chain(d).all(|&e| e == 0);
    let mut first = true;
    if !abs.is_one() || trivial {
        write_rational(f, &abs)?;
        first = false;
    }
    write_factors(f, 'x', x, &mut first)?;
    write_factors(f, 'd', d, &mut first)
}

/// Prints in the operator grammar; the output re-parses to the same element.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest terms first reads more naturally
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, &m.x, &m.d, c, k == 0)?;
        }
        Ok(())
    }
}

/// A polynomial in `O = Q[x_1..x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn x(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &Rational) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            let ee = e.iter().zip(exps).map(|(u, v)| u + v).collect();
            out.add_term(ee, a * c);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ee = e.clone();
                ee[i] -= 1;
                out.add_term(ee, c * rat(e[i] as i64));
            }
        }
        out
    }

    /// Embeds into `D` with no `d` factors.
    pub fn to_weyl(&self) -> WeylElement {
        WeylElement::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.clone(), vec![0; self.nvars]), c.clone())),
        )
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &rhs.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out = &out + &rhs.mul_monomial(e, c);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let zero = vec![0; self.nvars];
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, e, &zero, c, k == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> WeylElement {
        WeylElement::x(1, 0)
    }
    fn d() -> WeylElement {
        WeylElement::d(1, 0)
    }
    fn xpow(k: u32) -> Polynomial {
        Polynomial::monomial(vec![k], rat(1))
    }

    #[test]
    fn defining_relation() {
        let lhs = &d() * &x();
        let rhs = &(&x() * &d()) + &WeylElement::one(1);
        assert_eq!(lhs, rhs);
        assert_eq!(&x() * &d(), WeylElement::term(Monomial::new(vec![1], vec![1]), rat(1)));
    }

    #[test]
    fn d_squared_times_x_against_action_oracle() {
        let lhs = &d().pow(2) * &x();
        let expected = &(&x() * &d().pow(2)) + &d().scale(&rat(2));
        assert_eq!(lhs, expected);
        // both sides act identically on x^k
        for k in 0..=6 {
            let f = xpow(k);
            let by_composition = d().act_on_poly(&d().act_on_poly(&x().act_on_poly(&f).unwrap()).unwrap()).unwrap();
            assert_eq!(lhs.act_on_poly(&f).unwrap(), by_composition);
        }
    }

    #[test]
    fn action_examples() {
        assert_eq!(d().act_on_poly(&xpow(3)).unwrap(), Polynomial::monomial(vec![2], rat(3)));
        assert_eq!((&x() * &d()).act_on_poly(&xpow(2)).unwrap(), Polynomial::monomial(vec![2], rat(2)));
        assert_eq!(d().pow(2).act_on_poly(&xpow(4)).unwrap(), Polynomial::monomial(vec![2], rat(12)));
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let a = WeylElement::x(1, 0);
        let b = WeylElement::x(2, 1);
        assert!(matches!(a.multiply(&b), Err(Error::NvarsMismatch { .. })));
        assert!(a.act_on_poly(&Polynomial::one(2)).is_err());
    }

    #[test]
    fn order_and_symbol_examples() {
        let xd = &x() * &d();
        let (o, s) = (&xd + &WeylElement::one(1)).order_and_symbol().unwrap();
        assert_eq!(o, 1);
        assert_eq!(s.len(), 1);
        assert!(s.contains_key(&Monomial::new(vec![1], vec![1])));
        let (o, s) = x().pow(5).order_and_symbol().unwrap();
        assert_eq!((o, s.len()), (0, 1));
        let (o, s) = (&d().pow(2) + &xd).order_and_symbol().unwrap();
        assert_eq!(o, 2);
        assert!(s.contains_key(&Monomial::new(vec![0], vec![2])));
        assert_eq!(WeylElement::zero(1).order_and_symbol(), Err(Error::ZeroInput));
    }

    #[test]
    fn filtration_examples() {
        let xd = &x() * &d();
        let p = &(&d().pow(2) + &xd) + &WeylElement::constant(1, rat(3));
        let parts = p.filtration_decompose();
        assert_eq!(parts, vec![WeylElement::constant(1, rat(3)), xd, d().pow(2)]);
        assert!(WeylElement::zero(1).filtration_decompose().is_empty());
        assert_eq!(x().pow(7).filtration_decompose(), vec![x().pow(7)]);
    }

    #[test]
    fn display_reparses() {
        let p = &(&d().pow(2) + &(&x() * &d()).scale(&ratio(-3, 2))) + &WeylElement::constant(1, rat(-4));
        let text = p.to_string();
        assert_eq!(parse_operator(&text, 1).unwrap(), p);
    }
}
