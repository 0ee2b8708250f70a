use std::collections::HashMap;

use super::{ChainMap, DMatrix, FreeDComplex};
use crate::error::{Error, Result};
use crate::groebner::FreeModuleElement;
use crate::weyl::{Polynomial, WeylElement};

/// A free `O`-module `O^s` made into a `D`-module by a flat connection:
/// `d_i . e_j = sum_k A_i[k][j] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionModule {
    nvars: usize,
    rank: usize,
    /// `matrices[i][k][j]`
    matrices: Vec<Vec<Vec<Polynomial>>>,
}

fn mat_mul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>], nvars: usize) -> Vec<Vec<Polynomial>> {
    let s = a.len();
    (0..s)
        .map(|k| {
            (0..s)
                .map(|j| (0..s).fold(Polynomial::zero(nvars), |acc, l| &acc + &(&a[k][l] * &b[l][j])))
                .collect()
        })
        .collect()
}

impl ConnectionModule {
    pub fn new(nvars: usize, matrices: Vec<Vec<Vec<Polynomial>>>) -> Result<Self> {
        if matrices.len() != nvars {
            return Err(Error::InvalidArgument(format!(
                "need one connection matrix per variable ({nvars}), got {}",
                matrices.len()
            )));
        }
        let rank = matrices.first().map(Vec::len).unwrap_or(0);
        for a in &matrices {
            if a.len() != rank || a.iter().any(|row| row.len() != rank) {
                return Err(Error::MalformedMatrix("connection matrices must be square of equal size".into()));
            }
        }
        // [d_i + A_i, d_j + A_j] = d_i(A_j) - d_j(A_i) + A_i A_j - A_j A_i
        for i in 0..nvars {
            for j in (i + 1)..nvars {
                let ab = mat_mul(&matrices[i], &matrices[j], nvars);
                let ba = mat_mul(&matrices[j], &matrices[i], nvars);
                for k in 0..rank {
                    for l in 0..rank {
                        let curv = &(&(&matrices[j][k][l].derivative(i) - &matrices[i][k][l].derivative(j)) + &ab[k][l])
                            - &ba[k][l];
                        if !curv.is_zero() {
                            return Err(Error::NotFlat { i, j });
                        }
                    }
                }
            }
        }
        Ok(ConnectionModule { nvars, rank, matrices })
    }

    /// `O` itself with `d_i` acting by differentiation.
    pub fn trivial(nvars: usize) -> Self {
        ConnectionModule {
            nvars,
            rank: 1,
            matrices: vec![vec![vec![Polynomial::zero(nvars)]]; nvars],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn matrix(&self, i: usize) -> &[Vec<Polynomial>] {
        &self.matrices[i]
    }

    /// Coordinates, in the free basis `1 ⊗ e_k` of `D ⊗_O M`, of `d^beta ⊗ e_j`.
    fn express_derivative(
        &self,
        beta: &[u32],
        j: usize,
        memo: &mut HashMap<(Vec<u32>, usize), FreeModuleElement>,
    ) -> FreeModuleElement {
        let key = (beta.to_vec(), j);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let out = match beta.iter().position(|&b| b > 0) {
            None => FreeModuleElement::unit(self.nvars, self.rank, j),
            Some(i) => {
                // d_i P ⊗ m = d_i.(P ⊗ m) - P ⊗ (nabla_i m)
                let mut lower = beta.to_vec();
                lower[i] -= 1;
                let base = self.express_derivative(&lower, j, memo);
                let mut acc = base.left_mul(&WeylElement::d(self.nvars, i));
                for k in 0..self.rank {
                    let a = &self.matrices[i][k][j];
                    if a.is_zero() {
                        continue;
                    }
                    let part = self.express_derivative(&lower, k, memo).left_mul(&a.to_weyl());
                    acc = acc.sub(&part);
                }
                acc
            }
        };
        memo.insert(key, out.clone());
        out
    }

    /// Coordinates of `P ⊗ e_j` in the basis `1 ⊗ e_k`.
    pub fn express(&self, p: &WeylElement, j: usize) -> FreeModuleElement {
        let mut memo = HashMap::new();
        let mut acc = FreeModuleElement::zero(self.nvars, self.rank);
        for (m, c) in p.terms() {
            let xpart = WeylElement::term(crate::weyl::Monomial::new(m.x.clone(), vec![0; self.nvars]), c.clone());
            let v = self.express_derivative(&m.d, j, &mut memo).left_mul(&xpart);
            acc = acc.add(&v);
        }
        acc
    }
}

/// `C ⊗_O M` as a free complex, through `D ⊗_O M ≅ D^s`, `1 ⊗ e_j ↦ e_j`.
pub fn tensor_with_connection(c: &FreeDComplex, m: &ConnectionModule) -> Result<FreeDComplex> {
    if c.nvars() != m.nvars() {
        return Err(Error::NvarsMismatch {
            left: c.nvars(),
            right: m.nvars(),
        });
    }
    let nvars = c.nvars();
    let ranks: Vec<usize> = (0..=c.top()).map(|n| c.rank(n) * m.rank()).collect();
    let diffs = (1..=c.top()).map(|n| tensor_matrix(&c.differential(n), m)).collect();
    FreeDComplex::new(nvars, ranks, diffs)
}

/// `f ⊗ Id_M` between the complexes built by [`tensor_with_connection`].
pub fn tensor_map_with_connection(f: &ChainMap, m: &ConnectionModule) -> Result<ChainMap> {
    let src = tensor_with_connection(f.source(), m)?;
    let tgt = tensor_with_connection(f.target(), m)?;
    let maps = (0..=f.top()).map(|n| tensor_matrix(&f.component(n), m)).collect();
    ChainMap::new(src, tgt, maps)
}

/// Rewrites a matrix acting on `D^r` as one acting on `(D ⊗_O M)^r ≅ D^{rs}`.
fn tensor_matrix(d: &DMatrix, m: &ConnectionModule) -> DMatrix {
    let s = m.rank();
    let nvars = d.nvars();
    let cols = d.ncols() * s;
    let mut out = DMatrix::zero(nvars, d.nrows() * s, cols);
    for k in 0..d.nrows() {
        for j in 0..s {
            let mut row = FreeModuleElement::zero(nvars, cols);
            for l in 0..d.ncols() {
                let p = d.entry(k, l);
                if p.is_zero() {
                    continue;
                }
                let v = m.express(p, j);
                for t in 0..s {
                    let idx = l * s + t;
                    row.set(idx, row.coord(idx) + v.coord(t));
                }
            }
            out.set_row(k * s + j, row);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::homology;
    use crate::weyl::parse_operator;

    fn op(s: &str) -> WeylElement {
        parse_operator(s, 1).unwrap()
    }

    #[test]
    fn unit_connection_is_neutral() {
        let c = FreeDComplex::new(1, vec![1, 1], vec![DMatrix::from_entries(1, 1, vec![vec![op("d1 + x1")]]).unwrap()]).unwrap();
        assert_eq!(tensor_with_connection(&c, &ConnectionModule::trivial(1)).unwrap(), c);
    }

    #[test]
    fn twisting_by_x() {
        let c = FreeDComplex::new(1, vec![1, 1], vec![DMatrix::from_entries(1, 1, vec![vec![op("d1")]]).unwrap()]).unwrap();
        let m = ConnectionModule::new(1, vec![vec![vec![Polynomial::x(1, 0)]]]).unwrap();
        let t = tensor_with_connection(&c, &m).unwrap();
        assert_eq!(t.differential(1).entry(0, 0), &op("d1 - x1"));
        assert!(homology(&t, 1).unwrap().is_zero());
    }

    #[test]
    fn flatness_enforced() {
        // A_1 = 0, A_2 = x1: curvature d_1(A_2) = 1
        let x1 = Polynomial::x(2, 0);
        let zero = Polynomial::zero(2);
        let r = ConnectionModule::new(2, vec![vec![vec![zero]], vec![vec![x1]]]);
        assert!(matches!(r, Err(Error::NotFlat { .. })));
    }
}
