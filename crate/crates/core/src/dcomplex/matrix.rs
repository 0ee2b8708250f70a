use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::FreeModuleElement;
use crate::weyl::{Rational, WeylElement};

/// Matrix of a left-linear map `D^rows -> D^cols`: row `i` is the image of
/// the `i`-th unit vector, and vectors multiply on the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DMatrix {
    nvars: usize,
    cols: usize,
    rows: Vec<FreeModuleElement>,
}

impl DMatrix {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        DMatrix {
            nvars,
            cols,
            rows: vec![FreeModuleElement::zero(nvars, cols); rows],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        DMatrix {
            nvars,
            cols: n,
            rows: (0..n).map(|i| FreeModuleElement::unit(nvars, n, i)).collect(),
        }
    }

    pub fn from_rows(nvars: usize, cols: usize, rows: Vec<FreeModuleElement>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.rank() != cols {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.rank()
                )));
            }
            if r.nvars() != nvars {
                return Err(Error::NvarsMismatch {
                    left: nvars,
                    right: r.nvars(),
                });
            }
        }
        Ok(DMatrix { nvars, cols, rows })
    }

    pub fn from_entries(nvars: usize, cols: usize, entries: Vec<Vec<WeylElement>>) -> Result<Self> {
        let rows = entries
            .into_iter()
            .map(|r| FreeModuleElement::new(nvars, r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(nvars, cols, rows)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[FreeModuleElement] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &FreeModuleElement {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &WeylElement {
        self.rows[i].coord(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: WeylElement) {
        self.rows[i].set(j, value);
    }

    pub fn set_row(&mut self, i: usize, row: FreeModuleElement) {
        assert_eq!(row.rank(), self.cols);
        self.rows[i] = row;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(FreeModuleElement::is_zero)
    }

    pub fn apply(&self, v: &FreeModuleElement) -> FreeModuleElement {
        v.apply(&self.rows, self.cols)
    }

    /// The composite "first `self`, then `other`".
    pub fn then(&self, other: &DMatrix) -> DMatrix {
        assert_eq!(self.cols, other.nrows(), "inner dimensions differ");
        DMatrix {
            nvars: self.nvars,
            cols: other.cols,
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    pub fn add(&self, other: &DMatrix) -> DMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        DMatrix {
            nvars: self.nvars,
            cols: self.cols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> DMatrix {
        DMatrix {
            nvars: self.nvars,
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &DMatrix, b: &DMatrix, c: &DMatrix, d: &DMatrix) -> DMatrix {
        assert_eq!(a.nrows(), b.nrows());
        assert_eq!(c.nrows(), d.nrows());
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut rows: Vec<FreeModuleElement> = a.rows.iter().zip(&b.rows).map(|(x, y)| x.concat(y)).collect();
        rows.extend(c.rows.iter().zip(&d.rows).map(|(x, y)| x.concat(y)));
        DMatrix {
            nvars: a.nvars,
            cols: a.cols + b.cols,
            rows,
        }
    }

    pub fn block_diagonal(a: &DMatrix, d: &DMatrix) -> DMatrix {
        let b = DMatrix::zero(a.nvars, a.nrows(), d.cols);
        let c = DMatrix::zero(a.nvars, d.nrows(), a.cols);
        Self::blocks(a, &b, &c, d)
    }

    pub fn max_degree(&self) -> u32 {
        self.rows.iter().map(FreeModuleElement::total_degree).max().unwrap_or(0)
    }
}

impl fmt::Display for DMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}
