//! Dense matrices of polynomials and their exact determinants.
//!
//! Determinants use fraction-free Bareiss elimination: every intermediate
//! entry is a k×k minor of the original matrix, so the division in each
//! step is exact in the polynomial ring (no rational functions appear).
//! Cofactor expansion would be exponential in the dimension; Bareiss keeps
//! the transfer matrices of large pattern sets (up to the practical bound
//! of 16) tractable.  The test suite checks Bareiss against an independent
//! cofactor-expansion oracle on small matrices.

use std::fmt;

use super::{Coeff, MultiPoly, PolyError, RegistryRef};

/// Practical dimension bound for [`PolyMatrix::det_bareiss`].
pub const MAX_DET_DIM: usize = 16;

/// Square matrix of polynomials over one registry.
///
/// Indices in the public API are 1-based, matching the row/column
/// conventions of the transfer-matrix formulas that consume minors.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<C: Coeff> {
    registry: RegistryRef,
    dim: usize,
    /// Row-major entries; length `dim * dim`.
    entries: Vec<MultiPoly<C>>,
}

impl<C: Coeff> PolyMatrix<C> {
    /// Builds from rows, requiring a square shape and one shared registry.
    pub fn from_rows(
        registry: &RegistryRef,
        rows: Vec<Vec<MultiPoly<C>>>,
    ) -> Result<Self, PolyError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(PolyError::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    d: dim,
                });
            }
            for e in row {
                // Surface registry mismatches at construction time.
                e.checked_add(&MultiPoly::zero(registry))?;
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            registry: registry.clone(),
            dim,
            entries,
        })
    }

    /// The 0×0 matrix (determinant 1 by the empty-product convention).
    pub fn empty(registry: &RegistryRef) -> Self {
        PolyMatrix {
            registry: registry.clone(),
            dim: 0,
            entries: Vec::new(),
        }
    }

    pub fn identity(registry: &RegistryRef, dim: usize) -> Self {
        let mut entries = vec![MultiPoly::zero(registry); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = MultiPoly::one(registry);
        }
        PolyMatrix {
            registry: registry.clone(),
            dim,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn registry(&self) -> &RegistryRef {
        &self.registry
    }

    /// Entry at 1-based row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly<C> {
        assert!(
            (1..=self.dim).contains(&i) && (1..=self.dim).contains(&j),
            "entry index out of range"
        );
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    /// `I − self`, the matrix whose determinant the transfer method inverts.
    pub fn one_minus(&self) -> Self {
        let mut out = Self::identity(&self.registry, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let idx = i * self.dim + j;
                out.entries[idx] = &out.entries[idx] - &self.entries[idx];
            }
        }
        out
    }

    /// Removes 1-based row `i` and column `j`, preserving the order of the
    /// remaining rows and columns.  The minor of a 1×1 matrix is the 0×0
    /// matrix, whose determinant is 1.
    pub fn minor(&self, i: usize, j: usize) -> Result<Self, PolyError> {
        if !(1..=self.dim).contains(&i) || !(1..=self.dim).contains(&j) {
            return Err(PolyError::IndexOutOfRange {
                i,
                j,
                d: self.dim,
            });
        }
        let d = self.dim - 1;
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..self.dim {
            if r == i - 1 {
                continue;
            }
            for c in 0..self.dim {
                if c == j - 1 {
                    continue;
                }
                entries.push(self.entries[r * self.dim + c].clone());
            }
        }
        Ok(PolyMatrix {
            registry: self.registry.clone(),
            dim: d,
            entries,
        })
    }

    /// Exact determinant by fraction-free Bareiss elimination with row
    /// pivoting; every division is exact by the Sylvester identity (and is
    /// asserted to be, via [`MultiPoly::exact_div`]).
    pub fn det_bareiss(&self) -> Result<MultiPoly<C>, PolyError> {
        if self.dim > MAX_DET_DIM {
            return Err(PolyError::DimensionBound {
                d: self.dim,
                max: MAX_DET_DIM,
            });
        }
        let n = self.dim;
        if n == 0 {
            return Ok(MultiPoly::one(&self.registry));
        }
        let mut m: Vec<Vec<MultiPoly<C>>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut negate = false;
        let mut prev = MultiPoly::one(&self.registry);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // Pivot: find a row below with a nonzero entry in column k.
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(MultiPoly::zero(&self.registry)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = t.exact_div(&prev)?;
                }
                m[i][k] = MultiPoly::zero(&self.registry);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.neg_ref() } else { det })
    }
}

impl<C: Coeff> fmt::Debug for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.dim, self.dim)?;
        for i in 1..=self.dim {
            let row: Vec<String> = (1..=self.dim)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
