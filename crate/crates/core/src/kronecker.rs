//! Minimal-degree polynomial kernel vectors of a square pencil `M0 + x·M1`.
//!
//! A nonzero `f(x) = f_0 + f_1 x + … + f_d x^d` with `(M0 + x·M1) f(x) = 0`
//! is the same thing as a kernel vector `(f_0; …; f_d)` of the block matrix
//!
//! ```text
//!     [ M0             ]
//!     [ M1  M0         ]
//! C = [     M1  ⋱      ]      ((d+2)·n rows, (d+1)·n columns)
//!     [         ⋱  M0  ]
//!     [            M1  ]
//! ```
//!
//! The minimal degree `d` is the first one where `C` loses full column rank;
//! at that `d` the first `n·d` columns (the previous `C` padded with zeros)
//! are still independent. A singular `n×n` pencil always has a solution of
//! degree at most `n − 1`, so the search stops there.

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{det_polymat, Matrix, Poly, PolyMat, PolyVec};
use crate::pencil::{linear_pencil, shift_m1, toeplitz_m0, PencilInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KroneckerError {
    #[error("pencil matrices must be square and equal-sized, got {0}x{1} and {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("extracted kernel vector does not annihilate the pencil")]
    IdentityFailed,
}

/// A square pencil with no constraints on its entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPencil<F: Field> {
    field: F,
    m0: Matrix<F::Elem>,
    m1: Matrix<F::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KroneckerResult<E> {
    pub minimal_index: usize,
    /// Degree exactly `minimal_index`.
    pub kernel: PolyVec<E>,
}

impl<F: Field> BlockPencil<F> {
    pub fn new(field: F, m0: Matrix<F::Elem>, m1: Matrix<F::Elem>) -> Result<Self, KroneckerError> {
        if !m0.is_square() || m0.rows() != m1.rows() || m0.cols() != m1.cols() {
            return Err(KroneckerError::Shape(m0.rows(), m0.cols(), m1.rows(), m1.cols()));
        }
        Ok(BlockPencil { field, m0, m1 })
    }

    pub fn from_instance(p: &PencilInstance<F>) -> Self {
        BlockPencil {
            field: p.field().clone(),
            m0: p.m0(),
            m1: p.m1(),
        }
    }

    /// Töplitz pencil from arbitrary coefficients; zeros are allowed here.
    pub fn toeplitz(field: F, c: &[F::Elem]) -> Result<Self, KroneckerError> {
        if c.len() < 3 {
            return Err(KroneckerError::Shape(c.len(), 0, 0, 0));
        }
        let m0 = toeplitz_m0(&field, c);
        let m1 = shift_m1(&field, c.len() - 1);
        Ok(BlockPencil { field, m0, m1 })
    }

    pub fn n(&self) -> usize {
        self.m0.rows()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn pencil(&self) -> PolyMat<F::Elem> {
        linear_pencil(&self.field, &self.m0, &self.m1)
    }

    pub fn is_singular(&self) -> bool {
        det_polymat(&self.field, &self.pencil())
            .expect("square")
            .is_zero()
    }

    /// The block matrix with `d + 1` block columns.
    pub fn build_c(&self, d: usize) -> Matrix<F::Elem> {
        let n = self.n();
        Matrix::from_fn((d + 2) * n, (d + 1) * n, |i, j| {
            let (bi, bj) = (i / n, j / n);
            let (ii, jj) = (i % n, j % n);
            if bi == bj {
                self.m0[(ii, jj)].clone()
            } else if bi == bj + 1 {
                self.m1[(ii, jj)].clone()
            } else {
                self.field.zero()
            }
        })
    }

    /// Smallest `d ≤ n − 1` at which the block matrix is column-rank
    /// deficient; `None` for a regular pencil.
    pub fn minimal_index(&self) -> Option<usize> {
        (0..self.n()).find(|&d| {
            let c = self.build_c(d);
            c.rank(&self.field) < c.cols()
        })
    }

    /// A kernel vector of minimal degree, scaled so that its first nonzero
    /// stacked coefficient is 1, and checked against the pencil.
    pub fn kernel_poly(&self) -> Result<Option<KroneckerResult<F::Elem>>, KroneckerError> {
        let f = &self.field;
        let Some(d) = self.minimal_index() else {
            return Ok(None);
        };
        let basis = self.build_c(d).kernel_basis(f);
        let mut v = basis.into_iter().next().expect("rank deficient");
        let lead = v.iter().find(|e| !f.is_zero(e)).expect("basis vector is nonzero").clone();
        let lead_inv = f.inv(&lead).expect("nonzero");
        for e in v.iter_mut() {
            *e = f.mul(&lead_inv, e);
        }
        let n = self.n();
        let kernel: PolyVec<F::Elem> = (0..n)
            .map(|row| Poly::from_coeffs(f, (0..=d).map(|k| v[k * n + row].clone()).collect()))
            .collect();
        let image = self.pencil().mul_polyvec(f, &kernel).expect("shapes agree");
        let degree = kernel.iter().map(Poly::degree).max().and_then(|g| g.finite());
        if image.iter().any(|p| !p.is_zero()) || degree != Some(d) {
            return Err(KroneckerError::IdentityFailed);
        }
        Ok(Some(KroneckerResult {
            minimal_index: d,
            kernel,
        }))
    }
}
