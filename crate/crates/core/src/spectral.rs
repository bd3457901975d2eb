//! Symmetric eigendecomposition with degenerate-eigenvalue grouping.

use std::ops::Range;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::DenseMatrix;

/// Relative tolerance for treating two eigenvalues as one degenerate level:
/// `|a - b| <= DEGENERACY_TOL * max(1, |a|)`.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Ascending eigenvalues, orthonormal eigenvector columns, and the grouping of
/// eigenvalue indices into degenerate levels.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
    groups: Vec<Range<usize>>,
}

impl SpectralDecomposition {
    /// Decomposes a real symmetric matrix. Only the lower triangle is read.
    pub fn new(h: &DenseMatrix) -> Result<Self> {
        Self::with_tolerance(h, DEGENERACY_TOL)
    }

    pub fn with_tolerance(h: &DenseMatrix, tol: f64) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::DimensionMismatch {
                expected: h.nrows(),
                found: h.ncols(),
            });
        }
        if h.iter().any(|x| !x.is_finite()) {
            return Err(Error::EigensolverFailure("matrix has non-finite entries".into()));
        }
        let n = h.nrows();
        if n == 0 {
            return Ok(Self {
                eigenvalues: DVector::zeros(0),
                eigenvectors: DMatrix::zeros(0, 0),
                groups: Vec::new(),
            });
        }
        let m = faer::Mat::from_fn(n, n, |i, j| h[(i, j)]);
        let eig = m
            .self_adjoint_eigen(faer::Side::Lower)
            .map_err(|e| Error::EigensolverFailure(format!("{e:?}")))?;
        let (s, u) = (eig.S(), eig.U());

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| s[a].total_cmp(&s[b]));
        let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| s[i]));
        let eigenvectors = DMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);

        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            let split = i == n || {
                let (a, b) = (eigenvalues[i - 1], eigenvalues[i]);
                (b - a).abs() > tol * a.abs().max(1.0)
            };
            if split {
                groups.push(start..i);
                start = i;
            }
        }

        Ok(Self {
            eigenvalues,
            eigenvectors,
            groups,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Column `j` is the eigenvector for `eigenvalues()[j]`.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Index ranges of degenerate levels, in ascending eigenvalue order.
    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    /// `V f(Λ) V^T` for a real scalar function of the eigenvalues.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let scaled = DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.eigenvectors[(i, j)] * f(self.eigenvalues[j])
        });
        scaled * self.eigenvectors.transpose()
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        self.apply_fn(|x| x)
    }
}
