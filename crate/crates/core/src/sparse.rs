//! Row-compressed view of a dense operator for the time-stepping loops.
//! Graph operators are mostly zeros; skipping them keeps long integrations cheap.

use crate::graph::DenseMatrix;

#[derive(Debug, Clone)]
pub(crate) struct RowCompressed {
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl RowCompressed {
    pub(crate) fn from_dense(m: &DenseMatrix) -> Self {
        let mut row_start = Vec::with_capacity(m.nrows() + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_start.push(0);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let x = m[(i, j)];
                if x != 0.0 {
                    cols.push(j);
                    vals.push(x);
                }
            }
            row_start.push(cols.len());
        }
        Self {
            row_start,
            cols,
            vals,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.row_start.len() - 1
    }

    /// `out = M x`.
    pub(crate) fn mul_into(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_start[i]..self.row_start[i + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *o = acc;
        }
    }

    /// `out = M x` for a complex vector stored as separate real and imaginary parts.
    pub(crate) fn mul_complex_into(&self, re: &[f64], im: &[f64], out_re: &mut [f64], out_im: &mut [f64]) {
        for i in 0..self.dim() {
            let (mut ar, mut ai) = (0.0, 0.0);
            for k in self.row_start[i]..self.row_start[i + 1] {
                let c = self.cols[k];
                ar += self.vals[k] * re[c];
                ai += self.vals[k] * im[c];
            }
            out_re[i] = ar;
            out_im[i] = ai;
        }
    }

    /// Gershgorin bound on the spectral radius.
    pub(crate) fn gershgorin_bound(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                self.vals[self.row_start[i]..self.row_start[i + 1]]
                    .iter()
                    .map(|v| v.abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}
