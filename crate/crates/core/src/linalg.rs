//! Dense matrix helpers sized for this problem: 4x4 Hamiltonians, 3x3
//! McLachlan systems, 2^n readout-confusion matrices. Row-major storage.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

/// Serialized form: dims + row-major data.
#[derive(Serialize, Deserialize)]
struct MatJson {
    dims: [usize; 2],
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Mat {
            n_rows,
            n_cols,
            data: vec![0.0; n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat { n_rows, n_cols, data }
    }

    pub fn from_vec(n_rows: usize, n_cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n_rows * n_cols);
        Mat { n_rows, n_cols, data }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n_cols, other.n_rows);
        let mut out = Mat::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.n_cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n_rows {
            for j in (i + 1)..self.n_cols.min(self.n_rows) {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatJson {
            dims: [self.n_rows, self.n_cols],
            data: self.data.clone(),
        })
        .expect("matrix serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Mat> {
        let mj: MatJson = serde_json::from_value(v.clone())?;
        if mj.data.len() != mj.dims[0] * mj.dims[1] {
            return Err(CoreError::BadMatrixShape("dims * data mismatch", mj.dims[0], mj.dims[1]));
        }
        Ok(Mat::from_vec(mj.dims[0], mj.dims[1], mj.data))
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n_cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n_cols + j]
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues ascending and eigenvectors as matching columns, each
/// normalized with its largest-magnitude component positive.
pub fn jacobi_eigh(a: &Mat) -> Result<(Vec<f64>, Mat)> {
    if !a.is_square() {
        return Err(CoreError::BadMatrixShape("square", a.n_rows, a.n_cols));
    }
    let n = a.n_rows();
    let mut m = a.clone();
    let mut v = Mat::identity(n);
    let scale: f64 = m.data.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let tol = 1e-15 * scale;
    let max_sweeps = 100;

    for _sweep in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off < tol {
            return Ok(sort_eigh(m, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                // tangent of the rotation angle, smaller root for stability
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(CoreError::EigenNoConvergence(max_sweeps))
}

fn sort_eigh(m: Mat, v: Mat) -> (Vec<f64>, Mat) {
    let n = m.n_rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| m[(a, a)].partial_cmp(&m[(b, b)]).unwrap());
    let mut vals = Vec::with_capacity(n);
    let mut vecs = Mat::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        vals.push(m[(old, old)]);
        // fix overall sign: largest-|component| positive
        let mut peak = 0usize;
        for k in 1..n {
            if v[(k, old)].abs() > v[(peak, old)].abs() {
                peak = k;
            }
        }
        let flip = if v[(peak, old)] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            vecs[(k, new)] = flip * v[(k, old)];
        }
    }
    (vals, vecs)
}

/// Solve (A + eps*I) x = b for symmetric A.
///
/// Tries a Cholesky factorization first; if the shifted matrix is not
/// positive definite, falls back to an eigenvalue pseudo-inverse discarding
/// components below 1e-8 times the largest magnitude.
pub fn solve_regularized(a: &Mat, eps: f64, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.n_rows();
    assert!(a.is_square() && b.len() == n);
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] += eps;
    }
    if let Some(x) = cholesky_solve(&shifted, b) {
        return Ok(x);
    }
    let (vals, vecs) = jacobi_eigh(&shifted)?;
    let cutoff = 1e-8 * vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut x = vec![0.0; n];
    for (k, &lam) in vals.iter().enumerate() {
        if lam.abs() <= cutoff {
            continue;
        }
        let proj: f64 = (0..n).map(|i| vecs[(i, k)] * b[i]).sum();
        for i in 0..n {
            x[i] += vecs[(i, k)] * proj / lam;
        }
    }
    Ok(x)
}

fn cholesky_solve(a: &Mat, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.n_rows();
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[(i, i)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    // forward then back substitution
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    Some(x)
}

/// Solve A x = b for a general (not necessarily symmetric) square matrix
/// with partially pivoted Gaussian elimination. Returns None when a pivot
/// collapses below working precision.
pub fn solve_general(a: &Mat, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.n_rows();
    assert!(a.is_square() && b.len() == n);
    let mut m = a.clone();
    let mut x: Vec<f64> = b.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| m[(i, col)].abs().total_cmp(&m[(j, col)].abs()))
            .unwrap();
        if m[(pivot_row, col)].abs() < 1e-300 {
            return None;
        }
        if pivot_row != col {
            for k in 0..n {
                let tmp = m[(col, k)];
                m[(col, k)] = m[(pivot_row, k)];
                m[(pivot_row, k)] = tmp;
            }
            x.swap(col, pivot_row);
        }
        for row in (col + 1)..n {
            let f = m[(row, col)] / m[(col, col)];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[(row, k)] -= f * m[(col, k)];
            }
            x[row] -= f * x[col];
        }
    }
    for row in (0..n).rev() {
        for k in (row + 1)..n {
            x[row] -= m[(row, k)] * x[k];
        }
        x[row] /= m[(row, row)];
    }
    Some(x)
}
