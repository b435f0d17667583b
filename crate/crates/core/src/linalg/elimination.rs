//! Ordinary Gauss-Jordan elimination over a field.
//!
//! Pivots are the first nonzero entry in column order, so results are
//! deterministic.

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

struct Reduced<S> {
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form with unit pivots.
fn rref<S: Scalar>(m: &Matrix<S>) -> Reduced<S> {
    let mut rows = m.to_rows();
    let ncols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Reduced { rows, pivots }
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    rref(m).pivots.len()
}

pub fn kernel_basis<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let Reduced { rows, pivots } = rref(m);
    let ncols = m.cols();
    let mut out = Vec::new();
    let mut next_pivot = 0;
    for free in 0..ncols {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![S::zero(); ncols];
        v[free] = S::one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[k][free].clone();
        }
        out.push(v);
    }
    out
}

pub fn det<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.rows();
    let mut rows = m.to_rows();
    let mut acc = S::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return S::zero();
        };
        if p != c {
            rows.swap(p, c);
            acc = -acc;
        }
        acc = acc * &rows[c][c];
        let inv = rows[c][c].inverse().expect("pivot is nonzero");
        let pivot_row = rows[c].clone();
        for row in rows.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone() * &inv;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = x.clone() - f.clone() * y;
            }
        }
    }
    acc
}

pub fn inverse<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let augmented = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m[(r, c)].clone()
        } else if c - n == r {
            S::one()
        } else {
            S::zero()
        }
    });
    let Reduced { rows, pivots } = rref(&augmented);
    if (0..n).any(|i| pivots.get(i) != Some(&i)) {
        return Err(Error::DivisionByZero);
    }
    Ok(Matrix::from_fn(n, n, |r, c| rows[r][n + c].clone()))
}
