//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational matrices are first scaled row by row to primitive integer rows.
//! After `k` pivot steps every live entry is a `(k+1)`-minor of that integer
//! matrix, so the division by the previous pivot is always exact and entry
//! sizes stay bounded by the Hadamard bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::Matrix;
use crate::scalar::Rational;

/// Rows above this many entries per step are updated in parallel.
const PARALLEL_WORK: usize = 4096;

/// Clears denominators row by row and removes the content of each row.
pub fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut ints: Vec<BigInt> =
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            let content = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in ints.iter_mut() {
                    *x = &*x / &content;
                }
            }
            ints
        })
        .collect()
}

/// One Bareiss step on `row` with pivot row `pivot_row`, pivot column `c`.
fn update_row(row: &mut [BigInt], pivot_row: &[BigInt], c: usize, from: usize, prev: &BigInt) {
    let pivot = &pivot_row[c];
    let factor = row[c].clone();
    for j in from..row.len() {
        let v = if factor.is_zero() || pivot_row[j].is_zero() {
            pivot * &row[j]
        } else {
            pivot * &row[j] - &factor * &pivot_row[j]
        };
        row[j] = if prev.is_one() { v } else { v / prev };
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn eliminate(input: &[Vec<BigInt>], ncols: usize, reduce_above: bool) -> Echelon {
    let mut a = input.to_vec();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        let pivot_row: &[BigInt] = pivot_row;
        let work = (nrows - r) * (ncols - c);
        if work > PARALLEL_WORK {
            below
                .par_iter_mut()
                .for_each(|row| update_row(row, pivot_row, c, c, &prev));
            if reduce_above {
                head.par_iter_mut()
                    .for_each(|row| update_row(row, pivot_row, c, 0, &prev));
            }
        } else {
            for row in below.iter_mut() {
                update_row(row, pivot_row, c, c, &prev);
            }
            if reduce_above {
                for row in head.iter_mut() {
                    update_row(row, pivot_row, c, 0, &prev);
                }
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    eliminate(rows, ncols, false).pivots.len()
}

/// Integer kernel basis from fraction-free Gauss-Jordan elimination.
///
/// After full reduction every pivot entry equals the last pivot `D`, so for a
/// free column `f` the vector with `D` at `f` and `-R[k][f]` at pivot column
/// `k` is annihilated. Each vector is made primitive with a positive entry at
/// its free column.
pub fn kernel_basis(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let Echelon { rows: red, pivots } = eliminate(rows, ncols, true);
    let d = red
        .last()
        .zip(pivots.last())
        .map_or_else(BigInt::one, |(row, &c)| row[c].clone());
    let mut out = Vec::new();
    let mut next = 0;
    for free in 0..ncols {
        if next < pivots.len() && pivots[next] == free {
            next += 1;
            continue;
        }
        let mut v = vec![BigInt::zero(); ncols];
        v[free] = d.clone();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -red[k][free].clone();
        }
        let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let flip = v[free].is_negative();
        for x in v.iter_mut() {
            *x = &*x / &content;
            if flip {
                *x = -&*x;
            }
        }
        out.push(v);
    }
    out
}
