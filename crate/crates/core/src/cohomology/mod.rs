//! Quadratic cochain complexes on the boundary of the `2n`-simplex.
//!
//! Degrees follow the move itself. Faces carry degree `2n-2` cochains and
//! the `2n+1` simplices carry degree `2n-1`; the whole move is degree `2n`.

pub mod bockstein;
pub mod cocycle4;
pub mod cocycle5;
pub mod complex;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polygon::PolygonRank;
use crate::scalar::{FieldKind, Scalar};

pub use bockstein::{bockstein_lift, BocksteinCounterexample, BocksteinOutcome, DividedCochain};
pub use cocycle4::{cip_product, cocycle4_coefficients, face_coefficient, scalar_product_4};
pub use cocycle5::{
    cocycle5_gram, dethad, eta_matrix, nontriviality_check, scalar_product_5,
    AlternatingSumOutcome, Edge, FiveCocycle, Nontriviality, WellDefinedness, Witness,
};
pub use complex::{coboundary_matrix, complex_ranks, ComplexContext, Level, RankTable};

/// `epsilon_i^(p)`: `+1` when `i` sits at an odd position of the ascending
/// list `{1..2n+1} \ {p}`, `-1` otherwise.
pub fn epsilon_sign(rank: PolygonRank, p: usize, i: usize) -> Result<i64> {
    rank.check_label(p)?;
    rank.check_label(i)?;
    if i == p {
        return Err(Error::Domain(format!("epsilon undefined for i = p = {p}")));
    }
    Ok(if epsilon_is_negative(p, i) { -1 } else { 1 })
}

pub(crate) fn epsilon_is_negative(p: usize, i: usize) -> bool {
    if i < p {
        (i - 1) % 2 == 1
    } else {
        i % 2 == 1
    }
}

/// Upper-triangle index pairs `(a, b)`, `a <= b < k`, lexicographic.
pub fn monomials(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect()
}

/// Polynomial coefficients of `x -> x^T G x`: `G_aa` and `G_ab + G_ba`.
pub fn gram_to_poly<S: Scalar>(g: &Matrix<S>) -> Vec<S> {
    monomials(g.rows())
        .into_iter()
        .map(|(a, b)| {
            if a == b {
                g[(a, a)].clone()
            } else {
                g[(a, b)].clone() + &g[(b, a)]
            }
        })
        .collect()
}

/// Inverse of [`gram_to_poly`] on symmetric matrices; off-diagonal
/// coefficients are halved.
pub fn poly_to_gram<S: Scalar>(field: FieldKind, k: usize, coefs: &[S]) -> Result<Matrix<S>> {
    let mons = monomials(k);
    if coefs.len() != mons.len() {
        return Err(Error::Dimension {
            expected: format!("{} coefficients", mons.len()),
            found: coefs.len().to_string(),
        });
    }
    let half = S::from_i64(field, 2)?
        .inverse()
        .ok_or(Error::DivisionByZero)?;
    let mut g = Matrix::zeros(k, k);
    for ((a, b), c) in mons.into_iter().zip(coefs) {
        if a == b {
            g[(a, a)] = c.clone();
        } else {
            let h = c.clone() * &half;
            g[(a, b)] = h.clone();
            g[(b, a)] = h;
        }
    }
    Ok(g)
}

/// A quadratic cochain in one of the three degrees of the complex.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadraticCochain<S> {
    /// Degree `2n-2`: coefficient `c` of `c x^2` on each face, lexicographic.
    Faces(Vec<S>),
    /// Degree `2n-1`: a symmetric `n x n` Gram matrix per simplex in
    /// input-face coordinates.
    Simplices(Vec<Matrix<S>>),
    /// Degree `2n`: a symmetric `N x N` Gram matrix in bottom-face
    /// coordinates.
    Global(Matrix<S>),
}

impl<S: Scalar> QuadraticCochain<S> {
    pub fn degree(&self, rank: PolygonRank) -> usize {
        let n = rank.get();
        match self {
            QuadraticCochain::Faces(_) => 2 * n - 2,
            QuadraticCochain::Simplices(_) => 2 * n - 1,
            QuadraticCochain::Global(_) => 2 * n,
        }
    }

    /// Coordinates in the column space of the coboundary matrices.
    pub fn flatten(&self) -> Vec<S> {
        match self {
            QuadraticCochain::Faces(c) => c.clone(),
            QuadraticCochain::Simplices(gs) => gs.iter().flat_map(gram_to_poly).collect(),
            QuadraticCochain::Global(g) => gram_to_poly(g),
        }
    }

    pub fn unflatten(
        rank: PolygonRank,
        field: FieldKind,
        degree: usize,
        values: &[S],
    ) -> Result<Self> {
        let n = rank.get();
        let dims = cochain_dims(rank);
        let check = |expected: usize| -> Result<()> {
            if values.len() == expected {
                Ok(())
            } else {
                Err(Error::Dimension {
                    expected: expected.to_string(),
                    found: values.len().to_string(),
                })
            }
        };
        if degree == 2 * n - 2 {
            check(dims[0])?;
            Ok(QuadraticCochain::Faces(values.to_vec()))
        } else if degree == 2 * n - 1 {
            check(dims[1])?;
            let block = n * (n + 1) / 2;
            let gs = values
                .chunks(block)
                .map(|c| poly_to_gram(field, n, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(QuadraticCochain::Simplices(gs))
        } else if degree == 2 * n {
            check(dims[2])?;
            Ok(QuadraticCochain::Global(poly_to_gram(
                field,
                rank.slot_count(),
                values,
            )?))
        } else {
            Err(Error::Domain(format!(
                "no quadratic cochains in degree {degree} for n = {n}"
            )))
        }
    }

    /// `true` when every Gram matrix is exactly symmetric.
    pub fn is_symmetric(&self) -> bool {
        match self {
            QuadraticCochain::Faces(_) => true,
            QuadraticCochain::Simplices(gs) => gs.iter().all(|g| g.is_symmetric()),
            QuadraticCochain::Global(g) => g.is_symmetric(),
        }
    }
}

/// `(dim C^{2n-2}, dim C^{2n-1}, dim C^{2n})`.
pub fn cochain_dims(rank: PolygonRank) -> [usize; 3] {
    let n = rank.get();
    let slots = rank.slot_count();
    [
        rank.face_count(),
        rank.labels() * n * (n + 1) / 2,
        slots * (slots + 1) / 2,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn epsilon_examples() {
        let h = PolygonRank::HEPTAGON;
        assert_eq!(epsilon_sign(h, 7, 1).unwrap(), 1);
        assert_eq!(epsilon_sign(h, 7, 6).unwrap(), -1);
        assert_eq!(epsilon_sign(h, 2, 3).unwrap(), -1);
        assert!(epsilon_sign(h, 4, 4).is_err());
    }

    #[test]
    fn epsilon_matches_position_parity() {
        for rank in PolygonRank::all() {
            for p in 1..=rank.labels() {
                let others: Vec<usize> = (1..=rank.labels()).filter(|&i| i != p).collect();
                for (pos, &i) in others.iter().enumerate() {
                    let expected = if pos % 2 == 0 { 1 } else { -1 };
                    assert_eq!(epsilon_sign(rank, p, i).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn dims_table() {
        assert_eq!(cochain_dims(PolygonRank::PENTAGON), [10, 15, 6]);
        assert_eq!(cochain_dims(PolygonRank::HEPTAGON), [21, 42, 21]);
        assert_eq!(cochain_dims(PolygonRank::ENNEAGON), [36, 90, 55]);
        assert_eq!(cochain_dims(PolygonRank::HENDECAGON), [55, 165, 120]);
    }

    #[test]
    fn flatten_roundtrip() {
        let g = Matrix::from_rows(vec![
            vec![q(1), q(3), q(-2)],
            vec![q(3), q(5), q(7)],
            vec![q(-2), q(7), q(0)],
        ])
        .unwrap();
        let poly = gram_to_poly(&g);
        assert_eq!(poly, vec![q(1), q(6), q(-4), q(5), q(14), q(0)]);
        let back = poly_to_gram(FieldKind::Rationals, 3, &poly).unwrap();
        assert_eq!(back, g);
        let c = QuadraticCochain::Simplices(vec![g.clone(); 7]);
        let flat = c.flatten();
        assert_eq!(flat.len(), 42);
        let round =
            QuadraticCochain::unflatten(PolygonRank::HEPTAGON, FieldKind::Rationals, 5, &flat)
                .unwrap();
        assert_eq!(round, c);
        assert!(round.is_symmetric());
        assert_eq!(round.degree(PolygonRank::HEPTAGON), 5);
        assert!(QuadraticCochain::unflatten(
            PolygonRank::HEPTAGON,
            FieldKind::Rationals,
            5,
            &flat[1..]
        )
        .is_err());
    }
}
