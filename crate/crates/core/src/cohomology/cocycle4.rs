//! The quadratic `(2n-2)`-cocycle.

use super::{epsilon_is_negative, QuadraticCochain};
use crate::colorings::Coloring;
use crate::error::{Error, Result};
use crate::polygon::{Face, ParameterMatrix};
use crate::scalar::{sign, Scalar};

/// `c_{i,p}` as a product over the edges of face `{i, p}`: every pair
/// `a < b` of labels other than `i, p` contributes `d_{a b p}`.
pub fn cip_product<S: Scalar>(m: &ParameterMatrix<S>, i: usize, p: usize) -> S {
    let l = m.rank().labels();
    let mut acc = S::one();
    for a in (1..=l).filter(|&a| a != i && a != p) {
        for b in (a + 1..=l).filter(|&b| b != i && b != p) {
            acc = acc * m.d(a, b, p);
        }
    }
    acc
}

/// Coefficient of the cocycle on face `{i, p}`, consistent between the two
/// simplices sharing the face:
///
/// `c_{i,p} = (-1)^p cip_product(i, p) / prod_{a < b; a, b != p} d_{a b p}`
/// `        = (-1)^p / prod_{a != i, p} d_{min(a,i) max(a,i) p}`.
///
/// The right-hand side does not depend on which label of the face plays `p`.
/// On a single simplex `p` it differs from `cip_product` by a factor that
/// depends only on `p`.
pub fn face_coefficient<S: Scalar>(m: &ParameterMatrix<S>, i: usize, p: usize) -> Result<S> {
    let rank = m.rank();
    rank.check_label(i)?;
    rank.check_label(p)?;
    if i == p {
        return Err(Error::Domain(format!("no face {{{i},{p}}}")));
    }
    let den = (1..=rank.labels())
        .filter(|&a| a != i && a != p)
        .fold(S::one(), |acc, a| acc * m.d(a.min(i), a.max(i), p));
    sign::<S>(p % 2 == 1).checked_div(&den)
}

/// The cocycle as a degree `2n-2` cochain, faces in lexicographic order.
pub fn cocycle4_coefficients<S: Scalar>(m: &ParameterMatrix<S>) -> Result<QuadraticCochain<S>> {
    Face::all(m.rank())
        .into_iter()
        .map(|f| face_coefficient(m, f.lo(), f.hi()))
        .collect::<Result<Vec<_>>>()
        .map(QuadraticCochain::Faces)
}

/// `<x, y>^(p) = sum_{i != p} epsilon_i^(p) c_{i,p} x_{i,p} y_{i,p}` with
/// `c_{i,p}` from [`cip_product`].
pub fn scalar_product_4<S: Scalar>(
    m: &ParameterMatrix<S>,
    p: usize,
    x: &Coloring<S>,
    y: &Coloring<S>,
) -> S {
    (1..=m.rank().labels())
        .filter(|&i| i != p)
        .fold(S::zero(), |acc, i| {
            let term = cip_product(m, i, p) * x.at(i, p) * y.at(i, p);
            acc + term * sign::<S>(epsilon_is_negative(p, i))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::complex::ComplexContext;
    use crate::colorings::{all_simplex_vectors, simplex_vector};
    use crate::polygon::{sample_generic_parameters, PolygonRank};
    use crate::scalar::{FieldKind, Rational};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(rank: PolygonRank, seed: u64) -> ParameterMatrix<Rational> {
        sample_generic_parameters(rank, FieldKind::Rationals, seed, 10).unwrap()
    }

    #[test]
    fn heptagon_c17_is_ten_edge_product() {
        let m = params(PolygonRank::HEPTAGON, 1);
        let edges = [
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 4),
            (3, 5),
            (3, 6),
            (4, 5),
            (4, 6),
            (5, 6),
        ];
        let oracle = edges
            .iter()
            .fold(Rational::from_integer(1.into()), |acc, &(a, b)| {
                acc * m.d(a, b, 7)
            });
        assert_eq!(cip_product(&m, 1, 7), oracle);
    }

    #[test]
    fn pentagon_cip_has_three_factors() {
        let m = params(PolygonRank::PENTAGON, 4);
        let oracle = m.d(2, 3, 5).clone() * m.d(2, 4, 5) * m.d(3, 4, 5);
        assert_eq!(cip_product(&m, 1, 5), oracle);
        for i in 1..=5 {
            for p in (1..=5).filter(|&p| p != i) {
                assert!(!cip_product(&m, i, p).is_zero());
            }
        }
    }

    #[test]
    fn face_coefficient_is_symmetric() {
        for rank in PolygonRank::all() {
            let m = params(rank, 6);
            for f in Face::all(rank) {
                let a = face_coefficient(&m, f.lo(), f.hi()).unwrap();
                let b = face_coefficient(&m, f.hi(), f.lo()).unwrap();
                assert_eq!(a, b, "face {f}, n={rank}");
            }
        }
    }

    #[test]
    fn face_coefficient_is_rescaled_product() {
        let m = params(PolygonRank::HEPTAGON, 2);
        for p in 1..=7 {
            let pi = (1..=7usize)
                .filter(|&a| a != p)
                .flat_map(|a| ((a + 1)..=7).filter(move |&b| b != p).map(move |b| (a, b)))
                .fold(Rational::from_integer(1.into()), |acc, (a, b)| {
                    acc * m.d(a, b, p)
                });
            for i in (1..=7).filter(|&i| i != p) {
                let expected = cip_product(&m, i, p) / &pi
                    * Rational::from_integer(if p % 2 == 1 { -1 } else { 1 }.into());
                assert_eq!(face_coefficient(&m, i, p).unwrap(), expected);
            }
        }
    }

    #[test]
    fn edge_products_vanish_with_two_summands() {
        let m = params(PolygonRank::HEPTAGON, 3);
        let x = simplex_vector(&m, &[1, 2]).unwrap().coloring;
        let y = simplex_vector(&m, &[3, 4]).unwrap().coloring;
        assert!(scalar_product_4(&m, 7, &x, &y).is_zero());
        let nonzero: Vec<usize> = (1..=6)
            .filter(|&i| !(x.at(i, 7).clone() * y.at(i, 7)).is_zero())
            .collect();
        assert_eq!(nonzero, vec![5, 6]);
        let zero = Coloring::zero(PolygonRank::HEPTAGON);
        assert!(scalar_product_4(&m, 7, &zero, &zero).is_zero());
    }

    #[test]
    fn random_permitted_pairs_are_isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for rank in PolygonRank::all() {
            let m = params(rank, 7);
            let vs = all_simplex_vectors(&m).unwrap();
            let mut combo = || {
                vs.iter().fold(Coloring::zero(rank), |acc, v| {
                    acc.add_scaled(
                        &Rational::from_integer(rng.gen_range(-3..=3).into()),
                        &v.coloring,
                    )
                })
            };
            let (x, y) = (combo(), combo());
            for p in 1..=rank.labels() {
                assert!(scalar_product_4(&m, p, &x, &y).is_zero(), "n={rank}, p={p}");
            }
        }
    }

    #[test]
    fn cocycle_spans_kernel_of_low() {
        for rank in PolygonRank::all() {
            let m = params(rank, 8);
            let ctx = ComplexContext::new(&m).unwrap();
            let low = ctx.low();
            let c = cocycle4_coefficients(&m).unwrap().flatten();
            assert!(
                low.mul_vec(&c).unwrap().iter().all(|v| v.is_zero()),
                "n={rank}"
            );
            let k = low.kernel_basis();
            assert_eq!(k.len(), 1);
            let ratio = k[0][0].clone() / &c[0];
            assert!(k[0].iter().zip(&c).all(|(a, b)| *a == ratio.clone() * b));
        }
    }
}
