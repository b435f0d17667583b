//! The coboundary matrices `C^{2n-2} -> C^{2n-1} -> C^{2n}` and their ranks.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{cochain_dims, epsilon_is_negative, monomials};
use crate::colorings::{global_basis_of, Coloring, PermittedSubspace};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::polygon::{Face, ParameterMatrix, PolygonRank, PolygonRelation, SlotScheme};
use crate::scalar::{sign, FieldKind, Scalar};

/// Everything the coboundary maps need from one parameter matrix.
#[derive(Clone)]
pub struct ComplexContext<S> {
    params: ParameterMatrix<S>,
    relation: PolygonRelation<S>,
    subspaces: Vec<PermittedSubspace<S>>,
    global: Vec<Coloring<S>>,
    restrictions: Vec<Matrix<S>>,
}

impl<S: Scalar> ComplexContext<S> {
    pub fn new(m: &ParameterMatrix<S>) -> Result<Self> {
        let scheme = SlotScheme::new(m.rank());
        let relation = PolygonRelation::new(m, &scheme)?;
        let subspaces = relation
            .matrices()
            .iter()
            .map(PermittedSubspace::from_transition)
            .collect();
        let global = global_basis_of(&relation);
        let restrictions = (1..=m.rank().labels())
            .map(|p| {
                let inputs = scheme.inputs(p);
                Matrix::from_fn(inputs.len(), global.len(), |a, s| {
                    global[s].at(inputs[a], p).clone()
                })
            })
            .collect();
        Ok(ComplexContext {
            params: m.clone(),
            relation,
            subspaces,
            global,
            restrictions,
        })
    }

    pub fn params(&self) -> &ParameterMatrix<S> {
        &self.params
    }

    pub fn rank(&self) -> PolygonRank {
        self.params.rank()
    }

    pub fn field(&self) -> FieldKind {
        self.params.field()
    }

    pub fn scheme(&self) -> &SlotScheme {
        self.relation.scheme()
    }

    pub fn relation(&self) -> &PolygonRelation<S> {
        &self.relation
    }

    pub fn subspace(&self, p: usize) -> &PermittedSubspace<S> {
        &self.subspaces[p - 1]
    }

    pub fn global_basis(&self) -> &[Coloring<S>] {
        &self.global
    }

    /// `R_p`: rows are the input faces of `p`, columns the global basis.
    pub fn restriction(&self, p: usize) -> &Matrix<S> {
        &self.restrictions[p - 1]
    }

    /// `v_{i,p}`: the color on face `{i, p}` as a functional of the input
    /// coordinates of `p`.
    pub fn functional(&self, p: usize, i: usize) -> Vec<S> {
        let a = self.relation.matrix(p);
        if let Some(r) = a.inputs.iter().position(|&x| x == i) {
            (0..a.inputs.len())
                .map(|k| if k == r { S::one() } else { S::zero() })
                .collect()
        } else {
            let c = a
                .outputs
                .iter()
                .position(|&x| x == i)
                .expect("every companion is an input or an output");
            a.entries.column(c)
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        cochain_dims(self.rank())
    }

    /// `delta: C^{2n-2} -> C^{2n-1}`; rows are per-simplex polynomial
    /// coefficients in simplex order, columns are faces.
    pub fn low(&self) -> Matrix<S> {
        let rank = self.rank();
        let n = rank.get();
        let mons = monomials(n);
        let block = mons.len();
        let faces = Face::all(rank);
        let mut out = Matrix::zeros(rank.labels() * block, faces.len());
        for (col, f) in faces.iter().enumerate() {
            for p in [f.lo(), f.hi()] {
                let i = f.other(p).unwrap();
                let v = self.functional(p, i);
                let s = sign::<S>(epsilon_is_negative(p, i));
                for (k, &(a, b)) in mons.iter().enumerate() {
                    let mut x = v[a].clone() * &v[b];
                    if a != b {
                        x = x.clone() + x;
                    }
                    out[((p - 1) * block + k, col)] = x * &s;
                }
            }
        }
        out
    }

    /// `delta: C^{2n-1} -> C^{2n}`: `sum_p (-1)^(p-1) R_p^T Q_p R_p` in
    /// polynomial coordinates.
    pub fn high(&self) -> Matrix<S> {
        let rank = self.rank();
        let local = monomials(rank.get());
        let global = monomials(rank.slot_count());
        let mut out = Matrix::zeros(global.len(), rank.labels() * local.len());
        for p in 1..=rank.labels() {
            let r = self.restriction(p);
            let s = sign::<S>((p - 1) % 2 == 1);
            for (k, &(a, b)) in local.iter().enumerate() {
                let col = (p - 1) * local.len() + k;
                for (row, &(u, w)) in global.iter().enumerate() {
                    let mut x = r[(a, u)].clone() * &r[(b, u)];
                    if u != w {
                        x = r[(a, u)].clone() * &r[(b, w)] + r[(a, w)].clone() * &r[(b, u)];
                    }
                    out[(row, col)] = x * &s;
                }
            }
        }
        out
    }

    pub fn coboundary(&self, level: Level) -> Matrix<S> {
        match level {
            Level::Low => self.low(),
            Level::High => self.high(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Low,
    High,
}

pub fn coboundary_matrix<S: Scalar>(m: &ParameterMatrix<S>, level: Level) -> Result<Matrix<S>> {
    Ok(ComplexContext::new(m)?.coboundary(level))
}

/// Dimensions and ranks of the two coboundary maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTable {
    pub n: usize,
    pub field: FieldKind,
    pub dims: [usize; 3],
    pub rank_low: usize,
    pub rank_high: usize,
    pub middle_cohomology_dim: usize,
}

impl RankTable {
    pub fn new(
        n: usize,
        field: FieldKind,
        dims: [usize; 3],
        rank_low: usize,
        rank_high: usize,
    ) -> Self {
        RankTable {
            n,
            field,
            dims,
            rank_low,
            rank_high,
            middle_cohomology_dim: dims[1] - rank_high - rank_low,
        }
    }
}

impl fmt::Display for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} → {} → {}, ranks {}/{}, H = {}",
            self.dims[0],
            self.dims[1],
            self.dims[2],
            self.rank_low,
            self.rank_high,
            self.middle_cohomology_dim
        )
    }
}

/// Exact ranks of both coboundary maps, computed concurrently.
pub fn complex_ranks<S: Scalar>(ctx: &ComplexContext<S>) -> RankTable {
    let (rank_low, rank_high) = rayon::join(|| ctx.low().rank(), || ctx.high().rank());
    RankTable::new(
        ctx.rank().get(),
        ctx.field(),
        ctx.dims(),
        rank_low,
        rank_high,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{all_simplex_vectors, restrict};
    use crate::linalg::dot;
    use crate::polygon::sample_generic_parameters;
    use crate::scalar::Rational;

    fn ctx(rank: PolygonRank, seed: u64) -> ComplexContext<Rational> {
        let m = sample_generic_parameters(rank, FieldKind::Rationals, seed, 10).unwrap();
        ComplexContext::new(&m).unwrap()
    }

    #[test]
    fn shapes() {
        let c = ctx(PolygonRank::HEPTAGON, 1);
        let (lo, hi) = (c.low(), c.high());
        assert_eq!((lo.rows(), lo.cols()), (42, 21));
        assert_eq!((hi.rows(), hi.cols()), (21, 42));
    }

    #[test]
    fn coboundary_squares_to_zero() {
        for rank in PolygonRank::all() {
            let c = ctx(rank, 3);
            assert!(c.high().mul(&c.low()).unwrap().is_zero(), "n={rank}");
        }
    }

    #[test]
    fn functionals_read_colors() {
        let c = ctx(PolygonRank::ENNEAGON, 5);
        let vs = all_simplex_vectors(c.params()).unwrap();
        for p in 1..=9 {
            for sv in vs.iter().take(12) {
                let full = restrict(&sv.coloring, p);
                let inputs: Vec<Rational> = c
                    .scheme()
                    .inputs(p)
                    .iter()
                    .map(|&i| sv.coloring.at(i, p).clone())
                    .collect();
                for i in (1..=9).filter(|&i| i != p) {
                    let idx = if i < p { i - 1 } else { i - 2 };
                    assert_eq!(dot(&c.functional(p, i), &inputs), full[idx]);
                }
            }
        }
    }

    #[test]
    fn heptagon_and_pentagon_ranks() {
        let t = complex_ranks(&ctx(PolygonRank::HEPTAGON, 2));
        assert_eq!(
            (t.dims, t.rank_low, t.rank_high, t.middle_cohomology_dim),
            ([21, 42, 21], 20, 21, 1)
        );
        assert_eq!(t.to_string(), "21 → 42 → 21, ranks 20/21, H = 1");
        let t = complex_ranks(&ctx(PolygonRank::PENTAGON, 2));
        assert_eq!(
            (t.dims, t.rank_low, t.rank_high, t.middle_cohomology_dim),
            ([10, 15, 6], 9, 6, 0)
        );
    }
}
