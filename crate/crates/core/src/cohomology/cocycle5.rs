//! The quadratic heptagon 5-cocycle and the `dethad` polynomial.

use serde::{Deserialize, Serialize};

use super::complex::ComplexContext;
use super::QuadraticCochain;
use crate::colorings::{input_coords, lambda_dependence, simplex_vector, Coloring};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polygon::{ParameterMatrix, PolygonRank};
use crate::scalar::{sign, Scalar};

/// An edge `{i, j}` of the 6-simplex, stored with `i < j`.
pub type Edge = (usize, usize);

fn require_heptagon(rank: PolygonRank) -> Result<()> {
    if rank == PolygonRank::HEPTAGON {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "the 5-cocycle is defined for n = 3, got n = {rank}"
        )))
    }
}

/// `eta_p`: rows `alpha^2, beta^2, gamma^2, alpha beta, alpha gamma,
/// beta gamma` over the columns `!= p` in ascending order.
pub fn eta_matrix<S: Scalar>(m: &ParameterMatrix<S>, p: usize) -> Result<Matrix<S>> {
    require_heptagon(m.rank())?;
    m.rank().check_label(p)?;
    let cols: Vec<&[S; 3]> = (1..=7).filter(|&c| c != p).map(|c| m.column(c)).collect();
    const ROWS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];
    Ok(Matrix::from_fn(6, 6, |r, c| {
        let (a, b) = ROWS[r];
        cols[c][a].clone() * &cols[c][b]
    }))
}

fn pair_factor<S: Scalar>(m: &ParameterMatrix<S>, p: usize, (i, j): Edge, (k, l): Edge) -> S {
    m.d(i, k, p).clone() * m.d(j, l, p) + m.d(i, l, p).clone() * m.d(j, k, p)
}

/// `<e_ij, e_kl>_5^(p) = det(eta_p) (d_ikp d_jlp + d_ilp d_jkp)`.
pub fn scalar_product_5<S: Scalar>(
    m: &ParameterMatrix<S>,
    p: usize,
    e1: Edge,
    e2: Edge,
) -> Result<S> {
    for x in [e1.0, e1.1, e2.0, e2.1] {
        m.rank().check_label(x)?;
    }
    Ok(eta_matrix(m, p)?.det()? * pair_factor(m, p, e1, e2))
}

/// `-(a4 b4 a5 c5 b6 c6 - a4 c4 a5 b5 b6 c6 - a4 b4 b5 c5 a6 c6
///    + b4 c4 a5 b5 a6 c6 + a4 c4 b5 c5 a6 b6 - b4 c4 a5 c5 a6 b6)`
/// for rows `a, b, c` and columns `4, 5, 6` of `b`.
pub fn dethad<S: Scalar>(b: &Matrix<S>) -> Result<S> {
    if b.rows() != 3 || b.cols() != 3 {
        return Err(Error::Dimension {
            expected: "3x3".into(),
            found: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let pr = |x: usize, y: usize, col: usize| b[(x, col)].clone() * &b[(y, col)];
    let (ab, ac, bc) = (|c| pr(0, 1, c), |c| pr(0, 2, c), |c| pr(1, 2, c));
    let sum = ab(0) * ac(1) * bc(2) - ac(0) * ab(1) * bc(2) - ab(0) * bc(1) * ac(2)
        + bc(0) * ab(1) * ac(2)
        + ac(0) * bc(1) * ab(2)
        - bc(0) * ac(1) * ab(2);
    Ok(-sum)
}

/// Outcome of the alternating-sum identity over all unordered edge pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternatingSumOutcome {
    pub pairs_checked: usize,
    /// First pair whose sum `sum_p (-1)^p <e1, e2>^(p)` is nonzero.
    pub failure: Option<(Edge, Edge, String)>,
}

/// Consistency of the pairwise products with the linear dependences among
/// edge vectors, and independence of the Gram matrix from the edge triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WellDefinedness {
    pub lambda_checks: usize,
    /// `(p, i, [j, k, l, m], other edge)` of the first violated identity.
    pub lambda_failure: Option<(usize, usize, [usize; 4], Edge)>,
    pub pair_checks: usize,
    /// `(p, e1, e2)` where the Gram matrix does not reproduce the product.
    pub pair_failure: Option<(usize, Edge, Edge)>,
    /// Simplices whose Gram matrix from a second, disjoint edge triple
    /// differs from the default one.
    pub triple_mismatches: Vec<usize>,
}

impl WellDefinedness {
    pub fn holds(&self) -> bool {
        self.lambda_failure.is_none()
            && self.pair_failure.is_none()
            && self.triple_mismatches.is_empty()
    }
}

/// The three products `<e12,e34>, <e13,e24>, <e14,e23>` on simplex 7.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub products: [String; 3],
    pub pairwise_distinct: bool,
}

/// The 5-cocycle on one parameter matrix, with `det(eta_p)` cached.
#[derive(Clone)]
pub struct FiveCocycle<'a, S> {
    ctx: &'a ComplexContext<S>,
    det_eta: Vec<S>,
    edge_vectors: Vec<(Edge, Coloring<S>)>,
}

impl<'a, S: Scalar> FiveCocycle<'a, S> {
    pub fn new(ctx: &'a ComplexContext<S>) -> Result<Self> {
        let m = ctx.params();
        require_heptagon(m.rank())?;
        let det_eta = (1..=7)
            .map(|p| eta_matrix(m, p)?.det())
            .collect::<Result<Vec<_>>>()?;
        let edge_vectors = edges()
            .into_iter()
            .map(|e| Ok((e, simplex_vector(m, &[e.0, e.1])?.coloring)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiveCocycle {
            ctx,
            det_eta,
            edge_vectors,
        })
    }

    pub fn det_eta(&self, p: usize) -> &S {
        &self.det_eta[p - 1]
    }

    pub fn product(&self, p: usize, e1: Edge, e2: Edge) -> S {
        self.det_eta[p - 1].clone() * pair_factor(self.ctx.params(), p, e1, e2)
    }

    fn edge_coords(&self, p: usize, e: Edge) -> Vec<S> {
        let c = &self
            .edge_vectors
            .iter()
            .find(|(x, _)| *x == e)
            .expect("edge of the heptagon")
            .1;
        input_coords(c, p, self.ctx.scheme())
    }

    /// Greedy choice of three edges avoiding `p` whose restrictions to `p`
    /// are independent, scanning `candidates` in order.
    fn greedy_triple(&self, p: usize, candidates: impl Iterator<Item = Edge>) -> Result<[Edge; 3]> {
        let mut chosen: Vec<Edge> = Vec::new();
        let mut rows: Vec<Vec<S>> = Vec::new();
        for e in candidates.filter(|e| e.0 != p && e.1 != p) {
            rows.push(self.edge_coords(p, e));
            if Matrix::from_rows(rows.clone())?.rank() == rows.len() {
                chosen.push(e);
                if chosen.len() == 3 {
                    return Ok([chosen[0], chosen[1], chosen[2]]);
                }
            } else {
                rows.pop();
            }
        }
        Err(Error::Domain(format!(
            "no independent edge triple on simplex {p}"
        )))
    }

    pub fn default_triple(&self, p: usize) -> Result<[Edge; 3]> {
        self.greedy_triple(p, edges().into_iter())
    }

    /// Gram matrix on simplex `p` in input-face coordinates:
    /// `E^{-1} G_E E^{-T}` for the restricted edge vectors `E` of `triple`.
    pub fn gram(&self, p: usize, triple: Option<[Edge; 3]>) -> Result<Matrix<S>> {
        let triple = match triple {
            Some(t) => t,
            None => self.default_triple(p)?,
        };
        let e = Matrix::from_rows(triple.iter().map(|&t| self.edge_coords(p, t)).collect())?;
        let e_inv = e.inverse().map_err(|_| {
            Error::Domain(format!(
                "edge triple {triple:?} is dependent on simplex {p}"
            ))
        })?;
        let ge = Matrix::from_fn(3, 3, |a, b| self.product(p, triple[a], triple[b]));
        e_inv.mul(&ge)?.mul(&e_inv.transpose())
    }

    /// The cocycle as a degree-5 cochain.
    pub fn cochain(&self) -> Result<QuadraticCochain<S>> {
        (1..=7)
            .map(|p| self.gram(p, None))
            .collect::<Result<Vec<_>>>()
            .map(QuadraticCochain::Simplices)
    }

    /// `sum_{p=1..7} (-1)^p <e1, e2>^(p) = 0` for all 231 unordered pairs.
    pub fn alternating_sum_check(&self) -> AlternatingSumOutcome {
        let es = edges();
        let mut checked = 0;
        for (a, &e1) in es.iter().enumerate() {
            for &e2 in &es[a..] {
                checked += 1;
                let total = (1..=7).fold(S::zero(), |acc, p| {
                    acc + self.product(p, e1, e2) * sign::<S>(p % 2 == 1)
                });
                if !total.is_zero() {
                    return AlternatingSumOutcome {
                        pairs_checked: checked,
                        failure: Some((e1, e2, total.to_exact_string())),
                    };
                }
            }
        }
        AlternatingSumOutcome {
            pairs_checked: checked,
            failure: None,
        }
    }

    pub fn well_definedness(&self) -> Result<WellDefinedness> {
        let m = self.ctx.params();
        let es = edges();
        let mut out = WellDefinedness {
            lambda_checks: 0,
            lambda_failure: None,
            pair_checks: 0,
            pair_failure: None,
            triple_mismatches: Vec::new(),
        };
        'lambda: for i in 1..=7 {
            let others: Vec<usize> = (1..=7).filter(|&x| x != i).collect();
            for quad in four_subsets(&others) {
                let lam = lambda_dependence(m, i, quad)?;
                for p in 1..=7 {
                    for &e in &es {
                        out.lambda_checks += 1;
                        let total = quad.iter().zip(&lam).fold(S::zero(), |acc, (&j, l)| {
                            acc + self.product(p, (i.min(j), i.max(j)), e) * l
                        });
                        if !total.is_zero() {
                            out.lambda_failure = Some((p, i, quad, e));
                            break 'lambda;
                        }
                    }
                }
            }
        }
        for p in 1..=7 {
            let first = self.default_triple(p)?;
            let g = self.gram(p, Some(first))?;
            let rest = es.iter().copied().filter(|e| !first.contains(e));
            let second = self.greedy_triple(p, rest)?;
            if self.gram(p, Some(second))? != g {
                out.triple_mismatches.push(p);
            }
            for (a, &e1) in es.iter().enumerate() {
                let x = self.edge_coords(p, e1);
                let gx = g.vec_mul(&x)?;
                for &e2 in &es[a..] {
                    out.pair_checks += 1;
                    let y = self.edge_coords(p, e2);
                    if out.pair_failure.is_none()
                        && crate::linalg::dot(&gx, &y) != self.product(p, e1, e2)
                    {
                        out.pair_failure = Some((p, e1, e2));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn witness(&self) -> Witness {
        let ps = [
            self.product(7, (1, 2), (3, 4)),
            self.product(7, (1, 3), (2, 4)),
            self.product(7, (1, 4), (2, 3)),
        ];
        Witness {
            pairwise_distinct: ps[0] != ps[1] && ps[0] != ps[2] && ps[1] != ps[2],
            products: ps.map(|x| x.to_exact_string()),
        }
    }
}

/// Gram matrix of the 5-cocycle on simplex `p` in input-face coordinates,
/// built from the default edge triple.
pub fn cocycle5_gram<S: Scalar>(m: &ParameterMatrix<S>, p: usize) -> Result<Matrix<S>> {
    m.rank().check_label(p)?;
    let ctx = ComplexContext::new(m)?;
    FiveCocycle::new(&ctx)?.gram(p, None)
}

/// All 21 edges `i < j` of the heptagon, lexicographic.
pub fn edges() -> Vec<Edge> {
    (1..=7)
        .flat_map(|i| (i + 1..=7).map(move |j| (i, j)))
        .collect()
}

fn four_subsets(xs: &[usize]) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            for c in b + 1..xs.len() {
                for d in c + 1..xs.len() {
                    out.push([xs[a], xs[b], xs[c], xs[d]]);
                }
            }
        }
    }
    out
}

/// Whether a degree `2n-1` cochain is a coboundary.
#[derive(Debug, Clone, PartialEq)]
pub enum Nontriviality<S> {
    Nontrivial {
        rank_low: usize,
        rank_augmented: usize,
    },
    /// `low * preimage = cochain`.
    Trivial { preimage: Vec<S> },
}

impl<S> Nontriviality<S> {
    pub fn is_nontrivial(&self) -> bool {
        matches!(self, Nontriviality::Nontrivial { .. })
    }
}

/// Compares `rank(low)` with `rank([low | v])`; on equality recovers a
/// preimage from the kernel of `[low | -v]`.
pub fn nontriviality_check<S: Scalar>(low: &Matrix<S>, v: &[S]) -> Result<Nontriviality<S>> {
    let rank_low = low.rank();
    let rank_augmented = low.with_column(v)?.rank();
    if rank_augmented > rank_low {
        return Ok(Nontriviality::Nontrivial {
            rank_low,
            rank_augmented,
        });
    }
    let neg: Vec<S> = v.iter().map(|x| -x.clone()).collect();
    let kernel = low.with_column(&neg)?.kernel_basis();
    let last = low.cols();
    let k = kernel
        .iter()
        .find(|k| !k[last].is_zero())
        .ok_or_else(|| Error::Domain("cochain in the image but no preimage found".into()))?;
    let inv = k[last].inverse().expect("nonzero");
    Ok(Nontriviality::Trivial {
        preimage: k[..last].iter().map(|x| x.clone() * &inv).collect(),
    })
}
