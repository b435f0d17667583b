//! Transition matrices `A(p)` and the polygon relation itself.

use super::params::ParameterMatrix;
use super::scheme::SlotScheme;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `A(p)`: rows are the input faces `{i, p}` (`i` in `I_p` ascending), columns
/// the output faces `{l, p}` (`l` in `O_p` ascending). It acts on row vectors
/// from the right.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix<S> {
    pub p: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub entries: Matrix<S>,
}

impl<S: Scalar> TransitionMatrix<S> {
    /// Entry for input companion `i` and output companion `l`.
    pub fn entry(&self, i: usize, l: usize) -> Option<&S> {
        let r = self.inputs.iter().position(|&x| x == i)?;
        let c = self.outputs.iter().position(|&x| x == l)?;
        Some(&self.entries[(r, c)])
    }

    /// Output-face values produced from input-face values.
    pub fn apply(&self, input_values: &[S]) -> Result<Vec<S>> {
        self.entries.vec_mul(input_values)
    }
}

/// Builds `A(p)` with entry `prod_{j in I_p, j != i} d_{j l p} / d_{i j p}`.
pub fn transition_matrix<S: Scalar>(
    m: &ParameterMatrix<S>,
    p: usize,
    scheme: &SlotScheme,
) -> Result<TransitionMatrix<S>> {
    m.rank().check_label(p)?;
    let inputs = scheme.inputs(p).to_vec();
    let outputs = scheme.outputs(p).to_vec();
    let n = inputs.len();
    let mut entries = Matrix::zeros(n, n);
    for (r, &i) in inputs.iter().enumerate() {
        let mut den = S::one();
        for &j in inputs.iter().filter(|&&j| j != i) {
            let d = m.d(i, j, p);
            if d.is_zero() {
                return Err(Error::Singular { i, j, p });
            }
            den = den * d;
        }
        let den_inv = den.inverse().ok_or(Error::DivisionByZero)?;
        for (c, &l) in outputs.iter().enumerate() {
            let num = inputs
                .iter()
                .filter(|&&j| j != i)
                .fold(S::one(), |acc, &j| acc * m.d(j, l, p));
            entries[(r, c)] = num * &den_inv;
        }
    }
    Ok(TransitionMatrix {
        p,
        inputs,
        outputs,
        entries,
    })
}

/// Outcome of comparing the two sides of the relation.
#[derive(Debug, Clone, PartialEq)]
pub enum RelationVerdict<S> {
    Holds,
    /// First differing entry of the two `N x N` products.
    Fails {
        row: usize,
        col: usize,
        lhs: S,
        rhs: S,
    },
}

impl<S> RelationVerdict<S> {
    pub fn holds(&self) -> bool {
        matches!(self, RelationVerdict::Holds)
    }
}

/// All transition matrices of one parameter matrix, wired by a slot scheme.
#[derive(Debug, Clone)]
pub struct PolygonRelation<S> {
    scheme: SlotScheme,
    matrices: Vec<TransitionMatrix<S>>,
}

impl<S: Scalar> PolygonRelation<S> {
    pub fn new(m: &ParameterMatrix<S>, scheme: &SlotScheme) -> Result<Self> {
        let matrices = (1..=m.rank().labels())
            .map(|p| transition_matrix(m, p, scheme))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolygonRelation {
            scheme: scheme.clone(),
            matrices,
        })
    }

    pub fn scheme(&self) -> &SlotScheme {
        &self.scheme
    }

    pub fn matrix(&self, p: usize) -> &TransitionMatrix<S> {
        &self.matrices[p - 1]
    }

    pub fn matrices(&self) -> &[TransitionMatrix<S>] {
        &self.matrices
    }

    /// Adds `delta` to entry `(row, col)` of `A(p)`.
    pub fn perturb(&mut self, p: usize, row: usize, col: usize, delta: S) {
        let e = &mut self.matrices[p - 1].entries[(row, col)];
        *e = std::mem::replace(e, S::zero()) + delta;
    }

    /// `A(p)` acting on the full `N`-slot row space, identity off its slots.
    pub fn embedded(&self, p: usize) -> Matrix<S> {
        let n_slots = self.scheme.slots().len();
        let a = self.matrix(p);
        let legs = self.scheme.legs(p);
        let mut out = Matrix::identity(n_slots);
        for leg in legs {
            out[(leg.slot, leg.slot)] = S::zero();
        }
        for leg_in in legs {
            let r = a.inputs.iter().position(|&x| x == leg_in.input).unwrap();
            for leg_out in legs {
                let c = a.outputs.iter().position(|&x| x == leg_out.output).unwrap();
                out[(leg_in.slot, leg_out.slot)] = a.entries[(r, c)].clone();
            }
        }
        out
    }

    fn product(&self, order: &[usize]) -> Matrix<S> {
        let n_slots = self.scheme.slots().len();
        order.iter().fold(Matrix::identity(n_slots), |acc, &p| {
            acc.mul(&self.embedded(p)).expect("square factors")
        })
    }

    /// `A(1) A(3) ... A(2n+1)`.
    pub fn lhs_product(&self) -> Matrix<S> {
        self.product(&self.scheme.lhs_order())
    }

    /// `A(2n) ... A(4) A(2)`.
    pub fn rhs_product(&self) -> Matrix<S> {
        self.product(&self.scheme.rhs_order())
    }

    pub fn verify(&self) -> RelationVerdict<S> {
        let lhs = self.lhs_product();
        let rhs = self.rhs_product();
        for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                if lhs[(r, c)] != rhs[(r, c)] {
                    return RelationVerdict::Fails {
                        row: r,
                        col: c,
                        lhs: lhs[(r, c)].clone(),
                        rhs: rhs[(r, c)].clone(),
                    };
                }
            }
        }
        RelationVerdict::Holds
    }
}

pub fn verify_polygon_relation<S: Scalar>(m: &ParameterMatrix<S>) -> Result<RelationVerdict<S>> {
    let scheme = SlotScheme::new(m.rank());
    Ok(PolygonRelation::new(m, &scheme)?.verify())
}
