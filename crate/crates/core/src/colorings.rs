//! Colorings of the codimension-1 faces of the move, simplex vectors and
//! permitted subspaces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polygon::{
    Face, ParameterMatrix, PolygonRank, PolygonRelation, SlotScheme, TransitionMatrix,
};
use crate::scalar::{sign, Scalar};

/// One value per face `{a, b}`, stored in lexicographic face order.
#[derive(Debug, Clone, PartialEq)]
pub struct Coloring<S> {
    rank: PolygonRank,
    values: Vec<S>,
}

impl<S: Scalar> Coloring<S> {
    pub fn zero(rank: PolygonRank) -> Self {
        Coloring {
            rank,
            values: vec![S::zero(); rank.face_count()],
        }
    }

    pub fn from_fn(rank: PolygonRank, mut f: impl FnMut(Face) -> S) -> Self {
        Coloring {
            rank,
            values: Face::all(rank).into_iter().map(&mut f).collect(),
        }
    }

    pub fn from_values(rank: PolygonRank, values: Vec<S>) -> Result<Self> {
        if values.len() != rank.face_count() {
            return Err(Error::Dimension {
                expected: format!("{} face values", rank.face_count()),
                found: values.len().to_string(),
            });
        }
        Ok(Coloring { rank, values })
    }

    pub fn rank(&self) -> PolygonRank {
        self.rank
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, face: Face) -> &S {
        &self.values[face.index(self.rank.labels())]
    }

    /// Value on face `{a, b}`, in either order.
    pub fn at(&self, a: usize, b: usize) -> &S {
        self.get(Face::of(a, b))
    }

    pub fn set(&mut self, face: Face, value: S) {
        let k = face.index(self.rank.labels());
        self.values[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn scaled(&self, k: &S) -> Self {
        Coloring {
            rank: self.rank,
            values: self.values.iter().map(|v| v.clone() * k).collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &S, other: &Coloring<S>) -> Self {
        Coloring {
            rank: self.rank,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone() * k)
                .collect(),
        }
    }

    /// `"a,b" -> exact value` map.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        Face::all(self.rank)
            .into_iter()
            .zip(&self.values)
            .map(|(f, v)| (f.to_string(), v.to_exact_string()))
            .collect()
    }
}

/// A simplex vector together with its generating vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector<S> {
    pub generator: Vec<usize>,
    pub coloring: Coloring<S>,
}

/// Builds the coloring generated by `n - 1` vertices `S`.
///
/// The component on face `{l, m}` with `l < m` is
/// `prod_{t in S} (-1)^(m-l-1) d_{t l m}`, and zero when the face meets `S`.
/// The per-factor sign is trivial for odd `n`; for even `n` it is what makes
/// the product permitted on every simplex.
pub fn simplex_vector<S: Scalar>(
    m: &ParameterMatrix<S>,
    generator: &[usize],
) -> Result<SimplexVector<S>> {
    let rank = m.rank();
    if generator.len() != rank.get() - 1 {
        return Err(Error::Arity {
            expected: rank.get() - 1,
            found: generator.len(),
        });
    }
    for (k, &t) in generator.iter().enumerate() {
        rank.check_label(t)?;
        if generator[..k].contains(&t) {
            return Err(Error::Domain(format!("repeated vertex {t} in generator")));
        }
    }
    let mut sorted = generator.to_vec();
    sorted.sort_unstable();
    let face_sign_odd = rank.get().is_multiple_of(2);
    let coloring = Coloring::from_fn(rank, |f| {
        let (l, h) = (f.lo(), f.hi());
        if sorted.iter().any(|&t| f.contains(t)) {
            return S::zero();
        }
        let prod = sorted.iter().fold(S::one(), |acc, &t| acc * m.d(t, l, h));
        prod * sign::<S>(face_sign_odd && (h - l - 1) % 2 == 1)
    });
    Ok(SimplexVector {
        generator: sorted,
        coloring,
    })
}

/// All simplex vectors, generators in lexicographic order.
pub fn all_simplex_vectors<S: Scalar>(m: &ParameterMatrix<S>) -> Result<Vec<SimplexVector<S>>> {
    generators(m.rank())
        .iter()
        .map(|g| simplex_vector(m, g))
        .collect()
}

/// Every `(n-1)`-subset of the labels, lexicographic.
pub fn generators(rank: PolygonRank) -> Vec<Vec<usize>> {
    fn extend(start: usize, end: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for t in start..=end {
            cur.push(t);
            extend(t + 1, end, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(1, rank.labels(), rank.get() - 1, &mut Vec::new(), &mut out);
    out
}

/// Values of `c` on the faces `{i, p}`, `i != p` ascending.
pub fn restrict<S: Scalar>(c: &Coloring<S>, p: usize) -> Vec<S> {
    (1..=c.rank.labels())
        .filter(|&i| i != p)
        .map(|i| c.at(i, p).clone())
        .collect()
}

/// Values of `c` on the input faces `{i, p}`, `i` in `I_p` ascending.
pub fn input_coords<S: Scalar>(c: &Coloring<S>, p: usize, scheme: &SlotScheme) -> Vec<S> {
    scheme
        .inputs(p)
        .iter()
        .map(|&i| c.at(i, p).clone())
        .collect()
}

/// The permitted colorings of simplex `p`: the graph of `A(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermittedSubspace<S> {
    pub p: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    /// Row `k` restricted to the `2n` faces of `p` (ascending companion
    /// order); its input coordinates are the `k`-th unit vector.
    pub basis: Vec<Vec<S>>,
    transition: Matrix<S>,
}

impl<S: Scalar> PermittedSubspace<S> {
    pub fn from_transition(a: &TransitionMatrix<S>) -> Self {
        let p = a.p;
        let companions: Vec<usize> = {
            let mut v: Vec<usize> = a.inputs.iter().chain(&a.outputs).copied().collect();
            v.sort_unstable();
            v
        };
        let basis = (0..a.inputs.len())
            .map(|k| {
                companions
                    .iter()
                    .map(|i| match a.inputs.iter().position(|x| x == i) {
                        Some(r) => indicator(r == k),
                        None => {
                            let c = a.outputs.iter().position(|x| x == i).unwrap();
                            a.entries[(k, c)].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        PermittedSubspace {
            p,
            inputs: a.inputs.clone(),
            outputs: a.outputs.clone(),
            basis,
            transition: a.entries.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Membership of a vector given in ascending companion order.
    pub fn contains(&self, restricted: &[S]) -> bool {
        let at = |i: usize| -> &S { &restricted[if i < self.p { i - 1 } else { i - 2 }] };
        let ins: Vec<S> = self.inputs.iter().map(|&i| at(i).clone()).collect();
        let outs = self.transition.vec_mul(&ins).expect("n inputs");
        self.outputs.iter().zip(outs).all(|(&l, v)| *at(l) == v)
    }

    /// Membership of a global coloring's restriction to `p`.
    pub fn contains_coloring(&self, c: &Coloring<S>) -> bool {
        self.contains(&restrict(c, self.p))
    }
}

fn indicator<S: Scalar>(b: bool) -> S {
    if b {
        S::one()
    } else {
        S::zero()
    }
}

pub fn permitted_basis<S: Scalar>(
    m: &ParameterMatrix<S>,
    p: usize,
    scheme: &SlotScheme,
) -> Result<PermittedSubspace<S>> {
    let a = crate::polygon::transition_matrix(m, p, scheme)?;
    Ok(PermittedSubspace::from_transition(&a))
}

/// Global permitted colorings obtained by pushing each bottom-face unit
/// vector through both sides of the relation.
pub fn global_basis<S: Scalar>(
    m: &ParameterMatrix<S>,
    scheme: &SlotScheme,
) -> Result<Vec<Coloring<S>>> {
    Ok(global_basis_of(&PolygonRelation::new(m, scheme)?))
}

pub fn global_basis_of<S: Scalar>(rel: &PolygonRelation<S>) -> Vec<Coloring<S>> {
    let scheme = rel.scheme();
    let rank = scheme.rank();
    let n_slots = scheme.slots().len();
    let mut out: Vec<Coloring<S>> = (0..n_slots).map(|_| Coloring::zero(rank)).collect();
    for (s, c) in out.iter_mut().enumerate() {
        for (k, t) in scheme.timelines().iter().enumerate() {
            c.set(t.bottom, indicator(k == s));
        }
    }
    // Row s of a running product is the image of basis vector s.
    let mut acc = Matrix::identity(n_slots);
    for p in scheme.lhs_order() {
        acc = acc.mul(&rel.embedded(p)).expect("square factors");
        for (k, slot) in scheme.slots().iter().enumerate() {
            let t = scheme.timeline(k);
            let face = if p == slot.lo {
                t.lhs_internal
            } else if p == slot.hi {
                t.top
            } else {
                continue;
            };
            for (s, c) in out.iter_mut().enumerate() {
                c.set(face, acc[(s, k)].clone());
            }
        }
    }
    let mut acc = Matrix::identity(n_slots);
    for p in scheme.rhs_order() {
        acc = acc.mul(&rel.embedded(p)).expect("square factors");
        for (k, slot) in scheme.slots().iter().enumerate() {
            let t = scheme.timeline(k);
            if let Some(face) = t.rhs_internal.filter(|_| p + 1 == slot.hi) {
                for (s, c) in out.iter_mut().enumerate() {
                    c.set(face, acc[(s, k)].clone());
                }
            }
        }
    }
    out
}

/// `true` iff the restriction of `c` to every simplex is permitted.
pub fn is_permitted<S: Scalar>(m: &ParameterMatrix<S>, c: &Coloring<S>) -> Result<bool> {
    let scheme = SlotScheme::new(m.rank());
    for p in 1..=m.rank().labels() {
        if !permitted_basis(m, p, &scheme)?.contains_coloring(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients `(l1, l2, l3, l4)` with `l1 e_ij + l2 e_ik + l3 e_il + l4 e_im = 0`,
/// scaled so the first nonzero one is 1. Heptagon only.
pub fn lambda_dependence<S: Scalar>(
    m: &ParameterMatrix<S>,
    i: usize,
    others: [usize; 4],
) -> Result<[S; 4]> {
    if m.rank() != PolygonRank::HEPTAGON {
        return Err(Error::Domain(
            "edge dependences are defined for the heptagon".into(),
        ));
    }
    let mut all = vec![i];
    all.extend(others);
    for (k, &v) in all.iter().enumerate() {
        m.rank().check_label(v)?;
        if all[..k].contains(&v) {
            return Err(Error::Domain(format!("repeated vertex {v}")));
        }
    }
    let cols = others
        .iter()
        .map(|&j| Ok(simplex_vector(m, &[i, j])?.coloring.values))
        .collect::<Result<Vec<_>>>()?;
    let mat = Matrix::from_columns(&cols)?;
    let kernel = mat.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension {
            expected: 1,
            found: kernel.len(),
        });
    }
    let v = &kernel[0];
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .expect("kernel vectors are nonzero");
    let inv = lead.inverse().expect("nonzero");
    Ok([0, 1, 2, 3].map(|k| v[k].clone() * &inv))
}
