//! The 3 x (2n+1) parameter matrix and its 3x3 column minors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::rank::PolygonRank;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar};

/// Draws per sampling call before giving up on genericity.
pub const RESAMPLE_BUDGET: usize = 1000;

/// Parameter matrix with rows (alpha, beta, gamma) and columns labelled
/// `1..=2n+1`. All minors `d_ijk` are cached on construction.
#[derive(Clone, PartialEq)]
pub struct ParameterMatrix<S> {
    rank: PolygonRank,
    field: FieldKind,
    columns: Vec<[S; 3]>,
    minors: Vec<S>,
}

impl<S: Scalar> std::fmt::Debug for ParameterMatrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParameterMatrix")
            .field("n", &self.rank.get())
            .field("field", &self.field)
            .field("columns", &self.columns)
            .finish()
    }
}

fn det3<S: Scalar>(a: &[S; 3], b: &[S; 3], c: &[S; 3]) -> S {
    // columns a, b, c; rows 0..3
    let t1 = a[0].clone() * (b[1].clone() * &c[2] - b[2].clone() * &c[1]);
    let t2 = b[0].clone() * (a[1].clone() * &c[2] - a[2].clone() * &c[1]);
    let t3 = c[0].clone() * (a[1].clone() * &b[2] - a[2].clone() * &b[1]);
    t1 - t2 + t3
}

impl<S: Scalar> ParameterMatrix<S> {
    pub fn from_columns(rank: PolygonRank, field: FieldKind, columns: Vec<[S; 3]>) -> Result<Self> {
        if columns.len() != rank.labels() {
            return Err(Error::Dimension {
                expected: format!("{} columns", rank.labels()),
                found: format!("{}", columns.len()),
            });
        }
        let l = rank.labels();
        let mut minors = Vec::with_capacity(l * l * l);
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    minors.push(if i == j || j == k || i == k {
                        S::zero()
                    } else {
                        det3(&columns[i], &columns[j], &columns[k])
                    });
                }
            }
        }
        Ok(ParameterMatrix {
            rank,
            field,
            columns,
            minors,
        })
    }

    /// From three rows of length `2n+1`.
    pub fn from_rows(rank: PolygonRank, field: FieldKind, rows: [Vec<S>; 3]) -> Result<Self> {
        let l = rank.labels();
        if rows.iter().any(|r| r.len() != l) {
            return Err(Error::Dimension {
                expected: format!("3 rows of length {l}"),
                found: format!("{:?}", rows.iter().map(Vec::len).collect::<Vec<_>>()),
            });
        }
        let columns = (0..l)
            .map(|c| [rows[0][c].clone(), rows[1][c].clone(), rows[2][c].clone()])
            .collect();
        Self::from_columns(rank, field, columns)
    }

    pub fn rank(&self) -> PolygonRank {
        self.rank
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn column(&self, label: usize) -> &[S; 3] {
        &self.columns[label - 1]
    }

    pub fn columns(&self) -> &[[S; 3]] {
        &self.columns
    }

    /// `d_ijk` with arguments in the given order (unchecked labels).
    pub fn d(&self, i: usize, j: usize, k: usize) -> &S {
        let l = self.rank.labels();
        &self.minors[((i - 1) * l + (j - 1)) * l + (k - 1)]
    }

    /// Embeds an integer constant in this matrix's field.
    pub fn constant(&self, v: i64) -> S {
        S::from_i64(self.field, v).expect("field matches scalar type")
    }

    /// First vanishing minor `d_ijk` with `i < j < k`, if any.
    pub fn vanishing_minor(&self) -> Option<(usize, usize, usize)> {
        let l = self.rank.labels();
        for i in 1..=l {
            for j in i + 1..=l {
                for k in j + 1..=l {
                    if self.d(i, j, k).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_generic(&self) -> Result<()> {
        match self.vanishing_minor() {
            Some((i, j, k)) => Err(Error::NotGeneric { i, j, k }),
            None => Ok(()),
        }
    }

    /// Row-reduces so that columns 1, 2, 3 form the identity matrix.
    pub fn normalized(&self) -> Result<Self> {
        let basis = Matrix::from_fn(3, 3, |r, c| self.columns[c][r].clone());
        let inv = basis
            .inverse()
            .map_err(|_| Error::NotGeneric { i: 1, j: 2, k: 3 })?;
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let v = inv.mul_vec(col).expect("3x3 times 3-vector");
                [v[0].clone(), v[1].clone(), v[2].clone()]
            })
            .collect();
        Self::from_columns(self.rank, self.field, columns)
    }

    pub fn to_json(&self) -> ParamsJson {
        ParamsJson {
            n: self.rank.get(),
            field: self.field,
            entries: (0..3)
                .map(|r| {
                    self.columns
                        .iter()
                        .map(|c| c[r].to_exact_string())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ParamsJson) -> Result<Self> {
        let rank = PolygonRank::new(json.n)?;
        if json.entries.len() != 3 {
            return Err(Error::Dimension {
                expected: "3 rows".into(),
                found: format!("{} rows", json.entries.len()),
            });
        }
        let parse_row = |row: &Vec<String>| -> Result<Vec<S>> {
            row.iter().map(|s| S::parse_in(json.field, s)).collect()
        };
        let rows = [
            parse_row(&json.entries[0])?,
            parse_row(&json.entries[1])?,
            parse_row(&json.entries[2])?,
        ];
        Self::from_rows(rank, json.field, rows)
    }
}

/// Wire form of a parameter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub n: usize,
    pub field: FieldKind,
    pub entries: Vec<Vec<String>>,
}

/// `d_ijk`: determinant of columns `i, j, k` in that order. Repeated labels
/// give zero.
pub fn minor_det<S: Scalar>(m: &ParameterMatrix<S>, i: usize, j: usize, k: usize) -> Result<S> {
    for label in [i, j, k] {
        m.rank().check_label(label)?;
    }
    Ok(m.d(i, j, k).clone())
}

/// Seeded sampling of a generic parameter matrix with integer entries in
/// `[-bound, bound]` (reduced into `F_q` for prime fields).
pub fn sample_generic_parameters<S: Scalar>(
    rank: PolygonRank,
    field: FieldKind,
    seed: u64,
    bound: u64,
) -> Result<ParameterMatrix<S>> {
    if bound == 0 {
        return Err(Error::Config("sampling bound must be positive".into()));
    }
    if field == FieldKind::Prime(2) {
        return Err(Error::InvalidField("characteristic 2".into()));
    }
    let bound = i64::try_from(bound).map_err(|_| Error::Config("bound too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = (1, 2, 3);
    for _ in 0..RESAMPLE_BUDGET {
        let columns = (0..rank.labels())
            .map(|_| -> Result<[S; 3]> {
                Ok([
                    S::from_i64(field, rng.gen_range(-bound..=bound))?,
                    S::from_i64(field, rng.gen_range(-bound..=bound))?,
                    S::from_i64(field, rng.gen_range(-bound..=bound))?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        let m = ParameterMatrix::from_columns(rank, field, columns)?;
        match m.vanishing_minor() {
            None => return Ok(m),
            Some(ijk) => last = ijk,
        }
    }
    Err(Error::GenericityBudget {
        attempts: RESAMPLE_BUDGET,
        i: last.0,
        j: last.1,
        k: last.2,
    })
}

/// Integer matrix `(I_3 | rest)`; handy for the normalized form.
pub fn with_identity_prefix<S: Scalar>(
    rank: PolygonRank,
    field: FieldKind,
    rest: Vec<[S; 3]>,
) -> Result<ParameterMatrix<S>> {
    let one = S::from_i64(field, 1)?;
    let zero = S::from_i64(field, 0)?;
    let mut columns = vec![
        [one.clone(), zero.clone(), zero.clone()],
        [zero.clone(), one.clone(), zero.clone()],
        [zero.clone(), zero, one],
    ];
    columns.extend(rest);
    ParameterMatrix::from_columns(rank, field, columns)
}

/// `true` when `m` is already in the normalized form.
pub fn is_normalized<S: Scalar>(m: &ParameterMatrix<S>) -> bool {
    (0..3).all(|c| {
        (0..3).all(|r| {
            let v = &m.column(c + 1)[r];
            if r == c {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::scalar::Rational;
    use num_traits::Zero;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    /// Cofactor expansion, independent of `det3`.
    fn cofactor3(m: &ParameterMatrix<Rational>, i: usize, j: usize, k: usize) -> Rational {
        let c = [m.column(i), m.column(j), m.column(k)];
        let e = |r: usize, s: usize| c[s][r].clone();
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    }

    #[test]
    fn sampled_heptagon_is_generic() {
        let m: ParameterMatrix<Rational> =
            sample_generic_parameters(PolygonRank::HEPTAGON, FieldKind::Rationals, 1, 10).unwrap();
        let mut count = 0;
        for i in 1..=7 {
            for j in i + 1..=7 {
                for k in j + 1..=7 {
                    assert_ne!(cofactor3(&m, i, j, k), q(0));
                    count += 1;
                }
            }
        }
        assert_eq!(count, 35);
        assert!(m
            .columns()
            .iter()
            .flatten()
            .all(|x| x.is_integer() && x.numer().magnitude() <= &10u32.into()));
    }

    #[test]
    fn sampled_pentagon_is_generic() {
        let m: ParameterMatrix<Rational> =
            sample_generic_parameters(PolygonRank::PENTAGON, FieldKind::Rationals, 7, 5).unwrap();
        assert_eq!(m.columns().len(), 5);
        let mut count = 0;
        for i in 1..=5 {
            for j in i + 1..=5 {
                for k in j + 1..=5 {
                    assert!(!cofactor3(&m, i, j, k).is_zero());
                    count += 1;
                }
            }
        }
        assert_eq!(count, 10);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a: ParameterMatrix<Rational> =
            sample_generic_parameters(PolygonRank::ENNEAGON, FieldKind::Rationals, 42, 10).unwrap();
        let b: ParameterMatrix<Rational> =
            sample_generic_parameters(PolygonRank::ENNEAGON, FieldKind::Rationals, 42, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tiny_field_exhausts_budget() {
        // PG(2,3) has no 7-arc, so no 3x7 matrix over F_3 is generic.
        let f = FieldKind::prime(3).unwrap();
        let r = sample_generic_parameters::<Fp>(PolygonRank::HEPTAGON, f, 5, 1);
        assert!(matches!(
            r,
            Err(Error::GenericityBudget { attempts: 1000, .. })
        ));
    }

    #[test]
    fn repeated_columns_are_not_generic() {
        let f = FieldKind::prime(3).unwrap();
        let col = [Fp::new(1, 3), Fp::new(1, 3), Fp::new(0, 3)];
        let m = ParameterMatrix::from_columns(PolygonRank::HEPTAGON, f, vec![col; 7]).unwrap();
        assert!(matches!(
            m.check_generic(),
            Err(Error::NotGeneric { i: 1, j: 2, k: 3 })
        ));
    }

    #[test]
    fn minor_antisymmetry_and_identity() {
        let m: ParameterMatrix<Rational> =
            sample_generic_parameters(PolygonRank::HEPTAGON, FieldKind::Rationals, 3, 10).unwrap();
        let n = m.normalized().unwrap();
        assert!(is_normalized(&n));
        assert_eq!(minor_det(&n, 1, 2, 3).unwrap(), q(1));
        assert_eq!(
            minor_det(&m, 1, 3, 2).unwrap(),
            -minor_det(&m, 1, 2, 3).unwrap()
        );
        assert_eq!(minor_det(&m, 2, 2, 5).unwrap(), q(0));
        assert!(minor_det(&m, 0, 2, 5).is_err());
        assert!(minor_det(&m, 1, 2, 8).is_err());
        assert_eq!(*m.d(2, 5, 6), cofactor3(&m, 2, 5, 6));
    }

    #[test]
    fn specific_minor_matches_cofactor() {
        let rows = [
            vec![q(2), q(-1), q(3), q(0), q(5)],
            vec![q(1), q(4), q(-2), q(7), q(1)],
            vec![q(-3), q(2), q(1), q(1), q(-6)],
        ];
        let m =
            ParameterMatrix::from_rows(PolygonRank::PENTAGON, FieldKind::Rationals, rows).unwrap();
        // 2*(4*1 - (-2)*2) - (-1)*(1*1 - (-2)*(-3)) + 3*(1*2 - 4*(-3)) = 16 - 5 + 42
        assert_eq!(minor_det(&m, 1, 2, 3).unwrap(), q(53));
        assert_eq!(minor_det(&m, 2, 4, 5).unwrap(), cofactor3(&m, 2, 4, 5));
    }

    #[test]
    fn json_roundtrip() {
        let m: ParameterMatrix<Rational> =
            sample_generic_parameters(PolygonRank::HEPTAGON, FieldKind::Rationals, 9, 10).unwrap();
        let n = m.normalized().unwrap();
        let text = serde_json::to_string(&n.to_json()).unwrap();
        assert!(text.contains("\"field\":\"Q\""));
        let back: ParamsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ParameterMatrix::<Rational>::from_json(&back).unwrap(), n);

        let f = FieldKind::prime(101).unwrap();
        let p: ParameterMatrix<Fp> =
            sample_generic_parameters(PolygonRank::PENTAGON, f, 9, 50).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert!(text.contains("Fq:101"));
        let back: ParamsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ParameterMatrix::<Fp>::from_json(&back).unwrap(), p);
    }
}
