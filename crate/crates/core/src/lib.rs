//! Exact construction of the odd polygon relations ((2n+1)-gons, n = 2..5)
//! and of their quadratic cochain complexes.
//!
//! The whole crate is generic over an exact [`Scalar`]: arbitrary-precision
//! rationals or a prime field `F_q` with `q` odd. Concrete aliases for both
//! are exported below.
//!
//! ```
//! use polygon_cohomology::cohomology::{complex_ranks, ComplexContext};
//! use polygon_cohomology::polygon::{sample_generic_parameters, verify_polygon_relation, PolygonRank};
//! use polygon_cohomology::{FieldKind, RationalParams};
//!
//! let m: RationalParams = sample_generic_parameters(PolygonRank::HEPTAGON, FieldKind::Rationals, 1, 10)?;
//! assert!(verify_polygon_relation(&m)?.holds());
//! let table = complex_ranks(&ComplexContext::new(&m)?);
//! assert_eq!(table.to_string(), "21 → 42 → 21, ranks 20/21, H = 1");
//! # Ok::<(), polygon_cohomology::Error>(())
//! ```

pub mod cohomology;
pub mod colorings;
pub mod error;
pub mod fp;
pub mod linalg;
pub mod polygon;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use fp::Fp;
pub use linalg::Matrix;
pub use scalar::{FieldKind, Rational, Scalar};

pub type RationalMatrix = Matrix<Rational>;
pub type FpMatrix = Matrix<Fp>;
pub type RationalParams = polygon::ParameterMatrix<Rational>;
pub type FpParams = polygon::ParameterMatrix<Fp>;
