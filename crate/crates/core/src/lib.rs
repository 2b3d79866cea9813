//! Exact-arithmetic engine that discovers closed-form continued fraction
//! expansions for power-series solutions of first-order differential,
//! difference, and q-difference equations, and certifies them through an
//! operator-algebra proof (annihilating recurrence for the remainder
//! sequence, reduction of order, valuation-growth verdict).
//!
//! Layering, bottom up:
//! - [`field`]: the `Field` trait and big rationals.
//! - [`param`]: multivariate polynomials and rational functions in the
//!   declared symbolic parameters.
//! - [`poly`]: generic dense univariate polynomials and fractions over a
//!   field; the whole tower Q ⊂ Q(params) ⊂ Q(params)(z) ⊂ Q(params)(z)(n)
//!   is built from these.
//! - [`series`]: truncated power series with valuation tracking.
//! - [`linalg`]: exact nullspace computation by Gaussian elimination.
//! - [`ore`]: linear recurrence operators in the shift S (and its q-dilation
//!   variant), with right division, GCRD, and sequence unfolding.
//! - [`solver`]: equation models and truncated series solutions for the
//!   three equation kinds; remainder polynomials.
//! - [`cfrac`]: series <-> C-fraction conversion, convergents, closed forms,
//!   subsequence contraction.
//! - [`guess`]: rational interpolation and recurrence guessing.
//! - [`prover`]: remainder recurrences, reduction of order, verdicts,
//!   certificates.
//! - [`pipeline`]: the end-to-end discover-and-prove driver.

pub mod cfrac;
pub mod field;
pub mod guess;
pub mod linalg;
pub mod ore;
pub mod param;
pub mod pipeline;
pub mod poly;
pub mod prover;
pub mod series;
pub mod solver;

mod error;

pub use error::Error;
pub use field::{BigRat, Field};
pub use param::{ParamPoly, ParamRat};
pub use poly::{UFrac, UPoly};

/// Univariate polynomial in the main variable (z for differential and
/// q-difference equations, s for difference equations) over Q(params).
pub type PolyZ = poly::UPoly<param::ParamRat>;
/// Rational function in the main variable over Q(params).
pub type RatZ = poly::UFrac<param::ParamRat>;
/// Polynomial in the recurrence index over Q(params)(z).
pub type PolyN = poly::UPoly<RatZ>;
/// Rational function in the recurrence index over Q(params)(z).
pub type RatN = poly::UFrac<RatZ>;
/// Rational function of the (sub)sequence index over Q(params), used for
/// closed-form continued fraction coefficients.
pub type RatK = poly::UFrac<param::ParamRat>;
