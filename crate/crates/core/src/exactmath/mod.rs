//! Exact scalars, sparse multivariate polynomials, the expression parser and
//! univariate integer polynomials.

mod intpoly;
mod monomial;
mod parse;
mod polynomial;
mod rational;
mod scalar;

pub use intpoly::IntPolynomial;
pub(crate) use intpoly::{from_qpoly_primitive, qpoly_divrem};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use polynomial::{Homogeneity, Polynomial, VarContext};
pub use rational::Rational;
pub use scalar::{Field, Scalar};

/// Degree if `f` is homogeneous; see [`Homogeneity`] for the zero case.
pub fn homogeneous_degree(f: &Polynomial) -> Homogeneity {
    f.homogeneity()
}
