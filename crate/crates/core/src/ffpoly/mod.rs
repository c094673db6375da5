//! Prime fields and sparse multivariate polynomials reduced by the field equations.

mod field;
mod interpolate;
mod monomial;
mod parse;
mod polynomial;

pub use field::{FieldElement, PrimeField};
pub use interpolate::{
    index_point, interpolate, interpolate_values, point_index, space_size, DEFAULT_INTERPOLATION_CAP,
};
pub use monomial::Monomial;
pub use parse::{max_variable_index, parse_polynomial};
pub use polynomial::Polynomial;
