//! Exact scalars and linear algebra over `Q` and `F_p`.

mod field;
mod matrix;
mod quotient;

use thiserror::Error;

pub use field::{
    binomial, binomial_exact, binomial_lucas, field_arith, format_rational, parse_rational, ArithOp, Field,
    FieldKind, PrimeField, Rationals, Scalar,
};
pub use matrix::{
    dense_to_sparse, rank_of_vectors, rref, sparse_axpy, sparse_get, sparse_normalize, sparse_scale,
    sparse_to_dense, ExactMatrix, SparseVec,
};
pub use quotient::{quotient_coords, QuotientSolver};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedField,
    #[error("{0} is not a prime greater than 3")]
    InvalidModulus(u64),
    #[error("denominator of {value} is divisible by {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },
    #[error("vector is not in the span of the given bases")]
    NotInSpan,
    #[error("basis vectors are linearly dependent")]
    LinearlyDependent,
}
