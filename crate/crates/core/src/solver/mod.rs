//! Symbolic derivation of bipartite composition coefficients.
//!
//! An ansatz writes each composite product as a linear combination of tensor
//! products of single-system products with unknown rational coefficients.
//! Substituting units and imposing identities on formal expressions yields
//! polynomial constraints, which [`linear::solve`] resolves exactly.

pub mod coeff;
pub mod derive;
pub mod expr;
pub mod linear;

pub use coeff::{CoeffPoly, Unknown};
pub use derive::{
    derive_four_product_coefficients, derive_single_product, derive_two_product_coefficients,
    four_product_ansatz, reduce_vanishing_cases, Branch, Derivation, Reduction, SingleProductResult, TraceStep,
    Vanishing,
};
pub use expr::{pure, tensor, Atom, BipartiteLaw, FormalExpr, ProductSym, Symmetry, TensorMonomial, Tree};
pub use linear::{solve, Equation, Solution, Value};

/// Canonical form of a formal expression: unit rules, symmetry sorting and
/// like-term collection applied.
pub fn canonicalize(e: &FormalExpr) -> FormalExpr {
    e.canonicalize()
}
