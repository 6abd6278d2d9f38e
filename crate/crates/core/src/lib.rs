//! Exact Lie–Jordan composability algebra.
//!
//! Two bilinear products, a Lie product `α` and a Jordan product `σ`, together
//! with a single constant `x` fix how a system composes with another one:
//!
//! ```text
//! σ12 = σ1 σ2 + x α1 α2
//! α12 = α1 σ2 + σ1 α2
//! ```
//!
//! This crate realizes these products for the three composability classes
//! (elliptic `x < 0`, parabolic `x = 0`, hyperbolic `x > 0`) in exact
//! arithmetic, checks every identity they are expected to satisfy on seeded
//! random samples, re-derives the composition coefficients symbolically, and
//! builds Hilbert-space (GNS) representations of finite matrix algebras.
//!
//! Modules:
//!
//! - [`scalar`]: rationals, complex and split-complex rationals, polynomials
//!   in a formal Planck parameter `h`.
//! - [`phase`], [`matrix`]: the element types.
//! - [`realization`]: Poisson, symmetric-bracket, Moyal and matrix product pairs.
//! - [`composability`]: tensor products and the bipartite product laws.
//! - [`identities`]: Leibniz, Jacobi, Petersen, flexible/Jordan, unit laws.
//! - [`solver`]: symbolic derivation of the bipartite coefficients.
//! - [`verify`]: seeded per-class runs of all of the above.
//! - [`gns`]: spectra, C* norm, involution decomposition, GNS construction.

pub mod composability;
pub mod error;
pub mod gns;
pub mod identities;
pub mod matrix;
pub mod phase;
pub mod realization;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod solver;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::MatrixElement;
pub use phase::{Monomial, PhasePolynomial, Var};
pub use realization::{CompositionClass, Element, ProductPair, Realization};
pub use scalar::{Level, Rational, Scalar, Unit};
pub use text::{parse_poly, parse_poly_dim, parse_scalar};
