//! Concrete product pairs `(α, σ)` for the composability classes.
//!
//! | class                 | x        | J      | realizations                         |
//! |-----------------------|----------|--------|--------------------------------------|
//! | elliptic              | -ħ²/4    | iħ/2   | complex matrices, Moyal polynomials  |
//! | parabolic             | 0        | 0      | Poisson bracket, pointwise product   |
//! | hyperbolic            | +1       | j (1)  | real / split-complex matrices        |
//! | parabolic-symmetric   | 0        | 0      | symmetric bracket, pointwise product |
//!
//! In the parabolic-symmetric class the bracket is the symmetric product `τ`
//! rather than the Lie product `α`; [`Realization::bracket`] returns whichever
//! one the class carries.

mod matrix;
mod moyal;
mod phase;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::MatrixElement;
use crate::phase::PhasePolynomial;
use crate::scalar::{Rational, Scalar};

pub use matrix::{matrix_alpha, matrix_sigma, MatrixRealization};
pub use moyal::{moyal_alpha, moyal_sigma, moyal_star, moyal_star_truncated};
pub use phase::{pointwise, poisson_bracket, symmetric_bracket, PhaseKind, PhaseRealization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
    ParabolicSymmetric,
}

impl CompositionClass {
    pub const ALL: [CompositionClass; 4] = [
        CompositionClass::Elliptic,
        CompositionClass::Parabolic,
        CompositionClass::Hyperbolic,
        CompositionClass::ParabolicSymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CompositionClass::Elliptic => "elliptic",
            CompositionClass::Parabolic => "parabolic",
            CompositionClass::Hyperbolic => "hyperbolic",
            CompositionClass::ParabolicSymmetric => "parabolic-symmetric",
        }
    }
}

impl fmt::Display for CompositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CompositionClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown composability class {s:?}")))
    }
}

/// Class descriptor shared by every realization: the class, its constant `x`
/// and the dynamic-correspondence scalar `J` with `J^2 = x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductPair {
    pub class: CompositionClass,
    pub x: Scalar,
    pub j_scalar: Scalar,
}

impl ProductPair {
    /// Elliptic class with a numeric Planck constant: `x = -ħ²/4`, `J = iħ/2`.
    pub fn elliptic(hbar: &Rational) -> Self {
        let h = Scalar::from_rational(hbar.clone());
        Self::elliptic_from(h)
    }

    /// Elliptic class with `ħ` kept as the formal parameter `h`.
    pub fn elliptic_formal() -> Self {
        Self::elliptic_from(Scalar::hbar())
    }

    fn elliptic_from(h: Scalar) -> Self {
        let j_scalar = &(&Scalar::i() * &h) * &Scalar::rational(1, 2);
        ProductPair { class: CompositionClass::Elliptic, x: &j_scalar * &j_scalar, j_scalar }
    }

    pub fn parabolic() -> Self {
        ProductPair { class: CompositionClass::Parabolic, x: Scalar::zero(), j_scalar: Scalar::zero() }
    }

    pub fn parabolic_symmetric() -> Self {
        ProductPair {
            class: CompositionClass::ParabolicSymmetric,
            x: Scalar::zero(),
            j_scalar: Scalar::zero(),
        }
    }

    /// Hyperbolic class over split-complex scalars, `J = j`.
    pub fn hyperbolic() -> Self {
        ProductPair { class: CompositionClass::Hyperbolic, x: Scalar::one(), j_scalar: Scalar::j() }
    }

    /// Hyperbolic class over the reals, `J = 1`.
    pub fn hyperbolic_real() -> Self {
        ProductPair { class: CompositionClass::Hyperbolic, x: Scalar::one(), j_scalar: Scalar::one() }
    }
}

/// Values a realization acts on.
pub trait Element: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_sub(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    /// The unit of the algebra `self` lives in.
    fn one_like(&self) -> Self;
    /// Matrix size or phase-space dimension.
    fn size(&self) -> usize;
    /// Composite-system representation of `self ⊗ other`.
    fn tensor(&self, other: &Self) -> Self;
    /// Canonical swap isomorphism, `left` being the size of the first factor.
    fn swap_factors(&self, left: usize) -> Result<Self>;
    fn to_json(&self) -> Value;
    /// Strictly simpler variants, for counterexample minimization.
    fn shrink(&self) -> Vec<Self>;
}

impl Element for MatrixElement {
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        MatrixElement::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        MatrixElement::is_zero(self)
    }
    fn one_like(&self) -> Self {
        MatrixElement::identity(self.n())
    }
    fn size(&self) -> usize {
        self.n()
    }
    fn tensor(&self, other: &Self) -> Self {
        self.kron(other)
    }
    fn swap_factors(&self, left: usize) -> Result<Self> {
        MatrixElement::swap_factors(self, left)
    }
    fn to_json(&self) -> Value {
        MatrixElement::to_json(self)
    }
    fn shrink(&self) -> Vec<Self> {
        self.shrink_candidates()
    }
}

impl Element for PhasePolynomial {
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        PhasePolynomial::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        PhasePolynomial::is_zero(self)
    }
    fn one_like(&self) -> Self {
        PhasePolynomial::one(self.dim())
    }
    fn size(&self) -> usize {
        self.dim()
    }
    /// Variables of `other` are relabelled to the block after `self`'s.
    fn tensor(&self, other: &Self) -> Self {
        let d = self.dim() + other.dim();
        &self.embed(d, 0) * &other.embed(d, self.dim())
    }
    fn swap_factors(&self, left: usize) -> Result<Self> {
        self.swap_blocks(left)
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn shrink(&self) -> Vec<Self> {
        self.shrink_candidates()
    }
}

/// A product pair acting on one kind of element.
pub trait Realization: Send + Sync {
    type Element: Element;

    fn pair(&self) -> &ProductPair;

    fn name(&self) -> String;

    /// `α`, or `τ` in the parabolic-symmetric class.
    fn bracket(&self, f: &Self::Element, g: &Self::Element) -> Result<Self::Element>;

    fn sigma(&self, f: &Self::Element, g: &Self::Element) -> Result<Self::Element>;

    /// `β = σ + J α`.
    fn beta(&self, f: &Self::Element, g: &Self::Element) -> Result<Self::Element> {
        beta_product(f, g, self)
    }
}

pub fn beta_product<R: Realization + ?Sized>(
    f: &R::Element,
    g: &R::Element,
    r: &R,
) -> Result<R::Element> {
    let sigma = r.sigma(f, g)?;
    let j = &r.pair().j_scalar;
    if j.is_zero() {
        return Ok(sigma);
    }
    sigma.try_add(&r.bracket(f, g)?.scale(j))
}

impl<R: Realization + ?Sized> Realization for &R {
    type Element = R::Element;
    fn pair(&self) -> &ProductPair {
        (**self).pair()
    }
    fn name(&self) -> String {
        (**self).name()
    }
    fn bracket(&self, f: &Self::Element, g: &Self::Element) -> Result<Self::Element> {
        (**self).bracket(f, g)
    }
    fn sigma(&self, f: &Self::Element, g: &Self::Element) -> Result<Self::Element> {
        (**self).sigma(f, g)
    }
    fn beta(&self, f: &Self::Element, g: &Self::Element) -> Result<Self::Element> {
        (**self).beta(f, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn j_squares_to_x() {
        for pair in [
            ProductPair::elliptic(&rat(2, 1)),
            ProductPair::elliptic(&rat(3, 5)),
            ProductPair::elliptic_formal(),
            ProductPair::parabolic(),
            ProductPair::parabolic_symmetric(),
            ProductPair::hyperbolic(),
            ProductPair::hyperbolic_real(),
        ] {
            assert_eq!(&pair.j_scalar * &pair.j_scalar, pair.x, "{:?}", pair.class);
        }
        assert_eq!(ProductPair::elliptic(&rat(2, 1)).x, Scalar::from_int(-1));
    }

    #[test]
    fn class_names_round_trip() {
        for c in CompositionClass::ALL {
            assert_eq!(c.name().parse::<CompositionClass>().unwrap(), c);
        }
        assert!("quantum".parse::<CompositionClass>().is_err());
    }
}
