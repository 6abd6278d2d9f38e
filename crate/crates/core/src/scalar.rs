//! Exact scalar tower.
//!
//! A [`Scalar`] is a polynomial in the formal Planck parameter `h` whose
//! coefficients are `a + u b` with `a, b` rational and `u` either the complex
//! unit `i` (`i^2 = -1`) or the split-complex unit `j` (`j^2 = +1`). Plain
//! rationals and constant complex numbers are the degenerate cases; the
//! [`Level`] of a value is derived from its canonical form.
//!
//! Canonical form: no stored zero coefficients, and the unit tag is
//! [`Unit::Real`] whenever every imaginary part vanishes. Equality is
//! therefore value equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::text;

pub type Rational = BigRational;

/// Builds `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    Real,
    /// `i^2 = -1`
    Imaginary,
    /// `j^2 = +1`
    Split,
}

impl Unit {
    /// `u^2` for the imaginary unit; meaningless (and unused) for `Real`.
    pub fn square(self) -> i8 {
        match self {
            Unit::Real => 0,
            Unit::Imaginary => -1,
            Unit::Split => 1,
        }
    }

    pub fn symbol(self) -> Option<char> {
        match self {
            Unit::Real => None,
            Unit::Imaginary => Some('i'),
            Unit::Split => Some('j'),
        }
    }

    pub fn combine(self, other: Unit) -> Result<Unit> {
        match (self, other) {
            (Unit::Real, u) | (u, Unit::Real) => Ok(u),
            (a, b) if a == b => Ok(a),
            _ => Err(Error::MixedUnits),
        }
    }
}

/// Position of a value in the tower `rational -> complex -> h-polynomial`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Rational,
    Complex,
    SplitComplex,
    HbarPoly,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    unit: Unit,
    // h power -> (real part, unit part)
    coeffs: BTreeMap<u32, (Rational, Rational)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { unit: Unit::Real, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(Unit::Real, 0, q, Rational::zero())
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    pub fn i() -> Self {
        Self::complex(Rational::zero(), Rational::one())
    }

    pub fn j() -> Self {
        Self::split(Rational::zero(), Rational::one())
    }

    /// The formal Planck parameter.
    pub fn hbar() -> Self {
        Self::hbar_pow(1)
    }

    pub fn hbar_pow(k: u32) -> Self {
        Self::term(Unit::Real, k, Rational::one(), Rational::zero())
    }

    pub fn complex(re: Rational, im: Rational) -> Self {
        Self::term(Unit::Imaginary, 0, re, im)
    }

    pub fn split(re: Rational, im: Rational) -> Self {
        Self::term(Unit::Split, 0, re, im)
    }

    /// `(re + u im) h^power`.
    pub fn term(unit: Unit, power: u32, re: Rational, im: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(power, (re, im));
        Scalar { unit, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        self.coeffs.retain(|_, (a, b)| !(a.is_zero() && b.is_zero()));
        if self.coeffs.values().all(|(_, b)| b.is_zero()) {
            self.unit = Unit::Real;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn level(&self) -> Level {
        if self.coeffs.keys().any(|&k| k > 0) {
            Level::HbarPoly
        } else {
            match self.unit {
                Unit::Real => Level::Rational,
                Unit::Imaginary => Level::Complex,
                Unit::Split => Level::SplitComplex,
            }
        }
    }

    /// Highest power of `h`, `None` for zero.
    pub fn hbar_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `(power, real, unit part)` triples in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational, &Rational)> {
        self.coeffs.iter().map(|(&k, (a, b))| (k, a, b))
    }

    pub fn coeff(&self, power: u32) -> Option<(&Rational, &Rational)> {
        self.coeffs.get(&power).map(|(a, b)| (a, b))
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.level() {
            Level::Rational => Some(
                self.coeffs.get(&0).map(|(a, _)| a.clone()).unwrap_or_else(Rational::zero),
            ),
            _ if self.is_zero() => Some(Rational::zero()),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        let unit = self.unit.combine(other.unit)?;
        let mut coeffs = self.coeffs.clone();
        for (k, (a, b)) in &other.coeffs {
            let e = coeffs.entry(*k).or_insert_with(|| (Rational::zero(), Rational::zero()));
            e.0 += a;
            e.1 += b;
        }
        Ok(Scalar { unit, coeffs }.normalized())
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        let unit = self.unit.combine(other.unit)?;
        let square = Rational::from_integer(BigInt::from(unit.square()));
        let mut coeffs: BTreeMap<u32, (Rational, Rational)> = BTreeMap::new();
        for (k1, (a, b)) in &self.coeffs {
            for (k2, (c, d)) in &other.coeffs {
                let e = coeffs
                    .entry(k1 + k2)
                    .or_insert_with(|| (Rational::zero(), Rational::zero()));
                e.0 += a * c + &square * b * d;
                e.1 += a * d + b * c;
            }
        }
        Ok(Scalar { unit, coeffs }.normalized())
    }

    /// Negates every unit part.
    pub fn conj(&self) -> Scalar {
        let coeffs = self.coeffs.iter().map(|(k, (a, b))| (*k, (a.clone(), -b))).collect();
        Scalar { unit: self.unit, coeffs }
    }

    /// True iff a multiplicative inverse exists. Positive powers of `h` are
    /// never invertible; `a + jb` is invertible iff `a^2 != b^2`.
    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn inverse(&self) -> Result<Scalar> {
        let not_invertible = || Error::NotInvertible(self.to_string());
        if self.coeffs.len() != 1 {
            return Err(not_invertible());
        }
        let (a, b) = self.coeffs.get(&0).ok_or_else(not_invertible)?;
        let square = Rational::from_integer(BigInt::from(self.unit.square()));
        let norm = a * a - square * b * b;
        if norm.is_zero() {
            return Err(not_invertible());
        }
        Ok(Scalar::term(self.unit, 0, a / &norm, -b / &norm))
    }

    /// Exact division. The divisor must be a single `h` power times an
    /// invertible constant, and every power of `self` must be at least that
    /// power.
    pub fn checked_div(&self, divisor: &Scalar) -> Result<Scalar> {
        let inexact = || Error::InexactDivision {
            numerator: self.to_string(),
            denominator: divisor.to_string(),
        };
        if divisor.coeffs.len() != 1 {
            return if self.is_zero() && !divisor.is_zero() {
                Ok(Scalar::zero())
            } else if divisor.is_zero() {
                Err(Error::NotInvertible(divisor.to_string()))
            } else {
                Err(inexact())
            };
        }
        let (&shift, (a, b)) = divisor.coeffs.iter().next().expect("one term");
        let inv = Scalar::term(divisor.unit, 0, a.clone(), b.clone()).inverse()?;
        if self.coeffs.keys().any(|&k| k < shift) {
            return Err(inexact());
        }
        let shifted = Scalar {
            unit: self.unit,
            coeffs: self.coeffs.iter().map(|(k, v)| (k - shift, v.clone())).collect(),
        };
        shifted.checked_mul(&inv)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        (0..k).fold(Scalar::one(), |acc, _| &acc * self)
    }

    /// Substitutes a rational value for `h`.
    pub fn eval_hbar(&self, value: &Rational) -> Scalar {
        let mut out = Scalar::zero();
        for (k, (a, b)) in &self.coeffs {
            let scale = num_traits::pow(value.clone(), *k as usize);
            out = &out + &Scalar::term(self.unit, 0, a * &scale, b * &scale);
        }
        out
    }

    /// The classical limit `h -> 0`.
    pub fn hbar_to_zero(&self) -> Scalar {
        match self.coeffs.get(&0) {
            Some((a, b)) => Scalar::term(self.unit, 0, a.clone(), b.clone()),
            None => Scalar::zero(),
        }
    }

    /// Drops every power of `h` above `order`.
    pub fn truncate(&self, order: u32) -> Scalar {
        let coeffs = self.coeffs.range(..=order).map(|(k, v)| (*k, v.clone())).collect();
        Scalar { unit: self.unit, coeffs }.normalized()
    }

    /// Floating value of a constant complex (or rational) scalar.
    pub fn to_c64(&self) -> Option<Complex64> {
        match self.level() {
            Level::Rational | Level::Complex => {
                let (a, b) = match self.coeffs.get(&0) {
                    Some((a, b)) => (a.to_f64()?, b.to_f64()?),
                    None => (0.0, 0.0),
                };
                Some(Complex64::new(a, b))
            }
            _ => None,
        }
    }

    pub(crate) fn flat_terms(&self) -> Vec<text::FlatTerm<'_>> {
        let mut out = Vec::new();
        for (k, (a, b)) in &self.coeffs {
            if !a.is_zero() {
                out.push(text::FlatTerm { coeff: a, unit: None, hbar: *k });
            }
            if !b.is_zero() {
                out.push(text::FlatTerm { coeff: b, unit: self.unit.symbol(), hbar: *k });
            }
        }
        out
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.flat_terms().into_iter().map(|t| (t, String::new())).collect();
        text::write_sum(f, terms.iter().map(|(t, v)| (t, v.as_str())))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let coeffs = self.coeffs.iter().map(|(k, (a, b))| (*k, (-a, -b))).collect();
        Scalar { unit: self.unit, coeffs }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// The operator impls panic when `i` and `j` values meet; realizations never
// mix them and validate their inputs up front. Use the `checked_*` methods
// for untrusted input.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_complex_zero_divisor() {
        let a = Scalar::split(rat(1, 1), rat(1, 1));
        let b = Scalar::split(rat(1, 1), rat(-1, 1));
        assert!((&a * &b).is_zero());
        assert!(!a.is_invertible());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn hbar_squared() {
        assert_eq!(&Scalar::hbar() * &Scalar::hbar(), Scalar::hbar_pow(2));
        assert_eq!(Scalar::hbar_pow(2).level(), Level::HbarPoly);
    }

    #[test]
    fn mixing_units_is_an_error() {
        assert_eq!(Scalar::i().checked_mul(&Scalar::j()), Err(Error::MixedUnits));
        assert_eq!(Scalar::i().checked_add(&Scalar::j()), Err(Error::MixedUnits));
    }

    #[test]
    fn conjugation() {
        let z = Scalar::complex(rat(3, 1), rat(2, 1));
        assert_eq!(z.conj(), Scalar::complex(rat(3, 1), rat(-2, 1)));
        let s = Scalar::split(rat(1, 1), rat(1, 1));
        assert_eq!(s.conj(), Scalar::split(rat(1, 1), rat(-1, 1)));
        let w = Scalar::complex(rat(5, 7), rat(1, 1));
        assert_eq!(w.conj().conj(), w);
    }

    #[test]
    fn invertibility() {
        assert!(!Scalar::split(rat(1, 1), rat(1, 1)).is_invertible());
        let two_j = Scalar::split(rat(2, 1), rat(1, 1));
        let inv = two_j.inverse().unwrap();
        assert_eq!(inv, Scalar::split(rat(2, 3), rat(-1, 3)));
        assert!(!Scalar::zero().is_invertible());
        assert!(!Scalar::hbar().is_invertible());
        assert!(Scalar::complex(rat(0, 1), rat(2, 1)).is_invertible());
    }

    #[test]
    fn exact_division_by_monomial() {
        let ih = &Scalar::i() * &Scalar::hbar();
        let num = &(&ih * &ih) * &Scalar::from_int(3);
        assert_eq!(num.checked_div(&ih).unwrap(), &ih * &Scalar::from_int(3));
        assert!(Scalar::one().checked_div(&ih).is_err());
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
    }

    #[test]
    fn level_demotes_on_vanishing_imaginary_part() {
        let z = &Scalar::i() * &Scalar::i();
        assert_eq!(z.level(), Level::Rational);
        assert_eq!(z.unit(), Unit::Real);
    }

    #[test]
    fn eval_and_truncate() {
        let s = &Scalar::one() + &(&Scalar::hbar_pow(2) * &Scalar::rational(1, 2));
        assert_eq!(s.eval_hbar(&rat(2, 1)), Scalar::from_int(3));
        assert_eq!(s.hbar_to_zero(), Scalar::one());
        assert_eq!(s.truncate(1), Scalar::one());
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::complex(rat(5, 7), rat(1, 1)).to_string(), "5/7 + i");
        let s = &(&Scalar::i() * &Scalar::hbar()) * &Scalar::rational(1, 2);
        assert_eq!(s.to_string(), "(1/2)*i*h");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_int(-3).to_string(), "-3");
    }
}
