use num_traits::Zero;

use super::{CompositionClass, ProductPair, Realization};
use crate::error::{Error, Result};
use crate::matrix::MatrixElement;
use crate::scalar::{Rational, Scalar, Unit};

#[derive(Clone, Debug)]
enum Scale {
    /// α = [A, B] / (iħ)
    Elliptic(Scalar),
    /// α = [A, B] / 2
    Hyperbolic,
}

/// Commutator / anticommutator realization on square matrices.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pair: ProductPair,
    scale: Scale,
}

impl MatrixRealization {
    /// Complex matrices with a numeric `ħ > 0`; `ħ = 2` gives `x = -1`.
    pub fn elliptic(hbar: Rational) -> Result<Self> {
        if hbar <= Rational::zero() {
            return Err(Error::Malformed(format!("hbar must be positive, got {hbar}")));
        }
        let pair = ProductPair::elliptic(&hbar);
        Ok(MatrixRealization {
            pair,
            scale: Scale::Elliptic(&Scalar::i() * &Scalar::from_rational(hbar)),
        })
    }

    /// Real or split-complex matrices with `J = j`.
    pub fn hyperbolic() -> Self {
        MatrixRealization { pair: ProductPair::hyperbolic(), scale: Scale::Hyperbolic }
    }

    /// Real matrices with `J = 1`, for which `β` is the plain matrix product.
    pub fn hyperbolic_real() -> Self {
        MatrixRealization { pair: ProductPair::hyperbolic_real(), scale: Scale::Hyperbolic }
    }

    fn check_tower(&self, a: &MatrixElement, b: &MatrixElement) -> Result<()> {
        let unit = a.unit()?.combine(b.unit()?)?;
        let forbidden = match self.pair.class {
            CompositionClass::Elliptic => Unit::Split,
            _ => Unit::Imaginary,
        };
        if unit == forbidden {
            return Err(Error::WrongTower(format!(
                "{} matrices cannot carry {:?} entries",
                self.pair.class, unit
            )));
        }
        Ok(())
    }
}

impl Realization for MatrixRealization {
    type Element = MatrixElement;

    fn pair(&self) -> &ProductPair {
        &self.pair
    }

    fn name(&self) -> String {
        match &self.scale {
            Scale::Elliptic(ih) => format!("elliptic matrices (i*hbar = {ih})"),
            Scale::Hyperbolic => format!("hyperbolic matrices (J = {})", self.pair.j_scalar),
        }
    }

    fn bracket(&self, a: &MatrixElement, b: &MatrixElement) -> Result<MatrixElement> {
        matrix_alpha(a, b, self)
    }

    fn sigma(&self, a: &MatrixElement, b: &MatrixElement) -> Result<MatrixElement> {
        self.check_tower(a, b)?;
        matrix_sigma(a, b)
    }
}

/// The class-scaled commutator.
pub fn matrix_alpha(
    a: &MatrixElement,
    b: &MatrixElement,
    realization: &MatrixRealization,
) -> Result<MatrixElement> {
    realization.check_tower(a, b)?;
    let commutator = a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)?;
    match &realization.scale {
        Scale::Elliptic(ih) => commutator.try_map(|s| s.checked_div(ih)),
        Scale::Hyperbolic => Ok(commutator.scale(&Scalar::rational(1, 2))),
    }
}

/// `(AB + BA) / 2`.
pub fn matrix_sigma(a: &MatrixElement, b: &MatrixElement) -> Result<MatrixElement> {
    let anti = a.checked_mul(b)?.checked_add(&b.checked_mul(a)?)?;
    Ok(anti.scale(&Scalar::rational(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn elliptic() -> MatrixRealization {
        MatrixRealization::elliptic(rat(2, 1)).unwrap()
    }

    #[test]
    fn pauli_commutator() {
        let (x, y, z) = (MatrixElement::pauli_x(), MatrixElement::pauli_y(), MatrixElement::pauli_z());
        // [σx, σy] = 2iσz, divided by iħ = 2i
        assert_eq!(matrix_alpha(&x, &y, &elliptic()).unwrap(), z);
        assert!(matrix_alpha(&x, &x, &elliptic()).unwrap().is_zero());
    }

    #[test]
    fn hyperbolic_matrix_units() {
        let e12 = MatrixElement::unit_matrix(2, 0, 1);
        let e21 = MatrixElement::unit_matrix(2, 1, 0);
        let expected = MatrixElement::diag(vec![Scalar::rational(1, 2), Scalar::rational(-1, 2)]);
        assert_eq!(matrix_alpha(&e12, &e21, &MatrixRealization::hyperbolic()).unwrap(), expected);
    }

    #[test]
    fn pauli_anticommutator() {
        let (x, y) = (MatrixElement::pauli_x(), MatrixElement::pauli_y());
        assert!(matrix_sigma(&x, &y).unwrap().is_zero());
        assert_eq!(matrix_sigma(&x, &x).unwrap(), MatrixElement::identity(2));
        let a = MatrixElement::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(matrix_sigma(&MatrixElement::identity(2), &a).unwrap(), a);
    }

    #[test]
    fn beta_is_matrix_product() {
        let a = MatrixElement::from_ints(&[&[1, 2], &[0, -1]]);
        let b = MatrixElement::pauli_y();
        assert_eq!(elliptic().beta(&a, &b).unwrap(), &a * &b);
        let c = MatrixElement::from_ints(&[&[3, 1], &[1, 0]]);
        assert_eq!(MatrixRealization::hyperbolic_real().beta(&a, &c).unwrap(), &a * &c);
    }

    #[test]
    fn tower_and_size_errors() {
        let s = MatrixElement::diag(vec![Scalar::j(), Scalar::one()]);
        assert!(matches!(matrix_alpha(&s, &s, &elliptic()), Err(Error::WrongTower(_))));
        let y = MatrixElement::pauli_y();
        assert!(matches!(
            matrix_alpha(&y, &y, &MatrixRealization::hyperbolic()),
            Err(Error::WrongTower(_))
        ));
        let big = MatrixElement::identity(3);
        assert!(matrix_sigma(&y, &big).is_err());
        assert!(MatrixRealization::elliptic(rat(-1, 1)).is_err());
    }
}
