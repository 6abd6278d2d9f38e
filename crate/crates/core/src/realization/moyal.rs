//! Moyal star product with formal `ħ`.
//!
//! `F ★ G = Σ_k (iħ/2)^k / k! ∇^k(F, G)` where
//! `∇ = Σ_i ←∂/∂x_i →∂/∂p_i - ←∂/∂p_i →∂/∂x_i`. `F(L) G(R)` is represented
//! as one polynomial on a doubled phase space; `∇` acts there as an ordinary
//! second-order operator and the diagonal restriction gives back a polynomial
//! on the original space. Each application lowers the total degree by two, so
//! the series terminates exactly.

use crate::error::{Error, Result};
use crate::phase::PhasePolynomial;
use crate::scalar::{Scalar, Unit};

fn check(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { left: f.dim(), right: g.dim() });
    }
    if f.unit()?.combine(g.unit()?)? == Unit::Split {
        return Err(Error::WrongTower("Moyal coefficients must be complex, not split-complex".into()));
    }
    Ok(())
}

/// `iħ/2` with formal `ħ`.
fn half_i_hbar() -> Scalar {
    &(&Scalar::i() * &Scalar::hbar()) * &Scalar::rational(1, 2)
}

/// `∇` on the doubled space of dimension `2d`: left copy is block `0..d`,
/// right copy is block `d..2d`.
fn nabla(t: &PhasePolynomial, d: usize) -> PhasePolynomial {
    let n = 2 * d;
    let mut out = PhasePolynomial::zero(n);
    for k in 0..d {
        let (x_left, x_right) = (k, d + k);
        let (p_left, p_right) = (n + k, n + d + k);
        let forward = t.derivative_at(x_left).derivative_at(p_right);
        let backward = t.derivative_at(p_left).derivative_at(x_right);
        out = &(&out + &forward) - &backward;
    }
    out
}

fn star_series(f: &PhasePolynomial, g: &PhasePolynomial, order: Option<u32>) -> Result<PhasePolynomial> {
    check(f, g)?;
    let d = f.dim();
    let c = half_i_hbar();
    let mut term = &f.embed(2 * d, 0) * &g.embed(2 * d, d);
    let mut weight = Scalar::one();
    let mut out = PhasePolynomial::zero(d);
    let mut k: i64 = 0;
    while !term.is_zero() && order.is_none_or(|o| k <= o as i64) {
        out = &out + &term.contract_halves().scale(&weight);
        term = nabla(&term, d);
        k += 1;
        weight = &(&weight * &c) * &Scalar::rational(1, k);
    }
    Ok(out)
}

pub fn moyal_star(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    star_series(f, g, None)
}

/// The star series cut after the `ħ^order` term.
pub fn moyal_star_truncated(
    f: &PhasePolynomial,
    g: &PhasePolynomial,
    order: u32,
) -> Result<PhasePolynomial> {
    star_series(f, g, Some(order))
}

/// `(F★G - G★F) / (iħ)`.
pub fn moyal_alpha(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    let diff = moyal_star(f, g)? - moyal_star(g, f)?;
    let ih = &Scalar::i() * &Scalar::hbar();
    diff.try_map_coeffs(|c| c.checked_div(&ih))
}

/// `(F★G + G★F) / 2`.
pub fn moyal_sigma(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    let sum = moyal_star(f, g)? + moyal_star(g, f)?;
    Ok(sum.scale(&Scalar::rational(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::poisson_bracket;
    use crate::text::parse_poly;

    fn poly(s: &str) -> PhasePolynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn x_star_p() {
        assert_eq!(moyal_star(&poly("x1"), &poly("p1")).unwrap(), poly("x1*p1 + (1/2)*i*h"));
        assert_eq!(moyal_star(&poly("x1"), &poly("p1")).unwrap().to_string(), "x1*p1 + (1/2)*i*h");
    }

    #[test]
    fn x2_star_p2() {
        assert_eq!(
            moyal_star(&poly("x1^2"), &poly("p1^2")).unwrap(),
            poly("x1^2*p1^2 + 2*i*h*x1*p1 - (1/2)*h^2")
        );
    }

    #[test]
    fn unit_law() {
        let f = poly("x1^3*p1 - 2*x1 + h");
        assert_eq!(moyal_star(&f, &poly("1")).unwrap(), f);
        assert_eq!(moyal_star(&poly("1"), &f).unwrap(), f);
    }

    #[test]
    fn alpha_and_sigma() {
        assert_eq!(moyal_alpha(&poly("x1"), &poly("p1")).unwrap(), poly("1"));
        assert_eq!(moyal_sigma(&poly("x1^2"), &poly("p1^2")).unwrap(), poly("x1^2*p1^2 - (1/2)*h^2"));
        let f = poly("x1^2*p1 + 3*p1^3");
        assert!(moyal_alpha(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn classical_limit() {
        let f = poly("x1^3*p1 + x2*p1^2");
        let g = poly("p1^2*x2 - x1*p2^3");
        assert_eq!(moyal_alpha(&f, &g).unwrap().hbar_to_zero(), poisson_bracket(&f, &g).unwrap());
        assert_eq!(moyal_sigma(&f, &g).unwrap().hbar_to_zero(), &f * &g);
    }

    #[test]
    fn truncation_is_explicit() {
        let t = moyal_star_truncated(&poly("x1^2"), &poly("p1^2"), 1).unwrap();
        assert_eq!(t, poly("x1^2*p1^2 + 2*i*h*x1*p1"));
    }

    #[test]
    fn split_coefficients_rejected() {
        assert!(matches!(moyal_star(&poly("j*x1"), &poly("p1")), Err(Error::WrongTower(_))));
    }
}
