//! Moyal products of monomials against the closed form
//! `x^a ★ p^b = Σ_k (iħ/2)^k k! C(a,k) C(b,k) x^(a-k) p^(b-k)`.

use composable_qm::realization::{moyal_alpha, moyal_sigma, moyal_star, moyal_star_truncated, poisson_bracket};
use composable_qm::scalar::rat;
use composable_qm::{parse_poly, Monomial, PhasePolynomial, Scalar, Unit};
use num_bigint::BigInt;
use num_traits::One;

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `(± i/2)^k · k! C(a,k) C(b,k) · ħ^k` as an exact scalar.
fn coefficient(a: u32, b: u32, k: u32, sign: i64) -> Scalar {
    let magnitude = factorial(k) * binomial(a, k) * binomial(b, k);
    let q = composable_qm::Rational::new(magnitude, BigInt::from(2).pow(k));
    let (re, im) = match k % 4 {
        0 => (q, rat(0, 1)),
        1 => (rat(0, 1), q * rat(sign, 1)),
        2 => (-q, rat(0, 1)),
        _ => (rat(0, 1), -q * rat(sign, 1)),
    };
    Scalar::term(if k % 2 == 1 { Unit::Imaginary } else { Unit::Real }, k, re, im)
}

fn oracle(a: u32, b: u32, sign: i64) -> PhasePolynomial {
    let terms = (0..=a.min(b)).map(|k| (Monomial::from_exponents(vec![a - k, b - k]), coefficient(a, b, k, sign)));
    PhasePolynomial::from_terms(1, terms)
}

fn x_pow(a: u32) -> PhasePolynomial {
    PhasePolynomial::monomial(1, Monomial::from_exponents(vec![a, 0]), Scalar::one())
}

fn p_pow(b: u32) -> PhasePolynomial {
    PhasePolynomial::monomial(1, Monomial::from_exponents(vec![0, b]), Scalar::one())
}

#[test]
fn monomial_products_match_closed_form() {
    for a in 0..=5 {
        for b in 0..=5 {
            assert_eq!(moyal_star(&x_pow(a), &p_pow(b)).unwrap(), oracle(a, b, 1), "x^{a} * p^{b}");
            assert_eq!(moyal_star(&p_pow(b), &x_pow(a)).unwrap(), oracle(a, b, -1), "p^{b} * x^{a}");
        }
    }
}

#[test]
fn generators() {
    let star = moyal_star(&parse_poly("x1").unwrap(), &parse_poly("p1").unwrap()).unwrap();
    assert_eq!(star.to_string(), "x1*p1 + (1/2)*i*h");
    let alpha = moyal_alpha(&parse_poly("x1").unwrap(), &parse_poly("p1").unwrap()).unwrap();
    assert_eq!(alpha, parse_poly("1").unwrap());
}

#[test]
fn bracket_of_x_cubed_and_p_cubed() {
    // x³★p³ − p³★x³ keeps only the odd k terms, with k = 1 and k = 3
    // contributing 9 x²p² and −(3/2)ħ² respectively once divided by iħ.
    let f = x_pow(3);
    let g = p_pow(3);
    let expected = parse_poly("9*x1^2*p1^2 - (3/2)*h^2").unwrap();
    assert_eq!(moyal_alpha(&f, &g).unwrap(), expected);
    let sigma = moyal_sigma(&f, &g).unwrap();
    assert_eq!(sigma, parse_poly("x1^3*p1^3 - (9/2)*h^2*x1*p1").unwrap());
    assert_eq!(moyal_alpha(&f, &g).unwrap().hbar_to_zero(), poisson_bracket(&f, &g).unwrap());
}

#[test]
fn truncation_keeps_low_orders() {
    let star = moyal_star_truncated(&x_pow(3), &p_pow(3), 1).unwrap();
    assert_eq!(star, parse_poly("x1^3*p1^3 + (9/2)*i*h*x1^2*p1^2").unwrap());
}
