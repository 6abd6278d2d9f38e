//! Sampled exact checks of the algebraic identities of a product pair.
//!
//! Each check takes pre-drawn samples (`[f, g, h]` triples unless noted) and
//! produces a [`CheckReport`]; failures carry the first failing sample,
//! minimized.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase::PhasePolynomial;
use crate::realization::{
    moyal_star, poisson_bracket, CompositionClass, Element, ProductPair, Realization,
};
use crate::report::{check_samples, CheckReport, Comparison};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    Sigma,
    /// `α`, or `τ` in the symmetric-bracket class.
    Bracket,
    Beta,
}

pub fn apply<R: Realization>(r: &R, product: Product, f: &R::Element, g: &R::Element) -> Result<R::Element> {
    match product {
        Product::Sigma => r.sigma(f, g),
        Product::Bracket => r.bracket(f, g),
        Product::Beta => r.beta(f, g),
    }
}

/// `(f*g)*h - f*(g*h)`.
pub fn associator<R: Realization>(
    r: &R,
    product: Product,
    f: &R::Element,
    g: &R::Element,
    h: &R::Element,
) -> Result<R::Element> {
    let left = apply(r, product, &apply(r, product, f, g)?, h)?;
    let right = apply(r, product, f, &apply(r, product, g, h)?)?;
    left.try_sub(&right)
}

const FGH: [&str; 3] = ["f", "g", "h"];

/// `[f,g,h]_σ + x [f,g,h]_α = 0`.
pub fn check_petersen<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
    let x = r.pair().x.clone();
    check_samples("petersen", &r.name(), &FGH, samples, |s| {
        let sigma = associator(r, Product::Sigma, &s[0], &s[1], &s[2])?;
        let alpha = associator(r, Product::Bracket, &s[0], &s[1], &s[2])?;
        Ok(Comparison::new(sigma, alpha.scale(&(-&x))))
    })
}

/// `[h,g,h]_σ = 0` and `[σ(h,h),g,h]_σ = 0` on `[g, h]` samples.
pub fn check_flexible_jordan<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
    check_samples("flexible-jordan", &r.name(), &["g", "h"], samples, |s| {
        let (g, h) = (&s[0], &s[1]);
        let flexible = associator(r, Product::Sigma, h, g, h)?;
        if !flexible.is_zero() {
            return Ok(Comparison::vanishes(flexible).with_note("flexible law [h,g,h]_sigma"));
        }
        let hh = r.sigma(h, h)?;
        let jordan = associator(r, Product::Sigma, &hh, g, h)?;
        Ok(Comparison::vanishes(jordan).with_note("Jordan identity [h sigma h, g, h]_sigma"))
    })
}

/// Left rule `f α σ(g,h) = σ(fαg, h) + σ(g, fαh)` and right rule
/// `σ(g,h) α f = σ(gαf, h) + σ(g, hαf)`.
pub fn check_leibniz<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
    check_samples("leibniz", &r.name(), &FGH, samples, |s| {
        let (f, g, h) = (&s[0], &s[1], &s[2]);
        let gh = r.sigma(g, h)?;
        let left_lhs = r.bracket(f, &gh)?;
        let left_rhs = r.sigma(&r.bracket(f, g)?, h)?.try_add(&r.sigma(g, &r.bracket(f, h)?)?)?;
        if left_lhs != left_rhs {
            return Ok(Comparison::new(left_lhs, left_rhs).with_note("left Leibniz"));
        }
        let right_lhs = r.bracket(&gh, f)?;
        let right_rhs = r.sigma(&r.bracket(g, f)?, h)?.try_add(&r.sigma(g, &r.bracket(h, f)?)?)?;
        Ok(Comparison::new(right_lhs, right_rhs).with_note("right Leibniz"))
    })
}

/// `fα(gαh) + gα(hαf) + hα(fαg) = 0`.
pub fn check_jacobi<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
    check_samples("jacobi", &r.name(), &FGH, samples, |s| {
        let (f, g, h) = (&s[0], &s[1], &s[2]);
        let sum = r
            .bracket(f, &r.bracket(g, h)?)?
            .try_add(&r.bracket(g, &r.bracket(h, f)?)?)?
            .try_add(&r.bracket(h, &r.bracket(f, g)?)?)?;
        Ok(Comparison::vanishes(sum))
    })
}

/// `σ(f,1) = σ(1,f) = f` and `f α 1 = 1 α f = 0`, on the first sample entry.
pub fn check_unit_laws<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
    check_samples("unit-laws", &r.name(), &["f"], samples, |s| {
        let f = &s[0];
        let one = f.one_like();
        for (note, value) in [("sigma(f,1)", r.sigma(f, &one)?), ("sigma(1,f)", r.sigma(&one, f)?)] {
            if value != *f {
                return Ok(Comparison::new(value, f.clone()).with_note(note));
            }
        }
        for (note, value) in [("f alpha 1", r.bracket(f, &one)?), ("1 alpha f", r.bracket(&one, f)?)] {
            if !value.is_zero() {
                return Ok(Comparison::vanishes(value).with_note(note));
            }
        }
        Ok(Comparison::new(f.clone(), f.clone()))
    })
}

/// `β = σ + Jα` is associative.
pub fn check_beta_associativity<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
    check_samples("beta-associativity", &r.name(), &FGH, samples, |s| {
        Ok(Comparison::vanishes(associator(r, Product::Beta, &s[0], &s[1], &s[2])?))
    })
}

/// `(F★G)★H = F★(G★H)` with formal `ħ`.
pub fn check_star_associativity(samples: &[Vec<PhasePolynomial>]) -> CheckReport {
    check_samples("star-associativity", "Moyal polynomials (formal h)", &FGH, samples, |s| {
        let left = moyal_star(&moyal_star(&s[0], &s[1])?, &s[2])?;
        let right = moyal_star(&s[0], &moyal_star(&s[1], &s[2])?)?;
        Ok(Comparison::new(left, right))
    })
}

/// `α(F,G)|_{ħ=0}` is the Poisson bracket and `σ(F,G)|_{ħ=0}` the pointwise
/// product, for the given realization on `[f, g]` samples.
pub fn check_classical_limit<R>(r: &R, samples: &[Vec<PhasePolynomial>]) -> CheckReport
where
    R: Realization<Element = PhasePolynomial>,
{
    check_samples("classical-limit", &r.name(), &["f", "g"], samples, |s| {
        let (f, g) = (&s[0], &s[1]);
        let alpha = r.bracket(f, g)?.hbar_to_zero();
        let poisson = poisson_bracket(&f.hbar_to_zero(), &g.hbar_to_zero())?;
        if alpha != poisson {
            return Ok(Comparison::new(alpha, poisson).with_note("bracket at h = 0"));
        }
        let sigma = r.sigma(f, g)?.hbar_to_zero();
        let product = &f.hbar_to_zero() * &g.hbar_to_zero();
        Ok(Comparison::new(sigma, product).with_note("sigma at h = 0"))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Leibniz,
    Jacobi,
    Petersen,
    FlexibleJordan,
    UnitLaws,
    BetaAssociativity,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Leibniz,
        Identity::Jacobi,
        Identity::Petersen,
        Identity::FlexibleJordan,
        Identity::UnitLaws,
        Identity::BetaAssociativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Leibniz => "leibniz",
            Identity::Jacobi => "jacobi",
            Identity::Petersen => "petersen",
            Identity::FlexibleJordan => "flexible-jordan",
            Identity::UnitLaws => "unit-laws",
            Identity::BetaAssociativity => "beta-associativity",
        }
    }

    /// The symmetric bracket is not a Lie bracket, so Jacobi is not expected
    /// there.
    pub fn applies_to(self, class: CompositionClass) -> bool {
        !(self == Identity::Jacobi && class == CompositionClass::ParabolicSymmetric)
    }

    pub fn check<R: Realization>(self, r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
        match self {
            Identity::Leibniz => check_leibniz(r, samples),
            Identity::Jacobi => check_jacobi(r, samples),
            Identity::Petersen => check_petersen(r, samples),
            Identity::FlexibleJordan => check_flexible_jordan(r, samples),
            Identity::UnitLaws => check_unit_laws(r, samples),
            Identity::BetaAssociativity => check_beta_associativity(r, samples),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown identity {s:?}")))
    }
}

/// Every applicable identity on the same samples.
pub fn run_identity_suite<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> Vec<CheckReport> {
    Identity::ALL
        .into_iter()
        .filter(|i| i.applies_to(r.pair().class))
        .map(|i| i.check(r, samples))
        .collect()
}

/// Deliberate damage for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corruption {
    /// Drop the class normalization of the bracket: elliptic brackets are
    /// multiplied back by `iħ` (the raw commutator), all others by 2.
    AlphaScale,
    /// Claim `x + 1` instead of `x`.
    X,
}

impl FromStr for Corruption {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha-scale" => Ok(Corruption::AlphaScale),
            "x" => Ok(Corruption::X),
            _ => Err(Error::Malformed(format!("unknown corruption {s:?}"))),
        }
    }
}

/// A realization with a rescaled bracket and/or a wrong `x`.
#[derive(Clone, Debug)]
pub struct Corrupted<R> {
    inner: R,
    pair: ProductPair,
    bracket_scale: Scalar,
    label: Option<Corruption>,
}

impl<R: Realization> Corrupted<R> {
    /// `corruption = None` leaves `inner` untouched.
    pub fn new(inner: R, corruption: Option<Corruption>) -> Self {
        let mut pair = inner.pair().clone();
        let mut bracket_scale = Scalar::one();
        match corruption {
            None => {}
            Some(Corruption::AlphaScale) => {
                bracket_scale = match pair.class {
                    CompositionClass::Elliptic => {
                        let half_j = &pair.j_scalar;
                        half_j * &Scalar::from_int(2)
                    }
                    _ => Scalar::from_int(2),
                };
            }
            Some(Corruption::X) => pair.x = &pair.x + &Scalar::one(),
        }
        Corrupted { inner, pair, bracket_scale, label: corruption }
    }

    pub fn with_bracket_scale(inner: R, bracket_scale: Scalar) -> Self {
        let pair = inner.pair().clone();
        Corrupted { inner, pair, bracket_scale, label: Some(Corruption::AlphaScale) }
    }

    pub fn with_x(inner: R, x: Scalar) -> Self {
        let mut pair = inner.pair().clone();
        pair.x = x;
        Corrupted { inner, pair, bracket_scale: Scalar::one(), label: Some(Corruption::X) }
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }
}

impl<R: Realization> Realization for Corrupted<R> {
    type Element = R::Element;

    fn pair(&self) -> &ProductPair {
        &self.pair
    }

    fn name(&self) -> String {
        match self.label {
            None => self.inner.name(),
            Some(Corruption::AlphaScale) => {
                format!("{} [bracket scaled by {}]", self.inner.name(), self.bracket_scale)
            }
            Some(Corruption::X) => format!("{} [x claimed as {}]", self.inner.name(), self.pair.x),
        }
    }

    fn bracket(&self, f: &R::Element, g: &R::Element) -> Result<R::Element> {
        let b = self.inner.bracket(f, g)?;
        Ok(if self.bracket_scale.is_one() { b } else { b.scale(&self.bracket_scale) })
    }

    fn sigma(&self, f: &R::Element, g: &R::Element) -> Result<R::Element> {
        self.inner.sigma(f, g)
    }

    fn beta(&self, f: &R::Element, g: &R::Element) -> Result<R::Element> {
        crate::realization::beta_product(f, g, self)
    }
}
