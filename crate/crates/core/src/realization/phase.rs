use super::{moyal, ProductPair, Realization};
use crate::error::{Error, Result};
use crate::phase::PhasePolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseKind {
    /// Poisson bracket with pointwise product.
    Poisson,
    /// Symmetric bracket `⟨x, p⟩ = ⟨p, x⟩ = 1` with pointwise product.
    Symmetric,
    /// Moyal bracket and symmetrized star product, formal `ħ`.
    Moyal,
}

#[derive(Clone, Debug)]
pub struct PhaseRealization {
    pair: ProductPair,
    kind: PhaseKind,
}

impl PhaseRealization {
    pub fn classical() -> Self {
        PhaseRealization { pair: ProductPair::parabolic(), kind: PhaseKind::Poisson }
    }

    pub fn symmetric() -> Self {
        PhaseRealization { pair: ProductPair::parabolic_symmetric(), kind: PhaseKind::Symmetric }
    }

    pub fn moyal() -> Self {
        PhaseRealization { pair: ProductPair::elliptic_formal(), kind: PhaseKind::Moyal }
    }

    pub fn kind(&self) -> PhaseKind {
        self.kind
    }
}

impl Realization for PhaseRealization {
    type Element = PhasePolynomial;

    fn pair(&self) -> &ProductPair {
        &self.pair
    }

    fn name(&self) -> String {
        match self.kind {
            PhaseKind::Poisson => "Poisson polynomials".into(),
            PhaseKind::Symmetric => "symmetric-bracket polynomials".into(),
            PhaseKind::Moyal => "Moyal polynomials (formal h)".into(),
        }
    }

    fn bracket(&self, f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
        match self.kind {
            PhaseKind::Poisson => poisson_bracket(f, g),
            PhaseKind::Symmetric => symmetric_bracket(f, g),
            PhaseKind::Moyal => moyal::moyal_alpha(f, g),
        }
    }

    fn sigma(&self, f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
        match self.kind {
            PhaseKind::Poisson | PhaseKind::Symmetric => pointwise(f, g),
            PhaseKind::Moyal => moyal::moyal_sigma(f, g),
        }
    }
}

pub fn pointwise(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    f.checked_mul(g)
}

fn biderivation(f: &PhasePolynomial, g: &PhasePolynomial, sign: i64) -> Result<PhasePolynomial> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { left: f.dim(), right: g.dim() });
    }
    f.unit()?.combine(g.unit()?)?;
    let d = f.dim();
    let mut out = PhasePolynomial::zero(d);
    for k in 0..d {
        let (x, p) = (k, d + k);
        let xp = &f.derivative_at(x) * &g.derivative_at(p);
        let px = &f.derivative_at(p) * &g.derivative_at(x);
        out = if sign < 0 { &(&out + &xp) - &px } else { &(&out + &xp) + &px };
    }
    Ok(out)
}

/// `{F, G} = Σ ∂F/∂x_i ∂G/∂p_i - ∂F/∂p_i ∂G/∂x_i`.
pub fn poisson_bracket(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    biderivation(f, g, -1)
}

/// The biderivation with `⟨x_i, p_i⟩ = ⟨p_i, x_i⟩ = 1`.
pub fn symmetric_bracket(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    biderivation(f, g, 1)
}
