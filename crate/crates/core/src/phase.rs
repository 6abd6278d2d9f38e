//! Polynomials on phase space `(x_1..x_d, p_1..p_d)` with [`Scalar`]
//! coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, Unit};
use crate::text;

/// A canonical coordinate, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    P(usize),
}

/// Exponent vector laid out as `[x_1..x_d, p_1..p_d]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; 2 * dim])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        assert!(exps.len().is_multiple_of(2), "exponent vector must have even length");
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() / 2
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Graded-lex, largest first.
    pub fn grlex_desc(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }

    fn render(&self) -> String {
        let d = self.dim();
        let mut parts = Vec::new();
        for (pos, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if pos < d { format!("x{}", pos + 1) } else { format!("p{}", pos - d + 1) };
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        parts.join("*")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhasePolynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PhasePolynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "phase space dimension must be positive");
        PhasePolynomial { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Scalar::one())
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Self::monomial(dim, Monomial::one(dim), c)
    }

    pub fn var(dim: usize, v: Var) -> Self {
        let pos = position(dim, v);
        let mut exps = vec![0; 2 * dim];
        exps[pos] = 1;
        Self::monomial(dim, Monomial(exps), Scalar::one())
    }

    pub fn monomial(dim: usize, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.dim(), dim, "monomial has wrong dimension");
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m.dim(), self.dim, "monomial has wrong dimension");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in the phase-space variables; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Monomial::one(self.dim)).cloned().unwrap_or_default()
    }

    /// Unit shared by all coefficients.
    pub fn unit(&self) -> Result<Unit> {
        self.terms.values().try_fold(Unit::Real, |u, c| u.combine(c.unit()))
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        self.unit()?.combine(other.unit()?)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        self.unit()?.combine(other.unit()?)?;
        let mut out = Self::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.dim), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Partial derivative with respect to the coordinate stored at exponent
    /// position `pos` (`0..d` are `x`, `d..2d` are `p`).
    pub fn derivative_at(&self, pos: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[pos];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[pos] -= 1;
            out.add_term(Monomial(exps), c * &Scalar::from_int(e as i64));
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Self {
        self.derivative_at(position(self.dim, v))
    }

    pub fn hbar_to_zero(&self) -> Self {
        self.map_coeffs(Scalar::hbar_to_zero)
    }

    pub fn eval_hbar(&self, value: &Rational) -> Self {
        self.map_coeffs(|c| c.eval_hbar(value))
    }

    /// Copies `self` into a `new_dim`-dimensional space with coordinate `k`
    /// relabelled to `k + offset`.
    pub fn embed(&self, new_dim: usize, offset: usize) -> Self {
        assert!(offset + self.dim <= new_dim, "embedding does not fit");
        let d = self.dim;
        Self::from_terms(
            new_dim,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; 2 * new_dim];
                for k in 0..d {
                    exps[offset + k] = m.0[k];
                    exps[new_dim + offset + k] = m.0[d + k];
                }
                (Monomial(exps), c.clone())
            }),
        )
    }

    /// Swaps the coordinate blocks `1..=left` and `left+1..=d`.
    pub fn swap_blocks(&self, left: usize) -> Result<Self> {
        let d = self.dim;
        if left == 0 || left >= d {
            return Err(Error::DimensionMismatch { left, right: d });
        }
        let right = d - left;
        let perm = |k: usize| if k < left { k + right } else { k - left };
        Ok(Self::from_terms(
            d,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; 2 * d];
                for k in 0..d {
                    exps[perm(k)] = m.0[k];
                    exps[d + perm(k)] = m.0[d + k];
                }
                (Monomial(exps), c.clone())
            }),
        ))
    }

    /// Identifies coordinate `k` with `k + d/2`: the diagonal restriction of a
    /// doubled phase space back onto a single copy.
    pub(crate) fn contract_halves(&self) -> Self {
        let half = self.dim / 2;
        debug_assert_eq!(half * 2, self.dim);
        Self::from_terms(
            half,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; 2 * half];
                for k in 0..half {
                    exps[k] = m.0[k] + m.0[half + k];
                    exps[half + k] = m.0[2 * half + k] + m.0[3 * half + k];
                }
                (Monomial(exps), c.clone())
            }),
        )
    }

    /// Terms in print order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.grlex_desc(b.0));
        v
    }

    /// Candidates for counterexample shrinking: every single term dropped.
    pub(crate) fn shrink_candidates(&self) -> Vec<Self> {
        self.terms
            .keys()
            .map(|m| {
                let mut p = self.clone();
                p.terms.remove(m);
                p
            })
            .collect()
    }
}

fn position(dim: usize, v: Var) -> usize {
    match v {
        Var::X(k) => {
            assert!((1..=dim).contains(&k), "x{k} outside dimension {dim}");
            k - 1
        }
        Var::P(k) => {
            assert!((1..=dim).contains(&k), "p{k} outside dimension {dim}");
            dim + k - 1
        }
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut flat = Vec::new();
        for (m, c) in self.sorted_terms() {
            let vars = m.render();
            for t in c.flat_terms() {
                flat.push((t, vars.clone()));
            }
        }
        text::write_sum(f, flat.iter().map(|(t, v)| (t, v.as_str())))
    }
}

impl fmt::Debug for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhasePolynomial[d={}]({})", self.dim, self)
    }
}

impl Neg for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn neg(self) -> PhasePolynomial {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for PhasePolynomial {
    type Output = PhasePolynomial;
    fn neg(self) -> PhasePolynomial {
        -&self
    }
}

// Panic on dimension or unit mismatch; see the checked_* variants.
macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&PhasePolynomial> for &PhasePolynomial {
            type Output = PhasePolynomial;
            fn $method(self, rhs: &PhasePolynomial) -> PhasePolynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<PhasePolynomial> for PhasePolynomial {
            type Output = PhasePolynomial;
            fn $method(self, rhs: PhasePolynomial) -> PhasePolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);
