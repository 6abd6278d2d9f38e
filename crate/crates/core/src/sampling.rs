//! Seeded generators of small exact values.
//!
//! Rationals have `|numerator| <= 9` and denominator `<= 4`, which keeps exact
//! arithmetic cheap while still exercising non-integer coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::MatrixElement;
use crate::phase::{Monomial, PhasePolynomial};
use crate::scalar::{rat, Rational, Scalar, Unit};

pub const MAX_NUMERATOR: i64 = 9;
pub const MAX_DENOMINATOR: i64 = 4;

/// Which scalars polynomial coefficients are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    Complex,
    /// `a + b h` with rational `a`, `b`.
    Hbar,
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR);
        let den = self.rng.gen_range(1..=MAX_DENOMINATOR);
        rat(num, den)
    }

    pub fn scalar(&mut self, unit: Unit) -> Scalar {
        let re = self.rational();
        match unit {
            Unit::Real => Scalar::from_rational(re),
            Unit::Imaginary => Scalar::complex(re, self.rational()),
            Unit::Split => Scalar::split(re, self.rational()),
        }
    }

    /// Random `n x n` matrix; roughly a third of the entries are zero.
    pub fn matrix(&mut self, n: usize, unit: Unit) -> MatrixElement {
        let entries = (0..n * n)
            .map(|_| if self.rng.gen_bool(0.3) { Scalar::zero() } else { self.scalar(unit) })
            .collect();
        MatrixElement::new(n, entries).expect("single unit")
    }

    /// Hermitean matrix with entries from `unit`'s tower.
    pub fn hermitean(&mut self, n: usize, unit: Unit) -> MatrixElement {
        let a = self.matrix(n, unit);
        (&a + &a.dagger()).scale(&Scalar::rational(1, 2))
    }

    pub fn coefficient(&mut self, kind: Coefficients) -> Scalar {
        match kind {
            Coefficients::Rational => self.scalar(Unit::Real),
            Coefficients::Complex => self.scalar(Unit::Imaginary),
            Coefficients::Hbar => {
                let a = Scalar::from_rational(self.rational());
                if self.rng.gen_bool(0.5) {
                    a
                } else {
                    &a + &(&Scalar::hbar() * &Scalar::from_rational(self.rational()))
                }
            }
        }
    }

    /// Monomial of total degree at most `max_degree` in `2 dim` variables.
    pub fn monomial(&mut self, dim: usize, max_degree: u32) -> Monomial {
        let degree = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; 2 * dim];
        for _ in 0..degree {
            let k = self.rng.gen_range(0..2 * dim);
            exps[k] += 1;
        }
        Monomial::from_exponents(exps)
    }

    /// Polynomial with `1..=max_terms` random terms (fewer after collisions).
    pub fn poly(
        &mut self,
        dim: usize,
        max_degree: u32,
        max_terms: usize,
        kind: Coefficients,
    ) -> PhasePolynomial {
        let n_terms = self.rng.gen_range(1..=max_terms);
        let terms: Vec<_> = (0..n_terms)
            .map(|_| {
                let m = self.monomial(dim, max_degree);
                let mut c = self.coefficient(kind);
                while c.is_zero() {
                    c = self.coefficient(kind);
                }
                (m, c)
            })
            .collect();
        PhasePolynomial::from_terms(dim, terms)
    }

    /// Density matrix `M M† / tr(M M†)` with small complex-integer `M`, or a
    /// pure state when `rank == 1`.
    pub fn density(&mut self, n: usize, rank: usize) -> MatrixElement {
        loop {
            let mut cols = MatrixElement::zero(n);
            for _ in 0..rank.max(1) {
                let v: Vec<Scalar> = (0..n)
                    .map(|_| {
                        Scalar::complex(
                            rat(self.rng.gen_range(-3..=3), 1),
                            rat(self.rng.gen_range(-3..=3), 1),
                        )
                    })
                    .collect();
                let mut outer = Vec::with_capacity(n * n);
                for a in &v {
                    for b in &v {
                        outer.push(a * &b.conj());
                    }
                }
                cols = &cols + &MatrixElement::new(n, outer).expect("square");
            }
            let tr = cols.trace();
            if tr.is_zero() {
                continue;
            }
            let inv = tr.inverse().expect("nonzero rational trace");
            return cols.scale(&inv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a: Vec<_> = (0..5).map(|_| Sampler::new(7).poly(2, 4, 4, Coefficients::Hbar)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn coefficient_bounds() {
        use num_traits::Signed;
        let mut s = Sampler::new(1);
        for _ in 0..500 {
            let q = s.rational();
            assert!(q.numer().abs() <= MAX_NUMERATOR.into());
            assert!(*q.denom() <= MAX_DENOMINATOR.into());
        }
    }

    #[test]
    fn densities_are_normalized() {
        let mut s = Sampler::new(3);
        for n in 2..=3 {
            let rho = s.density(n, n);
            assert!(rho.is_hermitean());
            assert!(rho.trace().is_one());
        }
    }
}
