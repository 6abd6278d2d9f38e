//! Spectra, the spectral-radius norm, involution decomposition and the GNS
//! construction for full matrix algebras `Mₙ(ℂ)`.
//!
//! Inputs are exact; eigenvalue problems are solved in double precision.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::MatrixElement;
use crate::sampling::Sampler;
use crate::scalar::{rat, Scalar, Unit};

pub const RANK_TOLERANCE: f64 = 1e-10;

fn float_matrix(a: &MatrixElement) -> Result<DMatrix<Complex64>> {
    a.to_dmatrix()
        .ok_or_else(|| Error::Unsupported("floating evaluation needs constant complex entries".into()))
}

fn split_parts(s: &Scalar) -> (f64, f64) {
    use num_traits::ToPrimitive;
    match s.coeff(0) {
        Some((a, b)) => (a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN)),
        None => (0.0, 0.0),
    }
}

/// Spectral values of `a`.
///
/// Complex (and real) matrices go through a floating eigen-solve. For
/// split-complex entries only diagonal matrices are handled: `(a + jb) − λ`
/// fails to be invertible exactly when `(a − λ)² = b²`, giving `λ = a ± b`.
pub fn spectrum(a: &MatrixElement) -> Result<Vec<Complex64>> {
    if a.unit()? == Unit::Split {
        let n = a.n();
        let off_diagonal = (0..n).any(|r| (0..n).any(|c| r != c && !a.get(r, c).is_zero()));
        if off_diagonal {
            return Err(Error::Unsupported("split-complex spectra of non-diagonal matrices".into()));
        }
        let mut out = Vec::with_capacity(2 * n);
        for k in 0..n {
            let (re, jm) = split_parts(a.get(k, k));
            out.push(Complex64::new(re - jm, 0.0));
            out.push(Complex64::new(re + jm, 0.0));
        }
        out.sort_by(|x, y| x.re.total_cmp(&y.re));
        out.dedup_by(|x, y| (x.re - y.re).abs() < RANK_TOLERANCE);
        return Ok(out);
    }
    let m = float_matrix(a)?;
    Ok(eigenvalues(&m))
}

/// Eigenvalues of a complex matrix; hermitean inputs use the symmetric solver
/// so their values come out real.
pub fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    if is_hermitean(m, 1e-12) {
        return m.clone().symmetric_eigenvalues().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    }
    match m.clone().schur().eigenvalues() {
        Some(v) => v.iter().copied().collect(),
        None => Vec::new(),
    }
}

fn is_hermitean(m: &DMatrix<Complex64>, tol: f64) -> bool {
    m.is_square() && (m - m.adjoint()).norm() <= tol * (1.0 + m.norm())
}

pub fn spectral_radius(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖A‖ = sqrt(spectral radius of A†A)`.
pub fn cstar_norm_f64(a: &DMatrix<Complex64>) -> f64 {
    let ata = a.adjoint() * a;
    let radius = ata.symmetric_eigenvalues().iter().map(|v| v.abs()).fold(0.0, f64::max);
    radius.sqrt()
}

pub fn cstar_norm(a: &MatrixElement) -> Result<f64> {
    Ok(cstar_norm_f64(&float_matrix(a)?))
}

/// `|‖A†A‖ − ‖A‖²|`.
pub fn cstar_identity_error(a: &DMatrix<Complex64>) -> f64 {
    let norm = cstar_norm_f64(a);
    (cstar_norm_f64(&(a.adjoint() * a)) - norm * norm).abs()
}

/// Splits `x = x1 + J x2` with `x1 = (x + x†)/2` and `x2 = (x − x†)/(2J)`,
/// where `J = j` for split-complex entries and `J = i` otherwise.
pub fn involution_decompose(x: &MatrixElement) -> Result<(MatrixElement, MatrixElement)> {
    let j = match x.unit()? {
        Unit::Split => Scalar::j(),
        _ => Scalar::i(),
    };
    let half = Scalar::from_rational(rat(1, 2));
    let sum = x.checked_add(&x.dagger())?;
    let diff = x.checked_sub(&x.dagger())?;
    let x1 = sum.try_map(|s| s.checked_mul(&half))?;
    let factor = j.checked_mul(&Scalar::from_int(2))?.inverse()?;
    let x2 = diff.try_map(|s| s.checked_mul(&factor))?;
    Ok((x1, x2))
}

/// The hyperbolic counterexample to the C* identity: the split-complex
/// scalar `x = 1 + j` is a zero divisor with `x* x = 0` but `‖x‖ = 2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperbolicWitness {
    pub element: String,
    pub star_product: String,
    pub spectrum: Vec<f64>,
    pub norm: f64,
    pub norm_squared: f64,
    pub star_product_norm: f64,
    pub cstar_holds: bool,
}

pub fn hyperbolic_cstar_witness() -> Result<HyperbolicWitness> {
    let x = MatrixElement::new(1, vec![Scalar::split(rat(1, 1), rat(1, 1))])?;
    let xx = x.dagger().checked_mul(&x)?;
    let values: Vec<f64> = spectrum(&x)?.iter().map(|z| z.re).collect();
    let norm = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let star_product_norm = spectrum(&xx)?.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    let norm_squared = norm * norm;
    Ok(HyperbolicWitness {
        element: x.get(0, 0).to_string(),
        star_product: xx.get(0, 0).to_string(),
        spectrum: values,
        norm,
        norm_squared,
        star_product_norm,
        cstar_holds: (star_product_norm - norm_squared).abs() < 1e-9,
    })
}

/// A density matrix on `Mₙ`: hermitean, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    density: MatrixElement,
}

impl State {
    pub fn new(density: MatrixElement) -> Result<Self> {
        if !density.is_hermitean() {
            return Err(Error::InvalidState("density is not hermitean".into()));
        }
        if !density.trace().is_one() {
            return Err(Error::InvalidState(format!("trace is {}, expected 1", density.trace())));
        }
        let m = float_matrix(&density)?;
        if let Some(min) = m.symmetric_eigenvalues().iter().copied().reduce(f64::min) {
            if min < -RANK_TOLERANCE {
                return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(State { density })
    }

    /// Accepts either a bare array of rows or `{"density": rows}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value.get("density").unwrap_or(value);
        State::new(MatrixElement::from_json(rows)?)
    }

    pub fn pure(n: usize, k: usize) -> Result<Self> {
        State::new(MatrixElement::unit_matrix(n, k, k))
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        State::new(MatrixElement::identity(n).scale(&Scalar::rational(1, n as i64)))
    }

    pub fn n(&self) -> usize {
        self.density.n()
    }

    pub fn density(&self) -> &MatrixElement {
        &self.density
    }

    pub fn rank(&self) -> usize {
        let m = self.density.to_dmatrix().expect("validated complex density");
        m.symmetric_eigenvalues().iter().filter(|v| **v > RANK_TOLERANCE).count()
    }
}

/// Cyclic representation of `Mₙ` built from a state `φ(A) = tr(ρA)`.
#[derive(Clone, Debug)]
pub struct GnsRepresentation {
    pub hilbert_dim: usize,
    /// Representatives of an orthonormal basis of `Mₙ / N_φ`.
    pub basis: Vec<DMatrix<Complex64>>,
    /// Coordinates of the class of the identity.
    pub omega: DVector<Complex64>,
    density: DMatrix<Complex64>,
}

impl GnsRepresentation {
    /// `⟨A, B⟩ = tr(ρ A† B)`.
    pub fn inner(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
        inner(&self.density, a, b)
    }

    /// `π(A)_{kl} = ⟨v_k, A v_l⟩`.
    pub fn pi(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let d = self.hilbert_dim;
        DMatrix::from_fn(d, d, |k, l| self.inner(&self.basis[k], &(a * &self.basis[l])))
    }

    pub fn state_value(&self, a: &DMatrix<Complex64>) -> Complex64 {
        (&self.density * a).trace()
    }

    /// `|⟨Ω, π(A) Ω⟩ − φ(A)|`.
    pub fn phi_error(&self, a: &DMatrix<Complex64>) -> f64 {
        let recovered = self.omega.dotc(&(self.pi(a) * &self.omega));
        (recovered - self.state_value(a)).norm()
    }

    /// `‖π(AB) − π(A)π(B)‖_F`.
    pub fn multiplicativity_error(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (self.pi(&(a * b)) - self.pi(a) * self.pi(b)).norm()
    }

    /// `‖π(A†) − π(A)†‖_F`.
    pub fn star_error(&self, a: &DMatrix<Complex64>) -> f64 {
        (self.pi(&a.adjoint()) - self.pi(a).adjoint()).norm()
    }
}

fn inner(rho: &DMatrix<Complex64>, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    (rho * a.adjoint() * b).trace()
}

/// Builds the GNS representation by orthonormalizing the matrix units
/// `E_rc` under `⟨A, B⟩ = tr(ρ A† B)` with modified Gram–Schmidt and one
/// re-orthogonalization pass; vectors whose squared residual falls below
/// [`RANK_TOLERANCE`] span the null space and are dropped.
pub fn gns_construct(state: &State) -> GnsRepresentation {
    let n = state.n();
    let rho = state.density.to_dmatrix().expect("validated complex density");
    let mut basis: Vec<DMatrix<Complex64>> = Vec::new();
    for c in 0..n {
        for r in 0..n {
            let mut v = DMatrix::from_fn(n, n, |i, j| {
                if (i, j) == (r, c) {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            for _ in 0..2 {
                for b in &basis {
                    let proj = inner(&rho, b, &v);
                    v -= b * proj;
                }
            }
            let norm2 = inner(&rho, &v, &v).re;
            if norm2 > RANK_TOLERANCE {
                v /= Complex64::new(norm2.sqrt(), 0.0);
                basis.push(v);
            }
        }
    }
    let identity = DMatrix::<Complex64>::identity(n, n);
    let omega = DVector::from_iterator(basis.len(), basis.iter().map(|b| inner(&rho, b, &identity)));
    GnsRepresentation { hilbert_dim: basis.len(), basis, omega, density: rho }
}

/// Worst-case diagnostics of a GNS representation over random matrices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnsReport {
    pub n: usize,
    pub hilbert_dim: usize,
    pub density_rank: usize,
    pub samples: usize,
    pub phi_error: f64,
    pub multiplicativity_error: f64,
    pub star_error: f64,
    pub cstar_error: f64,
    /// Largest `‖π(A)‖ − ‖A‖`; non-positive up to rounding.
    pub norm_excess: f64,
}

pub const REPRESENTATION_TOLERANCE: f64 = 1e-10;
pub const NORM_TOLERANCE: f64 = 1e-9;

impl GnsReport {
    /// Representation errors below 1e−10, norm errors below 1e−9, and
    /// `hilbert_dim = n · rank(ρ)`.
    pub fn passed(&self) -> bool {
        self.hilbert_dim == self.n * self.density_rank
            && self.phi_error < REPRESENTATION_TOLERANCE
            && self.multiplicativity_error < REPRESENTATION_TOLERANCE
            && self.star_error < REPRESENTATION_TOLERANCE
            && self.cstar_error < NORM_TOLERANCE
            && self.norm_excess < NORM_TOLERANCE
    }
}

pub fn gns_report(state: &State, samples: usize, seed: u64) -> GnsReport {
    let rep = gns_construct(state);
    let n = state.n();
    let mut sampler = Sampler::new(seed);
    let mut random = || {
        sampler
            .matrix(n, Unit::Imaginary)
            .to_dmatrix()
            .expect("complex sample")
    };
    let mut out = GnsReport {
        n,
        hilbert_dim: rep.hilbert_dim,
        density_rank: state.rank(),
        samples,
        phi_error: 0.0,
        multiplicativity_error: 0.0,
        star_error: 0.0,
        cstar_error: 0.0,
        norm_excess: f64::NEG_INFINITY,
    };
    for _ in 0..samples {
        let (a, b) = (random(), random());
        out.phi_error = out.phi_error.max(rep.phi_error(&a));
        out.multiplicativity_error = out.multiplicativity_error.max(rep.multiplicativity_error(&a, &b));
        out.star_error = out.star_error.max(rep.star_error(&a));
        out.cstar_error = out.cstar_error.max(cstar_identity_error(&a));
        out.norm_excess = out.norm_excess.max(cstar_norm_f64(&rep.pi(&a)) - cstar_norm_f64(&a));
    }
    if samples == 0 {
        out.norm_excess = 0.0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn pauli_spectrum_and_norm() {
        let mut s: Vec<f64> = spectrum(&MatrixElement::pauli_x()).unwrap().iter().map(|z| z.re).collect();
        s.sort_by(f64::total_cmp);
        assert!(close(s[0], -1.0) && close(s[1], 1.0));
        assert!(close(cstar_norm(&MatrixElement::pauli_x()).unwrap(), 1.0));
        assert!(close(cstar_norm(&MatrixElement::zero(2)).unwrap(), 0.0));
        let d = MatrixElement::diag(vec![Scalar::from_int(3), Scalar::from_int(-2)]);
        assert!(close(cstar_norm(&d).unwrap(), 3.0));
    }

    #[test]
    fn witness() {
        let w = hyperbolic_cstar_witness().unwrap();
        assert_eq!(w.element, "1 + j");
        assert_eq!(w.star_product, "0");
        assert_eq!(w.spectrum, vec![0.0, 2.0]);
        assert!(close(w.norm_squared, 4.0) && close(w.star_product_norm, 0.0));
        assert!(!w.cstar_holds);
    }

    #[test]
    fn decompose_i_sigma_y() {
        let x = MatrixElement::pauli_y().scale(&Scalar::i());
        let (x1, x2) = involution_decompose(&x).unwrap();
        assert!(x1.is_zero());
        assert!(x2.is_hermitean());
        assert_eq!(x2.scale(&Scalar::i()), x);
    }

    #[test]
    fn pure_and_mixed_dimensions() {
        assert_eq!(gns_construct(&State::pure(2, 0).unwrap()).hilbert_dim, 2);
        assert_eq!(gns_construct(&State::maximally_mixed(2).unwrap()).hilbert_dim, 4);
    }

    #[test]
    fn invalid_states() {
        let not_unit = MatrixElement::identity(2);
        assert!(matches!(State::new(not_unit), Err(Error::InvalidState(_))));
        let negative = MatrixElement::diag(vec![Scalar::from_int(2), Scalar::from_int(-1)]);
        assert!(matches!(State::new(negative), Err(Error::InvalidState(_))));
    }
}
