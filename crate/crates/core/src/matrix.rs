//! Dense square matrices over [`Scalar`], with conjugate transpose as the
//! involution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Unit};
use crate::text::parse_scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixElement {
    n: usize,
    // row-major
    entries: Vec<Scalar>,
}

impl MatrixElement {
    pub fn new(n: usize, entries: Vec<Scalar>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Malformed(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        let m = MatrixElement { n, entries };
        m.unit()?;
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("matrix is not square".into()));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Integer matrix; handy for fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect(),
        )
        .expect("square integer matrix")
    }

    pub fn zero(n: usize) -> Self {
        MatrixElement { n, entries: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for k in 0..n {
            m.entries[k * n + k] = Scalar::one();
        }
        m
    }

    /// Matrix unit `E_{row,col}` (0-based).
    pub fn unit_matrix(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[row * n + col] = Scalar::one();
        m
    }

    pub fn pauli_x() -> Self {
        Self::from_ints(&[&[0, 1], &[1, 0]])
    }

    pub fn pauli_y() -> Self {
        let i = Scalar::i();
        MatrixElement { n: 2, entries: vec![Scalar::zero(), -&i, i, Scalar::zero()] }
    }

    pub fn pauli_z() -> Self {
        Self::from_ints(&[&[1, 0], &[0, -1]])
    }

    pub fn diag(values: Vec<Scalar>) -> Self {
        let n = values.len();
        let mut m = Self::zero(n);
        for (k, v) in values.into_iter().enumerate() {
            m.entries[k * n + k] = v;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn unit(&self) -> Result<Unit> {
        self.entries.iter().try_fold(Unit::Real, |u, c| u.combine(c.unit()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(MatrixElement { n: self.n, entries })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        self.unit()?.combine(other.unit()?)?;
        let n = self.n;
        let mut entries = vec![Scalar::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if !b.is_zero() {
                        entries[r * n + c] = &entries[r * n + c] + &(a * b);
                    }
                }
            }
        }
        Ok(MatrixElement { n, entries })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        MatrixElement { n: self.n, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<_>>()?;
        Ok(MatrixElement { n: self.n, entries })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(self.entries[c * n + r].conj());
            }
        }
        MatrixElement { n, entries }
    }

    pub fn is_hermitean(&self) -> bool {
        *self == self.dagger()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(Scalar::zero(), |acc, k| &acc + &self.entries[k * self.n + k])
    }

    /// Kronecker product, left slot major: row index `r1 * n2 + r2`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut entries = vec![Scalar::zero(); n * n];
        for r1 in 0..n1 {
            for c1 in 0..n1 {
                let a = &self.entries[r1 * n1 + c1];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..n2 {
                    for c2 in 0..n2 {
                        let b = &other.entries[r2 * n2 + c2];
                        entries[(r1 * n2 + r2) * n + c1 * n2 + c2] = a * b;
                    }
                }
            }
        }
        MatrixElement { n, entries }
    }

    /// Conjugation by the swap isomorphism `C^{n1} ⊗ C^{n2} -> C^{n2} ⊗ C^{n1}`,
    /// mapping `A ⊗ B` to `B ⊗ A`.
    pub fn swap_factors(&self, n1: usize) -> Result<Self> {
        if n1 == 0 || !self.n.is_multiple_of(n1) {
            return Err(Error::DimensionMismatch { left: n1, right: self.n });
        }
        let n2 = self.n / n1;
        let n = self.n;
        let perm = |k: usize| (k % n2) * n1 + k / n2;
        let mut entries = vec![Scalar::zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                entries[perm(r) * n + perm(c)] = self.entries[r * n + c].clone();
            }
        }
        Ok(MatrixElement { n, entries })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .chunks(self.n)
                .map(|row| Value::Array(row.iter().map(|s| Value::String(s.to_string())).collect()))
                .collect(),
        )
    }

    /// Reads a JSON array of rows of scalar strings (numbers are accepted too).
    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value.as_array().ok_or_else(|| Error::Malformed("expected array of rows".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Malformed("expected row array".into()))?
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => parse_scalar(s),
                        Value::Number(n) => parse_scalar(&n.to_string()).map_err(|_| {
                            Error::Malformed(format!("non-rational number {n}; quote exact values"))
                        }),
                        other => Err(Error::Malformed(format!("unexpected entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// Floating copy; `None` for split-complex or `h`-dependent entries.
    pub fn to_dmatrix(&self) -> Option<DMatrix<Complex64>> {
        let vals = self.entries.iter().map(Scalar::to_c64).collect::<Option<Vec<_>>>()?;
        Some(DMatrix::from_row_slice(self.n, self.n, &vals))
    }

    pub(crate) fn shrink_candidates(&self) -> Vec<Self> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, _)| {
                let mut m = self.clone();
                m.entries[k] = Scalar::zero();
                m
            })
            .collect()
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl fmt::Debug for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}", self.to_json())
    }
}

impl Neg for &MatrixElement {
    type Output = MatrixElement;
    fn neg(self) -> MatrixElement {
        MatrixElement { n: self.n, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl Neg for MatrixElement {
    type Output = MatrixElement;
    fn neg(self) -> MatrixElement {
        -&self
    }
}

macro_rules! matrix_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MatrixElement> for &MatrixElement {
            type Output = MatrixElement;
            fn $method(self, rhs: &MatrixElement) -> MatrixElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<MatrixElement> for MatrixElement {
            type Output = MatrixElement;
            fn $method(self, rhs: MatrixElement) -> MatrixElement {
                (&self).$method(&rhs)
            }
        }
    };
}

matrix_binop!(Add, add, checked_add);
matrix_binop!(Sub, sub, checked_sub);
matrix_binop!(Mul, mul, checked_mul);
