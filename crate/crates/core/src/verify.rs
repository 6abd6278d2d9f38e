//! Per-class verification runs over seeded samples.
//!
//! | class               | realizations sampled                                  |
//! |---------------------|-------------------------------------------------------|
//! | elliptic            | complex matrices (n = 2..4), Moyal polynomials        |
//! | parabolic           | Poisson polynomials (d = 1, 2)                        |
//! | hyperbolic          | real and split-complex matrices                       |
//! | parabolic-symmetric | symmetric-bracket polynomials                         |
//!
//! Polynomials have total degree at most 4 (6 for star associativity, 2 for
//! Moyal factors of the composed Leibniz check).

use std::fmt;
use std::str::FromStr;

use crate::composability::{check_composability, check_composed_leibniz, check_monoid};
use crate::error::{Error, Result};
use crate::identities::{
    check_classical_limit, check_star_associativity, Corrupted, Corruption, Identity,
};
use crate::matrix::MatrixElement;
use crate::phase::PhasePolynomial;
use crate::realization::{CompositionClass, MatrixRealization, PhaseRealization, Realization};
use crate::report::CheckReport;
use crate::sampling::{Coefficients, Sampler};
use crate::scalar::{rat, Rational, Unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Composability,
    Monoid,
    ComposedLeibniz,
    Identity(Identity),
    StarAssociativity,
    ClassicalLimit,
}

impl CheckKind {
    pub fn all() -> Vec<CheckKind> {
        let mut v = vec![CheckKind::Composability, CheckKind::Monoid, CheckKind::ComposedLeibniz];
        v.extend(Identity::ALL.into_iter().map(CheckKind::Identity));
        v.extend([CheckKind::StarAssociativity, CheckKind::ClassicalLimit]);
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Composability => "composability",
            CheckKind::Monoid => "monoid",
            CheckKind::ComposedLeibniz => "composed-leibniz",
            CheckKind::Identity(i) => i.name(),
            CheckKind::StarAssociativity => "star-associativity",
            CheckKind::ClassicalLimit => "classical-limit",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::all()
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Numeric Planck constant for elliptic matrices.
    pub hbar: Rational,
    pub corruption: Option<Corruption>,
    /// `None` runs every check.
    pub only: Option<CheckKind>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 200, seed: 0, hbar: rat(2, 1), corruption: None, only: None }
    }
}

impl VerifyOptions {
    fn wants(&self, kind: CheckKind) -> bool {
        self.only.is_none_or(|k| k == kind)
    }
}

fn draw<E>(opts: &VerifyOptions, salt: u64, mut gen: impl FnMut(&mut Sampler, usize) -> Vec<E>) -> Vec<Vec<E>> {
    let mut s = Sampler::new(opts.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..opts.samples).map(|k| gen(&mut s, k)).collect()
}

/// Sample generators for one realization. Each returns the factors of one
/// sample; `leibniz` returns six (`f1, f2, g1, g2, h1, h2`).
struct Generators<G, C, L, M> {
    identity: G,
    composite: C,
    leibniz: L,
    monoid: M,
}

/// Draws samples for one realization and runs the selected checks on it.
fn run_family<R, G, C, L, M>(r: &R, opts: &VerifyOptions, gens: Generators<G, C, L, M>) -> Vec<CheckReport>
where
    R: Realization,
    G: Fn(&mut Sampler, usize) -> Vec<R::Element>,
    C: Fn(&mut Sampler, usize) -> Vec<R::Element>,
    L: Fn(&mut Sampler, usize) -> Vec<R::Element>,
    M: Fn(&mut Sampler, usize) -> Vec<R::Element>,
{
    let Generators { identity: identity_gen, composite: composite_gen, leibniz: leibniz_gen, monoid: monoid_gen } =
        gens;
    let mut out = Vec::new();
    if opts.wants(CheckKind::Composability) {
        out.extend(check_composability(r, &draw(opts, 1, &composite_gen)));
    }
    if opts.wants(CheckKind::Monoid) {
        out.extend(check_monoid(r, &draw(opts, 2, &monoid_gen)));
    }
    if opts.wants(CheckKind::ComposedLeibniz) {
        out.push(check_composed_leibniz(r, &draw(opts, 3, &leibniz_gen)));
    }
    let identity_samples = draw(opts, 4, &identity_gen);
    for i in Identity::ALL {
        if opts.wants(CheckKind::Identity(i)) && i.applies_to(r.pair().class) {
            out.push(i.check(r, &identity_samples));
        }
    }
    out
}

fn matrices(s: &mut Sampler, sizes: &[usize], unit: Unit) -> Vec<MatrixElement> {
    sizes.iter().map(|&n| s.matrix(n, unit)).collect()
}

fn matrix_family(r: MatrixRealization, unit: Unit, opts: &VerifyOptions) -> Vec<CheckReport> {
    let r = Corrupted::new(r, opts.corruption);
    let entries = match unit {
        Unit::Real => "real",
        Unit::Imaginary => "complex",
        Unit::Split => "split-complex",
    };
    let composite = |s: &mut Sampler, k: usize| {
        let (n1, n2) = (2 + k % 2, 2 + (k / 2) % 2);
        matrices(s, &[n1, n2, n1, n2, n1, n2], unit)
    };
    let gens = Generators {
        identity: |s: &mut Sampler, k: usize| {
            let n = 2 + k % 3;
            matrices(s, &[n, n, n], unit)
        },
        composite: |s: &mut Sampler, k: usize| composite(s, k)[..4].to_vec(),
        leibniz: composite,
        monoid: |s: &mut Sampler, _| matrices(s, &[2; 6], unit),
    };
    let mut reports = run_family(&r, opts, gens);
    for rep in &mut reports {
        rep.realization = format!("{}, {entries} entries", rep.realization);
    }
    reports
}

fn polys(s: &mut Sampler, dims: &[usize], degree: u32, terms: usize, kind: Coefficients) -> Vec<PhasePolynomial> {
    dims.iter().map(|&d| s.poly(d, degree, terms, kind)).collect()
}

fn phase_family(r: PhaseRealization, kind: Coefficients, opts: &VerifyOptions) -> Vec<CheckReport> {
    let moyal = r.kind() == crate::realization::PhaseKind::Moyal;
    let terms = if moyal { 3 } else { 4 };
    let leibniz_degree = if moyal { 2 } else { 4 };
    let r = Corrupted::new(r, opts.corruption);
    let gens = Generators {
        identity: |s: &mut Sampler, k: usize| {
            let d = 1 + k % 2;
            polys(s, &[d, d, d], 4, terms, kind)
        },
        composite: |s: &mut Sampler, k: usize| {
            let (d1, d2) = (1 + k % 2, 1 + (k / 2) % 2);
            polys(s, &[d1, d2, d1, d2], 4, terms, kind)
        },
        leibniz: |s: &mut Sampler, k: usize| {
            let (d1, d2) = (1 + k % 2, 1 + (k / 2) % 2);
            polys(s, &[d1, d2, d1, d2, d1, d2], leibniz_degree, terms, kind)
        },
        monoid: |s: &mut Sampler, _| polys(s, &[1; 6], 2, 2, kind),
    };
    run_family(&r, opts, gens)
}

fn moyal_extras(opts: &VerifyOptions) -> Vec<CheckReport> {
    let mut out = Vec::new();
    if opts.wants(CheckKind::StarAssociativity) {
        let samples = draw(opts, 5, |s, k| {
            let d = 1 + k % 2;
            polys(s, &[d, d, d], 6, 3, Coefficients::Hbar)
        });
        out.push(check_star_associativity(&samples));
    }
    if opts.wants(CheckKind::ClassicalLimit) {
        let r = Corrupted::new(PhaseRealization::moyal(), opts.corruption);
        let samples = draw(opts, 6, |s, k| {
            let d = 1 + k % 2;
            polys(s, &[d, d], 4, 4, Coefficients::Hbar)
        });
        out.push(check_classical_limit(&r, &samples));
    }
    out
}

/// Runs the selected checks on every realization of `class`.
pub fn verify_class(class: CompositionClass, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let mut reports = match class {
        CompositionClass::Elliptic => {
            let mut v = matrix_family(MatrixRealization::elliptic(opts.hbar.clone())?, Unit::Imaginary, opts);
            v.extend(phase_family(PhaseRealization::moyal(), Coefficients::Hbar, opts));
            v.extend(moyal_extras(opts));
            v
        }
        CompositionClass::Parabolic => phase_family(PhaseRealization::classical(), Coefficients::Rational, opts),
        CompositionClass::Hyperbolic => {
            let mut v = matrix_family(MatrixRealization::hyperbolic(), Unit::Real, opts);
            v.extend(matrix_family(MatrixRealization::hyperbolic(), Unit::Split, opts));
            v
        }
        CompositionClass::ParabolicSymmetric => {
            phase_family(PhaseRealization::symmetric(), Coefficients::Rational, opts)
        }
    };
    for r in &mut reports {
        r.seed = Some(opts.seed);
    }
    Ok(reports)
}
