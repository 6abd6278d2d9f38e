//! Polynomials over ℚ in named unknowns.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::scalar::Rational;

/// An unknown coefficient. Names order naturally: `a2 < a10 < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unknown(String);

impl Unknown {
    pub fn new(name: impl Into<String>) -> Self {
        Unknown(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let cut = self.0.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (stem, digits) = self.0.split_at(cut);
        (stem, digits.parse().ok())
    }
}

impl Ord for Unknown {
    fn cmp(&self, other: &Self) -> Ordering {
        self.split().cmp(&other.split()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Unknown {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Mono = BTreeMap<Unknown, u32>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoeffPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Mono::new(), q);
        }
        CoeffPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn unknown(u: &Unknown) -> Self {
        let mut mono = Mono::new();
        mono.insert(u.clone(), 1);
        CoeffPoly { terms: BTreeMap::from([(mono, Rational::one())]) }
    }

    pub fn var(name: &str) -> Self {
        Self::unknown(&Unknown::new(name))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::new()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.values().sum()).max().unwrap_or(0)
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    fn insert(&mut self, mono: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (u, e) in m2 {
                    *m.entry(u.clone()).or_insert(0) += e;
                }
                out.insert(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `Σ c_u u + c0` when every term has degree at most one.
    pub fn as_linear(&self) -> Option<(BTreeMap<Unknown, Rational>, Rational)> {
        let mut lin = BTreeMap::new();
        let mut c0 = Rational::zero();
        for (m, c) in &self.terms {
            match m.len() {
                0 => c0 = c.clone(),
                1 => {
                    let (u, e) = m.iter().next().expect("one entry");
                    if *e != 1 {
                        return None;
                    }
                    lin.insert(u.clone(), c.clone());
                }
                _ => return None,
            }
        }
        Some((lin, c0))
    }

    /// `(u, k)` when `self = c u^k` with `k >= 1`.
    pub fn as_power(&self) -> Option<(Unknown, u32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, _) = self.terms.iter().next().expect("one term");
        if m.len() != 1 {
            return None;
        }
        let (u, e) = m.iter().next().expect("one unknown");
        Some((u.clone(), *e))
    }

    pub fn substitute(&self, values: &BTreeMap<Unknown, CoeffPoly>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (u, e) in m {
                let factor = match values.get(u) {
                    Some(v) => v.pow(*e),
                    None => {
                        let mut single = Mono::new();
                        single.insert(u.clone(), *e);
                        CoeffPoly { terms: BTreeMap::from([(single, Rational::one())]) }
                    }
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    /// Integers become JSON numbers; anything else its printed form.
    pub fn to_json(&self) -> Value {
        match self.as_constant() {
            Some(q) if q.is_integer() => match q.to_integer().to_i64() {
                Some(n) => Value::from(n),
                None => Value::String(self.to_string()),
            },
            _ => Value::String(self.to_string()),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "({}/{})", q.numer(), q.denom())
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest degree first, constant last.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.values().sum(), b.values().sum());
            db.cmp(&da).then_with(|| a.cmp(b))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || m.is_empty() {
                write_rational(f, &abs)?;
                first = false;
            }
            for (u, e) in m {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{u}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
