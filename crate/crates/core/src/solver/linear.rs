//! Exact solving of linear and pure-power constraint systems over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::coeff::{CoeffPoly, Unknown};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// `poly = 0`, tagged with the substitution that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub poly: CoeffPoly,
    pub source: String,
}

impl Equation {
    pub fn new(poly: CoeffPoly, source: impl Into<String>) -> Self {
        Equation { poly, source: source.into() }
    }
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = 0", self.poly)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Fixed(CoeffPoly),
    Free,
}

/// Values for every unknown, in the order they were declared.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub order: Vec<Unknown>,
    pub values: BTreeMap<Unknown, Value>,
}

impl Solution {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(&Unknown::new(name))
    }

    /// Fixed values as a substitution map; free unknowns stay symbolic.
    pub fn substitution(&self) -> BTreeMap<Unknown, CoeffPoly> {
        self.values
            .iter()
            .filter_map(|(u, v)| match v {
                Value::Fixed(p) => Some((u.clone(), p.clone())),
                Value::Free => None,
            })
            .collect()
    }

    pub fn free(&self) -> Vec<&Unknown> {
        self.order.iter().filter(|u| matches!(self.values.get(u), Some(Value::Free))).collect()
    }

    /// Every equation vanishes identically after substitution.
    pub fn verify(&self, equations: &[Equation]) -> Result<()> {
        let sub = self.substitution();
        for eq in equations {
            let residual = eq.poly.substitute(&sub);
            if !residual.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "round trip failed for {} ({}): residual {}",
                    eq, eq.source, residual
                )));
            }
        }
        Ok(())
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&factor * pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Solves linear equations exactly, eliminating unknowns in `order` so that
/// the last ones are the ones left free.
fn solve_linear(
    equations: &[(BTreeMap<Unknown, Rational>, Rational)],
    order: &[Unknown],
) -> Result<BTreeMap<Unknown, CoeffPoly>> {
    let n = order.len();
    let index: BTreeMap<&Unknown, usize> = order.iter().enumerate().map(|(k, u)| (u, k)).collect();
    let mut rows = Vec::with_capacity(equations.len());
    for (lin, c0) in equations {
        let mut row = vec![Rational::zero(); n + 1];
        for (u, c) in lin {
            let k = index.get(u).ok_or_else(|| Error::Malformed(format!("undeclared unknown {u}")))?;
            row[*k] = c.clone();
        }
        row[n] = -c0.clone();
        rows.push(row);
    }
    let pivots = rref(&mut rows, n);
    for row in rows.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Err(Error::Inconsistent(format!("0 = {}", row[n])));
        }
    }
    let mut out = BTreeMap::new();
    for (row, &col) in rows.iter().zip(&pivots) {
        let mut value = CoeffPoly::constant(row[n].clone());
        for (k, c) in row.iter().enumerate().take(n) {
            if k != col && !c.is_zero() {
                value = value.sub(&CoeffPoly::unknown(&order[k]).scale(c));
            }
        }
        out.insert(order[col].clone(), value);
    }
    Ok(out)
}

/// Solves a system of linear and pure-power (`c u^k = 0`) equations.
///
/// `order` lists every unknown; unknowns late in the list are preferred as
/// free parameters. Power equations are resolved to `u = 0`.
pub fn solve(equations: &[Equation], order: &[Unknown]) -> Result<Solution> {
    let mut known: BTreeMap<Unknown, CoeffPoly> = BTreeMap::new();
    loop {
        let pending: Vec<CoeffPoly> = equations
            .iter()
            .map(|e| e.poly.substitute(&known))
            .filter(|p| !p.is_zero())
            .collect();
        if pending.is_empty() {
            break;
        }
        if let Some(c) = pending.iter().find_map(|p| p.as_constant()) {
            return Err(Error::Inconsistent(format!("{c} = 0")));
        }
        let linear: Vec<_> = pending.iter().filter_map(|p| p.as_linear()).collect();
        let fresh = if !linear.is_empty() {
            let remaining: Vec<Unknown> = order.iter().filter(|u| !known.contains_key(*u)).cloned().collect();
            solve_linear(&linear, &remaining)?
        } else if let Some((u, _)) = pending.iter().find_map(|p| p.as_power()) {
            BTreeMap::from([(u, CoeffPoly::zero())])
        } else {
            return Err(Error::Unsupported(format!(
                "equation {} = 0 is neither linear nor a pure power",
                pending[0]
            )));
        };
        for value in known.values_mut() {
            *value = value.substitute(&fresh);
        }
        known.extend(fresh);
    }
    let values = order
        .iter()
        .map(|u| (u.clone(), known.get(u).map_or(Value::Free, |p| Value::Fixed(p.clone()))))
        .collect();
    let solution = Solution { order: order.to_vec(), values };
    solution.verify(equations)?;
    Ok(solution)
}
