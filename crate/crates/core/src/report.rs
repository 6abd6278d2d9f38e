//! Check reports and the sample-driven check runner.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;
use crate::realization::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub sample: usize,
    pub inputs: Map<String, Value>,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub law: String,
    pub realization: String,
    pub samples: usize,
    pub status: Status,
    /// Exact equality was required; otherwise `max_error` holds the worst
    /// deviation seen.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let mut line = format!("{status} {} [{}] ({} samples)", self.law, self.realization, self.samples);
        if let Some(err) = self.max_error {
            line.push_str(&format!(" max_error={err:.3e}"));
        }
        if let Some(cx) = &self.counterexample {
            line.push_str(&format!("\n    counterexample #{}: lhs={} rhs={}", cx.sample, cx.lhs, cx.rhs));
            for (name, v) in &cx.inputs {
                line.push_str(&format!("\n      {name} = {v}"));
            }
            if let Some(note) = &cx.note {
                line.push_str(&format!("\n      note: {note}"));
            }
        }
        line
    }
}

/// Both sides of one instance of an identity.
pub struct Comparison<E> {
    pub lhs: E,
    pub rhs: E,
    pub note: Option<String>,
}

impl<E: Element> Comparison<E> {
    pub fn new(lhs: E, rhs: E) -> Self {
        Comparison { lhs, rhs, note: None }
    }

    /// `lhs` against the zero of its algebra.
    pub fn vanishes(lhs: E) -> Self {
        let rhs = lhs.scale(&crate::scalar::Scalar::zero());
        Comparison { lhs, rhs, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn fails<E: Element>(eval: &(impl Fn(&[E]) -> Result<Comparison<E>> + Sync), inputs: &[E]) -> bool {
    match eval(inputs) {
        Ok(c) => !c.holds(),
        Err(_) => true,
    }
}

const SHRINK_ROUNDS: usize = 64;

/// Greedy shrinking: keeps replacing one input by a simpler variant while the
/// identity still fails.
pub fn minimize<E: Element>(
    mut inputs: Vec<E>,
    eval: &(impl Fn(&[E]) -> Result<Comparison<E>> + Sync),
) -> Vec<E> {
    for _ in 0..SHRINK_ROUNDS {
        let mut progressed = false;
        'outer: for k in 0..inputs.len() {
            for candidate in inputs[k].shrink() {
                let mut trial = inputs.clone();
                trial[k] = candidate;
                if fails(eval, &trial) {
                    inputs = trial;
                    progressed = true;
                    break 'outer;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    inputs
}

/// Evaluates `eval` on every sample (in parallel) and reports the first
/// failing one, minimized.
pub fn check_samples<E: Element>(
    law: &str,
    realization: &str,
    names: &[&str],
    samples: &[Vec<E>],
    eval: impl Fn(&[E]) -> Result<Comparison<E>> + Sync,
) -> CheckReport {
    let first_failure = samples
        .par_iter()
        .enumerate()
        .filter(|(_, s)| fails(&eval, s))
        .map(|(k, _)| k)
        .min();

    let counterexample = first_failure.map(|k| {
        let inputs = minimize(samples[k].clone(), &eval);
        let mut named = Map::new();
        for (name, v) in names.iter().zip(&inputs) {
            named.insert(name.to_string(), v.to_json());
        }
        match eval(&inputs) {
            Ok(c) => Counterexample {
                sample: k,
                inputs: named,
                lhs: c.lhs.to_json(),
                rhs: c.rhs.to_json(),
                note: c.note,
            },
            Err(e) => Counterexample {
                sample: k,
                inputs: named,
                lhs: Value::Null,
                rhs: Value::Null,
                note: Some(format!("evaluation error: {e}")),
            },
        }
    });

    CheckReport {
        law: law.to_string(),
        realization: realization.to_string(),
        samples: samples.len(),
        status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
        exact: true,
        max_error: None,
        seed: None,
        counterexample,
    }
}
