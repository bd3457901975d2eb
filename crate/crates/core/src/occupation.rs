//! Labeled probability vectors: walk states and occupation centralities.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Labels = Arc<[String]>;

pub(crate) fn graph_labels(g: &Graph) -> Labels {
    g.labels().map(str::to_owned).collect()
}

/// Entries below this are rounding noise and get clamped to zero.
const NEGATIVE_SLACK: f64 = 1e-12;

fn clamp_and_check(values: &mut [f64], sum_tol: f64) -> Result<()> {
    for v in values.iter_mut() {
        if !v.is_finite() || *v < -NEGATIVE_SLACK {
            return Err(Error::InvalidConfig(format!(
                "probability entry {v} is negative or non-finite"
            )));
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let s: f64 = values.iter().sum();
    if (s - 1.0).abs() > sum_tol {
        return Err(Error::InvalidConfig(format!("probabilities sum to {s}, not 1")));
    }
    Ok(())
}

/// Distribution of a walker over nodes at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    values: Vec<f64>,
    labels: Labels,
}

impl ProbabilityVector {
    pub const SUM_TOL: f64 = 1e-10;

    pub fn new(mut values: Vec<f64>, labels: Labels) -> Result<Self> {
        if values.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: values.len(),
            });
        }
        clamp_and_check(&mut values, Self::SUM_TOL)?;
        Ok(Self { values, labels })
    }

    /// Walker sitting on one node.
    pub fn localized(g: &Graph, node: &str) -> Result<Self> {
        let i = g
            .index_of(node)
            .ok_or_else(|| Error::UnknownNode(node.to_owned()))?;
        let mut values = vec![0.0; g.node_count()];
        values[i] = 1.0;
        Self::new(values, graph_labels(g))
    }

    pub fn uniform(g: &Graph) -> Result<Self> {
        let n = g.node_count();
        Self::new(vec![1.0 / n as f64; n], graph_labels(g))
    }

    /// Skips validation; callers guarantee the invariants up to clamping.
    pub(crate) fn from_raw_clamped(mut values: Vec<f64>, labels: Labels) -> Self {
        for v in &mut values {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Self { values, labels }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &[f64]) -> f64 {
        self.values
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OccupationKind {
    Classical,
    Quantum,
}

impl OccupationKind {
    /// Column name in CSV output.
    pub fn column(self) -> &'static str {
        match self {
            OccupationKind::Classical => "op_c",
            OccupationKind::Quantum => "op_q",
        }
    }
}

/// Occupation centrality: stationary (classical) or long-time-mean (quantum)
/// probability of finding the walker on each node.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationVector {
    values: Vec<f64>,
    labels: Labels,
    kind: OccupationKind,
}

impl OccupationVector {
    pub const SUM_TOL: f64 = 1e-9;

    pub fn new(mut values: Vec<f64>, labels: Labels, kind: OccupationKind) -> Result<Self> {
        if values.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: values.len(),
            });
        }
        clamp_and_check(&mut values, Self::SUM_TOL)?;
        Ok(Self {
            values,
            labels,
            kind,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn kind(&self) -> OccupationKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.values[i])
    }

    /// `(label, value)` pairs in node order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.values.iter().copied())
    }

    pub fn max_abs_diff(&self, other: &OccupationVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
