//! Rankings, classical-versus-quantum comparison and degree/occupation scatter data.
//!
//! Rankings order nodes by descending value; equal values are ordered by
//! node label, compared as byte strings. Rank agreement is measured with
//! top-k overlap and Spearman's rank correlation (average ranks for ties).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::classical::{stationary_occupation, IntegrationConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::occupation::{OccupationKind, OccupationVector};
use crate::quantum::{initial_state, Psi0Mode, QuantumWalk};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedNode {
    pub rank: usize,
    pub node: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingReport {
    pub kind: OccupationKind,
    pub k: usize,
    pub entries: Vec<RankedNode>,
}

/// Node indices sorted by descending value, ties by label.
pub fn ranking_order(values: &[f64], labels: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .total_cmp(&values[a])
            .then_with(|| labels[a].cmp(&labels[b]))
    });
    order
}

pub fn rank_nodes(occ: &OccupationVector, k: usize) -> Result<RankingReport> {
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if k > occ.len() {
        return Err(Error::KTooLarge { k, n: occ.len() });
    }
    let entries = ranking_order(occ.values(), occ.labels())
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(r, i)| RankedNode {
            rank: r + 1,
            node: occ.labels()[i].clone(),
            value: occ.values()[i],
        })
        .collect();
    Ok(RankingReport {
        kind: occ.kind(),
        k,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub node: String,
    pub degree: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterSeries {
    pub kind: OccupationKind,
    pub points: Vec<ScatterPoint>,
}

/// `(k_i, occ_i)` in node order.
pub fn degree_occupation_series(g: &Graph, occ: &OccupationVector) -> Result<ScatterSeries> {
    if g.node_count() != occ.len() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            found: occ.len(),
        });
    }
    if !g.labels().eq(occ.labels().iter().map(String::as_str)) {
        return Err(Error::NodeSetMismatch);
    }
    let deg = g.degree_vector();
    Ok(ScatterSeries {
        kind: occ.kind(),
        points: occ
            .iter()
            .enumerate()
            .map(|(i, (node, value))| ScatterPoint {
                node: node.to_owned(),
                degree: deg[i],
                value,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankComparison {
    pub k: usize,
    /// `|top_k(a) ∩ top_k(b)| / k`.
    pub overlap_at_k: f64,
    /// Spearman's rho over the full rankings.
    pub spearman_rho: f64,
}

/// 1-based ranks with ties sharing their average rank.
fn average_ranks(values: &[f64], labels: &[String]) -> Vec<f64> {
    let order = ranking_order(values, labels);
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        // a constant ranking carries no order; call it perfect agreement only
        // when both sides are constant
        return if sxx == syy { 1.0 } else { 0.0 };
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

/// Compares two occupation vectors over the same node set (any node order).
pub fn compare_rankings(a: &OccupationVector, b: &OccupationVector, k: usize) -> Result<RankComparison> {
    if a.len() != b.len() {
        return Err(Error::NodeSetMismatch);
    }
    let pos: HashMap<&str, usize> = b.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut b_aligned = Vec::with_capacity(a.len());
    for l in a.labels().iter() {
        let &j = pos.get(l.as_str()).ok_or(Error::NodeSetMismatch)?;
        b_aligned.push(b.values()[j]);
    }
    let ta = rank_nodes(a, k)?;
    let tb = rank_nodes(b, k)?;
    let shared = ta
        .entries
        .iter()
        .filter(|x| tb.entries.iter().any(|y| y.node == x.node))
        .count();
    let ra = average_ranks(a.values(), a.labels());
    let rb = average_ranks(&b_aligned, a.labels());
    Ok(RankComparison {
        k,
        overlap_at_k: shared as f64 / k as f64,
        spearman_rho: pearson(&ra, &rb),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalMethod {
    /// `k_i / Σ k`.
    #[default]
    ClosedForm,
    /// Euler integration of `H_c` from the uniform distribution.
    Euler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantumMethod {
    /// Grouped eigenspace projectors.
    #[default]
    Spectral,
    /// Running average over a leapfrog trajectory.
    Leapfrog,
}

impl std::str::FromStr for ClassicalMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed-form" | "closed_form" => Ok(Self::ClosedForm),
            "euler" => Ok(Self::Euler),
            other => Err(Error::InvalidConfig(format!("unknown classical method {other:?}"))),
        }
    }
}

impl std::str::FromStr for QuantumMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Self::Spectral),
            "leapfrog" => Ok(Self::Leapfrog),
            other => Err(Error::InvalidConfig(format!("unknown quantum method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub top_k: usize,
    pub psi0: Psi0Mode,
    pub classical: ClassicalMethod,
    pub quantum: QuantumMethod,
    /// Euler settings; `None` derives them from the generator.
    pub euler: Option<IntegrationConfig>,
    /// Leapfrog settings.
    pub leapfrog: IntegrationConfig,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            top_k: 20,
            psi0: Psi0Mode::Uniform,
            classical: ClassicalMethod::ClosedForm,
            quantum: QuantumMethod::Spectral,
            euler: None,
            leapfrog: IntegrationConfig::quantum_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub node: String,
    pub degree: f64,
    pub op_c: f64,
    pub op_q: f64,
    pub rank_c: usize,
    pub rank_q: usize,
}

#[derive(Debug, Clone)]
pub struct FullReport {
    pub rows: Vec<ReportRow>,
    pub op_c: OccupationVector,
    pub op_q: OccupationVector,
    pub ranking_c: RankingReport,
    pub ranking_q: RankingReport,
    pub scatter_c: ScatterSeries,
    pub scatter_q: ScatterSeries,
    pub comparison: RankComparison,
}

/// Classical and quantum occupation of a connected graph with rankings,
/// scatter series and their comparison. `top_k` is capped at the node count.
pub fn full_report(g: &Graph, cfg: &ReportConfig) -> Result<FullReport> {
    g.require_connected()?;
    if let Some(l) = g.isolated_nodes().first() {
        return Err(Error::IsolatedNode((*l).to_owned()));
    }
    if cfg.top_k == 0 {
        return Err(Error::InvalidConfig("top_k must be at least 1".into()));
    }
    let op_c = match cfg.classical {
        ClassicalMethod::ClosedForm => stationary_occupation(g)?,
        ClassicalMethod::Euler => crate::classical::stationary_occupation_numeric(g, cfg.euler)?,
    };
    let walk = QuantumWalk::new(g)?;
    let psi0 = initial_state(g, &cfg.psi0)?;
    let op_q = match cfg.quantum {
        QuantumMethod::Spectral => walk.long_time_mean(&psi0)?,
        QuantumMethod::Leapfrog => walk.long_time_mean_numeric(&psi0, &cfg.leapfrog)?,
    };
    let k = cfg.top_k.min(g.node_count());

    let rank_of = |occ: &OccupationVector| {
        let mut r = vec![0; occ.len()];
        for (pos, i) in ranking_order(occ.values(), occ.labels()).into_iter().enumerate() {
            r[i] = pos + 1;
        }
        r
    };
    let (rc, rq) = (rank_of(&op_c), rank_of(&op_q));
    let deg = g.degree_vector();
    let rows = (0..g.node_count())
        .map(|i| ReportRow {
            node: g.label(i).unwrap().to_owned(),
            degree: deg[i],
            op_c: op_c.values()[i],
            op_q: op_q.values()[i],
            rank_c: rc[i],
            rank_q: rq[i],
        })
        .collect();

    debug_assert_eq!(op_c.kind(), OccupationKind::Classical);
    Ok(FullReport {
        rows,
        ranking_c: rank_nodes(&op_c, k)?,
        ranking_q: rank_nodes(&op_q, k)?,
        scatter_c: degree_occupation_series(g, &op_c)?,
        scatter_q: degree_occupation_series(g, &op_q)?,
        comparison: compare_rankings(&op_c, &op_q, k)?,
        op_c,
        op_q,
    })
}
