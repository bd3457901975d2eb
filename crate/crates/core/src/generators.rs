//! Seeded Barabási–Albert graphs and synthetic multilayer networks built from them.
//!
//! Growth starts from `m` isolated nodes. Every arriving node attaches to `m`
//! distinct existing nodes, drawn one at a time with probability proportional
//! to current degree among the not-yet-chosen candidates (uniformly when all
//! of those have degree zero, which only happens for the first arrival).
//! That gives exactly `(n - m) * m` edges and a connected graph.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit value; layer seeds are
//! derived from the master seed with SplitMix64, so output is identical on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MultilayerNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BAConfig {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl BAConfig {
    pub fn new(n: usize, m: usize, seed: u64) -> Result<Self> {
        let cfg = Self { n, m, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m >= self.n {
            return Err(Error::InvalidConfig(format!(
                "Barabási–Albert needs 1 <= m < n, got n = {}, m = {}",
                self.n, self.m
            )));
        }
        Ok(())
    }

    pub fn expected_edges(&self) -> usize {
        (self.n - self.m) * self.m
    }
}

/// Preferential-attachment graph with nodes labelled `0..n`.
pub fn barabasi_albert(cfg: &BAConfig) -> Result<Graph> {
    let labels: Vec<String> = (0..cfg.n).map(|i| i.to_string()).collect();
    ba_with_labels(cfg, &labels)
}

fn ba_with_labels(cfg: &BAConfig, labels: &[String]) -> Result<Graph> {
    cfg.validate()?;
    debug_assert_eq!(labels.len(), cfg.n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut g = Graph::new();
    for l in labels {
        g.add_node(l)?;
    }
    let mut degree = vec![0u64; cfg.n];
    let mut chosen = vec![false; cfg.n];
    let mut targets = Vec::with_capacity(cfg.m);
    for v in cfg.m..cfg.n {
        targets.clear();
        for _ in 0..cfg.m {
            let total: u64 = (0..v).filter(|&u| !chosen[u]).map(|u| degree[u]).sum();
            let pick = if total == 0 {
                let free = v - targets.len();
                let r = rng.random_range(0..free as u64) as usize;
                (0..v)
                    .filter(|&u| !chosen[u])
                    .nth(r)
                    .expect("free candidate exists")
            } else {
                let mut r = rng.random_range(0..total);
                (0..v)
                    .filter(|&u| !chosen[u])
                    .find(|&u| {
                        if r < degree[u] {
                            true
                        } else {
                            r -= degree[u];
                            false
                        }
                    })
                    .expect("weighted draw lands on a candidate")
            };
            chosen[pick] = true;
            targets.push(pick);
        }
        for &u in &targets {
            chosen[u] = false;
            degree[u] += 1;
            g.add_edge(&labels[v], &labels[u], 1.0)?;
        }
        degree[v] += cfg.m as u64;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub n: usize,
    pub m: usize,
}

impl std::str::FromStr for LayerSpec {
    type Err = Error;
    /// `n:m`, e.g. `101:2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("layer spec must look like n:m, got {s:?}"));
        let (n, m) = s.trim().split_once(':').ok_or_else(bad)?;
        Ok(Self {
            n: n.trim().parse().map_err(|_| bad())?,
            m: m.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Overlap {
    /// Every layer has its own actors, labelled `<layer>.<i>`.
    #[default]
    Disjoint,
    /// Node indices below the count are shared actors labelled `<i>` in every layer.
    SharedPrefix(usize),
}

impl std::str::FromStr for Overlap {
    type Err = Error;
    /// `disjoint` or `shared:<count>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "disjoint" {
            return Ok(Overlap::Disjoint);
        }
        s.strip_prefix("shared:")
            .and_then(|c| c.parse().ok())
            .map(Overlap::SharedPrefix)
            .ok_or_else(|| Error::InvalidConfig(format!("overlap must be `disjoint` or `shared:<count>`, got {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticMultilayerConfig {
    pub layer_specs: Vec<LayerSpec>,
    pub overlap: Overlap,
    pub seed: u64,
}

impl SyntheticMultilayerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.layer_specs.is_empty() {
            return Err(Error::InvalidConfig("at least one layer is required".into()));
        }
        for s in &self.layer_specs {
            BAConfig { n: s.n, m: s.m, seed: 0 }.validate()?;
        }
        if let Overlap::SharedPrefix(c) = self.overlap {
            let min_n = self.layer_specs.iter().map(|s| s.n).min().unwrap();
            if c > min_n {
                return Err(Error::InvalidConfig(format!(
                    "shared prefix {c} exceeds smallest layer size {min_n}"
                )));
            }
        }
        Ok(())
    }

    /// Seed used for layer `index` (0-based).
    pub fn layer_seed(&self, index: usize) -> u64 {
        splitmix64(self.seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One BA layer per spec, named `layer1`, `layer2`, ...
pub fn synthetic_multilayer(cfg: &SyntheticMultilayerConfig) -> Result<MultilayerNetwork> {
    cfg.validate()?;
    let mut ml = MultilayerNetwork::new();
    for (idx, spec) in cfg.layer_specs.iter().enumerate() {
        let name = format!("layer{}", idx + 1);
        let labels: Vec<String> = (0..spec.n)
            .map(|i| match cfg.overlap {
                Overlap::SharedPrefix(c) if i < c => i.to_string(),
                _ => format!("{}.{}", idx + 1, i),
            })
            .collect();
        let ba = BAConfig {
            n: spec.n,
            m: spec.m,
            seed: cfg.layer_seed(idx),
        };
        ml.add_layer(name, ba_with_labels(&ba, &labels)?)?;
    }
    Ok(ml)
}
