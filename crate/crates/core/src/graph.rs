//! Undirected weighted graphs, multilayer networks and the dense matrices
//! derived from them.
//!
//! Node order is first-appearance order: the first time a label is seen
//! (as an explicit node or as an edge endpoint) fixes its matrix index.
//! Every dense matrix in this crate is indexed in that order.

use std::collections::HashMap;

use indexmap::IndexSet;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type DenseMatrix = DMatrix<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Undirected graph without self-loops or parallel edges.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    nodes: IndexSet<String>,
    edges: Vec<Edge>,
    edge_index: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl PartialEq for Graph {
    /// Same node order and the same edge list, in the same order.
    fn eq(&self, other: &Self) -> bool {
        self.nodes.len() == other.nodes.len()
            && self.nodes.iter().eq(other.nodes.iter())
            && self.edges == other.edges
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(source, target, weight)` triples; a missing weight means 1.0.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, Option<f64>)>,
        S: AsRef<str>,
    {
        let mut g = Graph::new();
        for (a, b, w) in edges {
            g.add_edge(a.as_ref(), b.as_ref(), w.unwrap_or(1.0))?;
        }
        Ok(g)
    }

    /// Unweighted convenience constructor.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self> {
        Self::from_edges(pairs.iter().map(|(a, b)| (a.as_ref(), b.as_ref(), None)))
    }

    /// Adds a node if absent and returns its index.
    pub fn add_node(&mut self, label: &str) -> Result<usize> {
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if let Some(i) = self.nodes.get_index_of(label) {
            return Ok(i);
        }
        Ok(self.nodes.insert_full(label.to_owned()).0)
    }

    pub fn add_edge(&mut self, a: &str, b: &str, weight: f64) -> Result<()> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if a == b {
            return Err(Error::SelfLoop(a.to_owned()));
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::NonPositiveWeight {
                from: a.to_owned(),
                to: b.to_owned(),
                weight,
            });
        }
        if let (Some(u), Some(v)) = (self.nodes.get_index_of(a), self.nodes.get_index_of(b)) {
            if self.edge_index.contains_key(&key(u, v)) {
                return Err(Error::DuplicateEdge(a.to_owned(), b.to_owned()));
            }
        }
        let u = self.add_node(a)?;
        let v = self.add_node(b)?;
        self.edge_index.insert(key(u, v), self.edges.len());
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> impl ExactSizeIterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.nodes.get_index(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.nodes.get_index_of(label)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, a: &str, b: &str) -> Option<f64> {
        let u = self.index_of(a)?;
        let v = self.index_of(b)?;
        self.edge_index.get(&key(u, v)).map(|&e| self.edges[e].weight)
    }

    pub fn is_weighted(&self) -> bool {
        self.edges.iter().any(|e| e.weight != 1.0)
    }

    /// Copy with every edge weight set to 1.
    pub fn binarized(&self) -> Graph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = 1.0;
        }
        g
    }

    /// Induced subgraph on the given node indices, keeping their relative order.
    pub fn subgraph(&self, indices: &[usize]) -> Graph {
        let mut keep: Vec<usize> = indices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut g = Graph::new();
        for &i in &keep {
            g.add_node(&self.nodes[i]).expect("labels already validated");
        }
        for e in &self.edges {
            if keep.binary_search(&e.u).is_ok() && keep.binary_search(&e.v).is_ok() {
                g.add_edge(&self.nodes[e.u], &self.nodes[e.v], e.weight)
                    .expect("edge already validated");
            }
        }
        g
    }

    /// Copy with zero-degree nodes removed.
    pub fn without_isolated(&self) -> Graph {
        let deg = self.degree_vector();
        let keep: Vec<usize> = (0..self.node_count()).filter(|&i| deg[i] > 0.0).collect();
        self.subgraph(&keep)
    }

    pub fn isolated_nodes(&self) -> Vec<&str> {
        let deg = self.degree_vector();
        (0..self.node_count())
            .filter(|&i| deg[i] == 0.0)
            .map(|i| self.nodes[i].as_str())
            .collect()
    }

    fn check_no_isolated(&self) -> Result<DegreeVector> {
        let deg = self.degree_vector();
        if let Some(i) = deg.values.iter().position(|&k| k == 0.0) {
            return Err(Error::IsolatedNode(self.nodes[i].clone()));
        }
        Ok(deg)
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let n = self.node_count();
        let mut a = DenseMatrix::zeros(n, n);
        for e in &self.edges {
            a[(e.u, e.v)] = e.weight;
            a[(e.v, e.u)] = e.weight;
        }
        a
    }

    /// Strengths `s_i = sum_j w_ij` (plain degrees when unweighted).
    pub fn degree_vector(&self) -> DegreeVector {
        let mut values = vec![0.0; self.node_count()];
        for e in &self.edges {
            values[e.u] += e.weight;
            values[e.v] += e.weight;
        }
        DegreeVector { values }
    }

    /// Column-stochastic `M_ij = A_ij / k_j`.
    pub fn transition_matrix(&self) -> Result<DenseMatrix> {
        let deg = self.check_no_isolated()?;
        let mut m = self.adjacency_matrix();
        for (j, mut col) in m.column_iter_mut().enumerate() {
            col /= deg[j];
        }
        Ok(m)
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> DenseMatrix {
        let deg = self.degree_vector();
        let mut l = -self.adjacency_matrix();
        for i in 0..self.node_count() {
            l[(i, i)] = deg[i];
        }
        l
    }

    /// `D^{-1/2} L D^{-1/2}`: unit diagonal, off-diagonal `-w_ij / sqrt(k_i k_j)`.
    pub fn normalized_laplacian(&self) -> Result<DenseMatrix> {
        let deg = self.check_no_isolated()?;
        let n = self.node_count();
        let mut l = DenseMatrix::identity(n, n);
        for e in &self.edges {
            let x = -e.weight / (deg[e.u] * deg[e.v]).sqrt();
            l[(e.u, e.v)] = x;
            l[(e.v, e.u)] = x;
        }
        Ok(l)
    }

    /// Connected components as index lists, each ascending, ordered by smallest member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Vec<String>> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.nodes[i].clone()).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.component_indices().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        let components = self.component_indices().len();
        if components != 1 {
            return Err(Error::DisconnectedGraph { components });
        }
        Ok(())
    }
}

/// Node strengths, indexed like the graph's nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeVector {
    pub values: Vec<f64>,
}

impl DegreeVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn as_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.values)
    }
}

impl std::ops::Index<usize> for DegreeVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlattenMode {
    /// An edge of weight 1 wherever any layer links the pair.
    #[default]
    Binary,
    /// Layer weights added up.
    Sum,
}

impl std::str::FromStr for FlattenMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(FlattenMode::Binary),
            "sum" => Ok(FlattenMode::Sum),
            other => Err(Error::InvalidConfig(format!("unknown flatten mode {other:?}"))),
        }
    }
}

/// Named layers over a shared actor universe.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MultilayerNetwork {
    layers: Vec<(String, Graph)>,
}

impl MultilayerNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_layer(&mut self, name: impl Into<String>, graph: Graph) -> Result<()> {
        let name = name.into();
        if self.layers.iter().any(|(n, _)| *n == name) {
            return Err(Error::DuplicateLayer(name));
        }
        self.layers.push((name, graph));
        Ok(())
    }

    pub fn layers(&self) -> &[(String, Graph)] {
        &self.layers
    }

    pub fn layer(&self, name: &str) -> Option<&Graph> {
        self.layers.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub(crate) fn layer_mut_or_insert(&mut self, name: &str) -> &mut Graph {
        let pos = match self.layers.iter().position(|(n, _)| n == name) {
            Some(p) => p,
            None => {
                self.layers.push((name.to_owned(), Graph::new()));
                self.layers.len() - 1
            }
        };
        &mut self.layers[pos].1
    }

    pub fn layer_names(&self) -> Vec<&str> {
        self.layers.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Union of layer node labels, first appearance across layers in layer order.
    pub fn actors(&self) -> Vec<&str> {
        let mut seen = IndexSet::new();
        for (_, g) in &self.layers {
            for l in g.labels() {
                seen.insert(l);
            }
        }
        seen.into_iter().collect()
    }

    pub fn intralayer_edge_count(&self) -> usize {
        self.layers.iter().map(|(_, g)| g.edge_count()).sum()
    }

    /// Single-layer projection: one node per actor, an edge wherever some layer has one.
    pub fn flatten(&self, mode: FlattenMode) -> Graph {
        let mut g = Graph::new();
        for actor in self.actors() {
            g.add_node(actor).expect("validated label");
        }
        for (_, layer) in &self.layers {
            for e in layer.edges() {
                let a = g.index_of(layer.label(e.u).unwrap()).unwrap();
                let b = g.index_of(layer.label(e.v).unwrap()).unwrap();
                match g.edge_index.get(&key(a, b)) {
                    Some(&idx) => {
                        if mode == FlattenMode::Sum {
                            g.edges[idx].weight += e.weight;
                        }
                    }
                    None => {
                        let w = match mode {
                            FlattenMode::Binary => 1.0,
                            FlattenMode::Sum => e.weight,
                        };
                        g.edge_index.insert(key(a, b), g.edges.len());
                        g.edges.push(Edge { u: a, v: b, weight: w });
                    }
                }
            }
        }
        g
    }
}
