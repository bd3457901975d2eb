//! CSV ingestion and serialization.
//!
//! Inputs:
//!
//! * edge list: `source,target[,weight]`
//! * multilayer: `layer,source,target[,weight]`
//!
//! The header row is optional and recognised by its column names. Lines
//! starting with `#` are comments, blank lines are skipped, fields are
//! trimmed, LF and CRLF both work. A missing weight means 1.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{RankingReport, ReportRow, ScatterSeries};
use crate::error::{Error, Result};
use crate::graph::{Graph, MultilayerNetwork};
use crate::occupation::OccupationVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    #[default]
    EdgeList,
    Multilayer,
}

impl std::str::FromStr for InputKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" => Ok(Self::EdgeList),
            "multilayer" => Ok(Self::Multilayer),
            other => Err(Error::InvalidConfig(format!("unknown input kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub weighted: bool,
}

impl NetworkSummary {
    fn of(name: &str, g: &Graph) -> Self {
        Self {
            name: name.to_owned(),
            nodes: g.node_count(),
            edges: g.edge_count(),
            weighted: g.is_weighted(),
        }
    }
}

/// Counts and checksum describing one input file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub source: String,
    pub sha256: String,
    pub kind: InputKind,
    /// One entry per layer, or a single entry for an edge list.
    pub networks: Vec<NetworkSummary>,
    pub layer_names: Vec<String>,
    /// Distinct node labels across all layers.
    pub actors: usize,
    /// Sum of per-layer edge counts.
    pub intralayer_edges: usize,
}

#[derive(Debug, Clone)]
pub enum Network {
    Single(Graph),
    Multilayer(MultilayerNetwork),
}

fn parse_err(line: u64, reason: impl Into<String>) -> Error {
    Error::Parse {
        line: line as usize,
        reason: reason.into(),
    }
}

fn parse_weight(field: Option<&str>, line: u64) -> Result<f64> {
    match field {
        None | Some("") => Ok(1.0),
        Some(s) => {
            let w: f64 = s
                .parse()
                .map_err(|_| parse_err(line, format!("weight {s:?} is not a number")))?;
            if !(w.is_finite() && w > 0.0) {
                return Err(parse_err(line, format!("weight {w} must be positive")));
            }
            Ok(w)
        }
    }
}

/// Yields `(line_number, fields)` for every data row, header and comments removed.
fn rows<R: Read>(reader: R, header: &[&str]) -> Result<Vec<(u64, Vec<String>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out = Vec::new();
    let mut first = true;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if first {
            first = false;
            let names: Vec<String> = rec.iter().map(|f| f.to_ascii_lowercase()).collect();
            let is_header = names.len() >= header.len()
                && names.len() <= header.len() + 1
                && names.iter().zip(header).all(|(a, b)| a == b)
                && (names.len() == header.len() || names[header.len()] == "weight");
            if is_header {
                continue;
            }
        }
        out.push((line, rec.iter().map(str::to_owned).collect()));
    }
    Ok(out)
}

pub fn read_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut g = Graph::new();
    for (line, f) in rows(reader, &["source", "target"])? {
        if !(2..=3).contains(&f.len()) {
            return Err(parse_err(line, format!("expected 2 or 3 fields, found {}", f.len())));
        }
        if f[0].is_empty() || f[1].is_empty() {
            return Err(parse_err(line, "empty node label"));
        }
        let w = parse_weight(f.get(2).map(String::as_str), line)?;
        g.add_edge(&f[0], &f[1], w)?;
    }
    Ok(g)
}

pub fn read_multilayer<R: Read>(reader: R) -> Result<MultilayerNetwork> {
    let mut ml = MultilayerNetwork::new();
    for (line, f) in rows(reader, &["layer", "source", "target"])? {
        if !(3..=4).contains(&f.len()) {
            return Err(parse_err(line, format!("expected 3 or 4 fields, found {}", f.len())));
        }
        if f.iter().take(3).any(String::is_empty) {
            return Err(parse_err(line, "empty layer name or node label"));
        }
        let w = parse_weight(f.get(3).map(String::as_str), line)?;
        ml.layer_mut_or_insert(&f[0]).add_edge(&f[1], &f[2], w)?;
    }
    Ok(ml)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn manifest_for(source: &str, bytes: &[u8], network: &Network) -> DatasetManifest {
    match network {
        Network::Single(g) => {
            let name = Path::new(source)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| source.to_owned());
            DatasetManifest {
                source: source.to_owned(),
                sha256: sha256_hex(bytes),
                kind: InputKind::EdgeList,
                networks: vec![NetworkSummary::of(&name, g)],
                layer_names: Vec::new(),
                actors: g.node_count(),
                intralayer_edges: g.edge_count(),
            }
        }
        Network::Multilayer(ml) => DatasetManifest {
            source: source.to_owned(),
            sha256: sha256_hex(bytes),
            kind: InputKind::Multilayer,
            networks: ml.layers().iter().map(|(n, g)| NetworkSummary::of(n, g)).collect(),
            layer_names: ml.layer_names().into_iter().map(str::to_owned).collect(),
            actors: ml.actors().len(),
            intralayer_edges: ml.intralayer_edge_count(),
        },
    }
}

/// Parses a file and describes it.
pub fn ingest(path: &Path, kind: InputKind) -> Result<(Network, DatasetManifest)> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let network = match kind {
        InputKind::EdgeList => Network::Single(read_edge_list(bytes.as_slice())?),
        InputKind::Multilayer => Network::Multilayer(read_multilayer(bytes.as_slice())?),
    };
    let manifest = manifest_for(&path.display().to_string(), &bytes, &network);
    Ok((network, manifest))
}

/// Dry run of [`ingest`].
pub fn validate(path: &Path, kind: InputKind) -> Result<DatasetManifest> {
    ingest(path, kind).map(|(_, m)| m)
}

fn csv_string(f: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    f(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// Edge list in input format; the weight column is written when any weight differs from 1.
pub fn write_edge_list(g: &Graph) -> String {
    let weighted = g.is_weighted();
    csv_string(|w| {
        if weighted {
            w.write_record(["source", "target", "weight"])?;
        } else {
            w.write_record(["source", "target"])?;
        }
        for e in g.edges() {
            let (a, b) = (g.label(e.u).unwrap(), g.label(e.v).unwrap());
            if weighted {
                w.write_record([a, b, &e.weight.to_string()])?;
            } else {
                w.write_record([a, b])?;
            }
        }
        Ok(())
    })
}

pub fn write_multilayer(ml: &MultilayerNetwork) -> String {
    let weighted = ml.layers().iter().any(|(_, g)| g.is_weighted());
    csv_string(|w| {
        if weighted {
            w.write_record(["layer", "source", "target", "weight"])?;
        } else {
            w.write_record(["layer", "source", "target"])?;
        }
        for (name, g) in ml.layers() {
            for e in g.edges() {
                let (a, b) = (g.label(e.u).unwrap(), g.label(e.v).unwrap());
                if weighted {
                    w.write_record([name.as_str(), a, b, &e.weight.to_string()])?;
                } else {
                    w.write_record([name.as_str(), a, b])?;
                }
            }
        }
        Ok(())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SortOrder {
    #[default]
    NodeOrder,
    /// Descending value, ties by label.
    Descending,
}

fn ordered(occ: &OccupationVector, order: SortOrder) -> Vec<usize> {
    match order {
        SortOrder::NodeOrder => (0..occ.len()).collect(),
        SortOrder::Descending => crate::analysis::ranking_order(occ.values(), occ.labels()),
    }
}

/// `node,op_c` or `node,op_q`.
pub fn occupation_csv(occ: &OccupationVector, order: SortOrder) -> String {
    csv_string(|w| {
        w.write_record(["node", occ.kind().column()])?;
        for i in ordered(occ, order) {
            w.write_record([occ.labels()[i].as_str(), &occ.values()[i].to_string()])?;
        }
        Ok(())
    })
}

/// `{node: value}` preserving the chosen order.
pub fn occupation_json(occ: &OccupationVector, order: SortOrder) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for i in ordered(occ, order) {
        map.insert(occ.labels()[i].clone(), serde_json::json!(occ.values()[i]));
    }
    serde_json::Value::Object(map)
}

/// Reads a two-column occupation CSV (`node,<value>` with a header row).
pub fn read_occupation_csv<R: Read>(reader: R, kind: crate::occupation::OccupationKind) -> Result<OccupationVector> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| parse_err(e.position().map(|p| p.line()).unwrap_or(0), e.to_string()))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != 2 {
            return Err(parse_err(line, format!("expected 2 fields, found {}", rec.len())));
        }
        let v: f64 = rec[1]
            .parse()
            .map_err(|_| parse_err(line, format!("value {:?} is not a number", &rec[1])))?;
        labels.push(rec[0].to_owned());
        values.push(v);
    }
    OccupationVector::new(values, labels.into(), kind)
}

/// `node,degree,op_c,op_q`.
pub fn report_csv(rows: &[ReportRow]) -> String {
    csv_string(|w| {
        w.write_record(["node", "degree", "op_c", "op_q"])?;
        for r in rows {
            w.write_record([
                r.node.as_str(),
                &r.degree.to_string(),
                &r.op_c.to_string(),
                &r.op_q.to_string(),
            ])?;
        }
        Ok(())
    })
}

/// `rank,node,value`.
pub fn ranking_csv(r: &RankingReport) -> String {
    csv_string(|w| {
        w.write_record(["rank", "node", "value"])?;
        for e in &r.entries {
            w.write_record([&e.rank.to_string(), e.node.as_str(), &e.value.to_string()])?;
        }
        Ok(())
    })
}

/// `node,degree,value`.
pub fn scatter_csv(s: &ScatterSeries) -> String {
    csv_string(|w| {
        w.write_record(["node", "degree", "value"])?;
        for p in &s.points {
            w.write_record([p.node.as_str(), &p.degree.to_string(), &p.value.to_string()])?;
        }
        Ok(())
    })
}

/// Writes through a temporary sibling file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, contents).map_err(|e| Error::Io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(())
}
