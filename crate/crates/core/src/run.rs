//! Command orchestration: every CLI subcommand is a function of its config
//! that writes files atomically and returns what it wrote.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::analysis::{full_report, ClassicalMethod, FullReport, QuantumMethod, ReportConfig};
use crate::classical::IntegrationConfig;
use crate::error::{Error, Result};
use crate::generators::{barabasi_albert, synthetic_multilayer, BAConfig, SyntheticMultilayerConfig};
use crate::graph::{FlattenMode, Graph};
use crate::io::{self, DatasetManifest, InputKind, Network, SortOrder};
use crate::quantum::{Psi0Mode, NORM_DRIFT_LIMIT};
use crate::spectral::DEGENERACY_TOL;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "OCCWALK_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub kind: InputKind,
    pub flatten: FlattenMode,
    /// Keep edge weights; otherwise every edge counts as 1.
    pub weighted: bool,
    pub classical: ClassicalMethod,
    pub quantum: QuantumMethod,
    /// Euler step; `None` means `0.1 / max_i H_ii`.
    pub euler_dt: Option<f64>,
    pub euler_horizon: f64,
    pub tolerance: f64,
    /// Leapfrog step and horizon.
    pub dt: f64,
    pub horizon: f64,
    pub psi0: Psi0Mode,
    pub top_k: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub drop_isolated: bool,
    pub per_component: bool,
    pub order: SortOrder,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            kind: InputKind::EdgeList,
            flatten: FlattenMode::Binary,
            weighted: false,
            classical: ClassicalMethod::ClosedForm,
            quantum: QuantumMethod::Spectral,
            euler_dt: None,
            euler_horizon: IntegrationConfig::DEFAULT_CLASSICAL_HORIZON,
            tolerance: IntegrationConfig::DEFAULT_TOLERANCE,
            dt: IntegrationConfig::DEFAULT_QUANTUM_DT,
            horizon: IntegrationConfig::DEFAULT_QUANTUM_HORIZON,
            psi0: Psi0Mode::Uniform,
            top_k: 20,
            seed: 0,
            out_dir: PathBuf::from("occwalk-out"),
            drop_isolated: false,
            per_component: false,
            order: SortOrder::NodeOrder,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(Error::InvalidConfig("no input files".into()));
        }
        if self.top_k == 0 {
            return Err(Error::InvalidConfig("top_k must be at least 1".into()));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.euler_horizon) && positive(self.tolerance)) {
            return Err(Error::InvalidConfig("euler horizon and tolerance must be positive".into()));
        }
        if let Some(dt) = self.euler_dt {
            IntegrationConfig::new(dt, self.euler_horizon, self.tolerance)?;
        }
        IntegrationConfig::new(self.dt, self.horizon, self.tolerance)?;
        let mut stems: Vec<String> = self.inputs.iter().map(|p| stem(p)).collect();
        stems.sort();
        if stems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig("input files must have distinct names".into()));
        }
        Ok(())
    }

    fn report_config(&self) -> ReportConfig {
        ReportConfig {
            top_k: self.top_k,
            psi0: self.psi0.clone(),
            classical: self.classical,
            quantum: self.quantum,
            euler: self.euler_dt.map(|dt| IntegrationConfig {
                dt,
                horizon: self.euler_horizon,
                tolerance: self.tolerance,
            }),
            leapfrog: IntegrationConfig {
                dt: self.dt,
                horizon: self.horizon,
                tolerance: self.tolerance,
            },
        }
    }
}

fn stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into())
}

/// Machine-readable failure description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub error: String,
    pub message: String,
    pub input: Option<String>,
}

impl ErrorRecord {
    pub fn new(e: &Error, input: Option<&Path>) -> Self {
        Self {
            error: e.kind().to_owned(),
            message: e.to_string(),
            input: input.map(|p| p.display().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub input: Option<PathBuf>,
    pub error: Error,
}

impl RunFailure {
    pub fn record(&self) -> ErrorRecord {
        ErrorRecord::new(&self.error, self.input.as_deref())
    }
}

impl From<Error> for RunFailure {
    fn from(error: Error) -> Self {
        Self { input: None, error }
    }
}

/// Files written by one successful analysis run.
#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub written: Vec<PathBuf>,
}

fn to_json(v: &impl Serialize) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("serializable");
    s.push(b'\n');
    s
}

fn prepare_graph(network: Network, cfg: &RunConfig) -> Graph {
    let g = match network {
        Network::Single(g) => g,
        Network::Multilayer(ml) => ml.flatten(cfg.flatten),
    };
    let g = if cfg.weighted { g } else { g.binarized() };
    if cfg.drop_isolated {
        g.without_isolated()
    } else {
        g
    }
}

fn write_report(dir: &Path, report: &FullReport, cfg: &RunConfig, manifest: &DatasetManifest, extra: serde_json::Value) -> Result<Vec<PathBuf>> {
    let mut files: Vec<(&str, Vec<u8>)> = vec![
        ("report.csv", io::report_csv(&report.rows).into_bytes()),
        ("op_c.csv", io::occupation_csv(&report.op_c, cfg.order).into_bytes()),
        ("op_q.csv", io::occupation_csv(&report.op_q, cfg.order).into_bytes()),
        ("ranking_c.csv", io::ranking_csv(&report.ranking_c).into_bytes()),
        ("ranking_q.csv", io::ranking_csv(&report.ranking_q).into_bytes()),
        ("scatter_c.csv", io::scatter_csv(&report.scatter_c).into_bytes()),
        ("scatter_q.csv", io::scatter_csv(&report.scatter_q).into_bytes()),
    ];
    let json_report = json!({
        "tool": TOOL,
        "version": VERSION,
        "config": cfg,
        "input": manifest,
        "subgraph": extra,
        "rank_correlation": "spearman (average ranks for ties)",
        "tie_break": "descending value, then node label (byte order)",
        "op_c": io::occupation_json(&report.op_c, cfg.order),
        "op_q": io::occupation_json(&report.op_q, cfg.order),
        "rows": report.rows,
        "ranking_c": report.ranking_c,
        "ranking_q": report.ranking_q,
        "scatter_c": report.scatter_c,
        "scatter_q": report.scatter_q,
        "comparison": report.comparison,
    });
    files.push(("report.json", to_json(&json_report)));
    let mut written = Vec::new();
    for (name, bytes) in files {
        let p = dir.join(name);
        io::write_atomic(&p, &bytes)?;
        written.push(p);
    }
    Ok(written)
}

fn analyze_one(path: &Path, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let (network, manifest) = io::ingest(path, cfg.kind)?;
    let g = prepare_graph(network, cfg);
    let rc = cfg.report_config();
    let dir = cfg.out_dir.join(stem(path));
    let mut written = Vec::new();
    let mut outputs = Vec::new();

    if cfg.per_component {
        for (i, comp) in g.component_indices().iter().enumerate() {
            let sub = g.subgraph(comp);
            let report = full_report(&sub, &rc)?;
            let cdir = dir.join(format!("component-{:03}", i + 1));
            let extra = json!({"component": i + 1, "nodes": sub.node_count(), "edges": sub.edge_count()});
            written.extend(write_report(&cdir, &report, cfg, &manifest, extra)?);
            outputs.push(cdir);
        }
    } else {
        let report = full_report(&g, &rc)?;
        let extra = json!({"nodes": g.node_count(), "edges": g.edge_count()});
        written.extend(write_report(&dir, &report, cfg, &manifest, extra)?);
        outputs.push(dir.clone());
    }

    let provenance = json!({
        "tool": TOOL,
        "version": VERSION,
        "config": cfg,
        "resolved": {
            "report": rc,
            "degeneracy_tolerance": DEGENERACY_TOL,
            "norm_drift_limit": NORM_DRIFT_LIMIT,
            "euler_dt_rule": "0.1 / max_i H_ii when euler_dt is unset",
        },
        "input": manifest,
        "outputs": written
            .iter()
            .map(|p| p.strip_prefix(&cfg.out_dir).unwrap_or(p).display().to_string())
            .collect::<Vec<_>>(),
    });
    let p = dir.join("provenance.json");
    io::write_atomic(&p, &to_json(&provenance))?;
    written.push(p);
    Ok(written)
}

/// Analyzes every input, in parallel, each into `<out_dir>/<file stem>/`.
pub fn run_analysis(cfg: &RunConfig) -> std::result::Result<RunOutcome, RunFailure> {
    cfg.validate()?;
    let results: Vec<Result<Vec<PathBuf>>> = std::thread::scope(|s| {
        let handles: Vec<_> = cfg
            .inputs
            .iter()
            .map(|p| s.spawn(move || analyze_one(p, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Io("analysis worker panicked".into()))))
            .collect()
    });
    let mut outcome = RunOutcome::default();
    for (path, r) in cfg.inputs.iter().zip(results) {
        match r {
            Ok(w) => outcome.written.extend(w),
            Err(error) => {
                return Err(RunFailure {
                    input: Some(path.clone()),
                    error,
                })
            }
        }
    }
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum GenerateConfig {
    BarabasiAlbert { config: BAConfig },
    Multilayer { config: SyntheticMultilayerConfig },
}

/// Writes the network CSV at `path` and a JSON config echo next to it
/// (`<path stem>.config.json`).
pub fn run_generate(cfg: &GenerateConfig, path: &Path) -> Result<Vec<PathBuf>> {
    let csv = match cfg {
        GenerateConfig::BarabasiAlbert { config } => io::write_edge_list(&barabasi_albert(config)?),
        GenerateConfig::Multilayer { config } => io::write_multilayer(&synthetic_multilayer(config)?),
    };
    io::write_atomic(path, csv.as_bytes())?;
    let echo = path.with_file_name(format!("{}.config.json", stem(path)));
    let record = json!({
        "tool": TOOL,
        "version": VERSION,
        "generator": cfg,
        "rng": "ChaCha8, layer seeds via SplitMix64(master + index * 0x9E3779B97F4A7C15)",
        "output": path.file_name().map(|s| s.to_string_lossy().into_owned()),
        "sha256": io::sha256_hex(csv.as_bytes()),
    });
    io::write_atomic(&echo, &to_json(&record))?;
    Ok(vec![path.to_path_buf(), echo])
}

pub fn run_flatten(input: &Path, mode: FlattenMode, output: &Path) -> Result<DatasetManifest> {
    let (network, _) = io::ingest(input, InputKind::Multilayer)?;
    let Network::Multilayer(ml) = network else {
        unreachable!("multilayer ingest")
    };
    let flat = ml.flatten(mode);
    let csv = io::write_edge_list(&flat);
    io::write_atomic(output, csv.as_bytes())?;
    Ok(io::manifest_for(&output.display().to_string(), csv.as_bytes(), &Network::Single(flat)))
}
