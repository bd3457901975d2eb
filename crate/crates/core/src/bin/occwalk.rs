use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use occwalk::analysis::{compare_rankings, full_report, ClassicalMethod, QuantumMethod, ReportConfig};
use occwalk::generators::{BAConfig, LayerSpec, Overlap, SyntheticMultilayerConfig};
use occwalk::io::{self, InputKind, Network, SortOrder};
use occwalk::quantum::Psi0Mode;
use occwalk::run::{self, ErrorRecord, GenerateConfig, RunConfig, RunFailure, OUT_DIR_ENV};
use occwalk::{Error, FlattenMode, OccupationKind};

#[derive(Parser)]
#[command(name = "occwalk", version, about = "Classical and quantum random-walk occupation centralities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an input file and print its manifest without analysing it.
    Validate {
        input: PathBuf,
        #[arg(long, default_value = "edge-list")]
        kind: InputKind,
    },
    /// Generate Barabási–Albert graphs or synthetic multilayer networks.
    Generate(GenerateArgs),
    /// Flatten a multilayer CSV into an edge list.
    Flatten {
        input: PathBuf,
        #[arg(long, default_value = "binary")]
        mode: FlattenMode,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compute OP_c and OP_q, rankings and scatter data.
    Analyze(AnalyzeArgs),
    /// Compare two rankings: OP_c vs OP_q of one network, or two occupation CSVs.
    Compare(CompareArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Nodes of a single BA graph.
    #[arg(long, requires = "m", conflicts_with = "layers")]
    n: Option<usize>,
    /// Edges attached per arriving node.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated `n:m` layer specs, e.g. `101:2,100:1,25:3`.
    #[arg(long, value_delimiter = ',')]
    layers: Vec<LayerSpec>,
    /// `disjoint` or `shared:<count>`.
    #[arg(long, default_value = "disjoint")]
    overlap: Overlap,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generate this many networks with consecutive seeds.
    #[arg(long, default_value_t = 1)]
    seed_count: u64,
    #[arg(long, env = OUT_DIR_ENV, default_value = "occwalk-out")]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// One or more input files; each is analysed independently.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "edge-list")]
    kind: InputKind,
    #[arg(long, default_value = "binary")]
    flatten: FlattenMode,
    /// Use edge weights (strengths) instead of binarised edges.
    #[arg(long)]
    weighted: bool,
    /// `closed-form` or `euler`.
    #[arg(long, default_value = "closed-form")]
    classical: ClassicalMethod,
    /// `spectral` or `leapfrog`.
    #[arg(long, default_value = "spectral")]
    quantum: QuantumMethod,
    /// Euler step; default 0.1 / max_i H_ii.
    #[arg(long)]
    euler_dt: Option<f64>,
    #[arg(long, default_value_t = 1e5)]
    euler_horizon: f64,
    /// Euler stationarity threshold.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Leapfrog step.
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    /// Leapfrog horizon.
    #[arg(long, default_value_t = 2000.0)]
    horizon: f64,
    /// `uniform` or `node:<label>`.
    #[arg(long, default_value = "uniform")]
    psi0: Psi0Mode,
    #[arg(long, default_value_t = 20)]
    top_k: usize,
    /// Recorded in the provenance file.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = OUT_DIR_ENV, default_value = "occwalk-out")]
    out: PathBuf,
    #[arg(long)]
    drop_isolated: bool,
    /// Analyse each connected component separately instead of failing.
    #[arg(long)]
    per_component: bool,
    /// Sort occupation tables by descending value instead of node order.
    #[arg(long)]
    sort_desc: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Network whose OP_c and OP_q are compared.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    input: Option<PathBuf>,
    #[arg(long, default_value = "edge-list")]
    kind: InputKind,
    #[arg(long, default_value = "binary")]
    flatten: FlattenMode,
    #[arg(long, default_value = "uniform")]
    psi0: Psi0Mode,
    /// Occupation CSV (`node,value`).
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    k: usize,
}

fn to_stdout(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn generate(args: GenerateArgs) -> Result<(), Error> {
    for seed in args.seed..args.seed + args.seed_count {
        let (cfg, name) = match (args.n, args.m) {
            (Some(n), Some(m)) => (
                GenerateConfig::BarabasiAlbert {
                    config: BAConfig::new(n, m, seed)?,
                },
                format!("ba_n{n}_m{m}_s{seed}.csv"),
            ),
            _ if !args.layers.is_empty() => {
                let tag: Vec<String> = args.layers.iter().map(|l| format!("{}-{}", l.n, l.m)).collect();
                (
                    GenerateConfig::Multilayer {
                        config: SyntheticMultilayerConfig {
                            layer_specs: args.layers.clone(),
                            overlap: args.overlap,
                            seed,
                        },
                    },
                    format!("ml_{}_s{seed}.csv", tag.join("_")),
                )
            }
            _ => return Err(Error::InvalidConfig("give --n and --m, or --layers".into())),
        };
        for p in run::run_generate(&cfg, &args.out.join(name))? {
            println!("{}", p.display());
        }
    }
    Ok(())
}

fn load_graph(path: &Path, kind: InputKind, mode: FlattenMode) -> Result<occwalk::Graph, Error> {
    Ok(match io::ingest(path, kind)?.0 {
        Network::Single(g) => g.binarized(),
        Network::Multilayer(ml) => ml.flatten(mode),
    })
}

fn compare(args: CompareArgs) -> Result<(), Error> {
    let (a, b) = if let Some(input) = &args.input {
        let g = load_graph(input, args.kind, args.flatten)?;
        let cfg = ReportConfig {
            top_k: args.k,
            psi0: args.psi0.clone(),
            ..ReportConfig::default()
        };
        let r = full_report(&g, &cfg)?;
        (r.op_c, r.op_q)
    } else {
        let read = |p: &PathBuf| -> Result<_, Error> {
            let f = std::fs::File::open(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            io::read_occupation_csv(f, OccupationKind::Quantum)
        };
        match (&args.a, &args.b) {
            (Some(a), Some(b)) => (read(a)?, read(b)?),
            _ => return Err(Error::InvalidConfig("give --input, or both --a and --b".into())),
        }
    };
    let c = compare_rankings(&a, &b, args.k)?;
    to_stdout(&json!({
        "k": c.k,
        "overlap_at_k": c.overlap_at_k,
        "spearman_rho": c.spearman_rho,
        "rank_correlation": "spearman (average ranks for ties)",
    }));
    Ok(())
}

fn fail(record: ErrorRecord, out_dir: Option<&Path>) -> ExitCode {
    let text = serde_json::to_string_pretty(&record).expect("serializable");
    eprintln!("{text}");
    if let Some(dir) = out_dir {
        let _ = io::write_atomic(&dir.join("error.json"), format!("{text}\n").as_bytes());
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { input, kind } => io::validate(&input, kind).map(|m| to_stdout(&json!(m))),
        Command::Generate(args) => generate(args),
        Command::Flatten { input, mode, output } => {
            run::run_flatten(&input, mode, &output).map(|m| to_stdout(&json!(m)))
        }
        Command::Compare(args) => compare(args),
        Command::Analyze(a) => {
            let cfg = RunConfig {
                inputs: a.inputs,
                kind: a.kind,
                flatten: a.flatten,
                weighted: a.weighted,
                classical: a.classical,
                quantum: a.quantum,
                euler_dt: a.euler_dt,
                euler_horizon: a.euler_horizon,
                tolerance: a.tolerance,
                dt: a.dt,
                horizon: a.horizon,
                psi0: a.psi0,
                top_k: a.top_k,
                seed: a.seed,
                out_dir: a.out,
                drop_isolated: a.drop_isolated,
                per_component: a.per_component,
                order: if a.sort_desc { SortOrder::Descending } else { SortOrder::NodeOrder },
            };
            return match run::run_analysis(&cfg) {
                Ok(outcome) => {
                    for p in outcome.written {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(f @ RunFailure { .. }) => fail(f.record(), Some(&cfg.out_dir)),
            };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(ErrorRecord::new(&e, None), None),
    }
}
