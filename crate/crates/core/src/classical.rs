//! Classical random walks: discrete steps, continuous-time generators and
//! propagators, explicit Euler evolution, and stationary occupation.
//!
//! Two generators are supported and they are not interchangeable:
//!
//! * [`GeneratorKind::UnnormalizedRate`]: `H = γ L`, every edge fires at rate γ.
//!   Its stationary state is uniform.
//! * [`GeneratorKind::Normalized`]: `H_c = L D^{-1}`, each walker leaves its node
//!   at unit rate. Its stationary state is degree-proportional, `k_i / Σ k`.
//!
//! Both conserve probability: every column of `H` sums to zero.

use std::sync::{Arc, OnceLock};

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::graph::{DenseMatrix, Graph};
use crate::occupation::{graph_labels, Labels, OccupationKind, OccupationVector, ProbabilityVector};
use crate::sparse::RowCompressed;
use crate::spectral::SpectralDecomposition;

/// Step size, horizon and stationarity threshold for time-stepping integrators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IntegrationConfig {
    pub dt: f64,
    pub horizon: f64,
    pub tolerance: f64,
}

impl IntegrationConfig {
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;
    pub const DEFAULT_CLASSICAL_HORIZON: f64 = 1e5;
    pub const DEFAULT_QUANTUM_DT: f64 = 0.01;
    pub const DEFAULT_QUANTUM_HORIZON: f64 = 2000.0;

    pub fn new(dt: f64, horizon: f64, tolerance: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            horizon,
            tolerance,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.dt) && positive(self.horizon) && positive(self.tolerance)) {
            return Err(Error::InvalidConfig(
                "dt, horizon and tolerance must be positive and finite".into(),
            ));
        }
        if self.dt >= self.horizon {
            return Err(Error::InvalidConfig(format!(
                "dt ({}) must be smaller than the horizon ({})",
                self.dt, self.horizon
            )));
        }
        Ok(())
    }

    /// `dt = 0.1 / max_i H_ii`, the long default horizon, tolerance 1e-10.
    pub fn classical_default(h: &GeneratorMatrix) -> Self {
        let max_diag = h.max_diagonal();
        let dt = if max_diag > 0.0 { 0.1 / max_diag } else { 0.1 };
        Self {
            dt,
            horizon: Self::DEFAULT_CLASSICAL_HORIZON,
            tolerance: Self::DEFAULT_TOLERANCE,
        }
    }

    /// `dt = 0.01`, `T = 2000`.
    pub fn quantum_default() -> Self {
        Self {
            dt: Self::DEFAULT_QUANTUM_DT,
            horizon: Self::DEFAULT_QUANTUM_HORIZON,
            tolerance: Self::DEFAULT_TOLERANCE,
        }
    }

    /// Number of whole steps that fit in the horizon.
    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }
}

/// `p(t+1) = M p(t)` for a column-stochastic `M`.
pub fn discrete_step(m: &DenseMatrix, p: &ProbabilityVector) -> Result<ProbabilityVector> {
    if m.nrows() != p.len() || m.ncols() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: m.ncols(),
            found: p.len(),
        });
    }
    let next = m * DVector::from_column_slice(p.values());
    ProbabilityVector::new(next.as_slice().to_vec(), p.labels().clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `H = γ L`.
    UnnormalizedRate,
    /// `H_c = L D^{-1}`.
    Normalized,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rate" | "unnormalized" | "unnormalized_rate" => Ok(GeneratorKind::UnnormalizedRate),
            "normalized" => Ok(GeneratorKind::Normalized),
            other => Err(Error::InvalidConfig(format!("unknown generator kind {other:?}"))),
        }
    }
}

/// Generator of a continuous-time classical walk, `dp/dt = -H p`.
#[derive(Debug)]
pub struct GeneratorMatrix {
    matrix: DenseMatrix,
    kind: GeneratorKind,
    gamma: Option<f64>,
    // H = diag(s) S diag(1/s) with S symmetric
    similarity: Vec<f64>,
    labels: Labels,
    spectral: OnceLock<SpectralDecomposition>,
}

impl Clone for GeneratorMatrix {
    fn clone(&self) -> Self {
        Self {
            matrix: self.matrix.clone(),
            kind: self.kind,
            gamma: self.gamma,
            similarity: self.similarity.clone(),
            labels: self.labels.clone(),
            spectral: OnceLock::new(),
        }
    }
}

impl GeneratorMatrix {
    pub fn new(g: &Graph, kind: GeneratorKind, gamma: f64) -> Result<Self> {
        match kind {
            GeneratorKind::UnnormalizedRate => Self::unnormalized_rate(g, gamma),
            GeneratorKind::Normalized => Self::normalized(g),
        }
    }

    pub fn unnormalized_rate(g: &Graph, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidConfig(format!("gamma must be positive, got {gamma}")));
        }
        Ok(Self {
            matrix: g.laplacian() * gamma,
            kind: GeneratorKind::UnnormalizedRate,
            gamma: Some(gamma),
            similarity: vec![1.0; g.node_count()],
            labels: graph_labels(g),
            spectral: OnceLock::new(),
        })
    }

    pub fn normalized(g: &Graph) -> Result<Self> {
        let deg = g.degree_vector();
        if let Some(i) = deg.values.iter().position(|&k| k == 0.0) {
            return Err(Error::IsolatedNode(g.label(i).unwrap().to_owned()));
        }
        let mut matrix = g.laplacian();
        for (j, mut col) in matrix.column_iter_mut().enumerate() {
            col /= deg[j];
        }
        Ok(Self {
            matrix,
            kind: GeneratorKind::Normalized,
            gamma: None,
            similarity: deg.values.iter().map(|k| k.sqrt()).collect(),
            labels: graph_labels(g),
            spectral: OnceLock::new(),
        })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn max_diagonal(&self) -> f64 {
        self.matrix.diagonal().iter().copied().fold(0.0, f64::max)
    }

    /// Symmetric operator similar to `H`, `diag(1/s) H diag(s)`.
    pub fn symmetrized(&self) -> DenseMatrix {
        let s = &self.similarity;
        let n = self.dim();
        let m = DenseMatrix::from_fn(n, n, |i, j| self.matrix[(i, j)] * s[j] / s[i]);
        (&m + m.transpose()) * 0.5
    }

    pub fn spectral(&self) -> Result<&SpectralDecomposition> {
        if let Some(s) = self.spectral.get() {
            return Ok(s);
        }
        let s = SpectralDecomposition::new(&self.symmetrized())?;
        Ok(self.spectral.get_or_init(|| s))
    }

    /// `M(t) = e^{-Ht}`, evaluated through the eigendecomposition of the
    /// symmetrized generator: `e^{-Ht} = diag(s) V e^{-Λt} V^T diag(1/s)`.
    pub fn propagator(&self, t: f64) -> Result<DenseMatrix> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidConfig(format!("time must be nonnegative, got {t}")));
        }
        let n = self.dim();
        if t == 0.0 {
            return Ok(DenseMatrix::identity(n, n));
        }
        let core = self.spectral()?.apply_fn(|lambda| (-lambda * t).exp());
        let s = &self.similarity;
        Ok(DenseMatrix::from_fn(n, n, |i, j| s[i] * core[(i, j)] / s[j]))
    }

    fn check_euler_step(&self, dt: f64) -> Result<()> {
        let worst = self.max_diagonal();
        if 1.0 - dt * worst < 0.0 {
            return Err(Error::UnstableStep(format!(
                "explicit Euler needs dt <= 1/max H_ii = {}, got dt = {dt}",
                1.0 / worst
            )));
        }
        Ok(())
    }
}

/// Free-function form of [`GeneratorMatrix::new`].
pub fn generator_matrix(g: &Graph, kind: GeneratorKind, gamma: f64) -> Result<GeneratorMatrix> {
    GeneratorMatrix::new(g, kind, gamma)
}

/// Free-function form of [`GeneratorMatrix::propagator`].
pub fn propagator(h: &GeneratorMatrix, t: f64) -> Result<DenseMatrix> {
    h.propagator(t)
}

#[derive(Debug, Clone)]
pub struct EulerTrajectory {
    /// `trajectory[k]` is the state at time `k * dt`.
    pub trajectory: Vec<ProbabilityVector>,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct EulerOutcome {
    pub state: ProbabilityVector,
    pub converged: bool,
    pub steps: usize,
}

/// Consecutive sub-tolerance steps required to declare convergence.
const STATIONARY_STREAK: usize = 3;

struct EulerStepper {
    op: RowCompressed,
    dt: f64,
    p: Vec<f64>,
    hp: Vec<f64>,
}

impl EulerStepper {
    /// Advances one step and returns the ∞-norm of the change.
    fn step(&mut self) -> f64 {
        self.op.mul_into(&self.p, &mut self.hp);
        let mut delta: f64 = 0.0;
        for (x, h) in self.p.iter_mut().zip(&self.hp) {
            let d = self.dt * h;
            *x -= d;
            delta = delta.max(d.abs());
        }
        delta
    }
}

fn euler_run(
    h: &GeneratorMatrix,
    p0: &ProbabilityVector,
    cfg: &IntegrationConfig,
    mut record: impl FnMut(&[f64]),
) -> Result<(Vec<f64>, bool, usize)> {
    cfg.validate()?;
    if p0.len() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: p0.len(),
        });
    }
    h.check_euler_step(cfg.dt)?;
    let mut st = EulerStepper {
        op: RowCompressed::from_dense(h.matrix()),
        dt: cfg.dt,
        p: p0.values().to_vec(),
        hp: vec![0.0; h.dim()],
    };
    record(&st.p);
    let mut streak = 0;
    let total = cfg.steps();
    for k in 1..=total {
        let delta = st.step();
        record(&st.p);
        streak = if delta < cfg.tolerance { streak + 1 } else { 0 };
        if streak >= STATIONARY_STREAK {
            return Ok((st.p, true, k));
        }
    }
    Ok((st.p, false, total))
}

/// Explicit Euler integration `p_{k+1} = (I - dt H) p_k`, recording every step.
///
/// Stops early once the ∞-norm change between successive steps stays below
/// `cfg.tolerance` for three consecutive steps.
pub fn euler_evolve(
    h: &GeneratorMatrix,
    p0: &ProbabilityVector,
    cfg: &IntegrationConfig,
) -> Result<EulerTrajectory> {
    let labels = p0.labels().clone();
    let mut trajectory = Vec::new();
    let (_, converged, _) = euler_run(h, p0, cfg, |p| {
        trajectory.push(ProbabilityVector::from_raw_clamped(p.to_vec(), labels.clone()))
    })?;
    Ok(EulerTrajectory {
        trajectory,
        converged,
    })
}

/// Same integration as [`euler_evolve`] but keeps only the final state.
pub fn euler_stationary(
    h: &GeneratorMatrix,
    p0: &ProbabilityVector,
    cfg: &IntegrationConfig,
) -> Result<EulerOutcome> {
    let (p, converged, steps) = euler_run(h, p0, cfg, |_| {})?;
    Ok(EulerOutcome {
        state: ProbabilityVector::from_raw_clamped(p, p0.labels().clone()),
        converged,
        steps,
    })
}

/// Closed-form stationary occupation `OP_c(i) = k_i / Σ_j k_j` of a connected graph.
pub fn stationary_occupation(g: &Graph) -> Result<OccupationVector> {
    g.require_connected()?;
    let deg = g.degree_vector();
    if let Some(i) = deg.values.iter().position(|&k| k == 0.0) {
        return Err(Error::IsolatedNode(g.label(i).unwrap().to_owned()));
    }
    let total = deg.total();
    OccupationVector::new(
        deg.values.iter().map(|k| k / total).collect(),
        graph_labels(g),
        OccupationKind::Classical,
    )
}

/// Stationary occupation obtained by Euler integration of `H_c` from the
/// uniform distribution, as an [`OccupationVector`].
pub fn stationary_occupation_numeric(g: &Graph, cfg: Option<IntegrationConfig>) -> Result<OccupationVector> {
    g.require_connected()?;
    let h = GeneratorMatrix::normalized(g)?;
    let cfg = cfg.unwrap_or_else(|| IntegrationConfig::classical_default(&h));
    let out = euler_stationary(&h, &ProbabilityVector::uniform(g)?, &cfg)?;
    if !out.converged {
        return Err(Error::InvalidConfig(format!(
            "Euler integration did not reach stationarity within horizon {}",
            cfg.horizon
        )));
    }
    let total: f64 = out.state.values().iter().sum();
    OccupationVector::new(
        out.state.values().iter().map(|x| x / total).collect(),
        Arc::clone(out.state.labels()),
        OccupationKind::Classical,
    )
}
