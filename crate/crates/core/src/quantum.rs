//! Continuous-time quantum walks generated by the normalized Laplacian.
//!
//! Node `v_k` is the computational basis state `|k⟩`. Evolution is
//! `|ψ(t)⟩ = e^{-iHt} |ψ(0)⟩`, evaluated exactly through the spectral
//! decomposition of `H` or approximately with the explicit two-step
//! leapfrog recurrence
//!
//! ```text
//! ψ_{k+1} = ψ_{k-1} - 2i Δt H ψ_k
//! ```
//!
//! (sometimes labelled Crank–Nicolson in the literature, though it is the
//! explicit midpoint scheme). The quantum occupation centrality is the
//! long-time mean of the measurement distribution; cross terms between
//! distinct eigenvalues average out, leaving `q_i = Σ_G |⟨i|P_G|ψ0⟩|²` over
//! the projectors `P_G` onto degenerate eigenspaces.

use std::sync::{Arc, OnceLock};

use nalgebra::{Complex, DVector};

use crate::error::{Error, Result};
use crate::graph::{DenseMatrix, Graph};
use crate::classical::IntegrationConfig;
use crate::occupation::{graph_labels, Labels, OccupationKind, OccupationVector, ProbabilityVector};
use crate::sparse::RowCompressed;
use crate::spectral::SpectralDecomposition;

pub type C64 = Complex<f64>;

/// Trajectory norms may not leave `1 ± NORM_DRIFT_LIMIT`.
pub const NORM_DRIFT_LIMIT: f64 = 1e-3;

/// Unit-norm complex amplitudes over the node basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: DVector<C64>,
    labels: Labels,
}

impl QuantumState {
    pub const NORM_TOL: f64 = 1e-10;

    pub fn new(amplitudes: Vec<C64>, labels: Labels) -> Result<Self> {
        if amplitudes.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: amplitudes.len(),
            });
        }
        let state = Self {
            amplitudes: DVector::from_vec(amplitudes),
            labels,
        };
        let norm = state.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::InvalidConfig(format!("state norm is {norm}, not 1")));
        }
        Ok(state)
    }

    fn from_parts(re: &[f64], im: &[f64], labels: Labels) -> Self {
        Self {
            amplitudes: DVector::from_iterator(re.len(), re.iter().zip(im).map(|(&r, &i)| C64::new(r, i))),
            labels,
        }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = C64::from_polar(1.0, theta);
        Self {
            amplitudes: self.amplitudes.map(|a| a * phase),
            labels: self.labels.clone(),
        }
    }

    fn split(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.amplitudes.iter().map(|a| a.re).collect(),
            self.amplitudes.iter().map(|a| a.im).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Psi0Mode {
    /// `(1/√n) Σ_k |k⟩`.
    #[default]
    Uniform,
    /// `|k⟩` for the named node.
    Localized(String),
}

impl std::str::FromStr for Psi0Mode {
    type Err = Error;
    /// `uniform` or `node:<label>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "uniform" {
            Ok(Psi0Mode::Uniform)
        } else if let Some(label) = s.strip_prefix("node:") {
            Ok(Psi0Mode::Localized(label.to_owned()))
        } else {
            Err(Error::InvalidConfig(format!(
                "initial state must be `uniform` or `node:<label>`, got {s:?}"
            )))
        }
    }
}

impl std::fmt::Display for Psi0Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Psi0Mode::Uniform => f.write_str("uniform"),
            Psi0Mode::Localized(l) => write!(f, "node:{l}"),
        }
    }
}

pub fn initial_state(g: &Graph, mode: &Psi0Mode) -> Result<QuantumState> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidConfig("graph has no nodes".into()));
    }
    let amplitudes = match mode {
        Psi0Mode::Uniform => vec![C64::new(1.0 / (n as f64).sqrt(), 0.0); n],
        Psi0Mode::Localized(label) => {
            let i = g
                .index_of(label)
                .ok_or_else(|| Error::UnknownNode(label.clone()))?;
            let mut a = vec![C64::new(0.0, 0.0); n];
            a[i] = C64::new(1.0, 0.0);
            a
        }
    };
    // 1/sqrt(n) squared and summed can miss 1 by a few ulps; tolerance covers it.
    QuantumState::new(amplitudes, graph_labels(g))
}

/// `H_q = D^{-1/2} L D^{-1/2}`.
pub fn quantum_hamiltonian(g: &Graph) -> Result<DenseMatrix> {
    g.normalized_laplacian()
}

/// `p_k = |⟨k|ψ⟩|²`.
pub fn measure_distribution(psi: &QuantumState) -> ProbabilityVector {
    ProbabilityVector::from_raw_clamped(
        psi.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
        psi.labels.clone(),
    )
}

fn check_hamiltonian(h: &DenseMatrix, psi0: &QuantumState) -> Result<()> {
    if !h.is_square() || h.nrows() != psi0.len() {
        return Err(Error::DimensionMismatch {
            expected: psi0.len(),
            found: h.nrows(),
        });
    }
    Ok(())
}

/// Spectral coefficients `c = V^T ψ0` (real orthonormal `V`).
fn coefficients(s: &SpectralDecomposition, psi0: &QuantumState) -> DVector<C64> {
    s.eigenvectors().transpose().map(|x| C64::new(x, 0.0)) * &psi0.amplitudes
}

fn evolve_with(s: &SpectralDecomposition, psi0: &QuantumState, t: f64) -> QuantumState {
    let mut c = coefficients(s, psi0);
    for (cj, &lambda) in c.iter_mut().zip(s.eigenvalues().iter()) {
        *cj *= C64::from_polar(1.0, -lambda * t);
    }
    let v = s.eigenvectors().map(|x| C64::new(x, 0.0));
    QuantumState {
        amplitudes: v * c,
        labels: psi0.labels.clone(),
    }
}

fn long_time_mean_with(s: &SpectralDecomposition, psi0: &QuantumState) -> Result<OccupationVector> {
    let c = coefficients(s, psi0);
    let v = s.eigenvectors();
    let n = s.dim();
    let mut q = vec![0.0; n];
    let mut proj = vec![C64::new(0.0, 0.0); n];
    for group in s.groups() {
        proj.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
        for j in group.clone() {
            for (i, p) in proj.iter_mut().enumerate() {
                *p += c[j] * v[(i, j)];
            }
        }
        for (qi, p) in q.iter_mut().zip(&proj) {
            *qi += p.norm_sqr();
        }
    }
    OccupationVector::new(q, psi0.labels.clone(), OccupationKind::Quantum)
}

/// `|ψ(t)⟩ = V e^{-iΛt} V^T |ψ0⟩`.
pub fn evolve_exact(h: &DenseMatrix, psi0: &QuantumState, t: f64) -> Result<QuantumState> {
    check_hamiltonian(h, psi0)?;
    Ok(evolve_with(&SpectralDecomposition::new(h)?, psi0, t))
}

/// Exact long-time mean via grouped eigenspace projectors.
pub fn long_time_mean(h: &DenseMatrix, psi0: &QuantumState) -> Result<OccupationVector> {
    check_hamiltonian(h, psi0)?;
    long_time_mean_with(&SpectralDecomposition::new(h)?, psi0)
}

/// Explicit leapfrog integrator state.
struct Leapfrog {
    op: RowCompressed,
    dt: f64,
    prev_re: Vec<f64>,
    prev_im: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
    hre: Vec<f64>,
    him: Vec<f64>,
    step: usize,
}

impl Leapfrog {
    fn new(h: &DenseMatrix, psi0: &QuantumState, cfg: &IntegrationConfig) -> Result<Self> {
        cfg.validate()?;
        check_hamiltonian(h, psi0)?;
        let op = RowCompressed::from_dense(h);
        if op.gershgorin_bound() * cfg.dt >= 1.0 {
            let s = SpectralDecomposition::new(h)?;
            let lambda_max = s
                .eigenvalues()
                .iter()
                .map(|x| x.abs())
                .fold(0.0, f64::max);
            if lambda_max * cfg.dt >= 1.0 {
                return Err(Error::UnstableStep(format!(
                    "leapfrog needs dt * λ_max < 1, got {} * {lambda_max}",
                    cfg.dt
                )));
            }
        }
        let n = psi0.len();
        let (re0, im0) = psi0.split();
        let dt = cfg.dt;
        // ψ1 = (I - iΔtH - Δt²H²/2) ψ0
        let (mut a, mut b) = (vec![0.0; n], vec![0.0; n]);
        op.mul_complex_into(&re0, &im0, &mut a, &mut b);
        let (mut c, mut d) = (vec![0.0; n], vec![0.0; n]);
        op.mul_complex_into(&a, &b, &mut c, &mut d);
        let half = 0.5 * dt * dt;
        let re1 = (0..n).map(|i| re0[i] + dt * b[i] - half * c[i]).collect();
        let im1 = (0..n).map(|i| im0[i] - dt * a[i] - half * d[i]).collect();
        Ok(Self {
            op,
            dt,
            prev_re: re0,
            prev_im: im0,
            re: re1,
            im: im1,
            hre: vec![0.0; n],
            him: vec![0.0; n],
            step: 1,
        })
    }

    fn current_norm_sqr(&self) -> f64 {
        self.re.iter().zip(&self.im).map(|(r, i)| r * r + i * i).sum()
    }

    fn check_norm(&self) -> Result<()> {
        let norm = self.current_norm_sqr().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_DRIFT_LIMIT {
            return Err(Error::NormDrift {
                step: self.step,
                norm,
            });
        }
        Ok(())
    }

    /// ψ_{k+1} = ψ_{k-1} - 2iΔt H ψ_k, stored in place of ψ_{k-1} then swapped.
    fn advance(&mut self) {
        self.op
            .mul_complex_into(&self.re, &self.im, &mut self.hre, &mut self.him);
        let two_dt = 2.0 * self.dt;
        for i in 0..self.re.len() {
            self.prev_re[i] += two_dt * self.him[i];
            self.prev_im[i] -= two_dt * self.hre[i];
        }
        std::mem::swap(&mut self.prev_re, &mut self.re);
        std::mem::swap(&mut self.prev_im, &mut self.im);
        self.step += 1;
    }
}

/// Leapfrog trajectory; `trajectory[k]` approximates `ψ(k Δt)` and
/// `trajectory[0]` is `psi0` itself.
pub fn leapfrog_evolve(
    h: &DenseMatrix,
    psi0: &QuantumState,
    cfg: &IntegrationConfig,
) -> Result<Vec<QuantumState>> {
    let steps = cfg.steps();
    let mut lf = Leapfrog::new(h, psi0, cfg)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(psi0.clone());
    if steps == 0 {
        return Ok(out);
    }
    lf.check_norm()?;
    out.push(QuantumState::from_parts(&lf.re, &lf.im, psi0.labels.clone()));
    while lf.step < steps {
        lf.advance();
        lf.check_norm()?;
        out.push(QuantumState::from_parts(&lf.re, &lf.im, psi0.labels.clone()));
    }
    Ok(out)
}

/// Finite-horizon long-time mean: the measurement distribution averaged
/// over every leapfrog state `k = 0..=T/Δt`, renormalized to unit sum.
pub fn long_time_mean_numeric(
    h: &DenseMatrix,
    psi0: &QuantumState,
    cfg: &IntegrationConfig,
) -> Result<OccupationVector> {
    let steps = cfg.steps();
    let mut lf = Leapfrog::new(h, psi0, cfg)?;
    let mut acc: Vec<f64> = psi0.amplitudes.iter().map(|a| a.norm_sqr()).collect();
    let mut accumulate = |lf: &Leapfrog| {
        for (s, (r, i)) in acc.iter_mut().zip(lf.re.iter().zip(&lf.im)) {
            *s += r * r + i * i;
        }
    };
    if steps >= 1 {
        lf.check_norm()?;
        accumulate(&lf);
    }
    while lf.step < steps {
        lf.advance();
        lf.check_norm()?;
        accumulate(&lf);
    }
    let total: f64 = acc.iter().sum();
    OccupationVector::new(
        acc.into_iter().map(|x| x / total).collect(),
        psi0.labels.clone(),
        OccupationKind::Quantum,
    )
}

/// Quantum walk on a graph with its Hamiltonian's eigendecomposition cached.
/// Cloning shares the cache.
#[derive(Debug, Clone)]
pub struct QuantumWalk {
    inner: Arc<WalkInner>,
}

#[derive(Debug)]
struct WalkInner {
    hamiltonian: DenseMatrix,
    labels: Labels,
    spectral: OnceLock<SpectralDecomposition>,
}

impl QuantumWalk {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(Self {
            inner: Arc::new(WalkInner {
                hamiltonian: quantum_hamiltonian(g)?,
                labels: graph_labels(g),
                spectral: OnceLock::new(),
            }),
        })
    }

    pub fn hamiltonian(&self) -> &DenseMatrix {
        &self.inner.hamiltonian
    }

    pub fn labels(&self) -> &Labels {
        &self.inner.labels
    }

    pub fn spectral(&self) -> Result<&SpectralDecomposition> {
        if let Some(s) = self.inner.spectral.get() {
            return Ok(s);
        }
        let s = SpectralDecomposition::new(&self.inner.hamiltonian)?;
        Ok(self.inner.spectral.get_or_init(|| s))
    }

    fn check(&self, psi0: &QuantumState) -> Result<()> {
        if psi0.labels != self.inner.labels && psi0.labels[..] != self.inner.labels[..] {
            return Err(Error::NodeSetMismatch);
        }
        Ok(())
    }

    pub fn evolve(&self, psi0: &QuantumState, t: f64) -> Result<QuantumState> {
        self.check(psi0)?;
        Ok(evolve_with(self.spectral()?, psi0, t))
    }

    pub fn long_time_mean(&self, psi0: &QuantumState) -> Result<OccupationVector> {
        self.check(psi0)?;
        long_time_mean_with(self.spectral()?, psi0)
    }

    pub fn long_time_mean_numeric(&self, psi0: &QuantumState, cfg: &IntegrationConfig) -> Result<OccupationVector> {
        self.check(psi0)?;
        long_time_mean_numeric(&self.inner.hamiltonian, psi0, cfg)
    }
}
