//! Classical and quantum random-walk occupation centralities.
//!
//! A classical continuous-time walk driven by `H_c = L D^{-1}` settles into
//! the degree-proportional distribution `k_i / Σ k`. A quantum walk driven by
//! the normalized Laplacian never settles, so its occupation centrality is
//! the long-time mean of the measured distribution. Both are computed here for
//! undirected (optionally weighted) graphs and flattened multilayer networks,
//! alongside Barabási–Albert generators and ranking/scatter analyses.
//!
//! ```
//! use occwalk::{Graph, classical, quantum};
//!
//! let g = Graph::from_pairs(&[("a", "b"), ("b", "c")]).unwrap();
//! let op_c = classical::stationary_occupation(&g).unwrap();
//! assert_eq!(op_c.values(), &[0.25, 0.5, 0.25]);
//!
//! let walk = quantum::QuantumWalk::new(&g).unwrap();
//! let psi0 = quantum::initial_state(&g, &quantum::Psi0Mode::Uniform).unwrap();
//! let op_q = walk.long_time_mean(&psi0).unwrap();
//! assert!((op_q.sum() - 1.0).abs() < 1e-9);
//! ```

pub mod analysis;
pub mod classical;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod occupation;
pub mod quantum;
pub mod run;
mod sparse;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{DegreeVector, DenseMatrix, FlattenMode, Graph, MultilayerNetwork};
pub use occupation::{OccupationKind, OccupationVector, ProbabilityVector};
pub use spectral::SpectralDecomposition;
