//! Magnetic Laplacian on a conformally flat 2-torus.
//!
//! The torus has side `√(2π)`, metric `e^{2φ}g_flat` and field `𝐁 = B₀e^{2φ}dx∧dy`, so the
//! constant `a = B₀` and the Landau clusters sit near `p(2k+1)B₀`. The crate discretises the
//! Bochner Laplacian of `L^p` with Peierls phases, extracts the clusters, and measures
//! Toeplitz products and commutators against their semiclassical limits.

pub mod asymptotics;
pub mod cluster;
pub mod config;
pub mod eigen;
pub mod fourier;
pub mod lattice;
pub mod toeplitz;

pub use asymptotics::{
    asymptotic_table, asymptotic_tables, asymptotic_tables_with, fit_slope, solve_clusters, table_row, AsymptoticRow,
    AsymptoticTable, ClusterSolve, GridRule, SlopeFit,
};
pub use cluster::{cluster_partition, SpectralCluster};
pub use config::{min_grid, TorusConfig};
pub use eigen::{dense_spectrum, lowest_spectrum, lowest_spectrum_with, Eigenpairs, SolverOptions};
pub use fourier::{FourierSeries, Mode, Trig};
pub use lattice::{build_lattice, build_lattice_with_gauge, Gauge, MagneticLattice};
pub use toeplitz::{kernel_diagonal, poisson_torus, symbol_extraction_error, toeplitz_matrix};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TorusError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("plaquette phases miss the prescribed flux by {0:e}")]
    FluxInconsistent(f64),
    #[error("shifted links are not gauge equivalent (defect {0:e})")]
    NotGaugeEquivalent(f64),
    #[error("requested {count} eigenpairs of a {dim}-dimensional operator")]
    InvalidCount { count: usize, dim: usize },
    #[error("eigensolver stopped after {sweeps} sweeps with relative residual {max_residual:e}")]
    NotConverged { sweeps: usize, max_residual: f64 },
    #[error("eigenvalue {lambda} is not within 0.4·2pB0 of any center (p = {p})")]
    ClusterOverlap { lambda: f64, p: u32 },
    #[error("cluster {k} has {found} eigenvalues, expected {expected}")]
    IncompleteCluster { k: usize, found: usize, expected: usize },
    #[error("no eigenvalue beyond the requested clusters; cannot confirm they are complete")]
    GuardBandMissing,
    #[error("slope fit: {0}")]
    InvalidFit(String),
}
