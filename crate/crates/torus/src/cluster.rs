use faer::{c64, Mat};

use crate::config::TorusConfig;
use crate::eigen::Eigenpairs;
use crate::TorusError;

/// Eigenpairs assigned to the Landau center `p(2k+1)B₀`.
///
/// `vectors` are orthonormal columns in the symmetrised frame; `e^{−φ}v/h` are the
/// eigenfunctions of the Bochner Laplacian, orthonormal for the weight `e^{2φ}`.
#[derive(Clone, Debug)]
pub struct SpectralCluster {
    pub k: usize,
    pub values: Vec<f64>,
    pub vectors: Mat<c64>,
    pub center: f64,
    /// `max |λ − center|`.
    pub width: f64,
}

impl SpectralCluster {
    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Index of the nearest center and the distance to it.
pub fn nearest_level(lambda: f64, cfg: &TorusConfig) -> (usize, f64) {
    let unit = cfg.p as f64 * cfg.b0();
    let k = ((lambda / unit - 1.0) / 2.0).round().max(0.0) as usize;
    (k, (lambda - cfg.center(k)).abs())
}

/// Splits `eigs` into clusters `0..=max_level`.
///
/// Every eigenvalue must lie within `0.4·2pB₀` of a center, each requested cluster must have
/// `p·d₀` members, and at least one eigenvalue must fall beyond `max_level` so that the
/// requested clusters are known to be complete.
pub fn cluster_partition(
    eigs: &Eigenpairs,
    cfg: &TorusConfig,
    max_level: usize,
) -> Result<Vec<SpectralCluster>, TorusError> {
    let limit = 0.4 * 2.0 * cfg.p as f64 * cfg.b0();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); max_level + 1];
    let mut guard = 0;
    for (idx, &lambda) in eigs.values.iter().enumerate() {
        let (k, dist) = nearest_level(lambda, cfg);
        if dist > limit {
            return Err(TorusError::ClusterOverlap { lambda, p: cfg.p });
        }
        if k <= max_level {
            members[k].push(idx);
        } else {
            guard += 1;
        }
    }
    if guard == 0 {
        return Err(TorusError::GuardBandMissing);
    }
    let expected = cfg.cluster_dim();
    let rows = eigs.vectors.nrows();
    members
        .into_iter()
        .enumerate()
        .map(|(k, idx)| {
            if idx.len() != expected {
                return Err(TorusError::IncompleteCluster {
                    k,
                    found: idx.len(),
                    expected,
                });
            }
            let center = cfg.center(k);
            let values: Vec<f64> = idx.iter().map(|&i| eigs.values[i]).collect();
            let width = values.iter().map(|v| (v - center).abs()).fold(0.0, f64::max);
            let vectors = Mat::<c64>::from_fn(rows, idx.len(), |r, c| eigs.vectors[(r, idx[c])]);
            Ok(SpectralCluster {
                k,
                values,
                vectors,
                center,
                width,
            })
        })
        .collect()
}
