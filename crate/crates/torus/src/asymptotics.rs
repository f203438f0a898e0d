//! Norm sweeps over `p` and log-log slope fits.

use faer::c64;

use crate::cluster::{cluster_partition, SpectralCluster};
use crate::config::{min_grid, TorusConfig};
use crate::eigen::lowest_spectrum;
use crate::fourier::FourierSeries;
use crate::lattice::{build_lattice, MagneticLattice};
use crate::toeplitz::{poisson_torus, spectral_norm, toeplitz_matrix};
use crate::TorusError;

/// Lattice and clusters `0..=max_level` for one configuration.
pub struct ClusterSolve {
    pub cfg: TorusConfig,
    pub lattice: MagneticLattice,
    pub clusters: Vec<SpectralCluster>,
}

/// Computes the lowest `(max_level + 2)·p·d₀` eigenpairs, so cluster `max_level + 1` is the guard band.
pub fn solve_clusters(cfg: &TorusConfig, max_level: usize) -> Result<ClusterSolve, TorusError> {
    let lattice = build_lattice(cfg)?;
    let count = ((max_level + 2) * cfg.cluster_dim()).min(lattice.dim());
    let eigs = lowest_spectrum(&lattice, count)?;
    let clusters = cluster_partition(&eigs, cfg, max_level)?;
    Ok(ClusterSolve {
        cfg: cfg.clone(),
        lattice,
        clusters,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticRow {
    pub p: u32,
    /// Grid size used for this row.
    pub n: usize,
    /// `‖T_fT_g − T_{fg}‖`.
    pub prod_dev: f64,
    /// `‖[T_f,T_g] − (i/p)T_{σ{f,g}}‖`, with `σ{f,g}` as returned by `poisson_torus`.
    pub comm_dev: f64,
    /// `‖T_f‖`.
    pub tf_norm: f64,
    pub width: f64,
    pub dim: usize,
    pub valid: bool,
    /// Failure reason for invalid rows.
    pub error: Option<String>,
}

impl AsymptoticRow {
    pub fn invalid(cfg: &TorusConfig, err: &TorusError) -> Self {
        AsymptoticRow {
            p: cfg.p,
            n: cfg.n,
            prod_dev: f64::NAN,
            comm_dev: f64::NAN,
            tf_norm: f64::NAN,
            width: f64::NAN,
            dim: 0,
            valid: false,
            error: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticTable {
    pub level: usize,
    pub rows: Vec<AsymptoticRow>,
}

impl AsymptoticTable {
    pub fn valid_rows(&self) -> impl Iterator<Item = &AsymptoticRow> {
        self.rows.iter().filter(|r| r.valid)
    }

    pub fn prod_slope(&self) -> Result<SlopeFit, TorusError> {
        fit_slope(&self.valid_rows().map(|r| (r.p as f64, r.prod_dev)).collect::<Vec<_>>())
    }

    pub fn comm_slope(&self) -> Result<SlopeFit, TorusError> {
        fit_slope(&self.valid_rows().map(|r| (r.p as f64, r.comm_dev)).collect::<Vec<_>>())
    }
}

/// Row statistics for one cluster.
pub fn table_row(solve: &ClusterSolve, level: usize, f: &FourierSeries, g: &FourierSeries) -> AsymptoticRow {
    let cfg = &solve.cfg;
    let cluster = &solve.clusters[level];
    let n = cfg.n;
    let fv = f.on_grid(n);
    let gv = g.on_grid(n);
    let fg: Vec<f64> = fv.iter().zip(&gv).map(|(a, b)| a * b).collect();
    let bracket = poisson_torus(f, g, cfg);
    let tf = toeplitz_matrix(cluster, &fv);
    let tg = toeplitz_matrix(cluster, &gv);
    let tfg = toeplitz_matrix(cluster, &fg);
    let tb = toeplitz_matrix(cluster, &bracket);
    let prod = &tf * &tg;
    let comm = &prod - &tg * &tf;
    let i_over_p = c64::new(0.0, 1.0 / cfg.p as f64);
    let comm_res = &comm - &tb * faer::Scale(i_over_p);
    AsymptoticRow {
        p: cfg.p,
        n,
        prod_dev: spectral_norm(&(&prod - &tfg)),
        comm_dev: spectral_norm(&comm_res),
        tf_norm: spectral_norm(&tf),
        width: cluster.width,
        dim: cluster.dim(),
        valid: true,
        error: None,
    }
}

/// How the grid size follows `p` in a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridRule {
    /// Smallest grid allowed by the resolution guard.
    Guard,
    /// The same `N` for every `p`.
    Fixed(usize),
    /// `N = ⌈n·p'/p⌉`, never below the guard.
    Linear { n: usize, p: u32 },
}

impl GridRule {
    pub fn grid(&self, p: u32, d0: u32) -> usize {
        match *self {
            GridRule::Guard => min_grid(p, d0),
            GridRule::Fixed(n) => n,
            GridRule::Linear { n, p: base } => (n * p as usize).div_ceil(base as usize).max(min_grid(p, d0)),
        }
    }

    pub fn config(&self, template: &TorusConfig, p: u32) -> TorusConfig {
        template.with_p(p).with_grid(self.grid(p, template.d0))
    }
}

/// One table per requested level at guard-sized grids; see [`asymptotic_tables_with`].
pub fn asymptotic_tables(
    template: &TorusConfig,
    ps: &[u32],
    f: &FourierSeries,
    g: &FourierSeries,
    levels: &[usize],
) -> Result<Vec<AsymptoticTable>, TorusError> {
    asymptotic_tables_with(template, ps, f, g, levels, GridRule::Guard)
}

/// One table per requested level, sharing a single eigensolve per `p`.
///
/// A failed solve marks the row invalid instead of aborting the table.
pub fn asymptotic_tables_with(
    template: &TorusConfig,
    ps: &[u32],
    f: &FourierSeries,
    g: &FourierSeries,
    levels: &[usize],
    rule: GridRule,
) -> Result<Vec<AsymptoticTable>, TorusError> {
    if ps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TorusError::InvalidConfig("p list must be strictly increasing".into()));
    }
    let max_level = levels.iter().copied().max().unwrap_or(0);
    let mut tables: Vec<AsymptoticTable> = levels
        .iter()
        .map(|&level| AsymptoticTable {
            level,
            rows: Vec::new(),
        })
        .collect();
    for &p in ps {
        let cfg = rule.config(template, p);
        match solve_clusters(&cfg, max_level) {
            Ok(solve) => {
                for t in &mut tables {
                    t.rows.push(table_row(&solve, t.level, f, g));
                }
            }
            Err(err) => {
                for t in &mut tables {
                    t.rows.push(AsymptoticRow::invalid(&cfg, &err));
                }
            }
        }
    }
    Ok(tables)
}

pub fn asymptotic_table(
    template: &TorusConfig,
    ps: &[u32],
    f: &FourierSeries,
    g: &FourierSeries,
    level: usize,
) -> Result<AsymptoticTable, TorusError> {
    Ok(asymptotic_tables(template, ps, f, g, &[level])?.remove(0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

/// Least-squares line through `(ln p, ln value)`.
pub fn fit_slope(pairs: &[(f64, f64)]) -> Result<SlopeFit, TorusError> {
    if pairs.len() < 3 {
        return Err(TorusError::InvalidFit(format!(
            "{} points, need at least 3",
            pairs.len()
        )));
    }
    if let Some((p, v)) = pairs
        .iter()
        .find(|(p, v)| v.is_nan() || *v <= 0.0 || p.is_nan() || *p <= 0.0)
    {
        return Err(TorusError::InvalidFit(format!("nonpositive point ({p}, {v})")));
    }
    let xs: Vec<f64> = pairs.iter().map(|(p, _)| p.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|(_, v)| v.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(TorusError::InvalidFit("all p values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(SlopeFit {
        slope,
        intercept,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_examples() {
        let fit = fit_slope(&[(10.0, 1.0), (20.0, 0.5), (40.0, 0.25)]).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-14 && fit.residual < 1e-14);
        let flat = fit_slope(&[(10.0, 3.0), (20.0, 3.0), (40.0, 3.0)]).unwrap();
        assert!(flat.slope.abs() < 1e-14);
        let half = fit_slope(&[(10.0, 1.0), (20.0, 0.5f64.sqrt()), (40.0, 0.5)]).unwrap();
        assert!((half.slope + 0.5).abs() < 1e-14);
        assert!(fit_slope(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(fit_slope(&[(1.0, 1.0), (2.0, 1.0)]).is_err());
    }

    #[test]
    fn grid_rules() {
        assert_eq!(GridRule::Guard.grid(4, 8), min_grid(4, 8));
        assert_eq!(GridRule::Fixed(50).grid(4, 8), 50);
        let linear = GridRule::Linear { n: 46, p: 4 };
        assert_eq!(linear.grid(4, 8), 46);
        assert_eq!(linear.grid(8, 8), 92);
        assert_eq!(linear.grid(16, 8), 184);
        assert_eq!(GridRule::Linear { n: 10, p: 4 }.grid(4, 8), min_grid(4, 8));
    }
}
