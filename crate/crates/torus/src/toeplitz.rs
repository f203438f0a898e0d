//! Toeplitz matrices, kernel diagonals and the torus Poisson bracket.

use faer::{c64, Mat};
use landau_core::landau::POISSON_SIGN;

use crate::cluster::SpectralCluster;
use crate::config::TorusConfig;
use crate::fourier::FourierSeries;
use crate::lattice::MagneticLattice;

/// `T_{f,p} = V*M_fV` for a grid function `f`.
///
/// In the symmetrised frame the quadrature weight `h²e^{2φ}` cancels against the
/// normalisation of the eigenfunctions, leaving the plain sum over sites.
pub fn toeplitz_matrix(cluster: &SpectralCluster, f: &[f64]) -> Mat<c64> {
    let v = &cluster.vectors;
    let fv = Mat::<c64>::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * f[r]);
    v.adjoint() * &fv
}

/// `σ·(f_X g_Y − f_Y g_X)/(B₀e^{2φ})` at the sites, by exact differentiation of the series.
///
/// In angular coordinates `∂_X = √(2π)∂_x`, which contributes the factor `2π`.
pub fn poisson_torus(f: &FourierSeries, g: &FourierSeries, cfg: &TorusConfig) -> Vec<f64> {
    let n = cfg.n;
    let (fx, fy) = (f.dx().on_grid(n), f.dy().on_grid(n));
    let (gx, gy) = (g.dx().on_grid(n), g.dy().on_grid(n));
    let phi = cfg.phi.on_grid(n);
    let scale = POISSON_SIGN as f64 * std::f64::consts::TAU / cfg.b0();
    (0..n * n)
        .map(|r| scale * (fx[r] * gy[r] - fy[r] * gx[r]) * (-2.0 * phi[r]).exp())
        .collect()
}

/// `x ↦ Σ_ij M_ij w_i(x) w̄_j(x)` for the eigenfunctions `w = e^{−φ}v/h`; `M = I` gives `P_{p,Λ}(x,x)`.
pub fn kernel_diagonal(cluster: &SpectralCluster, matrix: Option<&Mat<c64>>, lat: &MagneticLattice) -> Vec<c64> {
    let v = &cluster.vectors;
    let h2 = lat.h() * lat.h();
    let weight = |r: usize| lat.inv_conformal()[r].powi(2) / h2;
    match matrix {
        None => (0..v.nrows())
            .map(|r| {
                c64::new(
                    (0..v.ncols()).map(|c| v[(r, c)].norm_sqr()).sum::<f64>() * weight(r),
                    0.0,
                )
            })
            .collect(),
        Some(m) => {
            let vm = v * m;
            (0..v.nrows())
                .map(|r| (0..v.ncols()).map(|c| vm[(r, c)] * v[(r, c)].conj()).sum::<c64>() * weight(r))
                .collect()
        }
    }
}

/// `diag(T)/diag(P)` with points where `|diag(P)| < 10⁻⁶·max` masked out.
#[derive(Clone, Debug)]
pub struct SymbolRatio {
    /// `None` at masked points.
    pub values: Vec<Option<c64>>,
    pub masked: Vec<usize>,
}

pub fn symbol_ratio(diag_t: &[c64], diag_p: &[c64]) -> SymbolRatio {
    let max = diag_p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut masked = Vec::new();
    let values = diag_t
        .iter()
        .zip(diag_p)
        .enumerate()
        .map(|(r, (t, p))| {
            if p.norm() < 1e-6 * max {
                masked.push(r);
                None
            } else {
                Some(t / p)
            }
        })
        .collect();
    SymbolRatio { values, masked }
}

/// `max |diag(T_{f,p})/diag(P_{p,Λ}) − f|` over unmasked sites.
pub fn symbol_extraction_error(cluster: &SpectralCluster, f: &[f64], lat: &MagneticLattice) -> f64 {
    let t = toeplitz_matrix(cluster, f);
    let ratio = symbol_ratio(
        &kernel_diagonal(cluster, Some(&t), lat),
        &kernel_diagonal(cluster, None, lat),
    );
    ratio
        .values
        .iter()
        .zip(f)
        .filter_map(|(r, f)| r.map(|r| (r - f).norm()))
        .fold(0.0, f64::max)
}

/// Largest singular value.
pub fn spectral_norm(m: &Mat<c64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.singular_values()
        .expect("singular values")
        .into_iter()
        .fold(0.0, f64::max)
}

/// `max |A − A*|`.
pub fn hermitian_defect(m: &Mat<c64>) -> f64 {
    (m - m.adjoint()).norm_max()
}
