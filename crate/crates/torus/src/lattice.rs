//! Five-point magnetic Laplacian with Peierls phases.
//!
//! Site `(i, j)` sits at `(ih, jh)` and has flat index `i + N·j`. The link from `r` to its
//! neighbour carries `U = exp(−iα)`, and the counterclockwise plaquette product is
//! `exp(−ipΦ_plaq)`, so the covariant derivative is `d − ipA` and the lowest cluster is
//! holomorphic in `X + iY`, matching the flat model.
//!
//! The Bochner Laplacian is `e^{−2φ}L` with `L v(r) = h⁻²Σ(v(r) − U v(r'))`. It is
//! self-adjoint for the weight `e^{2φ}`; the lattice stores the similar operator
//! `H = e^{−φ}Le^{−φ}`, Hermitian for the plain inner product.

use faer::{c64, Mat};
use std::f64::consts::TAU;

use crate::config::TorusConfig;
use crate::TorusError;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
const GL_NODES: [f64; 4] = [
    0.069_431_844_202_973_71,
    0.330_009_478_207_571_9,
    0.669_990_521_792_428_1,
    0.930_568_155_797_026_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.173_927_422_568_726_93,
    0.326_072_577_431_273_07,
    0.326_072_577_431_273_07,
    0.173_927_422_568_726_93,
];

/// Where the gauge absorbs the total flux.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Gauge {
    /// `x`-links are trivial except in the last column.
    #[default]
    ClosingColumn,
    /// `y`-links are trivial except in the last row.
    ClosingRow,
}

#[derive(Clone, Debug)]
pub struct MagneticLattice {
    n: usize,
    h: f64,
    p: u32,
    /// `e^{−φ}` per site.
    inv_conf: Vec<f64>,
    /// `φ` per site.
    phi: Vec<f64>,
    /// Flux `Φ` of the plaquette with lower-left corner `r`.
    flux: Vec<f64>,
    /// Link angles `α` for `r → r + e_x` and `r → r + e_y`.
    alpha_x: Vec<f64>,
    alpha_y: Vec<f64>,
    diag: Vec<f64>,
    hop_x: Vec<c64>,
    hop_y: Vec<c64>,
    norm_bound: f64,
}

/// Neumaier summation; the gauge must close to well below `10⁻¹²` after `N²` additions.
fn compensated_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &x in xs {
        let t = sum + x;
        carry += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    sum + carry
}

fn wrap(a: f64) -> f64 {
    a.rem_euclid(TAU)
}

/// `arg(e^{ia})` in `(−π, π]`.
fn principal(a: f64) -> f64 {
    let w = wrap(a);
    if w > std::f64::consts::PI {
        w - TAU
    } else {
        w
    }
}

pub fn build_lattice(cfg: &TorusConfig) -> Result<MagneticLattice, TorusError> {
    build_lattice_with_gauge(cfg, Gauge::ClosingColumn)
}

pub fn build_lattice_with_gauge(cfg: &TorusConfig, gauge: Gauge) -> Result<MagneticLattice, TorusError> {
    cfg.validate()?;
    let n = cfg.n;
    let h = cfg.h();
    let phi = cfg.phi.on_grid(n);

    // Cell integrals of e^{2φ} in angular units, then Φ normalised to total 2πd₀.
    let cell = TAU / n as f64;
    let mut weight = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            let mut acc = 0.0;
            for (u, wu) in GL_NODES.iter().zip(GL_WEIGHTS) {
                for (v, wv) in GL_NODES.iter().zip(GL_WEIGHTS) {
                    let x = (i as f64 + u) * cell;
                    let y = (j as f64 + v) * cell;
                    acc += wu * wv * (2.0 * cfg.phi.eval(x, y)).exp();
                }
            }
            weight[i + n * j] = acc;
        }
    }
    let total = compensated_sum(&weight);
    let mut flux: Vec<f64> = weight.iter().map(|w| TAU * cfg.d0 as f64 * w / total).collect();
    // Put the rounding defect of the total into one plaquette so the fluxes close exactly.
    let defect = TAU * cfg.d0 as f64 - compensated_sum(&flux);
    flux[n * n - 1] += defect;

    let p = cfg.p as f64;
    let theta = |i: usize, j: usize| p * flux[i + n * j];
    let mut alpha_x = vec![0.0; n * n];
    let mut alpha_y = vec![0.0; n * n];
    match gauge {
        Gauge::ClosingColumn => {
            // α_x(N−1, j) = X_j with X_{j+1} = X_j − Σ_i θ_ij; α_y accumulates along rows.
            let mut xj = 0.0;
            for j in 0..n {
                alpha_x[n - 1 + n * j] = xj;
                let row = compensated_sum(&(0..n).map(|i| theta(i, j)).collect::<Vec<_>>());
                xj = wrap(xj - row);
            }
            for j in 0..n {
                let mut a = 0.0;
                for i in 0..n - 1 {
                    a = wrap(a + theta(i, j));
                    alpha_y[i + 1 + n * j] = a;
                }
            }
        }
        Gauge::ClosingRow => {
            // Mirror image: α_y(i, N−1) = Y_i with Y_{i+1} = Y_i + Σ_j θ_ij; α_x accumulates down columns.
            let mut yi = 0.0;
            for i in 0..n {
                alpha_y[i + n * (n - 1)] = yi;
                let col = compensated_sum(&(0..n).map(|j| theta(i, j)).collect::<Vec<_>>());
                yi = wrap(yi + col);
            }
            for i in 0..n {
                let mut a = 0.0;
                for j in 0..n - 1 {
                    a = wrap(a - theta(i, j));
                    alpha_x[i + n * (j + 1)] = a;
                }
            }
        }
    }

    let inv_conf: Vec<f64> = phi.iter().map(|v| (-v).exp()).collect();
    let scale = 1.0 / (h * h);
    let mut diag = vec![0.0; n * n];
    let mut hop_x = vec![c64::new(0.0, 0.0); n * n];
    let mut hop_y = vec![c64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for i in 0..n {
            let r = i + n * j;
            let rx = (i + 1) % n + n * j;
            let ry = i + n * ((j + 1) % n);
            diag[r] = 4.0 * scale * inv_conf[r] * inv_conf[r];
            hop_x[r] = c64::from_polar(scale * inv_conf[r] * inv_conf[rx], -alpha_x[r]);
            hop_y[r] = c64::from_polar(scale * inv_conf[r] * inv_conf[ry], -alpha_y[r]);
        }
    }
    let max_w = inv_conf.iter().cloned().fold(0.0, f64::max);
    let lat = MagneticLattice {
        n,
        h,
        p: cfg.p,
        inv_conf,
        phi,
        flux,
        alpha_x,
        alpha_y,
        diag,
        hop_x,
        hop_y,
        norm_bound: 8.0 * scale * max_w * max_w,
    };
    let residual = lat.flux_residual();
    if residual > 1e-12 {
        return Err(TorusError::FluxInconsistent(residual));
    }
    Ok(lat)
}

impl MagneticLattice {
    pub fn grid(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `φ` at the sites.
    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// `e^{−φ}` at the sites.
    pub fn inv_conformal(&self) -> &[f64] {
        &self.inv_conf
    }

    pub fn plaquette_flux(&self) -> &[f64] {
        &self.flux
    }

    /// Gershgorin bound `‖H‖ ≤ 8h⁻²max e^{−2φ}`.
    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    fn index(&self, i: usize, j: usize) -> usize {
        (i % self.n) + self.n * (j % self.n)
    }

    pub fn link_x(&self, i: usize, j: usize) -> c64 {
        c64::from_polar(1.0, -self.alpha_x[self.index(i, j)])
    }

    pub fn link_y(&self, i: usize, j: usize) -> c64 {
        c64::from_polar(1.0, -self.alpha_y[self.index(i, j)])
    }

    /// Counterclockwise product of link phases around the plaquette at `(i, j)`.
    pub fn plaquette_phase(&self, i: usize, j: usize) -> c64 {
        self.link_x(i, j) * self.link_y(i + 1, j) * self.link_x(i, j + 1).conj() * self.link_y(i, j).conj()
    }

    /// `max |arg(plaquette product) + pΦ|`, computed from the link angles.
    pub fn flux_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                let circ = self.alpha_x[self.index(i, j)] + self.alpha_y[self.index(i + 1, j)]
                    - self.alpha_x[self.index(i, j + 1)]
                    - self.alpha_y[self.index(i, j)];
                let target = self.p as f64 * self.flux[i + n * j];
                worst = worst.max(principal(circ - target).abs());
            }
        }
        worst
    }

    /// `out = H v`.
    pub fn apply(&self, v: &[c64], out: &mut [c64]) {
        let n = self.n;
        for j in 0..n {
            let up = if j + 1 == n { 0 } else { j + 1 };
            let down = if j == 0 { n - 1 } else { j - 1 };
            for i in 0..n {
                let right = if i + 1 == n { 0 } else { i + 1 };
                let left = if i == 0 { n - 1 } else { i - 1 };
                let r = i + n * j;
                let rl = left + n * j;
                let rd = i + n * down;
                let mut acc = v[r] * self.diag[r];
                acc -= self.hop_x[r] * v[right + n * j];
                acc -= self.hop_x[rl].conj() * v[rl];
                acc -= self.hop_y[r] * v[i + n * up];
                acc -= self.hop_y[rd].conj() * v[rd];
                out[r] = acc;
            }
        }
    }

    /// Dense `H`; intended for small grids.
    pub fn to_dense(&self) -> Mat<c64> {
        let dim = self.dim();
        let mut m = Mat::<c64>::zeros(dim, dim);
        let mut e = vec![c64::new(0.0, 0.0); dim];
        let mut col = vec![c64::new(0.0, 0.0); dim];
        for c in 0..dim {
            e[c] = c64::new(1.0, 0.0);
            self.apply(&e, &mut col);
            m.col_as_slice_mut(c).copy_from_slice(&col);
            e[c] = c64::new(0.0, 0.0);
        }
        m
    }

    /// Magnetic translation by `(sx, sy)` sites, if one exists for this gauge.
    ///
    /// Returns `M = G∘S` with `(Sv)(r) = v(r − s)` and `G` diagonal such that `MH = HM`.
    /// Errors unless the shifted links are gauge equivalent to the original ones.
    pub fn magnetic_translation(&self, sx: usize, sy: usize) -> Result<MagneticTranslation, TorusError> {
        let n = self.n;
        let shifted = |a: &[f64], i: usize, j: usize| a[self.index(i + n - sx % n, j + n - sy % n)];
        let dx = |i: usize, j: usize| shifted(&self.alpha_x, i, j) - self.alpha_x[self.index(i, j)];
        let dy = |i: usize, j: usize| shifted(&self.alpha_y, i, j) - self.alpha_y[self.index(i, j)];
        // χ along row 0 and then up each column, so that α' − α = χ(r') − χ(r) on tree links.
        let mut chi = vec![0.0; n * n];
        for i in 1..n {
            chi[i] = chi[i - 1] + dx(i - 1, 0);
        }
        for j in 1..n {
            for i in 0..n {
                chi[i + n * j] = chi[i + n * (j - 1)] + dy(i, j - 1);
            }
        }
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                let r = i + n * j;
                worst = worst.max(principal(dx(i, j) - (chi[self.index(i + 1, j)] - chi[r])).abs());
                worst = worst.max(principal(dy(i, j) - (chi[self.index(i, j + 1)] - chi[r])).abs());
            }
        }
        if worst > 1e-9 {
            return Err(TorusError::NotGaugeEquivalent(worst));
        }
        Ok(MagneticTranslation {
            n,
            sx: sx % n,
            sy: sy % n,
            phase: chi.iter().map(|c| c64::from_polar(1.0, -c)).collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct MagneticTranslation {
    n: usize,
    sx: usize,
    sy: usize,
    phase: Vec<c64>,
}

impl MagneticTranslation {
    pub fn apply(&self, v: &[c64]) -> Vec<c64> {
        let n = self.n;
        let mut out = vec![c64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for i in 0..n {
                let src = (i + n - self.sx) % n + n * ((j + n - self.sy) % n);
                out[i + n * j] = self.phase[i + n * j] * v[src];
            }
        }
        out
    }
}
