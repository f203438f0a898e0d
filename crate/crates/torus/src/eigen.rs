//! Lowest eigenpairs of the lattice operator.
//!
//! Landau clusters are almost exactly degenerate, which stalls single-vector Lanczos.
//! The solver is Chebyshev-filtered block subspace iteration instead: each sweep applies
//! a degree-`m` Chebyshev polynomial damping `[cut, ‖H‖]` to the block, re-orthonormalises
//! it by a thin QR (full reorthogonalisation of the whole block), and performs a
//! Rayleigh–Ritz step. The start block is drawn from `ChaCha8Rng` with a fixed seed.

use faer::{c64, Mat, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::MagneticLattice;
use crate::TorusError;

/// Seed of the start block.
pub const START_SEED: u64 = 0x4c61_6e64_6175;

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub degree: usize,
    pub max_sweeps: usize,
    /// Acceptance threshold on `‖Hv − λv‖ / ‖H‖`.
    pub tol: f64,
    /// Extra block columns beyond the requested count.
    pub slack: usize,
    pub seed: u64,
}

impl SolverOptions {
    pub fn for_count(count: usize) -> Self {
        SolverOptions {
            degree: 20,
            max_sweeps: 80,
            tol: 1e-8,
            slack: (count / 8).max(8),
            seed: START_SEED,
        }
    }
}

/// Ascending eigenvalues with orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Mat<c64>,
    /// `‖Hv − λv‖` per pair.
    pub residuals: Vec<f64>,
    pub sweeps: usize,
}

fn apply_block(lat: &MagneticLattice, v: &Mat<c64>) -> Mat<c64> {
    let mut out = Mat::<c64>::zeros(v.nrows(), v.ncols());
    for c in 0..v.ncols() {
        lat.apply(v.col_as_slice(c), out.col_as_slice_mut(c));
    }
    out
}

/// Chebyshev polynomial of `H` damping `[lo, hi]`, applied column by column.
fn filter(lat: &MagneticLattice, v: &mut Mat<c64>, degree: usize, lo: f64, hi: f64) {
    let e = (hi - lo) / 2.0;
    let c = (hi + lo) / 2.0;
    let dim = v.nrows();
    let mut prev = vec![c64::new(0.0, 0.0); dim];
    let mut cur = vec![c64::new(0.0, 0.0); dim];
    let mut next = vec![c64::new(0.0, 0.0); dim];
    for col in 0..v.ncols() {
        prev.copy_from_slice(v.col_as_slice(col));
        lat.apply(&prev, &mut cur);
        for (y, x) in cur.iter_mut().zip(&prev) {
            *y = (*y - x * c) / e;
        }
        for _ in 1..degree {
            lat.apply(&cur, &mut next);
            for ((y, x), z) in next.iter_mut().zip(&cur).zip(&prev) {
                *y = (*y - x * c) * (2.0 / e) - z;
            }
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
        }
        let norm = cur.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (dst, src) in v.col_as_slice_mut(col).iter_mut().zip(&cur) {
            *dst = src / norm;
        }
    }
}

/// Rayleigh–Ritz on an orthonormal block: returns rotated vectors and Ritz values.
fn rayleigh_ritz(lat: &MagneticLattice, v: &Mat<c64>) -> (Mat<c64>, Vec<f64>) {
    let hv = apply_block(lat, v);
    let g = v.adjoint() * &hv;
    let g = Mat::<c64>::from_fn(g.nrows(), g.ncols(), |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5);
    let eig = g.self_adjoint_eigen(Side::Lower).expect("dense Hermitian eigensolver");
    let theta: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    (v * eig.U(), theta)
}

fn residuals(lat: &MagneticLattice, v: &Mat<c64>, theta: &[f64], count: usize) -> Vec<f64> {
    let mut hv = vec![c64::new(0.0, 0.0); v.nrows()];
    (0..count)
        .map(|c| {
            let x = v.col_as_slice(c);
            lat.apply(x, &mut hv);
            hv.iter()
                .zip(x)
                .map(|(y, x)| (y - x * theta[c]).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

fn orthonormalise(v: &Mat<c64>) -> Mat<c64> {
    v.qr().compute_thin_Q()
}

/// The `count` smallest eigenpairs with default options.
pub fn lowest_spectrum(lat: &MagneticLattice, count: usize) -> Result<Eigenpairs, TorusError> {
    lowest_spectrum_with(lat, count, &SolverOptions::for_count(count))
}

pub fn lowest_spectrum_with(
    lat: &MagneticLattice,
    count: usize,
    opts: &SolverOptions,
) -> Result<Eigenpairs, TorusError> {
    let dim = lat.dim();
    if count == 0 || count > dim {
        return Err(TorusError::InvalidCount { count, dim });
    }
    let block = (count + opts.slack).min(dim);
    if block == dim {
        return Ok(dense_spectrum(lat).truncated(count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let start = Mat::<c64>::from_fn(dim, block, |_, _| {
        c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let mut v = orthonormalise(&start);
    let hi = lat.norm_bound();
    let target = opts.tol * hi;
    let mut worst = f64::INFINITY;
    for sweep in 1..=opts.max_sweeps {
        let (rotated, theta) = rayleigh_ritz(lat, &v);
        v = rotated;
        let res = residuals(lat, &v, &theta, count);
        worst = res.iter().cloned().fold(0.0, f64::max);
        if worst <= target {
            let vectors = Mat::<c64>::from_fn(dim, count, |i, j| v[(i, j)]);
            return Ok(Eigenpairs {
                values: theta[..count].to_vec(),
                vectors,
                residuals: res,
                sweeps: sweep,
            });
        }
        let cut = theta[block - 1];
        filter(lat, &mut v, opts.degree, cut, hi);
        v = orthonormalise(&v);
    }
    Err(TorusError::NotConverged {
        sweeps: opts.max_sweeps,
        max_residual: worst / hi,
    })
}

/// Full spectrum by dense diagonalisation; the oracle for small grids.
pub fn dense_spectrum(lat: &MagneticLattice) -> Eigenpairs {
    let m = lat.to_dense();
    let eig = m.self_adjoint_eigen(Side::Lower).expect("dense Hermitian eigensolver");
    let values: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    let vectors = eig.U().to_owned();
    let residuals = residuals(lat, &vectors, &values, values.len());
    Eigenpairs {
        values,
        vectors,
        residuals,
        sweeps: 0,
    }
}

impl Eigenpairs {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn truncated(self, count: usize) -> Self {
        let vectors = Mat::<c64>::from_fn(self.vectors.nrows(), count, |i, j| self.vectors[(i, j)]);
        Eigenpairs {
            values: self.values[..count].to_vec(),
            vectors,
            residuals: self.residuals[..count].to_vec(),
            sweeps: self.sweeps,
        }
    }
}
