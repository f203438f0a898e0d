use crate::fourier::FourierSeries;
use crate::TorusError;

/// Side length `√(2π)`, so the torus has area `2π` and `∫𝐁 = 2πd₀` gives `B₀ = d₀` when flat.
pub fn side() -> f64 {
    std::f64::consts::TAU.sqrt()
}

/// Torus `[0, ℓ)²` with metric `e^{2φ}g_flat` and field `𝐁 = B₀e^{2φ}dx∧dy`.
///
/// Symbols and `φ` are written in the angular coordinates `x = 2πX/ℓ`, `y = 2πY/ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusConfig {
    pub d0: u32,
    pub phi: FourierSeries,
    pub p: u32,
    pub n: usize,
}

impl TorusConfig {
    /// Flat torus at the smallest grid allowed by the resolution guard.
    pub fn flat(d0: u32, p: u32) -> Self {
        TorusConfig {
            d0,
            phi: FourierSeries::zero(),
            p,
            n: min_grid(p, d0),
        }
    }

    pub fn with_p(&self, p: u32) -> Self {
        TorusConfig {
            p,
            n: min_grid(p, self.d0),
            ..self.clone()
        }
    }

    pub fn with_grid(&self, n: usize) -> Self {
        TorusConfig { n, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), TorusError> {
        if self.d0 == 0 || self.p == 0 {
            return Err(TorusError::InvalidConfig("d0 and p must be positive".into()));
        }
        let need = 64 * self.p as u64 * self.d0 as u64;
        if ((self.n * self.n) as u64) < need {
            return Err(TorusError::InvalidConfig(format!(
                "grid {n}×{n} violates N² ≥ 64·p·d0 = {need}",
                n = self.n
            )));
        }
        let b0 = self.b0();
        if !(b0.is_finite() && b0 > 0.0) {
            return Err(TorusError::InvalidConfig(format!("B0 = {b0}")));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        side() / self.n as f64
    }

    pub fn is_flat(&self) -> bool {
        self.phi.is_zero()
    }

    /// `B₀ = 2πd₀ / ∫e^{2φ}`.
    pub fn b0(&self) -> f64 {
        std::f64::consts::TAU * self.d0 as f64 / volume(&self.phi)
    }

    /// `p(2k+1)B₀`.
    pub fn center(&self, k: usize) -> f64 {
        self.p as f64 * (2 * k + 1) as f64 * self.b0()
    }

    /// Dimension of every cluster: `p·d₀`.
    pub fn cluster_dim(&self) -> usize {
        (self.p * self.d0) as usize
    }
}

/// Smallest `N` with `N² ≥ 64·p·d₀`.
pub fn min_grid(p: u32, d0: u32) -> usize {
    let need = 64 * p as u64 * d0 as u64;
    let mut n = (need as f64).sqrt().floor() as u64;
    while n * n < need {
        n += 1;
    }
    n as usize
}

/// `∫ e^{2φ} dXdY` by the periodic trapezoid rule, which is spectrally accurate here.
pub fn volume(phi: &FourierSeries) -> f64 {
    if phi.is_zero() {
        return std::f64::consts::TAU;
    }
    let m = 256.max(16 * phi.max_frequency() as usize);
    let mean = phi.on_grid(m).iter().map(|v| (2.0 * v).exp()).sum::<f64>() / (m * m) as f64;
    std::f64::consts::TAU * mean
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{Mode, Trig};

    #[test]
    fn guard_grid_sizes() {
        assert_eq!(min_grid(4, 8), 46);
        assert_eq!(min_grid(8, 8), 64);
        assert_eq!(min_grid(16, 8), 91);
        assert_eq!(min_grid(32, 8), 128);
        assert!(TorusConfig::flat(8, 4).with_grid(45).validate().is_err());
    }

    #[test]
    fn flat_normalisation() {
        let cfg = TorusConfig::flat(3, 2);
        assert!((cfg.b0() - 3.0).abs() < 1e-14);
        assert!((cfg.center(1) - 18.0).abs() < 1e-12);
    }

    #[test]
    fn perturbed_volume_matches_bessel_series() {
        // mean of e^{2ε cos x cos y} is Σ_m ε^{2m}(2m)!/(4^m m!⁴)
        let eps = 0.1;
        let phi = FourierSeries::mode(Mode::new(Trig::Cos, 1, Trig::Cos, 1), eps);
        let mut series = 0.0;
        let mut term = 1.0;
        for m in 0..10 {
            if m > 0 {
                let m = m as f64;
                term *= eps * eps * (2.0 * m) * (2.0 * m - 1.0) / (4.0 * m.powi(4));
            }
            series += term;
        }
        assert!((volume(&phi) / std::f64::consts::TAU - series).abs() < 1e-13);
    }
}
