//! Real trigonometric polynomials in the angular coordinates `x, y ∈ [0, 2π)`.

use std::collections::BTreeMap;
use std::fmt;

/// `cos` or `sin` factor of a Fourier mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            Trig::Cos => t.cos(),
            Trig::Sin => t.sin(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Trig::Cos => "cos",
            Trig::Sin => "sin",
        }
    }
}

/// `fx(mx·x)·fy(my·y)`. `sin(0·t)` never appears in a canonical series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub fx: Trig,
    pub mx: u32,
    pub fy: Trig,
    pub my: u32,
}

impl Mode {
    pub fn new(fx: Trig, mx: u32, fy: Trig, my: u32) -> Self {
        Mode { fx, mx, fy, my }
    }

    pub fn constant() -> Self {
        Mode::new(Trig::Cos, 0, Trig::Cos, 0)
    }

    fn is_null(&self) -> bool {
        (self.fx == Trig::Sin && self.mx == 0) || (self.fy == Trig::Sin && self.my == 0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.fx.eval(self.mx as f64 * x) * self.fy.eval(self.my as f64 * y)
    }
}

/// One-variable product `f(a t)·g(b t)` as a sum of single modes.
fn product_1d(f: Trig, a: u32, g: Trig, b: u32) -> [(Trig, u32, f64); 2] {
    let (a, b) = (a as i64, b as i64);
    // (kind, signed frequency, weight) before folding negative frequencies
    let raw = match (f, g) {
        (Trig::Cos, Trig::Cos) => [(Trig::Cos, a - b, 0.5), (Trig::Cos, a + b, 0.5)],
        (Trig::Sin, Trig::Sin) => [(Trig::Cos, a - b, 0.5), (Trig::Cos, a + b, -0.5)],
        (Trig::Sin, Trig::Cos) => [(Trig::Sin, a + b, 0.5), (Trig::Sin, a - b, 0.5)],
        (Trig::Cos, Trig::Sin) => [(Trig::Sin, a + b, 0.5), (Trig::Sin, b - a, 0.5)],
    };
    raw.map(|(kind, m, w)| {
        let sign = if kind == Trig::Sin && m < 0 { -1.0 } else { 1.0 };
        (kind, m.unsigned_abs() as u32, w * sign)
    })
}

/// Finite real Fourier series `Σ c·fx(mx·x)·fy(my·y)` with canonical modes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FourierSeries {
    terms: BTreeMap<Mode, f64>,
}

impl FourierSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms([(Mode::constant(), c)])
    }

    pub fn mode(mode: Mode, c: f64) -> Self {
        Self::from_terms([(mode, c)])
    }

    pub fn cos_x() -> Self {
        Self::mode(Mode::new(Trig::Cos, 1, Trig::Cos, 0), 1.0)
    }

    pub fn cos_y() -> Self {
        Self::mode(Mode::new(Trig::Cos, 0, Trig::Cos, 1), 1.0)
    }

    /// Sums repeated modes and drops null modes and zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mode, f64)>) -> Self {
        let mut out = FourierSeries::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, mode: Mode, c: f64) {
        if mode.is_null() || c == 0.0 {
            return;
        }
        let v = self.terms.entry(mode).or_insert(0.0);
        *v += c;
        if *v == 0.0 {
            self.terms.remove(&mode);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mode, &f64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest frequency in either variable.
    pub fn max_frequency(&self) -> u32 {
        self.terms.keys().map(|m| m.mx.max(m.my)).max().unwrap_or(0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|(m, c)| c * m.eval(x, y)).sum()
    }

    /// Values at `(2πi/n, 2πj/n)`, index `i + n·j`.
    pub fn on_grid(&self, n: usize) -> Vec<f64> {
        let step = std::f64::consts::TAU / n as f64;
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                out.push(self.eval(i as f64 * step, j as f64 * step));
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c * s)))
    }

    /// `∂/∂x`.
    pub fn dx(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let w = m.mx as f64;
            match m.fx {
                Trig::Cos => (Mode { fx: Trig::Sin, ..*m }, -w * c),
                Trig::Sin => (Mode { fx: Trig::Cos, ..*m }, w * c),
            }
        }))
    }

    /// `∂/∂y`.
    pub fn dy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let w = m.my as f64;
            match m.fy {
                Trig::Cos => (Mode { fy: Trig::Sin, ..*m }, -w * c),
                Trig::Sin => (Mode { fy: Trig::Cos, ..*m }, w * c),
            }
        }))
    }
}

impl std::ops::Add for &FourierSeries {
    type Output = FourierSeries;
    fn add(self, rhs: &FourierSeries) -> FourierSeries {
        FourierSeries::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(m, c)| (*m, *c)))
    }
}

impl std::ops::Sub for &FourierSeries {
    type Output = FourierSeries;
    fn sub(self, rhs: &FourierSeries) -> FourierSeries {
        self + &rhs.scale(-1.0)
    }
}

impl std::ops::Mul for &FourierSeries {
    type Output = FourierSeries;
    fn mul(self, rhs: &FourierSeries) -> FourierSeries {
        let mut out = FourierSeries::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                for (fx, mx, wx) in product_1d(a.fx, a.mx, b.fx, b.mx) {
                    for (fy, my, wy) in product_1d(a.fy, a.my, b.fy, b.my) {
                        out.add_term(Mode::new(fx, mx, fy, my), ca * cb * wx * wy);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |t: Trig, m: u32, v: char| match m {
            0 => None,
            1 => Some(format!("{}({v})", t.name())),
            _ => Some(format!("{}({m}{v})", t.name())),
        };
        let parts: Vec<String> = [factor(self.fx, self.mx, 'x'), factor(self.fy, self.my, 'y')]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_fold_to_canonical_modes() {
        let c = FourierSeries::cos_x();
        let sq = &c * &c;
        assert_eq!(
            sq,
            FourierSeries::from_terms([(Mode::constant(), 0.5), (Mode::new(Trig::Cos, 2, Trig::Cos, 0), 0.5)])
        );
        let s = FourierSeries::mode(Mode::new(Trig::Sin, 1, Trig::Cos, 0), 1.0);
        // sin x cos x = sin(2x)/2
        assert_eq!(&s * &c, FourierSeries::mode(Mode::new(Trig::Sin, 2, Trig::Cos, 0), 0.5));
    }

    #[test]
    fn derivatives() {
        let f = FourierSeries::mode(Mode::new(Trig::Sin, 2, Trig::Cos, 3), 1.5);
        assert_eq!(f.dx(), FourierSeries::mode(Mode::new(Trig::Cos, 2, Trig::Cos, 3), 3.0));
        assert_eq!(f.dy(), FourierSeries::mode(Mode::new(Trig::Sin, 2, Trig::Sin, 3), -4.5));
        assert!(FourierSeries::constant(2.0).dx().is_zero());
    }

    #[test]
    fn null_modes_vanish() {
        assert!(FourierSeries::mode(Mode::new(Trig::Sin, 0, Trig::Cos, 2), 1.0).is_zero());
    }
}
