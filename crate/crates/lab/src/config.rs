//! Experiment configuration: a flat `key = value` schema shared by config files and flags.

use std::fmt;
use std::str::FromStr;

use landau_core::calculus::{FieldParams, Rational};
use landau_torus::{FourierSeries, GridRule, TorusConfig};

use crate::symbol::{parse_symbol, SymbolExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    VerifyModel,
    Levels,
    TorusSpectrum,
    ToeplitzAsymptotics,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::VerifyModel,
        Mode::Levels,
        Mode::TorusSpectrum,
        Mode::ToeplitzAsymptotics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::VerifyModel => "verify-model",
            Mode::Levels => "levels",
            Mode::TorusSpectrum => "torus-spectrum",
            Mode::ToeplitzAsymptotics => "toeplitz-asymptotics",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (csv or json)")),
        }
    }
}

/// A schema violation; the CLI exits with status 2.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

/// Every accepted key with a one-line description, in echo order.
pub const KEYS: &[(&str, &str)] = &[
    ("mode", "verify-model | levels | torus-spectrum | toeplitz-asymptotics"),
    ("n", "complex dimension of the model space"),
    (
        "a",
        "comma-separated positive rationals a_j (one value is repeated n times)",
    ),
    ("d", "fibre dimension of the exact suite"),
    ("kmax", "largest |k| in the exact suite"),
    ("max", "level cutoff for the levels table"),
    ("instances", "randomised instances per identity"),
    ("seed", "random seed for the exact suite"),
    ("d0", "degree of the line bundle on the torus"),
    ("phi", "conformal factor, a Fourier symbol"),
    ("p", "comma-separated tensor powers"),
    ("level", "comma-separated cluster indices"),
    ("grid", "guard | N | linear:N@P"),
    ("f", "first symbol"),
    ("g", "second symbol"),
    ("format", "csv | json"),
    ("output", "output file (stdout when absent)"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Option<Mode>,
    pub n: Option<usize>,
    pub a: Vec<Rational>,
    pub d: usize,
    pub kmax: u32,
    pub max: Rational,
    pub instances: usize,
    pub seed: u64,
    pub d0: u32,
    pub phi: SymbolExpr,
    pub p: Vec<u32>,
    pub level: Vec<usize>,
    pub grid: GridRule,
    pub f: SymbolExpr,
    pub g: SymbolExpr,
    pub format: Format,
    pub output: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: None,
            n: None,
            a: vec![Rational::from_integer(1.into())],
            d: 1,
            kmax: 3,
            max: Rational::from_integer(10.into()),
            instances: 20,
            seed: 1,
            d0: 1,
            phi: SymbolExpr(FourierSeries::zero()),
            p: vec![4, 8, 16],
            level: vec![0],
            grid: GridRule::Guard,
            f: SymbolExpr(FourierSeries::cos_x()),
            g: SymbolExpr(FourierSeries::cos_y()),
            format: Format::Csv,
            output: None,
        }
    }
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, String> {
    let items: Result<Vec<T>, _> = value.split(',').map(|s| s.trim().parse::<T>()).collect();
    match items {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(format!("{key}: expected a comma-separated list, got '{value}'")),
    }
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .trim()
        .parse::<T>()
        .map_err(|_| format!("{key}: cannot parse '{value}'"))
}

fn rational(key: &str, value: &str) -> Result<Rational, String> {
    let r: Rational = scalar(key, value)?;
    if r <= Rational::from_integer(0.into()) {
        return Err(format!("{key}: '{value}' must be positive"));
    }
    Ok(r)
}

fn parse_grid(value: &str) -> Result<GridRule, String> {
    let value = value.trim();
    if value == "guard" {
        return Ok(GridRule::Guard);
    }
    if let Some(rest) = value.strip_prefix("linear:") {
        let (n, p) = rest
            .split_once('@')
            .ok_or_else(|| format!("grid: expected linear:N@P, got '{value}'"))?;
        let (n, p): (usize, u32) = (scalar("grid", n)?, scalar("grid", p)?);
        if n == 0 || p == 0 {
            return Err("grid: N and P must be positive".into());
        }
        return Ok(GridRule::Linear { n, p });
    }
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(GridRule::Fixed(n)),
        _ => Err(format!("grid: expected guard, N or linear:N@P, got '{value}'")),
    }
}

fn grid_string(rule: GridRule) -> String {
    match rule {
        GridRule::Guard => "guard".into(),
        GridRule::Fixed(n) => n.to_string(),
        GridRule::Linear { n, p } => format!("linear:{n}@{p}"),
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    /// Applies one key. Unknown keys and malformed values are schema errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let positive = |v: usize| {
            if v > 0 {
                Ok(v)
            } else {
                Err(format!("{key} must be positive"))
            }
        };
        let symbol = |v: &str| parse_symbol(v).map_err(|e| format!("{key}: {e}"));
        let res: Result<(), String> = (|| {
            match key {
                "mode" => self.mode = Some(value.trim().parse()?),
                "n" => self.n = Some(positive(scalar(key, value)?)?),
                "a" => self.a = value.split(',').map(|s| rational(key, s)).collect::<Result<_, _>>()?,
                "d" => self.d = positive(scalar(key, value)?)?,
                "kmax" => self.kmax = scalar(key, value)?,
                "max" => self.max = rational(key, value)?,
                "instances" => self.instances = positive(scalar(key, value)?)?,
                "seed" => self.seed = scalar(key, value)?,
                "d0" => self.d0 = positive(scalar::<usize>(key, value)?)? as u32,
                "phi" => self.phi = symbol(value)?,
                "p" => {
                    let p: Vec<u32> = list(key, value)?;
                    if p.contains(&0) {
                        return Err("p: powers must be positive".into());
                    }
                    self.p = p;
                }
                "level" => self.level = list(key, value)?,
                "grid" => self.grid = parse_grid(value)?,
                "f" => self.f = symbol(value)?,
                "g" => self.g = symbol(value)?,
                "format" => self.format = value.trim().parse()?,
                "output" => self.output = Some(value.trim().to_string()),
                _ => {
                    let known: Vec<&str> = KEYS.iter().map(|(k, _)| *k).collect();
                    return Err(format!("unknown key '{key}' (known keys: {})", known.join(", ")));
                }
            }
            Ok(())
        })();
        res.map_err(ConfigError)
    }

    /// Parses a config file: `key = value` lines, `#` comments, blank lines ignored.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| ConfigError(format!("line {}: {}", i + 1, e.0)))?;
        }
        Ok(())
    }

    /// Applies `--key value` and `--key=value` arguments.
    pub fn apply_flags(&mut self, args: &[String]) -> Result<(), ConfigError> {
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let body = arg
                .strip_prefix("--")
                .ok_or_else(|| ConfigError(format!("unexpected argument '{arg}'")))?;
            let (key, value) = match body.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it
                        .next()
                        .ok_or_else(|| ConfigError(format!("flag --{body} needs a value")))?;
                    (body.to_string(), v.clone())
                }
            };
            self.set(&key, &value)?;
        }
        Ok(())
    }

    /// Cross-key checks that run before any computation.
    pub fn validate(&self) -> Result<Mode, ConfigError> {
        let mode = self.mode.ok_or_else(|| ConfigError("no mode given".into()))?;
        if matches!(mode, Mode::VerifyModel | Mode::Levels) {
            self.field_params()?;
        }
        if matches!(mode, Mode::TorusSpectrum | Mode::ToeplitzAsymptotics) {
            if self.p.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ConfigError("p: list must be strictly increasing".into()));
            }
            for &p in &self.p {
                self.torus(p)
                    .validate()
                    .map_err(|e| ConfigError(format!("p = {p}: {e}")))?;
            }
        }
        Ok(mode)
    }

    /// `a` expanded to length `n`.
    pub fn field_params(&self) -> Result<FieldParams, ConfigError> {
        let a = match (self.n, self.a.len()) {
            (Some(n), 1) => vec![self.a[0].clone(); n],
            (Some(n), len) if n != len => {
                return Err(ConfigError(format!("a has {len} entries but n = {n}")));
            }
            _ => self.a.clone(),
        };
        FieldParams::new(a, self.d).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn template(&self) -> TorusConfig {
        TorusConfig {
            d0: self.d0,
            phi: self.phi.0.clone(),
            p: self.p.first().copied().unwrap_or(1),
            n: 0,
        }
    }

    pub fn torus(&self, p: u32) -> TorusConfig {
        self.grid.config(&self.template(), p)
    }

    /// `(key, value)` pairs that reproduce this config when fed back to [`apply_file`](Self::apply_file).
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        for (key, _) in KEYS {
            let value = match *key {
                "mode" => self.mode.map(|m| m.name().to_string()),
                "n" => self.n.map(|n| n.to_string()),
                "a" => Some(join(&self.a)),
                "d" => Some(self.d.to_string()),
                "kmax" => Some(self.kmax.to_string()),
                "max" => Some(self.max.to_string()),
                "instances" => Some(self.instances.to_string()),
                "seed" => Some(self.seed.to_string()),
                "d0" => Some(self.d0.to_string()),
                "phi" => Some(self.phi.to_string()),
                "p" => Some(join(&self.p)),
                "level" => Some(join(&self.level)),
                "grid" => Some(grid_string(self.grid)),
                "f" => Some(self.f.to_string()),
                "g" => Some(self.g.to_string()),
                "format" => Some(match self.format {
                    Format::Csv => "csv".into(),
                    Format::Json => "json".into(),
                }),
                "output" => self.output.clone(),
                _ => None,
            };
            if let Some(v) = value {
                out.push((*key, v));
            }
        }
        out
    }
}
