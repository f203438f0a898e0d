use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::LandauError;
use crate::calculus::{FieldParams, Rational};

/// A multi-index `k ∈ Z₊ⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(k: Vec<u32>) -> Self {
        Self(k)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `k ± e_j`; `None` when lowering a zero entry.
    pub fn shifted(&self, j: usize, up: bool) -> Option<Self> {
        let mut k = self.0.clone();
        if up {
            k[j] += 1;
        } else {
            k[j] = k[j].checked_sub(1)?;
        }
        Some(Self(k))
    }

    /// All multi-indices of length `n` with `|k| ≤ max_total`, graded then lexicographic.
    pub fn up_to(n: usize, max_total: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            let mut cur = vec![0; n];
            compositions(&mut cur, 0, total, &mut out);
        }
        out
    }
}

fn compositions(cur: &mut Vec<u32>, j: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if j + 1 == cur.len() {
        cur[j] = left;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for v in (0..=left).rev() {
        cur[j] = v;
        compositions(cur, j + 1, left - v, out);
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An eigenvalue `Λ` of the model operator and the complete set `𝒦_Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LandauLevel {
    pub params: FieldParams,
    pub value: Rational,
    pub indices: Vec<MultiIndex>,
}

impl LandauLevel {
    /// The level containing `Λ_k`, with its full index set.
    pub fn containing(params: &FieldParams, k: &MultiIndex) -> Result<Self, LandauError> {
        if k.n() != params.n() {
            return Err(LandauError::IndexArity {
                expected: params.n(),
                found: k.n(),
            });
        }
        let value = params.level_value(&k.0);
        let level = enumerate_levels(params, &value)?
            .into_iter()
            .find(|l| l.value == value)
            .expect("the level of k is below its own value");
        Ok(level)
    }

    /// `𝒦_Λ` has exactly one element.
    pub fn is_simple(&self) -> bool {
        self.indices.len() == 1
    }

    pub fn multiplicity(&self) -> usize {
        self.indices.len()
    }
}

/// All levels `Λ ≤ cutoff`, ascending, with complete index sets.
pub fn enumerate_levels(params: &FieldParams, cutoff: &Rational) -> Result<Vec<LandauLevel>, LandauError> {
    let lowest = params.level_value(&vec![0; params.n()]);
    if *cutoff < lowest {
        return Err(LandauError::CutoffTooLow {
            cutoff: cutoff.to_string(),
            lowest: lowest.to_string(),
        });
    }
    let mut found: BTreeMap<Rational, Vec<MultiIndex>> = BTreeMap::new();
    let mut cur = vec![0u32; params.n()];
    collect(params, cutoff, 0, &lowest, &mut cur, &mut found);
    Ok(found
        .into_iter()
        .map(|(value, mut indices)| {
            indices.sort();
            LandauLevel {
                params: params.clone(),
                value,
                indices,
            }
        })
        .collect())
}

fn collect(
    params: &FieldParams,
    cutoff: &Rational,
    j: usize,
    value: &Rational,
    cur: &mut Vec<u32>,
    found: &mut BTreeMap<Rational, Vec<MultiIndex>>,
) {
    if j == params.n() {
        found.entry(value.clone()).or_default().push(MultiIndex(cur.clone()));
        return;
    }
    let step = params.a_j(j) * Rational::from_integer(2.into());
    let mut v = value.clone();
    let mut kj = 0;
    while v <= *cutoff {
        cur[j] = kj;
        collect(params, cutoff, j + 1, &v, cur, found);
        v += &step;
        kj += 1;
    }
    cur[j] = 0;
}

/// `Σ_j a_j`, the lowest level.
pub fn lowest_level(params: &FieldParams) -> Rational {
    params.a().iter().fold(Rational::zero(), |acc, a| acc + a)
}
