//! Finite-prefix evidence for "large set" notions: prefix densities, weighted
//! reciprocal sums, thickness, arithmetic progressions, and forcing oracles
//! for the built-in G-delta families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// `n ↦ n^{-ε}` with `ε ∈ (0, 1]`; `Reciprocal` is `ε = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightFunction {
    Reciprocal,
    Power { epsilon: f64 },
}

impl WeightFunction {
    pub fn power(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::contract(format!(
                "exponent {epsilon} outside (0, 1]"
            )));
        }
        Ok(if epsilon == 1.0 {
            WeightFunction::Reciprocal
        } else {
            WeightFunction::Power { epsilon }
        })
    }

    #[inline]
    pub fn weight(&self, n: u64) -> f64 {
        match *self {
            WeightFunction::Reciprocal => 1.0 / n as f64,
            WeightFunction::Power { epsilon } => (n as f64).powf(-epsilon),
        }
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFunction::Reciprocal => f.write_str("reciprocal"),
            WeightFunction::Power { epsilon } => write!(f, "power:{epsilon}"),
        }
    }
}

impl FromStr for WeightFunction {
    type Err = Error;

    /// `reciprocal` or `power:<epsilon>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "reciprocal" => Ok(WeightFunction::Reciprocal),
            other => {
                let eps = other
                    .strip_prefix("power:")
                    .and_then(|e| e.parse::<f64>().ok())
                    .ok_or_else(|| Error::parse(0, format!("unknown weight {other:?}")))?;
                WeightFunction::power(eps)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub checkpoints: Vec<u64>,
    pub counts: Vec<u64>,
    pub densities: Vec<f64>,
    pub sup_density: f64,
    pub final_density: f64,
}

/// Dyadic checkpoints `2, 4, 8, ...` up to `n`, plus `n` itself.
pub fn dyadic_checkpoints(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(2u64), |&c| c.checked_mul(2))
        .take_while(|&c| c <= n)
        .collect();
    if n >= 1 && out.last() != Some(&n) {
        out.push(n);
    }
    out
}

/// Exact `|A ∩ [1, n]| / n` at each checkpoint. The supremum over checkpoints
/// is an estimator of upper density, not the lim sup.
pub fn density_profile(a: &VertexSet, checkpoints: &[u64]) -> Result<DensityReport> {
    if checkpoints.is_empty() {
        return Err(Error::contract("empty checkpoint list"));
    }
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::contract(
            "checkpoints must be positive and strictly increasing",
        ));
    }
    let last = *checkpoints.last().unwrap();
    if last > a.prefix_bound() {
        return Err(Error::contract(format!(
            "checkpoint {last} beyond prefix bound {}",
            a.prefix_bound()
        )));
    }
    let elems = a.elements();
    let counts: Vec<u64> = checkpoints
        .iter()
        .map(|&c| elems.partition_point(|&x| x <= c) as u64)
        .collect();
    let densities: Vec<f64> = counts
        .iter()
        .zip(checkpoints)
        .map(|(&k, &c)| k as f64 / c as f64)
        .collect();
    let sup_density = densities.iter().copied().fold(0.0, f64::max);
    let final_density = *densities.last().unwrap();
    Ok(DensityReport {
        checkpoints: checkpoints.to_vec(),
        counts,
        densities,
        sup_density,
        final_density,
    })
}

/// `Σ_{n ∈ A} f(n)`, summed from the largest element down.
pub fn weighted_sum(a: &VertexSet, f: WeightFunction) -> f64 {
    a.iter().rev().map(|n| f.weight(n)).sum()
}

/// Exact `Σ_{n ∈ elems} 1/n`.
fn exact_reciprocal_sum(elems: &[u64]) -> BigRational {
    elems.iter().fold(BigRational::zero(), |acc, &n| {
        acc + BigRational::new(BigInt::one(), BigInt::from(n))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Run {
    pub start: u64,
    pub length: u64,
}

/// Leftmost longest interval of consecutive integers inside `a`.
/// `start` is 0 when `a` is empty.
pub fn thickness(a: &VertexSet) -> Run {
    let mut best = Run {
        start: 0,
        length: 0,
    };
    let mut cur = Run {
        start: 0,
        length: 0,
    };
    let mut prev = None;
    for x in a.iter() {
        if prev.is_some_and(|p: u64| p + 1 == x) {
            cur.length += 1;
        } else {
            cur = Run {
                start: x,
                length: 1,
            };
        }
        if cur.length > best.length {
            best = cur;
        }
        prev = Some(x);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub start: u64,
    pub difference: u64,
    pub length: u64,
}

pub const AP_MAX_SIZE: usize = 5000;

/// A longest arithmetic progression inside `a`, ties broken by smallest
/// difference, then smallest start. Single elements report difference 0.
///
/// Every progression is extended only from its first term (the pair
/// `(x, x + d)` with `x - d ∉ A`), so each pair is walked at most once and
/// the scan is quadratic up to membership lookups.
pub fn longest_ap(a: &VertexSet) -> Result<Progression> {
    if a.len() > AP_MAX_SIZE {
        return Err(Error::OutOfRange {
            what: "set size for progression search",
            value: a.len() as u64,
            allowed: format!("<= {AP_MAX_SIZE}"),
        });
    }
    let e = a.elements();
    let mut best = match e.first() {
        None => {
            return Ok(Progression {
                start: 0,
                difference: 0,
                length: 0,
            })
        }
        Some(&x) => Progression {
            start: x,
            difference: 0,
            length: 1,
        },
    };
    let better = |p: &Progression, b: &Progression| {
        (
            p.length,
            std::cmp::Reverse(p.difference),
            std::cmp::Reverse(p.start),
        ) > (
            b.length,
            std::cmp::Reverse(b.difference),
            std::cmp::Reverse(b.start),
        )
    };
    for (i, &x) in e.iter().enumerate() {
        for &y in &e[i + 1..] {
            let d = y - x;
            if x > d && a.contains(x - d) {
                continue;
            }
            let mut length = 2;
            let mut next = y + d;
            while a.contains(next) {
                length += 1;
                next += d;
            }
            let p = Progression {
                start: x,
                difference: d,
                length,
            };
            if better(&p, &best) {
                best = p;
            }
        }
    }
    Ok(best)
}

/// A G-delta family `⋂_n U_n` with `U_n = { A : Σ_{m ∈ A} f(m) > n }`.
/// The built-ins are the substantial sets (`f = 1/n`) and their power-weighted
/// variants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyDescriptor {
    pub name: String,
    pub weight: WeightFunction,
}

impl FamilyDescriptor {
    pub fn substantial() -> Self {
        FamilyDescriptor {
            name: "substantial".into(),
            weight: WeightFunction::Reciprocal,
        }
    }

    pub fn power_substantial(epsilon: f64) -> Result<Self> {
        let weight = WeightFunction::power(epsilon)?;
        Ok(FamilyDescriptor {
            name: format!("{weight}-substantial"),
            weight,
        })
    }
}

impl FromStr for FamilyDescriptor {
    type Err = Error;

    /// `substantial` or `power:<epsilon>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "substantial" => Ok(FamilyDescriptor::substantial()),
            other => match other.parse::<WeightFunction>()? {
                WeightFunction::Reciprocal => Ok(FamilyDescriptor::substantial()),
                WeightFunction::Power { epsilon } => FamilyDescriptor::power_substantial(epsilon),
            },
        }
    }
}

/// Floating sums this close to the level are settled exactly (reciprocal
/// weights only).
const TIE_WINDOW: f64 = 1e-9;

/// Least `k' ≤ horizon` such that the cylinder `⟨prefix ∩ [1,k'], k'⟩` lies in
/// level `level` of `family`, i.e. the weighted sum of `prefix ∩ [1, k']`
/// exceeds `level`. `None` when the prefix does not force the level yet.
pub fn pi02_force(
    family: &FamilyDescriptor,
    level: u64,
    prefix: &VertexSet,
    horizon: u64,
) -> Option<u64> {
    let target = level as f64;
    let elems = prefix.elements();
    let mut sum = 0.0;
    for (idx, &m) in elems.iter().enumerate() {
        if m > horizon {
            break;
        }
        sum += family.weight.weight(m);
        let exceeds = if (sum - target).abs() < TIE_WINDOW
            && family.weight == WeightFunction::Reciprocal
        {
            exact_reciprocal_sum(&elems[..=idx]) > BigRational::from_integer(BigInt::from(level))
        } else {
            sum > target
        };
        if exceeds {
            return Some(m);
        }
    }
    None
}
