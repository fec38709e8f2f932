//! The ambient random graph on the positive integers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prf::{pair_hash, top53};

/// Edge probability as an exact rational `num / den` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeProbability {
    num: u64,
    den: u64,
}

impl EdgeProbability {
    pub const HALF: EdgeProbability = EdgeProbability { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::contract(format!(
                "edge probability {num}/{den} must lie in (0, 1]"
            )));
        }
        Ok(EdgeProbability { num, den })
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `draw / 2^53 < num / den`, evaluated exactly.
    #[inline]
    fn accepts(&self, draw: u64) -> bool {
        (draw as u128) * (self.den as u128) < (self.num as u128) << 53
    }
}

impl std::fmt::Display for EdgeProbability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Default for EdgeProbability {
    fn default() -> Self {
        Self::HALF
    }
}

impl std::str::FromStr for EdgeProbability {
    type Err = Error;

    /// Accepts `a/b` or a bare integer `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num = num
            .parse()
            .map_err(|_| Error::parse(0, format!("bad probability numerator in {s:?}")))?;
        let den = den
            .parse()
            .map_err(|_| Error::parse(0, format!("bad probability denominator in {s:?}")))?;
        EdgeProbability::new(num, den)
    }
}

/// A fixed random graph on ℕ = {1, 2, ...}: a seed plus a pure symmetric
/// pair function. Cheap to copy and safe to share across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeOracle {
    seed: u64,
    probability: EdgeProbability,
}

impl EdgeOracle {
    pub fn new(seed: u64) -> Self {
        EdgeOracle {
            seed,
            probability: EdgeProbability::HALF,
        }
    }

    pub fn with_probability(seed: u64, probability: EdgeProbability) -> Self {
        EdgeOracle { seed, probability }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn probability(&self) -> EdgeProbability {
        self.probability
    }

    /// Checked edge query. Fails on loops and on vertex 0.
    pub fn edge(&self, u: u64, v: u64) -> Result<bool> {
        if u == v {
            return Err(Error::contract(format!("edge({u},{u}) queried")));
        }
        if u == 0 || v == 0 {
            return Err(Error::contract("vertices are numbered from 1"));
        }
        Ok(self.adjacent(u, v))
    }

    /// Unchecked edge query for hot loops. Loops report `false`.
    #[inline]
    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        debug_assert!(u >= 1 && v >= 1, "vertex 0 queried");
        if u == v {
            return false;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.probability.accepts(top53(pair_hash(self.seed, a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_loops_and_zero() {
        let o = EdgeOracle::new(1);
        assert!(o.edge(3, 3).is_err());
        assert!(o.edge(0, 3).is_err());
        assert!(o.edge(3, 4).is_ok());
    }

    #[test]
    fn symmetric_on_small_pairs() {
        let o = EdgeOracle::new(7);
        for u in 1..=64 {
            for v in 1..=64 {
                if u != v {
                    assert_eq!(o.adjacent(u, v), o.adjacent(v, u));
                }
            }
        }
    }

    #[test]
    fn probability_one_is_complete() {
        let o = EdgeOracle::with_probability(5, EdgeProbability::new(1, 1).unwrap());
        for u in 1..40 {
            for v in (u + 1)..40 {
                assert!(o.adjacent(u, v));
            }
        }
    }

    fn edge_fraction(seed: u64, n: u64) -> (f64, f64) {
        let o = EdgeOracle::new(seed);
        let mut edges = 0u64;
        for u in 1..=n {
            for v in (u + 1)..=n {
                edges += o.adjacent(u, v) as u64;
            }
        }
        let pairs = (n * (n - 1) / 2) as f64;
        (edges as f64 / pairs, (0.25 / pairs).sqrt())
    }

    #[test]
    fn edge_frequency_within_three_sigma() {
        for &n in &[128u64, 512] {
            for seed in 1..=5 {
                let (frac, sigma) = edge_fraction(seed, n);
                assert!(
                    (frac - 0.5).abs() <= 3.0 * sigma,
                    "n={n} seed={seed} frac={frac}"
                );
            }
        }
        // The coarser documented band on [1,512].
        let (frac, _) = edge_fraction(42, 512);
        assert!((frac - 0.5).abs() <= 0.02);
    }

    #[test]
    fn parse_probability() {
        assert_eq!(
            "1/2".parse::<EdgeProbability>().unwrap(),
            EdgeProbability::HALF
        );
        assert!("3/2".parse::<EdgeProbability>().is_err());
        assert!("0/2".parse::<EdgeProbability>().is_err());
        assert_eq!(
            "1".parse::<EdgeProbability>().unwrap(),
            EdgeProbability::new(1, 1).unwrap()
        );
    }

    proptest! {
        #[test]
        fn queries_are_pure(seed: u64, u in 1u64..1_000_000, v in 1u64..1_000_000) {
            prop_assume!(u != v);
            let o = EdgeOracle::new(seed);
            prop_assert_eq!(o.adjacent(u, v), o.adjacent(v, u));
            prop_assert_eq!(o.adjacent(u, v), EdgeOracle::new(seed).edge(u, v).unwrap());
        }
    }
}
