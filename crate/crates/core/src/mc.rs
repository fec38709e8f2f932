//! Monte Carlo and exhaustive checks of the probabilistic statements: type
//! avoidance density, pattern-free probability, the `⌈N log₂ n⌉` bound and
//! μ_p statistics.
//!
//! Trial graphs come from [`prf::trial_bit`], keyed by `(seed, trial, pair)`,
//! so every sample is reproducible from its index alone. Trials are
//! accumulated as integer counts, so the result does not depend on how the
//! work was split.

use num_bigint::BigUint;
use serde::Serialize;

use crate::audit::exact_gfree_mask;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::oracle::EdgeOracle;
use crate::par;
use crate::prf;
use crate::search::{self, MaskGraph};
use crate::types::{TypeMask, TypeSpec};
use crate::vertex_set::VertexSet;

pub const MC_MAX_N: usize = 32;
pub const MC_MAX_PATTERN: usize = 6;
pub const EXACT_MAX_N: usize = 6;
pub const FN_EXACT_MAX_N: usize = 16;

/// The `trial`-th uniform labeled graph on `n` vertices for `seed`. Pair
/// `(i, j)` with `i < j` has index `j(j-1)/2 + i`.
pub fn trial_graph(seed: u64, trial: u64, n: usize) -> FiniteGraph {
    FiniteGraph::from_fn(n, |i, j| {
        prf::trial_bit(seed, trial, (j * (j - 1) / 2 + i) as u64)
    })
}

fn mean_stderr(hits: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (f64::NAN, f64::NAN);
    }
    let p = hits as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityStarReport {
    pub k: usize,
    pub n: usize,
    pub pool_size: u64,
    pub trials: usize,
    pub per_trial: Vec<f64>,
    pub mean: f64,
    pub stderr: f64,
    pub target: f64,
}

/// For each seed: bases `F_i` are consecutive `k`-blocks of `[1, nk]`, `t_i`
/// is "adjacent to all of `F_i`", and the pool is the next `pool_size`
/// vertices. Measures the fraction of the pool avoiding every `t_i`, whose
/// expectation is `(1 - 2^-k)^n`.
pub fn mc_density_star(
    seeds: &[u64],
    k: usize,
    n: usize,
    pool_size: u64,
) -> Result<DensityStarReport> {
    if k == 0 || k > 63 {
        return Err(Error::OutOfRange {
            what: "base size k",
            value: k as u64,
            allowed: "1..=63".into(),
        });
    }
    if pool_size == 0 {
        return Err(Error::contract("pool too small: pool_size must be >= 1"));
    }
    if seeds.is_empty() {
        return Err(Error::contract("at least one seed is required"));
    }
    let used = (n * k) as u64;
    let counts = par::map(seeds, |&seed| {
        let o = EdgeOracle::new(seed);
        let types: Vec<TypeSpec> = (0..n)
            .map(|i| {
                let base = (i * k + 1..=(i + 1) * k).map(|v| v as u64).collect();
                TypeSpec::new(base, TypeMask::ones(k)).expect("disjoint base")
            })
            .collect();
        (used + 1..=used + pool_size)
            .filter(|&x| types.iter().all(|t| !t.matches(&o, x)))
            .count() as u64
    });
    let per_trial: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / pool_size as f64)
        .collect();
    let t = per_trial.len() as f64;
    let mean = counts.iter().sum::<u64>() as f64 / (pool_size as f64 * t);
    let stderr = if per_trial.len() > 1 {
        let var = per_trial.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
        (var / t).sqrt()
    } else {
        f64::NAN
    };
    Ok(DensityStarReport {
        k,
        n,
        pool_size,
        trials: seeds.len(),
        per_trial,
        mean,
        stderr,
        target: (1.0 - 0.5f64.powi(k as i32)).powi(n as i32),
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExactGFree {
    pub n: usize,
    pub free: u64,
    pub total: u64,
    pub probability: f64,
}

/// Counts labeled graphs on `n ≤ 6` vertices with no induced copy of
/// `pattern`.
pub fn exact_gfree_count(pattern: &FiniteGraph, n: usize) -> Result<ExactGFree> {
    if n > EXACT_MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            allowed: format!("<= {EXACT_MAX_N}"),
        });
    }
    if pattern.order() > n {
        return Err(Error::contract(format!(
            "pattern order {} exceeds n = {n}",
            pattern.order()
        )));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let total = 1u64 << pairs;
    let free = par::count_range(0..total, |code| {
        let g = FiniteGraph::from_fn(n, |i, j| code >> (j * (j - 1) / 2 + i) & 1 == 1);
        let h = MaskGraph::from_graph(&g);
        search::find_induced_mask(&h, h.all(), pattern, None).is_none()
    });
    Ok(ExactGFree {
        n,
        free,
        total,
        probability: free as f64 / total as f64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GFreeEstimate {
    pub n: usize,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub exact: Option<f64>,
    /// `2^{-c n²}` for the supplied `c`.
    pub envelope: Option<f64>,
}

/// Fraction of `trials` random graphs on `n` vertices with no induced copy of
/// `pattern`.
pub fn mc_gfree_probability(
    pattern: &FiniteGraph,
    n: usize,
    trials: u64,
    seed: u64,
    c: Option<f64>,
) -> Result<GFreeEstimate> {
    if pattern.order() > MC_MAX_PATTERN {
        return Err(Error::OutOfRange {
            what: "pattern order",
            value: pattern.order() as u64,
            allowed: format!("<= {MC_MAX_PATTERN}"),
        });
    }
    if n > MC_MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            allowed: format!("<= {MC_MAX_N}"),
        });
    }
    let hits = par::count_range(0..trials, |t| {
        let h = MaskGraph::from_graph(&trial_graph(seed, t, n));
        search::find_induced_mask(&h, h.all(), pattern, None).is_none()
    });
    let (estimate, stderr) = mean_stderr(hits, trials);
    let exact = if n <= EXACT_MAX_N && pattern.order() <= n {
        Some(exact_gfree_count(pattern, n)?.probability)
    } else {
        None
    };
    Ok(GFreeEstimate {
        n,
        trials,
        hits,
        estimate,
        stderr,
        exact,
        envelope: c.map(|c| (-c * (n * n) as f64).exp2()),
    })
}

/// `⌈N · log₂ n⌉`, computed exactly as the bit length of `n^N - 1`.
pub fn f_of_n(n: u64, n_param: u32) -> u64 {
    if n <= 1 || n_param == 0 {
        return 0;
    }
    let power = BigUint::from(n).pow(n_param);
    (power - 1u32).bits()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Serialize)]
pub struct FnRow {
    pub n: usize,
    pub f: u64,
    pub method: SearchMethod,
    /// Greedy search only certifies presence, so its estimate is a lower bound.
    pub lower_bound: bool,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub envelope_log2: f64,
    pub envelope: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FnBoundReport {
    pub n_param: u32,
    pub rows: Vec<FnRow>,
}

/// Whether `g` has a pattern-free induced subgraph on `size` vertices.
pub fn has_gfree_subset(
    g: &MaskGraph,
    pattern: &FiniteGraph,
    size: u64,
    method: SearchMethod,
) -> bool {
    if size > g.order() as u64 {
        return false;
    }
    match method {
        SearchMethod::Exact => (exact_gfree_mask(g, pattern).count_ones() as u64) >= size,
        SearchMethod::Greedy => {
            let mut chosen = 0u64;
            for v in 0..g.order() {
                let with = chosen | 1 << v;
                if search::find_induced_mask(g, with, pattern, Some(v)).is_none() {
                    chosen = with;
                }
            }
            chosen.count_ones() as u64 >= size
        }
    }
}

/// For each `n`, the probability that a random `n`-vertex graph has a
/// pattern-free induced subgraph on `f(n)` vertices, next to `n^{-2 f(n)}`.
pub fn mc_fn_bound(
    pattern: &FiniteGraph,
    n_list: &[usize],
    n_param: u32,
    trials: u64,
    seed: u64,
) -> Result<FnBoundReport> {
    if pattern.order() == 0 {
        return Err(Error::contract("pattern must have at least one vertex"));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n == 0 || n > 64 {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as u64,
                allowed: "1..=64".into(),
            });
        }
        let f = f_of_n(n as u64, n_param);
        let method = if n <= FN_EXACT_MAX_N {
            SearchMethod::Exact
        } else {
            SearchMethod::Greedy
        };
        let stream = prf::derive_seed(seed, n as u64);
        let hits = if f > n as u64 {
            0
        } else {
            par::count_range(0..trials, |t| {
                let h = MaskGraph::from_graph(&trial_graph(stream, t, n));
                has_gfree_subset(&h, pattern, f, method)
            })
        };
        let (estimate, stderr) = mean_stderr(hits, trials);
        let envelope_log2 = -2.0 * f as f64 * (n as f64).log2();
        rows.push(FnRow {
            n,
            f,
            method,
            lower_bound: method == SearchMethod::Greedy,
            trials,
            hits,
            estimate,
            stderr,
            envelope_log2,
            envelope: envelope_log2.exp2(),
        });
    }
    Ok(FnBoundReport { n_param, rows })
}

/// Includes each `m ≤ N` independently with probability `p`.
pub fn sample_mu_p(p: f64, prefix_bound: u64, seed: u64) -> Result<VertexSet> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::contract(format!("mu_p needs 0 < p < 1, got {p}")));
    }
    let keep = par::map_range(1..prefix_bound + 1, |m| prf::mu_p_member(seed, m, p));
    let elems = (1..=prefix_bound)
        .zip(keep)
        .filter(|&(_, k)| k)
        .map(|(m, _)| m)
        .collect();
    VertexSet::new(elems, prefix_bound)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RunsTest {
    pub runs: u64,
    pub expected: f64,
    pub z: f64,
}

/// Wald-Wolfowitz runs test on a 0/1 sequence.
pub fn runs_test(bits: &[bool]) -> RunsTest {
    let n = bits.len() as f64;
    let n1 = bits.iter().filter(|&&b| b).count() as f64;
    let n0 = n - n1;
    let runs = if bits.is_empty() {
        0
    } else {
        1 + bits.windows(2).filter(|w| w[0] != w[1]).count() as u64
    };
    let expected = 2.0 * n1 * n0 / n + 1.0;
    let var = 2.0 * n1 * n0 * (2.0 * n1 * n0 - n) / (n * n * (n - 1.0));
    let z = if var > 0.0 {
        (runs as f64 - expected) / var.sqrt()
    } else {
        0.0
    };
    RunsTest { runs, expected, z }
}

#[derive(Debug, Clone, Serialize)]
pub struct HalvesComparison {
    pub first: f64,
    pub second: f64,
    pub z: f64,
    pub within_3sigma: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeFrequencyReport {
    pub base: Vec<u64>,
    pub mask: TypeMask,
    pub window: (u64, u64),
    pub samples: u64,
    pub hits: u64,
    pub frequency: f64,
    pub expected: f64,
    pub sigma: f64,
    pub z: f64,
    pub within_3sigma: bool,
    pub runs: RunsTest,
    pub halves: HalvesComparison,
}

/// Frequency of type `t` over `F` among `(max F, N]` against `2^{-|F|}`.
pub fn type_frequency_check(
    oracle: &EdgeOracle,
    base: &VertexSet,
    t: &TypeMask,
    prefix_bound: u64,
) -> Result<TypeFrequencyReport> {
    if base.len() != t.len() {
        return Err(Error::contract(format!(
            "type has {} bits for a base of {}",
            t.len(),
            base.len()
        )));
    }
    let spec = TypeSpec::new(base.elements().to_vec(), t.clone())?;
    let lo = base.max().unwrap_or(0) + 1;
    if lo > prefix_bound {
        return Err(Error::contract("window past the base is empty"));
    }
    let bits = par::map_range(lo..prefix_bound + 1, |m| spec.matches(oracle, m));
    let samples = bits.len() as u64;
    let hits = bits.iter().filter(|&&b| b).count() as u64;
    let expected = 0.5f64.powi(base.len() as i32);
    let frequency = hits as f64 / samples as f64;
    let sigma = (expected * (1.0 - expected) / samples as f64).sqrt();
    let z = (frequency - expected) / sigma;

    let mid = bits.len() / 2;
    let (a, b) = bits.split_at(mid);
    let freq = |s: &[bool]| s.iter().filter(|&&x| x).count() as f64 / s.len() as f64;
    let (first, second) = (freq(a), freq(b));
    let joint =
        (expected * (1.0 - expected) * (1.0 / a.len() as f64 + 1.0 / b.len() as f64)).sqrt();
    let hz = (first - second) / joint;
    Ok(TypeFrequencyReport {
        base: base.elements().to_vec(),
        mask: t.clone(),
        window: (lo, prefix_bound),
        samples,
        hits,
        frequency,
        expected,
        sigma,
        z,
        within_3sigma: z.abs() <= 3.0,
        runs: runs_test(&bits),
        halves: HalvesComparison {
            first,
            second,
            z: hz,
            within_3sigma: hz.abs() <= 3.0,
        },
    })
}

/// One CSV line: `n, estimate, stderr, exact_if_available, envelope`.
#[derive(Debug, Clone, Serialize)]
pub struct McRow {
    pub n: usize,
    pub estimate: f64,
    pub stderr: f64,
    pub exact_if_available: Option<f64>,
    pub envelope: Option<f64>,
}

impl From<&GFreeEstimate> for McRow {
    fn from(e: &GFreeEstimate) -> Self {
        McRow {
            n: e.n,
            estimate: e.estimate,
            stderr: e.stderr,
            exact_if_available: e.exact,
            envelope: e.envelope,
        }
    }
}

impl From<&FnRow> for McRow {
    fn from(r: &FnRow) -> Self {
        McRow {
            n: r.n,
            estimate: r.estimate,
            stderr: r.stderr,
            exact_if_available: None,
            envelope: Some(r.envelope),
        }
    }
}
