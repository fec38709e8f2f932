//! Universality audits on finite host sets: induced containment, weak
//! universality sweeps, largest pattern-free subsets and the dyadic-window
//! audit.

use serde::Serialize;

use crate::canon::{self, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::graph6;
use crate::oracle::EdgeOracle;
use crate::par;
use crate::prf;
use crate::search::{self, MaskGraph};
use crate::types::induced_on;
use crate::vertex_set::VertexSet;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
pub const CONTAINS_MAX_ORDER: usize = 10;
pub const EXACT_MAX_WINDOW: u64 = 40;
pub const WEAK_MAX_ORDER: usize = 7;

/// An induced copy of a pattern: `mapping[i]` is the image of pattern vertex `i`.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub mapping: Vec<u64>,
    pub vertices: VertexSet,
}

fn check_mapping(oracle: &EdgeOracle, pattern: &FiniteGraph, mapping: &[u64]) -> bool {
    let k = mapping.len();
    (0..k)
        .all(|j| (0..j).all(|i| oracle.adjacent(mapping[i], mapping[j]) == pattern.has_edge(i, j)))
}

/// Searches `host` for an induced copy of `pattern`.
///
/// `Ok(None)` certifies absence (the search completed); running out of
/// `node_budget` is `Err(BudgetExhausted)`, which certifies nothing.
pub fn contains_induced(
    oracle: &EdgeOracle,
    host: &VertexSet,
    pattern: &FiniteGraph,
    node_budget: u64,
) -> Result<Option<Witness>> {
    if pattern.order() > CONTAINS_MAX_ORDER {
        return Err(Error::OutOfRange {
            what: "pattern order",
            value: pattern.order() as u64,
            allowed: format!("<= {CONTAINS_MAX_ORDER}"),
        });
    }
    if node_budget == 0 {
        return Err(Error::contract("node budget must be >= 1"));
    }
    let found = search::find_induced_oracle(oracle, host.elements(), pattern, None, node_budget)?;
    let Some(mapping) = found else {
        return Ok(None);
    };
    if !check_mapping(oracle, pattern, &mapping) || !mapping.iter().all(|&x| host.contains(x)) {
        return Err(Error::Verification(
            "containment witness failed re-check".into(),
        ));
    }
    let vertices = VertexSet::from_unsorted(mapping.clone())?;
    Ok(Some(Witness { mapping, vertices }))
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PatternStatus {
    Witnessed { witness: Witness },
    Absent,
    BudgetExhausted { nodes: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternEntry {
    pub order: usize,
    pub form: CanonicalForm,
    pub graph6: String,
    #[serde(flatten)]
    pub status: PatternStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Some pattern is certified absent.
    Fail,
    /// No certified absence, but some search ran out of budget.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderSummary {
    pub order: usize,
    pub classes: usize,
    pub witnessed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeakUniversalityReport {
    pub k_max: usize,
    pub per_order: Vec<OrderSummary>,
    pub classes: usize,
    pub witnessed: usize,
    pub absent: usize,
    pub inconclusive: usize,
    pub verdict: Verdict,
    pub patterns: Vec<PatternEntry>,
}

/// Checks every isomorphism class of order `1..=k_max` against `host`.
pub fn weak_universality(
    oracle: &EdgeOracle,
    host: &VertexSet,
    k_max: usize,
    node_budget: u64,
) -> Result<WeakUniversalityReport> {
    if k_max > WEAK_MAX_ORDER {
        return Err(Error::OutOfRange {
            what: "k_max",
            value: k_max as u64,
            allowed: format!("<= {WEAK_MAX_ORDER}"),
        });
    }
    let mut catalog = Vec::new();
    for k in 1..=k_max {
        catalog.extend(canon::enumerate_unlabeled(k)?);
    }
    let statuses = par::map(&catalog, |g| {
        match contains_induced(oracle, host, g, node_budget) {
            Ok(Some(witness)) => Ok(PatternStatus::Witnessed { witness }),
            Ok(None) => Ok(PatternStatus::Absent),
            Err(Error::BudgetExhausted { nodes }) => Ok(PatternStatus::BudgetExhausted { nodes }),
            Err(e) => Err(e),
        }
    });
    let mut patterns = Vec::with_capacity(catalog.len());
    for (g, status) in catalog.iter().zip(statuses) {
        patterns.push(PatternEntry {
            order: g.order(),
            form: canon::canonical_form(g)?,
            graph6: graph6::encode(g),
            status: status?,
        });
    }
    let count = |f: fn(&PatternStatus) -> bool| patterns.iter().filter(|p| f(&p.status)).count();
    let witnessed = count(|s| matches!(s, PatternStatus::Witnessed { .. }));
    let absent = count(|s| matches!(s, PatternStatus::Absent));
    let inconclusive = count(|s| matches!(s, PatternStatus::BudgetExhausted { .. }));
    let verdict = if absent > 0 {
        Verdict::Fail
    } else if inconclusive > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let per_order = (1..=k_max)
        .map(|order| OrderSummary {
            order,
            classes: patterns.iter().filter(|p| p.order == order).count(),
            witnessed: patterns
                .iter()
                .filter(|p| p.order == order && matches!(p.status, PatternStatus::Witnessed { .. }))
                .count(),
        })
        .collect();
    Ok(WeakUniversalityReport {
        k_max,
        per_order,
        classes: patterns.len(),
        witnessed,
        absent,
        inconclusive,
        verdict,
        patterns,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GFreeMode {
    Exact,
    Greedy,
}

impl std::str::FromStr for GFreeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(GFreeMode::Exact),
            "greedy" => Ok(GFreeMode::Greedy),
            _ => Err(Error::parse(0, format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreenessCheck {
    Exhaustive,
    Sampled { samples: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct GFreeSubset {
    pub window: (u64, u64),
    pub mode: GFreeMode,
    pub size: usize,
    pub subset: VertexSet,
    pub check: FreenessCheck,
}

const EXHAUSTIVE_CHECK_MAX: usize = 20;
const FREENESS_SAMPLES: u64 = 4096;

/// Largest (exact) or maximal (greedy) subset of the window `[lo, hi]` whose
/// induced subgraph has no induced copy of `pattern`.
pub fn max_gfree_subset(
    oracle: &EdgeOracle,
    window: (u64, u64),
    pattern: &FiniteGraph,
    mode: GFreeMode,
) -> Result<GFreeSubset> {
    let (lo, hi) = window;
    if lo == 0 || lo > hi {
        return Err(Error::contract(format!(
            "window [{lo}, {hi}] is empty or contains 0"
        )));
    }
    if pattern.order() == 0 || pattern.order() > canon::CANON_MAX_ORDER {
        return Err(Error::OutOfRange {
            what: "pattern order",
            value: pattern.order() as u64,
            allowed: format!("1..={}", canon::CANON_MAX_ORDER),
        });
    }
    let len = hi - lo + 1;
    let subset = match mode {
        GFreeMode::Exact => {
            if len > EXACT_MAX_WINDOW {
                return Err(Error::OutOfRange {
                    what: "exact window length",
                    value: len,
                    allowed: format!("<= {EXACT_MAX_WINDOW}"),
                });
            }
            let vertices: Vec<u64> = (lo..=hi).collect();
            let host = MaskGraph::from_oracle(oracle, &vertices);
            let best = exact_gfree_mask(&host, pattern);
            (0..vertices.len())
                .filter(|&i| best >> i & 1 == 1)
                .map(|i| vertices[i])
                .collect::<Vec<_>>()
        }
        GFreeMode::Greedy => greedy_gfree(oracle, lo..=hi, pattern)?,
    };
    let subset = VertexSet::new(subset, hi)?;
    let check = verify_gfree(oracle, &subset, pattern)?;
    Ok(GFreeSubset {
        window,
        mode,
        size: subset.len(),
        subset,
        check,
    })
}

/// Branch and bound over include/exclude decisions in index order, bounded by
/// `current size + vertices left`. Returns the best subset as a bitmask.
pub(crate) fn exact_gfree_mask(host: &MaskGraph, pattern: &FiniteGraph) -> u64 {
    struct Bnb<'a> {
        host: &'a MaskGraph,
        pattern: &'a FiniteGraph,
        n: usize,
        best: u64,
        best_size: i64,
    }
    impl Bnb<'_> {
        fn go(&mut self, i: usize, current: u64, size: i64) {
            if size + (self.n - i) as i64 <= self.best_size {
                return;
            }
            if i == self.n {
                self.best = current;
                self.best_size = size;
                return;
            }
            let with = current | 1 << i;
            if search::find_induced_mask(self.host, with, self.pattern, Some(i)).is_none() {
                self.go(i + 1, with, size + 1);
            }
            self.go(i + 1, current, size);
        }
    }
    let mut bnb = Bnb {
        host,
        pattern,
        n: host.order(),
        best: 0,
        best_size: -1,
    };
    bnb.go(0, 0, 0);
    bnb.best
}

/// Ascending insertion, rejecting any vertex that would complete a copy.
pub(crate) fn greedy_gfree(
    oracle: &EdgeOracle,
    window: impl Iterator<Item = u64>,
    pattern: &FiniteGraph,
) -> Result<Vec<u64>> {
    let mut chosen: Vec<u64> = Vec::new();
    for v in window {
        chosen.push(v);
        if search::find_induced_oracle(oracle, &chosen, pattern, Some(v), u64::MAX)?.is_some() {
            chosen.pop();
        }
    }
    Ok(chosen)
}

/// Re-checks freeness from scratch by comparing canonical forms of
/// pattern-order subsets: every subset when `|S| <= 20`, a keyed random sample
/// of them otherwise.
fn verify_gfree(
    oracle: &EdgeOracle,
    s: &VertexSet,
    pattern: &FiniteGraph,
) -> Result<FreenessCheck> {
    let k = pattern.order();
    let target = canon::canonical_form(pattern)?;
    let elems = s.elements();
    if elems.len() < k {
        return Ok(FreenessCheck::Exhaustive);
    }
    let is_copy = |subset: &[u64]| -> Result<bool> {
        Ok(canon::canonical_form(&induced_on(oracle, subset))? == target)
    };
    if elems.len() <= EXHAUSTIVE_CHECK_MAX {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let subset: Vec<u64> = idx.iter().map(|&i| elems[i]).collect();
            if is_copy(&subset)? {
                return Err(Error::Verification(format!("pattern copy on {subset:?}")));
            }
            // Next k-combination in lexicographic order.
            let Some(pos) = (0..k).rev().find(|&p| idx[p] < elems.len() - k + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
        Ok(FreenessCheck::Exhaustive)
    } else {
        let key = prf::derive_seed(oracle.seed(), elems[0] ^ (elems.len() as u64) << 40);
        let n = elems.len() as u64;
        for sample in 0..FREENESS_SAMPLES {
            let mut pick: Vec<u64> = Vec::with_capacity(k);
            let mut ctr = 0u64;
            while pick.len() < k {
                let x = elems[(prf::mix64(key ^ prf::mix64(sample << 16 | ctr)) % n) as usize];
                ctr += 1;
                if !pick.contains(&x) {
                    pick.push(x);
                }
            }
            pick.sort_unstable();
            if is_copy(&pick)? {
                return Err(Error::Verification(format!("pattern copy on {pick:?}")));
            }
        }
        Ok(FreenessCheck::Sampled {
            samples: FREENESS_SAMPLES,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DyadicWindow {
    pub k: u32,
    pub start: u64,
    pub end: u64,
    pub mode: GFreeMode,
    /// Exact maximum, or a greedy lower bound on it.
    pub size: usize,
    pub lower_bound_only: bool,
    pub threshold: u64,
    pub violation: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DyadicReport {
    pub n_param: u64,
    pub windows: Vec<DyadicWindow>,
    pub violations: usize,
}

/// For each `k`, the largest pattern-free subset of `[2^k, 2^{k+1})` against
/// the threshold `k · n_param`; sizes at or above the threshold are violations.
/// Windows of length at most 40 are solved exactly, larger ones greedily.
pub fn dyadic_audit(
    oracle: &EdgeOracle,
    pattern: &FiniteGraph,
    n_param: u64,
    k_range: std::ops::RangeInclusive<u32>,
) -> Result<DyadicReport> {
    if *k_range.end() > 40 {
        return Err(Error::OutOfRange {
            what: "dyadic exponent",
            value: *k_range.end() as u64,
            allowed: "<= 40".into(),
        });
    }
    let ks: Vec<u32> = k_range.collect();
    let results = par::map(&ks, |&k| -> Result<DyadicWindow> {
        let start = 1u64 << k;
        let end = (1u64 << (k + 1)) - 1;
        let mode = if end - start < EXACT_MAX_WINDOW {
            GFreeMode::Exact
        } else {
            GFreeMode::Greedy
        };
        let r = max_gfree_subset(oracle, (start, end), pattern, mode)?;
        let threshold = k as u64 * n_param;
        Ok(DyadicWindow {
            k,
            start,
            end,
            mode,
            size: r.size,
            lower_bound_only: mode == GFreeMode::Greedy,
            threshold,
            violation: r.size as u64 >= threshold,
        })
    });
    let windows = results.into_iter().collect::<Result<Vec<_>>>()?;
    let violations = windows.iter().filter(|w| w.violation).count();
    Ok(DyadicReport {
        n_param,
        windows,
        violations,
    })
}

/// The convergent majorant `Σ_{n < 2^m} 1/n + Σ_{k ≥ m} k·N/2^k` bounding the
/// reciprocal sum of a pattern-free set once every dyadic window from `m` on
/// holds fewer than `k·N` of its elements.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Majorant {
    pub m: u32,
    pub n_param: u64,
    pub head: f64,
    pub tail: f64,
    pub total: f64,
}

pub fn substantial_majorant(m: u32, n_param: u64) -> Majorant {
    assert!((1..63).contains(&m));
    let head: f64 = (1..1u64 << m).rev().map(|n| 1.0 / n as f64).sum();
    // Σ_{k≥m} k x^k = x^m (m − (m−1)x) / (1−x)^2 at x = 1/2 gives (m+1)/2^{m−1}.
    let tail = n_param as f64 * (m as f64 + 1.0) / 2f64.powi(m as i32 - 1);
    Majorant {
        m,
        n_param,
        head,
        tail,
        total: head + tail,
    }
}
