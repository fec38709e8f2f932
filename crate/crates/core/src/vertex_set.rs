//! Finite sets of positive integers materialized inside a prefix `[1, N]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A strictly increasing list of positive integers, all at most `prefix_bound`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSet {
    elements: Vec<u64>,
    prefix_bound: u64,
}

impl VertexSet {
    /// Validates `elements` (strictly increasing, in `[1, prefix_bound]`).
    pub fn new(elements: Vec<u64>, prefix_bound: u64) -> Result<Self> {
        if let Some(&first) = elements.first() {
            if first == 0 {
                return Err(Error::InvalidSet("elements must be >= 1".into()));
            }
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(format!(
                "not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some(&last) = elements.last() {
            if last > prefix_bound {
                return Err(Error::InvalidSet(format!(
                    "element {last} exceeds prefix bound {prefix_bound}"
                )));
            }
        }
        Ok(VertexSet {
            elements,
            prefix_bound,
        })
    }

    /// Sorts and dedups arbitrary input. The bound defaults to the maximum.
    pub fn from_unsorted(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let bound = elements.last().copied().unwrap_or(0);
        Self::new(elements, bound)
    }

    pub fn empty(prefix_bound: u64) -> Self {
        VertexSet {
            elements: Vec::new(),
            prefix_bound,
        }
    }

    /// The interval `[a, b]`; empty when `a > b`.
    pub fn interval(a: u64, b: u64) -> Self {
        let a = a.max(1);
        VertexSet {
            elements: (a..=b).collect(),
            prefix_bound: b.max(a.saturating_sub(1)),
        }
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u64>, prefix_bound: u64) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.first().is_none_or(|&x| x >= 1));
        let prefix_bound = prefix_bound.max(elements_last(&elements));
        VertexSet {
            elements,
            prefix_bound,
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<u64> {
        self.elements
    }

    pub fn prefix_bound(&self) -> u64 {
        self.prefix_bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.elements.iter().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    /// `self ∩ [1, k]`, keeping the prefix bound at `k`.
    pub fn truncate_to(&self, k: u64) -> VertexSet {
        let end = self.elements.partition_point(|&x| x <= k);
        VertexSet {
            elements: self.elements[..end].to_vec(),
            prefix_bound: k,
        }
    }

    /// `self ∩ (lo, hi]`.
    pub fn window(&self, lo: u64, hi: u64) -> VertexSet {
        let start = self.elements.partition_point(|&x| x <= lo);
        let end = self.elements.partition_point(|&x| x <= hi);
        VertexSet {
            elements: self.elements[start..end.max(start)].to_vec(),
            prefix_bound: hi,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.elements, &other.elements);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        VertexSet {
            elements: out,
            prefix_bound: self.prefix_bound.max(other.prefix_bound),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            elements: self.iter().filter(|&x| !other.contains(x)).collect(),
            prefix_bound: self.prefix_bound,
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// Compact interval notation, e.g. `1-4,7,9-12`. Empty sets print as ``.
    pub fn to_notation(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        let e = &self.elements;
        while i < e.len() {
            let mut j = i;
            while j + 1 < e.len() && e[j + 1] == e[j] + 1 {
                j += 1;
            }
            parts.push(if i == j {
                e[i].to_string()
            } else {
                format!("{}-{}", e[i], e[j])
            });
            i = j + 1;
        }
        parts.join(",")
    }

    /// Newline-separated decimal listing.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for x in &self.elements {
            s.push_str(&x.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses either newline-separated integers or interval notation
    /// (`a-b,c,d-e`, whitespace and newlines also act as separators).
    pub fn parse_listing(text: &str, prefix_bound: Option<u64>) -> Result<Self> {
        let mut out = Vec::new();
        let mut offset = 0;
        for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
            let tok = token.trim();
            if !tok.is_empty() {
                let bad = |m: &str| Error::parse(offset, format!("{m}: {tok:?}"));
                match tok.split_once('-') {
                    Some((a, b)) => {
                        let a: u64 = a.parse().map_err(|_| bad("bad interval start"))?;
                        let b: u64 = b.parse().map_err(|_| bad("bad interval end"))?;
                        if a == 0 || a > b {
                            return Err(bad("empty or zero-based interval"));
                        }
                        out.extend(a..=b);
                    }
                    None => {
                        let x: u64 = tok.parse().map_err(|_| bad("bad integer"))?;
                        if x == 0 {
                            return Err(bad("vertex 0"));
                        }
                        out.push(x);
                    }
                }
            }
            offset += token.len() + 1;
        }
        out.sort_unstable();
        out.dedup();
        let bound = prefix_bound.unwrap_or_else(|| out.last().copied().unwrap_or(0));
        Self::new(out, bound)
    }
}

fn elements_last(e: &[u64]) -> u64 {
    e.last().copied().unwrap_or(0)
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}≤{}", self.to_notation(), self.prefix_bound)
    }
}

impl FromIterator<u64> for VertexSet {
    /// Collects, sorts and dedups; panics on vertex 0.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect()).expect("vertex 0 in set")
    }
}

/// Host-set notation resolved against a prefix bound and a run seed:
/// `all`, `even`, `odd`, `a-b` and comma unions, `file:PATH`, `ap:a,d`, `mup:p`.
pub fn parse_host(spec: &str, prefix_bound: u64, seed: u64) -> Result<VertexSet> {
    let spec = spec.trim();
    let n = prefix_bound;
    let set = match spec {
        "all" => VertexSet::interval(1, n),
        "even" => VertexSet::from_sorted_unchecked((1..=n / 2).map(|i| 2 * i).collect(), n),
        "odd" => {
            VertexSet::from_sorted_unchecked((0..n.div_ceil(2)).map(|i| 2 * i + 1).collect(), n)
        }
        _ => {
            if let Some(path) = spec.strip_prefix("file:") {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.to_string(),
                    source,
                })?;
                let s = VertexSet::parse_listing(&text, None)?;
                let bound = n.max(s.prefix_bound);
                VertexSet::new(s.into_elements(), bound)?
            } else if let Some(rest) = spec.strip_prefix("ap:") {
                let (a, d) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::parse(3, "expected ap:a,d"))?;
                let a: u64 = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(3, "bad ap start"))?;
                let d: u64 = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(3, "bad ap difference"))?;
                if a == 0 || d == 0 {
                    return Err(Error::parse(3, "ap start and difference must be >= 1"));
                }
                let elems = (0..).map(|i| a + i * d).take_while(|&x| x <= n).collect();
                VertexSet::from_sorted_unchecked(elems, n)
            } else if let Some(p) = spec.strip_prefix("mup:") {
                let p: f64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(4, "bad probability"))?;
                crate::mc::sample_mu_p(p, n, seed)?
            } else {
                let s = VertexSet::parse_listing(spec, Some(n));
                match s {
                    Ok(s) => s,
                    // Explicit intervals may reach past the default bound.
                    Err(_) => VertexSet::parse_listing(spec, None)?,
                }
            }
        }
    };
    Ok(set)
}
