//! Canonical forms for small graphs by permutation scan, and enumeration of
//! isomorphism classes.
//!
//! The form is the lexicographically least upper-triangle bitstring, read
//! column by column (`(0,1), (0,2), (1,2), (0,3), ...`, the graph6 order), over
//! all relabelings. Because columns are fixed one vertex at a time, a partial
//! permutation already fixes a prefix of the bitstring and the scan can prune
//! any branch whose prefix exceeds the best found so far.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::par;

pub const CANON_MAX_ORDER: usize = 8;
pub const ENUMERATE_MAX_ORDER: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: usize,
    /// Bitstring packed MSB-first into the low `C(order, 2)` bits.
    code: u64,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn bit_len(&self) -> usize {
        self.order * self.order.saturating_sub(1) / 2
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.bit_len();
        write!(f, "{}:", self.order)?;
        for k in 0..len {
            f.write_str(if self.code >> (len - 1 - k) & 1 == 1 {
                "1"
            } else {
                "0"
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Scan<'a> {
    g: &'a FiniteGraph,
    n: usize,
    total_bits: usize,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u64, Vec<usize>)>,
}

impl Scan<'_> {
    fn run(&mut self, depth: usize, prefix: u64, bits: usize, strictly_less: bool) {
        if depth == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| prefix < *b) {
                self.best = Some((prefix, self.perm.clone()));
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            let mut p = prefix;
            for i in 0..depth {
                p = p << 1 | self.g.has_edge(self.perm[i], v) as u64;
            }
            let nbits = bits + depth;
            let mut less = strictly_less;
            if !less {
                if let Some((best, _)) = &self.best {
                    let best_prefix = best >> (self.total_bits - nbits);
                    if p > best_prefix {
                        continue;
                    }
                    less = p < best_prefix;
                }
            }
            self.used[v] = true;
            self.perm.push(v);
            self.run(depth + 1, p, nbits, less);
            self.perm.pop();
            self.used[v] = false;
        }
    }
}

/// Canonical form plus a relabeling achieving it (new vertex `i` = old `perm[i]`).
pub fn canonical_labeling(g: &FiniteGraph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.order();
    if n > CANON_MAX_ORDER {
        return Err(Error::CanonBound {
            order: n,
            max: CANON_MAX_ORDER,
        });
    }
    let mut scan = Scan {
        g,
        n,
        total_bits: n * n.saturating_sub(1) / 2,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    scan.run(0, 0, 0, false);
    let (code, perm) = scan.best.expect("at least one permutation");
    Ok((CanonicalForm { order: n, code }, perm))
}

pub fn canonical_form(g: &FiniteGraph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(c, _)| c)
}

/// The graph whose column-major bitstring is the canonical form.
pub fn canonical_graph(g: &FiniteGraph) -> Result<FiniteGraph> {
    let (_, perm) = canonical_labeling(g)?;
    Ok(g.permuted(&perm))
}

/// One representative per isomorphism class on `k` vertices, sorted by
/// canonical form. Classes on `k` vertices are grown from those on `k - 1`
/// by attaching a new vertex to every possible neighbourhood.
pub fn enumerate_unlabeled(k: usize) -> Result<Vec<FiniteGraph>> {
    if !(1..=ENUMERATE_MAX_ORDER).contains(&k) {
        return Err(Error::OutOfRange {
            what: "enumeration order",
            value: k as u64,
            allowed: format!("1..={ENUMERATE_MAX_ORDER}"),
        });
    }
    let mut level = vec![FiniteGraph::empty(1)];
    for order in 2..=k {
        let extended: Vec<Vec<(CanonicalForm, FiniteGraph)>> = par::map(&level, |g| {
            (0u64..1 << (order - 1))
                .map(|nbhd| {
                    let h = FiniteGraph::from_fn(order, |i, j| {
                        if j == order - 1 {
                            nbhd >> i & 1 == 1
                        } else {
                            g.has_edge(i, j)
                        }
                    });
                    let (c, perm) = canonical_labeling(&h).expect("order within bound");
                    (c, h.permuted(&perm))
                })
                .collect()
        });
        let classes: BTreeMap<CanonicalForm, FiniteGraph> =
            extended.into_iter().flatten().collect();
        level = classes.into_values().collect();
    }
    Ok(level)
}
