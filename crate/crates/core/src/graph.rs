//! Finite simple graphs stored as symmetric adjacency bit-matrices.

use std::fmt;

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
}

impl FiniteGraph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        let words = order.div_ceil(64).max(1);
        FiniteGraph {
            order,
            words,
            rows: vec![0; words * order],
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Self::empty(order);
        for i in 0..order {
            for j in (i + 1)..order {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    pub fn path(order: usize) -> Self {
        let mut g = Self::empty(order);
        for i in 1..order {
            g.set_edge(i - 1, i, true);
        }
        g
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = Self::path(order);
        if order >= 3 {
            g.set_edge(0, order - 1, true);
        }
        g
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Self {
        let mut g = Self::empty(10);
        for i in 0..5 {
            g.set_edge(i, (i + 1) % 5, true);
            g.set_edge(5 + i, 5 + (i + 2) % 5, true);
            g.set_edge(i, 5 + i, true);
        }
        g
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(order);
        for &(u, v) in edges {
            if u >= order || v >= order || u == v {
                return Err(Error::contract(format!(
                    "edge ({u},{v}) invalid for order {order}"
                )));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate on index pairs `i < j`.
    pub fn from_fn(order: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(order);
        for j in 1..order {
            for i in 0..j {
                if adjacent(i, j) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Parses an edge list: the first non-comment line holds the order, every
    /// further line a 0-based pair `u v`. `#` starts a comment.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut order = None;
        let mut edges = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let body = line.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                let nums: Vec<&str> = body.split_whitespace().collect();
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::parse(offset, format!("bad integer {s:?}")))
                };
                match (order, nums.as_slice()) {
                    (None, [n]) => order = Some(parse(n)?),
                    (Some(_), [u, v]) => edges.push((parse(u)?, parse(v)?)),
                    _ => return Err(Error::parse(offset, format!("unexpected line {body:?}"))),
                }
            }
            offset += line.len() + 1;
        }
        let order = order.ok_or_else(|| Error::parse(0, "missing vertex count"))?;
        Self::from_edges(order, &edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.order && j < self.order);
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert!(i < self.order && j < self.order, "vertex out of range");
        assert_ne!(i, j, "simple graphs have no loops");
        for (a, b) in [(i, j), (j, i)] {
            let w = &mut self.rows[a * self.words + b / 64];
            if present {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    /// Row `i` as a single word; only valid for graphs of order ≤ 64.
    #[inline]
    pub fn row_mask(&self, i: usize) -> u64 {
        debug_assert!(self.order <= 64);
        self.rows[i * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i * self.words..(i + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |i| {
            ((i + 1)..self.order).filter_map(move |j| self.has_edge(i, j).then_some((i, j)))
        })
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.order, |i, j| !self.has_edge(i, j))
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |i, j| {
            self.has_edge(vertices[i], vertices[j])
        })
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        self.induced(perm)
    }

    /// Checks symmetry and an empty diagonal.
    pub fn is_well_formed(&self) -> bool {
        (0..self.order).all(|i| {
            !self.has_edge(i, i)
                && (0..self.order).all(|j| self.has_edge(i, j) == self.has_edge(j, i))
        })
    }
}

impl fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGraph({}; ", self.order)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Resolves the named graphs accepted on the command line:
/// `K<n>`, `C<n>`, `P<n>`, `E<n>` / `empty:<n>`, `petersen`.
pub fn named_graph(name: &str) -> Option<FiniteGraph> {
    let lower = name.to_ascii_lowercase();
    if lower == "petersen" {
        return Some(FiniteGraph::petersen());
    }
    if let Some(n) = lower.strip_prefix("empty:") {
        return n.parse().ok().map(FiniteGraph::empty);
    }
    let (kind, n) = lower.split_at(1.min(lower.len()));
    let n: usize = n.parse().ok()?;
    match kind {
        "k" => Some(FiniteGraph::complete(n)),
        "c" if n >= 3 => Some(FiniteGraph::cycle(n)),
        "p" => Some(FiniteGraph::path(n)),
        "e" => Some(FiniteGraph::empty(n)),
        _ => None,
    }
}
