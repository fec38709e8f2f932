//! Backtracking search for induced copies of a small pattern.
//!
//! Pattern vertices are mapped in descending-degree order. A host vertex is a
//! candidate for the next pattern vertex only if its adjacency to every
//! already-mapped image matches the pattern, i.e. it has the required type
//! over the partial image.

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::oracle::EdgeOracle;

/// Pattern vertices by descending degree, ties by index.
pub fn degree_order(pattern: &FiniteGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pattern.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
    order
}

/// A graph on at most 64 vertices as one adjacency word per vertex.
#[derive(Debug, Clone)]
pub struct MaskGraph {
    adj: Vec<u64>,
}

impl MaskGraph {
    pub fn from_graph(g: &FiniteGraph) -> Self {
        assert!(g.order() <= 64);
        MaskGraph {
            adj: (0..g.order()).map(|i| g.row_mask(i)).collect(),
        }
    }

    pub fn from_oracle(oracle: &EdgeOracle, vertices: &[u64]) -> Self {
        assert!(vertices.len() <= 64);
        let mut adj = vec![0u64; vertices.len()];
        for j in 1..vertices.len() {
            for i in 0..j {
                if oracle.adjacent(vertices[i], vertices[j]) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        MaskGraph { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.adj[i]
    }

    pub fn all(&self) -> u64 {
        if self.adj.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.adj.len()) - 1
        }
    }
}

/// Finds an induced copy of `pattern` among the vertices in `allowed`.
/// With `must`, the copy has to use that host vertex. Returns the image of
/// each pattern vertex.
pub fn find_induced_mask(
    host: &MaskGraph,
    allowed: u64,
    pattern: &FiniteGraph,
    must: Option<usize>,
) -> Option<Vec<usize>> {
    let k = pattern.order();
    if k == 0 {
        return Some(Vec::new());
    }
    let base_order = degree_order(pattern);
    let mut image = vec![usize::MAX; k];
    match must {
        None => {
            if descend(host, allowed, pattern, &base_order, 0, 0, &mut image) {
                return Some(image);
            }
        }
        Some(v) => {
            if allowed >> v & 1 == 0 {
                return None;
            }
            // Try each pattern vertex as the preimage of `v`.
            for &p in &base_order {
                let mut order = vec![p];
                order.extend(base_order.iter().copied().filter(|&q| q != p));
                image[p] = v;
                if descend(host, allowed, pattern, &order, 1, 1 << v, &mut image) {
                    return Some(image);
                }
            }
        }
    }
    None
}

fn descend(
    host: &MaskGraph,
    allowed: u64,
    pattern: &FiniteGraph,
    order: &[usize],
    depth: usize,
    used: u64,
    image: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let mut cand = allowed & !used;
    for &q in &order[..depth] {
        let row = host.row(image[q]);
        cand &= if pattern.has_edge(p, q) { row } else { !row };
    }
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        image[p] = v;
        if descend(
            host,
            allowed,
            pattern,
            order,
            depth + 1,
            used | 1 << v,
            image,
        ) {
            return true;
        }
    }
    false
}

/// Induced-copy search over arbitrary host vertices, querying the oracle
/// directly. Candidates are tried in ascending host order, so the first
/// witness found is deterministic. Each consistent assignment costs one node
/// of `budget`.
pub fn find_induced_oracle(
    oracle: &EdgeOracle,
    host: &[u64],
    pattern: &FiniteGraph,
    must: Option<u64>,
    budget: u64,
) -> Result<Option<Vec<u64>>> {
    let k = pattern.order();
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let base_order = degree_order(pattern);
    let mut state = OracleSearch {
        oracle,
        host,
        pattern,
        image: vec![0; k],
        used: Vec::with_capacity(k),
        nodes: 0,
        budget,
    };
    match must {
        None => {
            if state.descend(&base_order, 0)? {
                return Ok(Some(state.image));
            }
        }
        Some(v) => {
            for &p in &base_order {
                let mut order = vec![p];
                order.extend(base_order.iter().copied().filter(|&q| q != p));
                state.image[p] = v;
                state.used.clear();
                state.used.push(v);
                if state.descend(&order, 1)? {
                    return Ok(Some(state.image));
                }
            }
        }
    }
    Ok(None)
}

struct OracleSearch<'a> {
    oracle: &'a EdgeOracle,
    host: &'a [u64],
    pattern: &'a FiniteGraph,
    image: Vec<u64>,
    used: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl OracleSearch<'_> {
    fn descend(&mut self, order: &[usize], depth: usize) -> Result<bool> {
        if depth == order.len() {
            return Ok(true);
        }
        let p = order[depth];
        for &x in self.host {
            if self.used.contains(&x) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&q| self.oracle.adjacent(x, self.image[q]) == self.pattern.has_edge(p, q));
            if !consistent {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted {
                    nodes: self.nodes - 1,
                });
            }
            self.image[p] = x;
            self.used.push(x);
            if self.descend(order, depth + 1)? {
                return Ok(true);
            }
            self.used.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_path_in_path() {
        let host = MaskGraph::from_graph(&FiniteGraph::path(5));
        let img = find_induced_mask(&host, host.all(), &FiniteGraph::path(3), None).unwrap();
        let g = FiniteGraph::path(5);
        assert!(
            g.has_edge(img[0], img[1]) && g.has_edge(img[1], img[2]) && !g.has_edge(img[0], img[2])
        );
        assert!(find_induced_mask(&host, host.all(), &FiniteGraph::complete(3), None).is_none());
    }

    #[test]
    fn must_include_is_respected() {
        // Triangle {0,1,2} plus pendant 3 on 2.
        let g = FiniteGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let host = MaskGraph::from_graph(&g);
        assert!(find_induced_mask(&host, host.all(), &FiniteGraph::complete(3), Some(3)).is_none());
        let img = find_induced_mask(&host, host.all(), &FiniteGraph::complete(2), Some(3)).unwrap();
        assert!(img.contains(&3));
    }

    #[test]
    fn oracle_search_budget() {
        let o = EdgeOracle::new(1);
        let host: Vec<u64> = (1..=40).collect();
        let r = find_induced_oracle(&o, &host, &FiniteGraph::complete(3), None, 1);
        assert!(matches!(r, Err(Error::BudgetExhausted { nodes: 1 })));
        let w = find_induced_oracle(&o, &host, &FiniteGraph::complete(3), None, 1_000_000)
            .unwrap()
            .unwrap();
        assert!(o.adjacent(w[0], w[1]) && o.adjacent(w[1], w[2]) && o.adjacent(w[0], w[2]));
    }
}
