//! Constructions of large sets whose induced subgraphs are far from universal:
//! thick edgeless sets, thick copies of a given target, and members of a
//! forcing family whose connected components are finite.

use serde::Serialize;

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::largeness::{pi02_force, thickness, weighted_sum, FamilyDescriptor, Run};
use crate::oracle::EdgeOracle;
use crate::par;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub start: u64,
    pub end: u64,
}

impl Interval {
    pub fn length(&self) -> u64 {
        self.end - self.start + 1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThickSet {
    pub blocks: usize,
    pub intervals: Vec<Interval>,
    pub union: VertexSet,
    pub thickness: Run,
    pub edge_count: u64,
    pub verified: bool,
    /// Present for thick copies: block vertices in order, mapped onto target
    /// vertices `0, 1, 2, ...`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Embedding>,
}

fn block_total(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Intervals `I_1, ..., I_m` with `|I_j| = j`, placed left to right, whose
/// union spans no edge.
///
/// `I_1 = {1}`. Block `j` is the leftmost window of length `j` past the
/// previous block with no edge inside and none back to earlier blocks.
pub fn construct_thick_edgeless(
    oracle: &EdgeOracle,
    m: usize,
    prefix_bound: u64,
) -> Result<ThickSet> {
    if m == 0 {
        return Err(Error::contract("blocks must be >= 1"));
    }
    let mut placed: Vec<u64> = Vec::with_capacity(block_total(m));
    let mut intervals = Vec::with_capacity(m);
    let mut next = 1u64;
    for j in 1..=m as u64 {
        let mut k = next;
        loop {
            if k + j - 1 > prefix_bound {
                return Err(Error::PrefixExhausted {
                    block: j as usize,
                    scan_position: k,
                });
            }
            // A conflict at x against earlier blocks rules out every window
            // through x; one against w in the window rules out every window
            // holding both.
            let skip_to = (k..k + j).find_map(|x| {
                if placed.iter().any(|&u| oracle.adjacent(u, x)) {
                    return Some(x + 1);
                }
                (k..x).find(|&w| oracle.adjacent(w, x)).map(|w| w + 1)
            });
            match skip_to {
                Some(next) => k = next,
                None => break,
            }
        }
        placed.extend(k..k + j);
        intervals.push(Interval {
            start: k,
            end: k + j - 1,
        });
        next = k + j;
    }
    let union = VertexSet::new(placed, prefix_bound)?;
    let edge_count = count_edges(oracle, union.elements());
    let thick = thickness(&union);
    let verified = edge_count == 0 && thick.length >= m as u64;
    if !verified {
        return Err(Error::Verification(format!(
            "thick edgeless set has {edge_count} edges and thickness {}",
            thick.length
        )));
    }
    Ok(ThickSet {
        blocks: m,
        intervals,
        union,
        thickness: thick,
        edge_count,
        verified,
        embedding: None,
    })
}

/// Like [`construct_thick_edgeless`], but the concatenated blocks must induce
/// the first `m(m+1)/2` vertices of `target`, in order.
pub fn construct_thick_copy(
    oracle: &EdgeOracle,
    target: &FiniteGraph,
    m: usize,
    prefix_bound: u64,
) -> Result<ThickSet> {
    if m == 0 {
        return Err(Error::contract("blocks must be >= 1"));
    }
    let total = block_total(m);
    if target.order() < total {
        return Err(Error::contract(format!(
            "target has {} vertices, {m} blocks need {total}",
            target.order()
        )));
    }
    let target = target.induced(&(0..total).collect::<Vec<_>>());
    let mut images: Vec<u64> = Vec::with_capacity(total);
    let mut intervals = Vec::with_capacity(m);
    let mut next = 1u64;
    for j in 1..=m as u64 {
        let offset = images.len();
        let mut k = next;
        loop {
            if k + j - 1 > prefix_bound {
                return Err(Error::PrefixExhausted {
                    block: j as usize,
                    scan_position: k,
                });
            }
            let fits = (0..j as usize).all(|i| {
                let x = k + i as u64;
                let p = offset + i;
                (0..offset).all(|q| oracle.adjacent(images[q], x) == target.has_edge(q, p))
                    && (0..i)
                        .all(|r| oracle.adjacent(k + r as u64, x) == target.has_edge(offset + r, p))
            });
            if fits {
                break;
            }
            k += 1;
        }
        images.extend(k..k + j);
        intervals.push(Interval {
            start: k,
            end: k + j - 1,
        });
        next = k + j;
    }
    let union = VertexSet::new(images.clone(), prefix_bound)?;
    let mut embedding = Embedding {
        target,
        images,
        steps: Vec::new(),
        verified: false,
    };
    embedding.verified = embedding.verify(oracle);
    let thick = thickness(&union);
    let verified = embedding.verified && thick.length >= m as u64;
    if !verified {
        return Err(Error::Verification(
            "thick copy does not induce the target".into(),
        ));
    }
    Ok(ThickSet {
        blocks: m,
        intervals,
        edge_count: count_edges(oracle, union.elements()),
        union,
        thickness: thick,
        verified,
        embedding: Some(embedding),
    })
}

fn count_edges(oracle: &EdgeOracle, v: &[u64]) -> u64 {
    let idx: Vec<usize> = (0..v.len()).collect();
    par::map(&idx, |&j| {
        (0..j).filter(|&i| oracle.adjacent(v[i], v[j])).count() as u64
    })
    .into_iter()
    .sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct ForcingBlock {
    pub level: usize,
    /// `k_{n-1}`: the block lives in `(k_{n-1}, k_n]`.
    pub lower: u64,
    pub upper: u64,
    /// Least `k'` at which the level was forced.
    pub forced_at: u64,
    /// Vertices of `(k_{n-1}, N]` with no neighbour in `[1, k_{n-1}]`.
    pub type_class_size: usize,
    pub elements: VertexSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelCertificate {
    pub level: usize,
    pub forced_k: u64,
    /// Recomputed from `A ∩ [1, k_n]` alone.
    pub revalidated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Pi02Member {
    pub family: FamilyDescriptor,
    pub levels: usize,
    pub blocks: Vec<ForcingBlock>,
    pub member: VertexSet,
    pub weighted_sum: f64,
    pub certificates: Vec<LevelCertificate>,
    pub cross_block_edges: u64,
    pub components: usize,
    pub max_component: usize,
    pub verified: bool,
}

/// Builds `A = F_1 ∪ ... ∪ F_{n_max}` level by level.
///
/// At level `n`, `T` is the set of vertices in `(k_{n-1}, N]` adjacent to
/// nothing in `[1, k_{n-1}]`. The level is forced on `T ∪ F_1 ∪ ... ∪ F_{n-1}`
/// at some least `k'`; then `k_n = max(k', k_{n-1} + 1)` and
/// `F_n = T ∩ (k_{n-1}, k_n]`. No block has an edge to an earlier one, so every
/// component of `A` stays inside one block.
pub fn construct_pi02_member(
    oracle: &EdgeOracle,
    family: &FamilyDescriptor,
    n_max: usize,
    prefix_bound: u64,
) -> Result<Pi02Member> {
    let mut blocks: Vec<ForcingBlock> = Vec::with_capacity(n_max);
    let mut member = VertexSet::empty(prefix_bound);
    let mut k_prev = 0u64;
    for level in 1..=n_max {
        let below: Vec<u64> = (1..=k_prev).collect();
        let range = k_prev + 1..prefix_bound + 1;
        let hits = par::map_range(range.clone(), |x| {
            below.iter().all(|&b| !oracle.adjacent(b, x))
        });
        let t: Vec<u64> = range
            .zip(hits)
            .filter(|&(_, keep)| keep)
            .map(|(x, _)| x)
            .collect();
        if t.is_empty() {
            return Err(Error::TypeClassEmpty {
                level,
                expected: (prefix_bound - k_prev) as f64 / 2f64.powi(k_prev.min(1023) as i32),
            });
        }
        let type_class_size = t.len();
        let t = VertexSet::new(t, prefix_bound)?;
        let extended = t.union(&member);
        let forced_at = pi02_force(family, level as u64, &extended, prefix_bound).ok_or(
            Error::ForcingFailed {
                level,
                bound: prefix_bound,
            },
        )?;
        let k_n = forced_at.max(k_prev + 1);
        let elements = t.window(k_prev, k_n);
        member = member.union(&elements);
        blocks.push(ForcingBlock {
            level,
            lower: k_prev,
            upper: k_n,
            forced_at,
            type_class_size,
            elements,
        });
        k_prev = k_n;
    }

    // Certificates from the finished set and raw oracle queries only.
    let certificates: Vec<LevelCertificate> = blocks
        .iter()
        .map(|b| {
            let prefix = member.truncate_to(b.upper);
            let again = pi02_force(family, b.level as u64, &prefix, b.upper);
            LevelCertificate {
                level: b.level,
                forced_k: b.forced_at,
                revalidated: again.is_some_and(|k| k <= b.upper),
            }
        })
        .collect();
    let block_of = |x: u64| blocks.iter().position(|b| b.lower < x && x <= b.upper);
    let elems = member.elements();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let idx: Vec<usize> = (0..elems.len()).collect();
    let edges: Vec<Vec<usize>> = par::map(&idx, |&j| {
        (0..j)
            .filter(|&i| oracle.adjacent(elems[i], elems[j]))
            .collect()
    });
    let mut cross_block_edges = 0u64;
    for (j, nbrs) in edges.iter().enumerate() {
        for &i in nbrs {
            if block_of(elems[i]) != block_of(elems[j]) {
                cross_block_edges += 1;
            }
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let mut comp_block: std::collections::HashMap<usize, (Option<usize>, usize, bool)> =
        Default::default();
    for (i, &x) in elems.iter().enumerate() {
        let root = find(&mut parent, i);
        let blk = block_of(x);
        let entry = comp_block.entry(root).or_insert((blk, 0, true));
        entry.1 += 1;
        entry.2 &= entry.0 == blk;
    }
    let confined = comp_block.values().all(|c| c.2);
    let max_component = comp_block.values().map(|c| c.1).max().unwrap_or(0);
    let sum = weighted_sum(&member, family.weight);
    let verified = cross_block_edges == 0 && confined && certificates.iter().all(|c| c.revalidated);
    if !verified {
        return Err(Error::Verification(format!(
            "forcing member: {cross_block_edges} cross-block edges, components confined: {confined}"
        )));
    }
    Ok(Pi02Member {
        family: family.clone(),
        levels: n_max,
        blocks,
        member,
        weighted_sum: sum,
        certificates,
        cross_block_edges,
        components: comp_block.len(),
        max_component,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_block_is_one() {
        for seed in 0..10 {
            let r = construct_thick_edgeless(&EdgeOracle::new(seed), 1, 10).unwrap();
            assert_eq!(r.intervals, vec![Interval { start: 1, end: 1 }]);
        }
    }

    #[test]
    fn second_block_is_leftmost_valid_pair() {
        for seed in 0..20 {
            let o = EdgeOracle::new(seed);
            let r = construct_thick_edgeless(&o, 2, 10_000).unwrap();
            let k = r.intervals[1].start;
            let ok = |k: u64| {
                k >= 2 && !o.adjacent(k, k + 1) && !o.adjacent(1, k) && !o.adjacent(1, k + 1)
            };
            assert!(ok(k));
            assert!((2..k).all(|c| !ok(c)));
        }
    }

    #[test]
    fn three_blocks_verify() {
        let o = EdgeOracle::new(7);
        let r = construct_thick_edgeless(&o, 3, 1_000_000).unwrap();
        let u = r.union.elements();
        assert_eq!(u.len(), 6);
        for j in 0..u.len() {
            for i in 0..j {
                assert!(!o.adjacent(u[i], u[j]));
            }
        }
        assert!(r.thickness.length >= 3);
    }

    #[test]
    fn small_prefix_is_exhausted() {
        let r = construct_thick_edgeless(&EdgeOracle::new(1), 4, 30);
        assert!(matches!(r, Err(Error::PrefixExhausted { .. })));
        assert!(construct_thick_edgeless(&EdgeOracle::new(1), 0, 30).is_err());
    }

    #[test]
    fn empty_target_copy_equals_edgeless() {
        for seed in 0..10 {
            let o = EdgeOracle::new(seed);
            let a = construct_thick_edgeless(&o, 3, 1_000_000).unwrap();
            let b = construct_thick_copy(&o, &FiniteGraph::empty(6), 3, 1_000_000).unwrap();
            assert_eq!(a.intervals, b.intervals);
        }
    }

    #[test]
    fn triangle_copy() {
        let o = EdgeOracle::new(11);
        let r = construct_thick_copy(&o, &FiniteGraph::complete(3), 2, 100_000).unwrap();
        let u = r.union.elements();
        assert_eq!(u[0], 1);
        assert!(o.adjacent(u[0], u[1]) && o.adjacent(u[0], u[2]) && o.adjacent(u[1], u[2]));
        assert!(construct_thick_copy(&o, &FiniteGraph::complete(2), 2, 100).is_err());
    }

    #[test]
    fn forcing_levels() {
        let o = EdgeOracle::new(3);
        let fam = FamilyDescriptor::substantial();
        let zero = construct_pi02_member(&o, &fam, 0, 1000).unwrap();
        assert!(zero.member.is_empty());
        let one = construct_pi02_member(&o, &fam, 1, 1000).unwrap();
        assert_eq!(one.member.elements(), &[1, 2]);
        assert!(one.weighted_sum > 1.0);
        let two = construct_pi02_member(&o, &fam, 2, 1_000_000).unwrap();
        assert!(two.weighted_sum > 2.0);
        assert_eq!(two.cross_block_edges, 0);
        assert!(two.max_component <= two.blocks.iter().map(|b| b.elements.len()).max().unwrap());
    }
}
