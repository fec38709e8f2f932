//! Greedy type-based embedding of a finite target into a host set.
//!
//! Target vertices are placed in order. At step `n` the required type over the
//! images placed so far is read off the target; among host vertices of that
//! type, the first `candidate_cap` are scored by the smallest type class they
//! would leave behind, and the best one is placed. Keeping every class
//! populated is what lets later steps find their required types.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::oracle::EdgeOracle;
use crate::par;
use crate::types::{TypeMask, TypeSpec};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Serialize)]
pub struct EmbedConfig {
    pub candidate_cap: usize,
    /// How many of the remaining host vertices are used to count type
    /// classes; `None` means all of them.
    pub score_horizon: Option<usize>,
    /// No backtracking when set; otherwise a dead end retries the previous
    /// step's next-best candidates (up to `candidate_cap` of them).
    pub fail_fast: bool,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            candidate_cap: 64,
            score_horizon: None,
            fail_fast: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbedStep {
    pub index: usize,
    pub required_type: TypeMask,
    pub chosen: u64,
    pub score: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Embedding {
    #[serde(skip)]
    pub target: FiniteGraph,
    pub images: Vec<u64>,
    pub steps: Vec<EmbedStep>,
    pub verified: bool,
}

impl Embedding {
    /// Re-queries every pair of placed images against the target.
    pub fn verify(&self, oracle: &EdgeOracle) -> bool {
        let a = &self.images;
        let mut sorted = a.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        (0..a.len())
            .all(|j| (0..j).all(|i| oracle.adjacent(a[i], a[j]) == self.target.has_edge(i, j)))
    }

    pub fn verify_in_host(&self, oracle: &EdgeOracle, host: &VertexSet) -> bool {
        self.images.iter().all(|&x| host.contains(x)) && self.verify(oracle)
    }
}

/// The type over `placed` (in placement order) that target vertex
/// `next_index` (1-based) must have.
pub fn required_type(target: &FiniteGraph, placed: &[u64], next_index: usize) -> Result<TypeSpec> {
    if next_index != placed.len() + 1 {
        return Err(Error::contract(format!(
            "next index {next_index} with {} vertices placed",
            placed.len()
        )));
    }
    if next_index > target.order() {
        return Err(Error::contract(format!(
            "target has only {} vertices",
            target.order()
        )));
    }
    let v = next_index - 1;
    TypeSpec::new(
        placed.to_vec(),
        TypeMask::from_bits((0..v).map(|i| target.has_edge(v, i))),
    )
}

/// Remaining host vertices grouped by their type over the placed images.
/// Classes are refined in place each time a vertex is placed.
#[derive(Clone)]
struct Pool {
    vertices: Vec<u64>,
    class: Vec<u32>,
    class_masks: Vec<TypeMask>,
}

impl Pool {
    fn new(host: &VertexSet) -> Self {
        Pool {
            vertices: host.elements().to_vec(),
            class: vec![0; host.len()],
            class_masks: vec![TypeMask::default()],
        }
    }

    fn class_of_mask(&self, mask: &TypeMask) -> Option<u32> {
        self.class_masks
            .iter()
            .position(|m| m == mask)
            .map(|c| c as u32)
    }

    /// Removes `chosen` (when present) and splits every class by adjacency to it.
    fn place(&mut self, oracle: &EdgeOracle, chosen: u64) {
        if let Ok(pos) = self.vertices.binary_search(&chosen) {
            self.vertices.remove(pos);
            self.class.remove(pos);
        }
        let bits = par::map(&self.vertices, |&x| oracle.adjacent(chosen, x));
        let mut remap = vec![[u32::MAX; 2]; self.class_masks.len()];
        let mut masks = Vec::new();
        for (c, &b) in self.class.iter_mut().zip(&bits) {
            let slot = &mut remap[*c as usize][b as usize];
            if *slot == u32::MAX {
                let mut m = self.class_masks[*c as usize].clone();
                m.push(b);
                *slot = masks.len() as u32;
                masks.push(m);
            }
            *c = *slot;
        }
        self.class_masks = masks;
    }
}

fn score_in_pool(
    oracle: &EdgeOracle,
    pool: &Pool,
    placed_len: usize,
    m: u64,
    horizon: usize,
) -> u64 {
    let types_after = placed_len + 1;
    if types_after >= 63 {
        return 0;
    }
    let needed = 1u64 << types_after;
    if (pool.class_masks.len() as u64) * 2 < needed {
        return 0;
    }
    let mut counts = vec![0u64; pool.class_masks.len() * 2];
    for (&x, &c) in pool.vertices.iter().zip(&pool.class).take(horizon) {
        if x != m {
            counts[2 * c as usize + oracle.adjacent(m, x) as usize] += 1;
        }
    }
    let nonempty = counts.iter().filter(|&&k| k > 0).count() as u64;
    if nonempty < needed {
        0
    } else {
        counts.into_iter().min().unwrap_or(0)
    }
}

/// Minimum, over all `2^(|placed|+1)` types over `placed ∪ {m}`, of the number
/// of remaining host vertices of that type (within `horizon` of them).
pub fn score_candidate(
    oracle: &EdgeOracle,
    host: &VertexSet,
    placed: &[u64],
    m: u64,
    horizon: Option<usize>,
) -> u64 {
    let mut pool = Pool::new(host);
    for &a in placed {
        pool.place(oracle, a);
    }
    let horizon = horizon.unwrap_or(usize::MAX);
    score_in_pool(oracle, &pool, placed.len(), m, horizon)
}

/// Candidates of the required class ranked by score (descending), ties to the
/// smallest vertex.
fn ranked_candidates(
    oracle: &EdgeOracle,
    pool: &Pool,
    placed_len: usize,
    required: &TypeMask,
    cfg: &EmbedConfig,
) -> Vec<(u64, u64)> {
    let Some(class) = pool.class_of_mask(required) else {
        return Vec::new();
    };
    let candidates: Vec<u64> = pool
        .vertices
        .iter()
        .zip(&pool.class)
        .filter(|(_, &c)| c == class)
        .map(|(&x, _)| x)
        .take(cfg.candidate_cap)
        .collect();
    let horizon = cfg.score_horizon.unwrap_or(usize::MAX);
    let scores = par::map(&candidates, |&m| {
        score_in_pool(oracle, pool, placed_len, m, horizon)
    });
    let mut ranked: Vec<(u64, u64)> = candidates.into_iter().zip(scores).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

/// Embeds `target` into `host` as an induced subgraph, or reports the step at
/// which the required type class ran dry.
pub fn embed_target(
    oracle: &EdgeOracle,
    target: &FiniteGraph,
    host: &VertexSet,
    cfg: &EmbedConfig,
) -> Result<Embedding> {
    if cfg.candidate_cap == 0 {
        return Err(Error::contract("candidate_cap must be >= 1"));
    }
    let n = target.order();
    let mut pool = Pool::new(host);
    let mut images: Vec<u64> = Vec::with_capacity(n);
    let mut steps: Vec<EmbedStep> = Vec::with_capacity(n);
    // Per step: the pool before placement and the ranked alternatives left.
    let mut history: Vec<(Pool, Vec<(u64, u64)>)> = Vec::new();
    let mut retries_left = vec![cfg.candidate_cap; n];

    while images.len() < n {
        let step = images.len() + 1;
        let required = required_type(target, &images, step)?;
        let mut ranked = ranked_candidates(oracle, &pool, images.len(), required.mask(), cfg);
        if ranked.is_empty() {
            let prev = step.checked_sub(2);
            let retry = match prev {
                Some(p) if !cfg.fail_fast && retries_left[p] > 0 => {
                    history.last().is_some_and(|(_, alts)| !alts.is_empty())
                }
                _ => false,
            };
            if !retry {
                return Err(Error::DeadEnd {
                    step,
                    required,
                    remaining: pool.vertices.len(),
                });
            }
            // Depth-1 backtrack: swap the previous image for its next-best rival.
            let p = prev.expect("retry implies a previous step");
            retries_left[p] -= 1;
            let (before, mut alternatives) = history.pop().expect("checked above");
            images.pop();
            steps.pop();
            let (chosen, score) = alternatives.remove(0);
            let prev_required = required_type(target, &images, step - 1)?;
            pool = before.clone();
            history.push((before, alternatives));
            pool.place(oracle, chosen);
            images.push(chosen);
            steps.push(EmbedStep {
                index: step - 1,
                required_type: prev_required.mask().clone(),
                chosen,
                score,
            });
            continue;
        }
        let (chosen, score) = ranked.remove(0);
        if !cfg.fail_fast {
            history.push((pool.clone(), ranked));
        }
        pool.place(oracle, chosen);
        images.push(chosen);
        steps.push(EmbedStep {
            index: step,
            required_type: required.mask().clone(),
            chosen,
            score,
        });
    }

    let mut emb = Embedding {
        target: target.clone(),
        images,
        steps,
        verified: false,
    };
    if !emb.verify_in_host(oracle, host) {
        return Err(Error::Verification(
            "embedding failed pairwise re-check".into(),
        ));
    }
    emb.verified = true;
    Ok(emb)
}
