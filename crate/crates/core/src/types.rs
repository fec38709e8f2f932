//! Types over finite vertex lists: how a vertex connects to each element of a
//! base `F`. There are `2^|F|` of them and they partition every pool disjoint
//! from `F`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::oracle::EdgeOracle;
use crate::par;
use crate::vertex_set::VertexSet;

/// Fixed-length bitstring; bit `i` answers "connects to the `i`-th base vertex".
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TypeMask {
    len: usize,
    words: Vec<u64>,
}

impl TypeMask {
    pub fn zeros(len: usize) -> Self {
        TypeMask {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut m = Self::zeros(len);
        for i in 0..len {
            m.set(i, true);
        }
        m
    }

    /// Low `len` bits of `value`, bit `i` of the integer becoming bit `i` of the mask.
    pub fn from_index(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut m = Self::zeros(len);
        if len > 0 {
            m.words[0] = if len == 64 {
                value
            } else {
                value & ((1 << len) - 1)
            };
        }
        m
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut m = TypeMask::default();
        for b in bits {
            m.push(b);
        }
        m
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let mut m = TypeMask::default();
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => m.push(false),
                '1' => m.push(true),
                _ => return Err(Error::parse(i, format!("mask character {c:?}"))),
            }
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    /// Integer index of the mask when it fits in a word.
    pub fn index(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words.first().copied().unwrap_or(0))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Display for TypeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TypeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeMask({self})")
    }
}

impl Serialize for TypeMask {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A type over an ordered base list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TypeSpec {
    base: Vec<u64>,
    mask: TypeMask,
}

impl TypeSpec {
    pub fn new(base: Vec<u64>, mask: TypeMask) -> Result<Self> {
        if base.len() != mask.len() {
            return Err(Error::contract(format!(
                "mask length {} differs from base size {}",
                mask.len(),
                base.len()
            )));
        }
        if base.contains(&0) {
            return Err(Error::contract("base vertices are numbered from 1"));
        }
        let mut sorted = base.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::contract("base vertices must be distinct"));
        }
        Ok(TypeSpec { base, mask })
    }

    /// The unique type over the empty base.
    pub fn trivial() -> Self {
        TypeSpec {
            base: Vec::new(),
            mask: TypeMask::default(),
        }
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn mask(&self) -> &TypeMask {
        &self.mask
    }

    /// Whether `m` (assumed outside the base) has this type. Stops at the
    /// first disagreeing base vertex.
    #[inline]
    pub fn matches(&self, oracle: &EdgeOracle, m: u64) -> bool {
        self.base
            .iter()
            .enumerate()
            .all(|(i, &b)| oracle.adjacent(m, b) == self.mask.get(i))
    }
}

/// The type of `m` over `base` (in base order).
pub fn type_of(oracle: &EdgeOracle, m: u64, base: &[u64]) -> Result<TypeSpec> {
    if base.contains(&m) {
        return Err(Error::VertexInsideBase { vertex: m });
    }
    if m == 0 {
        return Err(Error::contract("vertices are numbered from 1"));
    }
    let mask = TypeMask::from_bits(base.iter().map(|&b| oracle.adjacent(m, b)));
    TypeSpec::new(base.to_vec(), mask)
}

/// Members of `pool` (minus the base) having type `t`, in pool order.
pub fn vertices_of_type(oracle: &EdgeOracle, t: &TypeSpec, pool: &VertexSet) -> VertexSet {
    let base = t.base();
    let kept = par::filter(pool.elements(), |&m| {
        !base.contains(&m) && t.matches(oracle, m)
    });
    VertexSet::new(kept, pool.prefix_bound()).expect("subset of a valid set")
}

/// Integer index (bit `i` = adjacent to `base[i]`) of `m`'s type; `base.len() <= 64`.
#[inline]
pub(crate) fn type_index(oracle: &EdgeOracle, m: u64, base: &[u64]) -> u64 {
    base.iter().enumerate().fold(0u64, |acc, (i, &b)| {
        acc | (oracle.adjacent(m, b) as u64) << i
    })
}

/// Splits `pool − base` into the `2^|base|` type classes, indexed by mask integer.
pub fn type_partition(
    oracle: &EdgeOracle,
    base: &[u64],
    pool: &VertexSet,
) -> Result<Vec<VertexSet>> {
    if base.len() > 20 {
        return Err(Error::OutOfRange {
            what: "base size for a full partition",
            value: base.len() as u64,
            allowed: "<= 20".into(),
        });
    }
    let members: Vec<u64> = pool.iter().filter(|m| !base.contains(m)).collect();
    let indices = par::map(&members, |&m| type_index(oracle, m, base));
    let mut classes = vec![Vec::new(); 1 << base.len()];
    for (&m, &i) in members.iter().zip(&indices) {
        classes[i as usize].push(m);
    }
    Ok(classes
        .into_iter()
        .map(|c| VertexSet::new(c, pool.prefix_bound()).expect("subset of a valid set"))
        .collect())
}

/// Least witness per type over `base`, searched in `[1, bound] − base`.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub base: Vec<u64>,
    pub bound: u64,
    /// Indexed by mask integer; `None` means no witness up to `bound`.
    pub witnesses: Vec<Option<u64>>,
    pub missing: usize,
    pub pass: bool,
}

pub const EXTENSION_MAX_BASE: usize = 24;

pub fn extension_check(
    oracle: &EdgeOracle,
    base: &VertexSet,
    bound: u64,
) -> Result<ExtensionReport> {
    if base.len() > EXTENSION_MAX_BASE {
        return Err(Error::OutOfRange {
            what: "extension base size",
            value: base.len() as u64,
            allowed: format!("<= {EXTENSION_MAX_BASE}"),
        });
    }
    if base.max().is_some_and(|m| m > bound) {
        return Err(Error::contract("base must lie inside [1, bound]"));
    }
    let f = base.elements();
    let types = 1usize << f.len();
    let mut witnesses = vec![None; types];
    let mut missing = types;
    for m in 1..=bound {
        if missing == 0 {
            break;
        }
        if base.contains(m) {
            continue;
        }
        let slot = &mut witnesses[type_index(oracle, m, f) as usize];
        if slot.is_none() {
            *slot = Some(m);
            missing -= 1;
        }
    }
    Ok(ExtensionReport {
        base: f.to_vec(),
        bound,
        witnesses,
        missing,
        pass: missing == 0,
    })
}

/// Induced subgraph on `a`; vertex `i` is the `i`-th smallest element.
pub fn induced_subgraph(oracle: &EdgeOracle, a: &VertexSet) -> FiniteGraph {
    induced_on(oracle, a.elements())
}

/// Induced subgraph on an ordered vertex list.
pub fn induced_on(oracle: &EdgeOracle, vertices: &[u64]) -> FiniteGraph {
    FiniteGraph::from_fn(vertices.len(), |i, j| {
        oracle.adjacent(vertices[i], vertices[j])
    })
}
