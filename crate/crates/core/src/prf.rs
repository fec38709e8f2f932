//! Counter-based pseudorandom functions built on the SplitMix64 finalizer.
//!
//! Nothing here carries state: every bit is a pure function of a key and a
//! counter, so results do not depend on evaluation order or thread count.

/// Odd 64-bit golden-ratio constant, `floor(2^64 / phi)`.
pub const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Salt separating trial-graph streams from the ambient edge oracle.
const TRIAL_SALT: u64 = 0xD1B5_4A32_D192_ED03;
/// Salt for μ_p membership streams.
const MU_SALT: u64 = 0x8CB9_2BA7_2F3D_8DD7;

/// SplitMix64 output finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Keyed hash of an unordered-by-convention pair `(a, b)`; callers canonicalize.
#[inline]
pub fn pair_hash(seed: u64, a: u64, b: u64) -> u64 {
    mix64(seed ^ mix64(a.wrapping_mul(GOLDEN) ^ b.rotate_left(32)))
}

/// Top 53 bits of a hash, i.e. the numerator of a uniform draw in `[0, 1)`
/// with denominator `2^53`.
#[inline]
pub fn top53(h: u64) -> u64 {
    h >> 11
}

/// Uniform `f64` in `[0, 1)` from a hash.
#[inline]
pub fn unit_f64(h: u64) -> f64 {
    top53(h) as f64 / (1u64 << 53) as f64
}

/// Derives the seed of trial `index` from a master seed.
#[inline]
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(GOLDEN)))
}

/// Fair bit for pair `pair_index` of trial graph `trial`, independent of the
/// ambient edge oracle with the same seed.
#[inline]
pub fn trial_bit(seed: u64, trial: u64, pair_index: u64) -> bool {
    pair_hash(mix64(seed ^ TRIAL_SALT), trial, pair_index) >> 63 == 1
}

/// Bernoulli(p) membership of `n` in the μ_p sample keyed by `seed`.
#[inline]
pub fn mu_p_member(seed: u64, n: u64, p: f64) -> bool {
    unit_f64(mix64(mix64(seed ^ MU_SALT) ^ mix64(n.wrapping_mul(GOLDEN)))) < p
}
