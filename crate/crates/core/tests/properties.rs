use proptest::prelude::*;
use rado_core::audit::{self, GFreeMode, Verdict};
use rado_core::canon::{canonical_form, enumerate_unlabeled};
use rado_core::constructions::{
    construct_pi02_member, construct_thick_copy, construct_thick_edgeless,
};
use rado_core::embed::{embed_target, EmbedConfig};
use rado_core::largeness::{pi02_force, FamilyDescriptor};
use rado_core::mc;
use rado_core::{EdgeOracle, FiniteGraph, VertexSet};

fn brute_max_free(o: &EdgeOracle, lo: u64, len: u64, pattern: &FiniteGraph) -> usize {
    let k = pattern.order();
    let target = canonical_form(pattern).unwrap();
    let w: Vec<u64> = (lo..lo + len).collect();
    let mut best = 0;
    for mask in 0u32..1 << len {
        let s: Vec<u64> = (0..len as usize)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| w[i])
            .collect();
        if s.len() <= best {
            continue;
        }
        let mut free = true;
        for sub in 0u32..1 << s.len() {
            if sub.count_ones() as usize != k {
                continue;
            }
            let pick: Vec<u64> = (0..s.len())
                .filter(|&i| sub >> i & 1 == 1)
                .map(|i| s[i])
                .collect();
            let g = FiniteGraph::from_fn(k, |i, j| o.adjacent(pick[i], pick[j]));
            if canonical_form(&g).unwrap() == target {
                free = false;
                break;
            }
        }
        if free {
            best = s.len();
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_gfree_matches_brute_force(seed in 0u64..1000, lo in 1u64..500, which in 0usize..3) {
        let o = EdgeOracle::new(seed);
        let pattern = [FiniteGraph::complete(2), FiniteGraph::complete(3), FiniteGraph::path(3)][which].clone();
        let r = audit::max_gfree_subset(&o, (lo, lo + 9), &pattern, GFreeMode::Exact).unwrap();
        prop_assert_eq!(r.size, brute_max_free(&o, lo, 10, &pattern));
    }

    #[test]
    fn embeddings_stay_in_host(seed in 0u64..10_000, which in 0usize..3) {
        let o = EdgeOracle::new(seed);
        let host = VertexSet::new((1..=1500).map(|i| 3 * i).collect(), 4500).unwrap();
        let target = [FiniteGraph::complete(4), FiniteGraph::cycle(5), FiniteGraph::path(6)][which].clone();
        let e = embed_target(&o, &target, &host, &EmbedConfig::default()).unwrap();
        prop_assert!(e.verify_in_host(&o, &host));
    }

    #[test]
    fn forcing_is_monotone_in_the_prefix(extra in proptest::collection::vec(1u64..400, 0..40), level in 1u64..3) {
        let fam = FamilyDescriptor::substantial();
        let base = VertexSet::from_unsorted(vec![1, 3, 5, 7, 9, 11, 13, 15]).unwrap();
        if let Some(k) = pi02_force(&fam, level, &base, 400) {
            let bigger = base.union(&VertexSet::from_unsorted(extra.into_iter().filter(|&x| x > k).collect()).unwrap());
            prop_assert_eq!(pi02_force(&fam, level, &bigger, 400), Some(k));
        }
    }
}

#[test]
fn weak_universality_is_downward_closed() {
    for seed in 0..6 {
        let o = EdgeOracle::new(seed);
        let host = VertexSet::interval(1, 200);
        let big = audit::weak_universality(&o, &host, 4, audit::DEFAULT_NODE_BUDGET).unwrap();
        for k in 1..4 {
            let small = audit::weak_universality(&o, &host, k, audit::DEFAULT_NODE_BUDGET).unwrap();
            if big.verdict == Verdict::Pass {
                assert_eq!(small.verdict, Verdict::Pass);
            }
        }
    }
}

#[test]
fn enumeration_forms_are_distinct() {
    for k in 1..=6 {
        let forms: std::collections::BTreeSet<_> = enumerate_unlabeled(k)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).unwrap())
            .collect();
        assert_eq!(forms.len(), enumerate_unlabeled(k).unwrap().len());
    }
}

#[test]
fn constructions_are_deterministic() {
    let o = EdgeOracle::new(21);
    let a = construct_thick_edgeless(&o, 3, 1_000_000).unwrap();
    let b = construct_thick_edgeless(&o, 3, 1_000_000).unwrap();
    assert_eq!(a.intervals, b.intervals);
    let fam = FamilyDescriptor::substantial();
    let x = construct_pi02_member(&o, &fam, 2, 1_000_000).unwrap();
    let y = construct_pi02_member(&o, &fam, 2, 1_000_000).unwrap();
    assert_eq!(x.member.elements(), y.member.elements());
}

#[test]
fn thick_copy_of_random_six_vertex_targets() {
    let mut ok = 0;
    for seed in 1..=20u64 {
        let target = mc::trial_graph(seed, 0, 6);
        let o = EdgeOracle::new(seed);
        if let Ok(r) = construct_thick_copy(&o, &target, 3, 1_000_000) {
            let u = r.union.elements();
            assert!((0..6).all(|j| (0..j).all(|i| o.adjacent(u[i], u[j]) == target.has_edge(i, j))));
            ok += 1;
        }
    }
    assert!(ok >= 18, "{ok}/20");
}

#[test]
fn mc_matches_exact_over_master_seeds() {
    let k3 = FiniteGraph::complete(3);
    for seed in 0..10 {
        let r = mc::mc_gfree_probability(&k3, 5, 20_000, seed, None).unwrap();
        let exact = r.exact.unwrap();
        assert!(
            (r.estimate - exact).abs() <= 3.0 * r.stderr + 1e-12,
            "seed {seed}"
        );
    }
}

#[test]
fn mu_half_halves_agree() {
    let o = EdgeOracle::new(8);
    let base = VertexSet::interval(1, 4);
    let r = mc::type_frequency_check(&o, &base, &rado_core::TypeMask::ones(4), 100_000).unwrap();
    assert!(r.halves.within_3sigma);
    assert!(r.runs.z.abs() < 4.0);
}
