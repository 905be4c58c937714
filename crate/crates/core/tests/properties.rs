mod common;

use monochrome::census::{count_cycles, count_multigraph_tuples, count_subgraph};
use monochrome::colorsim::{exact_distribution, simulate, Statistic};
use monochrome::extremal::{deficiency, gamma};
use monochrome::graph::{galton_watson, path, random_regular};
use monochrome::limits::{law_pmf, weighted_chisq_mgf, LimitLaw, Mixing};
use monochrome::moments::{conditional_moment, MomentKind, MomentRequest};
use monochrome::spectral;
use monochrome::stats::{ks_two_sample, tv_distance, Pmf};
use monochrome::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn triangles_oracle(g: &Graph) -> u64 {
    let n = g.n();
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    t += 1;
                }
            }
        }
    }
    t
}

/// Each 4-cycle is a pair of opposite vertices with two common neighbours,
/// and is seen from both of its diagonals.
fn four_cycles_oracle(g: &Graph) -> u64 {
    let n = g.n();
    let mut total = 0;
    for a in 0..n {
        for b in a + 1..n {
            let common = (0..n).filter(|&v| g.has_edge(a, v) && g.has_edge(b, v)).count() as u64;
            total += common * common.saturating_sub(1) / 2;
        }
    }
    total / 2
}

fn deficiency_oracle(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .map(|s| {
            let mut nbrs = 0u32;
            for v in 0..n {
                if s >> v & 1 == 1 {
                    for &w in g.neighbors(v) {
                        nbrs |= 1 << w;
                    }
                }
            }
            (s.count_ones() as usize).saturating_sub(nbrs.count_ones() as usize)
        })
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(12)) {
        let text = g.to_edge_list();
        prop_assert_eq!(Graph::parse_edge_list(&text).unwrap(), g.clone());
        let stats = g.basic_stats();
        prop_assert_eq!(stats.degrees.iter().sum::<usize>(), 2 * g.m());
    }

    #[test]
    fn short_cycle_counts(g in arb_graph(9)) {
        prop_assert_eq!(count_cycles(&g, 3).unwrap(), triangles_oracle(&g));
        prop_assert_eq!(count_cycles(&g, 4).unwrap(), four_cycles_oracle(&g));
        let cherries: u64 = (0..g.n()).map(|v| { let d = g.degree(v) as u64; d * d.saturating_sub(1) / 2 }).sum();
        prop_assert_eq!(count_subgraph(&g, &path(2)).unwrap(), cherries);
    }

    #[test]
    fn tuple_census_total(g in arb_graph(7), k in 1usize..=3) {
        let census = count_multigraph_tuples(&g, k).unwrap();
        prop_assert_eq!(census.total, (g.m() as u64).pow(k as u32));
        prop_assert_eq!(census.classes.values().map(|c| c.count).sum::<u64>(), census.total);
    }

    #[test]
    fn deficiency_and_gamma(g in arb_graph(9)) {
        let h = g.without_isolated();
        prop_assume!(h.m() > 0);
        prop_assert_eq!(deficiency(&h), deficiency_oracle(&h));
        let sol = gamma(&h);
        prop_assert!(sol.is_feasible(&h));
        prop_assert_eq!(sol.gamma.clone(), common::brute_force_gamma(&h));
        prop_assert_eq!(sol.gamma, common::rat((h.n() + deficiency(&h)) as i64, 2));
    }

    #[test]
    fn spectrum_traces(g in arb_graph(14)) {
        let s = spectral::eigenvalues(&g).unwrap();
        prop_assert!(s.power_sum(1).abs() < 1e-9);
        prop_assert!((s.power_sum(2) - 2.0 * g.m() as f64).abs() < 1e-8);
        prop_assert!((s.power_sum(3) - 6.0 * triangles_oracle(&g) as f64).abs() < 1e-7);
    }

    #[test]
    fn exact_law_mean_and_variance(g in arb_graph(6), c in 2u32..=3) {
        prop_assume!(g.m() > 0);
        let pmf = exact_distribution(&g, c, Statistic::MonoEdges).unwrap();
        let total: BigRational = pmf.values().sum();
        prop_assert_eq!(total, common::rat(1, 1));
        let mean: BigRational = pmf.iter().map(|(&v, p)| p * BigInt::from(v)).sum();
        prop_assert_eq!(mean, common::rat(g.m() as i64, c as i64));
        // Pairwise independence of edge indicators: E Z² = 1 − 1/c.
        let z2 = conditional_moment(&g, MomentRequest { kind: MomentKind::CentralZ, k: 2, c: c as u64 }).unwrap();
        prop_assert_eq!(z2.value, common::rat(c as i64 - 1, c as i64));
        let w2 = conditional_moment(&g, MomentRequest { kind: MomentKind::CentralW, k: 2, c: c as u64 }).unwrap();
        prop_assert_eq!(w2.value, common::rat(c as i64 - 1, c as i64));
    }

    #[test]
    fn tv_is_a_metric(a in proptest::collection::vec(0u64..50, 1..8), b in proptest::collection::vec(0u64..50, 1..8)) {
        prop_assume!(a.iter().sum::<u64>() > 0 && b.iter().sum::<u64>() > 0);
        let p = Pmf::from_counts(a.iter().enumerate().map(|(k, &c)| (k as i64, c)));
        let q = Pmf::from_counts(b.iter().enumerate().map(|(k, &c)| (k as i64, c)));
        let d = tv_distance(&p, &q);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert!((d - tv_distance(&q, &p)).abs() < 1e-15);
        prop_assert!(tv_distance(&p, &p) < 1e-15);
    }

    #[test]
    fn mgf_at_zero_is_one(w in proptest::collection::vec(-1.0f64..1.0, 1..6), dof in 1u32..4) {
        prop_assert_eq!(weighted_chisq_mgf(&w, dof, 0.0).unwrap(), 1.0);
    }
}

#[test]
fn regular_and_tree_generators() {
    for seed in 0..20 {
        let g = random_regular(30, 3, seed).unwrap();
        assert!((0..30).all(|v| g.degree(v) == 3));
        let t = galton_watson(&[0.25, 0.25, 0.5], 6, seed).unwrap();
        assert_eq!(t.components().1, 1);
        assert_eq!(t.m() + 1, t.n());
    }
}

#[test]
fn simulation_is_reproducible() {
    let g = common::small_catalog().remove(5).1;
    let a = simulate(&g, 3, Statistic::MonoEdges, 5000, 42).unwrap();
    let b = simulate(&g, 3, Statistic::MonoEdges, 5000, 42).unwrap();
    assert_eq!(a.raw, b.raw);
    let c = simulate(&g, 3, Statistic::MonoEdges, 5000, 43).unwrap();
    assert_ne!(a.raw, c.raw);
    let small = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let d = small.install(|| simulate(&g, 3, Statistic::MonoEdges, 5000, 42).unwrap());
    assert_eq!(a.raw, d.raw);
}

#[test]
fn mixture_laws_are_distributions() {
    for law in [
        LimitLaw::Poisson { lambda: 2.0 },
        LimitLaw::PoissonMixture { mixing: Mixing::PoissonMixing { lambda: 3.0 } },
        LimitLaw::PoissonMixture { mixing: Mixing::Empirical { samples: vec![0.5, 1.0, 4.0] } },
    ] {
        let total: f64 = (0..200).map(|k| law_pmf(&law, k).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-10, "{law:?}: {total}");
    }
}

#[test]
fn two_sample_ks_of_identical_samples() {
    let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
    assert!(ks_two_sample(&xs, &xs).unwrap().is_zero());
}
