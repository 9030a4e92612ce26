use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbon_core::enumerate::{
    count_orientable_petrials, partial_petrial_polynomial, partial_star_polynomial,
    partial_star_polynomial_with, restricted_orientable_petrial_polynomial,
    restricted_orientable_petrial_polynomial_naive,
};
use ribbon_core::twuality::{partial_dual_euler_genus, partial_petrial};
use ribbon_core::verify::random_graph;
use ribbon_core::{parse_rg, render_rg, EdgeSubset, EnumOptions, GenusPolynomial, RibbonGraph};

fn graph(seed: u64, max_edges: usize) -> RibbonGraph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), max_edges)
}

fn poly() -> impl Strategy<Value = GenusPolynomial> {
    prop::collection::vec((-20i64..20, 0usize..8), 0..6).prop_map(GenusPolynomial::from_terms)
}

/// Orientability by trying every set of vertex flips.
fn orientable_by_flips(g: &RibbonGraph) -> bool {
    let v = g.vertex_count();
    (0u32..1 << v).any(|flips| {
        let mut h = g.clone();
        for x in 0..v {
            if flips >> x & 1 == 1 {
                h = h.vertex_flip(x).unwrap();
            }
        }
        h.twists().iter().all(|t| !t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_walks_cover_every_flag(seed in any::<u64>()) {
        let g = graph(seed, 10);
        let walks = g.trace_faces();
        prop_assert_eq!(walks.iter().map(|w| w.len()).sum::<usize>(), 4 * g.edge_count());
        prop_assert_eq!(walks.len(), g.face_count());
    }

    #[test]
    fn orientable_graphs_have_even_euler_genus(seed in any::<u64>()) {
        let g = graph(seed, 10);
        if g.is_orientable() {
            prop_assert_eq!(g.euler_genus() % 2, 0);
        }
    }

    #[test]
    fn orientability_matches_flip_search(seed in any::<u64>()) {
        let g = graph(seed, 7);
        prop_assert_eq!(g.is_orientable(), orientable_by_flips(&g));
    }

    #[test]
    fn vertex_flips_preserve_the_surface(seed in any::<u64>(), pick in any::<usize>()) {
        let g = graph(seed, 8);
        let h = g.vertex_flip(pick % g.vertex_count()).unwrap();
        prop_assert_eq!(h.face_count(), g.face_count());
        prop_assert_eq!(h.is_orientable(), g.is_orientable());
        prop_assert_eq!(partial_petrial_polynomial(&h).unwrap(), partial_petrial_polynomial(&g).unwrap());
    }

    #[test]
    fn partial_dual_genus_is_complement_symmetric(seed in any::<u64>(), mask in any::<u64>()) {
        let g = graph(seed, 10);
        let e = g.edge_count();
        let a = EdgeSubset::from_mask(e, mask & ((1u64 << e) - 1)).unwrap();
        prop_assert_eq!(
            partial_dual_euler_genus(&g, &a).unwrap(),
            partial_dual_euler_genus(&g, &a.complement()).unwrap()
        );
    }

    #[test]
    fn petrial_twice_is_identity(seed in any::<u64>(), mask in any::<u64>()) {
        let g = graph(seed, 10);
        let e = g.edge_count();
        let a = EdgeSubset::from_mask(e, mask & ((1u64 << e) - 1)).unwrap();
        prop_assert_eq!(partial_petrial(&partial_petrial(&g, &a).unwrap(), &a).unwrap(), g);
    }

    #[test]
    fn parallel_edge_then_delete_restores(seed in any::<u64>(), pick in any::<usize>()) {
        let g = graph(seed, 8);
        let e = pick % g.edge_count();
        prop_assume!(!g.is_loop(e));
        let h = g.add_parallel_edge(e).unwrap();
        let new = h.edge_count() - 1;
        prop_assert!(h.delete_edge(new).unwrap().same_embedding(&g));
    }

    #[test]
    fn coefficient_sums_count_subsets(seed in any::<u64>()) {
        let g = graph(seed, 9);
        let all = BigInt::from(1u64 << g.edge_count());
        prop_assert_eq!(partial_star_polynomial(&g).unwrap().coefficient_sum(), all.clone());
        prop_assert_eq!(partial_petrial_polynomial(&g).unwrap().coefficient_sum(), all);
        prop_assert_eq!(
            restricted_orientable_petrial_polynomial(&g).unwrap().coefficient_sum(),
            count_orientable_petrials(&g).unwrap()
        );
    }

    #[test]
    fn restricted_fast_matches_naive(seed in any::<u64>()) {
        let g = graph(seed, 10);
        prop_assert_eq!(
            restricted_orientable_petrial_polynomial(&g).unwrap(),
            restricted_orientable_petrial_polynomial_naive(&g).unwrap()
        );
    }

    #[test]
    fn restricted_polynomial_is_even(seed in any::<u64>()) {
        let g = graph(seed, 10);
        prop_assert!(restricted_orientable_petrial_polynomial(&g).unwrap().is_even_polynomial());
    }

    #[test]
    fn thread_count_does_not_change_results(seed in any::<u64>()) {
        let g = graph(seed, 12);
        prop_assert_eq!(
            partial_star_polynomial_with(&g, &EnumOptions::with_threads(1)).unwrap(),
            partial_star_polynomial_with(&g, &EnumOptions::with_threads(3)).unwrap()
        );
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let g = graph(seed, 10);
        prop_assert_eq!(parse_rg(&render_rg(&g)).unwrap(), g);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn degrees_add_under_multiplication(a in poly(), b in poly()) {
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            prop_assert_eq!((&a * &b).degree(), Some(da + db));
        }
    }

    #[test]
    fn even_interpolating_implies_even(a in poly()) {
        if let Ok(true) = a.is_even_interpolating() {
            prop_assert!(a.is_even_polynomial());
            prop_assert!(a.is_interpolating().unwrap() == (a.term_count() == 1));
        }
    }

    #[test]
    fn display_parses_back(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<GenusPolynomial>().unwrap(), a);
    }
}
