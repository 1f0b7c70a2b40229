use proptest::prelude::*;

use domkernel_core::domination::{solve_minimum, Mode, Variant};
use domkernel_core::format::{parse_embedding, parse_graph, write_embedding, write_graph};
use domkernel_core::generators::{generate, GeneratorSpec};
use domkernel_core::kernelize::{is_reduced, kernelize_double_domination};
use domkernel_core::Graph;

/// A simple graph on `1..=max_n` vertices from a random edge mask.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, all.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e)).unwrap()
        })
    })
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![
        Just(Variant::Dominating),
        (1usize..=3).prop_map(Variant::KTuple),
        Just(Variant::Liars),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_is_symmetric(g in graph(12)) {
        let mut degree_sum = 0;
        for v in g.vertices() {
            for &w in g.neighbors(v).unwrap() {
                prop_assert!(g.neighbors(w).unwrap().contains(&v));
            }
            degree_sum += g.degree(v).unwrap();
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        prop_assert_eq!(g.edges().count(), g.edge_count());
    }

    #[test]
    fn brute_and_bnb_agree(g in graph(10), v in variant()) {
        let a = solve_minimum(&g, v, Mode::Brute).unwrap();
        let b = solve_minimum(&g, v, Mode::BranchAndBound).unwrap();
        prop_assert_eq!(a.cardinality(), b.cardinality());
        if let Some(c) = &b.certificate {
            prop_assert!(c.verified);
        }
    }

    #[test]
    fn kernel_is_reduced_and_idempotent(g in graph(12)) {
        let (k, trace) = kernelize_double_domination(&g).unwrap();
        prop_assert!(is_reduced(&k));
        prop_assert_eq!(trace.reduced_n + trace.deleted().len(), g.vertex_count());
        prop_assert_eq!(trace.passes, trace.steps.len() + 1);
        for x in trace.deleted() {
            prop_assert!(!k.is_live(x));
        }
        let (again, t2) = kernelize_double_domination(&k).unwrap();
        prop_assert_eq!(again, k);
        prop_assert!(t2.steps.is_empty());
    }

    #[test]
    fn kernel_text_round_trips(g in graph(10)) {
        let (k, _) = kernelize_double_domination(&g).unwrap();
        prop_assert_eq!(parse_graph(&write_graph(&k)).unwrap(), k);
    }

    #[test]
    fn stacked_embeddings_round_trip(n in 3usize..=20, seed in any::<u64>()) {
        let inst = generate(&GeneratorSpec::Stacked { n, seed }).unwrap();
        let pg = inst.plane().unwrap();
        prop_assert!(pg.euler_holds());
        prop_assert_eq!(pg.face_count(), 2 * n - 4);
        let back = parse_embedding(&write_embedding(pg)).unwrap();
        prop_assert_eq!(back.graph(), pg.graph());
        prop_assert_eq!(back.rotations(), pg.rotations());
        prop_assert_eq!(back.outer_faces().len(), 1);
    }

    #[test]
    fn trigger_kernels_restrict_to_valid_embeddings(n in 5usize..=16, seed in any::<u64>()) {
        let inst = generate(&GeneratorSpec::ReductionTrigger { n, seed }).unwrap();
        let pg = inst.plane().unwrap();
        let (k, trace) = kernelize_double_domination(pg.graph()).unwrap();
        let kpg = pg.restrict_embedding(&trace.deleted()).unwrap();
        prop_assert_eq!(kpg.graph(), &k);
        prop_assert!(kpg.euler_holds());
    }
}

#[test]
fn sandwich_on_small_graphs() {
    // γ₂ ≤ γ_LR ≤ γ₃ whenever the right-hand side exists
    for g in domkernel_core::generators::all_labelled_graphs(5) {
        let gamma = |v| solve_minimum(&g, v, Mode::BranchAndBound).unwrap().cardinality();
        let (g2, lr, g3) = (
            gamma(Variant::KTuple(2)),
            gamma(Variant::Liars),
            gamma(Variant::KTuple(3)),
        );
        if let Some(lr) = lr {
            assert!(g2.unwrap() <= lr);
        }
        if let Some(g3) = g3 {
            assert!(lr.unwrap() <= g3);
        }
    }
}
