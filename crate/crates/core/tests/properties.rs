mod common;

use markov_morita::sweep;
use markov_morita::{build_graph, decide_morita, Alphabet, FollowerVector, Hull, TransitionMatrix};
use proptest::prelude::*;

fn matrix(max_size: usize) -> impl Strategy<Value = TransitionMatrix> {
    (1..=max_size).prop_flat_map(|n| {
        prop::collection::vec(1u64..1 << n, n).prop_map(move |rows| {
            let rows = rows
                .into_iter()
                .map(|r| FollowerVector::from_bits(r, n))
                .collect();
            TransitionMatrix::new(Alphabet::standard(n).unwrap(), rows).unwrap()
        })
    })
}

fn matrix_and_perm(max_size: usize) -> impl Strategy<Value = (TransitionMatrix, Vec<usize>)> {
    matrix(max_size).prop_flat_map(|t| {
        let perm = Just((0..t.size()).collect::<Vec<_>>()).prop_shuffle();
        (Just(t), perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertices_are_f_classes(t in matrix(5)) {
        let g = build_graph(&t).unwrap();
        let ours: std::collections::BTreeSet<u64> =
            g.vertices().map(|v| g.order().vector(v).bits()).collect();
        prop_assert_eq!(ours, common::f_classes_by_subsets(&t));
        prop_assert!(g.is_strongly_right_resolving());
    }

    #[test]
    fn order_and_cd_laws(t in matrix(5)) {
        let ts = [t];
        prop_assert!(sweep::order_sweep(&ts).passed());
        prop_assert!(sweep::cd_sweep(&ts).passed());
    }

    #[test]
    fn idempotents_commute(t in matrix(4)) {
        let idems = Hull::new(t).idempotents_up_to(2);
        for e in &idems {
            prop_assert_eq!(e.product(e), Some(e.clone()));
            for f in &idems {
                prop_assert_eq!(e.product(f), f.product(e));
                prop_assert_eq!(e.leq(f), e.product(f).as_ref() == Some(e));
            }
        }
    }

    #[test]
    fn renaming_is_invisible((t, perm) in matrix_and_perm(5)) {
        let p = t.permuted(&perm);
        let v = decide_morita(&t, &p, true).unwrap();
        prop_assert!(v.equivalent);
        let (g1, g2) = (build_graph(&t).unwrap(), build_graph(&p).unwrap());
        prop_assert!(common::witness_valid(&g1, &g2, v.witness.as_ref().unwrap()));
    }

    #[test]
    fn decision_matches_reference(t1 in matrix(4), t2 in matrix(4)) {
        let (g1, g2) = (build_graph(&t1).unwrap(), build_graph(&t2).unwrap());
        // the reference tries every vertex bijection
        prop_assume!(g1.vertex_count() <= 7);
        let v = decide_morita(&t1, &t2, true).unwrap();
        prop_assert_eq!(v.equivalent, common::isomorphic(&common::RawGraph::of(&g1), &common::RawGraph::of(&g2)));
    }

    #[test]
    fn oracle_agrees(t in matrix(4)) {
        prop_assert!(sweep::oracle_sweep(&[t], 6).passed());
    }

    #[test]
    fn lgis_axioms_short_paths(t in matrix(4)) {
        prop_assert!(sweep::lgis_sweep(&[t], 1).passed());
    }
}
