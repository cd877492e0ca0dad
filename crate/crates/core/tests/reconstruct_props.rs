use deckrecon::reconstruct::{
    estimate_size, extend_known, recover_exact_middle, DegreeStatus, KnownDegrees, RecoveryParams,
};
use deckrecon::{card_stats, deal, drop_cards, gen_graph, reconstruct_size, DropStrategy, Graph, Model, PartialDeck};
use proptest::prelude::*;

fn spectrum(g: &Graph) -> Vec<u64> {
    let mut d = vec![0u64; g.order()];
    for v in 0..g.order() {
        d[g.degree(v)] += 1;
    }
    d
}

#[derive(Debug, Clone)]
struct Case {
    g: Graph,
    deck: PartialDeck,
}

fn model() -> impl Strategy<Value = Model> {
    prop_oneof![
        prop::sample::select(vec![0.01, 0.05, 0.3, 0.5, 0.7, 0.95, 0.99]).prop_map(Model::Gnp),
        (1usize..=3).prop_map(|d| Model::Regular(2 * d)),
        Just(Model::Path),
        Just(Model::Star),
    ]
}

fn case() -> impl Strategy<Value = Case> {
    (model(), 12usize..=160, any::<u64>(), any::<u64>(), 0usize..=100).prop_map(|(model, n, gs, ds, kf)| {
        let n = if matches!(model, Model::Regular(_)) { n & !1 } else { n };
        let g = gen_graph(&model, n, gs).unwrap();
        let k = kf * (n / 3) / 100;
        let deck = drop_cards(&deal(&g).unwrap(), k, DropStrategy::Random, ds).unwrap();
        Case { g, deck }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_answers_are_never_wrong(c in case()) {
        let report = reconstruct_size(&c.deck);
        if let Some(m) = report.exact_size() {
            prop_assert_eq!(m, c.g.edge_count());
        } else {
            prop_assert!(report.stage().is_some());
        }
    }

    #[test]
    fn certified_degree_counts_are_true(c in case()) {
        let stats = card_stats(&c.deck);
        let truth = spectrum(&c.g);
        let n = c.g.order();
        let params = RecoveryParams::new(n, c.deck.missing());
        let middle = recover_exact_middle(&stats, &params);
        let known = extend_known(&stats, &middle);
        prop_assert!(!known.has_conflict());
        for t in 0..n {
            match known.status(t) {
                DegreeStatus::Exact(v) => prop_assert_eq!(v, truth[t], "t = {}", t),
                DegreeStatus::Large => prop_assert!(truth[t] * truth[t] > n as u64, "t = {}", t),
                DegreeStatus::Unknown => {}
            }
        }
    }

    #[test]
    fn complement_answers_agree(c in case()) {
        let n = c.g.order();
        let comp: Vec<Graph> = c.deck.graphs().map(Graph::complement).collect();
        let comp = PartialDeck::from_graphs(n, comp).unwrap();
        let a = reconstruct_size(&c.deck).exact_size();
        let b = reconstruct_size(&comp).exact_size();
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(a + b, (n * (n - 1) / 2) as u64);
        }
    }

    #[test]
    fn estimate_stays_within_its_bound(c in case()) {
        let est = estimate_size(&card_stats(&c.deck)).unwrap();
        let m = c.g.edge_count();
        prop_assert!(est.m_tilde >= m && est.m_tilde - m <= est.alpha_max);
    }
}

#[test]
fn full_deck_extension_from_the_top_anchor_recovers_every_small_graph() {
    for n in 3..=8 {
        for g in deckrecon::oracle::enumerate_graphs(n).unwrap().graphs() {
            let truth = spectrum(g);
            let stats = card_stats(&deal(g).unwrap());
            let mut known = KnownDegrees::unknown(n);
            known.set_exact(n - 1, truth[n - 1]);
            let out = extend_known(&stats, &known);
            let got: Vec<Option<u64>> = (0..n).map(|t| out.exact(t)).collect();
            assert_eq!(got, truth.iter().map(|&v| Some(v)).collect::<Vec<_>>(), "{}", deckrecon::graph::graph6::encode(g));
        }
    }
}

#[test]
fn cubic_graphs_reconstruct_after_losing_a_card() {
    for seed in 0..5 {
        let g = gen_graph(&Model::Regular(3), 400, seed).unwrap();
        let deck = drop_cards(&deal(&g).unwrap(), 1, DropStrategy::Random, seed).unwrap();
        assert_eq!(reconstruct_size(&deck).exact_size(), Some(600));
    }
}
