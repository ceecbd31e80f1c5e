use std::collections::BTreeSet;

use phi_graph::{
    build, certify, chain, closure, factorize, generate, inverse_totient, is_prime,
    iteration_length, known_seed, recognize, totient, totient_sum, FamilySpec, SeedSet,
    UnlabeledTree, Verdict, DEFAULT_BUDGET,
};
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn seed_strategy(max: u64, size: usize) -> impl Strategy<Value = SeedSet> {
    prop::collection::btree_set(1..=max, 1..=size).prop_map(|s| SeedSet::new(s).unwrap())
}

fn random_tree(order: usize) -> impl Strategy<Value = UnlabeledTree> {
    prop::collection::vec(any::<prop::sample::Index>(), order.saturating_sub(1)).prop_map(
        move |picks| {
            let edges: Vec<(usize, usize)> = picks
                .iter()
                .enumerate()
                .map(|(i, p)| (p.index(i + 1), i + 1))
                .collect();
            UnlabeledTree::from_edges(order, &edges).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn totient_is_multiplicative(a in 1u64..1_000_000, b in 1u64..1_000_000) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(totient(a * b), totient(a) * totient(b));
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..) {
        let f = factorize(n);
        prop_assert_eq!(f.product().unwrap(), n);
        for &(p, _) in f.factors() {
            prop_assert!(is_prime(p));
        }
    }

    #[test]
    fn totient_of_prime_power(k in 1u32..20, i in 0usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13][i];
        prop_assume!(p.checked_pow(k).is_some());
        prop_assert_eq!(totient(p.pow(k)), p.pow(k - 1) * (p - 1));
    }

    #[test]
    fn chain_is_consistent(n in 1u64..u64::MAX / 2) {
        let c = chain(n);
        prop_assert_eq!(c.values()[0], n);
        prop_assert_eq!(*c.values().last().unwrap(), 1);
        prop_assert_eq!(c.steps(), iteration_length(n));
        prop_assert_eq!(c.values().len(), c.steps() + 1);
        for w in c.values().windows(2) {
            prop_assert_eq!(totient(w[0]), w[1]);
        }
        prop_assert_eq!(c.phi_sum(), totient_sum(n));
    }

    #[test]
    fn every_preimage_maps_back(m in 1u64..200_000) {
        let s = inverse_totient(m).unwrap();
        for &x in s.solutions() {
            prop_assert_eq!(totient(x), m);
        }
        prop_assert!(s.solutions().windows(2).all(|w| w[0] < w[1]));
        if m > 1 && m % 2 == 1 {
            prop_assert!(s.is_empty());
        }
    }

    #[test]
    fn preimage_of_totient_contains_origin(x in 1u64..10_000_000) {
        prop_assert!(inverse_totient(totient(x)).unwrap().solutions().contains(&x));
    }

    #[test]
    fn built_graph_is_a_tree(a in seed_strategy(1_000_000_000_000, 12)) {
        let g = build(&a);
        prop_assert!(g.is_tree());
        prop_assert_eq!(g.edge_count() + 1, g.order());
        for &v in g.vertices() {
            prop_assert_eq!(g.depth(v).unwrap(), iteration_length(v));
        }
    }

    #[test]
    fn closure_is_idempotent(a in seed_strategy(1_000_000, 8)) {
        let c = closure(&a);
        let again = closure(&SeedSet::new(c.iter().copied()).unwrap());
        prop_assert_eq!(c, again);
    }

    #[test]
    fn closure_is_monotone(a in seed_strategy(1_000_000, 6), b in seed_strategy(1_000_000, 6)) {
        let union = SeedSet::new(a.iter().chain(b.iter())).unwrap();
        let cu = closure(&union);
        prop_assert!(closure(&a).is_subset(&cu));
        let both: BTreeSet<u64> = closure(&a).union(&closure(&b)).copied().collect();
        prop_assert_eq!(cu, both);
    }

    #[test]
    fn minimal_seed_round_trips(a in seed_strategy(1_000_000, 10)) {
        let g = build(&a);
        let min = g.minimal_seed();
        let rebuilt = build(&min);
        prop_assert_eq!(rebuilt.vertices(), g.vertices());
        prop_assert!(min.iter().all(|v| closure(&a).contains(&v)));
        prop_assert!(min.len() <= a.len());
    }

    #[test]
    fn leaf_count_is_bounded(a in seed_strategy(1_000_000, 10)) {
        let g = build(&a);
        prop_assume!(g.order() >= 2);
        let t = g.leaves().unwrap().len();
        prop_assert!(t >= 1);
        prop_assert!(t <= g.minimal_seed().len() + 1);
        prop_assert!(t <= a.len() + 1);
    }

    #[test]
    fn recognizer_realizes_built_graphs(a in seed_strategy(5_000, 4)) {
        let (tree, labels) = build(&a).to_tree();
        prop_assert!(certify(&tree, &labels).unwrap());
        let r = recognize(&tree, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(r.verdict(), Verdict::Realized);
        let witness = r.labeling().unwrap();
        prop_assert!(certify(&tree, witness).unwrap());
        let rebuilt = build(r.minimal_seed().unwrap()).to_tree().0;
        prop_assert!(rebuilt.is_isomorphic(&tree));
    }

    #[test]
    fn recognizer_verdicts_are_sound(tree in (1usize..10).prop_flat_map(random_tree)) {
        let r = recognize(&tree, DEFAULT_BUDGET).unwrap();
        match r.verdict() {
            Verdict::Realized => {
                prop_assert!(certify(&tree, r.labeling().unwrap()).unwrap());
            }
            Verdict::Refuted => prop_assert!(r.labeling().is_none()),
            Verdict::BudgetExceeded => prop_assert!(false, "small tree exhausted the budget"),
        }
    }

    #[test]
    fn larger_budget_keeps_decided_verdicts(tree in (2usize..9).prop_flat_map(random_tree), b in 1u64..200) {
        let small = recognize(&tree, b).unwrap();
        let large = recognize(&tree, b * 10).unwrap();
        if small.verdict() != Verdict::BudgetExceeded {
            prop_assert_eq!(small, large);
        }
    }

    #[test]
    fn isomorphism_ignores_vertex_ids(tree in (1usize..14).prop_flat_map(random_tree), root in any::<prop::sample::Index>()) {
        let relabeled = tree.relabel_bfs(root.index(tree.order()));
        prop_assert!(tree.is_isomorphic(&relabeled));
        prop_assert_eq!(tree.canonical(), relabeled.canonical());
        prop_assert_eq!(recognize(&tree, DEFAULT_BUDGET).unwrap().verdict(),
                        recognize(&relabeled, DEFAULT_BUDGET).unwrap().verdict());
    }

    #[test]
    fn tree_text_formats_round_trip(tree in (1usize..20).prop_flat_map(random_tree)) {
        let from_edges = UnlabeledTree::parse(&tree.to_edge_list()).unwrap();
        let from_dot = UnlabeledTree::parse(&tree.to_dot()).unwrap();
        prop_assert!(from_edges.is_isomorphic(&tree));
        prop_assert!(from_dot.is_isomorphic(&tree));
    }
}

#[test]
fn known_seeds_are_recognized() {
    let specs = [
        "path:1", "path:2", "path:7", "star:1", "star:2", "star:3", "star:4", "centipede:5",
        "alkane:3", "alkane:7", "isomer:isopentane", "nanostar:d2",
    ];
    for s in specs {
        let spec: FamilySpec = s.parse().unwrap();
        let seed = known_seed(&spec).unwrap().unwrap();
        let shape = generate(&spec).unwrap();
        assert!(build(&seed).to_tree().0.is_isomorphic(&shape), "{s}");
        let r = recognize(&shape, DEFAULT_BUDGET).unwrap();
        assert!(r.is_realized(), "{s}");
    }
}

#[test]
fn recognition_is_deterministic() {
    let spec: FamilySpec = "alkane:6".parse().unwrap();
    let shape = generate(&spec).unwrap();
    let first = recognize(&shape, DEFAULT_BUDGET).unwrap();
    for _ in 0..3 {
        assert_eq!(recognize(&shape, DEFAULT_BUDGET).unwrap().to_json(), first.to_json());
    }
}
