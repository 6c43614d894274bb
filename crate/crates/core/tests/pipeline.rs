use num_bigint::BigUint;
use proptest::prelude::*;

use powergraph::counting::{self, TypeSelection};
use powergraph::graphcore::{self, components};
use powergraph::permutations::{PermGroup, Permutation};
use powergraph::powergraphs::{pairwise_power_graph, GraphKind, PowerGraphBundle};
use powergraph::{Caps, Error};

#[test]
fn three_counts_agree_up_to_seven() {
    let caps = Caps::default();
    for n in 2..=7 {
        let bundle = PowerGraphBundle::symmetric(n, &caps).unwrap();
        let explicit = bundle.component_count(GraphKind::Explicit).unwrap();
        let quotient = bundle.component_count(GraphKind::Quotient).unwrap();
        let trace = counting::run_procedure(&bundle, TypeSelection::Least).unwrap();
        let closed = counting::closed_form_sn(n as u64).unwrap();
        assert_eq!(explicit, quotient, "n={n}");
        assert_eq!(trace.total, BigUint::from(quotient), "n={n}");
        assert_eq!(closed.c0, BigUint::from(quotient), "n={n}");
    }
}

#[test]
fn one_step_per_type_component() {
    let caps = Caps::default();
    for n in 2..=8 {
        let bundle = counting::symmetric_quotient_bundle(n, &caps).unwrap();
        let trace = counting::run_procedure(&bundle, TypeSelection::Least).unwrap();
        assert_eq!(trace.step_count(), bundle.type_components().count, "n={n}");
        let absorbed: usize = trace.steps.iter().map(|s| s.absorbed.len()).sum();
        assert_eq!(absorbed, bundle.type_graph().vertex_count());
    }
}

#[test]
fn explicit_graph_matches_pairwise_oracle() {
    let caps = Caps::default();
    for n in 2..=5 {
        let bundle = PowerGraphBundle::symmetric(n, &caps).unwrap();
        let oracle = pairwise_power_graph(bundle.group()).unwrap();
        let explicit = bundle.explicit().unwrap();
        assert_eq!(explicit.vertex_count(), oracle.vertex_count());
        assert_eq!(explicit.edge_count(), oracle.edge_count(), "n={n}");
        for (u, v) in oracle.edges() {
            let a = explicit.index_of(oracle.label(u)).unwrap();
            let b = explicit.index_of(oracle.label(v)).unwrap();
            assert!(explicit.is_adjacent(a, b));
        }
    }
}

#[test]
fn bundle_maps_compose() {
    let bundle = PowerGraphBundle::symmetric(6, &Caps::default()).unwrap();
    let t = bundle.t_map();
    let o = bundle.o_map();
    let ot = bundle.o_t_map();
    for class in 0..bundle.quotient().vertex_count() {
        assert_eq!(ot[t[class]], o[class]);
    }
    let pi = bundle.pi();
    let explicit = bundle.explicit().unwrap();
    let map = graphcore::GraphMap::new(explicit, bundle.quotient(), pi).unwrap();
    assert!(map.is_homomorphism());
    assert!(map.is_tame().unwrap());
}

#[test]
fn alternating_quotient_matches_explicit() {
    let caps = Caps::default();
    for n in 3..=7 {
        let group = PermGroup::alternating(n, &caps).unwrap();
        let bundle = PowerGraphBundle::new(group, &caps).unwrap();
        assert_eq!(
            bundle.component_count(GraphKind::Explicit).unwrap(),
            bundle.component_count(GraphKind::Quotient).unwrap(),
            "n={n}"
        );
    }
}

fn small_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_groups_quotient_counts_explicit(gens in proptest::collection::vec(small_perm(5), 1..3)) {
        let caps = Caps::default();
        let group = PermGroup::generated(5, &gens, &caps).unwrap();
        let bundle = PowerGraphBundle::new(group, &caps).unwrap();
        let explicit = components(bundle.explicit().unwrap()).count;
        prop_assert_eq!(explicit, bundle.quotient_components().count);
        match counting::count_by_type_components(&bundle, &caps) {
            Ok(trace) => prop_assert_eq!(trace.total, BigUint::from(explicit)),
            Err(Error::NotFusionControlled(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn shuffled_selection_keeps_the_total(seed in any::<u64>(), n in 2usize..=7) {
        let bundle = counting::symmetric_quotient_bundle(n, &Caps::default()).unwrap();
        let least = counting::run_procedure(&bundle, TypeSelection::Least).unwrap();
        let shuffled = counting::run_procedure(&bundle, TypeSelection::Shuffled(seed)).unwrap();
        prop_assert_eq!(&least.total, &shuffled.total);
        prop_assert_eq!(least.step_count(), shuffled.step_count());
    }
}

#[test]
fn fusion_check_respects_the_bruteforce_cap() {
    let caps = Caps::default();
    let gens = powergraph::permutations::parse_generator_list("(1 2 3 4 5 6 7 8)", 8).unwrap();
    let group = PermGroup::generated(8, &gens, &caps).unwrap();
    let bundle = PowerGraphBundle::new(group, &caps).unwrap();
    assert!(matches!(
        counting::count_by_type_components(&bundle, &caps),
        Err(Error::CapExceeded { .. })
    ));
}
