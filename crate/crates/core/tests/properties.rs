mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use unisets::basis::{builtin_series, covering_set, non_doubling_in_solvable};
use unisets::group::is_non_doubling;
use unisets::powers::{min_degree_fixpoint, min_degree_subgraph, Graph, PeelOrder};
use unisets::{product_set, translate, Group, GroupSpec, Subset};

fn group_spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u64..40).prop_map(GroupSpec::cyclic),
        (1u32..=4).prop_map(GroupSpec::symmetric),
        prop::collection::vec(1u64..6, 2..=3).prop_map(|f| GroupSpec::abelian(&f)),
    ]
}

fn group_and_sets(count: usize) -> impl Strategy<Value = (Group, Vec<Vec<usize>>)> {
    group_spec().prop_flat_map(move |spec| {
        let g = Group::new(&spec).unwrap();
        let n = g.order();
        let sets = prop::collection::vec(prop::collection::btree_set(0..n, 1..=n.min(8)), count);
        (Just(g), sets.prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translates_compose((g, sets) in group_and_sets(1), a in 0usize..1000, b in 0usize..1000) {
        let n = g.order();
        let (a, b) = (a % n, b % n);
        let s = common::subset(&g, &sets[0]);
        let left = translate(a, &translate(b, &s).unwrap()).unwrap();
        prop_assert_eq!(left, translate(g.op(a, b), &s).unwrap());
        prop_assert_eq!(translate(g.identity(), &s).unwrap(), s.clone());
        prop_assert_eq!(translate(a, &s).unwrap().len(), s.len());
    }

    #[test]
    fn product_sets_are_bounded_and_associative((g, sets) in group_and_sets(3)) {
        let [s, t, r] = [0, 1, 2].map(|i| common::subset(&g, &sets[i]));
        let st = product_set(&s, &t).unwrap();
        prop_assert!(st.len() >= s.len().max(t.len()));
        prop_assert!(st.len() <= s.len() * t.len());
        prop_assert_eq!(st.to_vec(), common::product(&g, &sets[0], &sets[1]));
        let left = product_set(&st, &r).unwrap();
        let right = product_set(&s, &product_set(&t, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn non_doubling_extraction_bounds(spec in group_spec(), frac in 0.0f64..1.0) {
        let g = Group::new(&spec).unwrap();
        prop_assume!(g.order() >= 2);
        let series = builtin_series(&g).unwrap();
        let x = 1.0 + 1e-9 + frac * (g.order() as f64 - 1.0 - 1e-9);
        let set = non_doubling_in_solvable(&series, x).unwrap();
        prop_assert!(set.len() as f64 >= x && set.len() as f64 <= 2.0 * x);
        prop_assert!(is_non_doubling(&set).unwrap().0);
    }

    #[test]
    fn coverings_cover((g, sets) in group_and_sets(1), seed in any::<u64>()) {
        let x = common::subset(&g, &sets[0]);
        let c = covering_set(&x, seed).unwrap();
        prop_assert!(product_set(&c.set(&g), &x).unwrap().is_full());
        prop_assert_eq!(c.clone(), covering_set(&x, seed).unwrap());
    }

    #[test]
    fn peeling_is_order_independent(
        m in 1usize..25,
        raw in prop::collection::btree_set((0usize..25, 0usize..25), 0..80),
        num in 1i64..12,
        den in 1i64..4,
        seed in any::<u64>(),
    ) {
        let edges: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(u, v)| (u % m, v % m))
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let g = Graph::new(m, edges).unwrap();
        let delta = BigRational::new(BigInt::from(num), BigInt::from(den));
        let oracle = min_degree_fixpoint(&g, &delta);
        for order in [PeelOrder::Fifo, PeelOrder::Lifo, PeelOrder::Seeded(seed)] {
            let core = min_degree_subgraph(&g, &delta, order).unwrap();
            prop_assert_eq!(&core.vertices, &oracle);
            for &v in &core.vertices {
                let d = g.neighbors(v).iter().filter(|(u, _)| core.vertices.contains(u)).count();
                prop_assert!(BigRational::from_integer(d.into()) >= delta);
            }
        }
    }

    #[test]
    fn subsets_serialize_sorted((g, sets) in group_and_sets(1)) {
        let s = Subset::from_indices(&g, sets[0].iter().rev().copied()).unwrap();
        let json = serde_json::to_value(&s).unwrap();
        let back: Vec<usize> = serde_json::from_value(json).unwrap();
        prop_assert_eq!(back, s.to_vec());
    }
}
