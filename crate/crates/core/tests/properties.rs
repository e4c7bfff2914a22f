use std::collections::BTreeSet;

use hyperbruhat::extremal::lemmas::random_element;
use hyperbruhat::extremal::{self, Statistic};
use hyperbruhat::graphs::{self, build_graph, GraphKind};
use hyperbruhat::perm::all_reflections;
use hyperbruhat::{order, ReflectionLabel, SignedPermutation};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn signed_perm(max_n: usize) -> impl Strategy<Value = SignedPermutation> {
    (1..=max_n).prop_flat_map(|n| {
        (
            Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(mags, signs)| {
                let w = mags
                    .into_iter()
                    .zip(signs)
                    .map(|(m, neg)| if neg { -m } else { m })
                    .collect();
                SignedPermutation::new(w).unwrap()
            })
    })
}

fn perm_and_label(max_n: usize) -> impl Strategy<Value = (SignedPermutation, ReflectionLabel)> {
    signed_perm(max_n).prop_flat_map(|p| {
        let labels = all_reflections(p.rank());
        (Just(p), prop::sample::select(labels))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn full_sequence_is_antisymmetric(p in signed_perm(9)) {
        let n = p.rank() as i32;
        for i in 1..=n {
            prop_assert_eq!(p.value_at(-i), -p.value_at(i));
        }
        let full = p.full_sequence();
        prop_assert_eq!(full.len(), 2 * p.rank());
        for k in 0..full.len() {
            prop_assert_eq!(full[k], -full[full.len() - 1 - k]);
        }
    }

    #[test]
    fn display_round_trips(p in signed_perm(9)) {
        let q: SignedPermutation = p.to_string().parse().unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn negate_is_an_involution(p in signed_perm(9)) {
        prop_assert_eq!(p.negate().negate(), p);
    }

    #[test]
    fn apply_u_is_an_involution((p, label) in perm_and_label(8)) {
        if let Ok(q) = p.apply_u(label) {
            prop_assert_eq!(q.apply_u(label).unwrap(), p);
        } else {
            prop_assert!(!p.u_defined(label.a(), label.b()).unwrap());
        }
    }

    #[test]
    fn reflections_flip_length_parity((p, label) in perm_and_label(8)) {
        let q = p.swap_values(label);
        let (a, b) = (p.length().value(), q.length().value());
        prop_assert_eq!(a.abs_diff(b) % 2, 1);
    }

    #[test]
    fn labels_are_canonical(a in -9i32..=9, b in -9i32..=9) {
        prop_assume!(a != 0 && b != 0 && (a.abs() != b.abs() || a == -b));
        let l = ReflectionLabel::new(a, b).unwrap();
        prop_assert!(l.a() < l.b());
        prop_assert_eq!(ReflectionLabel::new(b, a).unwrap(), l);
        prop_assert_eq!(ReflectionLabel::new(-a, -b).unwrap(), l);
        if l.a() == -l.b() {
            prop_assert!(l.b() > 0);
        } else if l.a().abs() < l.b().abs() {
            prop_assert!(l.a() > 0);
        } else {
            prop_assert!(l.b() > 0);
        }
    }

    #[test]
    fn descent_set_round_trips(p in signed_perm(7)) {
        let d = order::descent_set(&p);
        prop_assert_eq!(order::reconstruct_from_descents(&d, p.rank()).unwrap(), p.clone());
        let reparsed = hyperbruhat::DescentSet::parse(&d.to_string(), p.rank()).unwrap();
        prop_assert_eq!(reparsed, d);
    }

    #[test]
    fn covers_match_length_oracle(p in signed_perm(7)) {
        let fast: BTreeSet<_> = order::covers_down(&p).labels().collect();
        prop_assert_eq!(fast, order::descent_labels_oracle(&p));
        for (label, q) in &order::covers_down(&p).entries {
            prop_assert!(p.u_defined(label.a(), label.b()).unwrap());
            prop_assert_eq!(q.length().value() + 1, p.length().value());
        }
        prop_assert!(order::undefined_unit_steps(&p).is_empty());
    }

    #[test]
    fn degrees_are_dual(p in signed_perm(8)) {
        let down = order::down_degree(&p);
        let up = order::up_degree(&p);
        prop_assert_eq!(up, order::down_degree(&p.negate()));
        prop_assert_eq!(up, order::up_degree_by_duality(&p));
        prop_assert_eq!(down + up, order::total_degree(&p));
        prop_assert_eq!(order::total_degree(&p.negate()), order::total_degree(&p));
    }

    #[test]
    fn graph_weights_sum_to_degrees(p in signed_perm(8)) {
        prop_assert_eq!(build_graph(&p, GraphKind::Alpha).total_weight(), order::down_degree(&p));
        prop_assert_eq!(build_graph(&p, GraphKind::Beta).total_weight(), order::total_degree(&p));
    }

    #[test]
    fn vertex_removal_decomposes_degree(p in signed_perm(7)) {
        let g = build_graph(&p, GraphKind::Beta);
        let vals = p.window_values_sorted();
        for (i, &a) in vals.iter().enumerate() {
            let rest = g.remove(&[a]).unwrap();
            prop_assert_eq!(g.total_weight(), rest.total_weight() + g.vertex_degree(a).unwrap());
            for &b in &vals[i + 1..] {
                let rest = g.remove(&[a, b]).unwrap();
                prop_assert_eq!(g.total_weight(), rest.total_weight() + g.union_degree(a, b).unwrap());
            }
        }
    }

    #[test]
    fn r_statistic_routes_agree(p in signed_perm(6)) {
        let vals = p.window_values_sorted();
        for (i, &a) in vals.iter().enumerate() {
            let single = [a];
            prop_assert_eq!(
                graphs::r_statistic(&p, &single).unwrap(),
                graphs::r_statistic_by_rectangles(&p, &single).unwrap()
            );
            for &b in &vals[i + 1..] {
                let pair = [a, b];
                prop_assert_eq!(
                    graphs::r_statistic(&p, &pair).unwrap(),
                    graphs::r_statistic_by_rectangles(&p, &pair).unwrap()
                );
            }
        }
    }
}

#[test]
fn all_reflections_are_canonical_and_distinct() {
    for n in 1..=9 {
        let all = all_reflections(n);
        assert_eq!(all.len(), n * n);
        let set: BTreeSet<_> = all.iter().copied().collect();
        assert_eq!(set.len(), n * n);
        for l in all {
            assert_eq!(ReflectionLabel::new(l.a(), l.b()).unwrap(), l);
        }
    }
}

#[test]
fn sampled_b6_down_degree_matches_oracle_and_alpha() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..10_000 {
        let p = random_element(6, &mut rng);
        let down = order::down_degree(&p);
        assert_eq!(down, order::down_degree_oracle(&p), "{p}");
        assert_eq!(
            down,
            build_graph(&p, GraphKind::Alpha).total_weight(),
            "{p}"
        );
    }
}

#[test]
fn enumeration_is_identical_across_worker_counts() {
    let workers = [1, 2, extremal::default_jobs().max(3)];
    for stat in Statistic::ALL {
        let runs: Vec<_> = workers
            .iter()
            .map(|&j| {
                let r = extremal::max_statistic(6, stat, j).unwrap();
                (r.max_value, r.maximizers)
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{stat}");
        let hists: Vec<_> = workers
            .iter()
            .map(|&j| extremal::degree_histogram(5, stat, j).unwrap())
            .collect();
        assert!(hists.windows(2).all(|w| w[0] == w[1]), "{stat}");
    }
}
