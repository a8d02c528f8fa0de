//! Property tests for the structural invariants.

mod common;

use common::{exotic_spaces, registered_spaces};
use proptest::prelude::*;
use qgreedy::approx::{sigma, sigma_tilde};
use qgreedy::democracy::{dilation_remark_check, DemocracyTable};
use qgreedy::greedy::{greedy_ordering, greedy_set, greedy_split, project};
use qgreedy::verify::{check_theorem_1, estimate_k, theorem_1_trace};
use qgreedy::{IndexSet, SpaceSpec, SparseVector};

fn all_spaces() -> Vec<SpaceSpec> {
    registered_spaces()
        .into_iter()
        .chain(exotic_spaces())
        .map(|s| s.1)
        .collect()
}

fn space() -> impl Strategy<Value = SpaceSpec> {
    let spaces = all_spaces();
    (0..spaces.len()).prop_map(move |i| spaces[i].clone())
}

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![
        (-10.0..10.0f64).prop_filter("nonzero", |a| *a != 0.0),
        // exact ties exercise the tie-breaking rule
        prop::sample::select(vec![-1.0, 1.0, 0.5, -2.0]),
    ]
}

fn sparse(max_len: usize) -> impl Strategy<Value = SparseVector> {
    prop::collection::btree_map(1usize..40, coeff(), 0..=max_len)
        .prop_map(|m| SparseVector::from_pairs(m).unwrap())
}

fn nonzero_sparse(max_len: usize) -> impl Strategy<Value = SparseVector> {
    prop::collection::btree_map(1usize..40, coeff(), 1..=max_len)
        .prop_map(|m| SparseVector::from_pairs(m).unwrap())
}

fn le(a: f64, b: f64) -> bool {
    a <= b + 1e-9 * b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_coordinate_monotone(s in space(), x in sparse(14), shrink in prop::collection::vec(0.0..=1.0f64, 14)) {
        let y = SparseVector::from_pairs(x.iter().zip(&shrink).map(|((k, a), t)| (k, a * t))).unwrap();
        prop_assert!(le(s.norm(&y), s.norm(&x)));
    }

    #[test]
    fn norm_ignores_signs(s in space(), x in sparse(14), mask in any::<u64>()) {
        let flipped = x.with_signs(|k| mask >> (k % 64) & 1 == 1);
        prop_assert_eq!(s.norm(&flipped), s.norm(&x));
    }

    #[test]
    fn triangle_and_homogeneity(s in space(), x in sparse(10), y in sparse(10), t in -5.0..5.0f64) {
        prop_assert!(le(s.norm(&x.add(&y)), s.norm(&x) + s.norm(&y)));
        let scaled = s.norm(&x.scaled(t));
        let expect = t.abs() * s.norm(&x);
        prop_assert!((scaled - expect).abs() <= 1e-12 * expect.max(1.0));
    }

    #[test]
    fn rearrangement_invariant_within_leaves(x in sparse(10), shift in 1usize..20) {
        for (_, s) in registered_spaces() {
            // shifting every index by a multiple of the leaf count keeps leaves
            let step = s.leaf_count() * shift;
            let moved = SparseVector::from_pairs(x.iter().map(|(k, a)| (k + step, a))).unwrap();
            let (a, b) = (s.norm(&x), s.norm(&moved));
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        }
    }

    #[test]
    fn greedy_threshold_and_ordering(x in sparse(14), n in 0usize..16) {
        let order = greedy_ordering(&x);
        prop_assert!(order.rearranged.windows(2).all(|w| w[0] >= w[1]));
        let mut seen = order.pi.clone();
        seen.sort();
        prop_assert_eq!(seen, x.support().into_iter().collect::<Vec<_>>());
        for w in order.pi.windows(2) {
            if x.get(w[0]).abs() == x.get(w[1]).abs() {
                prop_assert!(w[0] < w[1]);
            }
        }
        let gamma = greedy_set(&x, n);
        let inside = gamma.iter().map(|&k| x.get(k).abs()).fold(f64::INFINITY, f64::min);
        let outside = x.iter().filter(|(k, _)| !gamma.contains(k)).map(|(_, a)| a.abs()).fold(0.0, f64::max);
        prop_assert!(gamma.is_empty() || inside >= outside);
        let (g, r) = greedy_split(&x, n);
        prop_assert_eq!(&g, &project(&x, &gamma));
        prop_assert_eq!(g.add(&r), x.clone());
        if n >= x.len() {
            prop_assert!(r.is_empty());
        }
    }

    #[test]
    fn projections_are_idempotent(x in sparse(12), set in prop::collection::btree_set(1usize..40, 0..12)) {
        let once = project(&x, &set);
        prop_assert_eq!(project(&once, &set), once);
    }

    #[test]
    fn greedy_is_contractive(s in space(), x in nonzero_sparse(12)) {
        prop_assert_eq!(estimate_k(&s, &[x]).unwrap(), 1.0);
    }

    #[test]
    fn sigma_is_nonincreasing(s in space(), x in sparse(9)) {
        let mut prev = s.norm(&x);
        prop_assert_eq!(sigma(&s, &x, 0).unwrap().value, prev);
        for n in 1..=x.len() + 1 {
            let cur = sigma(&s, &x, n).unwrap().value;
            prop_assert!(cur <= prev);
            prev = cur;
        }
        prop_assert_eq!(prev, 0.0);
    }

    #[test]
    fn sigma_witness_is_consistent(s in space(), x in sparse(9), n in 0usize..6) {
        let r = sigma_tilde(&s, &x, n).unwrap();
        prop_assert!(r.witness_set.len() <= n);
        prop_assert_eq!(r.value, s.norm(&x.sub(&r.witness_vector)));
        prop_assert_eq!(&r.witness_vector, &project(&x, &r.witness_set));
    }

    #[test]
    fn nested_indicators_are_monotone(s in space(), a in prop::collection::btree_set(1usize..30, 0..10), keep in any::<u32>()) {
        let b: IndexSet = a.iter().enumerate().filter(|(i, _)| keep >> i & 1 == 1).map(|(_, &k)| k).collect();
        prop_assert!(le(s.indicator_norm(b.iter().copied()), s.indicator_norm(a.iter().copied())));
    }

    #[test]
    fn theorem_1_holds_at_face_value(s in space(), x in nonzero_sparse(12), n in 1usize..9) {
        let table = DemocracyTable::closed_form(&s, 8);
        let r = check_theorem_1(&s, &x, n, 1.0, &table, 1.0).unwrap();
        prop_assert!(r.pass && r.slack_ratio <= 1.0, "{:?}", r);
    }

    #[test]
    fn trace_holds_for_arbitrary_approximants(
        s in space(),
        x in nonzero_sparse(10),
        p in prop::collection::btree_map(1usize..30, coeff(), 1..=6),
    ) {
        let p_n = SparseVector::from_pairs(p).unwrap();
        let n = p_n.len();
        let table = DemocracyTable::closed_form(&s, 8);
        let tr = theorem_1_trace(&s, &x, n, &p_n, 1.0, &table, 1.0).unwrap();
        prop_assert!(tr.all_pass(), "{:?}", tr.steps);
    }
}

#[test]
fn democracy_table_invariants() {
    for space in all_spaces() {
        let t = DemocracyTable::closed_form(&space, 16);
        assert_eq!(t.mu[0], 1.0);
        for n in 0..16 {
            assert!(t.h_l[n] <= t.h_r[n]);
            if n > 0 {
                assert!(t.mu[n] >= t.mu[n - 1]);
                assert!(t.v[n] > t.v[n - 1]);
            }
        }
        for n in 1..=8 {
            assert!(t.h_r[2 * n - 1] <= 2.0 * t.h_r[n - 1] * (1.0 + 1e-12));
        }
        assert!(dilation_remark_check(&t.mu, &t.v).log_bound_holds);
    }
}
