//! Property suites over random instances.
//!
//! Invariants here are stated against small random networks rather than
//! fixtures: training shape, recall clamp stability, prefix/order
//! equivalence, single-sweep convergence, replay soundness of emitted
//! generators, canonical-orbit behavior, and agreement between the
//! state census and per-state storage tests.

use proptest::prelude::*;

use memgen_core::{
    canonicalize, find_one_bit_generators, fixed_point_census, local_spread,
    minimal_prefix_generator, one_bit_capacity, ordered_recall, recall, seed_first_ascending,
    sgn, state_from_code, BipolarVector, Fragment, InterconnectionGraph, MemorySet, Sign,
    SpreadMatrix, StateClass, UpdateOrder, WeightMatrix,
};

fn sign_of(b: bool) -> Sign {
    if b {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn vector(bits: &[bool]) -> BipolarVector {
    BipolarVector::new(bits.iter().map(|&b| sign_of(b)).collect()).unwrap()
}

/// A memory set of m patterns over n neurons.
fn memory_set(max_n: usize, max_m: usize) -> impl Strategy<Value = MemorySet> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), 1..=max_m)
            .prop_map(|rows| MemorySet::new(rows.iter().map(|r| vector(r)).collect()).unwrap())
    })
}

/// A memory set plus a prefix fragment size and values.
fn set_with_prefix(max_n: usize) -> impl Strategy<Value = (MemorySet, Vec<bool>)> {
    memory_set(max_n, 4).prop_flat_map(|set| {
        let n = set.n();
        (Just(set), prop::collection::vec(any::<bool>(), 1..=n))
    })
}

/// A memory set plus a full random update order and seed values.
fn set_with_order(max_n: usize) -> impl Strategy<Value = (MemorySet, Vec<usize>, usize, Vec<bool>)> {
    memory_set(max_n, 4).prop_flat_map(|set| {
        let n = set.n();
        (
            Just(set),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            1..=n,
        )
            .prop_flat_map(|(set, order, k)| {
                (
                    Just(set),
                    Just(order),
                    Just(k),
                    prop::collection::vec(any::<bool>(), k),
                )
            })
    })
}

proptest! {
    #[test]
    fn training_is_symmetric_zero_diagonal_and_bounded(set in memory_set(10, 6)) {
        let t = WeightMatrix::train(&set);
        let m = set.count() as i64;
        for i in 0..set.n() {
            prop_assert_eq!(t.get(i, i), 0);
            for j in 0..set.n() {
                prop_assert_eq!(t.get(i, j), t.get(j, i));
                prop_assert!(t.get(i, j).abs() <= m);
            }
        }
    }

    #[test]
    fn a_single_memory_is_stored_when_n_is_at_least_two(
        bits in prop::collection::vec(any::<bool>(), 2..=10)
    ) {
        let memory = vector(&bits);
        let set = MemorySet::new(vec![memory.clone()]).unwrap();
        let t = WeightMatrix::train(&set);
        prop_assert!(t.is_stored(&memory).unwrap());
    }

    #[test]
    fn decomposition_reconstructs_the_weight_matrix(set in memory_set(8, 4)) {
        let t = WeightMatrix::train(&set);
        let b = SpreadMatrix::decompose(&t);
        prop_assert_eq!(b.reconstruct(), t);
        for i in 0..set.n() {
            for j in i..set.n() {
                prop_assert_eq!(b.get(i, j), 0);
            }
        }
    }

    #[test]
    fn recall_clamps_hold_and_one_sweep_is_a_fixed_point(
        (set, values) in set_with_prefix(8)
    ) {
        let t = WeightMatrix::train(&set);
        let b = SpreadMatrix::decompose(&t);
        let signs: Vec<Sign> = values.iter().map(|&v| sign_of(v)).collect();
        let fragment = Fragment::prefix(&signs, set.n()).unwrap();
        let (result, trace) = recall(&b, &fragment).unwrap();

        for &(idx, value) in fragment.assignments() {
            prop_assert_eq!(result.get(idx), value);
        }
        // Re-running the ascending schedule over the completed vector
        // changes nothing: each neuron already equals the sgn of its
        // lower-triangular input.
        for j in fragment.len()..set.n() {
            let input: i64 = (0..j).map(|i| b.get(j, i) * result.get(i).value()).sum();
            prop_assert_eq!(sgn(input), result.get(j));
        }
        // The trace grows one neuron per step and never revises one.
        prop_assert_eq!(trace.steps.len(), set.n() - fragment.len() + 1);
        for pair in trace.steps.windows(2) {
            let mut new_neurons = 0;
            for (before, after) in pair[0].iter().zip(&pair[1]) {
                match (before, after) {
                    (None, Some(_)) => new_neurons += 1,
                    (Some(a), Some(b)) => prop_assert_eq!(a, b),
                    (None, None) => {}
                    (Some(_), None) => prop_assert!(false, "neuron lost its value"),
                }
            }
            prop_assert_eq!(new_neurons, 1);
        }
    }

    #[test]
    fn full_fragments_recall_to_themselves((set, values) in set_with_prefix(8)) {
        let n = set.n();
        let t = WeightMatrix::train(&set);
        let b = SpreadMatrix::decompose(&t);
        let mut full = values.clone();
        full.resize(n, true);
        let signs: Vec<Sign> = full.iter().map(|&v| sign_of(v)).collect();
        let fragment = Fragment::prefix(&signs, n).unwrap();
        let (result, _) = recall(&b, &fragment).unwrap();
        prop_assert_eq!(result, vector(&full));
    }

    #[test]
    fn identity_order_matches_prefix_recall((set, values) in set_with_prefix(8)) {
        let t = WeightMatrix::train(&set);
        let b = SpreadMatrix::decompose(&t);
        let signs: Vec<Sign> = values.iter().map(|&v| sign_of(v)).collect();
        let fragment = Fragment::prefix(&signs, set.n()).unwrap();
        let order = UpdateOrder::identity(set.n(), fragment.len()).unwrap();
        let (plain, plain_trace) = recall(&b, &fragment).unwrap();
        let (ordered, ordered_trace) = ordered_recall(&t, &fragment, &order).unwrap();
        prop_assert_eq!(&plain, &ordered);
        prop_assert_eq!(plain_trace.steps, ordered_trace.steps);
    }

    #[test]
    fn ordered_recall_respects_every_clamp(
        (set, order, k, values) in set_with_order(8)
    ) {
        let t = WeightMatrix::train(&set);
        let assignments: Vec<(usize, Sign)> = order[..k]
            .iter()
            .zip(&values)
            .map(|(&idx, &v)| (idx, sign_of(v)))
            .collect();
        let seeds = Fragment::new(assignments.clone(), set.n()).unwrap();
        let update = UpdateOrder::new(order, k).unwrap();
        let (result, _) = ordered_recall(&t, &seeds, &update).unwrap();
        for (idx, value) in assignments {
            prop_assert_eq!(result.get(idx), value);
        }
    }

    #[test]
    fn minimal_prefix_generators_are_minimal_and_sound(set in memory_set(8, 4)) {
        let t = WeightMatrix::train(&set);
        let b = SpreadMatrix::decompose(&t);
        for memory in set.iter() {
            let record = minimal_prefix_generator(&b, memory).unwrap();
            let (replayed, _) = ordered_recall(&t, &record.fragment, &record.order).unwrap();
            prop_assert_eq!(&replayed, memory);
            let k = record.fragment.len();
            if k > 1 {
                let shorter = Fragment::prefix_of(memory, k - 1).unwrap();
                let (result, _) = recall(&b, &shorter).unwrap();
                prop_assert_ne!(&result, memory);
            }
            prop_assert_eq!(record.proper, k < set.n());
        }
    }

    #[test]
    fn one_bit_generators_replay_to_their_targets(set in memory_set(5, 3)) {
        let t = WeightMatrix::train(&set);
        for memory in set.iter() {
            for record in find_one_bit_generators(&t, memory, 5).unwrap() {
                let (replayed, _) = ordered_recall(&t, &record.fragment, &record.order).unwrap();
                prop_assert_eq!(&replayed, memory);
            }
        }
    }

    #[test]
    fn capacity_respects_the_counting_bound(set in memory_set(8, 6)) {
        let t = WeightMatrix::train(&set);
        let report = one_bit_capacity(&t, &set, seed_first_ascending).unwrap();
        prop_assert_eq!(report.bound, 2 * set.n());
        prop_assert!(report.distinct_count <= report.bound);
        prop_assert_eq!(report.entries.len(), 2 * set.n());
        for entry in &report.entries {
            if let StateClass::Stored { memory } = entry.class {
                prop_assert_eq!(&entry.result, set.get(memory));
                prop_assert!(t.is_stored(&entry.result).unwrap());
            }
        }
    }

    #[test]
    fn canonicalization_is_idempotent_and_orbit_invariant(
        bits in prop::collection::vec(any::<bool>(), 1..=10),
        shift in 0usize..10,
        flip in any::<bool>(),
    ) {
        let v = vector(&bits);
        let canon = canonicalize(&v);
        prop_assert_eq!(canonicalize(&canon), canon.clone());
        let moved = if flip {
            v.complement().cyclic_shift(shift % v.len())
        } else {
            v.cyclic_shift(shift % v.len())
        };
        prop_assert_eq!(canonicalize(&moved), canon);
    }

    #[test]
    fn census_agrees_with_per_state_storage_tests(set in memory_set(6, 4)) {
        let n = set.n();
        let t = WeightMatrix::train(&set);
        let census = fixed_point_census(&t, &set, 20).unwrap();
        let mut fixed = 0usize;
        for code in 0..(1u64 << n) {
            let state = state_from_code(code, n);
            let stored = t.is_stored(&state).unwrap();
            let in_census = census.stored.contains(&state)
                || census.complements.contains(&state)
                || census.spurious.contains(&state);
            prop_assert_eq!(stored, in_census);
            fixed += usize::from(stored);
        }
        prop_assert_eq!(fixed, census.fixed_point_count());
        for memory in set.iter() {
            let fails = census.nonfixed_trained.contains(memory);
            prop_assert_eq!(fails, !t.is_stored(memory).unwrap());
        }
    }

    #[test]
    fn graph_round_trips_the_off_diagonal(set in memory_set(8, 4)) {
        let t = WeightMatrix::train(&set);
        let graph = InterconnectionGraph::build(&t);
        let n = set.n();
        for i in 0..n {
            for j in (i + 1)..n {
                let weight = graph
                    .edges()
                    .iter()
                    .find(|e| e.a == i && e.b == j)
                    .map_or(0, |e| e.weight);
                prop_assert_eq!(weight, t.get(i, j));
                if weight != 0 {
                    prop_assert_eq!(graph.are_adjacent(i, j), true);
                }
            }
        }
    }

    #[test]
    fn spreads_are_deterministic_and_graph_local(
        set in memory_set(8, 4),
        seed_raw in 0usize..8,
        size_raw in 0usize..8,
        value in any::<bool>(),
    ) {
        let n = set.n();
        let t = WeightMatrix::train(&set);
        let graph = InterconnectionGraph::build(&t);
        let seed = seed_raw % n;
        let size = 1 + size_raw % n;
        let value = sign_of(value);
        let first = local_spread(&t, seed, value, size).unwrap();
        let second = local_spread(&t, seed, value, size).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(first.visit_order[0], seed);
        prop_assert_eq!(first.fragment.value_at(seed), Some(value));
        for (pos, &j) in first.visit_order.iter().enumerate().skip(1) {
            prop_assert!(
                first.visit_order[..pos].iter().any(|&i| graph.are_adjacent(i, j)),
                "activation of neuron {} had no active graph neighbor", j + 1
            );
        }
        prop_assert_eq!(first.stalled, first.visit_order.len() < size);
    }
}
