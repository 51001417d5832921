//! Property tests for the graph layer, the walk engine against independent
//! oracles, and the text-format round trips.

mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use ctqw_core::{
    evolve_generic, evolve_segment, parse_circuit, parse_schedule, serialize_circuit,
    serialize_schedule, Checkpoint, Circuit, ComponentKind, GateOp, Graph, Schedule, Segment,
    StateVector, Time,
};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=8, any::<u64>()).prop_map(|(n, seed)| {
        let mut r = rng(seed);
        random_graph(n, 0.4, &mut r)
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_zero_one(g in arb_graph()) {
        let a = g.adjacency_matrix();
        for i in 0..g.n() {
            for j in 0..g.n() {
                prop_assert_eq!(a[(i, j)], a[(j, i)]);
                prop_assert!(a[(i, j)] == 0.0 || a[(i, j)] == 1.0);
            }
        }
    }

    #[test]
    fn components_partition_the_vertices(g in arb_graph()) {
        let comps = g.connected_components();
        let mut seen = vec![false; g.n()];
        for comp in &comps {
            for &v in comp {
                prop_assert!(!seen[v], "vertex in two components");
                seen[v] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        // No edges between distinct components.
        let owner: Vec<usize> = {
            let mut owner = vec![0; g.n()];
            for (k, comp) in comps.iter().enumerate() {
                for &v in comp {
                    owner[v] = k;
                }
            }
            owner
        };
        for (u, v) in g.edges() {
            prop_assert_eq!(owner[u], owner[v]);
        }
    }

    #[test]
    fn cycle4_pairs_are_distance_two(g in arb_graph()) {
        for comp in g.connected_components() {
            if let ComponentKind::Cycle4 { pairs } = g.classify_component(&comp) {
                let mut seen = Vec::new();
                for (a, b) in pairs {
                    prop_assert!(!g.has_edge(a, b), "antipodal pair is adjacent");
                    seen.push(a);
                    seen.push(b);
                }
                seen.sort_unstable();
                prop_assert_eq!(seen, comp);
            }
        }
    }

    #[test]
    fn evolution_is_unitary(g in arb_graph(), seed in any::<u64>(), t in 0.0..(4.0 * PI)) {
        let mut r = rng(seed);
        let state = random_state(g.n(), &mut r);
        let out = evolve_segment(&g, &state, t).unwrap();
        let norm: f64 = out.probabilities().iter().sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn segment_evolution_matches_whole_matrix_spectral(
        g in arb_graph(), seed in any::<u64>(), t in 0.0..(4.0 * PI)
    ) {
        let mut r = rng(seed);
        let state = random_state(g.n(), &mut r);
        let by_components = evolve_segment(&g, &state, t).unwrap();
        let whole = evolve_generic(&g.adjacency_matrix(), state.amplitudes(), t).unwrap();
        for (a, b) in by_components.amplitudes().iter().zip(&whole) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn semigroup_composition(
        g in arb_graph(), seed in any::<u64>(),
        t1 in 0.0..(2.0 * PI), t2 in 0.0..(2.0 * PI)
    ) {
        let mut r = rng(seed);
        let state = random_state(g.n(), &mut r);
        let direct = evolve_segment(&g, &state, t1 + t2).unwrap();
        let stepped = evolve_segment(&g, &evolve_segment(&g, &state, t1).unwrap(), t2).unwrap();
        for (a, b) in direct.amplitudes().iter().zip(stepped.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn spectral_evolution_matches_taylor_oracle(
        n in 1usize..=8, seed in any::<u64>(), t in 0.0..(2.0 * PI)
    ) {
        let mut r = rng(seed);
        // Random symmetric 0/1 matrix, loops anywhere (the generic engine
        // does not care about the graph-level loop convention).
        let mut a = ctqw_core::Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                if r.gen_bool(0.5) {
                    a[(i, j)] = 1.0;
                    a[(j, i)] = 1.0;
                }
            }
        }
        let state = random_state(n, &mut r);
        let engine = evolve_generic(&a, state.amplitudes(), t).unwrap();
        let oracle = cmat_apply(&expm_oracle(&a, t), state.amplitudes());
        for (x, y) in engine.iter().zip(&oracle) {
            prop_assert!((x - y).norm() < 1e-9);
        }
    }
}

/// Star-graph evolution from the center agrees with the independent oracle.
#[test]
fn star_graph_against_oracle() {
    let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)], []).unwrap();
    let a = star.adjacency_matrix();
    let state = StateVector::basis(5, 0);
    let engine = evolve_generic(&a, state.amplitudes(), 1.0).unwrap();
    let oracle = cmat_apply(&expm_oracle(&a, 1.0), state.amplitudes());
    for (x, y) in engine.iter().zip(&oracle) {
        assert!((x - y).norm() < 1e-12, "{x} vs {y}");
    }
}

/// Closed forms agree with spectral evolution on each tabulated shape.
#[test]
fn closed_forms_match_spectral_per_kind() {
    let mut r = rng(11);
    let p2 = Graph::new(2, [(0, 1)], []).unwrap();
    let c4 = Graph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)], []).unwrap();
    let k1 = Graph::empty(1);
    let k1_loop = Graph::new(1, [], [0]).unwrap();
    for g in [k1, k1_loop, p2, c4] {
        for _ in 0..200 {
            let t = r.gen_range(0.0..4.0 * PI);
            let state = random_state(g.n(), &mut r);
            let fast = evolve_segment(&g, &state, t).unwrap();
            let slow = evolve_generic(&g.adjacency_matrix(), state.amplitudes(), t).unwrap();
            for (a, b) in fast.amplitudes().iter().zip(&slow) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }
}

fn arb_time() -> impl Strategy<Value = Time> {
    prop_oneof![
        (0i64..=16, 1i64..=8).prop_map(|(p, q)| Time::pi_frac(p, q)),
        (0.0f64..10.0).prop_map(Time::real),
    ]
}

fn arb_schedule() -> impl Strategy<Value = Schedule> {
    (1usize..=6, any::<u64>(), proptest::collection::vec(arb_time(), 0..5)).prop_map(
        |(n, seed, durations)| {
            let mut r = rng(seed);
            let segments: Vec<Segment> = durations
                .iter()
                .map(|&duration| Segment {
                    graph: random_graph(n, 0.4, &mut r),
                    duration,
                })
                .collect();
            let total = segments
                .iter()
                .fold(Time::ZERO, |acc, s| acc + s.duration);
            let checkpoints = if segments.is_empty() {
                vec![]
            } else {
                vec![Checkpoint {
                    label: "mid".into(),
                    at: total,
                }]
            };
            Schedule::new(n, segments, checkpoints).unwrap()
        },
    )
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    let op = (0usize..9, 1usize..=3, 0i64..8, 1i64..=4).prop_map(|(kind, q, p, den)| {
        let target = q.min(3);
        match kind {
            0 => GateOp::X { target },
            1 => GateOp::Y { target },
            2 => GateOp::Z { target },
            3 => GateOp::H { target },
            4 => GateOp::HAlt { target },
            5 => GateOp::T { target },
            6 => GateOp::S { target },
            7 => GateOp::phase(Time::pi_frac(p, den), target),
            _ => {
                let control = if target == 1 { 2 } else { 1 };
                GateOp::Cnot {
                    control,
                    target,
                }
            }
        }
    });
    proptest::collection::vec(op, 0..6).prop_map(|ops| {
        let marks = if ops.len() > 2 { vec![2] } else { vec![] };
        Circuit::new(3, ops, marks)
    })
}

proptest! {
    #[test]
    fn schedule_text_round_trip(s in arb_schedule()) {
        let text = serialize_schedule(&s);
        let back = parse_schedule(&text).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn circuit_text_round_trip(c in arb_circuit()) {
        let text = serialize_circuit(&c);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(back, c);
    }
}
