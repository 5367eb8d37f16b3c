//! Property-based invariants over random grounds, hypergraphs and sequences.

use cgh::patterns::{find_pattern, is_zigzag_sequence, PatternKind};
use cgh::search::{canonical_form, SymmetryGroup};
use cgh::{CyclicGround, Hypergraph};
use proptest::prelude::*;

fn ground_and_two_vertices() -> impl Strategy<Value = (u32, u32, u32)> {
    (2u32..=40).prop_flat_map(|n| (Just(n), 0..n, 0..n))
}

fn random_host(max_n: u32, r: u32) -> impl Strategy<Value = Hypergraph> {
    (r.max(2)..=max_n, 0u64..10_000, 0.2f64..0.8).prop_map(move |(n, seed, p)| {
        Hypergraph::random(n, r, p, true, seed).unwrap()
    })
}

proptest! {
    #[test]
    fn segment_lengths_complement((n, u, v) in ground_and_two_vertices()) {
        let g = CyclicGround::new(n).unwrap();
        let a = g.segment_len(u, v).unwrap();
        let b = g.segment_len(v, u).unwrap();
        if u == v {
            prop_assert_eq!(a, 1);
        } else {
            prop_assert_eq!(a + b, n + 2);
        }
        prop_assert_eq!(g.arc_length(u, v).unwrap(), g.arc_length(v, u).unwrap());
        prop_assert!(g.arc_length(u, v).unwrap() <= n / 2);
        prop_assert_eq!(g.arc_length(u, v).unwrap() == 0, u == v);
        prop_assert_eq!(g.segment(u, v).unwrap().len() as u32, a);
    }

    #[test]
    fn shadow_contains_every_subedge(h in random_host(8, 3)) {
        let shadow = h.shadow().unwrap();
        for e in h.edges() {
            for &v in e.vertices() {
                prop_assert!(shadow.contains(&e.without(v)));
            }
        }
        // And nothing else.
        for s in shadow.edges() {
            prop_assert!(h.edges().any(|e| s.vertices().iter().all(|&v| e.contains(v))));
        }
    }

    #[test]
    fn link_sizes_sum_to_degree_sum(h in random_host(9, 3)) {
        let total: usize = h.ground().vertices().map(|v| h.link(v).unwrap().len()).sum();
        prop_assert_eq!(total, 3 * h.len());
        for v in h.ground().vertices() {
            prop_assert_eq!(h.link(v).unwrap().len(), h.degree(v).unwrap());
        }
    }

    #[test]
    fn text_and_json_round_trips(h in random_host(10, 2)) {
        let text = h.to_text();
        let back = Hypergraph::parse(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(back.to_text(), text);

        let json = serde_json::to_string(&h).unwrap();
        let back: Hypergraph = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn zigzag_witnesses_are_tight_paths_with_zigzag_prefixes(h in random_host(8, 2)) {
        for k in 1..=3usize {
            if let Some(w) = find_pattern(&h, PatternKind::Zigzag, k).unwrap() {
                // Every window is an edge and every prefix stays a zigzag.
                for win in w.sequence.windows(2) {
                    prop_assert!(h.contains_set(win));
                }
                for len in 2..=w.sequence.len() {
                    prop_assert!(
                        is_zigzag_sequence(h.ground(), &w.sequence[..len], 2).unwrap()
                    );
                }
                // Monotone containment: shorter patterns exist too.
                for shorter in 1..k {
                    prop_assert!(find_pattern(&h, PatternKind::Zigzag, shorter).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_constant_on_cyclic_orbits(h in random_host(8, 2), shift in 0u32..8) {
        let n = h.n();
        let shift = shift % n;
        let rotated = Hypergraph::from_edges(
            h.ground(),
            h.r(),
            true,
            h.edges().map(|e| {
                e.vertices().iter().map(|&v| (v + shift) % n).collect::<Vec<_>>()
            }),
        )
        .unwrap();
        prop_assert_eq!(
            canonical_form(&h, SymmetryGroup::Cyclic).unwrap(),
            canonical_form(&rotated, SymmetryGroup::Cyclic).unwrap()
        );
    }

    #[test]
    fn lift_identities(h in random_host(8, 3), m in 1u32..=3) {
        let lifted = cgh::constructions::lift_plus(&h, m).unwrap();
        prop_assert_eq!(lifted.len(), m as usize * h.len());
        if !h.is_empty() {
            let expected = m as usize * h.shadow().unwrap().len() + h.len();
            prop_assert_eq!(lifted.shadow().unwrap().len(), expected);
        }
    }

    #[test]
    fn long_zigzags_contain_stacks_at_r2(h in random_host(8, 2)) {
        // Alternate edges of a (2k-1)-zigzag form a k-stack on the same
        // sequence.
        use cgh::patterns::PathWitness;
        for k in 2..=3usize {
            if let Some(w) = find_pattern(&h, PatternKind::Zigzag, 2 * k - 1).unwrap() {
                let stack = PathWitness {
                    kind: PatternKind::Stack,
                    k,
                    sequence: w.sequence.clone(),
                    edges: w.edges.iter().step_by(2).cloned().collect(),
                };
                prop_assert!(stack.check(&h, None).unwrap());
            }
        }
    }

    #[test]
    fn rotating_a_host_preserves_zigzag_freeness(h in random_host(7, 2), shift in 0u32..7) {
        let n = h.n();
        let shift = shift % n;
        let rotated = Hypergraph::from_edges(
            h.ground(),
            2,
            true,
            h.edges().map(|e| {
                e.vertices().iter().map(|&v| (v + shift) % n).collect::<Vec<_>>()
            }),
        )
        .unwrap();
        for k in 2..=3usize {
            prop_assert_eq!(
                find_pattern(&h, PatternKind::Zigzag, k).unwrap().is_some(),
                find_pattern(&rotated, PatternKind::Zigzag, k).unwrap().is_some()
            );
        }
    }
}
