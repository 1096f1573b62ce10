use proptest::prelude::*;
use skein_core::decider::{check_condition4, decide, parse_certificate, verify_certificate, write_certificate, VerifyOptions};
use skein_core::graph::Multigraph;
use skein_core::miner::default_patterns;

fn graph() -> impl Strategy<Value = Multigraph> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=8).prop_map(move |edges| Multigraph::from_edges(n, &edges))
    })
}

fn relabel(g: &Multigraph, perm: &[usize]) -> Multigraph {
    let edges: Vec<_> = g.edges().iter().rev().map(|&(a, b)| (perm[a], perm[b])).collect();
    Multigraph::from_edges(g.vertex_count(), &edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn certificates_verify_and_round_trip(g in graph()) {
        let patterns = default_patterns();
        let d = decide(&g, &patterns, &VerifyOptions::default()).unwrap();
        prop_assert_eq!(d.accepted, check_condition4(&g).accepts());
        let text = write_certificate(&d.certificate);
        let back = parse_certificate(&text).unwrap();
        prop_assert_eq!(&back, &d.certificate);
        prop_assert!(verify_certificate(&g, &back));
    }

    #[test]
    fn verdict_ignores_labels(g in graph(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((seed as usize) % n);
        let patterns = default_patterns();
        let a = decide(&g, &patterns, &VerifyOptions::default()).unwrap().accepted;
        let b = decide(&relabel(&g, &perm), &patterns, &VerifyOptions::default()).unwrap().accepted;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn subdivision_and_pendants_keep_verdict(g in graph(), pick in any::<usize>()) {
        let patterns = default_patterns();
        let base = decide(&g, &patterns, &VerifyOptions::default()).unwrap().accepted;
        let (p, _, _) = g.add_pendant(pick % g.vertex_count());
        prop_assert_eq!(decide(&p, &patterns, &VerifyOptions::default()).unwrap().accepted, base);
        if g.edge_count() > 0 {
            let (s, _, _) = g.subdivide(pick % g.edge_count());
            prop_assert_eq!(decide(&s, &patterns, &VerifyOptions::default()).unwrap().accepted, base);
        }
    }
}

#[test]
fn doubled_theta_edges_carry_valid_certificates() {
    // a theta with branch paths of lengths a, b, c; doubling one edge
    let patterns = default_patterns();
    for a in 1..=3usize {
        for b in a..=3 {
            for c in b..=3 {
                let mut g = Multigraph::new(2);
                for len in [a, b, c] {
                    let mut prev = 0;
                    for _ in 1..len {
                        let v = g.add_vertex();
                        g.add_edge(prev, v);
                        prev = v;
                    }
                    g.add_edge(prev, 1);
                }
                for e in 0..g.edge_count() {
                    let mut h = g.clone();
                    let (u, v) = g.endpoints(e);
                    h.add_edge(u, v);
                    let d = decide(&h, &patterns, &VerifyOptions::default()).unwrap();
                    assert!(verify_certificate(&h, &d.certificate), "theta {a} {b} {c} edge {e}");
                }
            }
        }
    }
}
