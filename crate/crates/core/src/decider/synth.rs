//! Build a signed graph whose frame matroid equals `B(g)`.

use crate::graph::{EdgeId, Multigraph, ReductionStep, Vertex};
use crate::signed::{Sign, SignedGraph};

use super::condition4::{BlockEntry, Condition4Report};

/// Signed graph on the vertices of `g` together with the edge map from the
/// input graph. `bijection[e]` is the witness edge standing for input edge
/// `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedWitness {
    pub signed: SignedGraph,
    pub bijection: Vec<EdgeId>,
}

/// Sign the reduced graph so that every circle is negative, then undo the
/// reduction on the signed side. A 3-skein first trades one edge for a loop
/// at its clean endpoint and a 4-skein trades two, one loop per end. `None`
/// if the report rejects.
pub(crate) fn synthesize(g: &Multigraph, report: &Condition4Report) -> Option<SignedWitness> {
    if !report.accepts() {
        return None;
    }
    let reduced = &report.reduced;
    let log = &report.log;
    let mut ends: Vec<(Vertex, Vertex)> = reduced.edges().to_vec();
    let mut signs = vec![Sign::Positive; reduced.edge_count()];

    let sign_digon = |signs: &mut Vec<Sign>, pair: &[EdgeId]| {
        signs[pair[0]] = Sign::Positive;
        signs[pair[1]] = Sign::Negative;
    };

    for comp in &report.components {
        for block in &comp.blocks {
            match block {
                BlockEntry::Loop { edge, .. } => signs[*edge] = Sign::Negative,
                BlockEntry::Skein { ends: (a, b), edges, clean } => match edges.len() {
                    1 => {}
                    2 => sign_digon(&mut signs, edges),
                    3 => {
                        let c = clean.expect("accepted 3-skein has a clean endpoint");
                        ends[edges[2]] = (c, c);
                        signs[edges[2]] = Sign::Negative;
                        sign_digon(&mut signs, &edges[..2]);
                    }
                    4 => {
                        ends[edges[2]] = (*a, *a);
                        ends[edges[3]] = (*b, *b);
                        signs[edges[2]] = Sign::Negative;
                        signs[edges[3]] = Sign::Negative;
                        sign_digon(&mut signs, &edges[..2]);
                    }
                    _ => unreachable!("accepted skein with more than four edges"),
                },
                BlockEntry::Cycle { edges } => signs[edges[0]] = Sign::Negative,
                BlockEntry::Other { .. } => unreachable!("accepted component with a general block"),
            }
        }
    }

    // lift to input ids, then replay the reduction in reverse
    let mut lifted: Vec<Option<(Vertex, Vertex)>> = vec![None; g.edge_count()];
    let mut lifted_signs = vec![Sign::Positive; g.edge_count()];
    for (e, &(a, b)) in ends.iter().enumerate() {
        lifted[log.edge_map[e]] = Some((log.vertex_map[a], log.vertex_map[b]));
        lifted_signs[log.edge_map[e]] = signs[e];
    }
    for step in log.steps.iter().rev() {
        match *step {
            ReductionStep::PendantAdded { anchor, vertex, edge } => {
                lifted[edge] = Some((anchor, vertex));
                lifted_signs[edge] = Sign::Positive;
            }
            ReductionStep::EdgeSplit { edge, keep, vertex, new_edge } => {
                let (a, b) = lifted[edge].expect("split of a missing edge");
                // a loop in the witness is split at its own vertex
                let (near, far) = if a == b {
                    (a, a)
                } else if a == keep {
                    (a, b)
                } else {
                    (b, a)
                };
                lifted[edge] = Some((near, vertex));
                lifted[new_edge] = Some((vertex, far));
                lifted_signs[new_edge] = Sign::Positive;
            }
        }
    }

    let mut witness = Multigraph::new(g.vertex_count());
    for e in &lifted {
        let (a, b) = e.expect("edge missing after replay");
        witness.add_edge(a, b);
    }
    Some(SignedWitness {
        signed: SignedGraph::new(witness, lifted_signs),
        bijection: (0..g.edge_count()).collect(),
    })
}
