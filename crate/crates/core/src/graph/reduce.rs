//! Pendant deletion and series contraction down to the reduced graph.

use std::collections::BTreeSet;

use rand::Rng;

use super::{EdgeId, Multigraph, Vertex};

/// One reduction step, recorded with the ids of the original graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// `vertex` had degree one and was removed along with `edge`, which
    /// joined it to `anchor`.
    PendantAdded { anchor: Vertex, vertex: Vertex, edge: EdgeId },
    /// `vertex` was a loopless degree-two vertex. `new_edge` was contracted
    /// and `edge` now runs from `keep` to the far end of `new_edge`.
    /// Undoing the step splits `edge` at `vertex`: `edge` becomes
    /// `keep`-`vertex` and `new_edge` becomes `vertex`-far end.
    EdgeSplit { edge: EdgeId, keep: Vertex, vertex: Vertex, new_edge: EdgeId },
}

/// How a reduced graph relates to the graph it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionLog {
    /// Steps in the order they were applied.
    pub steps: Vec<ReductionStep>,
    /// Reduced vertex id -> original vertex id.
    pub vertex_map: Vec<Vertex>,
    /// Reduced edge id -> original edge id.
    pub edge_map: Vec<EdgeId>,
    pub original_vertices: usize,
    pub original_edges: usize,
}

impl ReductionLog {
    /// Endpoints of the reduced graph's edges expressed in original ids,
    /// indexed by original edge id (`None` for edges removed by reduction).
    pub fn lift(&self, reduced: &Multigraph) -> Vec<Option<(Vertex, Vertex)>> {
        let mut ends = vec![None; self.original_edges];
        for (e, &(a, b)) in reduced.edges().iter().enumerate() {
            ends[self.edge_map[e]] = Some((self.vertex_map[a], self.vertex_map[b]));
        }
        ends
    }

    /// Undo every step against `reduced`, rebuilding the input graph with its
    /// original vertex and edge ids.
    pub fn replay(&self, reduced: &Multigraph) -> Multigraph {
        let mut ends = self.lift(reduced);
        for step in self.steps.iter().rev() {
            match *step {
                ReductionStep::PendantAdded { anchor, vertex, edge } => {
                    ends[edge] = Some((anchor, vertex));
                }
                ReductionStep::EdgeSplit { edge, keep, vertex, new_edge } => {
                    let (a, b) = ends[edge].expect("split of a missing edge");
                    let far = if a == keep { b } else { a };
                    ends[edge] = Some((keep, vertex));
                    ends[new_edge] = Some((vertex, far));
                }
            }
        }
        let mut g = Multigraph::new(self.original_vertices);
        for e in ends {
            let (a, b) = e.expect("edge missing after replay");
            g.add_edge(a, b);
        }
        g
    }
}

/// Reduce deterministically: always the smallest reducible vertex, and the
/// lower-id edge survives a series contraction.
pub fn reduce(g: &Multigraph) -> (Multigraph, ReductionLog) {
    reduce_by(g, |_| 0)
}

/// Reduce choosing the next reducible vertex and the surviving series edge
/// at random. The result is isomorphic to [`reduce`]'s.
pub fn reduce_with<R: Rng + ?Sized>(g: &Multigraph, rng: &mut R) -> (Multigraph, ReductionLog) {
    reduce_by(g, |k| rng.gen_range(0..k))
}

fn reduce_by(g: &Multigraph, mut pick: impl FnMut(usize) -> usize) -> (Multigraph, ReductionLog) {
    let n = g.vertex_count();
    let mut ends: Vec<Option<(Vertex, Vertex)>> = g.edges().iter().copied().map(Some).collect();
    let mut inc: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); n];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        inc[a].insert(e);
        inc[b].insert(e);
    }
    let mut alive = vec![true; n];
    let mut steps = Vec::new();

    let degree = |inc: &[BTreeSet<EdgeId>], ends: &[Option<(Vertex, Vertex)>], v: Vertex| {
        inc[v]
            .iter()
            .map(|&e| match ends[e] {
                Some((a, b)) if a == b => 2,
                _ => 1,
            })
            .sum::<usize>()
    };

    loop {
        let candidates: Vec<Vertex> = (0..n)
            .filter(|&v| alive[v])
            .filter(|&v| {
                let d = degree(&inc, &ends, v);
                d == 1 || (d == 2 && inc[v].len() == 2)
            })
            .collect();
        if candidates.is_empty() {
            break;
        }
        let v = candidates[pick(candidates.len())];
        let incident: Vec<EdgeId> = inc[v].iter().copied().collect();
        let far = |e: EdgeId| {
            let (a, b) = ends[e].unwrap();
            if a == v {
                b
            } else {
                a
            }
        };
        match incident[..] {
            [e] => {
                let anchor = far(e);
                steps.push(ReductionStep::PendantAdded { anchor, vertex: v, edge: e });
                inc[anchor].remove(&e);
                ends[e] = None;
            }
            [e1, e2] => {
                let (edge, gone) = if pick(2) == 0 { (e1, e2) } else { (e2, e1) };
                let keep = far(edge);
                let other = far(gone);
                steps.push(ReductionStep::EdgeSplit { edge, keep, vertex: v, new_edge: gone });
                inc[other].remove(&gone);
                inc[keep].remove(&edge);
                ends[gone] = None;
                ends[edge] = Some((keep.min(other), keep.max(other)));
                inc[keep].insert(edge);
                inc[other].insert(edge);
            }
            _ => unreachable!("candidate with unexpected incidence"),
        }
        inc[v].clear();
        alive[v] = false;
    }

    let vertex_map: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in vertex_map.iter().enumerate() {
        index[v] = i;
    }
    let mut reduced = Multigraph::new(vertex_map.len());
    let mut edge_map = Vec::new();
    for (e, end) in ends.iter().enumerate() {
        if let Some((a, b)) = *end {
            reduced.add_edge(index[a], index[b]);
            edge_map.push(e);
        }
    }
    let log = ReductionLog {
        steps,
        vertex_map,
        edge_map,
        original_vertices: n,
        original_edges: g.edge_count(),
    };
    (reduced, log)
}

/// True when `g` has no degree-one vertex and no loopless degree-two vertex.
pub(crate) fn is_reduced(g: &Multigraph) -> bool {
    let deg = g.degrees();
    (0..g.vertex_count()).all(|v| deg[v] != 1 && !(deg[v] == 2 && g.loop_count(v) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn path_reduces_to_single_vertex() {
        let (r, log) = reduce(&Multigraph::path(2));
        assert!(is_reduced(&r));
        assert_eq!((r.vertex_count(), r.edge_count()), (1, 0));
        assert_eq!(log.replay(&r), Multigraph::path(2));
    }

    #[test]
    fn path_series_step_gives_single_edge() {
        // only the middle vertex is eligible for the series rule
        let g = Multigraph::path(2);
        let mut steps = 0;
        let (_, log) = reduce_by(&g, |k| {
            steps += 1;
            if steps == 1 {
                1.min(k - 1)
            } else {
                0
            }
        });
        assert!(matches!(log.steps[0], ReductionStep::EdgeSplit { vertex: 1, .. }));
        // suppressing the middle vertex leaves a single edge, which then
        // goes by pendant deletion
        assert!(matches!(log.steps[1], ReductionStep::PendantAdded { .. }));
    }

    #[test]
    fn digon_reduces_to_loop() {
        let (r, _) = reduce(&Multigraph::skein(2));
        assert_eq!(r, Multigraph::from_edges(1, &[(0, 0)]));
    }

    #[test]
    fn star_reduces_to_bare_vertex() {
        let star = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let (r, log) = reduce(&star);
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.edge_count(), 0);
        assert_eq!(log.replay(&r), star);
    }

    #[test]
    fn cycle_reduces_to_loop() {
        let (r, log) = reduce(&Multigraph::cycle(5));
        assert_eq!(r, Multigraph::from_edges(1, &[(0, 0)]));
        assert_eq!(log.replay(&r), Multigraph::cycle(5));
    }

    #[test]
    fn looped_degree_two_vertex_is_kept() {
        let g = Multigraph::from_edges(1, &[(0, 0)]);
        let (r, log) = reduce(&g);
        assert_eq!(r, g);
        assert!(log.steps.is_empty());
    }

    #[test]
    fn theta_reduces_to_three_skein() {
        // paths of lengths 1, 2, 3 between 0 and 1
        let g = Multigraph::from_edges(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]);
        let (r, log) = reduce(&g);
        assert!(is_isomorphic(&r, &Multigraph::skein(3)));
        assert_eq!(log.replay(&r), g);
    }

    #[test]
    fn random_orders_agree_and_replay() {
        let g = Multigraph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 4), (0, 5), (5, 6), (1, 1)],
        );
        let (base, _) = reduce(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (r, log) = reduce_with(&g, &mut rng);
            assert!(is_isomorphic(&r, &base));
            assert_eq!(log.replay(&r), g);
        }
    }
}
