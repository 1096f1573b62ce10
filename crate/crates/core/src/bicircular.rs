//! The bicircular matroid: a set of edges is independent when every
//! connected piece of the subgraph it spans has at most one cycle, i.e. no
//! more edges than vertices.

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{reduce, EdgeId, Multigraph};
use crate::matroid::OracleMatroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircuitKind {
    /// Subdivided 3-skein.
    Theta,
    /// Two cycles sharing exactly one vertex.
    TightHandcuff,
    /// Two disjoint cycles joined by a path.
    LooseHandcuff,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BicircularError {
    #[error("edge set {0:?} is not a bicircular circuit")]
    NotACircuit(Vec<EdgeId>),
}

/// Union-find carrying a vertex count and an edge count per class.
struct Census {
    parent: Vec<usize>,
    verts: Vec<usize>,
    edges: Vec<usize>,
}

impl Census {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), verts: vec![1; n], edges: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Add an edge; returns the root of its class.
    fn add(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.edges[ra] += 1;
            ra
        } else {
            let (big, small) = if self.verts[ra] >= self.verts[rb] { (ra, rb) } else { (rb, ra) };
            self.parent[small] = big;
            self.verts[big] += self.verts[small];
            self.edges[big] += self.edges[small] + 1;
            big
        }
    }
}

/// Independence in `B(g)`.
pub fn is_bicircular_independent(g: &Multigraph, set: &[EdgeId]) -> bool {
    let mut c = Census::new(g.vertex_count());
    set.iter().all(|&e| {
        let (a, b) = g.endpoints(e);
        let r = c.add(a, b);
        c.edges[r] <= c.verts[r]
    })
}

/// `B(g)` as an oracle matroid on the edge ids of `g`.
pub fn bicircular(g: &Multigraph) -> OracleMatroid {
    let g = Arc::new(g.clone());
    let labels = (0..g.edge_count()).map(|e| format!("e{e}")).collect();
    let inner = g.clone();
    OracleMatroid::new(0..g.edge_count(), move |a: &[EdgeId]| is_bicircular_independent(&inner, a))
        .with_labels(labels)
}

/// Closed-form rank: vertices touched minus the number of acyclic pieces.
pub fn bicircular_rank(g: &Multigraph, set: &[EdgeId]) -> usize {
    let mut c = Census::new(g.vertex_count());
    let mut touched = vec![false; g.vertex_count()];
    for &e in set {
        let (a, b) = g.endpoints(e);
        touched[a] = true;
        touched[b] = true;
        c.add(a, b);
    }
    let mut rank = 0;
    for v in 0..g.vertex_count() {
        if touched[v] && c.find(v) == v {
            // a tree has one fewer edge than vertices
            rank += if c.edges[v] >= c.verts[v] { c.verts[v] } else { c.verts[v] - 1 };
        }
    }
    rank
}

/// Which of the three circuit shapes an edge set is.
pub fn classify_circuit(g: &Multigraph, circuit: &[EdgeId]) -> Result<CircuitKind, BicircularError> {
    let not_circuit = || BicircularError::NotACircuit(circuit.to_vec());
    if circuit.is_empty() || is_bicircular_independent(g, circuit) {
        return Err(not_circuit());
    }
    for i in 0..circuit.len() {
        let mut rest = circuit.to_vec();
        rest.remove(i);
        if !is_bicircular_independent(g, &rest) {
            return Err(not_circuit());
        }
    }
    let (sub, _, _) = g.edge_subgraph(circuit);
    let (core, _) = reduce(&sub);
    let loops = (0..core.edge_count()).filter(|&e| core.is_loop(e)).count();
    match (core.vertex_count(), core.edge_count(), loops) {
        (2, 3, 0) => Ok(CircuitKind::Theta),
        (1, 2, 2) => Ok(CircuitKind::TightHandcuff),
        (2, 3, 2) => Ok(CircuitKind::LooseHandcuff),
        _ => Err(not_circuit()),
    }
}
