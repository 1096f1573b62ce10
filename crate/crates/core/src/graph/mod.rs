//! Multigraphs with loops and parallel edges.
//!
//! Vertices are `0..n`. Edges are stored in id order; the id of an edge is
//! its index in that list. Endpoints are kept normalized as `(min, max)`, so
//! a loop is an edge `(v, v)`.

mod blocks;
mod canon;
mod embed;
mod enumerate;
pub mod io;
mod reduce;

pub use blocks::{blocks, classify_block, BlockKind, Blocks};
pub use canon::{canonical_form, is_isomorphic, CanonicalCode};
pub use embed::{contains_subdivision, is_series_parallel, Embedding, Expansion, Pattern};
pub use enumerate::{enumerate_connected, enumerate_graphs, enumerate_shard, EnumerationBounds, GraphClass};
pub(crate) use reduce::is_reduced;
pub use reduce::{reduce, reduce_with, ReductionLog, ReductionStep};

use std::fmt;

pub type Vertex = usize;
pub type EdgeId = usize;

/// An undirected multigraph. Loops and parallel edges are ordinary edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Multigraph {
    /// Graph on `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    /// Build from an edge list. Panics if an endpoint is out of range.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Two vertices joined by `k` parallel links.
    pub fn skein(k: usize) -> Self {
        Self::from_edges(2, &vec![(0, 1); k])
    }

    pub fn cycle(len: usize) -> Self {
        match len {
            0 => Self::new(0),
            1 => Self::from_edges(1, &[(0, 0)]),
            _ => Self::from_edges(len, &(0..len).map(|i| (i, (i + 1) % len)).collect::<Vec<_>>()),
        }
    }

    pub fn path(len: usize) -> Self {
        Self::from_edges(len + 1, &(0..len).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> EdgeId {
        assert!(u < self.n && v < self.n, "endpoint out of range: ({u}, {v}) with n = {}", self.n);
        self.edges.push((u.min(v), u.max(v)));
        self.edges.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    /// The endpoint of `e` opposite to `v` (itself for a loop).
    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn loop_count(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// Incident edge ids per vertex; a loop appears once in its vertex's list.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(e);
            if a != b {
                inc[b].push(e);
            }
        }
        inc
    }

    /// True when there are no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(a, b)| a != b && seen.insert((a, b)))
    }

    /// Connected classes of vertices, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut uf = UnionFind::new(self.n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut classes: Vec<Vec<Vertex>> = Vec::new();
        let mut index = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = uf.find(v);
            if index[r] == usize::MAX {
                index[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[index[r]].push(v);
        }
        classes
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph formed by the given edges and the vertices they touch.
    /// Returns the subgraph together with its vertex map and edge map back
    /// into `self`.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> (Multigraph, Vec<Vertex>, Vec<EdgeId>) {
        let mut vmap = Vec::new();
        let mut index = vec![usize::MAX; self.n];
        let mut sub = Multigraph::new(0);
        let mut emap = Vec::with_capacity(edges.len());
        for &e in edges {
            let (a, b) = self.edges[e];
            for x in [a, b] {
                if index[x] == usize::MAX {
                    index[x] = sub.add_vertex();
                    vmap.push(x);
                }
            }
            sub.add_edge(index[a], index[b]);
            emap.push(e);
        }
        (sub, vmap, emap)
    }

    /// Subgraph induced on a vertex set, keeping vertex order. Returns the
    /// subgraph and the edge map back into `self`.
    pub fn induced(&self, vertices: &[Vertex]) -> (Multigraph, Vec<EdgeId>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Multigraph::new(vertices.len());
        let mut emap = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if index[a] != usize::MAX && index[b] != usize::MAX {
                sub.add_edge(index[a], index[b]);
                emap.push(e);
            }
        }
        (sub, emap)
    }

    /// Delete an edge. Later edge ids shift down by one.
    pub fn delete_edge(&self, e: EdgeId) -> Multigraph {
        let mut g = self.clone();
        g.edges.remove(e);
        g
    }

    /// Contract a link: its larger endpoint is merged into the smaller one
    /// and later vertex ids shift down. Edges parallel to `e` become loops.
    /// Edge ids after `e` shift down by one.
    pub fn contract_edge(&self, e: EdgeId) -> Multigraph {
        let (keep, gone) = self.edges[e];
        assert_ne!(keep, gone, "contracting a loop");
        let relabel = |x: Vertex| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let mut g = Multigraph::new(self.n - 1);
        for (f, &(a, b)) in self.edges.iter().enumerate() {
            if f != e {
                g.add_edge(relabel(a), relabel(b));
            }
        }
        g
    }

    /// Insert a new vertex of degree two into `e`. Edge `e` keeps its id and
    /// now ends at the new vertex; the second half is appended as a new edge.
    pub fn subdivide(&self, e: EdgeId) -> (Multigraph, Vertex, EdgeId) {
        let mut g = self.clone();
        let (a, b) = g.edges[e];
        let w = g.add_vertex();
        g.edges[e] = (a.min(w), a.max(w));
        let f = g.add_edge(w, b);
        (g, w, f)
    }

    /// Attach a new degree-one vertex to `v`.
    pub fn add_pendant(&self, v: Vertex) -> (Multigraph, Vertex, EdgeId) {
        let mut g = self.clone();
        let w = g.add_vertex();
        let f = g.add_edge(v, w);
        (g, w, f)
    }

    /// Drop vertices with no incident edges, compacting vertex ids.
    pub fn without_isolated(&self) -> Multigraph {
        let deg = self.degrees();
        let keep: Vec<Vertex> = (0..self.n).filter(|&v| deg[v] > 0).collect();
        self.induced(&keep).0
    }

    /// Disjoint union; vertices and edges of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = self.clone();
        g.n += other.n;
        g.edges
            .extend(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        g
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "]")
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut c: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
        c.sort();
        c
    }

    #[test]
    fn components_examples() {
        let tri = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(tri.components(), vec![vec![0, 1, 2]]);

        let two = Multigraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(sorted(two.components()), vec![vec![0, 1], vec![2, 3]]);

        let lp = Multigraph::from_edges(2, &[(0, 0)]);
        assert_eq!(sorted(lp.components()), vec![vec![0], vec![1]]);
    }

    #[test]
    fn degree_counts_loops_twice() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1), (0, 1)]);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.degrees(), vec![4, 2]);
        assert_eq!(g.loop_count(0), 1);
    }

    #[test]
    fn contraction_of_parallel_pair_makes_loop() {
        let digon = Multigraph::skein(2);
        let c = digon.contract_edge(0);
        assert_eq!(c, Multigraph::from_edges(1, &[(0, 0)]));
    }

    #[test]
    fn subdivide_loop_gives_digon() {
        let g = Multigraph::from_edges(1, &[(0, 0)]);
        let (h, w, f) = g.subdivide(0);
        assert_eq!(w, 1);
        assert_eq!(f, 1);
        assert_eq!(h.edges(), &[(0, 1), (0, 1)]);
    }

    #[test]
    fn edge_subgraph_maps() {
        let g = Multigraph::from_edges(4, &[(0, 1), (2, 3), (1, 2)]);
        let (sub, vmap, emap) = g.edge_subgraph(&[1, 2]);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(vmap, vec![2, 3, 1]);
        assert_eq!(emap, vec![1, 2]);
        assert_eq!(sub.edges(), &[(0, 1), (0, 2)]);
    }
}
