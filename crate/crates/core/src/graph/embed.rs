//! Topological containment: does a host graph contain a subdivision of a
//! pattern as a subgraph?
//!
//! The search is exact. Pattern vertices are first mapped injectively onto
//! host vertices of at least the same degree, then pattern edges are routed
//! one at a time as internally disjoint host paths by depth-first search.
//! Parallel pattern edges and loops at a common vertex are interchangeable,
//! so their paths are forced into increasing order of first host edge.

use super::{EdgeId, Multigraph, Vertex};

/// A forbidden graph, optionally with a marked link standing for the pair
/// `{P, P / dotted}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub graph: Multigraph,
    pub dotted: Option<EdgeId>,
}

/// Which member of a pattern's pair an embedding realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expansion {
    Plain,
    Contracted,
}

impl Pattern {
    pub fn new(graph: Multigraph) -> Self {
        Self { graph, dotted: None }
    }

    /// Pattern whose dotted edge `e` may be contracted. `e` must be a link.
    pub fn with_dotted(graph: Multigraph, e: EdgeId) -> Self {
        assert!(!graph.is_loop(e), "dotted edge must be a link");
        Self { graph, dotted: Some(e) }
    }

    /// The concrete graph for one member of the pair, if it exists.
    pub fn expansion(&self, which: Expansion) -> Option<Multigraph> {
        match (which, self.dotted) {
            (Expansion::Plain, _) => Some(self.graph.clone()),
            (Expansion::Contracted, Some(e)) => Some(self.graph.contract_edge(e)),
            (Expansion::Contracted, None) => None,
        }
    }

    pub fn expansions(&self) -> Vec<(Expansion, Multigraph)> {
        [Expansion::Plain, Expansion::Contracted]
            .into_iter()
            .filter_map(|x| self.expansion(x).map(|g| (x, g)))
            .collect()
    }
}

/// A subdivision of a pattern expansion found inside a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub expansion: Expansion,
    /// Pattern vertex -> host vertex.
    pub branch: Vec<Vertex>,
    /// Pattern edge `(u, v)`, `u <= v` -> host edges in walk order from
    /// `branch[u]` to `branch[v]`.
    pub paths: Vec<Vec<EdgeId>>,
}

impl Embedding {
    /// Every host edge used, sorted.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut all: Vec<EdgeId> = self.paths.concat();
        all.sort_unstable();
        all
    }

    /// Host vertices visited by a path, in order, starting at `from`.
    fn walk(host: &Multigraph, from: Vertex, path: &[EdgeId]) -> Option<Vec<Vertex>> {
        let mut verts = vec![from];
        let mut cur = from;
        for &e in path {
            let (a, b) = *host.edges().get(e)?;
            cur = if a == cur {
                b
            } else if b == cur {
                a
            } else {
                return None;
            };
            verts.push(cur);
        }
        Some(verts)
    }

    /// Check the embedding against the host and the pattern expansion it
    /// claims to realize.
    pub fn validate(&self, host: &Multigraph, pattern: &Multigraph) -> bool {
        let n = host.vertex_count();
        if self.branch.len() != pattern.vertex_count() || self.paths.len() != pattern.edge_count() {
            return false;
        }
        let mut role = vec![0u8; n]; // 0 free, 1 branch, 2 internal
        for &b in &self.branch {
            if b >= n || role[b] != 0 {
                return false;
            }
            role[b] = 1;
        }
        let mut used = vec![false; host.edge_count()];
        for (pe, &(u, v)) in pattern.edges().iter().enumerate() {
            let path = &self.paths[pe];
            if path.is_empty() {
                return false;
            }
            let Some(verts) = Self::walk(host, self.branch[u], path) else {
                return false;
            };
            if *verts.last().unwrap() != self.branch[v] {
                return false;
            }
            for &e in path {
                if used[e] {
                    return false;
                }
                used[e] = true;
            }
            for &w in &verts[1..verts.len() - 1] {
                if role[w] != 0 {
                    return false;
                }
                role[w] = 2;
            }
        }
        true
    }

    /// The graph obtained by contracting every path to a single edge. Its
    /// vertices are the branch images in pattern order.
    pub fn model(&self, host: &Multigraph) -> Multigraph {
        let mut g = Multigraph::new(self.branch.len());
        for path in &self.paths {
            let first = path[0];
            let (a, b) = host.endpoints(first);
            // find which end the walk starts at by trying both
            let start = [a, b]
                .into_iter()
                .find(|&s| self.branch.contains(&s) && Self::walk(host, s, path).is_some())
                .expect("path does not start at a branch vertex");
            let end = *Self::walk(host, start, path).unwrap().last().unwrap();
            let pos = |x: Vertex| self.branch.iter().position(|&b| b == x).unwrap();
            g.add_edge(pos(start), pos(end));
        }
        g
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    Branch,
    Internal,
}

struct Search<'a> {
    host: &'a Multigraph,
    pat: &'a Multigraph,
    host_inc: Vec<Vec<EdgeId>>,
    host_deg: Vec<usize>,
    pat_deg: Vec<usize>,
    vertex_order: Vec<Vertex>,
    branch: Vec<Vertex>,
    role: Vec<Role>,
    edge_used: Vec<bool>,
    paths: Vec<Vec<EdgeId>>,
    // previous pattern edge in the same interchangeable class, if any
    sibling: Vec<Option<EdgeId>>,
}

impl Search<'_> {
    fn assign(&mut self, k: usize) -> bool {
        if k == self.vertex_order.len() {
            return self.route(0);
        }
        let x = self.vertex_order[k];
        for h in 0..self.host.vertex_count() {
            if self.role[h] != Role::Free || self.host_deg[h] < self.pat_deg[x] {
                continue;
            }
            self.role[h] = Role::Branch;
            self.branch[x] = h;
            if self.assign(k + 1) {
                return true;
            }
            self.role[h] = Role::Free;
        }
        false
    }

    fn key(path: &[EdgeId]) -> EdgeId {
        path[0]
    }

    fn route(&mut self, pe: usize) -> bool {
        if pe == self.pat.edge_count() {
            return true;
        }
        let (u, _) = self.pat.endpoints(pe);
        let start = self.branch[u];
        let mut path = Vec::new();
        self.extend(pe, start, &mut path)
    }

    fn accept(&mut self, pe: usize, path: &[EdgeId]) -> bool {
        let (u, v) = self.pat.endpoints(pe);
        if u == v && path.len() >= 2 && path[0] > *path.last().unwrap() {
            return false;
        }
        if let Some(prev) = self.sibling[pe] {
            if Self::key(path) <= Self::key(&self.paths[prev]) {
                return false;
            }
        }
        self.paths[pe] = path.to_vec();
        if self.route(pe + 1) {
            return true;
        }
        self.paths[pe].clear();
        false
    }

    fn extend(&mut self, pe: usize, cur: Vertex, path: &mut Vec<EdgeId>) -> bool {
        let (u, v) = self.pat.endpoints(pe);
        let target = self.branch[v];
        for i in 0..self.host_inc[cur].len() {
            let f = self.host_inc[cur][i];
            if self.edge_used[f] {
                continue;
            }
            if self.host.is_loop(f) {
                if u == v && path.is_empty() && cur == target {
                    self.edge_used[f] = true;
                    let ok = self.accept(pe, &[f]);
                    self.edge_used[f] = false;
                    if ok {
                        return true;
                    }
                }
                continue;
            }
            let w = self.host.other_end(f, cur);
            if w == target {
                path.push(f);
                self.edge_used[f] = true;
                let snapshot = path.clone();
                let ok = self.accept(pe, &snapshot);
                self.edge_used[f] = false;
                path.pop();
                if ok {
                    return true;
                }
            } else if self.role[w] == Role::Free {
                path.push(f);
                self.edge_used[f] = true;
                self.role[w] = Role::Internal;
                let ok = self.extend(pe, w, path);
                self.role[w] = Role::Free;
                self.edge_used[f] = false;
                path.pop();
                if ok {
                    return true;
                }
            }
        }
        false
    }
}

fn degree_dominated(pattern: &Multigraph, host: &Multigraph) -> bool {
    let (mut dp, mut dh) = (pattern.degrees(), host.degrees());
    dp.sort_unstable_by(|a, b| b.cmp(a));
    dh.sort_unstable_by(|a, b| b.cmp(a));
    dp.len() <= dh.len() && dp.iter().zip(&dh).all(|(p, h)| p <= h)
}

fn embed_graph(host: &Multigraph, pat: &Multigraph) -> Option<(Vec<Vertex>, Vec<Vec<EdgeId>>)> {
    if pat.edge_count() > host.edge_count() || !degree_dominated(pat, host) {
        return None;
    }
    let pat_deg = pat.degrees();
    let mut vertex_order: Vec<Vertex> = (0..pat.vertex_count()).collect();
    vertex_order.sort_by(|&a, &b| pat_deg[b].cmp(&pat_deg[a]).then(a.cmp(&b)));

    let mut sibling = vec![None; pat.edge_count()];
    for e in 0..pat.edge_count() {
        sibling[e] = (0..e).rev().find(|&f| pat.endpoints(f) == pat.endpoints(e));
    }

    let mut search = Search {
        host,
        pat,
        host_inc: host.incidence(),
        host_deg: host.degrees(),
        pat_deg,
        vertex_order,
        branch: vec![usize::MAX; pat.vertex_count()],
        role: vec![Role::Free; host.vertex_count()],
        edge_used: vec![false; host.edge_count()],
        paths: vec![Vec::new(); pat.edge_count()],
        sibling,
    };
    if search.assign(0) {
        Some((search.branch, search.paths))
    } else {
        None
    }
}

/// Find a subgraph of `host` that is a subdivision of the pattern, trying
/// the plain graph before its dotted contraction.
pub fn contains_subdivision(host: &Multigraph, pattern: &Pattern) -> Option<Embedding> {
    pattern.expansions().into_iter().find_map(|(expansion, pat)| {
        embed_graph(host, &pat).map(|(branch, paths)| Embedding { expansion, branch, paths })
    })
}

/// No subgraph is a subdivision of `K_4`.
pub fn is_series_parallel(g: &Multigraph) -> bool {
    contains_subdivision(g, &Pattern::new(Multigraph::complete(4))).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    fn check(host: &Multigraph, pattern: &Pattern) -> Option<Embedding> {
        let emb = contains_subdivision(host, pattern)?;
        let pat = pattern.expansion(emb.expansion).unwrap();
        assert!(emb.validate(host, &pat), "invalid embedding {emb:?}");
        assert!(is_isomorphic(&emb.model(host), &pat));
        Some(emb)
    }

    #[test]
    fn cycle_subdivides_loop() {
        let lp = Pattern::new(Multigraph::from_edges(1, &[(0, 0)]));
        let emb = check(&Multigraph::cycle(5), &lp).unwrap();
        assert_eq!(emb.paths[0].len(), 5);
    }

    #[test]
    fn digon_subdivides_loop() {
        let lp = Pattern::new(Multigraph::from_edges(1, &[(0, 0)]));
        assert!(check(&Multigraph::skein(2), &lp).is_some());
        assert!(check(&Multigraph::path(3), &lp).is_none());
    }

    #[test]
    fn skein_identity_embedding() {
        let p = Pattern::new(Multigraph::skein(5));
        let emb = check(&Multigraph::skein(5), &p).unwrap();
        assert!(emb.paths.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn four_skein_has_no_five_skein() {
        assert!(check(&Multigraph::skein(4), &Pattern::new(Multigraph::skein(5))).is_none());
    }

    #[test]
    fn k4_and_wheel_are_not_series_parallel() {
        assert!(!is_series_parallel(&Multigraph::complete(4)));
        // W_4: hub 0, rim 1-2-3-4
        let w4 = Multigraph::from_edges(
            5,
            &[(1, 2), (2, 3), (3, 4), (4, 1), (0, 1), (0, 2), (0, 3), (0, 4)],
        );
        assert!(!is_series_parallel(&w4));
        let emb = check(&w4, &Pattern::new(Multigraph::complete(4))).unwrap();
        assert_eq!(emb.branch.len(), 4);
    }

    #[test]
    fn thetas_are_series_parallel() {
        for lens in [[1, 1, 1], [1, 2, 3], [2, 2, 2], [3, 1, 4]] {
            let mut g = Multigraph::new(2);
            for len in lens {
                let mut prev = 0;
                for _ in 1..len {
                    let w = g.add_vertex();
                    g.add_edge(prev, w);
                    prev = w;
                }
                g.add_edge(prev, 1);
            }
            assert!(is_series_parallel(&g), "theta {lens:?}");
        }
    }

    #[test]
    fn subdivided_k4_is_found() {
        let (g, _, _) = Multigraph::complete(4).subdivide(2);
        let (g, _, _) = g.subdivide(0);
        let (g, _, _) = g.add_pendant(5);
        assert!(check(&g, &Pattern::new(Multigraph::complete(4))).is_some());
    }

    #[test]
    fn dotted_pattern_tries_contraction() {
        // pattern: 4-skein on {0,1} plus link 1-2 and a loop at 2, dotted link;
        // host: 4-skein with a loop directly at one end
        let p = Pattern::with_dotted(
            Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (2, 2)]),
            4,
        );
        let host = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]);
        let emb = check(&host, &p).unwrap();
        assert_eq!(emb.expansion, Expansion::Contracted);
    }

    #[test]
    fn loops_map_to_distinct_cycles() {
        let two_loops = Pattern::new(Multigraph::from_edges(1, &[(0, 0), (0, 0)]));
        // one loop plus a digon through the same vertex
        let host = Multigraph::from_edges(2, &[(0, 0), (0, 1), (0, 1)]);
        assert!(check(&host, &two_loops).is_some());
        // a single cycle cannot host two loops
        assert!(check(&Multigraph::cycle(4), &two_loops).is_none());
    }
}
