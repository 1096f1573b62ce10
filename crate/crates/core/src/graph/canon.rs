//! Canonical codes for small multigraphs by exhaustive relabeling.
//!
//! Edges are written `(hi, lo)` with `hi >= lo`. The code of a graph is the
//! lexicographically smallest sorted edge list over all vertex relabelings,
//! which is the same as the largest multiplicity vector read column by
//! column over the upper triangle. Reading column by column lets the search
//! fix one vertex at a time and prune on prefixes.

use std::fmt;

use super::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub n: usize,
    pub edges: Vec<(u8, u8)>,
}

impl CanonicalCode {
    /// The graph this code describes (its canonical labeling).
    pub fn to_graph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for &(hi, lo) in &self.edges {
            g.add_edge(lo as usize, hi as usize);
        }
        g
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (hi, lo) in &self.edges {
            write!(f, " {lo}{hi}")?;
        }
        Ok(())
    }
}

struct Search<'a> {
    n: usize,
    mult: &'a [Vec<u8>],
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Vec<u8>,
}

impl Search<'_> {
    fn column(&self, j: usize, x: usize) -> impl Iterator<Item = u8> + '_ {
        (0..j).map(move |i| self.mult[self.perm[i]][x]).chain(std::iter::once(self.mult[x][x]))
    }

    fn go(&mut self, j: usize, ahead: bool) {
        if j == self.n {
            if self.cur > self.best {
                self.best.clone_from(&self.cur);
            }
            return;
        }
        let start = j * (j + 1) / 2;
        for x in 0..self.n {
            if self.used[x] {
                continue;
            }
            let mut next_ahead = ahead;
            if !ahead {
                let mut order = std::cmp::Ordering::Equal;
                for (k, val) in self.column(j, x).enumerate() {
                    order = val.cmp(&self.best[start + k]);
                    if order != std::cmp::Ordering::Equal {
                        break;
                    }
                }
                match order {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Greater => next_ahead = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            let col: Vec<u8> = self.column(j, x).collect();
            self.cur.truncate(start);
            self.cur.extend(col);
            self.perm.push(x);
            self.used[x] = true;
            self.go(j + 1, next_ahead);
            self.used[x] = false;
            self.perm.pop();
        }
    }
}

/// Canonical code of `g`. Cost grows as `n!` in the worst case; intended
/// for graphs with at most eight or so vertices.
pub fn canonical_form(g: &Multigraph) -> CanonicalCode {
    let n = g.vertex_count();
    let mut mult = vec![vec![0u8; n]; n];
    for &(a, b) in g.edges() {
        mult[a][b] += 1;
        if a != b {
            mult[b][a] += 1;
        }
    }
    let identity: Vec<u8> = (0..n).flat_map(|j| (0..=j).map(move |i| (i, j))).map(|(i, j)| mult[i][j]).collect();
    let mut search = Search {
        n,
        mult: &mult,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        cur: Vec::with_capacity(identity.len()),
        best: identity,
    };
    search.go(0, false);

    let mut edges = Vec::with_capacity(g.edge_count());
    let mut k = 0;
    for j in 0..n {
        for i in 0..=j {
            for _ in 0..search.best[k] {
                edges.push((j as u8, i as u8));
            }
            k += 1;
        }
    }
    CanonicalCode { n, edges }
}

pub fn is_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (mut dg, mut dh) = (g.degrees(), h.degrees());
    dg.sort_unstable();
    dh.sort_unstable();
    dg == dh && canonical_form(g) == canonical_form(h)
}
