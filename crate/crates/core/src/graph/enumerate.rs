//! Isomorphism-free enumeration of small multigraphs.
//!
//! Graphs are generated as multiplicity vectors over vertex pairs (loops
//! included), filling the upper triangle row by row. Only labelings with
//! non-increasing degrees are generated; every isomorphism class has one,
//! and the restriction prunes most of the space. Survivors are deduplicated
//! by canonical code.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{canonical_form, reduce::is_reduced, CanonicalCode, Multigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub n_max: usize,
    pub m_max: usize,
    pub parallel_cap: usize,
    pub loop_cap: usize,
}

impl EnumerationBounds {
    pub fn new(n_max: usize, m_max: usize) -> Self {
        Self { n_max, m_max, ..Self::default() }
    }

    pub fn with_caps(mut self, parallel_cap: usize, loop_cap: usize) -> Self {
        self.parallel_cap = parallel_cap;
        self.loop_cap = loop_cap;
        self
    }
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        Self { n_max: 4, m_max: 7, parallel_cap: 5, loop_cap: 2 }
    }
}

/// Which graphs to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    /// Every multigraph, isolated vertices and all.
    All,
    Connected,
    /// Connected with no degree-one and no loopless degree-two vertex.
    ConnectedReduced,
}

struct Gen<'a> {
    n: usize,
    slots: &'a [(usize, usize)],
    bounds: &'a EnumerationBounds,
    min_deg: usize,
    mult: Vec<u8>,
    deg: Vec<usize>,
    used: usize,
}

impl Gen<'_> {
    fn row_end(&self, k: usize) -> bool {
        let (i, j) = self.slots[k];
        j == self.n - 1 && i <= j
    }

    fn feasible_after_row(&self, i: usize) -> bool {
        if self.deg[i] < self.min_deg || (i > 0 && self.deg[i] > self.deg[i - 1]) {
            return false;
        }
        let mut deficit = 0;
        for j in i + 1..self.n {
            if self.deg[j] > self.deg[i] {
                return false;
            }
            deficit += self.min_deg.saturating_sub(self.deg[j]);
        }
        self.used + deficit.div_ceil(2) <= self.bounds.m_max
    }

    fn run(&mut self, k: usize, out: &mut impl FnMut(&[u8])) {
        if k == self.slots.len() {
            out(&self.mult);
            return;
        }
        let (i, j) = self.slots[k];
        let cap = if i == j { self.bounds.loop_cap } else { self.bounds.parallel_cap };
        let cap = cap.min(self.bounds.m_max - self.used);
        for c in 0..=cap {
            self.mult[k] = c as u8;
            self.used += c;
            if i == j {
                self.deg[i] += 2 * c;
            } else {
                self.deg[i] += c;
                self.deg[j] += c;
            }
            let ok = !self.row_end(k) || self.feasible_after_row(i);
            if ok {
                self.run(k + 1, out);
            }
            self.used -= c;
            if i == j {
                self.deg[i] -= 2 * c;
            } else {
                self.deg[i] -= c;
                self.deg[j] -= c;
            }
        }
        self.mult[k] = 0;
    }
}

fn graph_from(n: usize, slots: &[(usize, usize)], mult: &[u8]) -> Multigraph {
    let mut g = Multigraph::new(n);
    for (k, &(i, j)) in slots.iter().enumerate() {
        for _ in 0..mult[k] {
            g.add_edge(i, j);
        }
    }
    g
}

fn keep(g: &Multigraph, class: GraphClass) -> bool {
    match class {
        GraphClass::All => true,
        GraphClass::Connected => g.is_connected(),
        GraphClass::ConnectedReduced => g.is_connected() && is_reduced(g),
    }
}

fn codes_for_n(bounds: &EnumerationBounds, n: usize, class: GraphClass) -> BTreeSet<CanonicalCode> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let min_deg = match class {
        GraphClass::All => 0,
        _ if n == 1 => 0,
        GraphClass::Connected => 1,
        GraphClass::ConnectedReduced => 3,
    };
    let new_gen = || Gen {
        n,
        slots: &slots,
        bounds,
        min_deg,
        mult: vec![0; slots.len()],
        deg: vec![0; n],
        used: 0,
    };

    // split on the first row, then finish each prefix in parallel
    let mut prefixes: Vec<Vec<u8>> = Vec::new();
    {
        let first_row = &slots[..n];
        let mut gen = Gen { slots: first_row, ..new_gen() };
        // Gen::row_end only fires at the true row end, which is the last slot
        // of this truncated list, so the row-0 checks still apply.
        gen.run(0, &mut |m: &[u8]| prefixes.push(m.to_vec()));
    }

    prefixes
        .par_iter()
        .map(|prefix| {
            let mut gen = new_gen();
            for (k, &c) in prefix.iter().enumerate() {
                let (i, j) = slots[k];
                gen.mult[k] = c;
                gen.used += c as usize;
                if i == j {
                    gen.deg[i] += 2 * c as usize;
                } else {
                    gen.deg[i] += c as usize;
                    gen.deg[j] += c as usize;
                }
            }
            let mut found = BTreeSet::new();
            gen.run(n, &mut |m: &[u8]| {
                let g = graph_from(n, &slots, m);
                if keep(&g, class) {
                    found.insert(canonical_form(&g));
                }
            });
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// All graphs of a class within the bounds, one per isomorphism class,
/// ordered by vertex count, edge count, then canonical code.
pub fn enumerate_graphs(bounds: &EnumerationBounds, class: GraphClass) -> Vec<Multigraph> {
    let mut codes: Vec<CanonicalCode> = (1..=bounds.n_max)
        .into_par_iter()
        .flat_map_iter(|n| codes_for_n(bounds, n, class))
        .collect();
    codes.sort_by(|a, b| (a.n, a.edges.len(), a).cmp(&(b.n, b.edges.len(), b)));
    codes.iter().map(CanonicalCode::to_graph).collect()
}

/// Every connected multigraph within the bounds, exactly once up to
/// isomorphism.
pub fn enumerate_connected(bounds: &EnumerationBounds) -> Vec<Multigraph> {
    enumerate_graphs(bounds, GraphClass::Connected)
}

/// One of `shards` disjoint slices of [`enumerate_graphs`], split by a hash
/// of the canonical code. The union over all shards is the full output.
pub fn enumerate_shard(
    bounds: &EnumerationBounds,
    class: GraphClass,
    shard: usize,
    shards: usize,
) -> Vec<Multigraph> {
    use std::hash::{Hash, Hasher};
    enumerate_graphs(bounds, class)
        .into_iter()
        .filter(|g| {
            let mut h = std::collections::hash_map::DefaultHasher::new();
            canonical_form(g).hash(&mut h);
            (h.finish() as usize) % shards == shard
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use std::collections::HashSet;

    /// Independent enumeration: every labeled multiset of edges, no pruning,
    /// deduplicated by canonical form.
    fn brute_force(bounds: &EnumerationBounds, class: GraphClass) -> HashSet<CanonicalCode> {
        let mut seen = HashSet::new();
        for n in 1..=bounds.n_max {
            let slots: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
            let mut mult = vec![0usize; slots.len()];
            loop {
                let m: usize = mult.iter().sum();
                let caps_ok = slots.iter().zip(&mult).all(|(&(i, j), &c)| {
                    c <= if i == j { bounds.loop_cap } else { bounds.parallel_cap }
                });
                if m <= bounds.m_max && caps_ok {
                    let mut g = Multigraph::new(n);
                    for (k, &(i, j)) in slots.iter().enumerate() {
                        for _ in 0..mult[k] {
                            g.add_edge(i, j);
                        }
                    }
                    if keep(&g, class) {
                        seen.insert(canonical_form(&g));
                    }
                }
                // odometer over 0..=m_max per slot
                let mut k = 0;
                loop {
                    if k == mult.len() {
                        break;
                    }
                    mult[k] += 1;
                    if mult[k] <= bounds.m_max {
                        break;
                    }
                    mult[k] = 0;
                    k += 1;
                }
                if k == mult.len() {
                    break;
                }
            }
        }
        seen
    }

    #[test]
    fn single_vertex_with_optional_loop() {
        let b = EnumerationBounds::new(1, 1).with_caps(1, 1);
        let gs = enumerate_connected(&b);
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0], Multigraph::new(1));
        assert_eq!(gs[1], Multigraph::from_edges(1, &[(0, 0)]));
    }

    #[test]
    fn two_vertices_two_edges_matches_hand_count() {
        // K1, K1+loop, K2, digon, K2 plus a loop
        let b = EnumerationBounds::new(2, 2).with_caps(2, 1);
        let gs = enumerate_connected(&b);
        assert_eq!(gs.len(), 5);
        let expected = brute_force(&b, GraphClass::Connected);
        assert_eq!(gs.iter().map(canonical_form).collect::<HashSet<_>>(), expected);
    }

    #[test]
    fn matches_brute_force_on_small_bounds() {
        for (b, class) in [
            (EnumerationBounds::new(3, 4).with_caps(3, 2), GraphClass::Connected),
            (EnumerationBounds::new(3, 4).with_caps(2, 2), GraphClass::All),
            (EnumerationBounds::new(3, 5).with_caps(5, 2), GraphClass::ConnectedReduced),
            (EnumerationBounds::new(4, 4).with_caps(2, 1), GraphClass::Connected),
        ] {
            let gs = enumerate_graphs(&b, class);
            let got: HashSet<_> = gs.iter().map(canonical_form).collect();
            assert_eq!(got.len(), gs.len(), "duplicates for {b:?}");
            assert_eq!(got, brute_force(&b, class), "mismatch for {b:?} {class:?}");
        }
    }

    #[test]
    fn contains_k4() {
        let gs = enumerate_connected(&EnumerationBounds::new(4, 6).with_caps(1, 0));
        assert!(gs.iter().any(|g| is_isomorphic(g, &Multigraph::complete(4))));
    }

    #[test]
    fn shards_partition_output() {
        let b = EnumerationBounds::new(3, 4);
        let full = enumerate_connected(&b);
        let mut union: Vec<Multigraph> =
            (0..3).flat_map(|s| enumerate_shard(&b, GraphClass::Connected, s, 3)).collect();
        union.sort_by_key(canonical_form);
        let mut full_sorted = full.clone();
        full_sorted.sort_by_key(canonical_form);
        assert_eq!(union, full_sorted);
    }
}
