//! Signed graphs, their frame matroids and the GF(3) incidence
//! representation.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use thiserror::Error;

use crate::graph::io::{parse_edges, Lines, ParseError};
use crate::graph::{EdgeId, Multigraph, UnionFind};
use crate::matroid::OracleMatroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    fn bit(self) -> u8 {
        u8::from(self == Sign::Negative)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    pub graph: Multigraph,
    pub signs: Vec<Sign>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignedError {
    #[error("edge set {0:?} does not span a circle")]
    NotACircle(Vec<EdgeId>),
}

impl SignedGraph {
    pub fn new(graph: Multigraph, signs: Vec<Sign>) -> Self {
        assert_eq!(graph.edge_count(), signs.len(), "one sign per edge");
        Self { graph, signs }
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signs[e]
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.graph.vertex_count())?;
        for (e, (a, b)) in self.graph.edges().iter().enumerate() {
            if e > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}{}", self.signs[e].symbol())?;
        }
        write!(f, "]")
    }
}

/// Every edge positive; its frame matroid is the cycle matroid.
pub fn all_positive(g: &Multigraph) -> SignedGraph {
    SignedGraph::new(g.clone(), vec![Sign::Positive; g.edge_count()])
}

/// Product of the signs on `circle`, which must span a connected 2-regular
/// subgraph.
pub fn circle_sign(s: &SignedGraph, circle: &[EdgeId]) -> Result<Sign, SignedError> {
    let err = || SignedError::NotACircle(circle.to_vec());
    if circle.is_empty() {
        return Err(err());
    }
    let (sub, _, _) = s.graph.edge_subgraph(circle);
    if !sub.is_connected() || sub.degrees().iter().any(|&d| d != 2) {
        return Err(err());
    }
    Ok(circle.iter().fold(Sign::Positive, |acc, &e| acc * s.signs[e]))
}

/// Union-find with parity. Each class remembers how many edges closed a
/// cycle inside it and whether any such cycle was negative.
struct SignedCensus {
    parent: Vec<usize>,
    parity: Vec<u8>,
    closing: Vec<usize>,
    negative: Vec<bool>,
    size: Vec<usize>,
}

impl SignedCensus {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![0; n],
            closing: vec![0; n],
            negative: vec![false; n],
            size: vec![1; n],
        }
    }

    /// Root and parity of `x` relative to the root.
    fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut cur = x;
        let mut par = 0;
        while self.parent[cur] != cur {
            path.push(cur);
            par ^= self.parity[cur];
            cur = self.parent[cur];
        }
        let root = cur;
        // compress
        let mut acc = par;
        for v in path {
            let next = acc ^ self.parity[v];
            self.parent[v] = root;
            self.parity[v] = acc;
            acc = next;
        }
        (root, par)
    }

    fn add(&mut self, a: usize, b: usize, sign: Sign) -> usize {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            self.closing[ra] += 1;
            if pa ^ pb ^ sign.bit() == 1 {
                self.negative[ra] = true;
            }
            ra
        } else {
            let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
            self.parent[small] = big;
            self.parity[small] = pa ^ pb ^ sign.bit();
            self.size[big] += self.size[small];
            self.closing[big] += self.closing[small];
            self.negative[big] |= self.negative[small];
            big
        }
    }
}

/// Independence in the frame matroid `M(s)`: no positive circle and at most
/// one circle, necessarily negative, in each connected piece.
pub fn is_frame_independent(s: &SignedGraph, set: &[EdgeId]) -> bool {
    let mut c = SignedCensus::new(s.graph.vertex_count());
    set.iter().all(|&e| {
        let (a, b) = s.graph.endpoints(e);
        let r = c.add(a, b, s.signs[e]);
        c.closing[r] == 0 || (c.closing[r] == 1 && c.negative[r])
    })
}

pub fn frame(s: &SignedGraph) -> OracleMatroid {
    let s = Arc::new(s.clone());
    OracleMatroid::new(0..s.graph.edge_count(), move |a: &[EdgeId]| is_frame_independent(&s, a))
}

/// Closed-form rank: vertices touched minus the number of balanced pieces.
pub fn frame_rank(s: &SignedGraph, set: &[EdgeId]) -> usize {
    let n = s.graph.vertex_count();
    let mut c = SignedCensus::new(n);
    let mut touched = vec![false; n];
    for &e in set {
        let (a, b) = s.graph.endpoints(e);
        touched[a] = true;
        touched[b] = true;
        c.add(a, b, s.signs[e]);
    }
    let mut rank = 0;
    for v in 0..n {
        if touched[v] && c.find(v).0 == v {
            rank += if c.negative[v] { c.size[v] } else { c.size[v] - 1 };
        }
    }
    rank
}

/// Cycle matroid: edge sets spanning a forest are independent.
pub fn cycle_matroid(g: &Multigraph) -> OracleMatroid {
    let g = Arc::new(g.clone());
    OracleMatroid::new(0..g.edge_count(), move |a: &[EdgeId]| {
        let mut uf = UnionFind::new(g.vertex_count());
        a.iter().all(|&e| {
            let (u, v) = g.endpoints(e);
            uf.union(u, v)
        })
    })
}

/// Matrix over GF(3), stored by column; rows are vertices, columns edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf3Matrix {
    pub rows: usize,
    pub columns: Vec<Vec<u8>>,
}

impl fmt::Display for Gf3Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.columns.iter().map(|c| c[r].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Signed incidence matrix over GF(3). A link `u < v` gets 1 at `u` and
/// `-sign` at `v`; a negative loop gets 1 at its vertex; a positive loop is
/// a zero column.
pub fn gf3_incidence(s: &SignedGraph) -> Gf3Matrix {
    let rows = s.graph.vertex_count();
    let columns = s
        .graph
        .edges()
        .iter()
        .zip(&s.signs)
        .map(|(&(u, v), &sign)| {
            let mut col = vec![0u8; rows];
            if u != v {
                col[u] = 1;
                col[v] = match sign {
                    Sign::Positive => 2,
                    Sign::Negative => 1,
                };
            } else if sign == Sign::Negative {
                col[u] = 1;
            }
            col
        })
        .collect();
    Gf3Matrix { rows, columns }
}

/// Linear independence of the chosen columns over GF(3).
pub fn gf3_independent(m: &Gf3Matrix, cols: &[EdgeId]) -> bool {
    let mut vecs: Vec<Vec<u8>> = cols.iter().map(|&c| m.columns[c].clone()).collect();
    let width = m.rows;
    let count = vecs.len();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..count).find(|&r| vecs[r][col] != 0) else {
            continue;
        };
        vecs.swap(rank, p);
        // every nonzero element of GF(3) is its own inverse
        let inv = vecs[rank][col];
        for x in vecs[rank].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for r in 0..count {
            if r != rank && vecs[r][col] != 0 {
                let factor = vecs[r][col];
                for k in 0..width {
                    vecs[r][k] = (vecs[r][k] + 9 - factor * vecs[rank][k]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank == count
}

pub fn parse_signed_graph(text: &str) -> Result<SignedGraph, ParseError> {
    let mut lines = Lines::new(text);
    let s = parse_signed_block(&mut lines)?;
    if let Some((line, _)) = lines.next_tokens() {
        return Err(ParseError::new(line, "trailing content after edge list"));
    }
    Ok(s)
}

pub(crate) fn parse_signed_block(lines: &mut Lines<'_>) -> Result<SignedGraph, ParseError> {
    let (g, extra) = parse_edges(lines, 1)?;
    let mut signs = Vec::with_capacity(extra.len());
    for (line, toks) in &extra {
        signs.push(match toks[0] {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => return Err(ParseError::new(*line, format!("expected + or -, found {other:?}"))),
        });
    }
    Ok(SignedGraph::new(g, signs))
}

pub fn write_signed_graph(s: &SignedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", s.graph.vertex_count(), s.graph.edge_count()).unwrap();
    for (&(u, v), sign) in s.graph.edges().iter().zip(&s.signs) {
        writeln!(out, "{u} {v} {}", sign.symbol()).unwrap();
    }
    out
}
