use super::{EdgeId, Multigraph, Vertex};

/// Edge partition into blocks plus the cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    /// Each block's edge ids, sorted; blocks ordered by smallest edge id.
    pub blocks: Vec<Vec<EdgeId>>,
    /// Vertices lying in two or more blocks, sorted.
    pub cut_vertices: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Loop,
    /// Two vertices joined by `k` parallel links.
    Skein(usize),
    Other,
}

/// Blocks of a multigraph. A loop is always a block on its own, a bridge is
/// a block on its own and parallel links share a block.
pub fn blocks(g: &Multigraph) -> Blocks {
    let n = g.vertex_count();
    let inc = g.incidence();
    let mut out: Vec<Vec<EdgeId>> = Vec::new();

    for e in 0..g.edge_count() {
        if g.is_loop(e) {
            out.push(vec![e]);
        }
    }

    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    // (vertex, edge used to enter it, next incidence position)
    let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, None, 0));

        while let Some(&(v, via, pos)) = stack.last() {
            if pos < inc[v].len() {
                let f = inc[v][pos];
                if let Some(top) = stack.last_mut() {
                    top.2 += 1;
                }
                if g.is_loop(f) || Some(f) == via {
                    continue;
                }
                let w = g.other_end(f, v);
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push(f);
                    stack.push((w, Some(f), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(f);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(f), Some(&(parent, _, _))) = (via, stack.last()) {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(x) = edge_stack.pop() {
                            block.push(x);
                            if x == f {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }

    for b in &mut out {
        b.sort_unstable();
    }
    out.sort();

    let mut membership = vec![0usize; n];
    for b in &out {
        let mut verts: Vec<Vertex> = b
            .iter()
            .flat_map(|&e| {
                let (a, c) = g.endpoints(e);
                [a, c]
            })
            .collect();
        verts.sort_unstable();
        verts.dedup();
        for v in verts {
            membership[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| membership[v] >= 2).collect();

    Blocks { blocks: out, cut_vertices }
}

/// Shape of a block: a single loop, a k-skein, or anything else.
pub fn classify_block(g: &Multigraph, block: &[EdgeId]) -> BlockKind {
    if block.len() == 1 && g.is_loop(block[0]) {
        return BlockKind::Loop;
    }
    let Some(&first) = block.first() else {
        return BlockKind::Other;
    };
    let ends = g.endpoints(first);
    if ends.0 != ends.1 && block.iter().all(|&e| g.endpoints(e) == ends) {
        BlockKind::Skein(block.len())
    } else {
        BlockKind::Other
    }
}
