//! Structural test on the reduced graph.

use std::fmt;

use crate::graph::{blocks, classify_block, reduce, BlockKind, EdgeId, Multigraph, ReductionLog, Vertex};

/// Shape of a reduced component that passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    SingleVertex,
    TreeSkeleton,
    FourSkein,
}

/// Which blocks the tree-skeleton shape admits besides loops and skeins.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Condition4Rule {
    /// Cycle blocks of any length are allowed. Every circle of such a
    /// skeleton can be made negative at once, so it is signed-graphic.
    #[default]
    Extended,
    /// Only loops and k-skeins. Rejects, for example, a triangle with a loop
    /// at each corner, whose bicircular matroid is signed-graphic.
    AsStated,
}

/// A block of the reduced graph, in reduced ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockEntry {
    Loop { vertex: Vertex, edge: EdgeId },
    Skein { ends: (Vertex, Vertex), edges: Vec<EdgeId>, clean: Option<Vertex> },
    /// A circle through three or more vertices.
    Cycle { edges: Vec<EdgeId> },
    Other { edges: Vec<EdgeId> },
}

impl BlockEntry {
    pub fn edges(&self) -> Vec<EdgeId> {
        match self {
            BlockEntry::Loop { edge, .. } => vec![*edge],
            BlockEntry::Skein { edges, .. } | BlockEntry::Cycle { edges } | BlockEntry::Other { edges } => {
                edges.clone()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BlockNotAllowed { edges: Vec<EdgeId> },
    SkeinTooLarge { edges: Vec<EdgeId> },
    FourSkeinNotAlone { edges: Vec<EdgeId> },
    ThreeSkeinWithoutCleanEndpoint { edges: Vec<EdgeId> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, edges) = match self {
            Violation::BlockNotAllowed { edges } => ("block is not a loop, skein or allowed cycle", edges),
            Violation::SkeinTooLarge { edges } => ("skein with more than four edges", edges),
            Violation::FourSkeinNotAlone { edges } => ("4-skein is not a whole component", edges),
            Violation::ThreeSkeinWithoutCleanEndpoint { edges } => {
                ("3-skein has no loopless endpoint of degree 3", edges)
            }
        };
        write!(f, "{what} (reduced edges {edges:?})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    /// Reduced vertex ids, sorted.
    pub vertices: Vec<Vertex>,
    /// `None` when the component fails.
    pub base: Option<BaseKind>,
    pub blocks: Vec<BlockEntry>,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition4Report {
    pub reduced: Multigraph,
    pub log: ReductionLog,
    pub components: Vec<ComponentReport>,
}

impl Condition4Report {
    pub fn accepts(&self) -> bool {
        self.components.iter().all(|c| c.violation.is_none())
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.components.iter().find_map(|c| c.violation.as_ref())
    }
}

impl fmt::Display for Condition4Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduced graph: {}", self.reduced)?;
        for (i, c) in self.components.iter().enumerate() {
            match (&c.base, &c.violation) {
                (_, Some(v)) => writeln!(f, "component {i}: reject, {v}")?,
                (Some(b), None) => writeln!(f, "component {i}: accept, {b:?}, {} blocks", c.blocks.len())?,
                (None, None) => writeln!(f, "component {i}: accept")?,
            }
        }
        Ok(())
    }
}

/// Reduce `g` and test each component of the reduced graph under the
/// default rule.
pub fn check_condition4(g: &Multigraph) -> Condition4Report {
    check_condition4_with(g, Condition4Rule::default())
}

pub fn check_condition4_with(g: &Multigraph, rule: Condition4Rule) -> Condition4Report {
    let (reduced, log) = reduce(g);
    let all_blocks = blocks(&reduced).blocks;
    let mut components = Vec::new();
    for vertices in reduced.components() {
        let mut inside = vec![false; reduced.vertex_count()];
        for &v in &vertices {
            inside[v] = true;
        }
        let comp_blocks: Vec<&Vec<EdgeId>> = all_blocks
            .iter()
            .filter(|b| inside[reduced.endpoints(b[0]).0])
            .collect();
        components.push(check_component(&reduced, vertices, &comp_blocks, rule));
    }
    Condition4Report { reduced, log, components }
}

fn is_cycle(g: &Multigraph, block: &[EdgeId]) -> bool {
    let (sub, _, _) = g.edge_subgraph(block);
    sub.vertex_count() == block.len() && sub.degrees().iter().all(|&d| d == 2)
}

fn check_component(
    g: &Multigraph,
    vertices: Vec<Vertex>,
    comp_blocks: &[&Vec<EdgeId>],
    rule: Condition4Rule,
) -> ComponentReport {
    let edge_total: usize = comp_blocks.iter().map(|b| b.len()).sum();
    let clean = |v: Vertex| g.degree(v) == 3 && g.loop_count(v) == 0;
    let mut entries = Vec::new();
    let mut violation = None;
    for block in comp_blocks {
        let entry = match classify_block(g, block) {
            BlockKind::Loop => BlockEntry::Loop { vertex: g.endpoints(block[0]).0, edge: block[0] },
            BlockKind::Skein(k) => {
                let ends = g.endpoints(block[0]);
                let clean = if k == 3 { [ends.0, ends.1].into_iter().find(|&v| clean(v)) } else { None };
                BlockEntry::Skein { ends, edges: block.to_vec(), clean }
            }
            BlockKind::Other if is_cycle(g, block) => BlockEntry::Cycle { edges: block.to_vec() },
            BlockKind::Other => BlockEntry::Other { edges: block.to_vec() },
        };
        if violation.is_none() {
            violation = match &entry {
                BlockEntry::Other { edges } => Some(Violation::BlockNotAllowed { edges: edges.clone() }),
                BlockEntry::Cycle { edges } if rule == Condition4Rule::AsStated => {
                    Some(Violation::BlockNotAllowed { edges: edges.clone() })
                }
                BlockEntry::Skein { edges, .. } if edges.len() > 4 => {
                    Some(Violation::SkeinTooLarge { edges: edges.clone() })
                }
                BlockEntry::Skein { edges, .. } if edges.len() == 4 && edge_total != 4 => {
                    Some(Violation::FourSkeinNotAlone { edges: edges.clone() })
                }
                BlockEntry::Skein { edges, clean: None, .. } if edges.len() == 3 => {
                    Some(Violation::ThreeSkeinWithoutCleanEndpoint { edges: edges.clone() })
                }
                _ => None,
            };
        }
        entries.push(entry);
    }
    let base = if violation.is_some() {
        None
    } else if vertices.len() == 1 {
        Some(BaseKind::SingleVertex)
    } else if edge_total == 4 && entries.len() == 1 {
        Some(BaseKind::FourSkein)
    } else {
        Some(BaseKind::TreeSkeleton)
    };
    ComponentReport { vertices, base, blocks: entries, violation }
}

/// The older characterization for graphic bicircular matroids: each reduced
/// component is a single vertex, exactly a 3-skein, or has only loops and
/// bridges as blocks.
pub fn matthews_condition4(g: &Multigraph) -> bool {
    let (reduced, _) = reduce(g);
    let all_blocks = blocks(&reduced).blocks;
    reduced.components().into_iter().all(|vertices| {
        let comp: Vec<&Vec<EdgeId>> = all_blocks
            .iter()
            .filter(|b| vertices.contains(&reduced.endpoints(b[0]).0))
            .collect();
        let kinds: Vec<BlockKind> = comp.iter().map(|b| classify_block(&reduced, b)).collect();
        vertices.len() == 1
            || kinds == [BlockKind::Skein(3)]
            || kinds.iter().all(|k| matches!(k, BlockKind::Loop | BlockKind::Skein(1)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_loops(g: &Multigraph, at: &[Vertex]) -> Multigraph {
        let mut h = g.clone();
        for &v in at {
            h.add_edge(v, v);
        }
        h
    }

    #[test]
    fn spec_examples() {
        assert!(check_condition4(&Multigraph::cycle(3)).accepts());
        let four = check_condition4(&Multigraph::skein(4));
        assert!(four.accepts());
        assert_eq!(four.components[0].base, Some(BaseKind::FourSkein));
        assert!(!check_condition4(&Multigraph::complete(4)).accepts());
        assert!(matches!(
            check_condition4(&Multigraph::skein(5)).first_violation(),
            Some(Violation::SkeinTooLarge { .. })
        ));
        let looped = with_loops(&Multigraph::skein(3), &[0, 1]);
        assert!(matches!(
            check_condition4(&looped).first_violation(),
            Some(Violation::ThreeSkeinWithoutCleanEndpoint { .. })
        ));
    }

    #[test]
    fn four_skein_with_loop_rejected() {
        let g = with_loops(&Multigraph::skein(4), &[0]);
        assert!(matches!(check_condition4(&g).first_violation(), Some(Violation::FourSkeinNotAlone { .. })));
    }

    #[test]
    fn four_skein_with_pendant_accepted() {
        let mut g = Multigraph::skein(4);
        let v = g.add_vertex();
        g.add_edge(1, v);
        assert!(check_condition4(&g).accepts());
    }

    #[test]
    fn three_skein_with_one_loop_has_clean_end() {
        let g = with_loops(&Multigraph::skein(3), &[0]);
        let r = check_condition4(&g);
        assert!(r.accepts());
        let clean = r.components[0].blocks.iter().find_map(|b| match b {
            BlockEntry::Skein { clean, .. } => *clean,
            _ => None,
        });
        assert_eq!(clean, Some(1));
    }

    #[test]
    fn pendant_at_clean_end_is_harmless() {
        let mut g = with_loops(&Multigraph::skein(3), &[0]);
        let v = g.add_vertex();
        g.add_edge(1, v);
        assert!(check_condition4(&g).accepts());
    }

    #[test]
    fn trees_with_loops_accepted() {
        let g = with_loops(&Multigraph::path(3), &[0, 1, 2, 3, 3]);
        let r = check_condition4(&g);
        assert!(r.accepts());
        assert_eq!(r.components[0].base, Some(BaseKind::TreeSkeleton));
        assert!(check_condition4(&Multigraph::new(1)).accepts());
        assert_eq!(check_condition4(&Multigraph::path(4)).components[0].base, Some(BaseKind::SingleVertex));
    }

    #[test]
    fn disconnected_rejects_if_any_part_does() {
        let g = Multigraph::cycle(3).disjoint_union(&Multigraph::complete(4));
        let r = check_condition4(&g);
        assert_eq!(r.components.len(), 2);
        assert!(!r.accepts());
    }

    #[test]
    fn looped_triangle_depends_on_rule() {
        let g = with_loops(&Multigraph::cycle(3), &[0, 1, 2]);
        assert!(check_condition4(&g).accepts());
        let strict = check_condition4_with(&g, Condition4Rule::AsStated);
        assert!(matches!(strict.first_violation(), Some(Violation::BlockNotAllowed { .. })));
    }

    #[test]
    fn triangle_with_chord_rejected_under_both_rules() {
        let g = with_loops(&Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2), (1, 2)]), &[0]);
        assert!(!check_condition4(&g).accepts());
        assert!(!check_condition4_with(&g, Condition4Rule::AsStated).accepts());
    }

    #[test]
    fn matthews_examples() {
        assert!(matthews_condition4(&Multigraph::skein(3)));
        assert!(!matthews_condition4(&Multigraph::skein(4)));
        assert!(matthews_condition4(&with_loops(&Multigraph::path(3), &[0, 3])));
        assert!(matthews_condition4(&with_loops(&Multigraph::skein(2), &[0])));
        assert!(!matthews_condition4(&with_loops(&Multigraph::skein(2), &[0, 1])));
        assert!(!matthews_condition4(&Multigraph::complete(4)));
    }
}
