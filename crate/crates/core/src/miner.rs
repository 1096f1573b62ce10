//! Mine the minimal forbidden graphs by exhaustive enumeration.
//!
//! A connected reduced graph is a member when the structural test rejects it
//! and accepts every single-edge deletion. Members related by contracting a
//! link are then paired into dotted patterns.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::bicircular::bicircular;
use crate::decider::check_condition4;
use crate::graph::io::{parse_edges, parse_usize, write_graph, Lines, ParseError};
use crate::graph::{
    canonical_form, enumerate_graphs, is_reduced, CanonicalCode, EnumerationBounds, GraphClass, Multigraph, Pattern,
};
use crate::matroid::{has_uniform_minor, is_isomorphic_matroid, uniform, MatroidError};

/// Bounds the bundled pattern file was mined with.
pub const DEFAULT_BOUNDS: EnumerationBounds = EnumerationBounds { n_max: 5, m_max: 8, parallel_cap: 5, loop_cap: 2 };

/// Pattern file shipped with the crate.
pub const BUNDLED: &str = include_str!("../data/obstructions.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionSet {
    /// Canonical forms, ordered by vertex count, edge count, then code.
    pub members: Vec<CanonicalCode>,
    pub bounds: EnumerationBounds,
}

impl ObstructionSet {
    pub fn graphs(&self) -> Vec<Multigraph> {
        self.members.iter().map(CanonicalCode::to_graph).collect()
    }

    /// True when any bound is below the defaults, so members may be missing.
    pub fn incomplete(&self) -> bool {
        let (b, d) = (&self.bounds, &DEFAULT_BOUNDS);
        b.n_max < d.n_max || b.m_max < d.m_max || b.parallel_cap < d.parallel_cap || b.loop_cap < d.loop_cap
    }
}

/// Rejected, but every single-edge deletion is accepted.
pub fn is_minimal_obstruction(h: &Multigraph) -> bool {
    !check_condition4(h).accepts()
        && (0..h.edge_count()).all(|e| check_condition4(&h.delete_edge(e).without_isolated()).accepts())
}

pub fn mine(bounds: &EnumerationBounds) -> ObstructionSet {
    let candidates = enumerate_graphs(bounds, GraphClass::ConnectedReduced);
    let mut members: Vec<CanonicalCode> = candidates
        .par_iter()
        .filter(|h| is_minimal_obstruction(h))
        .map(canonical_form)
        .collect();
    members.sort_by(|a, b| order_key(a).cmp(&order_key(b)));
    members.dedup();
    ObstructionSet { members, bounds: *bounds }
}

fn order_key(c: &CanonicalCode) -> (usize, usize, &CanonicalCode) {
    (c.n, c.edges.len(), c)
}

/// A link with no parallel partner whose ends have no common neighbour:
/// contracting it merges nothing else.
fn plain_contraction(p: &Multigraph, e: usize) -> bool {
    let (a, b) = p.endpoints(e);
    if a == b || (0..p.edge_count()).any(|f| f != e && p.endpoints(f) == (a, b)) {
        return false;
    }
    let neighbours = |v: usize| -> Vec<usize> {
        (0..p.edge_count())
            .filter(|&f| f != e && !p.is_loop(f))
            .filter_map(|f| {
                let (x, y) = p.endpoints(f);
                (x == v || y == v).then(|| p.other_end(f, v))
            })
            .collect()
    };
    let nb = neighbours(b);
    !neighbours(a).iter().any(|x| nb.contains(x))
}

/// Pair members `P`, `Q` with `Q ≅ P / e` into one pattern with `e` dotted,
/// using only contractions that merge nothing but the ends of `e`. Larger
/// members are matched first; each member joins at most one pair. Output
/// keeps the position of each pair's larger member.
pub fn group_dotted(set: &ObstructionSet) -> Vec<Pattern> {
    let index: BTreeMap<&CanonicalCode, usize> = set.members.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut partner: Vec<Option<usize>> = vec![None; set.members.len()];
    let mut dotted: Vec<Option<usize>> = vec![None; set.members.len()];
    let mut used = vec![false; set.members.len()];
    for i in (0..set.members.len()).rev() {
        if used[i] {
            continue;
        }
        let p = set.members[i].to_graph();
        for e in (0..p.edge_count()).filter(|&e| plain_contraction(&p, e)) {
            let q = canonical_form(&p.contract_edge(e));
            if let Some(&j) = index.get(&q) {
                if j != i && !used[j] {
                    used[i] = true;
                    used[j] = true;
                    partner[i] = Some(j);
                    dotted[i] = Some(e);
                    break;
                }
            }
        }
    }
    let is_partner: Vec<bool> = (0..set.members.len()).map(|j| partner.contains(&Some(j))).collect();
    (0..set.members.len())
        .filter(|&i| !is_partner[i])
        .map(|i| {
            let g = set.members[i].to_graph();
            match dotted[i] {
                Some(e) => Pattern::with_dotted(g, e),
                None => Pattern::new(g),
            }
        })
        .collect()
}

/// Uniform-minor facts for one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberSanity {
    pub graph: Multigraph,
    /// `(k, n)` for each of `U_{2,5}`, `U_{3,5}`, `U_{4,6}` found as a minor.
    pub minors: Vec<(usize, usize)>,
    /// `B(graph)` is itself `U_{k,n}`.
    pub exactly: Option<(usize, usize)>,
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SanityReport {
    pub members: Vec<MemberSanity>,
}

impl SanityReport {
    pub fn all_have_minor(&self) -> bool {
        self.members.iter().all(|m| !m.minors.is_empty())
    }
}

impl fmt::Display for SanityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            let minors: Vec<String> = m.minors.iter().map(|(k, n)| format!("U({k},{n})")).collect();
            write!(f, "member {i}: {}  minors: {}", m.graph, if minors.is_empty() { "none".into() } else { minors.join(" ") })?;
            if let Some((k, n)) = m.exactly {
                write!(f, "  B = U({k},{n})")?;
            }
            if let Some(note) = m.note {
                write!(f, "  [{note}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Shape family of a member. K4 and the 5-skein are exact; the rest are
/// guesses, prefixed with "likely".
fn annotate(g: &Multigraph) -> Option<&'static str> {
    let code = canonical_form(g);
    let max_mult = (0..g.edge_count())
        .filter(|&e| !g.is_loop(e))
        .map(|e| g.edges().iter().filter(|&&f| f == g.endpoints(e)).count())
        .max()
        .unwrap_or(0);
    let case_a = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2)]);
    let case_b = Multigraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (0, 3)]);
    if code == canonical_form(&Multigraph::complete(4)) {
        Some("K4")
    } else if code == canonical_form(&Multigraph::skein(5)) {
        Some("5-skein")
    } else if code == canonical_form(&case_a) || code == canonical_form(&case_b) {
        Some("likely two digons joined through a dotted edge, plus a parallel edge")
    } else if max_mult == 4 {
        Some("likely 4-skein with an attachment")
    } else if max_mult == 3 {
        Some("likely 3-skein with a cycle at each end")
    } else {
        Some("likely theta with a cycle on a path")
    }
}

pub fn sanity(set: &ObstructionSet) -> Result<SanityReport, MatroidError> {
    let members = set
        .graphs()
        .into_par_iter()
        .map(|g| {
            let b = bicircular(&g);
            let mut minors = Vec::new();
            let mut exactly = None;
            for (k, n) in [(2, 5), (3, 5), (4, 6)] {
                if has_uniform_minor(&b, k, n)?.is_some() {
                    minors.push((k, n));
                    if g.edge_count() == n && is_isomorphic_matroid(&b, &uniform(k, n))?.is_some() {
                        exactly = Some((k, n));
                    }
                }
            }
            Ok(MemberSanity { note: annotate(&g), graph: g, minors, exactly })
        })
        .collect::<Result<Vec<_>, MatroidError>>()?;
    Ok(SanityReport { members })
}

/// Pattern file: a comment header, then one block per pattern.
///
/// ```text
/// pattern 0
/// n m
/// u v
/// dotted e      (optional)
/// ```
pub fn write_patterns(patterns: &[Pattern], bounds: &EnumerationBounds) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "# forbidden patterns, mined with n<={} m<={} parallel<={} loops<={}",
        bounds.n_max, bounds.m_max, bounds.parallel_cap, bounds.loop_cap
    )
    .unwrap();
    for (i, p) in patterns.iter().enumerate() {
        writeln!(s, "pattern {i}").unwrap();
        s.push_str(&write_graph(&p.graph));
        if let Some(e) = p.dotted {
            writeln!(s, "dotted {e}").unwrap();
        }
    }
    s
}

/// Parse a pattern file. Patterns must be connected and reduced.
pub fn parse_patterns(text: &str) -> Result<Vec<Pattern>, ParseError> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some((line, toks)) = lines.next_tokens() {
        match toks[..] {
            ["pattern", id] if parse_usize(id, line, "pattern id")? == out.len() => {}
            _ => return Err(ParseError::new(line, format!("expected \"pattern {}\"", out.len()))),
        }
        let (graph, _) = parse_edges(&mut lines, 0)?;
        if graph.edge_count() == 0 || !graph.is_connected() || !is_reduced(&graph) {
            return Err(ParseError::new(lines.line(), "pattern must be a connected reduced graph with edges"));
        }
        let mut dotted = None;
        if lines.peek_keyword() == Some("dotted") {
            let (line, toks) = lines.next_tokens().expect("peeked");
            let e = match toks[..] {
                [_, e] => parse_usize(e, line, "edge")?,
                _ => return Err(ParseError::new(line, "expected \"dotted <edge>\"")),
            };
            if e >= graph.edge_count() || graph.is_loop(e) {
                return Err(ParseError::new(line, "dotted edge must be a link of the pattern"));
            }
            dotted = Some(e);
        }
        out.push(Pattern { graph, dotted });
    }
    Ok(out)
}

/// The bundled pattern set shipped with the library.
pub fn default_patterns() -> Vec<Pattern> {
    parse_patterns(BUNDLED).expect("bundled pattern file parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_find_five_skein_only() {
        let set = mine(&EnumerationBounds::new(2, 5).with_caps(5, 2));
        assert!(set.incomplete());
        assert!(set.members.contains(&canonical_form(&Multigraph::skein(5))));
        assert!(!set.members.contains(&canonical_form(&Multigraph::skein(4))));
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal_obstruction(&Multigraph::complete(4)));
        assert!(is_minimal_obstruction(&Multigraph::skein(5)));
        assert!(!is_minimal_obstruction(&Multigraph::skein(6)));
        assert!(!is_minimal_obstruction(&Multigraph::skein(4)));
    }

    #[test]
    fn pairs_contraction_partners() {
        // a 3-skein with a loop at each end, and the same with the loops hung on edges
        let direct = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 0), (1, 1)]);
        let hung = Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 1), (0, 0), (1, 2), (2, 2)]);
        assert!(is_minimal_obstruction(&direct));
        assert!(is_minimal_obstruction(&hung));
        let mut members = vec![canonical_form(&direct), canonical_form(&hung)];
        members.sort_by(|a, b| order_key(a).cmp(&order_key(b)));
        let set = ObstructionSet { members, bounds: DEFAULT_BOUNDS };
        let pats = group_dotted(&set);
        assert_eq!(pats.len(), 1);
        let p = &pats[0];
        let e = p.dotted.expect("dotted edge");
        assert_eq!(canonical_form(&p.graph.contract_edge(e)), canonical_form(&direct));
    }

    #[test]
    fn k4_is_not_paired_with_its_contraction() {
        let k4 = Multigraph::complete(4);
        let members = vec![canonical_form(&k4.contract_edge(0)), canonical_form(&k4)];
        let pats = group_dotted(&ObstructionSet { members, bounds: DEFAULT_BOUNDS });
        assert_eq!(pats.len(), 2);
    }

    #[test]
    fn singletons_stay_undotted() {
        let members = vec![canonical_form(&Multigraph::skein(5)), canonical_form(&Multigraph::complete(4))];
        let set = ObstructionSet { members, bounds: DEFAULT_BOUNDS };
        let pats = group_dotted(&set);
        assert_eq!(pats.len(), 2);
        assert!(pats.iter().all(|p| p.dotted.is_none()));
    }

    #[test]
    fn sanity_pins_uniform_members() {
        let members = vec![canonical_form(&Multigraph::skein(5)), canonical_form(&Multigraph::complete(4))];
        let report = sanity(&ObstructionSet { members, bounds: DEFAULT_BOUNDS }).unwrap();
        assert_eq!(report.members[0].exactly, Some((2, 5)));
        assert_eq!(report.members[1].exactly, Some((4, 6)));
        assert!(report.all_have_minor());
    }

    #[test]
    fn pattern_file_round_trip() {
        let pats = vec![Pattern::new(Multigraph::skein(5)), Pattern::with_dotted(Multigraph::complete(4), 2)];
        let text = write_patterns(&pats, &DEFAULT_BOUNDS);
        assert_eq!(parse_patterns(&text).unwrap(), pats);
        assert!(parse_patterns("pattern 0\n3 2\n0 1\n1 2\n").is_err());
        assert!(parse_patterns("pattern 1\n2 5\n0 1\n0 1\n0 1\n0 1\n0 1\n").is_err());
    }
}
