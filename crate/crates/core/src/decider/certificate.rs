//! Certificates for both verdicts, their verification and their text form.
//!
//! ```text
//! signed-witness
//! n m
//! u v +            (m signed edge lines)
//! map i -> j       (m lines: input edge i is witness edge j)
//!
//! obstruction
//! pattern <id>
//! n m
//! u v              (pattern edges)
//! [dotted e]
//! expansion plain|contracted
//! branch v0 v1 ...
//! path <i> e e ...
//! uniform k n
//! contract e ...
//! delete e ...
//! map e -> t       (n lines)
//! ```

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bicircular::{bicircular, is_bicircular_independent};
use crate::graph::io::{parse_edges, parse_usize, Lines, ParseError};
use crate::graph::{EdgeId, Embedding, Expansion, Multigraph, Pattern};
use crate::matroid::{witness_is_uniform, MinorWitness};
use crate::signed::{is_frame_independent, parse_signed_block, write_signed_graph};

pub use super::synth::SignedWitness;

/// Evidence of a non-ternary uniform minor inside a subdivided pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub pattern_id: usize,
    pub pattern: Pattern,
    pub embedding: Embedding,
    /// The minor is `U_{k,n}`.
    pub k: usize,
    pub n: usize,
    /// Lives in `B(g)` restricted to the embedding's edges.
    pub minor: MinorWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    SignedWitness(SignedWitness),
    Obstruction(Obstruction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Compare every subset up to this many edges.
    pub exhaustive_limit: usize,
    /// Random subsets checked above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { exhaustive_limit: 18, samples: 100_000, seed: 0x5eed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationMode {
    Exhaustive,
    /// Small subsets plus this many random ones.
    Sampled(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub passed: bool,
    pub mode: VerificationMode,
}

/// Verify with default options.
pub fn verify_certificate(g: &Multigraph, cert: &Certificate) -> bool {
    verify_certificate_with(g, cert, &VerifyOptions::default()).passed
}

pub fn verify_certificate_with(g: &Multigraph, cert: &Certificate, opts: &VerifyOptions) -> Verification {
    match cert {
        Certificate::SignedWitness(w) => verify_witness(g, w, opts),
        Certificate::Obstruction(o) => Verification { passed: verify_obstruction(g, o), mode: VerificationMode::Exhaustive },
    }
}

fn verify_witness(g: &Multigraph, w: &SignedWitness, opts: &VerifyOptions) -> Verification {
    let m = g.edge_count();
    let mut mode = VerificationMode::Exhaustive;
    let shape_ok = w.signed.graph.edge_count() == m && w.bijection.len() == m && {
        let mut seen = vec![false; m];
        w.bijection.iter().all(|&j| j < m && !std::mem::replace(&mut seen[j], true))
    };
    if !shape_ok {
        return Verification { passed: false, mode };
    }
    let agrees = |set: &[EdgeId]| {
        let image: Vec<EdgeId> = set.iter().map(|&e| w.bijection[e]).collect();
        is_bicircular_independent(g, set) == is_frame_independent(&w.signed, &image)
    };
    let from_mask = |mask: u64| -> Vec<EdgeId> { (0..m).filter(|i| mask >> i & 1 == 1).collect() };

    let passed = if m <= opts.exhaustive_limit {
        (0..1u64 << m).into_par_iter().all(|mask| agrees(&from_mask(mask)))
    } else {
        mode = VerificationMode::Sampled(opts.samples);
        let small = (0..=4.min(m)).all(|k| {
            let edges: Vec<EdgeId> = (0..m).collect();
            !crate::matroid::combinations(&edges, k, |s| !agrees(s))
        });
        small
            && (0..opts.samples).into_par_iter().all(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let set: Vec<EdgeId> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
                agrees(&set)
            })
    };
    Verification { passed, mode }
}

fn verify_obstruction(g: &Multigraph, o: &Obstruction) -> bool {
    let allowed = [(2, 5), (3, 5), (4, 6)];
    if !allowed.contains(&(o.k, o.n)) {
        return false;
    }
    let Some(expanded) = o.pattern.expansion(o.embedding.expansion) else {
        return false;
    };
    if !o.embedding.validate(g, &expanded) {
        return false;
    }
    let b = bicircular(g).restrict(&o.embedding.edges());
    witness_is_uniform(&b, &o.minor, o.k, o.n)
}

/// `word` followed by the numbers, space separated.
fn listed(word: &str, items: &[usize]) -> String {
    items.iter().fold(word.to_string(), |acc, x| format!("{acc} {x}"))
}

pub fn write_certificate(cert: &Certificate) -> String {
    let mut s = String::new();
    match cert {
        Certificate::SignedWitness(w) => {
            s.push_str("signed-witness\n");
            s.push_str(&write_signed_graph(&w.signed));
            for (i, j) in w.bijection.iter().enumerate() {
                writeln!(s, "map {i} -> {j}").unwrap();
            }
        }
        Certificate::Obstruction(o) => {
            s.push_str("obstruction\n");
            writeln!(s, "pattern {}", o.pattern_id).unwrap();
            s.push_str(&crate::graph::io::write_graph(&o.pattern.graph));
            if let Some(e) = o.pattern.dotted {
                writeln!(s, "dotted {e}").unwrap();
            }
            let exp = match o.embedding.expansion {
                Expansion::Plain => "plain",
                Expansion::Contracted => "contracted",
            };
            writeln!(s, "expansion {exp}").unwrap();
            writeln!(s, "{}", listed("branch", &o.embedding.branch)).unwrap();
            for (i, p) in o.embedding.paths.iter().enumerate() {
                writeln!(s, "{}", listed(&format!("path {i}"), p)).unwrap();
            }
            writeln!(s, "uniform {} {}", o.k, o.n).unwrap();
            writeln!(s, "{}", listed("contract", &o.minor.contract)).unwrap();
            writeln!(s, "{}", listed("delete", &o.minor.delete)).unwrap();
            for &(e, t) in &o.minor.bijection {
                writeln!(s, "map {e} -> {t}").unwrap();
            }
        }
    }
    s
}

fn keyword<'a>(lines: &mut Lines<'a>, word: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
    let (line, toks) = lines.expect_tokens(word)?;
    if toks.first() != Some(&word) {
        return Err(ParseError::new(line, format!("expected \"{word}\"")));
    }
    Ok((line, toks[1..].to_vec()))
}

fn numbers(toks: &[&str], line: usize) -> Result<Vec<usize>, ParseError> {
    toks.iter().map(|t| parse_usize(t, line, "number")).collect()
}

fn map_line(lines: &mut Lines<'_>) -> Result<(usize, usize), ParseError> {
    let (line, toks) = keyword(lines, "map")?;
    match toks[..] {
        [a, "->", b] => Ok((parse_usize(a, line, "edge")?, parse_usize(b, line, "edge")?)),
        _ => Err(ParseError::new(line, "expected \"map i -> j\"")),
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.expect_tokens("certificate kind")?;
    let cert = match head[..] {
        ["signed-witness"] => {
            let signed = parse_signed_block(&mut lines)?;
            let mut bijection = vec![usize::MAX; signed.graph.edge_count()];
            for _ in 0..bijection.len() {
                let (i, j) = map_line(&mut lines)?;
                if i >= bijection.len() {
                    return Err(ParseError::new(lines.line(), "input edge out of range"));
                }
                bijection[i] = j;
            }
            Certificate::SignedWitness(SignedWitness { signed, bijection })
        }
        ["obstruction"] => {
            let (line, id) = keyword(&mut lines, "pattern")?;
            let [id] = id[..] else {
                return Err(ParseError::new(line, "expected \"pattern <id>\""));
            };
            let pattern_id = parse_usize(id, line, "pattern id")?;
            let (graph, _) = parse_edges(&mut lines, 0)?;
            let mut dotted = None;
            if lines.peek_keyword() == Some("dotted") {
                let (line, toks) = keyword(&mut lines, "dotted")?;
                let [e] = toks[..] else {
                    return Err(ParseError::new(line, "expected \"dotted <edge>\""));
                };
                let e = parse_usize(e, line, "edge")?;
                if e >= graph.edge_count() || graph.is_loop(e) {
                    return Err(ParseError::new(line, "dotted edge must be a link of the pattern"));
                }
                dotted = Some(e);
            }
            let (line, exp) = keyword(&mut lines, "expansion")?;
            let expansion = match exp[..] {
                ["plain"] => Expansion::Plain,
                ["contracted"] => Expansion::Contracted,
                _ => return Err(ParseError::new(line, "expected plain or contracted")),
            };
            let (line, branch) = keyword(&mut lines, "branch")?;
            let branch = numbers(&branch, line)?;
            let pattern = Pattern { graph, dotted };
            let path_count = pattern.expansion(expansion).map_or(0, |p| p.edge_count());
            let mut paths = Vec::with_capacity(path_count);
            for i in 0..path_count {
                let (line, toks) = keyword(&mut lines, "path")?;
                let nums = numbers(&toks, line)?;
                if nums.first() != Some(&i) {
                    return Err(ParseError::new(line, format!("expected path {i}")));
                }
                paths.push(nums[1..].to_vec());
            }
            let (line, kn) = keyword(&mut lines, "uniform")?;
            let [k, n] = numbers(&kn, line)?[..] else {
                return Err(ParseError::new(line, "expected \"uniform k n\""));
            };
            let (line, c) = keyword(&mut lines, "contract")?;
            let contract = numbers(&c, line)?;
            let (line, d) = keyword(&mut lines, "delete")?;
            let delete = numbers(&d, line)?;
            let mut bijection = Vec::with_capacity(n);
            for _ in 0..n {
                bijection.push(map_line(&mut lines)?);
            }
            Certificate::Obstruction(Obstruction {
                pattern_id,
                pattern,
                embedding: Embedding { expansion, branch, paths },
                k,
                n,
                minor: MinorWitness { contract, delete, bijection },
            })
        }
        _ => return Err(ParseError::new(line, "expected \"signed-witness\" or \"obstruction\"")),
    };
    if let Some((line, _)) = lines.next_tokens() {
        return Err(ParseError::new(line, "trailing content after certificate"));
    }
    Ok(cert)
}
