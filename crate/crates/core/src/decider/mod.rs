//! Decide whether `B(g)` is signed-graphic, with a certificate either way.
//!
//! Two independent tests run on every input: a structural test on the
//! reduced graph, and a search for subdivisions of forbidden patterns. They
//! must agree. An accept comes with a signed graph whose frame matroid is
//! `B(g)`; a reject comes with a uniform minor that is not ternary.

mod certificate;
mod condition4;
mod synth;

pub use certificate::{
    parse_certificate, verify_certificate, verify_certificate_with, write_certificate, Certificate, Obstruction,
    SignedWitness, Verification, VerificationMode, VerifyOptions,
};
pub use condition4::{
    check_condition4, check_condition4_with, matthews_condition4, BaseKind, BlockEntry, ComponentReport, Condition4Report,
    Condition4Rule, Violation,
};

use thiserror::Error;

use crate::bicircular::bicircular;
use crate::graph::{contains_subdivision, Embedding, Multigraph, Pattern};
use crate::matroid::{has_uniform_minor, MinorWitness};

/// Outcome of the pattern search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition5 {
    Clear,
    Witness { pattern_id: usize, embedding: Embedding },
}

impl Condition5 {
    pub fn accepts(&self) -> bool {
        matches!(self, Condition5::Clear)
    }
}

/// First pattern (in list order) with a subdivision in `g`.
pub fn check_condition5(g: &Multigraph, patterns: &[Pattern]) -> Condition5 {
    patterns
        .iter()
        .enumerate()
        .find_map(|(pattern_id, p)| contains_subdivision(g, p).map(|embedding| Condition5::Witness { pattern_id, embedding }))
        .unwrap_or(Condition5::Clear)
}

#[derive(Debug, Clone, Error)]
pub enum DecideError {
    #[error("structural test and pattern search disagree\n{cond4}pattern search: {cond5:?}")]
    InternalInconsistency { cond4: Box<Condition4Report>, cond5: Condition5 },
    #[error("condition check failed: {0}")]
    ConditionFailed(String),
    #[error("pattern {pattern_id} has no U(2,5), U(3,5) or U(4,6) minor in its bicircular matroid")]
    NoUniformMinor { pattern_id: usize },
    #[error("certificate failed verification")]
    CertificateRejected(Box<Certificate>),
}

/// Signed witness for a graph that passes the structural test.
pub fn synthesize_sigma(g: &Multigraph) -> Result<Certificate, DecideError> {
    let report = check_condition4(g);
    synth::synthesize(g, &report).map(Certificate::SignedWitness).ok_or_else(|| {
        DecideError::ConditionFailed(report.first_violation().map(|v| v.to_string()).unwrap_or_default())
    })
}

/// Search `B(g)` restricted to the embedded subdivision for a uniform minor.
/// All but the last edge of each path are contracted first; those prefixes
/// form a forest, so what remains is the bicircular matroid of the pattern.
pub fn find_obstruction(g: &Multigraph, patterns: &[Pattern], pattern_id: usize, embedding: &Embedding) -> Option<Obstruction> {
    let b = bicircular(g).restrict(&embedding.edges());
    let prefixes: Vec<usize> = embedding.paths.iter().flat_map(|p| p[..p.len() - 1].iter().copied()).collect();
    let contracted = b.contract_set(&prefixes);
    for (k, n) in [(4, 6), (2, 5), (3, 5)] {
        if let Ok(Some(w)) = has_uniform_minor(&contracted, k, n) {
            let mut contract = prefixes.clone();
            contract.extend(w.contract);
            contract.sort_unstable();
            let minor = MinorWitness { contract, delete: w.delete, bijection: w.bijection };
            return Some(Obstruction { pattern_id, pattern: patterns[pattern_id].clone(), embedding: embedding.clone(), k, n, minor });
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub accepted: bool,
    pub cond4: Condition4Report,
    pub cond5: Condition5,
    pub certificate: Certificate,
    pub verification: Verification,
}

/// Run both tests, build the certificate and verify it.
pub fn decide(g: &Multigraph, patterns: &[Pattern], opts: &VerifyOptions) -> Result<Decision, DecideError> {
    let cond4 = check_condition4(g);
    let cond5 = check_condition5(g, patterns);
    if cond4.accepts() != cond5.accepts() {
        return Err(DecideError::InternalInconsistency { cond4: Box::new(cond4), cond5 });
    }
    let certificate = match &cond5 {
        Condition5::Clear => {
            Certificate::SignedWitness(synth::synthesize(g, &cond4).expect("accepting report yields a witness"))
        }
        Condition5::Witness { pattern_id, embedding } => Certificate::Obstruction(
            find_obstruction(g, patterns, *pattern_id, embedding)
                .ok_or(DecideError::NoUniformMinor { pattern_id: *pattern_id })?,
        ),
    };
    let verification = verify_certificate_with(g, &certificate, opts);
    if !verification.passed {
        return Err(DecideError::CertificateRejected(Box::new(certificate)));
    }
    Ok(Decision { accepted: cond4.accepts(), cond4, cond5, certificate, verification })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Expansion;
    use crate::signed::{all_positive, Sign, SignedGraph};

    fn witness(g: &Multigraph) -> SignedWitness {
        match synthesize_sigma(g).unwrap() {
            Certificate::SignedWitness(w) => w,
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    fn signs_of(w: &SignedWitness) -> Vec<Sign> {
        w.signed.signs.clone()
    }

    #[test]
    fn single_loop_gets_negative_loop() {
        let w = witness(&Multigraph::cycle(1));
        assert_eq!(signs_of(&w), vec![Sign::Negative]);
    }

    #[test]
    fn doubled_tree_edge_gets_mixed_digon() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1), (0, 1), (1, 1)]);
        let w = witness(&g);
        assert_eq!(signs_of(&w), vec![Sign::Negative, Sign::Positive, Sign::Negative, Sign::Negative]);
        assert!(verify_certificate(&g, &Certificate::SignedWitness(w)));
    }

    #[test]
    fn four_skein_gets_digon_and_two_loops() {
        let w = witness(&Multigraph::skein(4));
        let g = &w.signed.graph;
        assert_eq!(g.loop_count(0), 1);
        assert_eq!(g.loop_count(1), 1);
        assert!((0..4).filter(|&e| g.is_loop(e)).all(|e| w.signed.signs[e] == Sign::Negative));
        assert!(verify_certificate(&Multigraph::skein(4), &Certificate::SignedWitness(w)));
    }

    #[test]
    fn subdivided_theta_witness_verifies() {
        // theta with a looped branch vertex: the split edge becomes a loop first
        let g = Multigraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 1), (0, 0)]);
        let w = witness(&g);
        assert!(verify_certificate(&g, &Certificate::SignedWitness(w)));
    }

    #[test]
    fn triangle_witness_verifies() {
        let g = Multigraph::cycle(3);
        assert!(verify_certificate(&g, &synthesize_sigma(&g).unwrap()));
    }

    #[test]
    fn all_positive_digon_fails() {
        let g = Multigraph::skein(2);
        let bad = SignedWitness { signed: all_positive(&g), bijection: vec![0, 1] };
        assert!(!verify_certificate(&g, &Certificate::SignedWitness(bad)));
    }

    #[test]
    fn bad_bijection_fails() {
        let g = Multigraph::skein(2);
        let mut w = witness(&g);
        w.bijection = vec![0, 0];
        assert!(!verify_certificate(&g, &Certificate::SignedWitness(w)));
    }

    #[test]
    fn sampled_mode_above_limit() {
        let g = Multigraph::path(6).disjoint_union(&Multigraph::cycle(3));
        let cert = synthesize_sigma(&g).unwrap();
        let opts = VerifyOptions { exhaustive_limit: 4, samples: 500, seed: 1 };
        let v = verify_certificate_with(&g, &cert, &opts);
        assert!(v.passed);
        assert_eq!(v.mode, VerificationMode::Sampled(500));
    }

    #[test]
    fn synthesis_refuses_reject() {
        assert!(matches!(synthesize_sigma(&Multigraph::complete(4)), Err(DecideError::ConditionFailed(_))));
    }

    #[test]
    fn k4_obstruction_is_whole_graph() {
        let k4 = Multigraph::complete(4);
        let patterns = vec![Pattern::new(k4.clone())];
        let d = decide(&k4, &patterns, &VerifyOptions::default()).unwrap();
        assert!(!d.accepted);
        let Certificate::Obstruction(o) = d.certificate else { panic!() };
        assert_eq!((o.k, o.n), (4, 6));
        assert!(o.minor.contract.is_empty() && o.minor.delete.is_empty());
    }

    #[test]
    fn hand_built_k4_certificate() {
        let k4 = Multigraph::complete(4);
        let o = Obstruction {
            pattern_id: 0,
            pattern: Pattern::new(k4.clone()),
            embedding: Embedding { expansion: Expansion::Plain, branch: vec![0, 1, 2, 3], paths: (0..6).map(|e| vec![e]).collect() },
            k: 4,
            n: 6,
            minor: MinorWitness { contract: vec![], delete: vec![], bijection: (0..6).map(|e| (e, e)).collect() },
        };
        let cert = Certificate::Obstruction(o);
        assert!(verify_certificate(&k4, &cert));
        assert_eq!(parse_certificate(&write_certificate(&cert)).unwrap(), cert);
    }

    #[test]
    fn wrong_uniform_claim_fails() {
        let k4 = Multigraph::complete(4);
        let o = Obstruction {
            pattern_id: 0,
            pattern: Pattern::new(k4.clone()),
            embedding: Embedding { expansion: Expansion::Plain, branch: vec![0, 1, 2, 3], paths: (0..6).map(|e| vec![e]).collect() },
            k: 3,
            n: 5,
            minor: MinorWitness { contract: vec![], delete: vec![5], bijection: (0..5).map(|e| (e, e)).collect() },
        };
        assert!(!verify_certificate(&k4, &Certificate::Obstruction(o)));
    }

    #[test]
    fn five_skein_obstruction_is_line() {
        let g = Multigraph::skein(5);
        let d = decide(&g, &[Pattern::new(g.clone())], &VerifyOptions::default()).unwrap();
        let Certificate::Obstruction(o) = d.certificate else { panic!() };
        assert_eq!((o.k, o.n), (2, 5));
        assert!(o.minor.contract.is_empty() && o.minor.delete.is_empty());
    }

    #[test]
    fn subdivided_k4_obstruction_contracts_paths() {
        let k4 = Multigraph::complete(4);
        let (g, _, _) = k4.subdivide(0);
        let (g, _, _) = g.subdivide(3);
        let d = decide(&g, &[Pattern::new(k4)], &VerifyOptions::default()).unwrap();
        let Certificate::Obstruction(o) = &d.certificate else { panic!() };
        assert_eq!(o.minor.contract.len(), 2);
        assert!(verify_certificate(&g, &d.certificate));
    }

    #[test]
    fn disagreement_is_reported() {
        // an empty pattern list cannot see the obstruction in K4
        let err = decide(&Multigraph::complete(4), &[], &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, DecideError::InternalInconsistency { .. }));
    }

    #[test]
    fn witness_round_trip() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 1), (1, 2), (2, 2)]);
        let cert = synthesize_sigma(&g).unwrap();
        let text = write_certificate(&cert);
        assert_eq!(parse_certificate(&text).unwrap(), cert);
        assert!(parse_certificate("signed-witness\n1 1\n0 0 -\nmap 0 => 0\n").is_err());
        let _: SignedGraph = match cert {
            Certificate::SignedWitness(w) => w.signed,
            _ => unreachable!(),
        };
    }
}
