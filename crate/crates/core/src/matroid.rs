//! Matroids given by an independence oracle.
//!
//! Nothing here assumes the oracle actually describes a matroid;
//! [`check_axioms`] tests that exhaustively on small ground sets. Minors are
//! lazy: deleting or contracting wraps the predicate instead of
//! materializing the independent sets.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type Element = usize;

type Oracle = Arc<dyn Fn(&[Element]) -> bool + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground set has {size} elements, exhaustive limit is {limit}")]
    GroundTooLarge { size: usize, limit: usize },
}

#[derive(Clone)]
pub struct OracleMatroid {
    ground: Vec<Element>,
    indep: Oracle,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for OracleMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleMatroid")
            .field("ground", &self.ground)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

/// Evidence that `M / contract \ delete` is isomorphic to a target matroid
/// on elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub contract: Vec<Element>,
    pub delete: Vec<Element>,
    /// Remaining host element -> target element.
    pub bijection: Vec<(Element, Element)>,
}

impl OracleMatroid {
    /// Matroid on `ground` (deduplicated and sorted) with the given
    /// independence predicate. The predicate only ever sees subsets of the
    /// ground set.
    pub fn new<F>(ground: impl IntoIterator<Item = Element>, indep: F) -> Self
    where
        F: Fn(&[Element]) -> bool + Send + Sync + 'static,
    {
        let mut ground: Vec<Element> = ground.into_iter().collect();
        ground.sort_unstable();
        ground.dedup();
        Self { ground, indep: Arc::new(indep), labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.ground.len());
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, e: Element) -> Option<&str> {
        let i = self.ground.binary_search(&e).ok()?;
        self.labels.as_ref().map(|l| l[i].as_str())
    }

    pub fn ground(&self) -> &[Element] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn is_independent(&self, set: &[Element]) -> bool {
        (self.indep)(set)
    }

    /// Elements of the ground set selected by a bitmask over ground positions.
    pub fn elements_of(&self, mask: u64) -> Vec<Element> {
        self.ground
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    }

    pub fn is_independent_mask(&self, mask: u64) -> bool {
        self.is_independent(&self.elements_of(mask))
    }

    /// Size of a greedily grown maximal independent subset of `set`.
    pub fn rank(&self, set: &[Element]) -> usize {
        let mut basis: Vec<Element> = Vec::with_capacity(set.len());
        for &e in set {
            basis.push(e);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        basis.len()
    }

    pub fn full_rank(&self) -> usize {
        self.rank(&self.ground)
    }

    fn check_size(&self, limit: usize) -> Result<(), MatroidError> {
        if self.len() > limit {
            Err(MatroidError::GroundTooLarge { size: self.len(), limit })
        } else {
            Ok(())
        }
    }

    /// Independence of every subset, indexed by bitmask over ground positions.
    pub fn independence_table(&self) -> Vec<bool> {
        assert!(self.len() <= 24, "independence table too large");
        (0..1u64 << self.len()).map(|m| self.is_independent_mask(m)).collect()
    }

    /// All minimal dependent sets, each sorted.
    pub fn circuits(&self) -> Result<Vec<Vec<Element>>, MatroidError> {
        self.check_size(20)?;
        Ok(self.circuit_masks().into_iter().map(|m| self.elements_of(m)).collect())
    }

    fn circuit_masks(&self) -> Vec<u64> {
        let table = self.independence_table();
        let n = self.len();
        (1..1u64 << n)
            .filter(|&m| !table[m as usize])
            .filter(|&m| (0..n).filter(|i| m >> i & 1 == 1).all(|i| table[(m & !(1 << i)) as usize]))
            .collect()
    }

    /// `M \ e`.
    pub fn delete(&self, e: Element) -> OracleMatroid {
        self.delete_set(&[e])
    }

    pub fn delete_set(&self, set: &[Element]) -> OracleMatroid {
        let keep: Vec<Element> = self.ground.iter().copied().filter(|x| !set.contains(x)).collect();
        self.restrict(&keep)
    }

    /// Restriction to `keep`, a subset of the ground set.
    pub fn restrict(&self, keep: &[Element]) -> OracleMatroid {
        let ground: Vec<Element> = keep.iter().copied().filter(|x| self.ground.binary_search(x).is_ok()).collect();
        let labels = self.labels.as_ref().map(|l| {
            ground
                .iter()
                .map(|x| l[self.ground.binary_search(x).unwrap()].clone())
                .collect()
        });
        let mut m = OracleMatroid { ground, indep: self.indep.clone(), labels: None };
        m.ground.sort_unstable();
        m.labels = labels;
        m
    }

    /// `M / e`. Contracting a matroid loop is the same as deleting it.
    pub fn contract(&self, e: Element) -> OracleMatroid {
        self.contract_set(&[e])
    }

    /// `M / set`. The set is reduced to a maximal independent subset first,
    /// which gives the same minor.
    pub fn contract_set(&self, set: &[Element]) -> OracleMatroid {
        let mut basis = Vec::new();
        for &e in set {
            basis.push(e);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        let inner = self.indep.clone();
        let rest = self.delete_set(set);
        OracleMatroid {
            ground: rest.ground,
            indep: Arc::new(move |a: &[Element]| {
                let mut all = Vec::with_capacity(a.len() + basis.len());
                all.extend_from_slice(a);
                all.extend_from_slice(&basis);
                inner(&all)
            }),
            labels: rest.labels,
        }
    }

    /// Apply a minor witness: contract, delete, then rename the survivors.
    pub fn minor(&self, w: &MinorWitness) -> OracleMatroid {
        let m = self.contract_set(&w.contract).delete_set(&w.delete);
        let map: HashMap<Element, Element> = w.bijection.iter().copied().collect();
        let back: HashMap<Element, Element> = w.bijection.iter().map(|&(a, b)| (b, a)).collect();
        let inner = m.indep.clone();
        OracleMatroid::new(m.ground.iter().filter_map(|x| map.get(x).copied()), move |a: &[Element]| {
            let orig: Vec<Element> = a.iter().map(|x| back[x]).collect();
            inner(&orig)
        })
    }
}

/// `U_{k,n}` on elements `0..n`.
pub fn uniform(k: usize, n: usize) -> OracleMatroid {
    assert!(k <= n);
    OracleMatroid::new(0..n, move |a: &[Element]| a.len() <= k)
}

/// Direct sum; elements of `b` are shifted past the largest element of `a`.
/// Returns the sum and the shift applied to `b`.
pub fn direct_sum(a: &OracleMatroid, b: &OracleMatroid) -> (OracleMatroid, usize) {
    let shift = a.ground.last().map_or(0, |&x| x + 1);
    let (ia, ib) = (a.indep.clone(), b.indep.clone());
    let ground: Vec<Element> = a.ground.iter().copied().chain(b.ground.iter().map(|&x| x + shift)).collect();
    let m = OracleMatroid::new(ground, move |set: &[Element]| {
        let (lo, hi): (Vec<Element>, Vec<Element>) = set.iter().partition(|&&x| x < shift);
        let hi: Vec<Element> = hi.into_iter().map(|x| x - shift).collect();
        ia(&lo) && ib(&hi)
    });
    (m, shift)
}

/// A violated matroid axiom found by [`check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("the empty set is dependent")]
    EmptyDependent,
    #[error("{set:?} is independent but its subset {subset:?} is not")]
    NotDownwardClosed { set: Vec<Element>, subset: Vec<Element> },
    #[error("{independent:?} is maximal in {within:?} but smaller than its rank {rank}")]
    Exchange { independent: Vec<Element>, within: Vec<Element>, rank: usize },
}

/// Exhaustively check that the oracle is a matroid: the empty set is
/// independent, independence is closed under subsets, and every maximal
/// independent subset of any set has the same size.
pub fn check_axioms(m: &OracleMatroid) -> Result<(), AxiomViolation> {
    assert!(m.len() <= 16, "axiom check is exhaustive");
    let n = m.len();
    let table = m.independence_table();
    if !table[0] {
        return Err(AxiomViolation::EmptyDependent);
    }
    for mask in 1..1u64 << n {
        if table[mask as usize] {
            for i in 0..n {
                let sub = mask & !(1 << i);
                if mask >> i & 1 == 1 && !table[sub as usize] {
                    return Err(AxiomViolation::NotDownwardClosed {
                        set: m.elements_of(mask),
                        subset: m.elements_of(sub),
                    });
                }
            }
        }
    }
    // largest independent subset size of every set
    let mut maxsize = vec![0usize; 1 << n];
    for mask in 1..1u64 << n {
        maxsize[mask as usize] = if table[mask as usize] {
            mask.count_ones() as usize
        } else {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| maxsize[(mask & !(1 << i)) as usize])
                .max()
                .unwrap()
        };
    }
    let full = (1u64 << n) - 1;
    for mask in 0..1u64 << n {
        if !table[mask as usize] {
            continue;
        }
        let ext = (0..n)
            .filter(|i| mask >> i & 1 == 0 && table[(mask | 1 << i) as usize])
            .fold(0u64, |acc, i| acc | 1 << i);
        let within = full & !ext;
        if maxsize[within as usize] != mask.count_ones() as usize {
            return Err(AxiomViolation::Exchange {
                independent: m.elements_of(mask),
                within: m.elements_of(within),
                rank: maxsize[within as usize],
            });
        }
    }
    Ok(())
}

/// Ground-set bijection `m -> other` preserving independence both ways,
/// if one exists. Exhaustive, with candidates pruned by how many circuits
/// of each size contain an element.
pub fn is_isomorphic_matroid(
    m: &OracleMatroid,
    other: &OracleMatroid,
) -> Result<Option<Vec<(Element, Element)>>, MatroidError> {
    m.check_size(10)?;
    other.check_size(10)?;
    let n = m.len();
    if n != other.len() {
        return Ok(None);
    }
    let (ca, cb) = (m.circuit_masks(), other.circuit_masks());
    if ca.len() != cb.len() {
        return Ok(None);
    }
    let signature = |circuits: &[u64], i: usize| {
        let mut sig = vec![0usize; n + 1];
        for &c in circuits {
            if c >> i & 1 == 1 {
                sig[c.count_ones() as usize] += 1;
            }
        }
        sig
    };
    let sa: Vec<Vec<usize>> = (0..n).map(|i| signature(&ca, i)).collect();
    let sb: Vec<Vec<usize>> = (0..n).map(|i| signature(&cb, i)).collect();
    {
        let (mut x, mut y) = (sa.clone(), sb.clone());
        x.sort();
        y.sort();
        if x != y {
            return Ok(None);
        }
    }
    let circuit_b: HashSet<u64> = cb.iter().copied().collect();
    // circuits of m grouped by their highest position, checked once that
    // position is assigned
    let mut by_top: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &c in &ca {
        by_top[63 - c.leading_zeros() as usize].push(c);
    }

    fn assign(
        i: usize,
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        sa: &[Vec<usize>],
        sb: &[Vec<usize>],
        by_top: &[Vec<u64>],
        circuit_b: &HashSet<u64>,
    ) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            perm.push(j);
            let ok = by_top[i].iter().all(|&c| {
                let image = (0..=i).filter(|&k| c >> k & 1 == 1).fold(0u64, |acc, k| acc | 1 << perm[k]);
                circuit_b.contains(&image)
            });
            if ok {
                used[j] = true;
                if assign(i + 1, n, perm, used, sa, sb, by_top, circuit_b) {
                    return true;
                }
                used[j] = false;
            }
            perm.pop();
        }
        false
    }

    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !assign(0, n, &mut perm, &mut used, &sa, &sb, &by_top, &circuit_b) {
        return Ok(None);
    }
    let (ta, tb) = (m.independence_table(), other.independence_table());
    let agrees = (0..1u64 << n).all(|mask| {
        let image = (0..n).filter(|&k| mask >> k & 1 == 1).fold(0u64, |acc, k| acc | 1 << perm[k]);
        ta[mask as usize] == tb[image as usize]
    });
    if !agrees {
        return Ok(None);
    }
    Ok(Some((0..n).map(|i| (m.ground[i], other.ground[perm[i]])).collect()))
}

pub(crate) fn combinations(items: &[Element], k: usize, mut f: impl FnMut(&[Element]) -> bool) -> bool {
    fn go(items: &[Element], k: usize, start: usize, cur: &mut Vec<Element>, f: &mut dyn FnMut(&[Element]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if go(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(items, k, 0, &mut Vec::with_capacity(k), &mut f)
}

/// Search for a `U_{k,n}` minor. Contract sets are independent of size
/// `r(M) - k`, which loses nothing: every minor has such a presentation.
pub fn has_uniform_minor(m: &OracleMatroid, k: usize, n: usize) -> Result<Option<MinorWitness>, MatroidError> {
    m.check_size(14)?;
    let r = m.full_rank();
    if k > n || k > r || n > m.len() || n - k > m.len() - r {
        return Ok(None);
    }
    let c = r - k;
    let ground = m.ground().to_vec();
    let mut found = None;

    combinations(&ground, c, |contract| {
        if !m.is_independent(contract) {
            return false;
        }
        let rest: Vec<Element> = ground.iter().copied().filter(|x| !contract.contains(x)).collect();
        // elements that stay non-loops after contracting
        let live: Vec<Element> = rest
            .iter()
            .copied()
            .filter(|&x| {
                let mut s = contract.to_vec();
                s.push(x);
                k == 0 || m.is_independent(&s)
            })
            .collect();
        let candidates = if k == 0 { &rest } else { &live };
        let mut chosen = Vec::with_capacity(n);
        if pick_uniform(m, contract, candidates, 0, k, n, &mut chosen) {
            let delete = rest.iter().copied().filter(|x| !chosen.contains(x)).collect();
            found = Some(MinorWitness {
                contract: contract.to_vec(),
                delete,
                bijection: chosen.iter().enumerate().map(|(i, &x)| (x, i)).collect(),
            });
            return true;
        }
        false
    });
    Ok(found)
}

/// Grow `chosen` to `n` elements of `candidates` so that every `k`-subset is
/// independent together with `contract`. Each new element is checked
/// against the `k - 1`-subsets already chosen.
fn pick_uniform(
    m: &OracleMatroid,
    contract: &[Element],
    candidates: &[Element],
    start: usize,
    k: usize,
    n: usize,
    chosen: &mut Vec<Element>,
) -> bool {
    if chosen.len() == n {
        return true;
    }
    for i in start..candidates.len() {
        if candidates.len() - i < n - chosen.len() {
            break;
        }
        let x = candidates[i];
        let ok = k == 0
            || chosen.len() + 1 < k
            || !combinations(chosen, k - 1, |sub| {
                let mut s = contract.to_vec();
                s.extend_from_slice(sub);
                s.push(x);
                !m.is_independent(&s)
            });
        if ok {
            chosen.push(x);
            if pick_uniform(m, contract, candidates, i + 1, k, n, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Replay a witness and confirm, on every subset, that the minor is `U_{k,n}`.
pub fn witness_is_uniform(m: &OracleMatroid, w: &MinorWitness, k: usize, n: usize) -> bool {
    let ground: HashSet<Element> = m.ground().iter().copied().collect();
    let mut seen = HashSet::new();
    let parts = w.contract.iter().chain(&w.delete).chain(w.bijection.iter().map(|(a, _)| a));
    for &x in parts {
        if !ground.contains(&x) || !seen.insert(x) {
            return false;
        }
    }
    if seen.len() != ground.len() || w.bijection.len() != n || !m.is_independent(&w.contract) {
        return false;
    }
    let targets: HashSet<Element> = w.bijection.iter().map(|&(_, t)| t).collect();
    if targets.len() != n || targets.iter().any(|&t| t >= n) {
        return false;
    }
    let minor = m.minor(w);
    (0..1u64 << n).all(|mask| minor.is_independent_mask(mask) == (mask.count_ones() as usize <= k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(a: &OracleMatroid, b: &OracleMatroid) -> bool {
        is_isomorphic_matroid(a, b).unwrap().is_some()
    }

    #[test]
    fn uniform_examples() {
        let u24 = uniform(2, 4);
        assert!(u24.is_independent(&[0, 3]));
        assert!(!u24.is_independent(&[0, 1, 2]));
        assert_eq!(u24.rank(&[0, 1, 2]), 2);
        let u02 = uniform(0, 2);
        assert!(u02.is_independent(&[]));
        assert!(!u02.is_independent(&[1]));
        let u33 = uniform(3, 3);
        assert!(u33.is_independent(&[0, 1, 2]));
        assert_eq!(u33.rank(&[]), 0);
    }

    #[test]
    fn uniform_minors() {
        assert!(iso(&uniform(2, 4).contract(1), &uniform(1, 3)));
        assert!(iso(&uniform(2, 5).delete(4), &uniform(2, 4)));
        assert!(!iso(&uniform(2, 5).delete(4), &uniform(3, 4)));
    }

    #[test]
    fn direct_sum_adds_ranks() {
        let (s, shift) = direct_sum(&uniform(2, 4), &uniform(1, 3));
        assert_eq!(shift, 4);
        assert_eq!(s.len(), 7);
        assert_eq!(s.full_rank(), 3);
        assert!(check_axioms(&s).is_ok());
    }

    #[test]
    fn circuits_of_u24() {
        let c = uniform(2, 4).circuits().unwrap();
        assert_eq!(c, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn circuits_limit() {
        let big = uniform(3, 21);
        assert_eq!(big.circuits(), Err(MatroidError::GroundTooLarge { size: 21, limit: 20 }));
        assert!(is_isomorphic_matroid(&uniform(1, 11), &uniform(1, 11)).is_err());
        assert!(has_uniform_minor(&uniform(1, 15), 1, 2).is_err());
    }

    #[test]
    fn axioms_catch_non_matroid() {
        // independent sets: {}, {0}, {1}, {2}, {0,1} -- {2} cannot be extended
        // from {0,1}'s perspective, violating exchange
        let bad = OracleMatroid::new(0..3, |a: &[Element]| {
            let mut s = a.to_vec();
            s.sort_unstable();
            matches!(s.as_slice(), [] | [_] | [0, 1])
        });
        assert!(matches!(check_axioms(&bad), Err(AxiomViolation::Exchange { .. })));
        let not_closed = OracleMatroid::new(0..2, |a: &[Element]| a.len() != 1);
        assert!(matches!(check_axioms(&not_closed), Err(AxiomViolation::NotDownwardClosed { .. })));
        assert!(check_axioms(&uniform(3, 6)).is_ok());
    }

    #[test]
    fn uniform_minor_search() {
        let u46 = uniform(4, 6);
        let w = has_uniform_minor(&u46, 3, 5).unwrap().unwrap();
        assert_eq!(w.contract.len(), 1);
        assert!(witness_is_uniform(&u46, &w, 3, 5));
        assert!(has_uniform_minor(&u46, 2, 5).unwrap().is_none());
        let w = has_uniform_minor(&uniform(2, 5), 2, 5).unwrap().unwrap();
        assert!(w.contract.is_empty() && w.delete.is_empty());
    }

    #[test]
    fn tampered_witness_rejected() {
        let u25 = uniform(2, 5);
        let mut w = has_uniform_minor(&u25, 2, 4).unwrap().unwrap();
        assert!(witness_is_uniform(&u25, &w, 2, 4));
        assert!(!witness_is_uniform(&u25, &w, 1, 4));
        w.contract.push(w.delete[0]);
        assert!(!witness_is_uniform(&u25, &w, 2, 4));
    }

    #[test]
    fn rank_identities_for_minors() {
        let (m, _) = direct_sum(&uniform(2, 3), &uniform(1, 2));
        for e in m.ground().to_vec() {
            let del = m.delete(e);
            let con = m.contract(e);
            let rest: Vec<Element> = m.ground().iter().copied().filter(|&x| x != e).collect();
            for mask in 0..1u64 << rest.len() {
                let a: Vec<Element> = (0..rest.len()).filter(|i| mask >> i & 1 == 1).map(|i| rest[i]).collect();
                assert_eq!(del.rank(&a), m.rank(&a));
                let mut ae = a.clone();
                ae.push(e);
                assert_eq!(con.rank(&a), m.rank(&ae) - m.rank(&[e]));
            }
        }
    }

    #[test]
    fn circuits_are_incomparable_and_cover_dependents() {
        let (m, _) = direct_sum(&uniform(2, 4), &uniform(1, 2));
        let circuits = m.circuit_masks();
        for &a in &circuits {
            for &b in &circuits {
                assert!(a == b || a & b != a);
            }
        }
        let table = m.independence_table();
        for mask in 0..1u64 << m.len() {
            if !table[mask as usize] {
                assert!(circuits.iter().any(|&c| c & mask == c));
            }
        }
    }

    #[test]
    fn isomorphism_symmetric() {
        let (a, _) = direct_sum(&uniform(1, 2), &uniform(2, 3));
        let (b, _) = direct_sum(&uniform(2, 3), &uniform(1, 2));
        assert!(iso(&a, &b) && iso(&b, &a));
        assert!(iso(&a, &a));
        assert!(!iso(&a, &uniform(3, 5)));
    }
}
