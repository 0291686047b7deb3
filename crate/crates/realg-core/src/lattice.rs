//! Finite complete lattices given by an explicit order relation.
//!
//! Elements are dense ids `0..n`. Binary meet and join tables are cached at
//! construction, so arbitrary-subset meets and joins are folds over them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;
use thiserror::Error;

pub type Elem = usize;

/// Default bound on carrier sizes accepted by the exhaustive checkers.
pub const DEFAULT_CARRIER_CAP: usize = 64;

static CAP_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// Current carrier bound: an explicit override, else `REALG_MAX_CARRIER`, else 64.
pub fn carrier_cap() -> usize {
    let forced = CAP_OVERRIDE.load(Ordering::Relaxed);
    if forced != 0 {
        return forced;
    }
    std::env::var("REALG_MAX_CARRIER")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_CARRIER_CAP)
}

/// Overrides the carrier bound for this process. Zero clears the override.
pub fn set_carrier_cap(cap: usize) {
    CAP_OVERRIDE.store(cap, Ordering::Relaxed);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderAxiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl fmt::Display for OrderAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrderAxiom::Reflexivity => "reflexivity",
            OrderAxiom::Antisymmetry => "antisymmetry",
            OrderAxiom::Transitivity => "transitivity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("relation is not {n}x{n}")]
    Shape { n: usize },
    #[error("not a partial order: {axiom} fails at {witness:?}")]
    NotAPartialOrder { axiom: OrderAxiom, witness: Vec<Elem> },
    #[error("not a lattice: ({}, {}) has no {}", .pair.0, .pair.1, if *.missing == Bound::Meet { "meet" } else { "join" })]
    NotALattice { pair: (Elem, Elem), missing: Bound },
    #[error("carrier of size {size} exceeds the bound {cap}")]
    TooLarge { size: usize, cap: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    top: Elem,
    bot: Elem,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteLattice(n={}, covers={:?})", self.n, self.covers())
    }
}

/// Checks that `leq` (row-major, `n*n`) is a lattice order and caches its tables.
pub fn validate_lattice(n: usize, leq: Vec<bool>) -> Result<FiniteLattice, LatticeError> {
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if leq.len() != n * n {
        return Err(LatticeError::Shape { n });
    }
    let le = |a: usize, b: usize| leq[a * n + b];
    for a in 0..n {
        if !le(a, a) {
            return Err(LatticeError::NotAPartialOrder {
                axiom: OrderAxiom::Reflexivity,
                witness: vec![a, a],
            });
        }
    }
    for (a, b) in (0..n).tuple_combinations() {
        if le(a, b) && le(b, a) {
            return Err(LatticeError::NotAPartialOrder {
                axiom: OrderAxiom::Antisymmetry,
                witness: vec![a, b],
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !le(a, b) {
                continue;
            }
            for c in 0..n {
                if le(b, c) && !le(a, c) {
                    return Err(LatticeError::NotAPartialOrder {
                        axiom: OrderAxiom::Transitivity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }

    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let m = extremal_bound(n, &leq, a, b, Bound::Meet)
                .ok_or(LatticeError::NotALattice { pair: (a, b), missing: Bound::Meet })?;
            let j = extremal_bound(n, &leq, a, b, Bound::Join)
                .ok_or(LatticeError::NotALattice { pair: (a, b), missing: Bound::Join })?;
            meet[a * n + b] = m;
            meet[b * n + a] = m;
            join[a * n + b] = j;
            join[b * n + a] = j;
        }
    }
    let top = (0..n).find(|&t| (0..n).all(|a| le(a, t))).expect("binary joins give a top");
    let bot = (0..n).find(|&z| (0..n).all(|a| le(z, a))).expect("binary meets give a bottom");
    Ok(FiniteLattice { n, leq, meet, join, top, bot, labels: None })
}

fn extremal_bound(n: usize, leq: &[bool], a: usize, b: usize, which: Bound) -> Option<Elem> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let bounds: Vec<usize> = match which {
        Bound::Meet => (0..n).filter(|&c| le(c, a) && le(c, b)).collect(),
        Bound::Join => (0..n).filter(|&c| le(a, c) && le(b, c)).collect(),
    };
    bounds.iter().copied().find(|&c| {
        bounds.iter().all(|&d| match which {
            Bound::Meet => le(d, c),
            Bound::Join => le(c, d),
        })
    })
}

impl FiniteLattice {
    /// Builds a lattice from covering (or any generating) pairs `a ≤ b`.
    pub fn from_pairs(n: usize, pairs: &[(Elem, Elem)]) -> Result<Self, LatticeError> {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(LatticeError::Shape { n });
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        validate_lattice(n, leq)
    }

    pub fn from_fn(n: usize, le: impl Fn(Elem, Elem) -> bool) -> Result<Self, LatticeError> {
        let leq = (0..n * n).map(|k| le(k / n, k % n)).collect();
        validate_lattice(n, leq)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |a, b| a <= b).expect("chains are lattices")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    #[inline]
    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.le(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    /// Greatest lower bound of a subset; ⊤ for the empty set.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Least upper bound of a subset; ⊥ for the empty set.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn leq_matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(ls) => ls[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per element");
        self.labels = Some(labels);
        self
    }

    /// Same ids, reversed order.
    pub fn dual(&self) -> Self {
        let n = self.n;
        let leq = (0..n * n).map(|k| self.leq[(k % n) * n + k / n]).collect();
        FiniteLattice {
            n,
            leq,
            meet: self.join.clone(),
            join: self.meet.clone(),
            top: self.bot,
            bot: self.top,
            labels: self.labels.clone(),
        }
    }

    /// Covering pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_distributive(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements()
                    .all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
            })
        })
    }

    /// Complement table when every element has a unique complement and the
    /// lattice is distributive, i.e. the lattice is Boolean.
    pub fn boolean_complement(&self) -> Option<Vec<Elem>> {
        if !self.is_distributive() {
            return None;
        }
        self.elements()
            .map(|a| {
                self.elements()
                    .find(|&b| self.meet(a, b) == self.bot && self.join(a, b) == self.top)
            })
            .collect()
    }

    /// Relative pseudo-complement `⋁{c : c∧a ≤ b}`.
    pub fn heyting_implication(&self, a: Elem, b: Elem) -> Elem {
        self.join_all(self.elements().filter(|&c| self.le(self.meet(c, a), b)))
    }

    /// Dual pseudo-difference `⋀{c : a ≤ b∨c}`.
    pub fn coheyting_difference(&self, a: Elem, b: Elem) -> Elem {
        self.meet_all(self.elements().filter(|&c| self.le(a, self.join(b, c))))
    }

    /// Canonical text form: header plus covering pairs.
    pub fn to_text(&self) -> String {
        let mut s = format!("lattice n={}\n", self.n);
        for (a, b) in self.covers() {
            s.push_str(&format!("le {a} {b}\n"));
        }
        s
    }

    /// Smallest row-major relation code over all relabelings.
    pub fn canonical_code(&self) -> Vec<bool> {
        let n = self.n;
        (0..n)
            .permutations(n)
            .map(|p| {
                let mut code = vec![false; n * n];
                for a in 0..n {
                    for b in 0..n {
                        code[p[a] * n + p[b]] = self.le(a, b);
                    }
                }
                code
            })
            .min()
            .unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.n == other.n && self.canonical_code() == other.canonical_code()
    }
}

/// Powerset of `k` atoms; element ids are bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanAlgebra {
    pub lattice: FiniteLattice,
    pub atoms: u32,
    complement: Vec<Elem>,
}

impl BooleanAlgebra {
    pub fn complement(&self, a: Elem) -> Elem {
        self.complement[a]
    }

    pub fn and(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    pub fn or(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    pub fn complement_table(&self) -> &[Elem] {
        &self.complement
    }
}

pub fn boolean_algebra(k: u32) -> Result<BooleanAlgebra, LatticeError> {
    let cap = carrier_cap();
    if k > 16 || (1usize << k) > cap {
        let size = 1usize.checked_shl(k).unwrap_or(usize::MAX);
        return Err(LatticeError::TooLarge { size, cap });
    }
    let n = 1usize << k;
    let lattice = FiniteLattice::from_fn(n, |a, b| a & !b == 0)?;
    let labels = (0..n)
        .map(|m| {
            if m == 0 {
                "{}".to_string()
            } else {
                let names: Vec<String> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| format!("p{i}")).collect();
                format!("{{{}}}", names.join(","))
            }
        })
        .collect();
    let complement = (0..n).map(|m| !m & (n - 1)).collect();
    Ok(BooleanAlgebra { lattice: lattice.with_labels(labels), atoms: k, complement })
}

/// All lattices with at most `max_n` elements, one per isomorphism class.
///
/// Every finite poset has a linear extension, so it suffices to enumerate
/// strict orders compatible with the index order, with ⊥ = 0 and ⊤ = n-1.
pub fn enumerate_lattices(max_n: usize) -> impl Iterator<Item = FiniteLattice> {
    assert!(max_n <= 6, "enumeration is only supported up to 6 elements");
    let mut out = Vec::new();
    for n in 1..=max_n {
        let inner: Vec<(usize, usize)> = if n > 2 { (1..n - 1).tuple_combinations().collect() } else { Vec::new() };
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1u32 << inner.len()) {
            let mut leq = vec![false; n * n];
            for a in 0..n {
                leq[a * n + a] = true;
                leq[a * n + n - 1] = true;
                leq[a] = true;
            }
            for (bit, &(a, b)) in inner.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    leq[a * n + b] = true;
                }
            }
            let Ok(lat) = validate_lattice(n, leq) else { continue };
            if seen.insert(lat.canonical_code()) {
                out.push(lat);
            }
        }
    }
    out.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain() {
        let l = FiniteLattice::chain(2);
        assert_eq!((l.bot(), l.top()), (0, 1));
        assert_eq!(l.join_all([0, 1]), 1);
    }

    #[test]
    fn antisymmetry_witness() {
        let err = validate_lattice(2, vec![true, true, true, true]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotAPartialOrder { axiom: OrderAxiom::Antisymmetry, witness: vec![0, 1] }
        );
    }

    #[test]
    fn n_poset_has_no_join() {
        // 0 < 2, 0 < 3, 1 < 3: two maximal elements 2 and 3, no top.
        let err = FiniteLattice::from_pairs(4, &[(0, 2), (0, 3), (1, 3)]).unwrap_err();
        assert!(matches!(err, LatticeError::NotALattice { .. }));
    }

    #[test]
    fn boolean_small() {
        let b0 = boolean_algebra(0).unwrap();
        assert_eq!(b0.lattice.top(), b0.lattice.bot());
        let b1 = boolean_algebra(1).unwrap();
        assert_eq!(b1.complement(b1.lattice.bot()), b1.lattice.top());
        let b2 = boolean_algebra(2).unwrap();
        assert_eq!(b2.complement(0b01), 0b10);
        assert_eq!(b2.lattice.meet_all([]), 3);
        assert_eq!(b2.lattice.meet_all([0b01, 0b10]), 0);
    }

    #[test]
    fn boolean_too_large() {
        assert!(matches!(boolean_algebra(17), Err(LatticeError::TooLarge { .. })));
    }

    #[test]
    fn enumeration_counts() {
        let mut counts = [0usize; 7];
        for l in enumerate_lattices(6) {
            counts[l.size()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn text_round_trip() {
        let b = boolean_algebra(2).unwrap().lattice;
        let text = b.to_text();
        assert_eq!(text, "lattice n=4\nle 0 1\nle 0 2\nle 1 3\nle 2 3\n");
    }

    #[test]
    fn dual_swaps_bounds() {
        let l = FiniteLattice::chain(3);
        let d = l.dual();
        assert_eq!((d.top(), d.bot()), (0, 2));
        assert_eq!(d.dual().leq_matrix(), l.leq_matrix());
    }
}
