//! Implicative, disjunctive and conjunctive structures over a finite lattice.
//!
//! The arbitrary-subset laws are certified through their nullary and binary
//! instances: a meet over a finite set is a fold of binary meets starting at ⊤,
//! so a law that holds for ∅ and for every pair holds for every finite subset
//! by induction on its size. `sweep_subsets` re-checks them on all subsets.

use std::fmt;

use thiserror::Error;

use crate::lattice::{carrier_cap, BooleanAlgebra, Elem, FiniteLattice, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Implicative,
    Disjunctive,
    Conjunctive,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Implicative => "implicative",
            Kind::Disjunctive => "disjunctive",
            Kind::Conjunctive => "conjunctive",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "implicative" => Ok(Kind::Implicative),
            "disjunctive" => Ok(Kind::Disjunctive),
            "conjunctive" => Ok(Kind::Conjunctive),
            other => Err(format!("unknown structure kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    // implicative
    ArrowTop,
    ArrowMeet,
    ArrowVariance,
    // disjunctive
    ParTopLeft,
    ParTopRight,
    NegTop,
    ParMeetLeft,
    ParMeetRight,
    NegMeet,
    // conjunctive
    TensorBotLeft,
    TensorBotRight,
    NegBot,
    TensorJoinLeft,
    TensorJoinRight,
    NegJoin,
    // shared variance
    NegAntitone,
    LawMonotone,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::ArrowTop => "distributivity-nullary",
            Axiom::ArrowMeet => "distributivity-binary",
            Axiom::ArrowVariance => "variance",
            Axiom::ParTopLeft => "derived-top-par-left",
            Axiom::ParTopRight => "derived-top-par-right",
            Axiom::NegTop => "commutation-nullary",
            Axiom::ParMeetLeft => "par-meet-left",
            Axiom::ParMeetRight => "par-meet-right",
            Axiom::NegMeet => "commutation-binary",
            Axiom::TensorBotLeft => "derived-bot-tensor-left",
            Axiom::TensorBotRight => "derived-bot-tensor-right",
            Axiom::NegBot => "commutation-nullary",
            Axiom::TensorJoinLeft => "tensor-join-left",
            Axiom::TensorJoinRight => "tensor-join-right",
            Axiom::NegJoin => "commutation-binary",
            Axiom::NegAntitone => "neg-antitone",
            Axiom::LawMonotone => "monotone",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("axiom {axiom} violated at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<Elem> },
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("table entry {0} is outside the carrier")]
    OutOfCarrier(Elem),
    #[error("carrier of size {size} exceeds the bound {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("machine values sit on the {found} side, the {wanted} construction needs the other")]
    PolarityMismatch { wanted: Kind, found: &'static str },
    #[error("malformed machine: {0}")]
    Machine(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn violation(axiom: Axiom, witness: Vec<Elem>) -> StructureError {
    StructureError::AxiomViolation { axiom, witness }
}

fn check_table(l: &FiniteLattice, table: &[Elem], arity: u32) -> Result<(), StructureError> {
    let expected = l.size().pow(arity);
    if table.len() != expected {
        return Err(StructureError::TableShape { expected, found: table.len() });
    }
    if let Some(&bad) = table.iter().find(|&&x| x >= l.size()) {
        return Err(StructureError::OutOfCarrier(bad));
    }
    Ok(())
}

fn check_cap(l: &FiniteLattice) -> Result<(), StructureError> {
    let cap = carrier_cap();
    if l.size() > cap {
        return Err(StructureError::TooLarge { size: l.size(), cap });
    }
    Ok(())
}

fn first1(n: usize, bad: impl Fn(Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n).find(|&a| bad(a)).map(|a| vec![a])
}

fn first2(n: usize, bad: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            if bad(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn first3(n: usize, bad: impl Fn(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn run_checks(checks: Vec<(Axiom, Option<Vec<Elem>>)>) -> Result<(), StructureError> {
    match checks.into_iter().find_map(|(ax, w)| w.map(|w| (ax, w))) {
        Some((ax, w)) => Err(violation(ax, w)),
        None => Ok(()),
    }
}

/// A first-failing subset found by `sweep_subsets`: the subset as a sorted
/// element list and the extra argument the law was instantiated with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetViolation {
    pub law: &'static str,
    pub subset: Vec<Elem>,
    pub arg: Option<Elem>,
}

/// Largest carrier on which `sweep_subsets` enumerates every subset.
pub const SWEEP_LIMIT: usize = 12;

fn subsets(n: usize) -> impl Iterator<Item = Vec<Elem>> {
    assert!(n <= SWEEP_LIMIT, "full subset sweeps are limited to {SWEEP_LIMIT} elements");
    (0u32..(1u32 << n)).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicativeStructure {
    lattice: FiniteLattice,
    arrow: Vec<Elem>,
}

pub fn check_implicative(lattice: FiniteLattice, arrow: Vec<Elem>) -> Result<ImplicativeStructure, StructureError> {
    check_table(&lattice, &arrow, 2)?;
    check_cap(&lattice)?;
    let s = ImplicativeStructure { lattice, arrow };
    run_checks(implicative_axioms(&s))?;
    Ok(s)
}

/// Every axiom with its first witness of failure, if any.
pub fn implicative_axioms(s: &ImplicativeStructure) -> Vec<(Axiom, Option<Vec<Elem>>)> {
    let l = &s.lattice;
    let n = l.size();
    vec![
        (Axiom::ArrowTop, first1(n, |a| s.arrow(a, l.top()) != l.top())),
        (
            Axiom::ArrowMeet,
            first3(n, |a, b, c| s.arrow(a, l.meet(b, c)) != l.meet(s.arrow(a, b), s.arrow(a, c))),
        ),
        (
            Axiom::ArrowVariance,
            first2(n, |a0, a| l.le(a0, a) && (0..n).any(|b| !l.le(s.arrow(a, b), s.arrow(a0, b)))),
        ),
    ]
}

impl ImplicativeStructure {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow[a * self.lattice.size() + b]
    }

    pub fn arrow_table(&self) -> &[Elem] {
        &self.arrow
    }

    pub fn sweep_subsets(&self) -> Result<(), SubsetViolation> {
        let l = &self.lattice;
        for set in subsets(l.size()) {
            for a in l.elements() {
                let lhs = self.arrow(a, l.meet_all(set.iter().copied()));
                let rhs = l.meet_all(set.iter().map(|&b| self.arrow(a, b)));
                if lhs != rhs {
                    return Err(SubsetViolation { law: "arrow-meet", subset: set, arg: Some(a) });
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjunctiveStructure {
    lattice: FiniteLattice,
    par: Vec<Elem>,
    neg: Vec<Elem>,
}

pub fn check_disjunctive(
    lattice: FiniteLattice,
    par: Vec<Elem>,
    neg: Vec<Elem>,
) -> Result<DisjunctiveStructure, StructureError> {
    check_table(&lattice, &par, 2)?;
    check_table(&lattice, &neg, 1)?;
    check_cap(&lattice)?;
    let s = DisjunctiveStructure { lattice, par, neg };
    run_checks(disjunctive_axioms(&s))?;
    Ok(s)
}

/// Every axiom with its first witness of failure, if any.
pub fn disjunctive_axioms(s: &DisjunctiveStructure) -> Vec<(Axiom, Option<Vec<Elem>>)> {
    let l = &s.lattice;
    let n = l.size();
    let (top, bot) = (l.top(), l.bot());
    vec![
        (Axiom::ParTopLeft, first1(n, |a| s.par(top, a) != top)),
        (Axiom::ParTopRight, first1(n, |a| s.par(a, top) != top)),
        (Axiom::NegTop, (s.neg(top) != bot).then(|| vec![top])),
        (
            Axiom::ParMeetLeft,
            first3(n, |b1, b2, a| s.par(l.meet(b1, b2), a) != l.meet(s.par(b1, a), s.par(b2, a))),
        ),
        (
            Axiom::ParMeetRight,
            first3(n, |a, b1, b2| s.par(a, l.meet(b1, b2)) != l.meet(s.par(a, b1), s.par(a, b2))),
        ),
        (Axiom::NegMeet, first2(n, |a, b| s.neg(l.meet(a, b)) != l.join(s.neg(a), s.neg(b)))),
        (Axiom::NegAntitone, first2(n, |a, b| l.le(a, b) && !l.le(s.neg(b), s.neg(a)))),
        (
            Axiom::LawMonotone,
            first2(n, |a, a1| l.le(a, a1) && (0..n).any(|b| !l.le(s.par(a, b), s.par(a1, b)) || !l.le(s.par(b, a), s.par(b, a1)))),
        ),
    ]
}

impl DisjunctiveStructure {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn par(&self, a: Elem, b: Elem) -> Elem {
        self.par[a * self.lattice.size() + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    /// Induced arrow `¬a ⅋ b`.
    #[inline]
    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.par(self.neg(a), b)
    }

    pub fn par_table(&self) -> &[Elem] {
        &self.par
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    pub fn sweep_subsets(&self) -> Result<(), SubsetViolation> {
        let l = &self.lattice;
        for set in subsets(l.size()) {
            let m = l.meet_all(set.iter().copied());
            if self.neg(m) != l.join_all(set.iter().map(|&b| self.neg(b))) {
                return Err(SubsetViolation { law: "neg-meet", subset: set, arg: None });
            }
            for a in l.elements() {
                if self.par(m, a) != l.meet_all(set.iter().map(|&b| self.par(b, a))) {
                    return Err(SubsetViolation { law: "par-meet-left", subset: set, arg: Some(a) });
                }
                if self.par(a, m) != l.meet_all(set.iter().map(|&b| self.par(a, b))) {
                    return Err(SubsetViolation { law: "par-meet-right", subset: set, arg: Some(a) });
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjunctiveStructure {
    lattice: FiniteLattice,
    tensor: Vec<Elem>,
    neg: Vec<Elem>,
}

pub fn check_conjunctive(
    lattice: FiniteLattice,
    tensor: Vec<Elem>,
    neg: Vec<Elem>,
) -> Result<ConjunctiveStructure, StructureError> {
    check_table(&lattice, &tensor, 2)?;
    check_table(&lattice, &neg, 1)?;
    check_cap(&lattice)?;
    let s = ConjunctiveStructure { lattice, tensor, neg };
    run_checks(conjunctive_axioms(&s))?;
    Ok(s)
}

/// Every axiom with its first witness of failure, if any.
pub fn conjunctive_axioms(s: &ConjunctiveStructure) -> Vec<(Axiom, Option<Vec<Elem>>)> {
    let l = &s.lattice;
    let n = l.size();
    let (top, bot) = (l.top(), l.bot());
    vec![
        (Axiom::TensorBotLeft, first1(n, |a| s.tensor(bot, a) != bot)),
        (Axiom::TensorBotRight, first1(n, |a| s.tensor(a, bot) != bot)),
        (Axiom::NegBot, (s.neg(bot) != top).then(|| vec![bot])),
        (
            Axiom::TensorJoinLeft,
            first3(n, |b1, b2, a| s.tensor(l.join(b1, b2), a) != l.join(s.tensor(b1, a), s.tensor(b2, a))),
        ),
        (
            Axiom::TensorJoinRight,
            first3(n, |a, b1, b2| s.tensor(a, l.join(b1, b2)) != l.join(s.tensor(a, b1), s.tensor(a, b2))),
        ),
        (Axiom::NegJoin, first2(n, |a, b| s.neg(l.join(a, b)) != l.meet(s.neg(a), s.neg(b)))),
        (Axiom::NegAntitone, first2(n, |a, b| l.le(a, b) && !l.le(s.neg(b), s.neg(a)))),
        (
            Axiom::LawMonotone,
            first2(n, |a, a1| {
                l.le(a, a1) && (0..n).any(|b| !l.le(s.tensor(a, b), s.tensor(a1, b)) || !l.le(s.tensor(b, a), s.tensor(b, a1)))
            }),
        ),
    ]
}

impl ConjunctiveStructure {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        self.tensor[a * self.lattice.size() + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    /// `¬(a ⊗ ¬b)`. Not meet-distributive on the right in general.
    #[inline]
    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.neg(self.tensor(a, self.neg(b)))
    }

    pub fn tensor_table(&self) -> &[Elem] {
        &self.tensor
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    pub fn sweep_subsets(&self) -> Result<(), SubsetViolation> {
        let l = &self.lattice;
        for set in subsets(l.size()) {
            let j = l.join_all(set.iter().copied());
            if self.neg(j) != l.meet_all(set.iter().map(|&b| self.neg(b))) {
                return Err(SubsetViolation { law: "neg-join", subset: set, arg: None });
            }
            for a in l.elements() {
                if self.tensor(j, a) != l.join_all(set.iter().map(|&b| self.tensor(b, a))) {
                    return Err(SubsetViolation { law: "tensor-join-left", subset: set, arg: Some(a) });
                }
                if self.tensor(a, j) != l.join_all(set.iter().map(|&b| self.tensor(a, b))) {
                    return Err(SubsetViolation { law: "tensor-join-right", subset: set, arg: Some(a) });
                }
                if self.arrow(j, a) != l.meet_all(set.iter().map(|&b| self.arrow(b, a))) {
                    return Err(SubsetViolation { law: "arrow-join-left", subset: set, arg: Some(a) });
                }
            }
        }
        Ok(())
    }
}

/// An `a` and a set `B` with `⋀_{b∈B}(a→b) ≰ a→⋀B` for the conjunctive
/// arrow. Checking `B = ∅` and two-element sets is enough: larger sets
/// follow by induction.
pub fn conjunctive_arrow_gap(c: &ConjunctiveStructure) -> Option<(Elem, Vec<Elem>)> {
    let l = c.lattice();
    for a in l.elements() {
        if !l.le(l.top(), c.arrow(a, l.top())) {
            return Some((a, Vec::new()));
        }
        for b1 in l.elements() {
            for b2 in b1 + 1..l.size() {
                if !l.le(l.meet(c.arrow(a, b1), c.arrow(a, b2)), c.arrow(a, l.meet(b1, b2))) {
                    return Some((a, vec![b1, b2]));
                }
            }
        }
    }
    None
}

/// Whether `(a, B)` witnesses `⋀_{b∈B}(a→b) ≰ a→⋀B`.
pub fn is_conjunctive_arrow_gap(c: &ConjunctiveStructure, a: Elem, set: &[Elem]) -> bool {
    let l = c.lattice();
    !l.le(l.meet_all(set.iter().map(|&b| c.arrow(a, b))), c.arrow(a, l.meet_all(set.iter().copied())))
}

/// The conjunctive arrow `¬(a ⊗ ¬b)`.
pub fn arrow_conjunctive(c: &ConjunctiveStructure, a: Elem, b: Elem) -> Elem {
    c.arrow(a, b)
}

/// `a → b := ¬a ⅋ b`, re-checked in debug builds.
pub fn implicative_from_disjunctive(d: &DisjunctiveStructure) -> ImplicativeStructure {
    let l = d.lattice();
    let n = l.size();
    let arrow = (0..n * n).map(|k| d.arrow(k / n, k % n)).collect();
    if cfg!(debug_assertions) {
        check_implicative(l.clone(), arrow).expect("the induced arrow is implicative")
    } else {
        ImplicativeStructure { lattice: l.clone(), arrow }
    }
}

// ---------------------------------------------------------------------------
// Canonical instances

fn table2(l: &FiniteLattice, f: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
    let n = l.size();
    (0..n * n).map(|k| f(k / n, k % n)).collect()
}

fn table1(l: &FiniteLattice, f: impl Fn(Elem) -> Elem) -> Vec<Elem> {
    l.elements().map(f).collect()
}

/// `a ⅋ b := ⊤`, `¬a := ⊥`.
pub fn dummy_disjunctive(l: &FiniteLattice) -> Result<DisjunctiveStructure, StructureError> {
    let (top, bot) = (l.top(), l.bot());
    check_disjunctive(l.clone(), table2(l, |_, _| top), table1(l, |_| bot))
}

/// `a ⊗ b := ⊥`, `¬a := ⊤`.
pub fn dummy_conjunctive(l: &FiniteLattice) -> Result<ConjunctiveStructure, StructureError> {
    let (top, bot) = (l.top(), l.bot());
    check_conjunctive(l.clone(), table2(l, |_, _| bot), table1(l, |_| top))
}

/// `a → b := ⊤`.
pub fn constant_top_implicative(l: &FiniteLattice) -> Result<ImplicativeStructure, StructureError> {
    let top = l.top();
    check_implicative(l.clone(), table2(l, |_, _| top))
}

pub fn boolean_implicative(b: &BooleanAlgebra) -> Result<ImplicativeStructure, StructureError> {
    let l = &b.lattice;
    check_implicative(l.clone(), table2(l, |x, y| b.or(b.complement(x), y)))
}

pub fn boolean_disjunctive(b: &BooleanAlgebra) -> Result<DisjunctiveStructure, StructureError> {
    let l = &b.lattice;
    check_disjunctive(l.clone(), table2(l, |x, y| b.or(x, y)), b.complement_table().to_vec())
}

pub fn boolean_conjunctive(b: &BooleanAlgebra) -> Result<ConjunctiveStructure, StructureError> {
    let l = &b.lattice;
    check_conjunctive(l.clone(), table2(l, |x, y| b.and(x, y)), b.complement_table().to_vec())
}

/// Boolean laws on an arbitrary lattice that happens to be Boolean.
pub fn boolean_on(l: &FiniteLattice) -> Option<(ImplicativeStructure, DisjunctiveStructure, ConjunctiveStructure)> {
    let comp = l.boolean_complement()?;
    let imp = check_implicative(l.clone(), table2(l, |x, y| l.join(comp[x], y))).ok()?;
    let dis = check_disjunctive(l.clone(), table2(l, |x, y| l.join(x, y)), comp.clone()).ok()?;
    let con = check_conjunctive(l.clone(), table2(l, |x, y| l.meet(x, y)), comp).ok()?;
    Some((imp, dis, con))
}

/// Relative pseudo-complement as arrow; valid exactly on distributive lattices.
pub fn heyting_implicative(l: &FiniteLattice) -> Result<ImplicativeStructure, StructureError> {
    check_implicative(l.clone(), table2(l, |a, b| l.heyting_implication(a, b)))
}

/// `⅋ := ∨` with the co-Heyting supplement `⊤ − a` as negation.
pub fn coheyting_disjunctive(l: &FiniteLattice) -> Result<DisjunctiveStructure, StructureError> {
    let top = l.top();
    check_disjunctive(l.clone(), table2(l, |a, b| l.join(a, b)), table1(l, |a| l.coheyting_difference(top, a)))
}

/// `⊗ := ∧` with the Heyting pseudo-complement as negation.
pub fn heyting_conjunctive(l: &FiniteLattice) -> Result<ConjunctiveStructure, StructureError> {
    let bot = l.bot();
    check_conjunctive(l.clone(), table2(l, |a, b| l.meet(a, b)), table1(l, |a| l.heyting_implication(a, bot)))
}

// ---------------------------------------------------------------------------
// Machines

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Terms,
    Contexts,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Terms => "term",
            Side::Contexts => "context",
        }
    }
}

/// A finite abstract machine: closed terms `0..terms`, closed contexts
/// `0..contexts`, values drawn from one side, a pairing on values, a boxing
/// map from the other side into values, and a pole `terms × contexts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    pub terms: usize,
    pub contexts: usize,
    pub value_side: Side,
    /// Ids of the values inside their side.
    pub values: Vec<usize>,
    /// `pair[i * |V0| + j]` is the index of the value pairing values `i` and `j`.
    pub pair: Vec<usize>,
    /// Boxing of every element of the non-value side, as a value index.
    pub boxing: Vec<usize>,
    /// Row-major `terms × contexts`.
    pub pole: Vec<bool>,
}

/// Largest value set accepted by the powerset constructions.
pub const MACHINE_VALUE_LIMIT: usize = 5;

impl Machine {
    pub fn in_pole(&self, t: usize, e: usize) -> bool {
        self.pole[t * self.contexts + e]
    }

    fn validate(&self, wanted: Kind) -> Result<(), StructureError> {
        let needed = if wanted == Kind::Disjunctive { Side::Contexts } else { Side::Terms };
        if self.value_side != needed {
            return Err(StructureError::PolarityMismatch { wanted, found: self.value_side.name() });
        }
        let k = self.values.len();
        let cap = carrier_cap();
        if k > MACHINE_VALUE_LIMIT || (1usize << k) > cap {
            return Err(StructureError::TooLarge { size: 1usize << k.min(63), cap });
        }
        let (own, other) = match self.value_side {
            Side::Contexts => (self.contexts, self.terms),
            Side::Terms => (self.terms, self.contexts),
        };
        if self.values.iter().any(|&v| v >= own) {
            return Err(StructureError::Machine("value id outside its side".into()));
        }
        if self.pair.len() != k * k || self.pair.iter().any(|&v| v >= k) {
            return Err(StructureError::Machine("pairing must be total on values".into()));
        }
        if self.boxing.len() != other || self.boxing.iter().any(|&v| v >= k) {
            return Err(StructureError::Machine("boxing must be total on its domain".into()));
        }
        if self.pole.len() != self.terms * self.contexts {
            return Err(StructureError::Machine("pole must be terms × contexts".into()));
        }
        Ok(())
    }

    fn powerset_lattice(&self, superset_order: bool) -> FiniteLattice {
        let k = self.values.len();
        let n = 1usize << k;
        let l = if superset_order {
            FiniteLattice::from_fn(n, |a, b| b & !a == 0)
        } else {
            FiniteLattice::from_fn(n, |a, b| a & !b == 0)
        }
        .expect("powersets are lattices");
        let labels = (0..n)
            .map(|m| {
                let vs: Vec<String> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| format!("v{i}")).collect();
                format!("{{{}}}", vs.join(","))
            })
            .collect();
        l.with_labels(labels)
    }

    fn pairing_table(&self) -> Vec<Elem> {
        let k = self.values.len();
        let n = 1usize << k;
        (0..n * n)
            .map(|idx| {
                let (a, b) = (idx / n, idx % n);
                let mut out = 0;
                for i in (0..k).filter(|i| a >> i & 1 == 1) {
                    for j in (0..k).filter(|j| b >> j & 1 == 1) {
                        out |= 1 << self.pair[i * k + j];
                    }
                }
                out
            })
            .collect()
    }

    /// `{[x] : x ∈ a^⊥⊥}` where `x` ranges over the non-value side.
    fn negation_table(&self) -> Vec<Elem> {
        let k = self.values.len();
        (0..1usize << k)
            .map(|a| {
                let members: Vec<usize> = (0..k).filter(|i| a >> i & 1 == 1).map(|i| self.values[i]).collect();
                let mut out = 0;
                for (x, &boxed) in self.boxing.iter().enumerate() {
                    let orth = match self.value_side {
                        Side::Contexts => members.iter().all(|&e| self.in_pole(x, e)),
                        Side::Terms => members.iter().all(|&t| self.in_pole(t, x)),
                    };
                    if orth {
                        out |= 1 << boxed;
                    }
                }
                out
            })
            .collect()
    }
}

/// Carrier `P(V0)` ordered by ⊇, with pairing as ⅋ and boxed orthogonals as ¬.
pub fn machine_powerset_disjunctive(m: &Machine) -> Result<DisjunctiveStructure, StructureError> {
    m.validate(Kind::Disjunctive)?;
    check_disjunctive(m.powerset_lattice(true), m.pairing_table(), m.negation_table())
}

/// Carrier `P(V0)` ordered by ⊆, with pairing as ⊗ and boxed orthogonals as ¬.
pub fn machine_powerset_conjunctive(m: &Machine) -> Result<ConjunctiveStructure, StructureError> {
    m.validate(Kind::Conjunctive)?;
    check_conjunctive(m.powerset_lattice(false), m.pairing_table(), m.negation_table())
}

// ---------------------------------------------------------------------------

/// Any of the three kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Implicative(ImplicativeStructure),
    Disjunctive(DisjunctiveStructure),
    Conjunctive(ConjunctiveStructure),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Implicative(_) => Kind::Implicative,
            Structure::Disjunctive(_) => Kind::Disjunctive,
            Structure::Conjunctive(_) => Kind::Conjunctive,
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        match self {
            Structure::Implicative(s) => s.lattice(),
            Structure::Disjunctive(s) => s.lattice(),
            Structure::Conjunctive(s) => s.lattice(),
        }
    }

    /// The kind's arrow: given, `¬a⅋b`, or `¬(a⊗¬b)`.
    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Structure::Implicative(s) => s.arrow(a, b),
            Structure::Disjunctive(s) => s.arrow(a, b),
            Structure::Conjunctive(s) => s.arrow(a, b),
        }
    }

    /// Negation: primitive for ⅋/⊗, `a → ⊥` for implicative structures.
    pub fn neg(&self, a: Elem) -> Elem {
        match self {
            Structure::Implicative(s) => s.arrow(a, s.lattice().bot()),
            Structure::Disjunctive(s) => s.neg(a),
            Structure::Conjunctive(s) => s.neg(a),
        }
    }

    pub fn sweep_subsets(&self) -> Result<(), SubsetViolation> {
        match self {
            Structure::Implicative(s) => s.sweep_subsets(),
            Structure::Disjunctive(s) => s.sweep_subsets(),
            Structure::Conjunctive(s) => s.sweep_subsets(),
        }
    }
}

impl From<ImplicativeStructure> for Structure {
    fn from(s: ImplicativeStructure) -> Self {
        Structure::Implicative(s)
    }
}

impl From<DisjunctiveStructure> for Structure {
    fn from(s: DisjunctiveStructure) -> Self {
        Structure::Disjunctive(s)
    }
}

impl From<ConjunctiveStructure> for Structure {
    fn from(s: ConjunctiveStructure) -> Self {
        Structure::Conjunctive(s)
    }
}


/// Per-axiom verdicts for raw tables of the given kind. `binary` is the
/// arrow, par or tensor table; `neg` is ignored for implicative structures.
pub fn axiom_verdicts(
    kind: Kind,
    lattice: FiniteLattice,
    binary: Vec<Elem>,
    neg: Vec<Elem>,
) -> Result<Vec<(Axiom, Option<Vec<Elem>>)>, StructureError> {
    check_table(&lattice, &binary, 2)?;
    check_cap(&lattice)?;
    if kind != Kind::Implicative {
        check_table(&lattice, &neg, 1)?;
    }
    Ok(match kind {
        Kind::Implicative => implicative_axioms(&ImplicativeStructure { lattice, arrow: binary }),
        Kind::Disjunctive => disjunctive_axioms(&DisjunctiveStructure { lattice, par: binary, neg }),
        Kind::Conjunctive => conjunctive_axioms(&ConjunctiveStructure { lattice, tensor: binary, neg }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean_algebra, enumerate_lattices};

    #[test]
    fn boolean_arrow_is_implicative() {
        let b = boolean_algebra(1).unwrap();
        assert!(boolean_implicative(&b).is_ok());
    }

    #[test]
    fn constant_bottom_arrow_fails_nullary() {
        let b = boolean_algebra(1).unwrap();
        let err = check_implicative(b.lattice.clone(), vec![0; 4]).unwrap_err();
        assert_eq!(err, violation(Axiom::ArrowTop, vec![0]));
    }

    #[test]
    fn constant_top_arrow_on_small_lattices() {
        for l in enumerate_lattices(4) {
            constant_top_implicative(&l).unwrap();
        }
    }

    #[test]
    fn identity_negation_fails_commutation() {
        let b = boolean_algebra(2).unwrap();
        let l = b.lattice.clone();
        let par = table2(&l, |x, y| l.join(x, y));
        let err = check_disjunctive(l.clone(), par, (0..4).collect()).unwrap_err();
        assert_eq!(err, violation(Axiom::NegTop, vec![3]));
    }

    #[test]
    fn join_as_tensor_fails_derived_law() {
        let b = boolean_algebra(2).unwrap();
        let l = b.lattice.clone();
        let tensor = table2(&l, |x, y| l.join(x, y));
        let err = check_conjunctive(l, tensor, b.complement_table().to_vec()).unwrap_err();
        assert_eq!(err, violation(Axiom::TensorBotLeft, vec![1]));
    }

    #[test]
    fn induced_arrows() {
        let l = FiniteLattice::chain(2);
        let d = dummy_disjunctive(&l).unwrap();
        let imp = implicative_from_disjunctive(&d);
        assert!(imp.arrow_table().iter().all(|&x| x == l.top()));

        let b = boolean_algebra(2).unwrap();
        let bd = boolean_disjunctive(&b).unwrap();
        let bi = implicative_from_disjunctive(&bd);
        assert_eq!(bi, boolean_implicative(&b).unwrap());
    }

    #[test]
    fn conjunctive_arrow_examples() {
        let b4 = boolean_algebra(2).unwrap();
        let c = boolean_conjunctive(&b4).unwrap();
        assert_eq!(arrow_conjunctive(&c, 0b01, 0b01), 3);
        let b2 = boolean_algebra(1).unwrap();
        let c2 = boolean_conjunctive(&b2).unwrap();
        assert_eq!(arrow_conjunctive(&c2, 1, 0), 0);
        let dc = dummy_conjunctive(&b4.lattice).unwrap();
        assert!((0..4).all(|a| (0..4).all(|x| arrow_conjunctive(&dc, a, x) == 3)));
    }

    fn one_value_machine(pole: bool) -> Machine {
        Machine {
            terms: 1,
            contexts: 1,
            value_side: Side::Contexts,
            values: vec![0],
            pair: vec![0],
            boxing: vec![0],
            pole: vec![pole],
        }
    }

    #[test]
    fn machine_empty_pole() {
        let d = machine_powerset_disjunctive(&one_value_machine(false)).unwrap();
        // ∅ is ⊤ under ⊇; its orthogonal is every term, boxed to {v}.
        assert_eq!(d.lattice().top(), 0);
        assert_eq!(d.neg(0), 1);
        // {v} has no orthogonal term.
        assert_eq!(d.neg(1), 0);
    }

    #[test]
    fn machine_full_pole_constant_negation() {
        let d = machine_powerset_disjunctive(&one_value_machine(true)).unwrap();
        assert_eq!(d.neg(0), d.neg(1));
    }

    #[test]
    fn machine_polarity() {
        let err = machine_powerset_conjunctive(&one_value_machine(true)).unwrap_err();
        assert!(matches!(err, StructureError::PolarityMismatch { .. }));
    }

    #[test]
    fn machine_idempotent_pair() {
        let m = Machine {
            terms: 2,
            contexts: 2,
            value_side: Side::Contexts,
            values: vec![0, 1],
            pair: vec![0, 1, 1, 1],
            boxing: vec![0, 1],
            pole: vec![true, false, false, true],
        };
        let d = machine_powerset_disjunctive(&m).unwrap();
        assert_eq!(d.par(0b01, 0b01), 0b01);
    }
}
