//! Separators for the three kinds: validation, generation, classical
//! completion and the indexed deduction rules.

use std::fmt;

use thiserror::Error;

use crate::encodings::{combinator, peirce, Combinator};
use crate::lattice::Elem;
use crate::structures::{Kind, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    UpwardClosure,
    Combinator,
    ModusPonens,
    NegModusPonens,
    Pairing,
    Classical,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::UpwardClosure => "upward-closure",
            Clause::Combinator => "combinator",
            Clause::ModusPonens => "modus-ponens",
            Clause::NegModusPonens => "neg-modus-ponens",
            Clause::Pairing => "pairing",
            Clause::Classical => "classical",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("clause {clause} violated at {witness:?}{}", note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default())]
    ClauseViolation { clause: Clause, witness: Vec<Elem>, note: Option<String> },
    #[error("element {0} is outside the carrier")]
    OutOfCarrier(Elem),
    #[error("operation needs a {wanted} algebra, got {found}")]
    WrongKind { wanted: Kind, found: Kind },
}

/// A validated subset of a structure's carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    kind: Kind,
    members: Vec<bool>,
    classical: bool,
    consistent: bool,
}

impl Separator {
    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn contains(&self, a: Elem) -> bool {
        self.members[a]
    }
    pub fn members(&self) -> Vec<Elem> {
        (0..self.members.len()).filter(|&a| self.members[a]).collect()
    }
    pub fn mask(&self) -> &[bool] {
        &self.members
    }
    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn is_classical(&self) -> bool {
        self.classical
    }
    pub fn is_consistent(&self) -> bool {
        self.consistent
    }
    pub fn is_subset(&self, other: &Separator) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }
}

/// A structure together with a separator on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub structure: Structure,
    pub separator: Separator,
}

impl Algebra {
    pub fn contains(&self, a: Elem) -> bool {
        self.separator.contains(a)
    }
    pub fn kind(&self) -> Kind {
        self.structure.kind()
    }
    pub fn size(&self) -> usize {
        self.structure.lattice().size()
    }
}

/// Precomputed rule data for one structure; reusable across many candidate sets.
#[derive(Debug, Clone)]
pub struct SeparatorRules<'a> {
    structure: &'a Structure,
    classical: bool,
    combinators: Vec<(String, Elem)>,
    cc: Elem,
}

impl<'a> SeparatorRules<'a> {
    /// `classical` requests cc (implicative) or double-negation elimination
    /// (conjunctive); disjunctive separators are classical unconditionally.
    pub fn new(structure: &'a Structure, classical: bool) -> Self {
        let names: Vec<Combinator> = match structure.kind() {
            Kind::Implicative if classical => vec![Combinator::K, Combinator::S, Combinator::Cc],
            Kind::Implicative => vec![Combinator::K, Combinator::S],
            Kind::Disjunctive => Combinator::ps().to_vec(),
            Kind::Conjunctive => Combinator::ts().to_vec(),
        };
        let combinators = names
            .into_iter()
            .map(|c| (c.to_string(), combinator(structure, c).expect("combinators chosen per kind")))
            .collect();
        let cc = peirce(structure);
        SeparatorRules { structure, classical, combinators, cc }
    }

    pub fn combinator_values(&self) -> &[(String, Elem)] {
        &self.combinators
    }

    fn n(&self) -> usize {
        self.structure.lattice().size()
    }

    /// Checks every clause in a fixed order, reporting the smallest witness
    /// of the first violated clause.
    pub fn check(&self, members: &[bool]) -> Result<Separator, SeparatorError> {
        let l = self.structure.lattice();
        let n = self.n();
        let viol = |clause, witness: Vec<Elem>, note: Option<String>| SeparatorError::ClauseViolation { clause, witness, note };

        for a in 0..n {
            for b in 0..n {
                if members[a] && l.le(a, b) && !members[b] {
                    return Err(viol(Clause::UpwardClosure, vec![a, b], None));
                }
            }
        }
        if let Some((name, v)) = self.combinators.iter().find(|(_, v)| !members[*v]) {
            return Err(viol(Clause::Combinator, vec![*v], Some(name.clone())));
        }
        match self.structure {
            Structure::Implicative(_) | Structure::Disjunctive(_) => {
                for a in 0..n {
                    for b in 0..n {
                        if members[a] && members[self.structure.arrow(a, b)] && !members[b] {
                            return Err(viol(Clause::ModusPonens, vec![a, b], None));
                        }
                    }
                }
            }
            Structure::Conjunctive(c) => {
                for a in 0..n {
                    for b in 0..n {
                        if members[a] && members[c.neg(c.tensor(a, b))] && !members[c.neg(b)] {
                            return Err(viol(Clause::NegModusPonens, vec![a, b], None));
                        }
                    }
                }
                for a in 0..n {
                    for b in 0..n {
                        if members[a] && members[b] && !members[c.tensor(a, b)] {
                            return Err(viol(Clause::Pairing, vec![a, b], None));
                        }
                    }
                }
            }
        }
        let dne = self.double_negation_elimination(members);
        if self.classical {
            if let Structure::Conjunctive(_) = self.structure {
                if let Some(a) = dne {
                    return Err(viol(Clause::Classical, vec![a], None));
                }
            }
        }
        let classical = match self.structure {
            Structure::Conjunctive(_) => dne.is_none(),
            _ => members[self.cc],
        };
        Ok(Separator {
            kind: self.structure.kind(),
            members: members.to_vec(),
            classical,
            consistent: !members[l.bot()],
        })
    }

    fn double_negation_elimination(&self, members: &[bool]) -> Option<Elem> {
        let Structure::Conjunctive(c) = self.structure else { return None };
        (0..self.n()).find(|&a| members[c.neg(c.neg(a))] && !members[a])
    }

    /// Least separator containing `generators`.
    pub fn generate(&self, generators: &[Elem]) -> Result<Separator, SeparatorError> {
        let l = self.structure.lattice();
        let n = self.n();
        let mut m = vec![false; n];
        for &g in generators {
            if g >= n {
                return Err(SeparatorError::OutOfCarrier(g));
            }
            m[g] = true;
        }
        loop {
            let before = m.clone();
            for (_, v) in &self.combinators {
                m[*v] = true;
            }
            // upward closure
            for a in 0..n {
                if m[a] {
                    for b in 0..n {
                        if l.le(a, b) {
                            m[b] = true;
                        }
                    }
                }
            }
            match self.structure {
                Structure::Implicative(_) | Structure::Disjunctive(_) => {
                    for a in 0..n {
                        for b in 0..n {
                            if m[a] && m[self.structure.arrow(a, b)] {
                                m[b] = true;
                            }
                        }
                    }
                }
                Structure::Conjunctive(c) => {
                    for a in 0..n {
                        for b in 0..n {
                            if m[a] && m[c.neg(c.tensor(a, b))] {
                                m[c.neg(b)] = true;
                            }
                        }
                    }
                    for a in 0..n {
                        for b in 0..n {
                            if m[a] && m[b] {
                                m[c.tensor(a, b)] = true;
                            }
                        }
                    }
                    if self.classical {
                        for a in 0..n {
                            if m[c.neg(c.neg(a))] {
                                m[a] = true;
                            }
                        }
                    }
                }
            }
            if m == before {
                break;
            }
        }
        Ok(self.check(&m).expect("least fixpoint satisfies every clause"))
    }
}

fn to_mask(n: usize, members: &[Elem]) -> Result<Vec<bool>, SeparatorError> {
    let mut m = vec![false; n];
    for &a in members {
        if a >= n {
            return Err(SeparatorError::OutOfCarrier(a));
        }
        m[a] = true;
    }
    Ok(m)
}

pub fn check_separator(structure: &Structure, members: &[Elem], classical: bool) -> Result<Separator, SeparatorError> {
    let m = to_mask(structure.lattice().size(), members)?;
    SeparatorRules::new(structure, classical).check(&m)
}

pub fn generate_separator(structure: &Structure, generators: &[Elem], classical: bool) -> Result<Separator, SeparatorError> {
    SeparatorRules::new(structure, classical).generate(generators)
}

/// Builds an algebra from explicit members.
pub fn algebra(structure: Structure, members: &[Elem], classical: bool) -> Result<Algebra, SeparatorError> {
    let separator = check_separator(&structure, members, classical)?;
    Ok(Algebra { structure, separator })
}

/// Builds an algebra from the least separator over `generators`.
pub fn generated_algebra(structure: Structure, generators: &[Elem], classical: bool) -> Result<Algebra, SeparatorError> {
    let separator = generate_separator(&structure, generators, classical)?;
    Ok(Algebra { structure, separator })
}

/// `{a : ¬¬a ∈ S}` on a conjunctive algebra.
pub fn classical_completion(alg: &Algebra) -> Result<Algebra, SeparatorError> {
    let Structure::Conjunctive(c) = &alg.structure else {
        return Err(SeparatorError::WrongKind { wanted: Kind::Conjunctive, found: alg.kind() });
    };
    let members: Vec<Elem> = c.lattice().elements().filter(|&a| alg.contains(c.neg(c.neg(a)))).collect();
    algebra(alg.structure.clone(), &members, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeductionInstance {
    pub premises: bool,
    pub conclusion: bool,
}

impl DeductionInstance {
    pub fn sound(self) -> bool {
        !self.premises || self.conclusion
    }
}

/// Generalized deduction over finite families indexed by the same set.
/// Arrow kinds: `⋀(a_i→b_i) ∈ S`, `⋀a_i ∈ S` give `⋀b_i ∈ S`.
/// Conjunctive: `⋀¬(a_i⊗b_i) ∈ S`, `⋀a_i ∈ S` give `⋀¬b_i ∈ S`.
pub fn indexed_deduction(alg: &Algebra, a: &[Elem], b: &[Elem]) -> DeductionInstance {
    assert_eq!(a.len(), b.len(), "families must share the index set");
    let s = &alg.structure;
    let l = s.lattice();
    let pairs = a.iter().zip(b);
    let (major, conclusion) = match s {
        Structure::Conjunctive(c) => (
            l.meet_all(pairs.map(|(&x, &y)| c.neg(c.tensor(x, y)))),
            l.meet_all(b.iter().map(|&y| c.neg(y))),
        ),
        _ => (l.meet_all(pairs.map(|(&x, &y)| s.arrow(x, y))), l.meet_all(b.iter().copied())),
    };
    let minor = l.meet_all(a.iter().copied());
    DeductionInstance { premises: alg.contains(major) && alg.contains(minor), conclusion: alg.contains(conclusion) }
}

/// Every separator on `structure`, by checking each subset of the carrier.
/// Carriers above 20 elements are refused.
pub fn all_separators(structure: &Structure, classical: bool) -> Vec<Separator> {
    let n = structure.lattice().size();
    assert!(n <= 20, "all_separators enumerates 2^n subsets; carrier {n} is too large");
    let rules = SeparatorRules::new(structure, classical);
    (0u32..1 << n)
        .filter_map(|mask| {
            let members: Vec<bool> = (0..n).map(|a| mask >> a & 1 == 1).collect();
            rules.check(&members).ok()
        })
        .collect()
}

/// Every algebra on `structure`.
pub fn all_algebras(structure: &Structure, classical: bool) -> Vec<Algebra> {
    all_separators(structure, classical).into_iter().map(|separator| Algebra { structure: structure.clone(), separator }).collect()
}

/// Nonempty, upward closed and closed under binary meets.
pub fn is_filter(structure: &Structure, members: &[bool]) -> bool {
    let l = structure.lattice();
    members.iter().any(|&m| m)
        && l.elements().all(|a| !members[a] || l.elements().all(|b| !l.le(a, b) || members[b]))
        && l.elements().all(|a| l.elements().all(|b| !(members[a] && members[b]) || members[l.meet(a, b)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::boolean_algebra;
    use crate::structures::*;

    fn b4() -> crate::lattice::BooleanAlgebra {
        boolean_algebra(2).unwrap()
    }

    #[test]
    fn top_is_separator_on_boolean_disjunctive() {
        let s: Structure = boolean_disjunctive(&b4()).unwrap().into();
        let sep = check_separator(&s, &[3], false).unwrap();
        assert!(sep.is_consistent());
        assert!(sep.is_classical());
    }

    #[test]
    fn atom_filter_is_separator() {
        let s: Structure = boolean_disjunctive(&b4()).unwrap().into();
        assert!(check_separator(&s, &[1, 3], false).is_ok());
    }

    #[test]
    fn non_upclosed_set_rejected() {
        let s: Structure = boolean_disjunctive(&b4()).unwrap().into();
        // both atoms but not ⊤
        let err = check_separator(&s, &[1, 2], false).unwrap_err();
        assert_eq!(
            err,
            SeparatorError::ClauseViolation { clause: Clause::UpwardClosure, witness: vec![1, 3], note: None }
        );
    }

    #[test]
    fn generation_examples() {
        let s: Structure = boolean_implicative(&b4()).unwrap().into();
        assert_eq!(generate_separator(&s, &[], true).unwrap().members(), vec![3]);
        let full = generate_separator(&s, &[0], false).unwrap();
        assert_eq!(full.len(), 4);
        assert!(!full.is_consistent());

        let b2 = boolean_algebra(1).unwrap();
        let d: Structure = dummy_conjunctive(&b2.lattice).unwrap().into();
        assert!(generate_separator(&d, &[], false).unwrap().contains(1));
    }

    #[test]
    fn completion_of_dummy_upset_is_full() {
        let l = crate::lattice::FiniteLattice::chain(3);
        let s: Structure = dummy_conjunctive(&l).unwrap().into();
        // pairing puts ⊥ = ⊤⊗⊤ in every separator here
        assert!(check_separator(&s, &[1, 2], false).is_err());
        let alg = generated_algebra(s, &[1], false).unwrap();
        let done = classical_completion(&alg).unwrap();
        assert_eq!(done.separator.len(), 3);
        assert!(done.separator.is_classical());
    }

    #[test]
    fn singleton_index_is_modus_ponens() {
        let s: Structure = boolean_implicative(&b4()).unwrap().into();
        let alg = algebra(s, &[3], true).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let r = indexed_deduction(&alg, &[a], &[b]);
                let mp = alg.contains(alg.structure.arrow(a, b)) && alg.contains(a);
                assert_eq!(r.premises, mp);
                assert!(r.sound());
            }
        }
    }
}
