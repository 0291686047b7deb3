//! Order reversal between disjunctive and conjunctive structures, separator
//! transport along `¬`, and the induced isomorphism of triposes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::Elem;
use crate::separators::{check_separator, classical_completion, Algebra, SeparatorError};
use crate::structures::{check_conjunctive, check_disjunctive, ConjunctiveStructure, DisjunctiveStructure, Kind, Structure, StructureError};
use crate::tripos::{families, maps, reindex, FiniteTripos, TriposError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("transported separator rejected: {0}")]
    Separator(#[from] SeparatorError),
    #[error(transparent)]
    Tripos(#[from] TriposError),
    #[error("direction {direction} needs a {wanted} algebra, got {found}")]
    WrongKind { direction: Direction, wanted: Kind, found: Kind },
    #[error("precondition broken: {0}")]
    PreconditionBroken(String),
    #[error("{clause} fails at {witness}")]
    IsoFailure { clause: &'static str, witness: String },
}

/// `Pa2Ta` sends a disjunctive algebra to a conjunctive one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Pa2Ta,
    Ta2Pa,
}

impl Direction {
    pub fn source(self) -> Kind {
        match self {
            Direction::Pa2Ta => Kind::Disjunctive,
            Direction::Ta2Pa => Kind::Conjunctive,
        }
    }

    pub fn target(self) -> Kind {
        match self {
            Direction::Pa2Ta => Kind::Conjunctive,
            Direction::Ta2Pa => Kind::Disjunctive,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Pa2Ta => "pa2ta",
            Direction::Ta2Pa => "ta2pa",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pa2ta" => Ok(Direction::Pa2Ta),
            "ta2pa" => Ok(Direction::Ta2Pa),
            _ => Err(format!("unknown direction {s:?} (expected pa2ta or ta2pa)")),
        }
    }
}

/// `⊗ := ⅋`, `¬ := ¬` on the reversed lattice.
pub fn reverse_disjunctive(d: &DisjunctiveStructure) -> Result<ConjunctiveStructure, StructureError> {
    check_conjunctive(d.lattice().dual(), d.par_table().to_vec(), d.neg_table().to_vec())
}

/// `⅋ := ⊗`, `¬ := ¬` on the reversed lattice.
pub fn reverse_conjunctive(c: &ConjunctiveStructure) -> Result<DisjunctiveStructure, StructureError> {
    check_disjunctive(c.lattice().dual(), c.tensor_table().to_vec(), c.neg_table().to_vec())
}

pub fn reverse(s: &Structure) -> Result<Structure, DualityError> {
    Ok(match s {
        Structure::Disjunctive(d) => reverse_disjunctive(d)?.into(),
        Structure::Conjunctive(c) => reverse_conjunctive(c)?.into(),
        Structure::Implicative(_) => {
            return Err(DualityError::PreconditionBroken("implicative structures have no order-reversed dual".into()))
        }
    })
}

/// Source and target of one transport. Elements keep their ids; only the
/// order is reversed.
#[derive(Debug, Clone)]
pub struct DualityWitness {
    pub direction: Direction,
    pub source: Algebra,
    pub target: Algebra,
}

/// `{a : ¬a ∈ S}` on the reversed structure, validated there. The
/// disjunctive-to-conjunctive direction asks for a classical separator.
pub fn transport_separator(alg: &Algebra, direction: Direction) -> Result<DualityWitness, DualityError> {
    if alg.kind() != direction.source() {
        return Err(DualityError::WrongKind { direction, wanted: direction.source(), found: alg.kind() });
    }
    let s = &alg.structure;
    let target = reverse(s)?;
    let members: Vec<Elem> = s.lattice().elements().filter(|&a| alg.contains(s.neg(a))).collect();
    let separator = check_separator(&target, &members, direction == Direction::Pa2Ta)?;
    Ok(DualityWitness { direction, source: alg.clone(), target: Algebra { structure: target, separator } })
}

fn entails(alg: &Algebra, a: Elem, b: Elem) -> bool {
    alg.contains(alg.structure.arrow(a, b))
}

/// `a ⊢_target b ⟺ ¬a ⊢_source ¬b` for all `a, b`. Returns the number of
/// pairs checked, or the first pair where the sides differ.
pub fn key_lemma(w: &DualityWitness) -> Result<usize, (Elem, Elem)> {
    let s = &w.source.structure;
    let n = s.lattice().size();
    for a in 0..n {
        for b in 0..n {
            if entails(&w.target, a, b) != entails(&w.source, s.neg(a), s.neg(b)) {
                return Err((a, b));
            }
        }
    }
    Ok(n * n)
}

/// Transporting a conjunctive algebra there and back: equal to its
/// classical completion, structure table for table.
pub fn double_transport(alg: &Algebra) -> Result<(Algebra, Algebra), DualityError> {
    let there = transport_separator(alg, Direction::Ta2Pa)?;
    let back = transport_separator(&there.target, Direction::Pa2Ta)?;
    let completion = classical_completion(alg)?;
    Ok((back.target, completion))
}

pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    a.structure == b.structure && a.separator.mask() == b.separator.mask()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub index_size: usize,
    pub source_classes: usize,
    pub target_classes: usize,
    pub checks: usize,
}

fn iso_fail(clause: &'static str, witness: impl fmt::Debug) -> DualityError {
    DualityError::IsoFailure { clause, witness: format!("{witness:?}") }
}

/// `φ_I([a_i]) = [¬a_i]` from `A^I/S[I]` to `Ā^I/S̄[I]`: well-defined,
/// order-preserving and reflecting, bijective, and natural in `I` against
/// every `f : J → I` with `|J| ≤ max_j`.
pub fn tripos_iso(source: &Algebra, target: &Algebra, index_size: usize, max_j: usize) -> Result<IsoReport, DualityError> {
    let expected = transport_separator(source, Direction::Pa2Ta)?;
    if !same_algebra(&expected.target, target) {
        return Err(DualityError::PreconditionBroken("target is not the transported dual of the source".into()));
    }
    let s = &source.structure;
    let ts = FiniteTripos::new(source)?;
    let tt = FiniteTripos::new(target)?;
    let phi = |a: &[Elem]| -> Vec<Elem> { a.iter().map(|&x| s.neg(x)).collect() };
    let n = s.lattice().size();
    let cs = ts.classes(index_size);
    let ct = tt.classes(index_size);
    let fams: Vec<Vec<Elem>> = families(n, index_size).collect();
    let reps: Vec<usize> = (0..fams.len()).filter(|&c| cs.representative[c] == c).collect();
    let mut checks = 0;
    for (c, a) in fams.iter().enumerate() {
        checks += 1;
        if !tt.equiv(&phi(a), &phi(&fams[cs.representative[c]])) {
            return Err(iso_fail("φ well-defined", a));
        }
    }
    for &x in &reps {
        for &y in &reps {
            checks += 1;
            if ts.entails(&fams[x], &fams[y]) != tt.entails(&phi(&fams[x]), &phi(&fams[y])) {
                return Err(iso_fail("φ order-preserving and reflecting", (&fams[x], &fams[y])));
            }
        }
    }
    let mut hit = vec![false; fams.len()];
    for &x in &reps {
        let image = ct.representative[crate::tripos::encode(n, &phi(&fams[x]))];
        if std::mem::replace(&mut hit[image], true) {
            return Err(iso_fail("φ injective", &fams[x]));
        }
    }
    for (c, b) in fams.iter().enumerate() {
        checks += 1;
        // [b] = [¬¬b] = φ([¬b])
        if ct.representative[c] == c && !tt.equiv(b, &phi(&phi(b))) {
            return Err(iso_fail("φ surjective", b));
        }
    }
    if reps.len() != ct.count {
        return Err(iso_fail("φ bijective", (reps.len(), ct.count)));
    }
    for j in 0..=max_j {
        for f in maps(j, index_size) {
            for &x in &reps {
                checks += 1;
                let a = &fams[x];
                if !tt.equiv(&phi(&reindex(&f, a)), &reindex(&f, &phi(a))) {
                    return Err(iso_fail("φ natural", (&f, a)));
                }
            }
        }
    }
    Ok(IsoReport { index_size, source_classes: reps.len(), target_classes: ct.count, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::boolean_algebra;
    use crate::separators::algebra;
    use crate::structures::{boolean_conjunctive, boolean_disjunctive, dummy_conjunctive, dummy_disjunctive};

    #[test]
    fn boolean_reversal() {
        let b = boolean_algebra(2).unwrap();
        let d = boolean_disjunctive(&b).unwrap();
        let c = reverse_disjunctive(&d).unwrap();
        let l = c.lattice();
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(c.tensor(x, y), l.meet(x, y));
            }
        }
        assert_eq!(reverse_conjunctive(&c).unwrap(), d);
        let c2 = boolean_conjunctive(&b).unwrap();
        assert_eq!(reverse_disjunctive(&reverse_conjunctive(&c2).unwrap()).unwrap(), c2);
    }

    #[test]
    fn dummies_reverse_to_dummies() {
        let l = boolean_algebra(1).unwrap().lattice;
        let c = reverse_disjunctive(&dummy_disjunctive(&l).unwrap()).unwrap();
        assert_eq!(c, dummy_conjunctive(&c.lattice().clone()).unwrap());
        let d = reverse_conjunctive(&dummy_conjunctive(&l).unwrap()).unwrap();
        assert_eq!(d, dummy_disjunctive(&d.lattice().clone()).unwrap());
    }

    #[test]
    fn boolean_transport() {
        let b = boolean_algebra(2).unwrap();
        let d: Structure = boolean_disjunctive(&b).unwrap().into();
        let alg = algebra(d, &[3], false).unwrap();
        let w = transport_separator(&alg, Direction::Pa2Ta).unwrap();
        assert_eq!(w.target.separator.members(), vec![0]);
        key_lemma(&w).unwrap();
        let r = tripos_iso(&alg, &w.target, 1, 2).unwrap();
        assert_eq!((r.source_classes, r.target_classes), (4, 4));
        let r = tripos_iso(&alg, &w.target, 0, 1).unwrap();
        assert_eq!((r.source_classes, r.target_classes), (1, 1));
    }

    #[test]
    fn wrong_direction() {
        let b = boolean_algebra(1).unwrap();
        let d: Structure = boolean_disjunctive(&b).unwrap().into();
        let alg = algebra(d, &[1], false).unwrap();
        assert!(matches!(transport_separator(&alg, Direction::Ta2Pa), Err(DualityError::WrongKind { .. })));
    }
}
