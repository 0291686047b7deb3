//! Benchmark fixtures shared by the criterion targets.

use realg_core::lattice::boolean_algebra;
use realg_core::separators::{algebra, Algebra};
use realg_core::structures::{boolean_conjunctive, boolean_disjunctive, Structure};
use realg_core::tripos::FiniteTripos;

/// The Boolean disjunctive structure with `atoms` atoms.
pub fn boolean_par(atoms: u32) -> Structure {
    boolean_disjunctive(&boolean_algebra(atoms).expect("small")).expect("valid").into()
}

/// The Boolean conjunctive structure with `atoms` atoms.
pub fn boolean_tens(atoms: u32) -> Structure {
    boolean_conjunctive(&boolean_algebra(atoms).expect("small")).expect("valid").into()
}

/// `{⊤}` as a classical separator.
pub fn top_algebra(s: Structure) -> Algebra {
    let top = s.lattice().top();
    algebra(s, &[top], true).expect("⊤ generates a separator")
}

pub fn tripos(s: Structure) -> FiniteTripos {
    FiniteTripos::new(&top_algebra(s)).expect("classical")
}
