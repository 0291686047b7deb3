pub mod calculi;
pub mod catalog;
pub mod duality;
pub mod encodings;
pub mod lattice;
pub mod separators;
pub mod sexpr;
pub mod structures;
pub mod suite;
pub mod text;
pub mod tripos;
