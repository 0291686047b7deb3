//! The polarized classical calculi L⅋ and L⊗: syntax, reduction, typing,
//! embeddings of the λ-calculus and realizability interpretation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::encodings::EncodingError;
use crate::lattice::Elem;
use crate::structures::Kind;

pub mod compiled;
pub mod corpus;
pub mod embed;
pub mod interp;
pub mod laws;
pub mod reduce;
pub mod syntax;
pub mod typing;

pub use embed::{embed_lambda, embed_lambda_cbn, embed_lambda_cbv};
pub use interp::{command_order, in_pole, interpret, interpret_command, interpret_context, interpret_term, Cmd, Interpretation};
pub use reduce::{normalize, step, step_with_rule, Rule, Stuck, Trace};
pub use syntax::{cmd, Command, Context, Subject, Term};
pub use typing::{check_adequacy, check_adequacy_all, typecheck, Derivation, Judgment, TypedSequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// L⅋, call-by-name, interpreted in disjunctive structures.
    Par,
    /// L⊗, call-by-value, interpreted in conjunctive structures.
    Tens,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Par => "par",
            Polarity::Tens => "tens",
        })
    }
}

impl FromStr for Polarity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "par" | "L-par" | "⅋" => Ok(Polarity::Par),
            "tens" | "L-tens" | "⊗" => Ok(Polarity::Tens),
            other => Err(format!("unknown calculus `{other}` (expected par or tens)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("{construct} is not part of the {polarity} calculus")]
    Polarity { polarity: Polarity, construct: String },
    #[error("the calculus needs a {wanted} structure, got a {found} one")]
    KindMismatch { wanted: Kind, found: Kind },
    #[error("free name {0}")]
    OpenSubject(String),
    #[error("parameter {0} is outside the carrier")]
    BadParameter(Elem),
    #[error("ill-typed at rule {rule}: {subject} expected {expected}, found {found}")]
    IllTyped { rule: &'static str, subject: String, expected: String, found: String },
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}
