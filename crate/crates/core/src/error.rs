use thiserror::Error;

use crate::automaton::Violation;
use crate::product::Truth;
use crate::refinement::ReplacementViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Format(String),
    #[error("invalid automaton: {}", join(.0))]
    InvalidAutomaton(Vec<Violation>),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("ltl syntax error at offset {offset}: {message}")]
    LtlSyntax { offset: usize, message: String },
    #[error("ltl formula uses undeclared proposition {0:?}")]
    UndeclaredProposition(String),
    #[error("claim automaton must not contain boxes")]
    ClaimHasBoxes,
    #[error("{0:?} is not a box of the host automaton")]
    NotABox(String),
    #[error("invalid replacement: {}", join(.0))]
    InvalidReplacement(Vec<ReplacementViolation>),
    #[error("state ids shared by host and replacement: {}", .0.join(", "))]
    IdCollision(Vec<String>),
    #[error("box mismatch: expected {expected:?}, found {found:?}")]
    BoxMismatch { expected: String, found: String },
    #[error("constraints require an unknown verdict, got {0}")]
    NotUnknown(Truth),
    #[error("approximation kind does not match the sub-property kind")]
    KindMismatch,
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
