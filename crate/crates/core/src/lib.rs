//! Three-valued LTL model checking over incomplete Büchi automata (IBA):
//! per-box constraint synthesis and incremental checking of box replacements.

pub mod automaton;
pub mod constraints;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ltl;
pub mod oracle;
pub mod product;
pub mod refinement;
pub mod replacement;

pub use automaton::{
    match_guard, validate, Automaton, Character, Guard, Kind, LassoWord, Transition, Violation,
};
pub use constraints::{compute_constraint, Constraint, SubProperty, SubPropertyKind};
pub use dot::{automaton_to_dot, intersection_to_dot};
pub use error::Error;
pub use fixtures::{load_fixture, Fixture};
pub use ltl::{ltl_to_ba, negation_normal_form, parse_ltl, Ltl, LtlFormula};
pub use oracle::{
    abstractions, brute_force_verdict, classify_word, enumerate_lassos, eval_ltl, RunClassification,
};
pub use product::{
    accepts, check_ltl, intersect, is_empty, model_check, IntersectionAutomaton, Truth, Verdict,
    Witness,
};
pub use refinement::{
    check_refinement, check_replacement_refinement, compose, validate_replacement,
    RefinementRelation, Replacement,
};
pub use replacement::{
    build_approx, check_replacement, intersect_subproperty_replacement, ApproxKind,
};
