//! LTL syntax trees, parsing, negation normal form and translation to Büchi automata.

mod parse;
mod translate;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse_ltl, parse_ltl_unchecked};
pub use translate::ltl_to_ba;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ltl {
    True,
    False,
    Prop(String),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    Implies(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
    Release(Box<Ltl>, Box<Ltl>),
    Finally(Box<Ltl>),
    Globally(Box<Ltl>),
}

pub type LtlFormula = Ltl;

impl Ltl {
    pub fn prop(p: impl Into<String>) -> Ltl {
        Ltl::Prop(p.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Ltl) -> Ltl {
        Ltl::Not(Box::new(f))
    }

    pub fn and(a: Ltl, b: Ltl) -> Ltl {
        Ltl::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Implies(Box::new(a), Box::new(b))
    }

    pub fn next(f: Ltl) -> Ltl {
        Ltl::Next(Box::new(f))
    }

    pub fn until(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Release(Box::new(a), Box::new(b))
    }

    pub fn finally(f: Ltl) -> Ltl {
        Ltl::Finally(Box::new(f))
    }

    pub fn globally(f: Ltl) -> Ltl {
        Ltl::Globally(Box::new(f))
    }

    pub fn propositions(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        match self {
            Ltl::True | Ltl::False => {}
            Ltl::Prop(p) => {
                out.insert(p.clone());
            }
            Ltl::Not(a) | Ltl::Next(a) | Ltl::Finally(a) | Ltl::Globally(a) => a.collect_props(out),
            Ltl::And(a, b)
            | Ltl::Or(a, b)
            | Ltl::Implies(a, b)
            | Ltl::Until(a, b)
            | Ltl::Release(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }

    /// Operator nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Ltl::True | Ltl::False | Ltl::Prop(_) => 0,
            Ltl::Not(a) | Ltl::Next(a) | Ltl::Finally(a) | Ltl::Globally(a) => 1 + a.depth(),
            Ltl::And(a, b)
            | Ltl::Or(a, b)
            | Ltl::Implies(a, b)
            | Ltl::Until(a, b)
            | Ltl::Release(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// All subformulae including `self`, children before parents.
    pub fn subformulae(&self) -> Vec<&Ltl> {
        let mut out = Vec::new();
        self.collect_sub(&mut out);
        out
    }

    fn collect_sub<'a>(&'a self, out: &mut Vec<&'a Ltl>) {
        match self {
            Ltl::True | Ltl::False | Ltl::Prop(_) => {}
            Ltl::Not(a) | Ltl::Next(a) | Ltl::Finally(a) | Ltl::Globally(a) => a.collect_sub(out),
            Ltl::And(a, b)
            | Ltl::Or(a, b)
            | Ltl::Implies(a, b)
            | Ltl::Until(a, b)
            | Ltl::Release(a, b) => {
                a.collect_sub(out);
                b.collect_sub(out);
            }
        }
        if !out.contains(&self) {
            out.push(self);
        }
    }
}

impl fmt::Display for Ltl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ltl::True => write!(f, "true"),
            Ltl::False => write!(f, "false"),
            Ltl::Prop(p) => write!(f, "{p}"),
            Ltl::Not(a) => write!(f, "!{}", Paren(a)),
            Ltl::Next(a) => write!(f, "X {}", Paren(a)),
            Ltl::Finally(a) => write!(f, "F {}", Paren(a)),
            Ltl::Globally(a) => write!(f, "G {}", Paren(a)),
            Ltl::And(a, b) => write!(f, "{} & {}", Paren(a), Paren(b)),
            Ltl::Or(a, b) => write!(f, "{} | {}", Paren(a), Paren(b)),
            Ltl::Implies(a, b) => write!(f, "{} -> {}", Paren(a), Paren(b)),
            Ltl::Until(a, b) => write!(f, "{} U {}", Paren(a), Paren(b)),
            Ltl::Release(a, b) => write!(f, "{} R {}", Paren(a), Paren(b)),
        }
    }
}

/// Parenthesizes every non-atomic operand, so printing re-parses to the same tree.
struct Paren<'a>(&'a Ltl);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Ltl::True | Ltl::False | Ltl::Prop(_) => write!(f, "{}", self.0),
            other => write!(f, "({other})"),
        }
    }
}

/// Pushes negations onto propositions and rewrites `F`, `G`, `->` through
/// `U`, `R` and `|`. The result uses only true, false, literals, `&`, `|`, `X`, `U`, `R`.
pub fn negation_normal_form(f: &Ltl) -> Ltl {
    nnf(f, false)
}

fn nnf(f: &Ltl, neg: bool) -> Ltl {
    match (f, neg) {
        (Ltl::True, false) | (Ltl::False, true) => Ltl::True,
        (Ltl::True, true) | (Ltl::False, false) => Ltl::False,
        (Ltl::Prop(p), false) => Ltl::prop(p.clone()),
        (Ltl::Prop(p), true) => Ltl::not(Ltl::prop(p.clone())),
        (Ltl::Not(a), _) => nnf(a, !neg),
        (Ltl::And(a, b), false) | (Ltl::Or(a, b), true) => Ltl::and(nnf(a, neg), nnf(b, neg)),
        (Ltl::Or(a, b), false) | (Ltl::And(a, b), true) => Ltl::or(nnf(a, neg), nnf(b, neg)),
        (Ltl::Implies(a, b), false) => Ltl::or(nnf(a, true), nnf(b, false)),
        (Ltl::Implies(a, b), true) => Ltl::and(nnf(a, false), nnf(b, true)),
        (Ltl::Next(a), _) => Ltl::next(nnf(a, neg)),
        (Ltl::Until(a, b), false) | (Ltl::Release(a, b), true) => {
            Ltl::until(nnf(a, neg), nnf(b, neg))
        }
        (Ltl::Release(a, b), false) | (Ltl::Until(a, b), true) => {
            Ltl::release(nnf(a, neg), nnf(b, neg))
        }
        (Ltl::Finally(a), false) | (Ltl::Globally(a), true) => Ltl::until(Ltl::True, nnf(a, neg)),
        (Ltl::Globally(a), false) | (Ltl::Finally(a), true) => {
            Ltl::release(Ltl::False, nnf(a, neg))
        }
    }
}
