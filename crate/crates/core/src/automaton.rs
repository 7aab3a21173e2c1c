//! Shared automaton representation for Büchi automata (BA) and incomplete
//! Büchi automata (IBA), with guard/character matching, structural
//! validation, completion and the JSON document model.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub type StateId = String;

/// Reserved proposition used to label ε-moves of approximation automata.
pub const EPSILON: &str = "<eps>";
/// Reserved proposition used to label the stutter self-loop of the sink state.
pub const STUTTER: &str = "<stut>";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub prop: String,
    pub positive: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.prop)
        } else {
            write!(f, "!{}", self.prop)
        }
    }
}

/// A conjunction of literals. The empty conjunction is `true`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Guard {
    literals: BTreeSet<Literal>,
}

impl Guard {
    pub fn top() -> Self {
        Self::default()
    }

    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Self {
        Guard {
            literals: lits.into_iter().collect(),
        }
    }

    /// Guard with the given positive and negative propositions.
    pub fn new<P, N, S, T>(positives: P, negatives: N) -> Self
    where
        P: IntoIterator<Item = S>,
        N: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut literals = BTreeSet::new();
        for p in positives {
            literals.insert(Literal {
                prop: p.into(),
                positive: true,
            });
        }
        for n in negatives {
            literals.insert(Literal {
                prop: n.into(),
                positive: false,
            });
        }
        Guard { literals }
    }

    pub fn epsilon() -> Self {
        Guard::new([EPSILON], Vec::<String>::new())
    }

    pub fn stutter() -> Self {
        Guard::new([STUTTER], Vec::<String>::new())
    }

    /// Parses the token form used in JSON documents: `"p"` or `"!p"`.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, Error> {
        let mut literals = BTreeSet::new();
        for t in tokens {
            let t = t.as_ref().trim();
            let (prop, positive) = match t.strip_prefix('!') {
                Some(rest) => (rest.trim(), false),
                None => (t, true),
            };
            if prop.is_empty() {
                return Err(Error::Format(format!("empty guard literal {t:?}")));
            }
            literals.insert(Literal {
                prop: prop.to_string(),
                positive,
            });
        }
        Ok(Guard { literals })
    }

    pub fn to_tokens(&self) -> Vec<String> {
        self.literals.iter().map(|l| l.to_string()).collect()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn is_top(&self) -> bool {
        self.literals.is_empty()
    }

    /// False iff some proposition occurs with both polarities.
    pub fn is_consistent(&self) -> bool {
        self.literals.iter().filter(|l| l.positive).all(|l| {
            !self.literals.contains(&Literal {
                prop: l.prop.clone(),
                positive: false,
            })
        })
    }

    /// Conjunction of two guards, or `None` when it is unsatisfiable.
    pub fn conjoin(&self, other: &Guard) -> Option<Guard> {
        let literals: BTreeSet<Literal> = self.literals.union(&other.literals).cloned().collect();
        let g = Guard { literals };
        g.is_consistent().then_some(g)
    }

    pub fn matches(&self, c: &Character) -> bool {
        self.literals
            .iter()
            .all(|l| c.contains(&l.prop) == l.positive)
    }

    /// The minimal character satisfying the guard: positives true, everything else false.
    pub fn witness(&self) -> Character {
        Character::new(
            self.literals
                .iter()
                .filter(|l| l.positive)
                .map(|l| l.prop.clone()),
        )
    }

    pub fn propositions(&self) -> impl Iterator<Item = &str> {
        self.literals.iter().map(|l| l.prop.as_str())
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "true");
        }
        let parts: Vec<String> = self.literals.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" & "))
    }
}

/// `match_guard(g, c)`: every positive literal is in `c`, no negative one is.
pub fn match_guard(g: &Guard, c: &Character) -> bool {
    g.matches(c)
}

/// One letter of a word: the set of propositions that hold.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(BTreeSet<String>);

impl Character {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(props: I) -> Self {
        Character(props.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Character(BTreeSet::new())
    }

    pub fn contains(&self, p: &str) -> bool {
        self.0.contains(p)
    }

    pub fn props(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Ultimately periodic word `stem . cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LassoWord {
    pub stem: Vec<Character>,
    #[serde(rename = "loop")]
    pub cycle: Vec<Character>,
}

impl LassoWord {
    /// Panics if `cycle` is empty.
    pub fn new(stem: Vec<Character>, cycle: Vec<Character>) -> Self {
        assert!(!cycle.is_empty(), "lasso loop must be non-empty");
        LassoWord { stem, cycle }
    }

    /// Character at position `i` of the infinite word.
    pub fn at(&self, i: usize) -> &Character {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Number of distinct positions of the loop-back representation.
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// Successor position in the loop-back representation.
    pub fn next_position(&self, i: usize) -> usize {
        if i + 1 < self.positions() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    /// True iff both lassos denote the same ω-word.
    pub fn same_word(&self, other: &LassoWord) -> bool {
        let n = self.stem.len().max(other.stem.len()) + self.cycle.len() * other.cycle.len();
        (0..n).all(|i| self.at(i) == other.at(i))
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stem: Vec<String> = self.stem.iter().map(render_character).collect();
        let cycle: Vec<String> = self.cycle.iter().map(render_character).collect();
        if stem.is_empty() {
            write!(f, "({})^w", cycle.join(""))
        } else {
            write!(f, "{}.({})^w", stem.join(""), cycle.join(""))
        }
    }
}

/// Renders a character, showing the reserved labels as `<eps>` and `<stut>`.
pub fn render_character(c: &Character) -> String {
    if c.contains(EPSILON) {
        EPSILON.to_string()
    } else if c.contains(STUTTER) {
        STUTTER.to_string()
    } else {
        c.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ba,
    Iba,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub to: StateId,
    pub guard: Guard,
}

impl Transition {
    pub fn new(from: impl Into<String>, guard: Guard, to: impl Into<String>) -> Self {
        Transition {
            from: from.into(),
            to: to.into(),
            guard,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.from, self.guard, self.to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonDoc", into = "AutomatonDoc")]
pub struct Automaton {
    pub kind: Kind,
    pub propositions: BTreeSet<String>,
    pub states: BTreeSet<StateId>,
    pub boxes: BTreeSet<StateId>,
    pub initial: BTreeSet<StateId>,
    pub accepting: BTreeSet<StateId>,
    pub transitions: BTreeSet<Transition>,
}

impl Automaton {
    pub fn new(kind: Kind) -> Self {
        Automaton {
            kind,
            propositions: BTreeSet::new(),
            states: BTreeSet::new(),
            boxes: BTreeSet::new(),
            initial: BTreeSet::new(),
            accepting: BTreeSet::new(),
            transitions: BTreeSet::new(),
        }
    }

    pub fn add_state(
        &mut self,
        id: impl Into<String>,
        is_box: bool,
        initial: bool,
        accepting: bool,
    ) {
        let id = id.into();
        if is_box {
            self.boxes.insert(id.clone());
        }
        if initial {
            self.initial.insert(id.clone());
        }
        if accepting {
            self.accepting.insert(id.clone());
        }
        self.states.insert(id);
    }

    /// Adds a transition and declares the propositions of its guard.
    pub fn add_transition(&mut self, from: impl Into<String>, guard: Guard, to: impl Into<String>) {
        for p in guard.propositions() {
            self.propositions.insert(p.to_string());
        }
        self.transitions.insert(Transition::new(from, guard, to));
    }

    pub fn is_box(&self, id: &str) -> bool {
        self.boxes.contains(id)
    }

    pub fn is_regular(&self, id: &str) -> bool {
        self.states.contains(id) && !self.boxes.contains(id)
    }

    pub fn regulars(&self) -> impl Iterator<Item = &StateId> {
        self.states.iter().filter(|s| !self.boxes.contains(*s))
    }

    /// Transitions leaving `id`, in sorted order.
    pub fn outgoing<'a>(&'a self, id: &str) -> impl Iterator<Item = &'a Transition> + 'a {
        let lower = Transition {
            from: id.to_string(),
            to: String::new(),
            guard: Guard::top(),
        };
        let id = id.to_string();
        self.transitions
            .range(lower..)
            .take_while(move |t| t.from == id)
    }

    /// `|Q| + |Δ|`.
    pub fn size(&self) -> usize {
        self.states.len() + self.transitions.len()
    }

    /// Deletes boxes and their adjacent transitions; the result is a BA.
    pub fn completion(&self) -> Automaton {
        let keep = |s: &StateId| !self.boxes.contains(s);
        Automaton {
            kind: Kind::Ba,
            propositions: self.propositions.clone(),
            states: self.states.iter().filter(|s| keep(s)).cloned().collect(),
            boxes: BTreeSet::new(),
            initial: self.initial.iter().filter(|s| keep(s)).cloned().collect(),
            accepting: self.accepting.iter().filter(|s| keep(s)).cloned().collect(),
            transitions: self
                .transitions
                .iter()
                .filter(|t| keep(&t.from) && keep(&t.to))
                .cloned()
                .collect(),
        }
    }

    /// The same automaton reinterpreted with the given kind (boxes kept).
    pub fn with_kind(mut self, kind: Kind) -> Automaton {
        self.kind = kind;
        self
    }

    /// Renames every state through `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Automaton {
        let map = |set: &BTreeSet<StateId>| set.iter().map(|s| f(s)).collect();
        Automaton {
            kind: self.kind,
            propositions: self.propositions.clone(),
            states: map(&self.states),
            boxes: map(&self.boxes),
            initial: map(&self.initial),
            accepting: map(&self.accepting),
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition::new(f(&t.from), t.guard.clone(), f(&t.to)))
                .collect(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }
}

/// A broken structural invariant of an automaton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    EmptyProposition,
    /// A state declared both as a box and as a regular state, or a box that is not a state.
    Partition(StateId),
    DuplicateState(StateId),
    BaHasBox(StateId),
    UndeclaredInitial(StateId),
    UndeclaredAccepting(StateId),
    UndeclaredEndpoint(Transition),
    ContradictoryGuard(Transition),
    UndeclaredProposition(Transition, String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyProposition => write!(f, "empty proposition name"),
            Violation::Partition(s) => {
                write!(f, "state {s} is not in exactly one of boxes/regulars")
            }
            Violation::DuplicateState(s) => write!(f, "state {s} declared twice"),
            Violation::BaHasBox(s) => write!(f, "BA declares box {s}"),
            Violation::UndeclaredInitial(s) => write!(f, "initial state {s} is not declared"),
            Violation::UndeclaredAccepting(s) => write!(f, "accepting state {s} is not declared"),
            Violation::UndeclaredEndpoint(t) => {
                write!(f, "transition {t} has an undeclared endpoint")
            }
            Violation::ContradictoryGuard(t) => {
                write!(f, "transition {t} has a contradictory guard")
            }
            Violation::UndeclaredProposition(t, p) => {
                write!(f, "transition {t} uses undeclared proposition {p}")
            }
        }
    }
}

/// Every violated invariant, sorted.
pub fn validate(a: &Automaton) -> Vec<Violation> {
    let mut out = Vec::new();
    if a.propositions.iter().any(|p| p.is_empty()) {
        out.push(Violation::EmptyProposition);
    }
    for b in &a.boxes {
        if !a.states.contains(b) {
            out.push(Violation::Partition(b.clone()));
        }
        if a.kind == Kind::Ba {
            out.push(Violation::BaHasBox(b.clone()));
        }
    }
    for s in &a.initial {
        if !a.states.contains(s) {
            out.push(Violation::UndeclaredInitial(s.clone()));
        }
    }
    for s in &a.accepting {
        if !a.states.contains(s) {
            out.push(Violation::UndeclaredAccepting(s.clone()));
        }
    }
    for t in &a.transitions {
        if !a.states.contains(&t.from) || !a.states.contains(&t.to) {
            out.push(Violation::UndeclaredEndpoint(t.clone()));
        }
        if !t.guard.is_consistent() {
            out.push(Violation::ContradictoryGuard(t.clone()));
        }
        for p in t.guard.propositions() {
            if !a.propositions.contains(p) {
                out.push(Violation::UndeclaredProposition(t.clone(), p.to_string()));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDoc {
    pub id: StateId,
    #[serde(rename = "box", default)]
    pub is_box: bool,
    #[serde(default)]
    pub initial: bool,
    #[serde(default)]
    pub accepting: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: StateId,
    pub to: StateId,
    #[serde(default)]
    pub guard: Vec<String>,
}

/// JSON document form of an [`Automaton`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDoc {
    pub kind: Kind,
    #[serde(default)]
    pub propositions: Vec<String>,
    #[serde(default)]
    pub states: Vec<StateDoc>,
    #[serde(default)]
    pub transitions: Vec<TransitionDoc>,
}

impl AutomatonDoc {
    /// Builds the automaton, reporting document-level and structural violations.
    pub fn build(&self) -> Result<Automaton, Error> {
        let mut violations = Vec::new();
        let mut a = Automaton::new(self.kind);
        for p in &self.propositions {
            a.propositions.insert(p.clone());
        }
        let mut seen: BTreeMap<&str, &StateDoc> = BTreeMap::new();
        for s in &self.states {
            match seen.get(s.id.as_str()) {
                Some(prev) if prev.is_box != s.is_box => {
                    violations.push(Violation::Partition(s.id.clone()))
                }
                Some(_) => violations.push(Violation::DuplicateState(s.id.clone())),
                None => {
                    seen.insert(&s.id, s);
                    a.add_state(s.id.clone(), s.is_box, s.initial, s.accepting);
                }
            }
        }
        for t in &self.transitions {
            let guard = Guard::from_tokens(&t.guard)?;
            a.transitions
                .insert(Transition::new(t.from.clone(), guard, t.to.clone()));
        }
        violations.extend(validate(&a));
        violations.sort();
        violations.dedup();
        if violations.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidAutomaton(violations))
        }
    }
}

impl TryFrom<AutomatonDoc> for Automaton {
    type Error = Error;

    fn try_from(doc: AutomatonDoc) -> Result<Self, Error> {
        doc.build()
    }
}

impl From<Automaton> for AutomatonDoc {
    fn from(a: Automaton) -> Self {
        AutomatonDoc::from(&a)
    }
}

impl From<&Automaton> for AutomatonDoc {
    fn from(a: &Automaton) -> Self {
        AutomatonDoc {
            kind: a.kind,
            propositions: a.propositions.iter().cloned().collect(),
            states: a
                .states
                .iter()
                .map(|s| StateDoc {
                    id: s.clone(),
                    is_box: a.boxes.contains(s),
                    initial: a.initial.contains(s),
                    accepting: a.accepting.contains(s),
                })
                .collect(),
            transitions: a
                .transitions
                .iter()
                .map(|t| TransitionDoc {
                    from: t.from.clone(),
                    to: t.to.clone(),
                    guard: t.guard.to_tokens(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(props: &[&str]) -> Character {
        Character::new(props.iter().copied())
    }

    #[test]
    fn guard_matching() {
        let g = Guard::new(["send"], ["success"]);
        assert!(match_guard(&g, &c(&["send"])));
        assert!(!match_guard(&g, &c(&["send", "success"])));
        assert!(match_guard(&Guard::top(), &c(&["abort"])));
    }

    #[test]
    fn conjunction_detects_contradiction() {
        let a = Guard::new(["p"], Vec::<String>::new());
        let b = Guard::new(Vec::<String>::new(), ["p"]);
        assert!(a.conjoin(&b).is_none());
        assert_eq!(a.conjoin(&Guard::top()), Some(a.clone()));
    }

    #[test]
    fn size_counts_states_and_transitions() {
        assert_eq!(Automaton::new(Kind::Iba).size(), 0);
        let mut a = Automaton::new(Kind::Ba);
        a.add_state("s", false, true, true);
        a.add_transition("s", Guard::top(), "s");
        assert_eq!(a.size(), 2);
    }

    #[test]
    fn partition_and_ba_box_violations() {
        let doc: AutomatonDoc = serde_json::from_str(
            r#"{"kind":"iba","propositions":[],"states":[{"id":"s","box":true},{"id":"s","box":false}],"transitions":[]}"#,
        )
        .unwrap();
        match doc.build() {
            Err(Error::InvalidAutomaton(v)) => {
                assert_eq!(v, vec![Violation::Partition("s".into())])
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut ba = Automaton::new(Kind::Ba);
        ba.add_state("b", true, false, false);
        assert_eq!(validate(&ba), vec![Violation::BaHasBox("b".into())]);
    }

    #[test]
    fn completion_of_box_initial_automaton_has_no_initial_state() {
        let mut a = Automaton::new(Kind::Iba);
        a.add_state("b", true, true, false);
        a.add_state("q", false, false, true);
        a.add_transition("b", Guard::top(), "q");
        a.add_transition("q", Guard::top(), "q");
        let c = a.completion();
        assert!(c.initial.is_empty());
        assert_eq!(c.kind, Kind::Ba);
        assert_eq!(c.transitions.len(), 1);
    }

    #[test]
    fn lasso_equivalence() {
        let a = LassoWord::new(vec![c(&["x"])], vec![c(&["y"]), c(&["y"])]);
        let b = LassoWord::new(vec![c(&["x"]), c(&["y"])], vec![c(&["y"])]);
        assert!(a.same_word(&b));
        assert!(!a.same_word(&LassoWord::new(vec![], vec![c(&["y"])])));
    }
}
