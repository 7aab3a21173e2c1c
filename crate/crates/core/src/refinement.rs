//! Replacements, sequential composition and refinement checking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{
    Automaton, AutomatonDoc, Guard, Kind, StateId, Transition, TransitionDoc, Violation,
};
use crate::error::Error;

/// An automaton to substitute for `box_id`, with the transitions plugging it into the host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ReplacementDoc", into = "ReplacementDoc")]
pub struct Replacement {
    pub box_id: StateId,
    pub inner: Automaton,
    /// `(host source, guard, inner target)`.
    pub incoming: BTreeSet<Transition>,
    /// `(inner source, guard, host target)`.
    pub outgoing: BTreeSet<Transition>,
}

impl Replacement {
    /// Renames every inner state `s` to `prefix + s`.
    pub fn with_prefix(&self, prefix: &str) -> Replacement {
        let inner_ids = &self.inner.states;
        let rn = |s: &str| {
            if inner_ids.contains(s) {
                format!("{prefix}{s}")
            } else {
                s.to_string()
            }
        };
        Replacement {
            box_id: self.box_id.clone(),
            inner: self.inner.rename(|s| format!("{prefix}{s}")),
            incoming: self
                .incoming
                .iter()
                .map(|t| Transition::new(t.from.clone(), t.guard.clone(), rn(&t.to)))
                .collect(),
            outgoing: self
                .outgoing
                .iter()
                .map(|t| Transition::new(rn(&t.from), t.guard.clone(), t.to.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplacementDoc {
    #[serde(rename = "box")]
    pub box_id: StateId,
    pub automaton: AutomatonDoc,
    #[serde(default)]
    pub incoming: Vec<TransitionDoc>,
    #[serde(default)]
    pub outgoing: Vec<TransitionDoc>,
}

fn transitions_from_docs(docs: &[TransitionDoc]) -> Result<BTreeSet<Transition>, Error> {
    docs.iter()
        .map(|t| {
            Ok(Transition::new(
                t.from.clone(),
                Guard::from_tokens(&t.guard)?,
                t.to.clone(),
            ))
        })
        .collect()
}

fn transitions_to_docs(ts: &BTreeSet<Transition>) -> Vec<TransitionDoc> {
    ts.iter()
        .map(|t| TransitionDoc {
            from: t.from.clone(),
            to: t.to.clone(),
            guard: t.guard.to_tokens(),
        })
        .collect()
}

impl TryFrom<ReplacementDoc> for Replacement {
    type Error = Error;

    fn try_from(doc: ReplacementDoc) -> Result<Self, Error> {
        Ok(Replacement {
            box_id: doc.box_id,
            inner: doc.automaton.build()?,
            incoming: transitions_from_docs(&doc.incoming)?,
            outgoing: transitions_from_docs(&doc.outgoing)?,
        })
    }
}

impl From<Replacement> for ReplacementDoc {
    fn from(r: Replacement) -> Self {
        ReplacementDoc {
            automaton: AutomatonDoc::from(&r.inner),
            incoming: transitions_to_docs(&r.incoming),
            outgoing: transitions_to_docs(&r.outgoing),
            box_id: r.box_id,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReplacementViolation {
    Inner(Violation),
    InitialForbidden(StateId),
    AcceptingForbidden(StateId),
    MissingIncoming(Transition),
    MissingOutgoing(Transition),
    MissingSelfLoop(Transition),
    /// An incoming entry with no host transition `(source, guard, box)` or an unknown target.
    UnmatchedIncoming(Transition),
    /// An outgoing entry with no host transition `(box, guard, target)` or an unknown source.
    UnmatchedOutgoing(Transition),
    /// A plug transition whose host endpoint is the replaced box itself.
    BoxEndpoint(Transition),
}

impl fmt::Display for ReplacementViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplacementViolation::Inner(v) => write!(f, "inner automaton: {v}"),
            ReplacementViolation::InitialForbidden(s) => write!(f, "initial-forbidden {s}"),
            ReplacementViolation::AcceptingForbidden(s) => write!(f, "accepting-forbidden {s}"),
            ReplacementViolation::MissingIncoming(t) => write!(f, "missing-incoming for {t}"),
            ReplacementViolation::MissingOutgoing(t) => write!(f, "missing-outgoing for {t}"),
            ReplacementViolation::MissingSelfLoop(t) => write!(f, "missing-self-loop for {t}"),
            ReplacementViolation::UnmatchedIncoming(t) => write!(f, "unmatched-incoming {t}"),
            ReplacementViolation::UnmatchedOutgoing(t) => write!(f, "unmatched-outgoing {t}"),
            ReplacementViolation::BoxEndpoint(t) => write!(f, "box-endpoint {t}"),
        }
    }
}

/// Every violated replacement condition, sorted. Errors if `r.box_id` is not a box of `host`.
pub fn validate_replacement(
    host: &Automaton,
    r: &Replacement,
) -> Result<Vec<ReplacementViolation>, Error> {
    let b = &r.box_id;
    if !host.is_box(b) {
        return Err(Error::NotABox(b.clone()));
    }
    let mut out: Vec<ReplacementViolation> = r
        .inner
        .validate()
        .into_iter()
        .map(ReplacementViolation::Inner)
        .collect();
    if !host.initial.contains(b) {
        out.extend(
            r.inner
                .initial
                .iter()
                .cloned()
                .map(ReplacementViolation::InitialForbidden),
        );
    }
    if !host.accepting.contains(b) {
        out.extend(
            r.inner
                .accepting
                .iter()
                .cloned()
                .map(ReplacementViolation::AcceptingForbidden),
        );
    }
    for t in &host.transitions {
        if t.to == *b
            && t.from != *b
            && !r
                .incoming
                .iter()
                .any(|e| e.from == t.from && e.guard == t.guard)
        {
            out.push(ReplacementViolation::MissingIncoming(t.clone()));
        }
        if t.from == *b
            && t.to != *b
            && !r
                .outgoing
                .iter()
                .any(|e| e.to == t.to && e.guard == t.guard)
        {
            out.push(ReplacementViolation::MissingOutgoing(t.clone()));
        }
        if t.from == *b && t.to == *b && !r.inner.transitions.iter().any(|e| e.guard == t.guard) {
            out.push(ReplacementViolation::MissingSelfLoop(t.clone()));
        }
    }
    for e in &r.incoming {
        if e.from == *b {
            out.push(ReplacementViolation::BoxEndpoint(e.clone()));
        } else if !r.inner.states.contains(&e.to)
            || !host.transitions.contains(&Transition::new(
                e.from.clone(),
                e.guard.clone(),
                b.clone(),
            ))
        {
            out.push(ReplacementViolation::UnmatchedIncoming(e.clone()));
        }
    }
    for e in &r.outgoing {
        if e.to == *b {
            out.push(ReplacementViolation::BoxEndpoint(e.clone()));
        } else if !r.inner.states.contains(&e.from)
            || !host.transitions.contains(&Transition::new(
                b.clone(),
                e.guard.clone(),
                e.to.clone(),
            ))
        {
            out.push(ReplacementViolation::UnmatchedOutgoing(e.clone()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A relation between abstract and concrete states.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementRelation {
    pub pairs: BTreeSet<(StateId, StateId)>,
}

impl RefinementRelation {
    pub fn identity<'a>(states: impl IntoIterator<Item = &'a StateId>) -> Self {
        RefinementRelation {
            pairs: states.into_iter().map(|s| (s.clone(), s.clone())).collect(),
        }
    }

    pub fn contains(&self, abstract_state: &str, concrete_state: &str) -> bool {
        self.pairs
            .contains(&(abstract_state.to_string(), concrete_state.to_string()))
    }

    /// `{(a, c) | (a, m) ∈ self, (m, c) ∈ next}`.
    pub fn then(&self, next: &RefinementRelation) -> RefinementRelation {
        let mut pairs = BTreeSet::new();
        for (a, m) in &self.pairs {
            for (m2, c) in &next.pairs {
                if m == m2 {
                    pairs.insert((a.clone(), c.clone()));
                }
            }
        }
        RefinementRelation { pairs }
    }
}

/// Sequential composition `host ⋈ r` with its canonical refinement relation.
pub fn compose(
    host: &Automaton,
    r: &Replacement,
) -> Result<(Automaton, RefinementRelation), Error> {
    let violations = validate_replacement(host, r)?;
    if !violations.is_empty() {
        return Err(Error::InvalidReplacement(violations));
    }
    let clashes: Vec<String> = r.inner.states.intersection(&host.states).cloned().collect();
    if !clashes.is_empty() {
        return Err(Error::IdCollision(clashes));
    }
    let b = &r.box_id;
    let mut n = Automaton::new(Kind::Iba);
    n.propositions = host
        .propositions
        .union(&r.inner.propositions)
        .cloned()
        .collect();
    for t in r.incoming.iter().chain(&r.outgoing) {
        n.propositions
            .extend(t.guard.propositions().map(str::to_string));
    }
    n.states = host
        .states
        .iter()
        .filter(|s| *s != b)
        .chain(&r.inner.states)
        .cloned()
        .collect();
    n.boxes = host
        .boxes
        .iter()
        .filter(|s| *s != b)
        .chain(&r.inner.boxes)
        .cloned()
        .collect();
    n.initial = host
        .initial
        .union(&r.inner.initial)
        .filter(|s| n.states.contains(*s))
        .cloned()
        .collect();
    n.accepting = host
        .accepting
        .union(&r.inner.accepting)
        .filter(|s| n.states.contains(*s))
        .cloned()
        .collect();
    n.transitions = host
        .transitions
        .iter()
        .filter(|t| t.from != *b && t.to != *b)
        .chain(&r.inner.transitions)
        .chain(&r.incoming)
        .chain(&r.outgoing)
        .cloned()
        .collect();
    let mut rel = RefinementRelation::identity(host.states.iter().filter(|s| *s != b));
    for s in &r.inner.states {
        rel.pairs.insert((b.clone(), s.clone()));
    }
    Ok((n, rel))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Σ_abstract ⊆ Σ_concrete.
    Alphabet,
    /// A relation pair names an undeclared state.
    Endpoints,
    /// One of the nine numbered refinement conditions.
    Numbered(u8),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Alphabet => f.write_str("alphabet"),
            Condition::Endpoints => f.write_str("endpoints"),
            Condition::Numbered(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Condition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementReport {
    pub holds: bool,
    pub violated: Vec<Condition>,
}

/// Checks the nine refinement conditions for the given relation.
pub fn check_refinement(
    m: &Automaton,
    n: &Automaton,
    rel: &RefinementRelation,
) -> RefinementReport {
    let mut violated: BTreeSet<Condition> = BTreeSet::new();
    let mut fail = |c: Condition| {
        violated.insert(c);
    };
    if !m.propositions.is_subset(&n.propositions) {
        fail(Condition::Alphabet);
    }
    if rel
        .pairs
        .iter()
        .any(|(a, c)| !m.states.contains(a) || !n.states.contains(c))
    {
        fail(Condition::Endpoints);
    }
    let mut image: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut preimage: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, c) in &rel.pairs {
        image.entry(a).or_default().push(c);
        preimage.entry(c).or_default().push(a);
    }
    let image_of = |a: &str| image.get(a).map(Vec::as_slice).unwrap_or(&[]).to_vec();
    for q in m.regulars() {
        if image_of(q).into_iter().filter(|c| n.is_regular(c)).count() != 1 {
            fail(Condition::Numbered(1));
        }
    }
    for q in &n.states {
        if preimage.get(q.as_str()).map_or(0, Vec::len) != 1 {
            fail(Condition::Numbered(2));
        }
    }
    for (a, c) in &rel.pairs {
        if n.initial.contains(c) && !m.initial.contains(a) {
            fail(Condition::Numbered(3));
        }
        if n.is_box(c) && !m.is_box(a) {
            fail(Condition::Numbered(4));
        }
        if n.accepting.contains(c) && !m.accepting.contains(a) {
            fail(Condition::Numbered(5));
        }
        if m.initial.contains(a) && m.is_regular(a) && !(n.initial.contains(c) && n.is_regular(c)) {
            fail(Condition::Numbered(6));
        }
        if m.accepting.contains(a)
            && m.is_regular(a)
            && !(n.accepting.contains(c) && n.is_regular(c))
        {
            fail(Condition::Numbered(7));
        }
        for t in m.outgoing(a) {
            let direct = n
                .outgoing(c)
                .any(|u| u.guard == t.guard && rel.contains(&t.to, &u.to));
            let through_box = m.is_box(a)
                && image_of(a).into_iter().any(|inner| {
                    n.outgoing(inner)
                        .any(|u| u.guard == t.guard && rel.contains(&t.to, &u.to))
                });
            if !direct && !through_box {
                fail(Condition::Numbered(8));
            }
        }
        for u in n.outgoing(c) {
            let direct = m
                .outgoing(a)
                .any(|t| t.guard == u.guard && rel.contains(&t.to, &u.to));
            let inside_box = m.is_box(a) && rel.contains(a, &u.to);
            if !direct && !inside_box {
                fail(Condition::Numbered(9));
            }
        }
    }
    RefinementReport {
        holds: violated.is_empty(),
        violated: violated.into_iter().collect(),
    }
}

/// Checks that `fine` refines `coarse` through `rel` over their inner automata.
/// Plug transitions must also agree on their host-side endpoint.
pub fn check_replacement_refinement(
    coarse: &Replacement,
    fine: &Replacement,
    rel: &RefinementRelation,
) -> Result<RefinementReport, Error> {
    if coarse.box_id != fine.box_id {
        return Err(Error::BoxMismatch {
            expected: coarse.box_id.clone(),
            found: fine.box_id.clone(),
        });
    }
    let mut report = check_refinement(&coarse.inner, &fine.inner, rel);
    let mut violated: BTreeSet<Condition> = report.violated.iter().copied().collect();
    let same_in = |c: &Transition, f: &Transition| {
        c.from == f.from && c.guard == f.guard && rel.contains(&c.to, &f.to)
    };
    let same_out = |c: &Transition, f: &Transition| {
        c.to == f.to && c.guard == f.guard && rel.contains(&c.from, &f.from)
    };
    if !coarse
        .incoming
        .iter()
        .all(|c| fine.incoming.iter().any(|f| same_in(c, f)))
    {
        violated.insert(Condition::Numbered(2));
    }
    if !coarse
        .outgoing
        .iter()
        .all(|c| fine.outgoing.iter().any(|f| same_out(c, f)))
    {
        violated.insert(Condition::Numbered(3));
    }
    if !fine
        .incoming
        .iter()
        .all(|f| coarse.incoming.iter().filter(|c| same_in(c, f)).count() == 1)
    {
        violated.insert(Condition::Numbered(4));
    }
    if !fine
        .outgoing
        .iter()
        .all(|f| coarse.outgoing.iter().filter(|c| same_out(c, f)).count() == 1)
    {
        violated.insert(Condition::Numbered(5));
    }
    report.violated = violated.into_iter().collect();
    report.holds = report.violated.is_empty();
    Ok(report)
}
