//! Intersection of an IBA with a BA, emptiness and three-valued model checking.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, Guard, Kind, LassoWord, StateId, Transition};
use crate::error::Error;
use crate::graph::{Digraph, EdgeLasso};
use crate::ltl::{ltl_to_ba, Ltl};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductState {
    pub model: StateId,
    pub claim: StateId,
    pub counter: u8,
}

impl ProductState {
    pub fn new(model: impl Into<String>, claim: impl Into<String>, counter: u8) -> Self {
        ProductState {
            model: model.into(),
            claim: claim.into(),
            counter,
        }
    }

    pub fn id(&self) -> String {
        format!("({},{},{})", self.model, self.claim, self.counter)
    }
}

impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    /// Δ^c: model and claim move together.
    Sync,
    /// Δ^p: the claim moves while the model stutters on a box.
    Stutter,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProductTransition {
    pub from: usize,
    pub to: usize,
    pub guard: Guard,
    pub kind: StepKind,
    /// The model transition for `Sync` steps; `None` for box stuttering.
    pub model_step: Option<Transition>,
    pub claim_step: Transition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionAutomaton {
    pub propositions: BTreeSet<String>,
    /// Sorted by (model, claim, counter).
    pub states: Vec<ProductState>,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    pub mixed: Vec<bool>,
    pub model_accepting: Vec<bool>,
    pub claim_accepting: Vec<bool>,
    pub transitions: Vec<ProductTransition>,
}

/// Counter update, first matching rule wins.
pub fn next_counter(x: u8, model_accepting: bool, claim_accepting: bool) -> u8 {
    if x == 0 && model_accepting {
        1
    } else if x == 1 && claim_accepting {
        2
    } else if x == 2 {
        0
    } else {
        x
    }
}

/// Reachable intersection of `model` (boxes stutter) with the box-free `claim`.
pub fn intersect(model: &Automaton, claim: &Automaton) -> IntersectionAutomaton {
    intersect_from(model, claim, &[])
}

/// As [`intersect`], but also materializes everything reachable from `seeds`
/// (which are not made initial).
pub fn intersect_from(
    model: &Automaton,
    claim: &Automaton,
    seeds: &[ProductState],
) -> IntersectionAutomaton {
    let mut index: BTreeMap<ProductState, usize> = BTreeMap::new();
    let mut order: Vec<ProductState> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut intern =
        |s: ProductState, order: &mut Vec<ProductState>, queue: &mut VecDeque<usize>| -> usize {
            *index.entry(s.clone()).or_insert_with(|| {
                order.push(s);
                queue.push_back(order.len() - 1);
                order.len() - 1
            })
        };
    let mut initial = Vec::new();
    for q in &model.initial {
        for p in &claim.initial {
            initial.push(intern(
                ProductState::new(q.clone(), p.clone(), 0),
                &mut order,
                &mut queue,
            ));
        }
    }
    for s in seeds {
        if model.states.contains(&s.model) && claim.states.contains(&s.claim) {
            intern(s.clone(), &mut order, &mut queue);
        }
    }
    let mut raw: Vec<ProductTransition> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let src = order[i].clone();
        for u in claim.outgoing(&src.claim) {
            let claim_acc = claim.accepting.contains(&u.to);
            for t in model.outgoing(&src.model) {
                let Some(guard) = t.guard.conjoin(&u.guard) else {
                    continue;
                };
                let y = next_counter(src.counter, model.accepting.contains(&t.to), claim_acc);
                let j = intern(
                    ProductState::new(t.to.clone(), u.to.clone(), y),
                    &mut order,
                    &mut queue,
                );
                raw.push(ProductTransition {
                    from: i,
                    to: j,
                    guard,
                    kind: StepKind::Sync,
                    model_step: Some(t.clone()),
                    claim_step: u.clone(),
                });
            }
            if model.is_box(&src.model) {
                let y = next_counter(src.counter, model.accepting.contains(&src.model), claim_acc);
                let j = intern(
                    ProductState::new(src.model.clone(), u.to.clone(), y),
                    &mut order,
                    &mut queue,
                );
                raw.push(ProductTransition {
                    from: i,
                    to: j,
                    guard: u.guard.clone(),
                    kind: StepKind::Stutter,
                    model_step: None,
                    claim_step: u.clone(),
                });
            }
        }
    }
    let mut propositions = model.propositions.clone();
    propositions.extend(claim.propositions.iter().cloned());
    IntersectionAutomaton::assemble(propositions, order, initial, raw, |s| {
        (
            model.is_box(&s.model),
            model.accepting.contains(&s.model),
            claim.accepting.contains(&s.claim),
        )
    })
}

impl IntersectionAutomaton {
    /// Sorts states, remaps indices and derives the per-state flags.
    fn assemble(
        propositions: BTreeSet<String>,
        order: Vec<ProductState>,
        initial: Vec<usize>,
        raw: Vec<ProductTransition>,
        flags: impl Fn(&ProductState) -> (bool, bool, bool),
    ) -> Self {
        let mut perm: Vec<usize> = (0..order.len()).collect();
        perm.sort_by(|&a, &b| order[a].cmp(&order[b]));
        let mut remap = vec![0; order.len()];
        for (new, &old) in perm.iter().enumerate() {
            remap[old] = new;
        }
        let states: Vec<ProductState> = perm.iter().map(|&i| order[i].clone()).collect();
        let mut transitions: Vec<ProductTransition> = raw
            .into_iter()
            .map(|mut t| {
                t.from = remap[t.from];
                t.to = remap[t.to];
                t
            })
            .collect();
        transitions.sort();
        transitions.dedup();
        let mut initial: Vec<usize> = initial.into_iter().map(|i| remap[i]).collect();
        initial.sort();
        initial.dedup();
        let (mut mixed, mut model_accepting, mut claim_accepting) =
            (Vec::new(), Vec::new(), Vec::new());
        for s in &states {
            let (m, ma, ca) = flags(s);
            mixed.push(m);
            model_accepting.push(ma);
            claim_accepting.push(ca);
        }
        IntersectionAutomaton {
            propositions,
            accepting: states.iter().map(|s| s.counter == 2).collect(),
            states,
            initial,
            mixed,
            model_accepting,
            claim_accepting,
            transitions,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty_automaton(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &ProductState) -> Option<usize> {
        self.states.binary_search(s).ok()
    }

    pub fn id(&self, i: usize) -> String {
        self.states[i].id()
    }

    pub fn is_purely_regular(&self, i: usize) -> bool {
        !self.mixed[i]
    }

    pub fn delta_c(&self) -> impl Iterator<Item = &ProductTransition> {
        self.transitions.iter().filter(|t| t.kind == StepKind::Sync)
    }

    pub fn delta_p(&self) -> impl Iterator<Item = &ProductTransition> {
        self.transitions
            .iter()
            .filter(|t| t.kind == StepKind::Stutter)
    }

    pub fn graph(&self) -> Digraph {
        Digraph::new(
            self.len(),
            self.transitions.iter().map(|t| (t.from, t.to)).collect(),
        )
    }

    /// Keeps the states flagged in `keep` and the transitions between them.
    pub fn retain(&self, keep: &[bool]) -> IntersectionAutomaton {
        let mut remap = vec![usize::MAX; self.len()];
        let mut states = Vec::new();
        for (i, s) in self.states.iter().enumerate() {
            if keep[i] {
                remap[i] = states.len();
                states.push(s.clone());
            }
        }
        let pick = |v: &Vec<bool>| -> Vec<bool> {
            (0..self.len()).filter(|&i| keep[i]).map(|i| v[i]).collect()
        };
        IntersectionAutomaton {
            propositions: self.propositions.clone(),
            initial: self
                .initial
                .iter()
                .filter(|&&i| keep[i])
                .map(|&i| remap[i])
                .collect(),
            accepting: pick(&self.accepting),
            mixed: pick(&self.mixed),
            model_accepting: pick(&self.model_accepting),
            claim_accepting: pick(&self.claim_accepting),
            transitions: self
                .transitions
                .iter()
                .filter(|t| keep[t.from] && keep[t.to])
                .map(|t| ProductTransition {
                    from: remap[t.from],
                    to: remap[t.to],
                    ..t.clone()
                })
                .collect(),
            states,
        }
    }

    /// The product as a plain BA over state ids `(q,p,x)`.
    pub fn underlying(&self) -> Automaton {
        let mut a = Automaton::new(Kind::Ba);
        a.propositions = self.propositions.clone();
        for (i, s) in self.states.iter().enumerate() {
            a.add_state(s.id(), false, self.initial.contains(&i), self.accepting[i]);
        }
        for t in &self.transitions {
            a.transitions.insert(Transition::new(
                self.id(t.from),
                t.guard.clone(),
                self.id(t.to),
            ));
        }
        a
    }

    pub fn accepting_lasso(&self) -> Option<Witness> {
        let g = self.graph();
        let lasso = g.accepting_lasso(&self.initial, |n| self.accepting[n])?;
        Some(Witness::from_edges(
            &lasso,
            &g,
            |e| &self.transitions[e].guard,
            |n| self.id(n),
        ))
    }

    pub fn is_empty(&self) -> bool {
        self.accepting_lasso().is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub stem: Vec<StateId>,
    #[serde(rename = "loop")]
    pub cycle: Vec<StateId>,
}

/// A lasso word with the run reading it: `run.stem[i]` is the state before
/// reading `word.stem[i]`, and likewise for the loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub word: LassoWord,
    pub run: Run,
}

impl Witness {
    pub(crate) fn from_edges<'a>(
        lasso: &EdgeLasso,
        g: &Digraph,
        guard: impl Fn(usize) -> &'a Guard,
        name: impl Fn(usize) -> String,
    ) -> Witness {
        let chars = |edges: &[usize]| edges.iter().map(|&e| guard(e).witness()).collect();
        let states = |edges: &[usize]| edges.iter().map(|&e| name(g.edges[e].0)).collect();
        Witness {
            word: LassoWord::new(chars(&lasso.stem), chars(&lasso.cycle)),
            run: Run {
                stem: states(&lasso.stem),
                cycle: states(&lasso.cycle),
            },
        }
    }
}

/// An accepting lasso of the BA `a`, or `None` when its language is empty.
/// Characters set exactly the positive literals of each guard.
pub fn is_empty(a: &Automaton) -> Option<Witness> {
    let ids: Vec<&StateId> = a.states.iter().collect();
    let pos = |s: &str| {
        ids.binary_search_by(|x| x.as_str().cmp(s))
            .expect("declared state")
    };
    let trans: Vec<&Transition> = a.transitions.iter().collect();
    let g = Digraph::new(
        ids.len(),
        trans.iter().map(|t| (pos(&t.from), pos(&t.to))).collect(),
    );
    let initial: Vec<usize> = a.initial.iter().map(|s| pos(s)).collect();
    let lasso = g.accepting_lasso(&initial, |n| a.accepting.contains(ids[n]))?;
    Some(Witness::from_edges(
        &lasso,
        &g,
        |e| &trans[e].guard,
        |n| ids[n].clone(),
    ))
}

/// Membership of a lasso word in the language of `a`, reading boxes as
/// ordinary states.
pub fn accepts(a: &Automaton, w: &LassoWord) -> bool {
    let ids: Vec<&StateId> = a.states.iter().collect();
    let n = w.positions();
    let node = |s: &str, p: usize| {
        ids.binary_search_by(|x| x.as_str().cmp(s))
            .expect("declared state")
            * n
            + p
    };
    let mut edges = Vec::new();
    for t in &a.transitions {
        for p in 0..n {
            if t.guard.matches(w.at(p)) {
                edges.push((node(&t.from, p), node(&t.to, w.next_position(p))));
            }
        }
    }
    let g = Digraph::new(ids.len() * n, edges);
    let initial: Vec<usize> = a.initial.iter().map(|s| node(s, 0)).collect();
    g.accepting_lasso(&initial, |v| a.accepting.contains(ids[v / n]))
        .is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Truth {
    T,
    F,
    #[serde(rename = "?")]
    Unknown,
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::T => "T",
            Truth::F => "F",
            Truth::Unknown => "?",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(rename = "verdict")]
    pub truth: Truth,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Verdict {
        Verdict {
            truth: Truth::T,
            witness: None,
        }
    }
}

/// Three-valued check of `model` against the claim automaton of the negated property.
pub fn model_check(model: &Automaton, claim: &Automaton) -> Result<Verdict, Error> {
    if !claim.boxes.is_empty() {
        return Err(Error::ClaimHasBoxes);
    }
    if let Some(w) = intersect(&model.completion(), claim).accepting_lasso() {
        return Ok(Verdict {
            truth: Truth::F,
            witness: Some(w),
        });
    }
    if let Some(w) = intersect(model, claim).accepting_lasso() {
        return Ok(Verdict {
            truth: Truth::Unknown,
            witness: Some(w),
        });
    }
    Ok(Verdict::holds())
}

/// Three-valued check of `model` against `f`, through the claim automaton of `¬f`.
pub fn check_ltl(model: &Automaton, f: &Ltl) -> Result<Verdict, Error> {
    model_check(model, &ltl_to_ba(&Ltl::not(f.clone())))
}
