//! Tableau translation (Gerth, Peled, Vardi, Wolper node expansion) to a
//! generalized Büchi automaton, then counter degeneralization.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{negation_normal_form, Ltl};
use crate::automaton::{Automaton, Guard, Kind, Literal};

const INIT: usize = 0;

#[derive(Debug, Clone)]
struct Node {
    incoming: BTreeSet<usize>,
    new: Vec<Ltl>,
    old: BTreeSet<Ltl>,
    next: BTreeSet<Ltl>,
}

#[derive(Debug, Clone)]
struct Done {
    incoming: BTreeSet<usize>,
    old: BTreeSet<Ltl>,
    next: BTreeSet<Ltl>,
}

struct Tableau {
    done: Vec<Done>,
}

fn is_literal(f: &Ltl) -> bool {
    matches!(f, Ltl::Prop(_)) || matches!(f, Ltl::Not(a) if matches!(**a, Ltl::Prop(_)))
}

fn negate_literal(f: &Ltl) -> Ltl {
    match f {
        Ltl::Not(a) => (**a).clone(),
        other => Ltl::not(other.clone()),
    }
}

impl Tableau {
    /// Expands `node`; finished nodes receive ids `1..` in creation order.
    fn expand(&mut self, mut node: Node) {
        let Some(eta) = node.new.pop() else {
            if let Some(d) = self
                .done
                .iter_mut()
                .find(|d| d.old == node.old && d.next == node.next)
            {
                d.incoming.extend(node.incoming);
                return;
            }
            let id = self.done.len() + 1;
            let next: Vec<Ltl> = node.next.iter().cloned().collect();
            self.done.push(Done {
                incoming: node.incoming,
                old: node.old,
                next: node.next,
            });
            self.expand(Node {
                incoming: [id].into_iter().collect(),
                new: next,
                old: BTreeSet::new(),
                next: BTreeSet::new(),
            });
            return;
        };
        if node.old.contains(&eta) {
            return self.expand(node);
        }
        match &eta {
            Ltl::False => {}
            Ltl::True => {
                node.old.insert(eta);
                self.expand(node);
            }
            f if is_literal(f) => {
                if node.old.contains(&negate_literal(f)) {
                    return;
                }
                node.old.insert(eta);
                self.expand(node);
            }
            Ltl::And(a, b) => {
                for part in [a, b] {
                    if !node.old.contains(&**part) {
                        node.new.push((**part).clone());
                    }
                }
                node.old.insert(eta.clone());
                self.expand(node);
            }
            Ltl::Next(a) => {
                node.next.insert((**a).clone());
                node.old.insert(eta.clone());
                self.expand(node);
            }
            Ltl::Or(a, b) | Ltl::Until(a, b) | Ltl::Release(a, b) => {
                let (new1, next1, new2): (Vec<Ltl>, Option<Ltl>, Vec<Ltl>) = match &eta {
                    Ltl::Or(..) => (vec![(**a).clone()], None, vec![(**b).clone()]),
                    Ltl::Until(..) => (vec![(**a).clone()], Some(eta.clone()), vec![(**b).clone()]),
                    _ => (
                        vec![(**b).clone()],
                        Some(eta.clone()),
                        vec![(**a).clone(), (**b).clone()],
                    ),
                };
                let mut first = node.clone();
                let mut second = node;
                for f in new1 {
                    if !first.old.contains(&f) {
                        first.new.push(f);
                    }
                }
                if let Some(n) = next1 {
                    first.next.insert(n);
                }
                first.old.insert(eta.clone());
                for f in new2 {
                    if !second.old.contains(&f) {
                        second.new.push(f);
                    }
                }
                second.old.insert(eta.clone());
                self.expand(first);
                self.expand(second);
            }
            other => unreachable!("formula not in negation normal form: {other}"),
        }
    }
}

fn node_guard(old: &BTreeSet<Ltl>) -> Guard {
    Guard::from_literals(old.iter().filter_map(|f| match f {
        Ltl::Prop(p) => Some(Literal {
            prop: p.clone(),
            positive: true,
        }),
        Ltl::Not(a) => match &**a {
            Ltl::Prop(p) => Some(Literal {
                prop: p.clone(),
                positive: false,
            }),
            _ => None,
        },
        _ => None,
    }))
}

/// Büchi automaton accepting exactly the words that satisfy `f`.
/// States are `init` and `n<node>_<level>`.
pub fn ltl_to_ba(f: &Ltl) -> Automaton {
    let f = negation_normal_form(f);
    let mut tab = Tableau { done: Vec::new() };
    tab.expand(Node {
        incoming: [INIT].into_iter().collect(),
        new: vec![f.clone()],
        old: BTreeSet::new(),
        next: BTreeSet::new(),
    });

    let untils: BTreeSet<(Ltl, Ltl)> = f
        .subformulae()
        .into_iter()
        .filter_map(|g| match g {
            Ltl::Until(_, b) => Some((g.clone(), (**b).clone())),
            _ => None,
        })
        .collect();
    let untils: Vec<(Ltl, Ltl)> = untils.into_iter().collect();
    let levels = untils.len().max(1);
    let in_set = |node: usize, level: usize| -> bool {
        match untils.get(level) {
            None => true,
            Some((u, rhs)) => {
                let old = &tab.done[node - 1].old;
                !old.contains(u) || old.contains(rhs)
            }
        }
    };

    // Generalized transitions m -> n labelled with the literals of n.
    let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, d) in tab.done.iter().enumerate() {
        for &m in &d.incoming {
            succ.entry(m).or_default().push(i + 1);
        }
    }

    let name = |n: usize, level: usize| format!("n{n}_{level}");
    let mut ba = Automaton::new(Kind::Ba);
    ba.propositions = f.propositions();
    ba.add_state("init", false, true, false);
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &n in succ.get(&INIT).map(Vec::as_slice).unwrap_or(&[]) {
        ba.add_transition("init", node_guard(&tab.done[n - 1].old), name(n, 0));
        if seen.insert((n, 0)) {
            queue.push_back((n, 0));
        }
    }
    while let Some((m, level)) = queue.pop_front() {
        ba.add_state(name(m, level), false, false, level == 0 && in_set(m, 0));
        let next_level = if in_set(m, level) {
            (level + 1) % levels
        } else {
            level
        };
        for &n in succ.get(&m).map(Vec::as_slice).unwrap_or(&[]) {
            ba.add_transition(
                name(m, level),
                node_guard(&tab.done[n - 1].old),
                name(n, next_level),
            );
            if seen.insert((n, next_level)) {
                queue.push_back((n, next_level));
            }
        }
    }
    ba
}
