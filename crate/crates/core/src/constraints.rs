//! Per-box constraints extracted from a possibly-satisfied product: cleaning,
//! sub-property skeletons, the G/R port sets and the reachability relation K.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, AutomatonDoc, Guard, Kind, StateId};
use crate::error::Error;
use crate::product::{intersect, model_check, IntersectionAutomaton, StepKind, Truth, Witness};

/// Keeps exactly the states that lie on some accepting lasso.
pub fn clean_intersection(i: &IntersectionAutomaton) -> IntersectionAutomaton {
    let keep = i
        .graph()
        .on_accepting_lasso(&i.initial, |_| true, |n| i.accepting[n]);
    i.retain(&keep)
}

/// A plug transition of a sub-property: `host → inner` for incoming ports and
/// `inner → host` for outgoing ones. `via` is the product state outside the
/// box at the other end of the generating product transition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port {
    pub host: StateId,
    pub guard: Guard,
    pub inner: StateId,
    pub via: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub box_id: StateId,
    /// 𝒫: the product states of the box with the box-stuttering transitions between them.
    pub inner: Automaton,
    pub incoming: Vec<Port>,
    pub outgoing: Vec<Port>,
}

/// Skeletons of every box of `model` (boxes without surviving states get empty ones).
pub fn extract_subproperty_skeletons(
    icl: &IntersectionAutomaton,
    model: &Automaton,
) -> BTreeMap<StateId, Skeleton> {
    let mut out = BTreeMap::new();
    for b in &model.boxes {
        let inside = |n: usize| icl.states[n].model == *b;
        let mut inner = Automaton::new(Kind::Ba);
        inner.propositions = icl.propositions.clone();
        for n in (0..icl.len()).filter(|&n| inside(n)) {
            inner.add_state(icl.id(n), false, icl.initial.contains(&n), icl.accepting[n]);
        }
        let mut incoming = BTreeSet::new();
        let mut outgoing = BTreeSet::new();
        for t in &icl.transitions {
            match (inside(t.from), inside(t.to), t.kind) {
                (true, true, StepKind::Stutter) => {
                    inner.add_transition(icl.id(t.from), t.claim_step.guard.clone(), icl.id(t.to));
                }
                (false, true, _) => {
                    incoming.insert(Port {
                        host: icl.states[t.from].model.clone(),
                        guard: t.guard.clone(),
                        inner: icl.id(t.to),
                        via: icl.id(t.from),
                    });
                }
                (true, false, _) => {
                    outgoing.insert(Port {
                        host: icl.states[t.to].model.clone(),
                        guard: t.guard.clone(),
                        inner: icl.id(t.from),
                        via: icl.id(t.to),
                    });
                }
                _ => {}
            }
        }
        out.insert(
            b.clone(),
            Skeleton {
                box_id: b.clone(),
                inner,
                incoming: incoming.into_iter().collect(),
                outgoing: outgoing.into_iter().collect(),
            },
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SubPropertyKind {
    /// Traversal restricted to purely regular states.
    S,
    /// Traversal through every state outside the box.
    Sp,
}

impl fmt::Display for SubPropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubPropertyKind::S => "S",
            SubPropertyKind::Sp => "Sp",
        })
    }
}

/// An (outgoing, incoming) pair of K with its Γ flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub outgoing: usize,
    pub incoming: usize,
    /// Γ_M: some connecting path visits a model-accepting state.
    pub model_accepting: bool,
    /// Γ_A: some connecting path visits a claim-accepting state.
    pub claim_accepting: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SubPropertyDoc", into = "SubPropertyDoc")]
pub struct SubProperty {
    pub box_id: StateId,
    pub kind: SubPropertyKind,
    pub inner: Automaton,
    pub incoming: Vec<Port>,
    pub outgoing: Vec<Port>,
    /// Indices into `incoming`.
    pub g: BTreeSet<usize>,
    /// Indices into `outgoing`.
    pub r: BTreeSet<usize>,
    pub links: Vec<Link>,
}

/// Traversal universe for `kind`, as a membership vector over `icl` states.
fn universe(icl: &IntersectionAutomaton, box_id: &str, kind: SubPropertyKind) -> Vec<bool> {
    (0..icl.len())
        .map(|n| match kind {
            SubPropertyKind::S => icl.is_purely_regular(n),
            SubPropertyKind::Sp => icl.states[n].model != box_id,
        })
        .collect()
}

fn id_index(icl: &IntersectionAutomaton) -> BTreeMap<String, usize> {
    (0..icl.len()).map(|n| (icl.id(n), n)).collect()
}

/// G: incoming ports whose outside source is reachable from an initial state
/// within the universe. R: outgoing ports whose outside target reaches, within
/// the universe, a non-trivial SCC of the universe holding an accepting state.
pub fn compute_g_r(
    icl: &IntersectionAutomaton,
    skeleton: &Skeleton,
    kind: SubPropertyKind,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let u = universe(icl, &skeleton.box_id, kind);
    let g = icl.graph();
    let index = id_index(icl);
    let fwd = g.forward(icl.initial.iter().copied(), |n| u[n]);
    let cyc = g.accepting_cycle_nodes(|n| u[n], |n| icl.accepting[n]);
    let bwd = g.backward((0..icl.len()).filter(|&n| cyc[n]), |n| u[n]);
    let gset = skeleton
        .incoming
        .iter()
        .enumerate()
        .filter(|(_, p)| fwd[index[&p.via]])
        .map(|(k, _)| k)
        .collect();
    let rset = skeleton
        .outgoing
        .iter()
        .enumerate()
        .filter(|(_, p)| bwd[index[&p.via]])
        .map(|(k, _)| k)
        .collect();
    (gset, rset)
}

/// K with Γ flags: `(o, i)` is linked when the outside target of `o` reaches
/// the outside source of `i` within the universe (reflexively).
pub fn compute_reachability(
    icl: &IntersectionAutomaton,
    skeleton: &Skeleton,
    kind: SubPropertyKind,
) -> Vec<Link> {
    let u = universe(icl, &skeleton.box_id, kind);
    let g = icl.graph();
    let index = id_index(icl);
    let reach: Vec<Vec<bool>> = (0..icl.len()).map(|n| g.forward([n], |m| u[m])).collect();
    let through = |src: usize, tgt: usize, flag: &Vec<bool>| {
        (0..icl.len()).any(|a| u[a] && flag[a] && reach[src][a] && reach[a][tgt])
    };
    let mut links = Vec::new();
    for (oi, o) in skeleton.outgoing.iter().enumerate() {
        for (ii, i) in skeleton.incoming.iter().enumerate() {
            let (src, tgt) = (index[&o.via], index[&i.via]);
            if reach[src][tgt] {
                links.push(Link {
                    outgoing: oi,
                    incoming: ii,
                    model_accepting: through(src, tgt, &icl.model_accepting),
                    claim_accepting: through(src, tgt, &icl.claim_accepting),
                });
            }
        }
    }
    links
}

fn subproperty(icl: &IntersectionAutomaton, sk: &Skeleton, kind: SubPropertyKind) -> SubProperty {
    let (g, r) = compute_g_r(icl, sk, kind);
    SubProperty {
        box_id: sk.box_id.clone(),
        kind,
        inner: sk.inner.clone(),
        incoming: sk.incoming.clone(),
        outgoing: sk.outgoing.clone(),
        g,
        r,
        links: compute_reachability(icl, sk, kind),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(rename = "box")]
    pub box_id: StateId,
    pub s: SubProperty,
    pub sp: SubProperty,
    /// 𝒴: an accepting run of the cleaned product avoids the box entirely.
    #[serde(rename = "yFlag")]
    pub y_flag: bool,
    #[serde(rename = "yWitness", default, skip_serializing_if = "Option::is_none")]
    pub y_witness: Option<Witness>,
}

/// Constraints for every box of `model`; requires an unknown verdict.
pub fn compute_constraint(
    model: &Automaton,
    claim: &Automaton,
) -> Result<BTreeMap<StateId, Constraint>, Error> {
    let verdict = model_check(model, claim)?;
    if verdict.truth != Truth::Unknown {
        return Err(Error::NotUnknown(verdict.truth));
    }
    let icl = clean_intersection(&intersect(model, claim));
    let mut out = BTreeMap::new();
    for (b, sk) in extract_subproperty_skeletons(&icl, model) {
        let outside: Vec<bool> = icl.states.iter().map(|s| s.model != b).collect();
        let y_witness = icl.retain(&outside).accepting_lasso();
        out.insert(
            b.clone(),
            Constraint {
                box_id: b.clone(),
                s: subproperty(&icl, &sk, SubPropertyKind::S),
                sp: subproperty(&icl, &sk, SubPropertyKind::Sp),
                y_flag: y_witness.is_some(),
                y_witness,
            },
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortDoc {
    pub from: StateId,
    pub guard: Vec<String>,
    pub to: StateId,
    pub via: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubPropertyDoc {
    #[serde(rename = "box")]
    pub box_id: StateId,
    pub kind: SubPropertyKind,
    pub automaton: AutomatonDoc,
    pub incoming: Vec<PortDoc>,
    pub outgoing: Vec<PortDoc>,
    #[serde(rename = "G")]
    pub g: Vec<usize>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<(usize, usize)>,
    #[serde(rename = "gammaM")]
    pub gamma_m: Vec<bool>,
    #[serde(rename = "gammaA")]
    pub gamma_a: Vec<bool>,
}

impl From<SubProperty> for SubPropertyDoc {
    fn from(s: SubProperty) -> Self {
        let port = |p: &Port, incoming: bool| {
            let (from, to) = if incoming {
                (&p.host, &p.inner)
            } else {
                (&p.inner, &p.host)
            };
            PortDoc {
                from: from.clone(),
                guard: p.guard.to_tokens(),
                to: to.clone(),
                via: p.via.clone(),
            }
        };
        SubPropertyDoc {
            automaton: AutomatonDoc::from(&s.inner),
            incoming: s.incoming.iter().map(|p| port(p, true)).collect(),
            outgoing: s.outgoing.iter().map(|p| port(p, false)).collect(),
            g: s.g.iter().copied().collect(),
            r: s.r.iter().copied().collect(),
            k: s.links.iter().map(|l| (l.outgoing, l.incoming)).collect(),
            gamma_m: s.links.iter().map(|l| l.model_accepting).collect(),
            gamma_a: s.links.iter().map(|l| l.claim_accepting).collect(),
            box_id: s.box_id,
            kind: s.kind,
        }
    }
}

impl TryFrom<SubPropertyDoc> for SubProperty {
    type Error = Error;

    fn try_from(d: SubPropertyDoc) -> Result<Self, Error> {
        let port = |p: &PortDoc, incoming: bool| -> Result<Port, Error> {
            let (host, inner) = if incoming {
                (&p.from, &p.to)
            } else {
                (&p.to, &p.from)
            };
            Ok(Port {
                host: host.clone(),
                guard: Guard::from_tokens(&p.guard)?,
                inner: inner.clone(),
                via: p.via.clone(),
            })
        };
        let incoming = d
            .incoming
            .iter()
            .map(|p| port(p, true))
            .collect::<Result<Vec<_>, _>>()?;
        let outgoing = d
            .outgoing
            .iter()
            .map(|p| port(p, false))
            .collect::<Result<Vec<_>, _>>()?;
        if d.k.len() != d.gamma_m.len() || d.k.len() != d.gamma_a.len() {
            return Err(Error::Format("gammaM/gammaA must be parallel to K".into()));
        }
        let in_range = d.g.iter().all(|&i| i < incoming.len())
            && d.r.iter().all(|&o| o < outgoing.len())
            && d.k
                .iter()
                .all(|&(o, i)| o < outgoing.len() && i < incoming.len());
        if !in_range {
            return Err(Error::Format("G/R/K index out of range".into()));
        }
        Ok(SubProperty {
            inner: d.automaton.build()?,
            links: d
                .k
                .iter()
                .zip(d.gamma_m.iter().zip(&d.gamma_a))
                .map(|(&(o, i), (&m, &a))| Link {
                    outgoing: o,
                    incoming: i,
                    model_accepting: m,
                    claim_accepting: a,
                })
                .collect(),
            g: d.g.into_iter().collect(),
            r: d.r.into_iter().collect(),
            incoming,
            outgoing,
            box_id: d.box_id,
            kind: d.kind,
        })
    }
}
