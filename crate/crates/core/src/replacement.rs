//! Checking a replacement against a box constraint through the
//! sub-property × replacement product and its under/over approximations.

use std::collections::BTreeSet;

use crate::automaton::{Automaton, Guard, Kind, StateId, Transition};
use crate::constraints::{Constraint, SubProperty, SubPropertyKind};
use crate::error::Error;
use crate::product::{
    intersect_from, is_empty, IntersectionAutomaton, ProductState, Truth, Verdict,
};
use crate::refinement::Replacement;

/// A plug transition of ℰ, produced from a replacement entry and a sub-property port.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairedPort {
    /// Index of the sub-property port.
    pub port: usize,
    /// The replacement's plug transition.
    pub entry: Transition,
    pub guard: Guard,
    /// The ℰ state inside the box, before its counter: `(replacement state, 𝒫 state)`.
    pub model: StateId,
    pub claim: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPropertyProduct {
    /// ℰ: replacement inner automaton (completed for the S kind) × 𝒫.
    pub inner: IntersectionAutomaton,
    pub incoming: Vec<PairedPort>,
    pub outgoing: Vec<PairedPort>,
    /// Indices into `incoming` generated from G entries.
    pub g: BTreeSet<usize>,
    /// Indices into `outgoing` generated from R entries.
    pub r: BTreeSet<usize>,
}

fn pair_ports(
    s: &SubProperty,
    model: &Automaton,
    entries: &BTreeSet<Transition>,
    incoming: bool,
) -> Vec<PairedPort> {
    let ports = if incoming { &s.incoming } else { &s.outgoing };
    let mut out = Vec::new();
    for (k, p) in ports.iter().enumerate() {
        for e in entries {
            let (host, inside) = if incoming {
                (&e.from, &e.to)
            } else {
                (&e.to, &e.from)
            };
            if *host != p.host
                || !model.states.contains(inside)
                || !s.inner.states.contains(&p.inner)
            {
                continue;
            }
            if let Some(guard) = e.guard.conjoin(&p.guard) {
                out.push(PairedPort {
                    port: k,
                    entry: e.clone(),
                    guard,
                    model: inside.clone(),
                    claim: p.inner.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

/// Builds ℰ with its paired plug transitions. The S kind intersects the
/// completion of the replacement; the Sp kind keeps its boxes as stutterers.
pub fn intersect_subproperty_replacement(
    s: &SubProperty,
    r: &Replacement,
) -> Result<SubPropertyProduct, Error> {
    if s.box_id != r.box_id {
        return Err(Error::BoxMismatch {
            expected: s.box_id.clone(),
            found: r.box_id.clone(),
        });
    }
    let model = match s.kind {
        SubPropertyKind::S => r.inner.completion(),
        SubPropertyKind::Sp => r.inner.clone(),
    };
    let incoming = pair_ports(s, &model, &r.incoming, true);
    let outgoing = pair_ports(s, &model, &r.outgoing, false);
    let seeds: Vec<ProductState> = incoming
        .iter()
        .flat_map(|p| (0..3).map(move |y| ProductState::new(p.model.clone(), p.claim.clone(), y)))
        .collect();
    let inner = intersect_from(&model, &s.inner, &seeds);
    let g = (0..incoming.len())
        .filter(|&k| s.g.contains(&incoming[k].port))
        .collect();
    let r_set = (0..outgoing.len())
        .filter(|&k| s.r.contains(&outgoing[k].port))
        .collect();
    Ok(SubPropertyProduct {
        inner,
        incoming,
        outgoing,
        g,
        r: r_set,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ApproxKind {
    Under,
    Over,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxAutomaton {
    pub kind: ApproxKind,
    pub automaton: Automaton,
    pub g_state: StateId,
    pub r_state: StateId,
    /// ε edges added for K, one per (link, replacement pair, source counter).
    pub k_edges: usize,
    /// Distinct (link, replacement outgoing, replacement incoming) triples behind the ε edges.
    pub k_cores: usize,
}

pub const G_STATE: &str = "g";
pub const R_STATE: &str = "r";

/// Counter of the ℰ state entered by a K edge, first matching rule wins.
/// `x` is the source counter; `gamma_m`/`gamma_a` are the link's Γ flags;
/// `inner_accepting` is the entered replacement state's acceptance and
/// `sub_accepting` the entered 𝒫 state's.
#[allow(clippy::if_same_then_else)]
pub fn k_counter(
    x: u8,
    gamma_m: bool,
    gamma_a: bool,
    inner_accepting: bool,
    sub_accepting: bool,
) -> u8 {
    if gamma_m && gamma_a {
        2
    } else if x == 1 && (gamma_a || sub_accepting) {
        2
    } else if x == 0 && gamma_m && sub_accepting {
        2
    } else if x == 0 && (gamma_m || inner_accepting) {
        1
    } else if x == 2 {
        0
    } else {
        x
    }
}

/// Under (`S` sub-property, completed replacement) or over (`Sp`) approximation.
pub fn build_approx(
    s: &SubProperty,
    r: &Replacement,
    kind: ApproxKind,
) -> Result<ApproxAutomaton, Error> {
    let expected = match kind {
        ApproxKind::Under => SubPropertyKind::S,
        ApproxKind::Over => SubPropertyKind::Sp,
    };
    if s.kind != expected {
        return Err(Error::KindMismatch);
    }
    let e = intersect_subproperty_replacement(s, r)?;
    let model = match kind {
        ApproxKind::Under => r.inner.completion(),
        ApproxKind::Over => r.inner.clone(),
    };
    let mut a = e.inner.underlying();
    a.kind = Kind::Ba;
    a.add_state(G_STATE, false, true, false);
    a.add_state(R_STATE, false, false, true);
    a.add_transition(R_STATE, Guard::stutter(), R_STATE);
    let state = |m: &str, c: &str, y: u8| {
        let ps = ProductState::new(m, c, y);
        e.inner.index_of(&ps).map(|_| ps.id())
    };
    for &k in &e.g {
        let p = &e.incoming[k];
        if let Some(t) = state(&p.model, &p.claim, 0) {
            a.add_transition(G_STATE, p.guard.clone(), t);
        }
    }
    for &k in &e.r {
        let p = &e.outgoing[k];
        for y in 0..3 {
            if let Some(src) = state(&p.model, &p.claim, y) {
                a.add_transition(src, p.guard.clone(), R_STATE);
            }
        }
    }
    let mut k_edges = 0;
    let mut cores = BTreeSet::new();
    for (li, link) in s.links.iter().enumerate() {
        for o in e.outgoing.iter().filter(|p| p.port == link.outgoing) {
            for i in e.incoming.iter().filter(|p| p.port == link.incoming) {
                for x in 0..3 {
                    let Some(src) = state(&o.model, &o.claim, x) else {
                        continue;
                    };
                    let y = k_counter(
                        x,
                        link.model_accepting,
                        link.claim_accepting,
                        model.accepting.contains(&i.model),
                        s.inner.accepting.contains(&i.claim),
                    );
                    let Some(tgt) = state(&i.model, &i.claim, y) else {
                        continue;
                    };
                    if a.transitions
                        .insert(Transition::new(src, Guard::epsilon(), tgt))
                    {
                        k_edges += 1;
                        cores.insert((li, o.entry.clone(), i.entry.clone()));
                    }
                }
            }
        }
    }
    a.propositions.insert(crate::automaton::EPSILON.to_string());
    a.propositions.insert(crate::automaton::STUTTER.to_string());
    Ok(ApproxAutomaton {
        kind,
        automaton: a,
        g_state: G_STATE.to_string(),
        r_state: R_STATE.to_string(),
        k_edges,
        k_cores: cores.len(),
    })
}

/// F when the under approximation is non-empty; T when additionally the over
/// approximation is empty and no violating run avoids the box; ? otherwise.
pub fn check_replacement(c: &Constraint, r: &Replacement) -> Result<Verdict, Error> {
    if c.box_id != r.box_id {
        return Err(Error::BoxMismatch {
            expected: c.box_id.clone(),
            found: r.box_id.clone(),
        });
    }
    let under = build_approx(&c.s, r, ApproxKind::Under)?;
    if let Some(w) = is_empty(&under.automaton) {
        return Ok(Verdict {
            truth: Truth::F,
            witness: Some(w),
        });
    }
    let over = build_approx(&c.sp, r, ApproxKind::Over)?;
    if let Some(w) = is_empty(&over.automaton) {
        return Ok(Verdict {
            truth: Truth::Unknown,
            witness: Some(w),
        });
    }
    if c.y_flag {
        return Ok(Verdict {
            truth: Truth::Unknown,
            witness: c.y_witness.clone(),
        });
    }
    Ok(Verdict::holds())
}
