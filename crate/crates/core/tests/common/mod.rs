//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use iba_core::automaton::Literal;
use iba_core::{Automaton, Guard, Kind, Ltl, Replacement, Transition};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const PROPS: [&str; 2] = ["a", "b"];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn prop_set(props: &[&str]) -> BTreeSet<String> {
    props.iter().map(|p| p.to_string()).collect()
}

/// Each proposition is positive, negative or absent with equal odds.
pub fn random_guard(rng: &mut StdRng, props: &[&str]) -> Guard {
    Guard::from_literals(props.iter().filter_map(|p| match rng.gen_range(0..3) {
        0 => Some(Literal {
            prop: p.to_string(),
            positive: true,
        }),
        1 => Some(Literal {
            prop: p.to_string(),
            positive: false,
        }),
        _ => None,
    }))
}

fn add_random_transitions(
    rng: &mut StdRng,
    a: &mut Automaton,
    ids: &[String],
    props: &[&str],
    density: f64,
) {
    for from in ids {
        for to in ids {
            if rng.gen_bool(density) {
                a.add_transition(from.clone(), random_guard(rng, props), to.clone());
            }
        }
    }
}

/// IBA with 1..=`max_states` states `m0..`; `m0` is initial.
pub fn random_iba(rng: &mut StdRng, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let ids: Vec<String> = (0..n).map(|k| format!("m{k}")).collect();
    let mut a = Automaton::new(Kind::Iba);
    a.propositions = prop_set(&PROPS);
    for (k, id) in ids.iter().enumerate() {
        a.add_state(
            id.clone(),
            rng.gen_bool(0.35),
            k == 0 || rng.gen_bool(0.1),
            rng.gen_bool(0.4),
        );
    }
    add_random_transitions(rng, &mut a, &ids, &PROPS, 0.4);
    a
}

/// IBA with at least one box.
pub fn random_iba_with_box(rng: &mut StdRng, max_states: usize) -> Automaton {
    loop {
        let a = random_iba(rng, max_states);
        if !a.boxes.is_empty() {
            return a;
        }
    }
}

/// BA with 1..=`max_states` states `c0..`; `c0` is initial.
pub fn random_claim(rng: &mut StdRng, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let ids: Vec<String> = (0..n).map(|k| format!("c{k}")).collect();
    let mut a = Automaton::new(Kind::Ba);
    a.propositions = prop_set(&PROPS);
    for (k, id) in ids.iter().enumerate() {
        a.add_state(id.clone(), false, k == 0, rng.gen_bool(0.5));
    }
    add_random_transitions(rng, &mut a, &ids, &PROPS, 0.5);
    a
}

/// A valid replacement of `box_id` with 1..=`max_states` states `r0..`.
pub fn random_replacement(
    rng: &mut StdRng,
    host: &Automaton,
    box_id: &str,
    max_states: usize,
) -> Replacement {
    let n = rng.gen_range(1..=max_states);
    let ids: Vec<String> = (0..n).map(|k| format!("r{k}")).collect();
    let mut inner = Automaton::new(Kind::Iba);
    inner.propositions = host.propositions.clone();
    let may_init = host.initial.contains(box_id);
    let may_accept = host.accepting.contains(box_id);
    for id in &ids {
        inner.add_state(
            id.clone(),
            rng.gen_bool(0.25),
            may_init && rng.gen_bool(0.5),
            may_accept && rng.gen_bool(0.5),
        );
    }
    let props: Vec<&str> = PROPS.to_vec();
    add_random_transitions(rng, &mut inner, &ids, &props, 0.35);
    let mut incoming = BTreeSet::new();
    let mut outgoing = BTreeSet::new();
    for t in &host.transitions {
        let pick = |rng: &mut StdRng| ids.choose(rng).unwrap().clone();
        match (t.from == box_id, t.to == box_id) {
            (false, true) => {
                for _ in 0..rng.gen_range(1..=2) {
                    incoming.insert(Transition::new(t.from.clone(), t.guard.clone(), pick(rng)));
                }
            }
            (true, false) => {
                for _ in 0..rng.gen_range(1..=2) {
                    outgoing.insert(Transition::new(pick(rng), t.guard.clone(), t.to.clone()));
                }
            }
            (true, true) => {
                let (from, to) = (pick(rng), pick(rng));
                inner.add_transition(from, t.guard.clone(), to);
            }
            (false, false) => {}
        }
    }
    Replacement {
        box_id: box_id.to_string(),
        inner,
        incoming,
        outgoing,
    }
}

/// Random formula of operator depth at most `depth` over `props`.
pub fn random_ltl(rng: &mut StdRng, props: &[&str], depth: usize) -> Ltl {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Ltl::True,
            1 => Ltl::False,
            _ => Ltl::prop(*props.choose(rng).unwrap()),
        };
    }
    let sub = |rng: &mut StdRng| random_ltl(rng, props, depth - 1);
    match rng.gen_range(0..9) {
        0 => Ltl::not(sub(rng)),
        1 => Ltl::and(sub(rng), sub(rng)),
        2 => Ltl::or(sub(rng), sub(rng)),
        3 => Ltl::implies(sub(rng), sub(rng)),
        4 => Ltl::next(sub(rng)),
        5 => Ltl::until(sub(rng), sub(rng)),
        6 => Ltl::release(sub(rng), sub(rng)),
        7 => Ltl::finally(sub(rng)),
        _ => Ltl::globally(sub(rng)),
    }
}
