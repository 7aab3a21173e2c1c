//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use iba_core::constraints::clean_intersection;
use iba_core::oracle::{characters, words, Classifier, LoopSets, LtlEvaluator};
use iba_core::replacement::{build_approx, ApproxKind, R_STATE};
use iba_core::{
    accepts, check_ltl, check_refinement, check_replacement, classify_word, compose,
    compute_constraint, eval_ltl, intersect, load_fixture, ltl_to_ba, model_check, parse_ltl,
    Automaton, Character, LassoWord, RefinementRelation, RunClassification, SubPropertyKind, Truth,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn chars(names: &[&str]) -> Vec<Character> {
    names.iter().map(|p| Character::new([*p])).collect()
}

const SEND_PROPERTY: &str = "G(send -> F success)";

fn sending_verdict() -> Outcome {
    let f = load_fixture("m_send").map_err(|e| e.to_string())?;
    let m = f.automaton("model");
    let phi = parse_ltl(SEND_PROPERTY, &m.propositions).map_err(|e| e.to_string())?;
    let by_ltl = check_ltl(m, &phi).map_err(|e| e.to_string())?.truth;
    let by_claim = model_check(m, f.automaton("claim"))
        .map_err(|e| e.to_string())?
        .truth;
    ensure(by_ltl == Truth::Unknown, format!("ltl verdict {by_ltl}"))?;
    ensure(
        by_claim == Truth::Unknown,
        format!("claim verdict {by_claim}"),
    )?;
    let definite = intersect(&m.completion(), f.automaton("claim"));
    ensure(
        definite.is_empty(),
        "completion x claim has an accepting lasso",
    )?;
    Ok(format!(
        "verdict {by_ltl}; completion product of {} states is empty",
        definite.len()
    ))
}

fn counterexample() -> Outcome {
    let f = load_fixture("m_send").map_err(|e| e.to_string())?;
    let m = f.automaton("model");
    let claim = f.automaton("claim");
    let phi = parse_ltl(SEND_PROPERTY, &m.propositions).map_err(|e| e.to_string())?;
    let w = LassoWord::new(chars(&["start", "send", "fail", "fail"]), chars(&["abort"]));
    let product = intersect(m, claim).underlying();
    ensure(
        accepts(&product, &w),
        "word is not accepted by the model x claim product",
    )?;
    ensure(
        classify_word(m, &w) == RunClassification::Possible,
        "oracle does not classify the word as possible",
    )?;
    ensure(!eval_ltl(&phi, &w), "word satisfies the property")?;
    let witness = model_check(m, claim)
        .map_err(|e| e.to_string())?
        .witness
        .ok_or("no witness")?;
    let same = if witness.word.same_word(&w) {
        "equal to"
    } else {
        "distinct from"
    };
    Ok(format!(
        "{w} possible, violates the property; reported witness {same} it"
    ))
}

/// Product languages compared on every lasso over ∅ and the singletons.
fn cleaning() -> Outcome {
    let f = load_fixture("m_send").map_err(|e| e.to_string())?;
    let m = f.automaton("model");
    let icl = intersect(m, f.automaton("claim"));
    let cleaned = clean_intersection(&icl);
    let removed = icl.len() - cleaned.len();
    ensure(removed == 3, format!("removed {removed} states"))?;
    let mut alphabet = vec![Character::empty()];
    alphabet.extend(m.propositions.iter().map(|p| Character::new([p.as_str()])));
    let (before, after) = (icl.underlying(), cleaned.underlying());
    let (cb, ca) = (Classifier::new(&before), Classifier::new(&after));
    let stems: Vec<_> = words(&alphabet, 0, 4)
        .into_iter()
        .map(|s| (cb.stem_sets(&s), ca.stem_sets(&s), s))
        .collect();
    let mut compared = 0usize;
    let mut accepted = 0usize;
    for l in words(&alphabet, 1, 3) {
        let (lb, la) = (cb.loop_sets(&l), ca.loop_sets(&l));
        for (sb, sa, s) in &stems {
            let x = Classifier::combine(sb, &lb);
            let y = Classifier::combine(sa, &la);
            if x != y {
                return Err(format!(
                    "languages differ on {}",
                    LassoWord::new(s.clone(), l.clone())
                ));
            }
            accepted += usize::from(x != RunClassification::Rejected);
            compared += 1;
        }
    }
    Ok(format!(
        "{} -> {} states; {compared} lassos agree ({accepted} accepted)",
        icl.len(),
        cleaned.len()
    ))
}

fn constraint_shape() -> Outcome {
    let f = load_fixture("m_send").map_err(|e| e.to_string())?;
    let cs = compute_constraint(f.automaton("model"), f.automaton("claim"))
        .map_err(|e| e.to_string())?;
    for b in ["send1", "send2"] {
        let c = cs.get(b).ok_or(format!("no constraint for {b}"))?;
        ensure(
            c.s.links.is_empty() && c.sp.links.is_empty(),
            format!("K of {b} is not empty"),
        )?;
    }
    let sp = &cs["send1"].sp;
    ensure(sp.kind == SubPropertyKind::Sp, "wrong kind")?;
    ensure(
        sp.incoming.len() == 1,
        format!("send1 has {} incoming entries", sp.incoming.len()),
    )?;
    ensure(sp.g.contains(&0), "incoming entry not in G")?;
    ensure(
        sp.outgoing.len() == 2,
        format!("send1 has {} outgoing entries", sp.outgoing.len()),
    )?;
    ensure(
        (0..2).all(|k| sp.r.contains(&k)),
        "an outgoing entry is not in R",
    )?;
    Ok("K empty for send1 and send2; send1 incoming in G, both outgoing in R".into())
}

fn replacement_verdicts() -> Outcome {
    let acc = load_fixture("m_send_acc").map_err(|e| e.to_string())?;
    let cs = compute_constraint(acc.automaton("model"), acc.automaton("claim"))
        .map_err(|e| e.to_string())?;
    let send1 = &cs["send1"];
    let violating = load_fixture("r_violating").map_err(|e| e.to_string())?;
    let cooperating = load_fixture("r_cooperating").map_err(|e| e.to_string())?;
    let v1 = check_replacement(send1, violating.replacement("replacement"))
        .map_err(|e| e.to_string())?
        .truth;
    let v2 = check_replacement(send1, cooperating.replacement("replacement"))
        .map_err(|e| e.to_string())?
        .truth;
    ensure(v1 == Truth::F, format!("violating replacement gives {v1}"))?;
    ensure(
        v2 == Truth::Unknown,
        format!("cooperating replacement gives {v2}"),
    )?;
    let plain = load_fixture("m_send").map_err(|e| e.to_string())?;
    let cs = compute_constraint(plain.automaton("model"), plain.automaton("claim"))
        .map_err(|e| e.to_string())?;
    let r = load_fixture("r_send1").map_err(|e| e.to_string())?;
    let under = build_approx(
        &cs["send1"].s,
        r.replacement("replacement"),
        ApproxKind::Under,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        !reachable(&under.automaton, R_STATE),
        "r is reachable in the under approximation",
    )?;
    ensure(
        iba_core::is_empty(&under.automaton).is_none(),
        "under approximation language is not empty",
    )?;
    Ok(format!(
        "violating {v1}, cooperating {v2}; r_send1 under approximation empty with r unreachable"
    ))
}

fn reachable(a: &Automaton, target: &str) -> bool {
    let mut seen: Vec<&str> = a.initial.iter().map(String::as_str).collect();
    let mut next = 0;
    while next < seen.len() {
        let s = seen[next];
        next += 1;
        for t in a.outgoing(s) {
            if !seen.contains(&t.to.as_str()) {
                seen.push(&t.to);
            }
        }
    }
    seen.contains(&target)
}

const INSTANCES: usize = 500;

fn differential() -> Outcome {
    let mut rng = common::rng(6);
    let (mut checked, mut tries) = (0usize, 0usize);
    let mut tally: HashMap<Truth, usize> = HashMap::new();
    while checked < INSTANCES {
        tries += 1;
        ensure(
            tries < 100_000,
            format!("only {checked} unknown instances generated"),
        )?;
        let m = common::random_iba_with_box(&mut rng, 5);
        let claim = common::random_claim(&mut rng, 3);
        if model_check(&m, &claim).map_err(|e| e.to_string())?.truth != Truth::Unknown {
            continue;
        }
        for (b, c) in compute_constraint(&m, &claim).map_err(|e| e.to_string())? {
            let r = common::random_replacement(&mut rng, &m, &b, 4);
            let (n, _) = compose(&m, &r).map_err(|e| e.to_string())?;
            let expected = model_check(&n, &claim).map_err(|e| e.to_string())?.truth;
            let got = check_replacement(&c, &r).map_err(|e| e.to_string())?.truth;
            ensure(got == expected, format!("box {b}: check_replacement {got}, composition {expected}\n{m:?}\n{claim:?}\n{r:?}"))?;
            *tally.entry(expected).or_default() += 1;
            checked += 1;
        }
    }
    let count = |t| tally.get(&t).copied().unwrap_or(0);
    Ok(format!(
        "{checked} instances agree (T {}, F {}, ? {})",
        count(Truth::T),
        count(Truth::F),
        count(Truth::Unknown)
    ))
}

fn preservation() -> Outcome {
    let mut rng = common::rng(7);
    for k in 0..INSTANCES {
        let m = common::random_iba(&mut rng, 5);
        let report = check_refinement(&m, &m, &RefinementRelation::identity(&m.states));
        ensure(
            report.holds,
            format!("reflexivity fails on instance {k}: {:?}", report.violated),
        )?;
    }
    for k in 0..INSTANCES {
        let m = common::random_iba_with_box(&mut rng, 5);
        let b = m.boxes.iter().next().unwrap().clone();
        let r = common::random_replacement(&mut rng, &m, &b, 4);
        let (n, rel) = compose(&m, &r).map_err(|e| e.to_string())?;
        let report = check_refinement(&m, &n, &rel);
        ensure(
            report.holds,
            format!(
                "composition is not a refinement on instance {k}: {:?}",
                report.violated
            ),
        )?;
    }
    let (mut kept_t, mut kept_f, mut tries) = (0usize, 0usize, 0usize);
    while kept_t + kept_f < INSTANCES {
        tries += 1;
        ensure(tries < 100_000, "too few definite instances")?;
        let m = common::random_iba_with_box(&mut rng, 5);
        let claim = common::random_claim(&mut rng, 3);
        let before = model_check(&m, &claim).map_err(|e| e.to_string())?.truth;
        if before == Truth::Unknown {
            continue;
        }
        let b = m.boxes.iter().next().unwrap().clone();
        let r = common::random_replacement(&mut rng, &m, &b, 4);
        let (n, _) = compose(&m, &r).map_err(|e| e.to_string())?;
        let after = model_check(&n, &claim).map_err(|e| e.to_string())?.truth;
        ensure(after == before, format!("verdict {before} became {after}"))?;
        match before {
            Truth::T => kept_t += 1,
            _ => kept_f += 1,
        }
    }
    Ok(format!("{INSTANCES} reflexive, {INSTANCES} compositions refine; verdicts kept (T {kept_t}, F {kept_f})"))
}

fn structural_bounds() -> Outcome {
    let mut rng = common::rng(8);
    let (mut products, mut constraints, mut approximations) = (0usize, 0usize, 0usize);
    while products < INSTANCES {
        let m = common::random_iba_with_box(&mut rng, 5);
        let claim = common::random_claim(&mut rng, 3);
        let bound = 3 * m.states.len() * claim.states.len();
        for i in [intersect(&m, &claim), intersect(&m.completion(), &claim)] {
            ensure(
                i.len() <= bound,
                format!("product has {} states, bound {bound}", i.len()),
            )?;
        }
        products += 1;
        if model_check(&m, &claim).map_err(|e| e.to_string())?.truth != Truth::Unknown {
            continue;
        }
        for (b, c) in compute_constraint(&m, &claim).map_err(|e| e.to_string())? {
            for sp in [&c.s, &c.sp] {
                let cap = sp.outgoing.len() * sp.incoming.len();
                ensure(
                    sp.links.len() <= cap,
                    format!("|K| = {} exceeds {cap}", sp.links.len()),
                )?;
                constraints += 1;
            }
            let r = common::random_replacement(&mut rng, &m, &b, 4);
            for (sp, kind) in [(&c.s, ApproxKind::Under), (&c.sp, ApproxKind::Over)] {
                let a = build_approx(sp, &r, kind).map_err(|e| e.to_string())?;
                let cap = sp.links.len() * r.outgoing.len() * r.incoming.len();
                ensure(
                    a.k_cores <= cap,
                    format!("{} K cores exceed {cap}", a.k_cores),
                )?;
                ensure(
                    a.k_edges <= 3 * a.k_cores,
                    format!("{} K edges for {} cores", a.k_edges, a.k_cores),
                )?;
                approximations += 1;
            }
        }
    }
    Ok(format!("{products} products, {constraints} sub-properties, {approximations} approximations within bounds"))
}

fn oracle_coherence() -> Outcome {
    let props = common::prop_set(&["a", "b", "c"]);
    let alphabet = characters(&props);
    let stems = words(&alphabet, 0, 3);
    let loops = words(&alphabet, 1, 3);
    let mut rng = common::rng(9);
    let mut lassos = 0usize;
    for k in 0..200 {
        let f = common::random_ltl(&mut rng, &["a", "b", "c"], 4);
        let ba = ltl_to_ba(&f);
        let cls = Classifier::new(&ba);
        let ev = LtlEvaluator::new(&f);
        let stem_sets: Vec<_> = stems.iter().map(|s| cls.stem_sets(s)).collect();
        let mut groups: HashMap<(LoopSets, Vec<bool>), usize> = HashMap::new();
        for (li, l) in loops.iter().enumerate() {
            groups
                .entry((cls.loop_sets(l), ev.loop_values(l).swap_remove(0)))
                .or_insert(li);
        }
        for ((ls, start), li) in &groups {
            for (s, ss) in stems.iter().zip(&stem_sets) {
                let by_ba = Classifier::combine(ss, ls) == RunClassification::Definite;
                if by_ba != ev.eval_with_loop(s, start) {
                    let w = LassoWord::new(s.clone(), loops[*li].clone());
                    return Err(format!(
                        "formula {k} {f}: automaton {by_ba}, semantics {} on {w}",
                        eval_ltl(&f, &w)
                    ));
                }
            }
        }
        lassos += stems.len() * loops.len();
    }
    let pairs = words(&characters(&common::prop_set(&common::PROPS)), 0, 3);
    let cycles = words(&characters(&common::prop_set(&common::PROPS)), 1, 3);
    let mut words_checked = 0usize;
    for _ in 0..100 {
        let m = common::random_iba_with_box(&mut rng, 4);
        let completion = m.completion();
        for l in &cycles {
            for s in &pairs {
                let w = LassoWord::new(s.clone(), l.clone());
                let definite = classify_word(&m, &w) == RunClassification::Definite;
                ensure(
                    accepts(&completion, &w) == definite,
                    format!("completion disagrees on {w}\n{m:?}"),
                )?;
                words_checked += 1;
            }
        }
    }
    Ok(format!(
        "200 formulae on {lassos} lassos; 100 completions on {words_checked} words"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("sending-message verdict", sending_verdict),
        ("counterexample reproduction", counterexample),
        ("cleaning", cleaning),
        ("constraint shape", constraint_shape),
        ("replacement verdicts", replacement_verdicts),
        ("differential correctness", differential),
        ("preservation properties", preservation),
        ("structural bounds", structural_bounds),
        ("oracle coherence", oracle_coherence),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] {} {name}: {detail} ({:.2}s)",
            k + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
