//! Brute-force semantics on lasso words, kept independent of the product and
//! graph code: word classification, LTL evaluation, lasso enumeration,
//! bounded verdicts and run abstractions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, Character, Guard, LassoWord, StateId};
use crate::error::Error;
use crate::ltl::Ltl;
use crate::product::{IntersectionAutomaton, Run, Truth, Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunClassification {
    Definite,
    Possible,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// States reachable after a stem: through regular states only, and through any state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StemSets {
    pub definite: Bits,
    pub possible: Bits,
}

/// States from which `loop^ω` is accepted: by regular states only, and at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LoopSets {
    pub definite: Bits,
    pub possible: Bits,
}

/// Word classifier for one automaton, factored into stem and loop parts so
/// callers enumerating many lassos can reuse them.
pub struct Classifier<'a> {
    n: usize,
    regular: Vec<bool>,
    accepting: Vec<bool>,
    initial: Vec<usize>,
    out: Vec<Vec<(&'a Guard, usize)>>,
}

impl<'a> Classifier<'a> {
    pub fn new(m: &'a Automaton) -> Self {
        let ids: Vec<&StateId> = m.states.iter().collect();
        let idx: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut out = vec![Vec::new(); ids.len()];
        for t in &m.transitions {
            out[idx[t.from.as_str()]].push((&t.guard, idx[t.to.as_str()]));
        }
        Classifier {
            n: ids.len(),
            regular: ids.iter().map(|s| !m.boxes.contains(*s)).collect(),
            accepting: ids.iter().map(|s| m.accepting.contains(*s)).collect(),
            initial: m.initial.iter().map(|s| idx[s.as_str()]).collect(),
            out,
        }
    }

    /// Successors of `q` on `c`, restricted to regular states when `definite`,
    /// with box stuttering otherwise.
    fn step(&self, q: usize, c: &Character, definite: bool, mut f: impl FnMut(usize)) {
        if definite && !self.regular[q] {
            return;
        }
        for &(g, r) in &self.out[q] {
            if g.matches(c) && (!definite || self.regular[r]) {
                f(r);
            }
        }
        if !definite && !self.regular[q] {
            f(q);
        }
    }

    pub fn stem_sets(&self, stem: &[Character]) -> StemSets {
        let run = |definite: bool| {
            let mut cur: Vec<bool> = vec![false; self.n];
            for &q in &self.initial {
                if !definite || self.regular[q] {
                    cur[q] = true;
                }
            }
            for c in stem {
                let mut next = vec![false; self.n];
                for q in (0..self.n).filter(|&q| cur[q]) {
                    self.step(q, c, definite, |r| next[r] = true);
                }
                cur = next;
            }
            let mut bits = Bits::new(self.n);
            for q in (0..self.n).filter(|&q| cur[q]) {
                bits.set(q);
            }
            bits
        };
        StemSets {
            definite: run(true),
            possible: run(false),
        }
    }

    pub fn loop_sets(&self, cycle: &[Character]) -> LoopSets {
        LoopSets {
            definite: self.good_states(cycle, true),
            possible: self.good_states(cycle, false),
        }
    }

    /// States `q` such that node `(q, 0)` of the state × loop-position graph
    /// reaches an accepting node lying on a cycle.
    fn good_states(&self, cycle: &[Character], definite: bool) -> Bits {
        let l = cycle.len();
        let nodes = self.n * l;
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        for q in 0..self.n {
            for (k, c) in cycle.iter().enumerate() {
                let k2 = (k + 1) % l;
                self.step(q, c, definite, |r| succ[q * l + k].push(r * l + k2));
            }
        }
        let comp = kosaraju(&succ);
        let mut size = vec![0usize; nodes];
        for &c in &comp {
            size[c] += 1;
        }
        let mut accepting_comp = vec![false; nodes];
        for v in 0..nodes {
            let on_cycle = size[comp[v]] > 1 || succ[v].contains(&v);
            if on_cycle && self.accepting[v / l] {
                accepting_comp[comp[v]] = true;
            }
        }
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        for (v, ss) in succ.iter().enumerate() {
            for &w in ss {
                pred[w].push(v);
            }
        }
        let mut good = vec![false; nodes];
        let mut stack: Vec<usize> = (0..nodes).filter(|&v| accepting_comp[comp[v]]).collect();
        for &v in &stack {
            good[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &u in &pred[v] {
                if !good[u] {
                    good[u] = true;
                    stack.push(u);
                }
            }
        }
        let mut bits = Bits::new(self.n);
        for q in (0..self.n).filter(|&q| good[q * l]) {
            bits.set(q);
        }
        bits
    }

    pub fn combine(stem: &StemSets, lp: &LoopSets) -> RunClassification {
        if stem.definite.intersects(&lp.definite) {
            RunClassification::Definite
        } else if stem.possible.intersects(&lp.possible) {
            RunClassification::Possible
        } else {
            RunClassification::Rejected
        }
    }

    pub fn classify(&self, w: &LassoWord) -> RunClassification {
        Self::combine(&self.stem_sets(&w.stem), &self.loop_sets(&w.cycle))
    }
}

/// Component id per node (Kosaraju, iterative).
fn kosaraju(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, ss) in succ.iter().enumerate() {
        for &w in ss {
            pred[w].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &pred[v] {
                if comp[u] == usize::MAX {
                    comp[u] = next;
                    stack.push(u);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Definite when an accepting run uses regular states only, possible when an
/// accepting run exists at all (boxes consume any character by stuttering).
pub fn classify_word(m: &Automaton, w: &LassoWord) -> RunClassification {
    Classifier::new(m).classify(w)
}

#[derive(Debug, Clone)]
enum Node {
    True,
    False,
    Prop(String),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
    Finally(usize),
    Globally(usize),
}

/// LTL evaluation on lasso words. Subformula values at the loop start
/// determine the value on any stem, which callers can exploit.
pub struct LtlEvaluator {
    nodes: Vec<Node>,
}

impl LtlEvaluator {
    pub fn new(f: &Ltl) -> Self {
        let subs = f.subformulae();
        let index = |g: &Ltl| subs.iter().position(|s| *s == g).expect("subformula");
        let nodes = subs
            .iter()
            .map(|g| match g {
                Ltl::True => Node::True,
                Ltl::False => Node::False,
                Ltl::Prop(p) => Node::Prop(p.clone()),
                Ltl::Not(a) => Node::Not(index(a)),
                Ltl::And(a, b) => Node::And(index(a), index(b)),
                Ltl::Or(a, b) => Node::Or(index(a), index(b)),
                Ltl::Implies(a, b) => Node::Implies(index(a), index(b)),
                Ltl::Next(a) => Node::Next(index(a)),
                Ltl::Until(a, b) => Node::Until(index(a), index(b)),
                Ltl::Release(a, b) => Node::Release(index(a), index(b)),
                Ltl::Finally(a) => Node::Finally(index(a)),
                Ltl::Globally(a) => Node::Globally(index(a)),
            })
            .collect();
        LtlEvaluator { nodes }
    }

    /// Value of a non-fixpoint node at one position given the current and next values.
    fn local(&self, j: usize, c: &Character, here: &[bool], next: &[bool]) -> bool {
        match &self.nodes[j] {
            Node::True => true,
            Node::False => false,
            Node::Prop(p) => c.contains(p),
            Node::Not(a) => !here[*a],
            Node::And(a, b) => here[*a] && here[*b],
            Node::Or(a, b) => here[*a] || here[*b],
            Node::Implies(a, b) => !here[*a] || here[*b],
            Node::Next(a) => next[*a],
            Node::Until(a, b) => here[*b] || (here[*a] && next[j]),
            Node::Release(a, b) => here[*b] && (here[*a] || next[j]),
            Node::Finally(a) => here[*a] || next[j],
            Node::Globally(a) => here[*a] && next[j],
        }
    }

    fn greatest(&self, j: usize) -> bool {
        matches!(self.nodes[j], Node::Release(..) | Node::Globally(_))
    }

    /// Values of every subformula at each loop position.
    pub fn loop_values(&self, cycle: &[Character]) -> Vec<Vec<bool>> {
        let l = cycle.len();
        let k = self.nodes.len();
        let mut val = vec![vec![false; k]; l];
        for j in 0..k {
            let temporal = matches!(
                self.nodes[j],
                Node::Until(..) | Node::Release(..) | Node::Finally(_) | Node::Globally(_)
            );
            if temporal {
                let init = self.greatest(j);
                for v in val.iter_mut() {
                    v[j] = init;
                }
                // Two backward sweeps around the loop reach the fixpoint.
                for step in 0..2 * l {
                    let p = l - 1 - (step % l);
                    let next = val[(p + 1) % l].clone();
                    let b = self.local(j, &cycle[p], &val[p], &next);
                    val[p][j] = b;
                }
            } else {
                for p in 0..l {
                    let next = val[(p + 1) % l].clone();
                    let b = self.local(j, &cycle[p], &val[p], &next);
                    val[p][j] = b;
                }
            }
        }
        val
    }

    /// Value of the whole formula at position 0 of `stem . loop^ω`, given the
    /// subformula values at the loop start.
    pub fn eval_with_loop(&self, stem: &[Character], loop_start: &[bool]) -> bool {
        let k = self.nodes.len();
        let mut next = loop_start.to_vec();
        for c in stem.iter().rev() {
            let mut here = vec![false; k];
            for j in 0..k {
                here[j] = self.local(j, c, &here, &next);
            }
            next = here;
        }
        next[k - 1]
    }

    pub fn eval(&self, w: &LassoWord) -> bool {
        let lv = self.loop_values(&w.cycle);
        self.eval_with_loop(&w.stem, &lv[0])
    }
}

/// `w ⊨ f` under standard LTL semantics.
pub fn eval_ltl(f: &Ltl, w: &LassoWord) -> bool {
    LtlEvaluator::new(f).eval(w)
}

/// All 2^|props| characters over `props`, ∅ first, ordered by bitmask.
pub fn characters(props: &BTreeSet<String>) -> Vec<Character> {
    let ps: Vec<&String> = props.iter().collect();
    (0..1usize << ps.len())
        .map(|mask| {
            Character::new(
                (0..ps.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| ps[i].clone()),
            )
        })
        .collect()
}

/// Finite words over `alphabet` with length in `min..=max`, shortest first, lexicographic.
pub fn words(alphabet: &[Character], min: usize, max: usize) -> Vec<Vec<Character>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Character>> = vec![Vec::new()];
    for len in 0..=max {
        if len >= min {
            out.extend(layer.iter().cloned());
        }
        if len == max || alphabet.is_empty() {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |c| {
                    let mut v = w.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// All lassos over `alphabet` with stem ≤ `max_stem` and loop in `1..=max_loop`.
/// Stems vary slowest; both parts follow [`words`] order.
pub fn enumerate_lassos_over(
    alphabet: &[Character],
    max_stem: usize,
    max_loop: usize,
) -> impl Iterator<Item = LassoWord> {
    let stems = words(alphabet, 0, max_stem);
    let loops = words(alphabet, 1, max_loop);
    stems.into_iter().flat_map(move |s| {
        loops
            .clone()
            .into_iter()
            .map(move |l| LassoWord::new(s.clone(), l))
    })
}

/// All lassos over the characters of `props`.
pub fn enumerate_lassos(
    props: &BTreeSet<String>,
    max_stem: usize,
    max_loop: usize,
) -> impl Iterator<Item = LassoWord> {
    enumerate_lassos_over(&characters(props), max_stem, max_loop)
}

/// Character universe for bounded verdicts: every character over the model
/// and formula propositions when there are at most four, otherwise ∅, the
/// minimal character of each model guard and each formula singleton.
pub fn verdict_alphabet(m: &Automaton, f: &Ltl) -> Vec<Character> {
    let mut props = m.propositions.clone();
    props.extend(f.propositions());
    if props.len() <= 4 {
        return characters(&props);
    }
    let mut set: BTreeSet<Character> = BTreeSet::new();
    set.insert(Character::empty());
    for t in &m.transitions {
        set.insert(t.guard.witness());
    }
    for p in f.propositions() {
        set.insert(Character::new([p]));
    }
    set.into_iter().collect()
}

/// Bounded three-valued verdict: F if an enumerated lasso is definitely
/// accepted and violates `f`; ? if one is possibly accepted and violates it; T otherwise.
pub fn brute_force_verdict(m: &Automaton, f: &Ltl, max_stem: usize, max_loop: usize) -> Verdict {
    brute_force_verdict_over(m, f, &verdict_alphabet(m, f), max_stem, max_loop)
}

pub fn brute_force_verdict_over(
    m: &Automaton,
    f: &Ltl,
    alphabet: &[Character],
    max_stem: usize,
    max_loop: usize,
) -> Verdict {
    let cls = Classifier::new(m);
    let ev = LtlEvaluator::new(f);
    let stems: Vec<(Vec<Character>, StemSets)> = words(alphabet, 0, max_stem)
        .into_iter()
        .map(|s| {
            let ss = cls.stem_sets(&s);
            (s, ss)
        })
        .collect();
    let mut possible: Option<LassoWord> = None;
    let mut definite: Option<LassoWord> = None;
    for l in words(alphabet, 1, max_loop) {
        let ls = cls.loop_sets(&l);
        let lv = ev.loop_values(&l);
        for (s, ss) in &stems {
            let better = match Classifier::combine(ss, &ls) {
                RunClassification::Definite => definite.is_none(),
                RunClassification::Possible => possible.is_none(),
                RunClassification::Rejected => false,
            };
            if better && !ev.eval_with_loop(s, &lv[0]) {
                let w = LassoWord::new(s.clone(), l.clone());
                match Classifier::combine(ss, &ls) {
                    RunClassification::Definite => definite = Some(w),
                    _ => possible = Some(w),
                }
            }
        }
        if definite.is_some() {
            break;
        }
    }
    let witness = |w: LassoWord| {
        Some(Witness {
            word: w,
            run: Run {
                stem: vec![],
                cycle: vec![],
            },
        })
    };
    match (definite, possible) {
        (Some(w), _) => Verdict {
            truth: Truth::F,
            witness: witness(w),
        },
        (None, Some(w)) => Verdict {
            truth: Truth::Unknown,
            witness: witness(w),
        },
        (None, None) => Verdict::holds(),
    }
}

/// The ω-suffix of `w` starting at position `k`.
pub fn suffix(w: &LassoWord, k: usize) -> LassoWord {
    if k <= w.stem.len() {
        return LassoWord::new(w.stem[k..].to_vec(), w.cycle.clone());
    }
    let r = (k - w.stem.len()) % w.cycle.len();
    let mut cycle = w.cycle[r..].to_vec();
    cycle.extend_from_slice(&w.cycle[..r]);
    LassoWord::new(Vec::new(), cycle)
}

/// Finite and infinite abstractions of `run` (aligned with `w`) for `box_id`:
/// each maximal stretch of the run inside the box, read through box-stuttering
/// steps, prefixed by the entering character (none when the run starts there)
/// and, when it ends, suffixed by the leaving character.
pub fn abstractions(
    i: &IntersectionAutomaton,
    box_id: &str,
    w: &LassoWord,
    run: &Run,
) -> Result<(BTreeSet<Vec<Character>>, BTreeSet<LassoWord>), Error> {
    if run.stem.len() != w.stem.len() || run.cycle.len() != w.cycle.len() {
        return Err(Error::Format("run and word have different shapes".into()));
    }
    let ids: BTreeMap<String, usize> = (0..i.len()).map(|n| (i.id(n), n)).collect();
    let states: Vec<usize> = run
        .stem
        .iter()
        .chain(&run.cycle)
        .map(|s| {
            ids.get(s)
                .copied()
                .ok_or_else(|| Error::Format(format!("unknown product state {s}")))
        })
        .collect::<Result<_, _>>()?;
    let n = states.len();
    if !i.initial.contains(&states[0]) {
        return Err(Error::Format(
            "run does not start in an initial state".into(),
        ));
    }
    // Step kind at each position: Some(true) inside the box, Some(false) other, None invalid.
    let mut inside_step = vec![false; n];
    for p in 0..n {
        let (a, b, c) = (states[p], states[w.next_position(p)], w.at(p));
        let matching: Vec<_> = i
            .transitions
            .iter()
            .filter(|t| t.from == a && t.to == b && t.guard.matches(c))
            .collect();
        if matching.is_empty() {
            return Err(Error::Format(format!("no transition for run step {p}")));
        }
        inside_step[p] =
            matching.iter().any(|t| t.model_step.is_none()) && i.states[a].model == box_id;
    }
    let in_box = |p: usize| i.states[states[p]].model == box_id;
    let mut finite = BTreeSet::new();
    let mut infinite = BTreeSet::new();
    let mut starts: Vec<(usize, Option<usize>)> = Vec::new();
    for j in 0..n {
        if !in_box(j) {
            continue;
        }
        if j == 0 {
            starts.push((0, None));
        }
        let mut preds = Vec::new();
        if j > 0 {
            preds.push(j - 1);
        }
        if j == w.stem.len() {
            preds.push(n - 1);
        }
        for p in preds {
            if !in_box(p) || !inside_step[p] {
                starts.push((j, Some(p)));
            }
        }
    }
    for (j, pred) in starts {
        let mut word: Vec<Character> = pred.map(|p| w.at(p).clone()).into_iter().collect();
        let entry = pred.unwrap_or(0);
        let mut p = j;
        let mut visited = BTreeSet::new();
        loop {
            if !visited.insert(p) {
                infinite.insert(suffix(w, entry));
                break;
            }
            word.push(w.at(p).clone());
            if !inside_step[p] {
                finite.insert(word);
                break;
            }
            p = w.next_position(p);
        }
    }
    Ok((finite, infinite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture;
    use crate::ltl::parse_ltl_unchecked;

    fn word(stem: &[&[&str]], cycle: &[&[&str]]) -> LassoWord {
        let ch = |c: &&[&str]| Character::new(c.iter().map(|s| s.to_string()));
        LassoWord::new(
            stem.iter().map(ch).collect(),
            cycle.iter().map(ch).collect(),
        )
    }

    #[test]
    fn classifies_m_send_words() {
        let f = load_fixture("m_send").unwrap();
        let m = f.automaton("model");
        let w = word(&[&["start"], &["send"], &["ok"]], &[&["success"]]);
        assert_eq!(classify_word(m, &w), RunClassification::Possible);
        let w = word(
            &[&["start"], &["send"], &["fail"], &["fail"]],
            &[&["abort"]],
        );
        assert_eq!(classify_word(m, &w), RunClassification::Possible);
        assert_eq!(
            classify_word(m, &word(&[], &[&["abort"]])),
            RunClassification::Rejected
        );
        assert_eq!(
            classify_word(&m.completion(), &w),
            RunClassification::Rejected
        );
    }

    #[test]
    fn definite_on_regular_lasso() {
        let mut m = Automaton::new(crate::automaton::Kind::Iba);
        m.add_state("a", false, true, true);
        m.add_transition("a", Guard::from_tokens(&["p"]).unwrap(), "a");
        assert_eq!(
            classify_word(&m, &word(&[], &[&["p"]])),
            RunClassification::Definite
        );
        assert_eq!(
            classify_word(&m, &word(&[], &[&[]])),
            RunClassification::Rejected
        );
    }

    #[test]
    fn evaluates_send_property() {
        let f = parse_ltl_unchecked("G(send -> F success)").unwrap();
        assert!(eval_ltl(
            &f,
            &word(&[&["start"], &["send"], &["ok"]], &[&["success"]])
        ));
        assert!(!eval_ltl(
            &f,
            &word(
                &[&["start"], &["send"], &["fail"], &["fail"]],
                &[&["abort"]]
            )
        ));
        let t = parse_ltl_unchecked("true").unwrap();
        assert!(eval_ltl(&t, &word(&[], &[&[]])));
    }

    #[test]
    fn evaluates_fixpoints_on_loops() {
        let w = word(&[&["p"]], &[&["q"], &[]]);
        let check = |s: &str, expected: bool| {
            assert_eq!(
                eval_ltl(&parse_ltl_unchecked(s).unwrap(), &w),
                expected,
                "{s}"
            );
        };
        check("p", true);
        check("X q", true);
        check("G F q", true);
        check("F G q", false);
        check("p U q", true);
        check("q R !p", false);
        check("G(q -> X !q)", true);
        check("X G(!p)", true);
    }

    #[test]
    fn enumeration_counts() {
        let p: BTreeSet<String> = ["p".to_string()].into();
        let ws: Vec<_> = enumerate_lassos(&p, 0, 1).collect();
        assert_eq!(ws, vec![word(&[], &[&[]]), word(&[], &[&["p"]])]);
        assert_eq!(enumerate_lassos(&BTreeSet::new(), 0, 1).count(), 1);
        assert_eq!(enumerate_lassos(&p, 1, 1).count(), 6);
    }

    #[test]
    fn bounded_verdicts() {
        let f = load_fixture("m_send").unwrap();
        let m = f.automaton("model");
        let phi = parse_ltl_unchecked("G(send -> F success)").unwrap();
        assert_eq!(brute_force_verdict(m, &phi, 4, 3).truth, Truth::Unknown);
        assert_eq!(
            brute_force_verdict(m, &parse_ltl_unchecked("true").unwrap(), 2, 2).truth,
            Truth::T
        );
        let mut bad = Automaton::new(crate::automaton::Kind::Iba);
        bad.add_state("a", false, true, false);
        bad.add_state("b", false, false, true);
        bad.add_transition("a", Guard::top(), "b");
        bad.add_transition("b", Guard::from_tokens(&["!p"]).unwrap(), "b");
        let v = brute_force_verdict(&bad, &parse_ltl_unchecked("G p").unwrap(), 2, 2);
        assert_eq!(v.truth, Truth::F);
        let w = &v.witness.unwrap().word;
        assert_eq!(classify_word(&bad, w), RunClassification::Definite);
    }

    #[test]
    fn suffixes_rotate_the_loop() {
        let w = word(&[&["a"]], &[&["b"], &["c"]]);
        assert_eq!(suffix(&w, 0), w);
        assert_eq!(suffix(&w, 1), word(&[], &[&["b"], &["c"]]));
        assert_eq!(suffix(&w, 2), word(&[], &[&["c"], &["b"]]));
    }
}
