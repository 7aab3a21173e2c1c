//! Graphviz DOT export.

use std::fmt::Write;

use crate::automaton::{Automaton, Guard};
use crate::product::{IntersectionAutomaton, StepKind};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn label(g: &Guard) -> String {
    if g.is_top() {
        "true".to_string()
    } else {
        g.to_tokens().join(" & ")
    }
}

fn node(out: &mut String, id: &str, is_box: bool, initial: bool, accepting: bool) {
    let shape = match (is_box, accepting) {
        (true, _) => "box",
        (false, true) => "doublecircle",
        (false, false) => "circle",
    };
    let peripheries = if is_box && accepting {
        ", peripheries=2"
    } else {
        ""
    };
    writeln!(out, "  {} [shape={shape}{peripheries}];", quote(id)).unwrap();
    if initial {
        let start = quote(&format!("__init_{id}"));
        writeln!(out, "  {start} [shape=point];").unwrap();
        writeln!(out, "  {start} -> {};", quote(id)).unwrap();
    }
}

pub fn automaton_to_dot(a: &Automaton, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for s in &a.states {
        node(
            &mut out,
            s,
            a.boxes.contains(s),
            a.initial.contains(s),
            a.accepting.contains(s),
        );
    }
    for t in &a.transitions {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&t.from),
            quote(&t.to),
            quote(&label(&t.guard))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Stuttering steps are dashed.
pub fn intersection_to_dot(i: &IntersectionAutomaton, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for n in 0..i.len() {
        node(
            &mut out,
            &i.id(n),
            i.mixed[n],
            i.initial.contains(&n),
            i.accepting[n],
        );
    }
    for t in &i.transitions {
        let style = if t.kind == StepKind::Stutter {
            ", style=dashed"
        } else {
            ""
        };
        writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(&i.id(t.from)),
            quote(&i.id(t.to)),
            quote(&label(&t.guard))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
