use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use iba_core::automaton::render_character;
use iba_core::replacement::{build_approx, ApproxAutomaton, ApproxKind};
use iba_core::{
    automaton_to_dot, check_refinement, check_replacement, compose, compute_constraint, intersect,
    intersection_to_dot, ltl_to_ba, model_check, parse_ltl, Automaton, Constraint, Error, Ltl,
    RefinementRelation, Replacement, Truth, Verdict,
};
use serde_json::{json, Value};

const EXIT_NOT_UNKNOWN: u8 = 3;
const EXIT_ERROR: u8 = 10;

#[derive(Parser)]
#[command(
    name = "iba",
    version,
    about = "Three-valued LTL model checking of incomplete Büchi automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model against a property (exit 0 = T, 1 = F, 2 = ?).
    Check {
        #[command(flatten)]
        input: CheckInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Directory receiving DOT files of the model, claim and product.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Write one `<box>.constraint.json` per box; requires a `?` verdict.
    Constraints {
        #[command(flatten)]
        input: CheckInput,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write DOT files of each sub-property into the output directory.
        #[arg(long)]
        dot: bool,
    },
    /// Check a box replacement against its constraint (exit codes as `check`).
    CheckReplacement {
        #[arg(long)]
        constraint: PathBuf,
        #[arg(long)]
        replacement: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Directory receiving DOT files of the two approximations.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Plug a replacement into its box; writes the model and the canonical relation.
    Compose {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        replacement: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Relation file; defaults to `<out>` with a `.relation.json` suffix.
        #[arg(long)]
        relation: Option<PathBuf>,
        /// Prefix for every replacement state id, to avoid collisions.
        #[arg(long)]
        prefix: Option<String>,
        /// DOT file of the composed model.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check that a concrete model refines an abstract one (exit 0 = true, 1 = false).
    Refines {
        #[arg(long = "abstract")]
        abstract_model: PathBuf,
        #[arg(long)]
        concrete: PathBuf,
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct CheckInput {
    #[arg(long)]
    model: PathBuf,
    /// Property; the claim is the automaton of its negation.
    #[arg(long, conflicts_with = "claim", required_unless_present = "claim")]
    ltl: Option<String>,
    /// Claim automaton, accepting the violating behaviors.
    #[arg(long)]
    claim: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&serde_json::to_value(value)?)? + "\n")
}

fn load_inputs(input: &CheckInput) -> Result<(Automaton, Automaton)> {
    let model: Automaton = read_json(&input.model)?;
    let claim = match (&input.ltl, &input.claim) {
        (Some(text), _) => ltl_to_ba(&Ltl::not(parse_ltl(text, &model.propositions)?)),
        (None, Some(path)) => read_json(path)?,
        (None, None) => return Err(anyhow!("one of --ltl or --claim is required")),
    };
    Ok((model, claim))
}

fn truth_code(t: Truth) -> u8 {
    match t {
        Truth::T => 0,
        Truth::F => 1,
        Truth::Unknown => 2,
    }
}

fn witness_lines(v: &Verdict) -> Vec<String> {
    let Some(w) = &v.witness else {
        return Vec::new();
    };
    let chars = |cs: &[iba_core::Character]| cs.iter().map(render_character).collect::<String>();
    let mut lines = vec![
        format!("witness stem: {}", chars(&w.word.stem)),
        format!("witness loop: {}", chars(&w.word.cycle)),
    ];
    if !w.run.stem.is_empty() || !w.run.cycle.is_empty() {
        lines.push(format!("run stem: {}", w.run.stem.join(" ")));
        lines.push(format!("run loop: {}", w.run.cycle.join(" ")));
    }
    lines
}

/// Prints a verdict report; `statistics` keys become text lines in order.
fn report(
    v: &Verdict,
    statistics: &[(&str, usize)],
    format: Format,
    started: Instant,
) -> Result<()> {
    match format {
        Format::Json => {
            let stats: serde_json::Map<String, Value> = statistics
                .iter()
                .map(|(k, n)| (k.to_string(), json!(n)))
                .collect();
            let mut doc = serde_json::to_value(v)?;
            doc["statistics"] = Value::Object(stats);
            print!("{}", to_json(&doc)?);
        }
        Format::Text => {
            println!("verdict: {}", v.truth);
            for (k, n) in statistics {
                println!("{}: {n}", k.replace('_', " "));
            }
            for line in witness_lines(v) {
                println!("{line}");
            }
            println!("time: {:.3}s", started.elapsed().as_secs_f64());
        }
    }
    Ok(())
}

fn cmd_check(input: &CheckInput, format: Format, dot: Option<&Path>) -> Result<u8> {
    let started = Instant::now();
    let (model, claim) = load_inputs(input)?;
    let verdict = model_check(&model, &claim)?;
    let possible = intersect(&model, &claim);
    let definite = intersect(&model.completion(), &claim);
    if let Some(dir) = dot {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_file(&dir.join("model.dot"), &automaton_to_dot(&model, "model"))?;
        write_file(&dir.join("claim.dot"), &automaton_to_dot(&claim, "claim"))?;
        write_file(
            &dir.join("product.dot"),
            &intersection_to_dot(&possible, "product"),
        )?;
    }
    let stats = [
        ("product_states", possible.len()),
        ("product_transitions", possible.transitions.len()),
        ("completion_product_states", definite.len()),
        ("completion_product_transitions", definite.transitions.len()),
    ];
    report(&verdict, &stats, format, started)?;
    Ok(truth_code(verdict.truth))
}

fn cmd_constraints(input: &CheckInput, out: &Path, format: Format, dot: bool) -> Result<u8> {
    let (model, claim) = load_inputs(input)?;
    let constraints = match compute_constraint(&model, &claim) {
        Err(Error::NotUnknown(t)) => {
            eprintln!("error: constraints need a ? verdict, the model check gives {t}");
            return Ok(EXIT_NOT_UNKNOWN);
        }
        other => other?,
    };
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut rows = Vec::new();
    for (b, c) in &constraints {
        write_file(&out.join(format!("{b}.constraint.json")), &to_json(c)?)?;
        for sp in [&c.s, &c.sp] {
            if dot {
                let name = format!("{b}.{}", sp.kind);
                write_file(
                    &out.join(format!("{name}.dot")),
                    &automaton_to_dot(&sp.inner, &name),
                )?;
            }
            rows.push(json!({
                "box": b,
                "kind": sp.kind.to_string(),
                "states": sp.inner.states.len(),
                "g": sp.g.len(),
                "r": sp.r.len(),
                "k": sp.links.len(),
                "yFlag": c.y_flag,
            }));
        }
    }
    match format {
        Format::Json => print!("{}", to_json(&rows)?),
        Format::Text => {
            println!(
                "{:<12} {:<4} {:>6} {:>4} {:>4} {:>4}  yFlag",
                "box", "kind", "|P|", "|G|", "|R|", "|K|"
            );
            for r in &rows {
                println!(
                    "{:<12} {:<4} {:>6} {:>4} {:>4} {:>4}  {}",
                    r["box"].as_str().unwrap_or_default(),
                    r["kind"].as_str().unwrap_or_default(),
                    r["states"].to_string(),
                    r["g"].to_string(),
                    r["r"].to_string(),
                    r["k"].to_string(),
                    r["yFlag"]
                );
            }
        }
    }
    Ok(0)
}

fn approx_stats(a: &ApproxAutomaton) -> (usize, usize) {
    (a.automaton.states.len(), a.automaton.transitions.len())
}

fn cmd_check_replacement(
    constraint: &Path,
    replacement: &Path,
    format: Format,
    dot: Option<&Path>,
) -> Result<u8> {
    let started = Instant::now();
    let c: Constraint = read_json(constraint)?;
    let r: Replacement = read_json(replacement)?;
    let verdict = check_replacement(&c, &r)?;
    let under = build_approx(&c.s, &r, ApproxKind::Under)?;
    let over = build_approx(&c.sp, &r, ApproxKind::Over)?;
    if let Some(dir) = dot {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_file(
            &dir.join("under.dot"),
            &automaton_to_dot(&under.automaton, "under"),
        )?;
        write_file(
            &dir.join("over.dot"),
            &automaton_to_dot(&over.automaton, "over"),
        )?;
    }
    let (us, ut) = approx_stats(&under);
    let (os, ot) = approx_stats(&over);
    let stats = [
        ("under_states", us),
        ("under_transitions", ut),
        ("over_states", os),
        ("over_transitions", ot),
    ];
    report(&verdict, &stats, format, started)?;
    Ok(truth_code(verdict.truth))
}

fn relation_path(out: &Path) -> PathBuf {
    let name = out
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = name.strip_suffix(".json").unwrap_or(&name);
    out.with_file_name(format!("{stem}.relation.json"))
}

fn cmd_compose(
    model: &Path,
    replacement: &Path,
    out: &Path,
    relation: Option<&Path>,
    prefix: Option<&str>,
    dot: Option<&Path>,
) -> Result<u8> {
    let host: Automaton = read_json(model)?;
    let mut r: Replacement = read_json(replacement)?;
    if let Some(p) = prefix {
        r = r.with_prefix(p);
    }
    let (n, rel) = compose(&host, &r)?;
    let rel_path = relation
        .map(Path::to_path_buf)
        .unwrap_or_else(|| relation_path(out));
    write_file(out, &to_json(&n)?)?;
    write_file(&rel_path, &to_json(&rel)?)?;
    if let Some(path) = dot {
        write_file(path, &automaton_to_dot(&n, "composed"))?;
    }
    println!("wrote {} and {}", out.display(), rel_path.display());
    Ok(0)
}

fn cmd_refines(
    abstract_model: &Path,
    concrete: &Path,
    relation: &Path,
    format: Format,
) -> Result<u8> {
    let m: Automaton = read_json(abstract_model)?;
    let n: Automaton = read_json(concrete)?;
    let rel: RefinementRelation = read_json(relation)?;
    let report = check_refinement(&m, &n, &rel);
    match format {
        Format::Json => print!("{}", to_json(&report)?),
        Format::Text => {
            println!("{}", report.holds);
            for c in &report.violated {
                println!("violated: {c}");
            }
        }
    }
    Ok(if report.holds { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { input, format, dot } => cmd_check(&input, format, dot.as_deref()),
        Command::Constraints {
            input,
            out,
            format,
            dot,
        } => cmd_constraints(&input, &out, format, dot),
        Command::CheckReplacement {
            constraint,
            replacement,
            format,
            dot,
        } => cmd_check_replacement(&constraint, &replacement, format, dot.as_deref()),
        Command::Compose {
            model,
            replacement,
            out,
            relation,
            prefix,
            dot,
        } => cmd_compose(
            &model,
            &replacement,
            &out,
            relation.as_deref(),
            prefix.as_deref(),
            dot.as_deref(),
        ),
        Command::Refines {
            abstract_model,
            concrete,
            relation,
            format,
        } => cmd_refines(&abstract_model, &concrete, &relation, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
