//! Command-line front end.
//!
//! Exit codes: 0 success (or the expected answer), 1 usage or parse error,
//! 2 an UNKNOWN verdict or an `--expect` mismatch, 3 an internal inconsistency.

use std::cmp::Ordering;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::condensation::{e_y_condense, window_condensation};
use crate::engine::{Engine, EngineConfig, Flag};
use crate::error::{Error, Result};
use crate::finite::{finite_profile, FiniteOrder};
use crate::game::{verify_exhaustive, verify_random, StrategySpace, VerifySummary};
use crate::hierarchy::{no_finite_f_witness, realize, validate_sum_spec, SumSpec};
use crate::ordinal::{classify_ordinal, s_untranscendability_witness, transcendability_witness, Ordinal};
use crate::term::{f_class_profile, normalize, parse_term, FStatus, Term};
use crate::verdict::{Answer, Verdict};

#[derive(Parser, Debug)]
#[command(name = "ordtypes", version, about = "Embeddability and classification of linear order types")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum derivation depth for the engine.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Disallow facts that depend on the axiom of choice.
    #[arg(long, global = true)]
    no_choice: bool,
    /// Expected answer; the exit code is 0 on a match and 2 otherwise.
    #[arg(long, global = true)]
    expect: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordinals in Cantor normal form.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Order type terms.
    #[command(subcommand)]
    Type(TypeCmd),
    /// Finite chains.
    #[command(subcommand)]
    Finite(FiniteCmd),
    /// Condensations.
    #[command(subcommand)]
    Cond(CondCmd),
    /// Regular unbounded sums and shuffles.
    #[command(subcommand)]
    Hier(HierCmd),
    /// Flip identities of binary sequence games.
    #[command(subcommand)]
    Game(GameCmd),
}

#[derive(Subcommand, Debug)]
enum OrdCmd {
    /// Normal form of an ordinal.
    Cnf { ordinal: String },
    /// Compare two ordinals.
    Cmp { left: String, right: String },
    /// Closed-form classification flags.
    Classify { ordinal: String },
    /// Transcendability and s-untranscendability witnesses.
    Witness { ordinal: String },
}

#[derive(Subcommand, Debug)]
enum TypeCmd {
    /// Decide `s ⩽ t`.
    Embeds { sub: String, sup: String },
    /// Decide mutual embeddability.
    Equi { left: String, right: String },
    /// All classification flags.
    Classify { term: String },
    /// Decide `t² ⩽ t`.
    Square { term: String },
    /// Finite classes of the finite condensation.
    Fprofile { term: String },
}

#[derive(Subcommand, Debug)]
enum FiniteCmd {
    /// Exhaustive profile of the chain with `size` points.
    Profile { size: usize },
}

#[derive(Subcommand, Debug)]
enum CondCmd {
    /// Condense a finite chain by the runs of a subset, e.g. `ey 5 0,1,3`.
    Ey { size: usize, subset: String },
    /// Finite condensation of a sampled window of a term.
    F {
        term: String,
        #[arg(long, default_value_t = 2)]
        window: u64,
    },
}

#[derive(Subcommand, Debug)]
enum HierCmd {
    /// Check regularity or density of a sum spec (a path, `-`, or inline JSON).
    Validate { spec: String },
    /// The term a sum spec denotes.
    Realize { spec: String },
    /// An equimorphic type without finite condensation classes.
    Witness { spec: String },
}

#[derive(Subcommand, Debug)]
enum GameCmd {
    /// Verify the flip conjugation identity.
    Verify(GameVerify),
}

#[derive(Args, Debug)]
struct GameVerify {
    #[arg(long, default_value_t = 2)]
    rounds: usize,
    #[arg(long, default_value_t = 2)]
    max_move: usize,
    /// Seed for random instances.
    #[arg(long, conflicts_with = "exhaustive")]
    seed: Option<u64>,
    /// Enumerate every strategy lazily.
    #[arg(long)]
    exhaustive: bool,
    /// Enumerate strategies that depend only on the number of moves played.
    #[arg(long, requires = "exhaustive")]
    by_length: bool,
    /// Number of random instances.
    #[arg(long, default_value_t = 1000)]
    count: usize,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced before exit-code handling.
struct Report {
    text: String,
    json: Value,
    /// The comparable answer, when the command has one.
    answer: Option<String>,
    unknown: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Report {
        Report { text, json, answer: None, unknown: false }
    }

    fn verdict(text: String, json: Value, v: &Verdict) -> Report {
        Report { text, json, answer: Some(v.answer.to_string()), unknown: v.answer == Answer::Unknown }
    }
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let code = match e {
                Error::Inconsistency(_) => 3,
                _ => 1,
            };
            return Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    let mut stdout = if cli.json {
        let mut s = serde_json::to_string_pretty(&report.json).expect("json");
        s.push('\n');
        s
    } else {
        report.text.clone()
    };
    if !stdout.ends_with('\n') {
        stdout.push('\n');
    }
    let mut stderr = String::new();
    let code = match (&cli.expect, &report.answer) {
        (Some(want), Some(got)) if want.eq_ignore_ascii_case(got) => 0,
        (Some(want), Some(got)) => {
            let _ = writeln!(stderr, "expected {want}, got {got}");
            2
        }
        (Some(_), None) => {
            let _ = writeln!(stderr, "error: this command has no answer to compare with --expect");
            1
        }
        (None, _) if report.unknown => 2,
        (None, _) => 0,
    };
    Outcome { code, stdout, stderr }
}

fn term(s: &str) -> Result<Term> {
    Ok(normalize(&parse_term(s)?))
}

fn ordinal(s: &str) -> Result<Ordinal> {
    s.parse()
}

fn engine(cli: &Cli) -> Engine {
    Engine::new(EngineConfig { depth: cli.depth, choice: !cli.no_choice, ..EngineConfig::default() })
}

fn read_spec(arg: &str) -> Result<SumSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::InvalidArgument(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::InvalidArgument(format!("{arg}: {e}")))?
    };
    SumSpec::from_json(&text)
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("{}\n", v.answer);
    match &v.certificate {
        Some(c) => {
            let _ = writeln!(s, "rule: {}", c.rule);
            let _ = writeln!(s, "certificate nodes: {}", c.node_count());
            let axioms = c.all_axioms();
            if !axioms.is_empty() {
                let _ = writeln!(s, "axioms: {}", axioms.join(", "));
            }
        }
        None => {
            let _ = writeln!(s, "frontier: {}", v.frontier.join(", "));
        }
    }
    s
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Ord(c) => ord(c),
        Command::Type(c) => ty(cli, c),
        Command::Finite(FiniteCmd::Profile { size }) => {
            let p = finite_profile(FiniteOrder::new(*size))?;
            let text = format!(
                "size: {}\ndecomposable: {}\ntranscendable: {}\nstrongly_indecomposable: {}\n",
                p.size, p.decomposable.holds, p.transcendable.holds, p.strongly_indecomposable.holds
            );
            Ok(Report::new(text, to_json(&p)))
        }
        Command::Cond(c) => cond(c),
        Command::Hier(c) => hier(cli, c),
        Command::Game(GameCmd::Verify(g)) => game(g),
    }
}

fn ord(c: &OrdCmd) -> Result<Report> {
    Ok(match c {
        OrdCmd::Cnf { ordinal: a } => {
            let a = ordinal(a)?;
            let cnf: Vec<Value> = a.cnf().iter().map(|(e, k)| json!([e.to_string(), k])).collect();
            Report::new(format!("{a}"), json!({ "ordinal": a.to_string(), "cnf": cnf }))
        }
        OrdCmd::Cmp { left, right } => {
            let (a, b) = (ordinal(left)?, ordinal(right)?);
            let sym = match a.cmp(&b) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            let mut r = Report::new(format!("{a} {sym} {b}"), json!({ "left": a, "right": b, "order": sym }));
            r.answer = Some(sym.to_string());
            r
        }
        OrdCmd::Classify { ordinal: a } => {
            let a = ordinal(a)?;
            let p = classify_ordinal(&a);
            let mut json = to_json(&p);
            json["ordinal"] = json!(a.to_string());
            let mut text = String::new();
            if let Value::Object(m) = to_json(&p) {
                for (k, v) in m {
                    let _ = writeln!(text, "{k}: {}", v.as_str().map_or_else(|| v.to_string(), str::to_string));
                }
            }
            Report::new(text, json)
        }
        OrdCmd::Witness { ordinal: a } => {
            let a = ordinal(a)?;
            let tw = transcendability_witness(&a);
            let sw = s_untranscendability_witness(&a).ok();
            let mut text = match &tw {
                Some((p, t)) => format!("transcendable: {a} <= ({p})*({t}) with {p}, {t} < {a}\n"),
                None => "untranscendable\n".to_string(),
            };
            if let Some((rho, tau)) = &sw {
                let _ = writeln!(text, "s-untranscendability witness: rho = {rho}, tau = {tau}");
            }
            let json = json!({
                "ordinal": a.to_string(),
                "transcendability": tw.map(|(p, t)| json!({ "psi": p, "tau": t, "product": p.mul(&t) })),
                "s_untranscendability": sw.map(|(rho, tau)| json!({ "rho": rho.to_string(), "tau": tau })),
            });
            Report::new(text, json)
        }
    })
}

fn ty(cli: &Cli, c: &TypeCmd) -> Result<Report> {
    let mut e = engine(cli);
    Ok(match c {
        TypeCmd::Embeds { sub, sup } => {
            let v = e.embeds(&term(sub)?, &term(sup)?);
            Report::verdict(verdict_text(&v), to_json(&v), &v)
        }
        TypeCmd::Equi { left, right } => {
            let v = e.equimorphic(&term(left)?, &term(right)?);
            Report::verdict(verdict_text(&v), to_json(&v), &v)
        }
        TypeCmd::Classify { term: t } => {
            let p = e.classify_type(&term(t)?)?;
            let mut text = format!("term: {}\n", p.term);
            for f in Flag::ALL {
                let v = p.get(f);
                let rule = v.certificate.as_ref().map_or(String::new(), |c| format!(" ({})", c.rule));
                let _ = writeln!(text, "{}: {}{rule}", f.name(), v.answer);
            }
            Report::new(text, to_json(&p))
        }
        TypeCmd::Square { term: t } => {
            let rep = e.square_pipeline(&term(t)?)?;
            let mut text = verdict_text(&rep.verdict);
            for (h, v) in &rep.hypotheses {
                let _ = writeln!(text, "hypothesis {h}: {}", v.answer);
            }
            Report::verdict(text, to_json(&rep), &rep.verdict.clone())
        }
        TypeCmd::Fprofile { term: t } => {
            let t = term(t)?;
            let p = f_class_profile(&t);
            let status = match &p.status {
                FStatus::AllInfinite => "all classes infinite".to_string(),
                FStatus::FinitelyManyFinite { count, classes } => format!("{count} finite classes: {}", classes.join(", ")),
                FStatus::InfinitelyManyFinite => "infinitely many finite classes".to_string(),
                FStatus::Unknown => "UNKNOWN".to_string(),
            };
            let mut text = format!("{status}\n");
            if let Some(w) = &p.equimorphic_no_finite_witness {
                let _ = writeln!(text, "witness: {w}");
            }
            Report { text, json: to_json(&p), answer: None, unknown: p.status == FStatus::Unknown }
        }
    })
}

fn cond(c: &CondCmd) -> Result<Report> {
    Ok(match c {
        CondCmd::Ey { size, subset } => {
            let y = subset
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|e| Error::InvalidArgument(format!("subset: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let r = e_y_condense(FiniteOrder::new(*size), &y)?;
            if !r.verified {
                return Err(Error::Inconsistency("constructed map is not an embedding".into()));
            }
            let classes: Vec<String> = r.result.classes.iter().map(|c| format!("[{}..{}]", c.start, c.end)).collect();
            let mut text = format!("classes: {}\nembedding: {:?}\n", classes.join(" "), r.embedding);
            if let Some(arm) = &r.dichotomy {
                let _ = writeln!(text, "dichotomy: {arm:?}");
            }
            Report::new(text, to_json(&r))
        }
        CondCmd::F { term: t, window } => {
            let r = window_condensation(&term(t)?, *window)?;
            let mut text = String::new();
            for c in &r.classes {
                let tag = c.tag.as_ref().map_or_else(|| "untagged".to_string(), |t| t.to_string());
                let _ = writeln!(text, "{} .. {}: {tag}", c.first, c.last);
            }
            Report::new(text, to_json(&r))
        }
    })
}

fn hier(cli: &Cli, c: &HierCmd) -> Result<Report> {
    let mut e = engine(cli);
    Ok(match c {
        HierCmd::Validate { spec } => {
            let v = validate_sum_spec(&mut e, &read_spec(spec)?)?;
            let mut text = verdict_text(&v);
            if let Some(i) = v.certificate.as_ref().and_then(|c| c.instantiation.get("index")) {
                let _ = writeln!(text, "counterexample index: {i}");
            }
            Report::verdict(text, to_json(&v), &v)
        }
        HierCmd::Realize { spec } => {
            let t = realize(&read_spec(spec)?)?;
            Report::new(t.to_string(), json!({ "term": t.to_string() }))
        }
        HierCmd::Witness { spec } => {
            let rep = no_finite_f_witness(&mut e, &read_spec(spec)?)?;
            let mut text = match &rep.witness {
                Some(w) => format!("{w}\n"),
                None => "no witness\n".to_string(),
            };
            for d in &rep.diagnostics {
                let _ = writeln!(text, "note: {d}");
            }
            let unknown = rep.witness.is_none();
            Report { text, json: to_json(&rep), answer: None, unknown }
        }
    })
}

fn game(g: &GameVerify) -> Result<Report> {
    let summary: VerifySummary = if g.exhaustive {
        let space = if g.by_length { StrategySpace::ByLength } else { StrategySpace::Tables };
        verify_exhaustive(space, g.rounds, g.max_move)
    } else {
        verify_random(g.seed.unwrap_or(0), g.count, g.rounds, g.max_move)
    };
    if summary.failures > 0 {
        return Err(Error::Inconsistency(format!("{} of {} instances failed", summary.failures, summary.instances)));
    }
    let mut r = Report::new(format!("instances: {}\nfailures: 0", summary.instances), to_json(&summary));
    r.answer = Some("true".into());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> Outcome {
        run(std::iter::once("ordtypes").chain(args.split_whitespace()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go("type embeds 2*r r --expect NO").code, 0);
        assert_eq!(go("type embeds 2*r r --expect YES").code, 2);
        assert_eq!(go("type bogus").code, 1);
        assert_eq!(go("ord cnf q").code, 1);
    }

    #[test]
    fn ord_classify_json() {
        let o = go("ord classify w^(w) --json");
        assert_eq!(o.code, 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["untranscendable"], json!(true));
    }

    #[test]
    fn output_is_deterministic() {
        assert_eq!(go("type classify w+q --json"), go("type classify w+q --json"));
    }
}
