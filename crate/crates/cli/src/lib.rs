//! Command-line front end: argument parsing, command dispatch and rendering.
//!
//! [`run`] never exits the process; it returns the exit code together with
//! what would go to stdout and stderr, so the whole CLI is testable in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use distinction_core::engine::{line_name, strata};
use distinction_core::sweep::{
    declared_towers, key_lemma_sweep, ladder_corpus, multisegment_corpus, rich_universe,
    self_gd_towers, sweep_universe, CorpusParams, Window,
};
use distinction_core::{
    classify, deriv_consistency_check, dsl, json, mult_one_bound, DerivVerdict, Error, Mode, MsOp,
    Multisegment, Universe,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNIVERSE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "distinction",
    version,
    about = "Decide distinction of Galois-conjugate-self-dual representations"
)]
pub struct Query {
    /// Universe file; a builtin demo universe is used when omitted.
    #[arg(long, global = true)]
    pub universe: Option<PathBuf>,
    /// Multisegment, e.g. `Delta(rho2,0,2)+Delta(rho2,-2,0)`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub pi: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Ladder,
    Standard,
    Segment,
    Auto,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Ladder => Mode::Ladder,
            ModeArg::Standard => Mode::Standard,
            ModeArg::Segment => Mode::Segment,
            ModeArg::Auto => Mode::Auto,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distinction verdicts with their justification.
    Classify {
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
    },
    /// Pure components and the proper-ladder decomposition.
    Decompose,
    /// Standard modules of the derivative subquotients of a ladder.
    Derivatives,
    /// Double-coset strata of the right-ordered realization.
    Strata,
    /// Contragredient, Galois twist and the conjugate-self-duality test.
    Dual,
    /// Exhaustive and random oracles.
    Check {
        #[command(subcommand)]
        which: Check,
    },
    /// Seeded random multisegments for regression corpora.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Non-admissible strata carry no invariant functional.
    KeyLemma {
        #[arg(long, default_value_t = 3)]
        max_segments: usize,
        #[arg(long, default_value_t = 2)]
        max_span: usize,
    },
    /// Distinguished ladders have a distinguished shifted derivative.
    Deriv {
        #[arg(long, default_value_t = 1000)]
        corpus: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Query::try_parse_from(args) {
        Ok(q) => run_command(&q),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run_command(q: &Query) -> Outcome {
    match dispatch(q) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => Outcome::error(EXIT_USAGE, msg),
        Err(Failure::Core(e)) => {
            let code = if e.is_universe_semantic() {
                EXIT_UNIVERSE
            } else if matches!(e, Error::Soundness(_)) {
                EXIT_FAIL
            } else {
                EXIT_USAGE
            };
            Outcome::error(code, e)
        }
    }
}

fn load_universe(q: &Query) -> Res<Universe> {
    match &q.universe {
        None => Ok(rich_universe()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            Ok(dsl::parse_universe(&text)?)
        }
    }
}

fn load_pi(q: &Query, u: &Universe) -> Res<Multisegment> {
    let text =
        q.pi.as_deref()
            .ok_or_else(|| Failure::Usage("this command needs --pi".into()))?;
    Ok(dsl::parse_multisegment(text, u)?)
}

fn render(q: &Query, text: String, value: Value) -> String {
    match q.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("json renders") + "\n",
    }
}

fn dispatch(q: &Query) -> Res<Outcome> {
    match &q.command {
        Command::Classify { mode } => {
            let u = load_universe(q)?;
            let ms = load_pi(q, &u)?;
            let (used, rep) = classify(&u, &ms, (*mode).into())?;
            let text = format!(
                "input: {}\nmode: {}\n{rep}",
                ms.display(&u),
                json::mode_name(used)
            );
            Ok(Outcome::ok(render(
                q,
                text,
                json::classification(&u, &ms, used, &rep),
            )))
        }
        Command::Decompose => {
            let u = load_universe(q)?;
            let ms = load_pi(q, &u)?;
            decompose(q, &u, &ms)
        }
        Command::Derivatives => {
            let u = load_universe(q)?;
            let ms = load_pi(q, &u)?;
            let shape = ms
                .ladder_shape()
                .ok_or_else(|| Error::NotLadder(ms.display(&u).to_string()))?;
            let members = shape.derivative_set();
            let mut text = format!(
                "derivatives of {} ({} members)\n",
                ms.display(&u),
                members.len()
            );
            let mut arr = Vec::new();
            for m in &members {
                let flag = if m.is_empty() { "  (empty)" } else { "" };
                let _ = writeln!(text, "  {}{flag}", m.display(&u));
                arr.push(json!({
                    "text": m.display(&u).to_string(),
                    "segments": json::segments(&u, m.segments()),
                    "empty": m.is_empty(),
                }));
            }
            let value = json!({ "input": json::multisegment(&u, &ms), "members": arr });
            Ok(Outcome::ok(render(q, text, value)))
        }
        Command::Strata => {
            let u = load_universe(q)?;
            let ms = load_pi(q, &u)?;
            let r = ms.realization();
            let table = strata(&u, &r)?;
            let bound = mult_one_bound(&u, &r)?;
            let mut text = format!(
                "realization: {}\ncomposition: {}\n",
                ms.display(&u),
                r.composition(&u)
            );
            for s in &table {
                let pieces: Vec<String> = s
                    .pieces
                    .iter()
                    .map(|p| p.map_or("0".to_string(), |p| p.display(&u).to_string()))
                    .collect();
                let _ = writeln!(
                    text,
                    "  {}{}  hom<={}  [{}]{}",
                    s.w,
                    if s.w.is_admissible() {
                        " (admissible)"
                    } else {
                        ""
                    },
                    s.hom_bound,
                    pieces.join(", "),
                    s.failure_reason
                        .as_ref()
                        .map_or(String::new(), |r| format!("  -- {r}"))
                );
            }
            let _ = writeln!(text, "mult_one_bound: {bound}");
            let value = json!({
                "realization": json::segments(&u, r.segments()),
                "strata": table.iter().map(|s| json::stratum(&u, s)).collect::<Vec<_>>(),
                "mult_one_bound": bound,
            });
            Ok(Outcome::ok(render(q, text, value)))
        }
        Command::Dual => {
            let u = load_universe(q)?;
            let ms = load_pi(q, &u)?;
            let star = ms.apply(&u, MsOp::Star);
            let tau = ms.apply(&u, MsOp::Tau);
            let csd = ms.is_conjugate_selfdual(&u);
            let text = format!(
                "input: {}\nstar: {}\ntau:  {}\nconjugate self-dual: {}\n",
                ms.display(&u),
                star.display(&u),
                tau.display(&u),
                if csd { "yes" } else { "no" }
            );
            let value = json!({
                "input": json::multisegment(&u, &ms),
                "star": json::multisegment(&u, &star),
                "tau": json::multisegment(&u, &tau),
                "conjugate_selfdual": csd,
            });
            Ok(Outcome::ok(render(q, text, value)))
        }
        Command::Check { which } => match which {
            Check::KeyLemma {
                max_segments,
                max_span,
            } => check_key_lemma(q, *max_segments, *max_span),
            Check::Deriv { corpus, seed } => check_deriv(q, *corpus, *seed),
        },
        Command::Corpus { seed, count } => {
            let u = load_universe(q)?;
            let corpus = multisegment_corpus(&u, *seed, *count, &CorpusParams::default());
            let text: String = corpus
                .iter()
                .map(|m| format!("{}\n", m.display(&u)))
                .collect();
            let value = Value::Array(corpus.iter().map(|m| json::multisegment(&u, m)).collect());
            Ok(Outcome::ok(render(q, text, value)))
        }
    }
}

fn decompose(q: &Query, u: &Universe, ms: &Multisegment) -> Res<Outcome> {
    let mut text = format!("input: {}\n", ms.display(u));
    let mut comps = Vec::new();
    for (line, comp) in ms.pure_components() {
        let _ = writeln!(
            text,
            "component {}: {}",
            line_name(u, &line),
            comp.display(u)
        );
        comps.push(json!({
            "line": line_name(u, &line),
            "segments": json::segments(u, comp.segments()),
        }));
    }
    let parts = ms.ladder_shape().map(|shape| shape.proper_decomposition());
    match &parts {
        Some(parts) => {
            let _ = writeln!(text, "ladder: {} proper part(s)", parts.len());
            for p in parts {
                let _ = writeln!(text, "  {}", p.to_multisegment().display(u));
            }
        }
        None => text.push_str("ladder: no\n"),
    }
    let value = json!({
        "input": json::multisegment(u, ms),
        "components": comps,
        "ladder": parts.is_some(),
        "proper_parts": parts.map(|ps| ps
            .iter()
            .map(|p| json::segments(u, p.segments()))
            .collect::<Vec<_>>()),
    });
    Ok(Outcome::ok(render(q, text, value)))
}

fn sweep_targets(q: &Query) -> Res<Vec<(String, Universe)>> {
    Ok(match &q.universe {
        Some(p) => vec![(p.display().to_string(), load_universe(q)?)],
        None => vec![
            ("builtin gamma=0".to_string(), sweep_universe(0)),
            ("builtin gamma=1".to_string(), sweep_universe(1)),
        ],
    })
}

fn check_key_lemma(q: &Query, max_segments: usize, max_span: usize) -> Res<Outcome> {
    let w = Window {
        max_span,
        ..Window::default()
    };
    let mut text = String::new();
    let mut runs = Vec::new();
    let mut failed = false;
    for (name, u) in sweep_targets(q)? {
        let rep = key_lemma_sweep(&u, &declared_towers(&u), &w, max_segments)?;
        let _ = writeln!(
            text,
            "{name}: {} realizations, {} failures",
            rep.checked,
            rep.failures.len()
        );
        let witnesses: Vec<Value> = rep
            .failures
            .iter()
            .take(10)
            .map(|(r, s)| {
                let _ = writeln!(
                    text,
                    "  witness {} at {}",
                    dsl::print_segments(&u, r.segments()),
                    s.w
                );
                json!({
                    "realization": json::segments(&u, r.segments()),
                    "stratum": json::stratum(&u, s),
                })
            })
            .collect();
        failed |= !rep.passed();
        runs.push(json!({
            "universe": name,
            "checked": rep.checked,
            "failures": rep.failures.len(),
            "witnesses": witnesses,
        }));
    }
    let verdict = if failed { "FAIL" } else { "PASS" };
    let _ = writeln!(text, "{verdict}");
    let value = json!({ "check": "key-lemma", "verdict": verdict, "runs": runs });
    Ok(Outcome {
        code: if failed { EXIT_FAIL } else { EXIT_OK },
        stdout: render(q, text, value),
        stderr: String::new(),
    })
}

fn check_deriv(q: &Query, corpus: usize, seed: u64) -> Res<Outcome> {
    let mut text = String::new();
    let mut runs = Vec::new();
    let mut failed = false;
    for (name, u) in sweep_targets(q)? {
        if self_gd_towers(&u).is_empty() {
            return Err(Failure::Usage(format!(
                "{name} has no self-dual tower to build ladders on"
            )));
        }
        let ladders = ladder_corpus(&u, seed, corpus, &CorpusParams::default());
        let (mut pass, mut na) = (0usize, 0usize);
        let mut fails = Vec::new();
        for l in &ladders {
            match deriv_consistency_check(&u, l)? {
                DerivVerdict::Pass => pass += 1,
                DerivVerdict::NotApplicable => na += 1,
                DerivVerdict::Fail(why) => fails.push(why),
            }
        }
        let _ = writeln!(
            text,
            "{name}: {} ladders, {pass} pass, {} fail, {na} not applicable",
            ladders.len(),
            fails.len()
        );
        for f in fails.iter().take(10) {
            let _ = writeln!(text, "  {f}");
        }
        failed |= !fails.is_empty();
        runs.push(json!({
            "universe": name,
            "checked": ladders.len(),
            "pass": pass,
            "fail": fails.len(),
            "not_applicable": na,
            "failures": fails.iter().take(10).collect::<Vec<_>>(),
        }));
    }
    let verdict = if failed { "FAIL" } else { "PASS" };
    let _ = writeln!(text, "{verdict}");
    let value = json!({ "check": "deriv", "verdict": verdict, "runs": runs });
    Ok(Outcome {
        code: if failed { EXIT_FAIL } else { EXIT_OK },
        stdout: render(q, text, value),
        stderr: String::new(),
    })
}
