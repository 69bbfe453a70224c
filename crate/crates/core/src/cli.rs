//! Command-line front end. Every subcommand prints one JSON document
//! `{"ok": true, "result": ...}` or `{"ok": false, "error": {...}}`, except
//! `norm-curve`, which prints CSV.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factors::Join;
use crate::graph::{CommutationGraph, NormalWord};
use crate::io::{self, word_to_json};
use crate::toeplitz::{
    self, check_graph_relations, enumerate_ball, extend_representation, norm_curve, ConeBall, NormOptions,
    RelationCheckOptions, Representation,
};
use crate::verify::{run_suite, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "qlattice", version, about = "Graph products of groups: normal forms, lubs and Toeplitz checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Context file, or `preset:NAME` (free2, path3, square4, b3, b4).
    #[arg(long, global = true)]
    pub ctx: Option<String>,
    /// Read word literals from FILE, one per line, instead of arguments.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Ball radius for ball-based subcommands.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    #[arg(long, global = true, default_value_t = toeplitz::DEFAULT_MAX_BALL)]
    pub max_ball: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Worker threads for the data-parallel kernels.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Toeplitz,
    OneDim,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical normal form.
    Nf { word: Option<String> },
    /// Equality of two words.
    Eq { x: Option<String>, y: Option<String> },
    /// Syllable length.
    Len { word: Option<String> },
    /// Least upper bound, or "infinity".
    Lub { x: Option<String>, y: Option<String> },
    /// Greatest common right divisor of two positives.
    Rgcd { x: Option<String>, y: Option<String> },
    /// Canonical pair (a, b) with x = a b^-1.
    Fraction { word: Option<String> },
    /// Image in the direct product of the factors.
    Phi { word: Option<String> },
    /// Elements of the positive ball of radius --max-degree (default 2).
    Ball,
    /// Toeplitz operator T_x on the ball as a triplet list.
    Op {
        word: Option<String>,
        #[arg(long)]
        adjoint: bool,
    },
    /// Covariance identity for T_x, T_y on the ball (default radius 4).
    CovCheck { x: Option<String>, y: Option<String> },
    /// Product of defect projections; defaults to the generator set.
    Defect { words: Vec<String> },
    /// Relation and covariance checks for a generator family.
    Relcheck {
        /// `toeplitz`, `one-dim`, or a family JSON file.
        #[arg(long, default_value = "toeplitz")]
        family: String,
        /// Radius of the ball of sampled covariance pairs.
        #[arg(long, default_value_t = 3)]
        sample_degree: usize,
    },
    /// CSV of truncated norms of a weighted sum of Toeplitz operators.
    NormCurve {
        /// JSON weights, or @FILE.
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
    },
    /// Oracle and property suite.
    Verify {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        max_syllables: usize,
    },
}

/// Output of a subcommand before serialization.
enum Output {
    Json(Value),
    /// Successful run whose result reports a failed check.
    Violation(Value, String),
    Text(String),
}

struct Session {
    global: GlobalArgs,
    graph: Option<CommutationGraph>,
    inputs: Vec<String>,
}

impl Session {
    fn graph(&self) -> Result<&CommutationGraph> {
        self.graph.as_ref().ok_or_else(|| Error::Parse("missing --ctx".into()))
    }

    fn word(&self, arg: &Option<String>, position: usize) -> Result<NormalWord> {
        let text = match arg {
            Some(t) => t.as_str(),
            None => self
                .inputs
                .get(position)
                .map(String::as_str)
                .ok_or_else(|| Error::Parse(format!("missing word argument {}", position + 1)))?,
        };
        io::parse_word(self.graph()?, text)
    }

    fn json(&self, x: &NormalWord) -> Value {
        word_to_json(self.graph.as_ref().expect("context loaded"), x)
    }

    fn ball(&self, default_degree: usize) -> Result<ConeBall> {
        enumerate_ball(self.graph()?, self.global.max_degree.unwrap_or(default_degree), self.global.max_ball)
    }

    fn words_json(&self, ball: &ConeBall, indices: &[usize]) -> Value {
        Value::Array(indices.iter().map(|&i| self.json(&ball.elements()[i])).collect())
    }
}

fn read_file(path: &std::path::Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_context(source: &str) -> Result<CommutationGraph> {
    if let Some(name) = source.strip_prefix("preset:") {
        let text = io::preset(name).ok_or_else(|| Error::Io(format!("unknown preset `{name}`")))?;
        return io::parse_context(text);
    }
    let path = std::path::Path::new(source);
    if !path.exists() {
        if let Some(text) = io::preset(source) {
            return io::parse_context(text);
        }
    }
    io::parse_context(&read_file(path)?)
}

fn execute(session: &Session, command: &Command) -> Result<Output> {
    let out = match command {
        Command::Nf { word } => Output::Json(session.json(&session.word(word, 0)?)),
        Command::Eq { x, y } => Output::Json(json!(session.word(x, 0)? == session.word(y, 1)?)),
        Command::Len { word } => Output::Json(json!(session.word(word, 0)?.len())),
        Command::Lub { x, y } => match session.graph()?.lub_general(&session.word(x, 0)?, &session.word(y, 1)?) {
            Join::Finite(l) => Output::Json(session.json(&l)),
            Join::Infinity => Output::Json(json!("infinity")),
        },
        Command::Rgcd { x, y } => {
            Output::Json(session.json(&session.graph()?.rgcd(&session.word(x, 0)?, &session.word(y, 1)?)?))
        }
        Command::Fraction { word } => {
            let (a, b) = session.graph()?.canonical_fraction(&session.word(word, 0)?)?;
            Output::Json(json!({"a": session.json(&a), "b": session.json(&b)}))
        }
        Command::Phi { word } => {
            let graph = session.graph()?;
            let p = graph.phi(&session.word(word, 0)?);
            let parts: Vec<Value> = p
                .components
                .iter()
                .enumerate()
                .map(|(v, e)| json!([graph.name(v), io::element_json(graph, v, e)]))
                .collect();
            Output::Json(Value::Array(parts))
        }
        Command::Ball => {
            let ball = session.ball(2)?;
            let all: Vec<usize> = (0..ball.len()).collect();
            Output::Json(json!({"degree": ball.max_degree(), "size": ball.len(), "elements": session.words_json(&ball, &all)}))
        }
        Command::Op { word, adjoint } => {
            let ball = session.ball(2)?;
            let x = session.word(word, 0)?;
            let op = if *adjoint { ball.toeplitz_adjoint(&x)? } else { ball.toeplitz_op(&x)? };
            Output::Json(serde_json::to_value(&op).expect("serializable"))
        }
        Command::CovCheck { x, y } => {
            let ball = session.ball(4)?;
            let r = ball.covariance_check(&session.word(x, 0)?, &session.word(y, 1)?)?;
            let lub = match &r.lub {
                Join::Finite(l) => session.json(l),
                Join::Infinity => json!("infinity"),
            };
            let result = json!({
                "passed": r.passed(),
                "ball_size": ball.len(),
                "lub": lub,
                "lhs_support": session.words_json(&ball, &r.lhs_support),
                "rhs_support": session.words_json(&ball, &r.rhs_support),
                "counterexamples": session.words_json(&ball, &r.counterexamples),
            });
            if r.passed() {
                Output::Json(result)
            } else {
                Output::Violation(result, format!("covariance fails at {} basis vectors", r.counterexamples.len()))
            }
        }
        Command::Defect { words } => {
            let ball = session.ball(2)?;
            let graph = session.graph()?;
            let texts: Vec<&String> = if words.is_empty() { session.inputs.iter().collect() } else { words.iter().collect() };
            let family = if texts.is_empty() {
                graph.generators()
            } else {
                texts.iter().map(|t| io::parse_word(graph, t)).collect::<Result<Vec<_>>>()?
            };
            let r = ball.defect_product(&family)?;
            Output::Json(json!({
                "nonzero": r.nonzero,
                "identity_entry": r.identity_entry,
                "ball_size": ball.len(),
                "support": session.words_json(&ball, &r.support),
            }))
        }
        Command::Relcheck { family, sample_degree } => {
            let graph = session.graph()?;
            let rep = match family.as_str() {
                "toeplitz" => Representation::toeplitz(&session.ball(3)?)?,
                "one-dim" => Representation::one_dimensional(graph),
                path => {
                    let fam = io::parse_family(graph, &read_file(std::path::Path::new(path))?)?;
                    extend_representation(graph, fam, session.global.tolerance)?
                }
            };
            let opts = RelationCheckOptions {
                tolerance: session.global.tolerance,
                sample_degree: *sample_degree,
                max_ball: session.global.max_ball,
            };
            let report = check_graph_relations(graph, &rep, opts)?;
            let value = serde_json::to_value(&report).expect("serializable");
            if report.passed {
                Output::Json(value)
            } else {
                let first = &report.violations[0];
                Output::Violation(value, format!("{} on {}", first.relation, first.subject.join(", ")))
            }
        }
        Command::NormCurve { weights, min_degree } => {
            let graph = session.graph()?;
            let text = match weights.strip_prefix('@') {
                Some(path) => read_file(std::path::Path::new(path))?,
                None => weights.clone(),
            };
            let w = io::parse_weights(graph, &text)?;
            let ball = session.ball(8)?;
            let opts = NormOptions { tolerance: session.global.tolerance, ..NormOptions::default() };
            let mut csv = String::from("degree,ball_size,norm_estimate\n");
            for p in norm_curve(&ball, &w, *min_degree, opts)? {
                csv.push_str(&format!("{},{},{:.12}\n", p.degree, p.ball_size, p.norm_estimate));
            }
            Output::Text(csv)
        }
        Command::Verify { samples, max_syllables } => {
            let degree = session.global.max_degree.unwrap_or(3);
            let opts = VerifyOptions {
                samples: *samples,
                seed: session.global.seed,
                max_syllables: *max_syllables,
                ball_degree: degree,
                oracle_degree: 2 * degree,
                max_ball: session.global.max_ball,
            };
            let report = run_suite(session.graph()?, opts)?;
            let value = serde_json::to_value(&report).expect("serializable");
            if report.passed {
                Output::Json(value)
            } else {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
                Output::Violation(value, failed.join("; "))
            }
        }
    };
    Ok(out)
}

fn error_json(e: &Error) -> Value {
    json!({"ok": false, "error": {"kind": e.kind(), "detail": e.to_string()}})
}

/// Runs a parsed command line; returns the text to print and the exit code.
pub fn run(cli: Cli) -> (String, i32) {
    if let Some(n) = cli.global.threads {
        // A global pool can only be installed once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let prepared = (|| -> Result<Session> {
        let graph = cli.global.ctx.as_deref().map(load_context).transpose()?;
        let inputs = match &cli.global.input {
            Some(path) => read_file(path)?.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect(),
            None => Vec::new(),
        };
        Ok(Session { global: cli.global, graph, inputs })
    })();
    let result = prepared.and_then(|session| execute(&session, &cli.command));
    match result {
        Ok(Output::Json(v)) => (format!("{}\n", json!({"ok": true, "result": v})), 0),
        Ok(Output::Text(t)) => (t, 0),
        Ok(Output::Violation(v, detail)) => {
            let e = Error::RelationViolation(detail);
            let mut doc = error_json(&e);
            doc["result"] = v;
            (format!("{doc}\n"), 1)
        }
        Err(e) => (format!("{}\n", error_json(&e)), if e.is_input_error() { 2 } else { 1 }),
    }
}

/// Process entry point: parses arguments, runs, writes output, exits.
pub fn main() -> ! {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let doc = json!({"ok": false, "error": {"kind": "Usage", "detail": e.to_string().trim_end()}});
            println!("{doc}");
            std::process::exit(2);
        }
    };
    let out_path = cli.global.out.clone();
    let (text, mut code) = run(cli);
    match out_path {
        Some(path) => {
            if let Err(e) = fs::write(&path, &text) {
                println!("{}", error_json(&Error::Io(format!("{}: {e}", path.display()))));
                code = 2;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    std::process::exit(code)
}
