//! `freeknot` command-line tool.
//!
//! Exit codes: 0 decided / ok, 1 input error, 2 inconclusive, 3 budget or
//! bound exceeded, 4 certificate rejected.

mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use freeknot::decider::CertificateViolation;
use freeknot::moves::{random_walk, MoveScript};
use freeknot::pairing::{certificate_from_json, certificate_to_json, derived_diagram};
use freeknot::parity::parities;
use freeknot::{
    canonical_form, decide_slice, diagnose_certificate, find_move_sites, is_odd_diagram,
    mirror_certificate, oracle_decide, random_diagram, star_diagram, ChordDiagram, DecideError,
    SearchConfig, Verdict, VerdictClass,
};

use input::{read_certificate, read_diagram, read_document, InputError};

const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Parser)]
#[command(name = "freeknot", version)]
#[command(about = "Decide sliceness of odd free knots given as Gauss codes")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a non-crossing pairing
    Decide {
        /// Gauss code, `@path`, or `-` / omitted for stdin
        code: Option<String>,
        /// Allow odd chords as singletons
        #[arg(long)]
        no_singleton_pruning: bool,
        /// Allow pairs of chords with different parity
        #[arg(long)]
        no_parity_pruning: bool,
        /// Accept the first certificate any thread finds
        #[arg(long)]
        nondeterministic: bool,
        /// Maximum number of search nodes
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Disable the node budget
        #[arg(long, conflicts_with = "budget")]
        no_budget: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Decide by testing every pairing
    Oracle { code: Option<String> },
    /// Verify a certificate (JSON block list, or a JSON object with a `certificate` field)
    Check {
        code: String,
        /// Literal JSON, `-` for stdin, or a file path (optionally `@`-prefixed)
        certificate: String,
    },
    /// Gaussian parity of every chord
    Parity { code: Option<String> },
    /// Canonical form under rotation and reflection
    Canon { code: Option<String> },
    /// Generate diagrams
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Reidemeister moves
    Moves {
        #[command(subcommand)]
        action: MovesAction,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// `c0 .. c{n-1} c0 .. c{n-1}`
    Star { n: usize },
    /// Connected sum of a diagram with its mirror image
    SumMirror {
        code: Option<String>,
        /// Also emit the twin-pairing certificate
        #[arg(long)]
        certificate: bool,
    },
    /// Uniformly random diagram
    Random { n: usize, seed: u64 },
}

#[derive(Subcommand)]
enum MovesAction {
    /// List removal and third-move sites
    Sites { code: Option<String> },
    /// Random walk of moves, printed as a replayable script
    Walk {
        code: Option<String>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay a move script and check its recorded end
    Replay { script: String },
}

enum Failure {
    Input(String),
    Budget(String),
    Rejected(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        Failure::Budget(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Budget(_) => 3,
            Failure::Rejected(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) | Failure::Rejected(m) => m,
        }
    }
}

struct Output {
    json: Value,
    text: String,
    exit: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output {
            json,
            text,
            exit: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            if !text_requested() {
                let kind = e.kind().to_string();
                println!("{}", json!({ "error": kind }));
            }
            return ExitCode::from(1);
        }
    };
    let format = cli.format;
    match run(cli.command) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", out.json),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.exit)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            if format == Format::Json {
                let doc = match &failure {
                    Failure::Rejected(m) => json!({ "valid": false, "reason": m }),
                    _ => json!({ "error": failure.message() }),
                };
                println!("{doc}");
            }
            ExitCode::from(failure.code())
        }
    }
}

// Best effort for errors raised before the format flag is parsed.
fn text_requested() -> bool {
    let args: Vec<String> = std::env::args().collect();
    args.iter().any(|a| a == "--format=text")
        || args
            .windows(2)
            .any(|w| w[0] == "--format" && w[1] == "text")
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Decide {
            code,
            no_singleton_pruning,
            no_parity_pruning,
            nondeterministic,
            budget,
            no_budget,
            threads,
        } => {
            let d = read_diagram(code.as_deref())?;
            let cfg = SearchConfig {
                use_singleton_even_pruning: !no_singleton_pruning,
                use_equal_parity_pruning: !no_parity_pruning,
                deterministic_certificate: !nondeterministic,
                node_budget: (!no_budget).then_some(budget),
                threads: threads.max(1),
            };
            Ok(verdict_output(&d, &decide_slice(&d, &cfg)?))
        }
        Command::Oracle { code } => {
            let d = read_diagram(code.as_deref())?;
            Ok(verdict_output(&d, &oracle_decide(&d)?))
        }
        Command::Check { code, certificate } => {
            let d = read_diagram(Some(&code))?;
            let value = read_certificate(&certificate)?;
            let p = certificate_from_json(&d, &value).map_err(|e| {
                if e.is_violation() {
                    Failure::Rejected(e.to_string())
                } else {
                    Failure::Input(e.to_string())
                }
            })?;
            match diagnose_certificate(&d, &p) {
                Ok(()) => Ok(Output::ok(json!({ "valid": true }), "valid\n".into())),
                Err(v) => {
                    let reason = match &v {
                        CertificateViolation::LinkedPair(..) => format!("linked pair: {v}"),
                        CertificateViolation::ChordCount { .. } => format!("partition: {v}"),
                    };
                    Err(Failure::Rejected(reason))
                }
            }
        }
        Command::Parity { code } => {
            let d = read_diagram(code.as_deref())?;
            let par = parities(&d);
            let odd = is_odd_diagram(&d);
            let mut map = serde_json::Map::new();
            let mut text = String::new();
            for (i, p) in par.iter().enumerate() {
                map.insert(d.label(i), json!(p.to_string()));
                text.push_str(&format!("{} {}\n", d.label(i), p));
            }
            text.push_str(&format!("odd diagram: {odd}\n"));
            Ok(Output::ok(
                json!({ "parity": map, "odd_diagram": odd }),
                text,
            ))
        }
        Command::Canon { code } => {
            let d = read_diagram(code.as_deref())?;
            let c = canonical_form(&d);
            Ok(Output::ok(json!({ "canonical": c }), format!("{c}\n")))
        }
        Command::Gen { kind } => gen(kind),
        Command::Moves { action } => moves(action),
    }
}

fn verdict_output(d: &ChordDiagram, v: &Verdict) -> Output {
    let mut text = format!(
        "verdict: {}\nodd: {}\nexamined: {}\n",
        v.class().as_str(),
        v.odd,
        v.pairings_examined
    );
    if let Some(p) = v.certificate() {
        text.push_str(&format!("certificate: {}\n", p.describe(d)));
    }
    text.push('\n');
    text.push_str(&d.render_ascii());
    if let Some(p) = v.certificate() {
        text.push_str("\nderived:\n");
        text.push_str(&derived_diagram(d, p).diagram().render_ascii());
    }
    Output {
        json: v.to_json(d),
        text,
        exit: if v.class() == VerdictClass::Inconclusive {
            2
        } else {
            0
        },
    }
}

fn gen(kind: GenKind) -> Result<Output, Failure> {
    let code_output = |d: &ChordDiagram| {
        let code = d.serialize();
        Output::ok(json!({ "code": code }), format!("{code}\n"))
    };
    match kind {
        GenKind::Star { n } => Ok(code_output(&star_diagram(n))),
        GenKind::Random { n, seed } => Ok(code_output(&random_diagram(n, seed))),
        GenKind::SumMirror { code, certificate } => {
            let k = read_diagram(code.as_deref())?;
            let (d, p) = mirror_certificate(&k);
            let mut out = code_output(&d);
            if certificate {
                out.json["certificate"] = certificate_to_json(&d, &p);
                out.text.push_str(&format!("{}\n", p.describe(&d)));
            }
            Ok(out)
        }
    }
}

fn moves(action: MovesAction) -> Result<Output, Failure> {
    match action {
        MovesAction::Sites { code } => {
            let d = read_diagram(code.as_deref())?;
            let records: Vec<_> = find_move_sites(&d).iter().map(|s| s.to_record()).collect();
            let text = records
                .iter()
                .map(|r| format!("{}\n", serde_json::to_string(r).expect("records serialize")))
                .collect();
            Ok(Output::ok(json!(records), text))
        }
        MovesAction::Walk { code, steps, seed } => {
            let d = read_diagram(code.as_deref())?;
            let (end, script) = random_walk(&d, steps, seed);
            let json = serde_json::to_value(&script).expect("scripts serialize");
            Ok(Output::ok(json, format!("{end}\n")))
        }
        MovesAction::Replay { script } => {
            let script: MoveScript = serde_json::from_value(read_document(&script)?)
                .map_err(|e| Failure::Input(format!("bad script: {e}")))?;
            let end = script.replay().map_err(|e| Failure::Input(e.to_string()))?;
            let code = end.serialize();
            Ok(Output::ok(
                json!({ "code": code, "moves": script.moves.len() }),
                format!("{code}\n"),
            ))
        }
    }
}
