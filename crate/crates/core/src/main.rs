use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use simwfa::decide::{decide_equiv, tropical_probe, Budget, DirectionOutcome, JointConstruction, Verdict};
use simwfa::io::{
    format_automaton, format_certificate, parse_table, read_automaton, read_certificate, read_chain, typed_chain,
    write_chain_evidence, write_joint_evidence, write_witness_evidence, AnyAutomaton, FileSemiring,
};
use simwfa::semiring::{validate_table_semiring, Semiring, Table};
use simwfa::simulation::{check_simulation, verify_chain, SimulationReport};
use simwfa::{with_automaton, with_pair, Automaton, Error, JointOutcome, Matrix, Word};

const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

/// Weighted finite automata: evaluation, simulations, joint automata and
/// equivalence checking with verifiable certificates.
///
/// Exit status: 0 pass/EQUIVALENT, 1 fail/INEQUIVALENT, 2 INCONCLUSIVE,
/// 64 usage error, 65 parse error, 70 internal error.
#[derive(Parser, Debug)]
#[command(name = "simwfa", version)]
struct Cli {
    /// Print one JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// TOML file with budget fields; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Print the effective budget and exit.
    #[arg(long)]
    explain_budget: bool,

    #[command(flatten)]
    budget: BudgetArgs,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Default)]
struct BudgetArgs {
    /// Longest word compared by the witness search.
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
    /// Longest simulation chain searched (finite semirings).
    #[arg(long, global = true)]
    max_chain_len: Option<usize>,
    /// Largest intermediate automaton in the chain search [default: m + n].
    #[arg(long, global = true)]
    max_intermediate_dim: Option<usize>,
    /// Candidates examined by each matrix search.
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    /// Iterations of the integer construction before giving up.
    #[arg(long, global = true)]
    integer_cap: Option<usize>,
    /// Largest finite entry tried by the tropical simulation search.
    #[arg(long, global = true)]
    tropical_entry_bound: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficient of a word (`ε` or `eps` for the empty word).
    Eval { automaton: PathBuf, word: String },
    /// Print the coefficients of all words up to a length, length-lex order.
    Enum {
        automaton: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Check a simulation certificate, with `[A B] X.sim`; without A and B
    /// the automata named in the certificate are used.
    CheckSim {
        #[arg(num_args = 1..=3, required = true, value_name = "FILES")]
        files: Vec<PathBuf>,
    },
    /// Verify a chain file, optionally against given endpoints `A B`.
    VerifyChain {
        chain: PathBuf,
        #[arg(num_args = 2, value_names = ["A", "B"])]
        endpoints: Vec<PathBuf>,
    },
    /// Build the joint automaton C with simulations C → A and C → B.
    Joint {
        a: PathBuf,
        b: PathBuf,
        /// Directory for A.wfa, B.wfa, C.wfa, X.sim, Y.sim and chain.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide equivalence within the budget and emit evidence.
    Decide {
        a: PathBuf,
        b: PathBuf,
        /// Directory for the evidence files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded witness and simulation search for tropical automata.
    ProbeTropical { a: PathBuf, b: PathBuf },
    /// Check every semiring axiom of a table file.
    ValidateSemiring { table: PathBuf },
}

/// Text and JSON renderings of a command result, plus its exit status.
struct Report {
    code: u8,
    text: String,
    json: Value,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::TableShape(_)
        | Error::TableAxioms(_)
        | Error::InvalidAutomaton(_)
        | Error::MalformedChain(_)
        | Error::UnknownLetter(_)
        | Error::NotInCarrier(_) => EXIT_PARSE,
        Error::Io { .. }
        | Error::DimensionMismatch { .. }
        | Error::SemiringMismatch { .. }
        | Error::AlphabetMismatch { .. }
        | Error::UnsupportedSemiring { .. }
        | Error::MiddleMismatch
        | Error::InvalidCertificate(_) => EXIT_USAGE,
        Error::Overflow(_) | Error::SelfCheck(_) => EXIT_INTERNAL,
    }
}

fn budget(cli: &Cli) -> Result<Budget, Error> {
    let mut b = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            toml::from_str(&text).map_err(|e| {
                let (line, column) = e
                    .span()
                    .map(|s| {
                        let before = &text[..s.start];
                        let line = before.matches('\n').count() + 1;
                        let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                        (line, column)
                    })
                    .unwrap_or((1, 1));
                Error::Parse(simwfa::error::ParseError::new(line, column, e.message().to_string()).in_file(path))
            })?
        }
        None => Budget::default(),
    };
    let f = &cli.budget;
    if let Some(v) = f.max_word_len {
        b.max_word_len = v;
    }
    if let Some(v) = f.max_chain_len {
        b.max_chain_len = v;
    }
    if let Some(v) = f.max_intermediate_dim {
        b.max_intermediate_dim = Some(v);
    }
    if let Some(v) = f.max_steps {
        b.max_steps = v;
    }
    if let Some(v) = f.integer_cap {
        b.integer_cap = v;
    }
    if let Some(v) = f.tropical_entry_bound {
        b.tropical_entry_bound = v;
    }
    Ok(b)
}

fn fmt_row<S: Semiring>(s: &S, v: &[S::Elem]) -> Vec<String> {
    v.iter().map(|e| s.format_elem(e)).collect()
}

fn matrix_json<S: Semiring>(x: &Matrix<S>) -> Value {
    json!(x.row_iter().map(|r| fmt_row(x.semiring(), r)).collect::<Vec<_>>())
}

fn word_json(w: &Word) -> String {
    w.letters().iter().collect()
}

fn eval<S: Semiring>(a: &Automaton<S>, word: &str) -> Result<Report, Error> {
    let w: Word = word.parse().map_err(|_| Error::InvalidAutomaton(format!("bad word {word:?}")))?;
    let c = a.semiring().format_elem(&a.behavior_coeff(&w)?);
    Ok(Report {
        code: 0,
        json: json!({ "word": word_json(&w), "coefficient": c }),
        text: c,
    })
}

fn enumerate<S: Semiring>(a: &Automaton<S>, max_len: usize) -> Result<Report, Error> {
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for item in a.coefficients(max_len) {
        let (w, c) = item?;
        let c = a.semiring().format_elem(&c);
        text.push(format!("{w}\t{c}"));
        rows.push(json!({ "word": word_json(&w), "coefficient": c }));
    }
    Ok(Report {
        code: 0,
        text: text.join("\n"),
        json: json!({ "max_len": max_len, "coefficients": rows }),
    })
}

fn check_sim<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>, cert: &simwfa::io::CertificateFile) -> Result<Report, Error> {
    let x = cert.matrix(a.semiring(), a.dim(), b.dim())?;
    Ok(match check_simulation(a, b, &x)? {
        SimulationReport::Pass => Report {
            code: 0,
            text: "pass".into(),
            json: json!({ "result": "pass" }),
        },
        SimulationReport::Fail(m) => Report {
            code: 1,
            text: format!("fail: {m}"),
            json: json!({ "result": "fail", "mismatch": m }),
        },
    })
}

fn cmd_check_sim(files: &[PathBuf]) -> Result<Report, Error> {
    let (a_path, b_path, cert) = match files {
        [x] => {
            let cert = read_certificate(x)?;
            let missing = || Error::InvalidCertificate(format!("{} names no source/target; pass A and B", x.display()));
            let a = cert.source.clone().ok_or_else(missing)?;
            let b = cert.target.clone().ok_or_else(missing)?;
            (a, b, cert)
        }
        [a, b, x] => (a.clone(), b.clone(), read_certificate(x)?),
        _ => {
            return Err(Error::InvalidCertificate(
                "expected `X.sim` or `A.wfa B.wfa X.sim`".into(),
            ))
        }
    };
    let a = read_automaton(&a_path)?;
    let b = read_automaton(&b_path)?;
    with_pair!(&a, &b, (a, b) => check_sim(a, b, &cert))
}

fn chain_report<S: FileSemiring>(
    _first: &Automaton<S>,
    cf: &simwfa::io::ChainFile,
    automata: Vec<AnyAutomaton>,
    endpoints: Option<(AnyAutomaton, AnyAutomaton)>,
) -> Result<Report, Error> {
    let chain = typed_chain::<S>(cf, automata)?;
    let (a, b) = match endpoints {
        Some((a, b)) => {
            let conv = |x: AnyAutomaton| {
                S::from_any(x).map_err(|o| Error::SemiringMismatch {
                    left: chain.automata[0].semiring().id(),
                    right: o.semiring_id(),
                })
            };
            (conv(a)?, conv(b)?)
        }
        None => (chain.automata[0].clone(), chain.automata[chain.automata.len() - 1].clone()),
    };
    let r = verify_chain(&chain, &a, &b)?;
    Ok(Report {
        code: if r.is_pass() { 0 } else { 1 },
        text: r.to_string(),
        json: json!({
            "result": if r.is_pass() { "pass" } else { "fail" },
            "links": chain.links.len(),
            "report": r.to_string(),
        }),
    })
}

fn cmd_verify_chain(path: &Path, endpoints: &[PathBuf]) -> Result<Report, Error> {
    let cf = read_chain(path)?;
    let automata = cf.automata.iter().map(|p| read_automaton(p)).collect::<Result<Vec<_>, _>>()?;
    let ends = match endpoints {
        [a, b] => Some((read_automaton(a)?, read_automaton(b)?)),
        _ => None,
    };
    let first = automata[0].clone();
    with_automaton!(&first, a0 => chain_report(a0, &cf, automata, ends))
}

fn joint<S: JointConstruction>(a: &Automaton<S>, b: &Automaton<S>, budget: &Budget, out: Option<&Path>) -> Result<Report, Error> {
    let s = a.semiring();
    match S::construct_joint(a, b, budget)? {
        JointOutcome::Joint(j) => {
            let mut text = vec![
                format!("mode: {}", j.mode),
                format!("dim: {}", j.automaton.dim()),
                format!("generators: {}", j.generators.len()),
                format!("iterations: {}", j.iterations),
            ];
            let mut files = Vec::new();
            match out {
                Some(dir) => {
                    files = write_joint_evidence(dir, a, b, &j)?;
                    text.extend(files.iter().map(|p| format!("wrote {}", p.display())));
                }
                None => {
                    text.push(format!("C:\n{}", format_automaton(&j.automaton).trim_end()));
                    text.push(format!("X (C -> A):\n{}", format_certificate(None, None, &j.x).trim_end()));
                    text.push(format!("Y (C -> B):\n{}", format_certificate(None, None, &j.y).trim_end()));
                }
            }
            Ok(Report {
                code: 0,
                text: text.join("\n"),
                json: json!({
                    "result": "joint",
                    "mode": j.mode.to_string(),
                    "dim": j.automaton.dim(),
                    "generators": j.generators.len(),
                    "iterations": j.iterations,
                    "kappa": fmt_row(s, j.automaton.initial().entries()),
                    "lambda": fmt_row(s, j.automaton.final_weights().entries()),
                    "x": matrix_json(&j.x),
                    "y": matrix_json(&j.y),
                    "files": files,
                }),
            })
        }
        JointOutcome::Inequivalent(w) => {
            let files = match out {
                Some(dir) => write_witness_evidence(dir, a, b, &w)?,
                None => Vec::new(),
            };
            let (lhs, rhs) = (s.format_elem(&w.lhs), s.format_elem(&w.rhs));
            Ok(Report {
                code: 1,
                text: format!("inequivalent: witness {} ({lhs} vs {rhs})", w.word),
                json: json!({ "result": "inequivalent", "word": word_json(&w.word), "lhs": lhs, "rhs": rhs, "files": files }),
            })
        }
        JointOutcome::CapExhausted { iterations, generators } => Ok(Report {
            code: 2,
            text: format!("no stabilization within {iterations} iterations ({generators} generators)"),
            json: json!({ "result": "cap-exhausted", "iterations": iterations, "generators": generators }),
        }),
    }
}

fn decide<S: JointConstruction>(a: &Automaton<S>, b: &Automaton<S>, budget: &Budget, out: Option<&Path>) -> Result<Report, Error> {
    let s = a.semiring();
    let verdict = decide_equiv(a, b, budget)?;
    let label = verdict.label();
    let (code, detail, extra, files) = match &verdict {
        Verdict::Equivalent(chain) => {
            let files = match out {
                Some(dir) => write_chain_evidence(dir, a, b, chain)?,
                None => Vec::new(),
            };
            let dirs: Vec<String> = chain.links.iter().map(|l| l.direction.to_string()).collect();
            (
                0,
                format!("chain of {} link(s): {}", chain.links.len(), dirs.join(", ")),
                json!({ "links": dirs, "dims": chain.automata.iter().map(Automaton::dim).collect::<Vec<_>>() }),
                files,
            )
        }
        Verdict::Inequivalent(w) => {
            let files = match out {
                Some(dir) => write_witness_evidence(dir, a, b, w)?,
                None => Vec::new(),
            };
            let (lhs, rhs) = (s.format_elem(&w.lhs), s.format_elem(&w.rhs));
            (
                1,
                format!("witness: {} ({lhs} vs {rhs})", w.word),
                json!({ "word": word_json(&w.word), "lhs": lhs, "rhs": rhs }),
                files,
            )
        }
        Verdict::Inconclusive(e) => (2, e.to_string(), json!(e), Vec::new()),
    };
    let mut text = vec![label.to_string(), detail];
    text.extend(files.iter().map(|p| format!("wrote {}", p.display())));
    Ok(Report {
        code,
        text: text.join("\n"),
        json: json!({ "verdict": label, "evidence": extra, "files": files, "budget": budget }),
    })
}

fn direction_json(d: &DirectionOutcome) -> Value {
    match d {
        DirectionOutcome::Found(x) => json!({ "outcome": "found", "matrix": matrix_json(x) }),
        DirectionOutcome::NoneWithinBound { candidates } => {
            json!({ "outcome": "none-within-bound", "candidates": candidates })
        }
        DirectionOutcome::BudgetExhausted { candidates } => {
            json!({ "outcome": "budget-exhausted", "candidates": candidates })
        }
    }
}

fn cmd_probe(a: &AnyAutomaton, b: &AnyAutomaton, budget: &Budget) -> Result<Report, Error> {
    let (AnyAutomaton::Tropical(a), AnyAutomaton::Tropical(b)) = (a, b) else {
        return Err(Error::UnsupportedSemiring {
            semiring: a.semiring_id(),
            operation: "probe-tropical",
            reason: "both automata must be over the tropical semiring",
        });
    };
    let r = tropical_probe(a, b, budget)?;
    let code = match r.summary() {
        simwfa::decide::ProbeSummary::WitnessFound => 1,
        simwfa::decide::ProbeSummary::SimulationFound => 0,
        simwfa::decide::ProbeSummary::NeitherWithinBudget => 2,
    };
    let witness = r.witness.as_ref().map(|w| {
        json!({ "word": word_json(&w.word), "lhs": w.lhs.to_string(), "rhs": w.rhs.to_string() })
    });
    Ok(Report {
        code,
        text: r.to_string(),
        json: json!({
            "summary": r.summary(),
            "witness": witness,
            "words_checked": r.words_checked,
            "max_word_len": r.max_word_len,
            "entry_bound": r.entry_bound,
            "forward": direction_json(&r.forward),
            "backward": direction_json(&r.backward),
            "proof": false,
        }),
    })
}

fn cmd_validate(path: &Path) -> Result<Report, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let t = parse_table(&text).map_err(|e| e.in_file(path))?;
    let violations = validate_table_semiring(&t);
    if violations.is_empty() {
        let flags = Table::new(t)?.flags();
        Ok(Report {
            code: 0,
            text: format!(
                "pass: all semiring axioms hold\nfinite: {}\nring: {}\nfield: {}\ncommutative: {}",
                flags.is_finite, flags.is_ring, flags.is_field, flags.is_commutative
            ),
            json: json!({ "result": "pass", "violations": [], "flags": flags }),
        })
    } else {
        let mut text = vec![format!("fail: {} violation(s)", violations.len())];
        text.extend(violations.iter().map(ToString::to_string));
        Ok(Report {
            code: 1,
            text: text.join("\n"),
            json: json!({ "result": "fail", "violations": violations }),
        })
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let budget = budget(cli)?;
    if cli.explain_budget {
        return Ok(Report {
            code: 0,
            text: budget.to_string(),
            json: json!(budget),
        });
    }
    let Some(command) = &cli.command else {
        return Err(Error::InvalidAutomaton("no subcommand given".into()));
    };
    match command {
        Command::Eval { automaton, word } => {
            let a = read_automaton(automaton)?;
            with_automaton!(&a, a => eval(a, word))
        }
        Command::Enum { automaton, max_len } => {
            let a = read_automaton(automaton)?;
            with_automaton!(&a, a => enumerate(a, *max_len))
        }
        Command::CheckSim { files } => cmd_check_sim(files),
        Command::VerifyChain { chain, endpoints } => cmd_verify_chain(chain, endpoints),
        Command::Joint { a, b, out } => {
            let (a, b) = (read_automaton(a)?, read_automaton(b)?);
            with_pair!(&a, &b, (a, b) => joint(a, b, &budget, out.as_deref()))
        }
        Command::Decide { a, b, out } => {
            let (a, b) = (read_automaton(a)?, read_automaton(b)?);
            with_pair!(&a, &b, (a, b) => decide(a, b, &budget, out.as_deref()))
        }
        Command::ProbeTropical { a, b } => {
            let (a, b) = (read_automaton(a)?, read_automaton(b)?);
            cmd_probe(&a, &b, &budget)
        }
        Command::ValidateSemiring { table } => cmd_validate(table),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if cli.command.is_none() && !cli.explain_budget {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json);
            } else if !r.text.is_empty() {
                println!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "exit": code }));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
