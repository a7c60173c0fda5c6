use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ccgq::category::{Category, Feature};
use ccgq::compose::{compose, compose_table, display_string, render_table, ComposeOptions};
use ccgq::derive::{default_goals, parse_with, tokenize, ParseOptions};
use ccgq::harness::{
    bundled_problems, evaluate, load_fracas_xml, load_qsem, lower_problem_quiet, QType,
};
use ccgq::hol::{print_hol, Term};
use ccgq::lexicon::{load_lexicon, load_overrides, parse_overrides, Lexicon, BUNDLED_OVERRIDES};
use ccgq::lower::{lower_statement, parse_fol, print_fol, question_body, to_tptp, Fol};
use ccgq::prove::{prove_traced, ProofBudget};

#[derive(Parser)]
#[command(
    name = "ccgq",
    version,
    about = "Parse, compose, lower and answer questions over premises"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Lexicon file (tab-separated) replacing the bundled one.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Semtag override table replacing the bundled one.
    #[arg(long, global = true)]
    overrides: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 200)]
    budget_instantiations: usize,
    #[arg(long, global = true, default_value_t = 40)]
    budget_depth: usize,
    #[arg(long, global = true, default_value_t = 2000)]
    budget_timeout_ms: u64,
    /// Keep every derivation, including ones with the same meaning.
    #[arg(long, global = true)]
    all_derivations: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derivations of a sentence.
    Parse { sentence: String },
    /// Print the display string and the normalized term of a sentence.
    Compose {
        sentence: String,
        /// Also print every node's term.
        #[arg(long)]
        table: bool,
    },
    /// Lower sentences to first-order logic; the last one is the goal.
    Lower {
        #[arg(required = true)]
        sentences: Vec<String>,
        /// Write a TPTP problem to this file.
        #[arg(long)]
        tptp_out: Option<PathBuf>,
    },
    /// Prove a goal from premises, both given as first-order formula files.
    Prove {
        premises: PathBuf,
        goal: PathBuf,
        /// Print the search trace.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a problem file (the bundled suite when omitted).
    Eval {
        file: Option<PathBuf>,
        /// Read the file as FraCaS XML.
        #[arg(long)]
        fracas: bool,
        /// Only run problems of this type.
        #[arg(long)]
        qtype: Option<String>,
        /// Write one TPTP file per problem into this directory.
        #[arg(long)]
        tptp_out: Option<PathBuf>,
        /// Print each problem's stage trace.
        #[arg(long)]
        trace: bool,
    },
}

type CliResult = Result<(), String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn lexicon(c: &Common) -> Result<Lexicon, String> {
    let mut lex = match &c.lexicon {
        Some(p) => load_lexicon(p).map_err(|e| e.to_string())?,
        None => Lexicon::bundled(),
    };
    lex.overrides = match &c.overrides {
        Some(p) => load_overrides(p).map_err(|e| e.to_string())?,
        None if c.lexicon.is_some() => {
            parse_overrides(BUNDLED_OVERRIDES).map_err(|e| e.to_string())?
        }
        None => lex.overrides,
    };
    Ok(lex)
}

fn budget(c: &Common) -> Result<ProofBudget, String> {
    if c.budget_instantiations == 0 || c.budget_depth == 0 || c.budget_timeout_ms == 0 {
        return Err("budget values must be positive".into());
    }
    Ok(ProofBudget {
        max_quantifier_instantiations: c.budget_instantiations,
        max_branch_depth: c.budget_depth,
        timeout_ms: c.budget_timeout_ms,
    })
}

fn run(cli: Cli) -> CliResult {
    let c = &cli.common;
    let opts = ParseOptions {
        all_derivations: c.all_derivations,
        ..ParseOptions::default()
    };
    match cli.command {
        Command::Parse { sentence } => {
            let lex = lexicon(c)?;
            let r = parse_with(&tokenize(&sentence), &lex, &goals_for(&sentence), &opts)
                .map_err(|e| e.to_string())?;
            match c.format {
                Format::Json => {
                    let trees: Vec<_> = r.trees.iter().map(|t| t.to_json()).collect();
                    println!(
                        "{}",
                        pretty(&json!({"derivations": trees, "synthesized": r.synthesized}))
                    );
                }
                Format::Text => {
                    if !r.synthesized.is_empty() {
                        println!("synthesized: {}", r.synthesized.join(" "));
                    }
                    for (i, t) in r.trees.iter().enumerate() {
                        println!("# derivation {}\n{}\n{}", i + 1, t.bracketed(), t.render());
                    }
                }
            }
        }
        Command::Compose { sentence, table } => {
            let lex = lexicon(c)?;
            let r = parse_with(&tokenize(&sentence), &lex, &goals_for(&sentence), &opts)
                .map_err(|e| e.to_string())?;
            let mut out = Vec::new();
            for t in &r.trees {
                let term = compose(t).map_err(|e| e.to_string())?;
                let rows = if table {
                    Some(compose_table(t, ComposeOptions::default()).map_err(|e| e.to_string())?)
                } else {
                    None
                };
                out.push((display_string(t), term, rows));
            }
            match c.format {
                Format::Json => {
                    let v: Vec<_> = out
                        .iter()
                        .map(|(d, t, _)| json!({"display": d, "term": print_hol(t)}))
                        .collect();
                    println!("{}", pretty(&json!(v)));
                }
                Format::Text => {
                    for (d, t, rows) in &out {
                        println!("display: {d}\nterm:    {}", print_hol(t));
                        if let Some(rows) = rows {
                            print!("{}", render_table(rows));
                        }
                    }
                }
            }
        }
        Command::Lower {
            sentences,
            tptp_out,
        } => {
            let lex = lexicon(c)?;
            let mut formulas = Vec::new();
            for s in &sentences {
                let r = parse_with(&tokenize(s), &lex, &goals_for(s), &opts)
                    .map_err(|e| format!("{s}: {e}"))?;
                let term: Term = compose(&r.trees[0]).map_err(|e| format!("{s}: {e}"))?;
                let f = match question_body(&term) {
                    Ok(b) => b.body,
                    Err(_) => lower_statement(&term).map_err(|e| format!("{s}: {e}"))?,
                };
                formulas.push(f);
            }
            emit_fol(c.format, &formulas);
            if let Some(path) = tptp_out {
                let (goal, premises) = formulas.split_last().expect("at least one sentence");
                write_file(&path, &to_tptp(premises, goal))?;
            }
        }
        Command::Prove {
            premises,
            goal,
            trace,
        } => {
            let prem = read_formulas(&premises)?;
            let goals = read_formulas(&goal)?;
            let [goal] = goals.as_slice() else {
                return Err(format!("{} must hold exactly one formula", goal.display()));
            };
            let (o, steps) = prove_traced(&prem, goal, &budget(c)?);
            match c.format {
                Format::Json => println!(
                    "{}",
                    pretty(&serde_json::to_value(&o).expect("serializable"))
                ),
                Format::Text => {
                    println!(
                        "{} (instantiations {}, branches {}, rounds {}{})",
                        if o.proved() { "Proved" } else { "GaveUp" },
                        o.instantiations,
                        o.branches,
                        o.rounds,
                        o.reason
                            .map(|r| format!(", reason {r:?}"))
                            .unwrap_or_default()
                    );
                    if trace {
                        for s in steps {
                            println!("{s}");
                        }
                    }
                }
            }
        }
        Command::Eval {
            file,
            fracas,
            qtype,
            tptp_out,
            trace,
        } => {
            let lex = lexicon(c)?;
            let problems = match (&file, fracas) {
                (None, _) => bundled_problems(),
                (Some(p), true) => load_fracas_xml(p).map_err(|e| e.to_string())?,
                (Some(p), false) => load_qsem(p).map_err(|e| e.to_string())?,
            };
            let filter = match qtype {
                Some(q) => {
                    Some(QType::from_name(&q).ok_or_else(|| format!("unknown question type {q}"))?)
                }
                None => None,
            };
            let (report, runs) = evaluate(&problems, &lex, &budget(c)?, filter);
            match c.format {
                Format::Json => println!("{}", report.render_json()),
                Format::Text => {
                    if trace {
                        for r in &runs {
                            println!("== {}\n{}", r.id, r.render_trace());
                        }
                    }
                    print!("{}", report.render_text());
                }
            }
            if let Some(dir) = tptp_out {
                std::fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
                for p in problems
                    .iter()
                    .filter(|p| filter.is_none_or(|q| p.qtype == q))
                {
                    if let Ok(l) = lower_problem_quiet(p, &lex) {
                        write_file(
                            &dir.join(format!("{}.p", p.id)),
                            &to_tptp(&l.premises, &l.body.body),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Questions end in `?`, statements in `.`; otherwise any goal is allowed.
fn goals_for(sentence: &str) -> Vec<Category> {
    let s = sentence.trim_end();
    if s.ends_with('?') {
        vec![Category::s_bar(Feature::Wq), Category::s_bar(Feature::Pol)]
    } else if s.ends_with('.') || s.ends_with('!') {
        vec![Category::s_bar(Feature::Dcl)]
    } else {
        default_goals()
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit_fol(format: Format, formulas: &[Fol]) {
    match format {
        Format::Json => {
            let v: Vec<String> = formulas.iter().map(print_fol).collect();
            println!("{}", pretty(&json!(v)));
        }
        Format::Text => formulas.iter().for_each(|f| println!("{}", print_fol(f))),
    }
}

fn write_file(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

/// One formula per non-empty line; `#` starts a comment line.
fn read_formulas(path: &Path) -> Result<Vec<Fol>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = parse_fol(line).map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?;
        if !f.is_closed() {
            return Err(format!(
                "{}:{}: formula is not closed",
                path.display(),
                i + 1
            ));
        }
        out.push(f);
    }
    Ok(out)
}
