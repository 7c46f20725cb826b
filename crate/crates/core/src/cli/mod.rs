//! The `topos-lens` command line.

pub mod corpus;
pub mod demo;
pub mod load;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;
use thiserror::Error;

use crate::formula::print;
use crate::kripke;
use crate::realizability::{self as eff, Budget, Bounds, Code};
use crate::sheaf;
use crate::translate::{translate, Target, TranslationStyle};
use crate::zariski::{self as zar, linalg, DualPoly, PoolPolicy};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Translate(#[from] crate::translate::TranslateError),
    #[error(transparent)]
    Kripke(#[from] kripke::KripkeError),
    #[error(transparent)]
    Sheaf(#[from] sheaf::SheafError),
    #[error(transparent)]
    Realize(#[from] eff::RealizeError),
    #[error(transparent)]
    Zariski(#[from] zar::ZariskiError),
}

#[derive(Debug, Parser)]
#[command(name = "topos-lens", version, about = "Read formulas through Kripke models, sheaves, realizability and the Zariski topos")]
pub struct Cli {
    /// Seed for anything randomized.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print results as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print only the verdict line.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unfold a formula into the forcing clause of a topos.
    Translate {
        /// eff, sheaf or zar.
        #[arg(long)]
        topos: Target,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value_t = 4)]
        indent: usize,
    },
    /// Evaluate a formula at the worlds of a Kripke model.
    CheckKripke {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        /// Only this world; all worlds otherwise.
        #[arg(long)]
        world: Option<String>,
    },
    /// Evaluate a formula on the opens of a sheaf model.
    CheckSheaf {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        /// Points of the open, comma separated; the whole space otherwise.
        #[arg(long)]
        open: Option<String>,
    },
    /// Check a realizer, by library name or Gödel number, up to bounds.
    CheckEff {
        #[arg(long)]
        realizer: String,
        #[arg(long)]
        formula: PathBuf,
        /// Naturals up to this bound instantiate universal quantifiers.
        #[arg(long, default_value_t = 100)]
        bound: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Total machines sampled for function quantifiers.
        #[arg(long)]
        machines: Option<usize>,
    },
    /// Search small Gödel numbers for a realizer.
    SearchEff {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value_t = 1_000)]
        max_index: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Decide forcing at a finite-dimensional stage, exploring later stages.
    CheckZar {
        #[arg(long)]
        stage: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Differentiate a polynomial with dual numbers.
    Derive {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Run a named demonstration, `all`, or list them.
    Demo {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Check the formula corpus on generated models.
    Corpus {
        /// kripke or sheaf.
        #[arg(long, default_value = "kripke")]
        target: corpus::CorpusTarget,
        #[arg(long, default_value_t = 200)]
        models: usize,
    },
}

/// What a command produced: a verdict, detail lines and a JSON value.
pub struct Report {
    pub pass: bool,
    pub verdict: String,
    pub lines: Vec<String>,
    pub json: serde_json::Value,
}

impl Report {
    fn new(pass: bool, verdict: impl Into<String>) -> Self {
        Report {
            pass,
            verdict: verdict.into(),
            lines: Vec::new(),
            json: serde_json::Value::Null,
        }
    }

    fn lines(mut self, lines: Vec<String>) -> Self {
        self.lines = lines;
        self
    }

    fn json(mut self, v: serde_json::Value) -> Self {
        self.json = v;
        self
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Translate { topos, formula, indent } => {
            let f = load::translate_formula(&load::formula_text(formula)?, *topos)
                .map_err(|e| CliError::Parse(format!("{}: {e}", formula.display())))?;
            let text = translate(&f, &TranslationStyle::new(*topos).with_indent(*indent))?;
            Ok(Report::new(true, text.trim_end())
                .json(json!({"topos": topos.to_string(), "formula": print(&f), "translation": text})))
        }
        Command::CheckKripke { model, formula, world } => {
            let m = load::kripke_model(model)?;
            let f = load::formula(formula, &load::kripke_signature(&m))?;
            let worlds: Vec<String> = match world {
                Some(w) if m.worlds.contains(w) => vec![w.clone()],
                Some(w) => return Err(CliError::Usage(format!("no world `{w}`"))),
                None => m.worlds.clone(),
            };
            let mut results = Vec::new();
            for w in &worlds {
                results.push((w.clone(), kripke::eval(&m, w, &f, &kripke::Env::new())?));
            }
            let pass = results.iter().all(|(_, v)| *v);
            let failing: Vec<&str> = results.iter().filter(|(_, v)| !v).map(|(w, _)| w.as_str()).collect();
            let verdict = if pass {
                format!("forced at {}", worlds.join(", "))
            } else {
                format!("not forced at {}", failing.join(", "))
            };
            Ok(Report::new(pass, verdict)
                .lines(results.iter().map(|(w, v)| format!("{w} ⊩ {}: {v}", print(&f))).collect())
                .json(json!({"formula": print(&f), "worlds": results.iter().map(|(w, v)| json!({"world": w, "forced": v})).collect::<Vec<_>>()})))
        }
        Command::CheckSheaf { model, formula, open } => {
            let m = load::sheaf_model(model)?;
            let f = load::formula(formula, &load::sheaf_signature(&m))?;
            let u = match open {
                None => m.space.full(),
                Some(names) => {
                    let names: Vec<&str> = names.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                    m.space.open_of(&names)?
                }
            };
            let env = sheaf::Env::new();
            let forced = m.forces(u, &f, &env)?;
            let largest = m.largest_open_forcing(&f, &env)?;
            let shown = m.space.show(u);
            Ok(Report::new(forced, format!("{shown} ⊩ {}: {forced}", print(&f)))
                .lines(vec![format!(
                    "largest open forcing it: {} (dense: {})",
                    m.space.show(largest),
                    sheaf::is_dense(&m.space, largest)
                )])
                .json(json!({"formula": print(&f), "open": shown, "forced": forced, "largest_open": m.space.show(largest)})))
        }
        Command::CheckEff {
            realizer,
            formula,
            bound,
            budget,
            machines,
        } => {
            let f = load::formula(formula, &load::effective_signature())?;
            let e = match realizer.parse::<BigUint>() {
                Ok(n) => Code(n),
                Err(_) => eff::library_realizer(realizer)?,
            };
            let mut bounds = Bounds::new(*bound);
            if let Some(k) = machines {
                bounds = bounds.with_machines(*k);
            }
            let v = eff::realizes(&e, &f, Budget(*budget), bounds)?;
            Ok(Report::new(v.is_realized(), demo::summarize_eff(&v))
                .json(serde_json::to_value(&v).unwrap_or_default()))
        }
        Command::SearchEff {
            formula,
            max_index,
            budget,
            bound,
        } => {
            let f = load::formula(formula, &load::effective_signature())?;
            let r = eff::search_realizer(&f, *max_index, Budget(*budget), Bounds::new(*bound));
            Ok(Report::new(r.found.is_some(), r.report.clone()).json(serde_json::to_value(&r).unwrap_or_default()))
        }
        Command::CheckZar { stage, formula, depth } => {
            let s = load::stage(stage)?;
            let f = load::formula(formula, &load::ring_signature(&s))?;
            let v = zar::forces_zar(&s, &f, *depth, &PoolPolicy::default())?;
            Ok(Report::new(v.is_forced(), format!("{}: {}", s.describe(), demo::summarize_zar(&v)))
                .lines(v.transcript().to_vec())
                .json(serde_json::to_value(&v).unwrap_or_default()))
        }
        Command::Derive { poly, at, order } => {
            let p = DualPoly::parse(poly)?;
            let x = linalg::parse_rational(at).ok_or_else(|| CliError::Usage(format!("`{at}` is not a rational")))?;
            let d = zar::derivative(&p, &x, *order)?;
            let shown = linalg::show_rational(&d);
            let expanded = zar::dual_numbers(order + 1).show(&p.eval_dual(&x, order + 1));
            Ok(Report::new(true, shown.clone())
                .lines(vec![format!("p({at} + ε) = {expanded}")])
                .json(json!({"poly": p.to_string(), "at": at, "order": order, "value": shown})))
        }
        Command::Demo { name, list } => run_demos(name.as_deref(), *list),
        Command::Corpus { target, models } => {
            let r = corpus::run_corpus(*target, *models, cli.seed);
            let mut lines: Vec<String> = r
                .failures
                .iter()
                .map(|f| format!("FAIL {} on model {} at {}", f.entry, f.model_seed, f.location))
                .collect();
            lines.extend(r.errors.iter().map(|e| format!("ERROR {e}")));
            for c in &r.classical {
                lines.push(if c.refuted_by.is_empty() {
                    format!("{}: no counter-model", c.entry)
                } else {
                    format!("{}: refuted by {}", c.entry, c.refuted_by.join(", "))
                });
            }
            for (name, k) in &r.non_theorems {
                lines.push(format!("{name}: refuted on {k} of {} models", r.models));
            }
            let verdict = format!(
                "{} theorem checks on {} {} models, {} failures",
                r.theorem_checks,
                r.models,
                r.target,
                r.failures.len()
            );
            Ok(Report::new(r.passed(), verdict).lines(lines).json(serde_json::to_value(&r).unwrap_or_default()))
        }
    }
}

fn run_demos(name: Option<&str>, list: bool) -> Result<Report, CliError> {
    let all = demo::demos();
    if list || name.is_none() {
        let lines = all.iter().map(|d| format!("{:<18} [{}] {}", d.name, d.topic, d.description)).collect();
        let names: Vec<&str> = all.iter().map(|d| d.name).collect();
        return Ok(Report::new(true, format!("{} demos", all.len())).lines(lines).json(json!(names)));
    }
    let chosen: Vec<demo::DemoEntry> = match name {
        Some("all") => all,
        Some(n) => vec![demo::find(n).ok_or_else(|| CliError::Usage(format!("no demo named `{n}`; try --list")))?],
        None => unreachable!(),
    };
    let mut lines = Vec::new();
    let mut results = Vec::new();
    let mut pass = true;
    for d in &chosen {
        let out = (d.run)();
        pass &= out.pass;
        lines.push(format!("== {} [{}]: {}", d.name, d.topic, d.description));
        lines.extend(out.transcript.iter().cloned());
        lines.push(format!("{}: {}", d.name, if out.pass { "pass" } else { "FAIL" }));
        results.push(json!({"name": d.name, "topic": d.topic, "pass": out.pass, "transcript": out.transcript}));
    }
    let passed = results.iter().filter(|r| r["pass"] == true).count();
    Ok(Report::new(pass, format!("{passed}/{} demos pass", chosen.len()))
        .lines(lines)
        .json(json!(results)))
}

/// Parses arguments, runs the command and prints the result.
/// Exit status 0 on a positive verdict, 1 on a negative one, 2 on errors.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match execute(&cli) {
        Ok(r) => {
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&json!({"pass": r.pass, "verdict": r.verdict, "result": r.json})).unwrap_or_default())
            } else if cli.quiet {
                writeln!(stdout, "{}", r.verdict)
            } else {
                r.lines.iter().try_for_each(|l| writeln!(stdout, "{l}")).and_then(|_| writeln!(stdout, "{}", r.verdict))
            };
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
