//! `psc`: solve preference set constraint programs from the command line.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psc_core::aso::{aso_optimal_models, translate_aso};
use psc_core::engine::MAX_SUPPORT;
use psc_core::instances::{parse_edges, vertex_cover_program};
use psc_core::model::PscRef;
use psc_core::pp::{compile_formula, pp_indist, pp_prec, trajectories};
use psc_core::preference::{compare_preordered_set, preferred_among, pref_atoms, pref_set, verdict_matrix, weak_sum};
use psc_core::syntax::{
    parse_aso, parse_atom_set, parse_pp, parse_psc, write_psc, Diagnostic, ErrorKind, Parsed, SyntaxError,
};
use psc_core::{
    enumerate_stable, Atom, AtomSet, CompareVerdict, Error, OrderMode, PreorderAtom, Program,
    ProgramKind, DEFAULT_CAP,
};
use serde::Serialize;

use report::{atom_names, AsoReport, ModelEntry, PairVerdict, PpReport, SolveReport};

#[derive(Parser)]
#[command(name = "psc", version, about = "Stable models and preferences for set constraint programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate stable models and the preferred ones.
    Solve {
        input: PathBuf,
        /// Defaults to `ic` for pre-ordered programs and `w-is` for measure programs.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<OrderMode>,
        /// Print the verdict for every pair of stable models.
        #[arg(long)]
        enumerate_all: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Solve an answer set optimization program directly and through its translation.
    Aso {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare a preference formula with its compiled atom on trajectory pairs.
    Pp {
        formula: PathBuf,
        /// One pair of sets per line, as in `{a, b} {c}`. Every pair over
        /// the formula's desires when omitted.
        pairs: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Generate programs.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand)]
enum Gen {
    /// Covers of size below K, preferring those that contain the pivot.
    VertexCover {
        edges: PathBuf,
        k: usize,
        pivot: String,
    },
}

#[derive(Args)]
struct Common {
    /// Largest head support searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_CAP, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    cap: usize,
    /// Search past the cap, up to the engine's hard limit.
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

impl Common {
    fn cap(&self) -> usize {
        if self.force {
            MAX_SUPPORT
        } else {
            self.cap
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

fn parse_mode(s: &str) -> Result<OrderMode, String> {
    s.parse()
}

/// A run that ends without a report, with its exit code.
enum Failure {
    Parse(String),
    Semantic(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Semantic(_) => 3,
            Failure::Cap(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Semantic(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(format!("{e}; rerun with a larger --cap or --force")),
            other => Failure::Semantic(other.to_string()),
        }
    }
}

fn syntax_failure(path: &Path, e: SyntaxError) -> Failure {
    let text = e.diagnostics.iter().map(|d| format!("{}:{d}", path.display())).collect::<Vec<_>>().join("\n");
    match e.kind {
        ErrorKind::Parse => Failure::Parse(text),
        ErrorKind::Semantic => Failure::Semantic(text),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, r: Result<Parsed<T>, SyntaxError>) -> Result<T, Failure> {
    let p = r.map_err(|e| syntax_failure(path, e))?;
    for w in &p.warnings {
        eprintln!("{}:{w}", path.display());
    }
    Ok(p.value)
}

/// A report and whether it counts as success.
struct Outcome {
    text: String,
    code: u8,
}

fn render<R: Serialize + std::fmt::Display>(r: &R, format: Format) -> String {
    match format {
        Format::Human => r.to_string(),
        Format::Structured => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
    }
}

fn sets(models: &[AtomSet]) -> Vec<Vec<String>> {
    models.iter().map(atom_names).collect()
}

fn solve(input: &Path, mode: Option<OrderMode>, enumerate_all: bool, common: &Common) -> Result<Outcome, Failure> {
    let p: Program = parsed(input, parse_psc(&read(input)?))?;
    let mode = mode.unwrap_or_else(|| OrderMode::default_for(p.kind()));
    if !mode.applies_to(p.kind()) {
        return Err(Error::ModeMismatch { mode: mode.to_string(), kind: p.kind().to_string() }.into());
    }
    let models = enumerate_stable(&p, common.cap())?;
    let preferred = preferred_among(&p, &models, mode)?;
    let entries = models
        .iter()
        .map(|m| {
            let weak_sum = match p.kind() {
                ProgramKind::Measure => {
                    let active: Vec<_> = pref_atoms(&p, &pref_set(&p, m))
                        .into_iter()
                        .filter_map(|a| match a {
                            PscRef::Measure(a) => Some(a),
                            PscRef::Preorder(_) => None,
                        })
                        .collect();
                    Some(weak_sum(&active, m)?.to_string())
                }
                _ => None,
            };
            Ok(ModelEntry { atoms: atom_names(m), weak_sum })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let verdicts = if enumerate_all {
        let matrix = verdict_matrix(&p, &models, mode)?;
        Some(matrix.into_iter().map(|row| row.into_iter().map(|v| v.to_string()).collect()).collect())
    } else {
        None
    };
    let report =
        SolveReport { kind: p.kind().to_string(), mode: mode.to_string(), models: entries, preferred: sets(&preferred), verdicts };
    Ok(Outcome { text: render(&report, common.format), code: if models.is_empty() { 1 } else { 0 } })
}

fn aso(input: &Path, common: &Common) -> Result<Outcome, Failure> {
    let a = parsed(input, parse_aso(&read(input)?))?;
    let cap = common.cap();
    let gen = a.normal_gen()?;
    let answer_sets = enumerate_stable(&Program::from_normal(&gen), cap)?;
    let optimal = aso_optimal_models(&a, cap)?;
    let t = translate_aso::<f64>(&a)?;
    let translated = enumerate_stable(&t.program, cap)?;
    let preferred_ic = preferred_among(&t.program, &translated, OrderMode::Ic)?;
    let preferred_it = preferred_among(&t.program, &translated, OrderMode::It)?;
    let project = |ms: &[AtomSet]| -> Vec<AtomSet> {
        let mut out: Vec<AtomSet> = ms.iter().map(|m| t.project_unbarred(m)).collect();
        out.sort();
        out.dedup();
        out
    };
    let (projected_ic, projected_it) = (project(&preferred_ic), project(&preferred_it));
    let equal = projected_ic == optimal && projected_it == optimal;
    let report = AsoReport {
        answer_sets: answer_sets.len(),
        optimal: sets(&optimal),
        translated_models: translated.len(),
        preferred_ic: sets(&preferred_ic),
        preferred_it: sets(&preferred_it),
        projected_ic: sets(&projected_ic),
        projected_it: sets(&projected_it),
        equal,
    };
    let code = if answer_sets.is_empty() {
        1
    } else if !equal {
        5
    } else {
        0
    };
    Ok(Outcome { text: render(&report, common.format), code })
}

/// Splits `{a} {b, c}` into its two set literals.
fn split_pair(line: &str) -> Option<(&str, &str)> {
    let close = line.find('}')?;
    let (first, rest) = line.split_at(close + 1);
    Some((first, rest.trim()))
}

fn read_pairs(path: &Path) -> Result<Vec<(AtomSet, AtomSet)>, Failure> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Failure::Parse(format!("{}:{}: {msg}", path.display(), n + 1));
        let (a, b) = split_pair(line).ok_or_else(|| bad("expected two sets such as `{a} {b}`".into()))?;
        let set = |s: &str| parse_atom_set(s).map_err(|e| bad(e.diagnostics.iter().map(Diagnostic::to_string).collect()));
        out.push((set(a)?, set(b)?));
    }
    Ok(out)
}

fn pp(formula: &Path, pairs: Option<&Path>, format: Format) -> Result<Outcome, Failure> {
    let psi = parsed(formula, parse_pp(&read(formula)?))?;
    let desires = psi.desires();
    let atom: PreorderAtom = compile_formula(&psi)?;
    let pairs = match pairs {
        Some(path) => read_pairs(path)?,
        None => {
            let all: Vec<AtomSet> = trajectories(&desires).into_iter().collect();
            all.iter().flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone()))).collect()
        }
    };
    let mut verdicts = Vec::with_capacity(pairs.len());
    for (a, b) in &pairs {
        let (da, db) = (a.intersection(&desires), b.intersection(&desires));
        let verdict = compare_preordered_set(&[&atom], &da, &db)?;
        let prec_formula = pp_prec(&psi, a, b);
        let prec_compiled = verdict == CompareVerdict::FirstPreferred;
        let indist_formula = pp_indist(&psi, a, b);
        let indist_mutual_leq = atom.leq(&da, &db)? && atom.leq(&db, &da)?;
        let indist_neither_strict =
            !matches!(verdict, CompareVerdict::FirstPreferred | CompareVerdict::SecondPreferred);
        verdicts.push(PairVerdict {
            first: atom_names(a),
            second: atom_names(b),
            prec_formula,
            prec_compiled,
            indist_formula,
            indist_mutual_leq,
            indist_neither_strict,
            agree: prec_formula == prec_compiled && indist_formula == indist_mutual_leq,
        });
    }
    let count = |f: fn(&PairVerdict) -> bool| verdicts.iter().filter(|v| f(v)).count();
    let report = PpReport {
        formula: psc_core::syntax::write_pp(&psi),
        desires: atom_names(&desires),
        strict_agreement: count(|v| v.prec_formula == v.prec_compiled),
        mutual_leq_agreement: count(|v| v.indist_formula == v.indist_mutual_leq),
        neither_strict_agreement: count(|v| v.indist_formula == v.indist_neither_strict),
        pairs: verdicts,
    };
    let code = if report.all_agree() { 0 } else { 5 };
    Ok(Outcome { text: render(&report, format), code })
}

fn gen_vertex_cover(edges: &Path, k: usize, pivot: &str) -> Result<Outcome, Failure> {
    let edges = parse_edges(&read(edges)?).map_err(|e| Failure::Parse(format!("{}: {e}", edges.display())))?;
    let pivot = Atom::new(pivot).ok_or_else(|| Failure::Parse(format!("`{pivot}` is not a valid vertex name")))?;
    let p: Program = vertex_cover_program(&edges, k, &pivot)?;
    Ok(Outcome { text: write_psc(&p), code: 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { input, mode, enumerate_all, common } => solve(input, *mode, *enumerate_all, common),
        Command::Aso { input, common } => aso(input, common),
        Command::Pp { formula, pairs, format } => pp(formula, pairs.as_deref(), *format),
        Command::Gen(Gen::VertexCover { edges, k, pivot }) => gen_vertex_cover(edges, *k, pivot),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
