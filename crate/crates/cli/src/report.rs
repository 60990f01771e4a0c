//! Reports printed by the subcommands. The structured format is the JSON
//! encoding of these types.

use std::fmt;

use psc_core::AtomSet;
use serde::{Deserialize, Serialize};

pub fn atom_names(m: &AtomSet) -> Vec<String> {
    m.iter().map(|a| a.name().to_string()).collect()
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelEntry {
    pub atoms: Vec<String>,
    /// Sum of the measures the model activates; measure programs only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak_sum: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub kind: String,
    pub mode: String,
    pub models: Vec<ModelEntry>,
    pub preferred: Vec<Vec<String>>,
    /// `verdicts[i][j]` compares model `i` with model `j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<Vec<String>>>,
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "program: {}, mode: {}", self.kind, self.mode)?;
        writeln!(f, "stable models: {}", self.models.len())?;
        for (i, m) in self.models.iter().enumerate() {
            write!(f, "  M{}: {}", i + 1, braces(&m.atoms))?;
            if let Some(s) = &m.weak_sum {
                write!(f, "  sum {s}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "preferred: {}", self.preferred.len())?;
        for m in &self.preferred {
            writeln!(f, "  {}", braces(m))?;
        }
        if let Some(rows) = &self.verdicts {
            writeln!(f, "verdicts:")?;
            for (i, row) in rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i != j {
                        writeln!(f, "  M{} vs M{}: {v}", i + 1, j + 1)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsoReport {
    pub answer_sets: usize,
    pub optimal: Vec<Vec<String>>,
    pub translated_models: usize,
    pub preferred_ic: Vec<Vec<String>>,
    pub preferred_it: Vec<Vec<String>>,
    pub projected_ic: Vec<Vec<String>>,
    pub projected_it: Vec<Vec<String>>,
    /// Optimal models equal both projections.
    pub equal: bool,
}

impl fmt::Display for AsoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, title: &str, sets: &[Vec<String>]| -> fmt::Result {
            writeln!(f, "{title}: {}", sets.len())?;
            sets.iter().try_for_each(|s| writeln!(f, "  {}", braces(s)))
        };
        writeln!(f, "answer sets: {}", self.answer_sets)?;
        list(f, "optimal", &self.optimal)?;
        writeln!(f, "translated stable models: {}", self.translated_models)?;
        list(f, "preferred (ic)", &self.preferred_ic)?;
        list(f, "preferred (it)", &self.preferred_it)?;
        list(f, "projected (ic)", &self.projected_ic)?;
        list(f, "projected (it)", &self.projected_it)?;
        writeln!(f, "optimal = projected: {}", if self.equal { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub prec_formula: bool,
    pub prec_compiled: bool,
    pub indist_formula: bool,
    /// `≤` holds both ways in the compiled atom.
    pub indist_mutual_leq: bool,
    /// The compiled atom prefers neither.
    pub indist_neither_strict: bool,
    /// Strict verdicts agree and indistinguishability agrees with `indist_mutual_leq`.
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpReport {
    pub formula: String,
    pub desires: Vec<String>,
    pub pairs: Vec<PairVerdict>,
    pub strict_agreement: usize,
    pub mutual_leq_agreement: usize,
    pub neither_strict_agreement: usize,
}

impl PpReport {
    pub fn all_agree(&self) -> bool {
        self.pairs.iter().all(|p| p.agree)
    }
}

impl fmt::Display for PpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formula: {}", self.formula)?;
        writeln!(f, "desires: {}", braces(&self.desires))?;
        for p in &self.pairs {
            writeln!(
                f,
                "  {} vs {}: prec {}/{} indist {}/{}/{}{}",
                braces(&p.first),
                braces(&p.second),
                p.prec_formula,
                p.prec_compiled,
                p.indist_formula,
                p.indist_mutual_leq,
                p.indist_neither_strict,
                if p.agree { "" } else { "  DISAGREE" },
            )?;
        }
        let n = self.pairs.len();
        writeln!(f, "strict agreement: {}/{n}", self.strict_agreement)?;
        writeln!(f, "indistinguishable vs mutual <=: {}/{n}", self.mutual_leq_agreement)?;
        writeln!(f, "indistinguishable vs neither strict: {}/{n}", self.neither_strict_agreement)
    }
}
