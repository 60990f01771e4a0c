//! Program builders for concrete problems.

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::model::{Family, Head, Measure, MeasureAtom, Program, Rule, ScAtom};
use crate::scalar::{Extended, Scalar};

/// Reads an edge list: one `u v` pair per line, `%` comments.
pub fn parse_edges(text: &str) -> Result<Vec<(Atom, Atom)>> {
    let mut edges = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts[..] else {
            return Err(Error::InvalidGraph(format!("line {}: expected two vertices", n + 1)));
        };
        let vertex = |name: &str| {
            Atom::new(name)
                .ok_or_else(|| Error::InvalidGraph(format!("line {}: `{name}` is not a valid vertex name", n + 1)))
        };
        edges.push((vertex(u)?, vertex(v)?));
    }
    Ok(edges)
}

/// The vertices the edges touch.
pub fn vertices(edges: &[(Atom, Atom)]) -> AtomSet {
    edges.iter().flat_map(|(u, v)| [u.clone(), v.clone()]).collect()
}

/// The measure program for covers with fewer than `k` vertices that
/// prefer covers containing `pivot`: one rule `⟨{u,v}, {{u},{v}}⟩` per
/// edge and a measure head over all vertices with family `|U| < k` and
/// value 0 when the pivot is in `U`, 1 otherwise.
///
/// Each edge rule admits exactly one endpoint, so the stable models are
/// the vertex sets meeting every edge in exactly one endpoint.
pub fn vertex_cover_program<S: Scalar>(edges: &[(Atom, Atom)], k: usize, pivot: &Atom) -> Result<Program<S>> {
    if k == 0 {
        return Err(Error::InvalidGraph("the size bound must be at least 1".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (u, v) in edges {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop on `{u}`")));
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if !seen.insert(key) {
            return Err(Error::InvalidGraph(format!("edge `{u} {v}` appears twice")));
        }
    }
    let all = vertices(edges);
    if !all.contains(pivot) {
        return Err(Error::PivotNotInGraph { pivot: pivot.clone() });
    }
    let mut rules = Vec::with_capacity(edges.len() + 1);
    for (u, v) in edges {
        let base: AtomSet = [u.clone(), v.clone()].into_iter().collect();
        let family = Family::extensional([[u.clone()].into_iter().collect(), [v.clone()].into_iter().collect()]);
        rules.push(Rule::fact(Head::Sc(ScAtom::new(base, family)?)));
    }
    let sc = ScAtom::new(all, Family::Card { lo: 0, hi: k - 1 })?;
    let measure = Measure::Indicator {
        pivot: pivot.clone(),
        if_in: Extended::Finite(S::zero()),
        if_out: Extended::Finite(S::from_count(1)),
    };
    rules.push(Rule::fact(Head::Measure(MeasureAtom::new(sc, measure)?)));
    Program::new(rules, AtomSet::new())
}
