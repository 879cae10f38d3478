//! Exhaustive sweeps of the minimum-α statements:
//!
//! * every 2-connected graph of order `n` has `α(G) ≥ α(C_n)`, with equality
//!   exactly on `C_n` and the chorded families `H1` (odd `n`) or `H2`, `H3`
//!   (even `n`);
//! * every θ-graph of order `n` has `α(G) ≥ α(C_n)`, with equality exactly
//!   on the single-chord members `H1(i)`, `H2(i)`, `H3(i)`.
//!
//! Floating point only filters: a graph whose α is within
//! [`Margins::alpha_filter`] of `α(C_n)` is then matched structurally against
//! the family. A numerically equal graph with no structural match, or a
//! family match whose gap exceeds [`Margins::strictness`], is flagged.

use std::collections::{BTreeSet, HashMap};
use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalCode;
use crate::connectivity::{hamiltonian_cycle, is_biconnected, theta_lengths};
use crate::enumeration::{enumerate_graphs, Predicate};
use crate::error::{Error, Result};
use crate::families::{
    enumerate_theta, equality_family, realize, single_chord_family, FamilyKind, FamilyMember, FamilySpec,
};
use crate::graph::Graph;
use crate::rewiring::{rewire, strictness_report};
use crate::spectra::{alpha_cycle_closed_form, fiedler_from_spectrum, laplacian_spectrum};

pub const SCHEMA_VERSION: u32 = 1;
pub const THEOREM1_MAX_ORDER: usize = 9;
pub const THEOREM2_MAX_ORDER: usize = 40;
const CHECKPOINT_CHUNK: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Margins {
    /// `|α(G) − α(C_n)|` at or below this sends `G` to the structural match.
    pub alpha_filter: f64,
    /// A family match must have `|gap|` at or below this, and a rewired
    /// non-Hamiltonian graph must drop by more than this.
    pub strictness: f64,
    /// Allowed undershoot `α(C_n) − α(G)` before the lower bound fails.
    pub bound_slack: f64,
}

impl Default for Margins {
    fn default() -> Self {
        Margins {
            alpha_filter: 1e-8,
            strictness: 1e-10,
            bound_slack: 1e-10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    Cycle,
    H1,
    H2,
    H3,
    NotExtremal,
    /// Numerically at the minimum but structurally unexplained, or the reverse.
    Flagged,
}

impl ClassLabel {
    pub fn is_extremal(self) -> bool {
        matches!(
            self,
            ClassLabel::Cycle | ClassLabel::H1 | ClassLabel::H2 | ClassLabel::H3
        )
    }

    fn of_kind(kind: FamilyKind) -> Self {
        match kind {
            FamilyKind::Cycle => ClassLabel::Cycle,
            FamilyKind::H1 => ClassLabel::H1,
            FamilyKind::H2 => ClassLabel::H2,
            FamilyKind::H3 => ClassLabel::H3,
            FamilyKind::ThetaLengths => ClassLabel::NotExtremal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualityClass {
    pub label: ClassLabel,
    pub matched_spec: Option<FamilySpec>,
    /// `α(G) − α(C_n)`.
    pub alpha_gap: f64,
}

/// Labels `gap` given a structural matcher that is only consulted inside
/// the numeric band.
fn label_gap<F>(gap: f64, margins: &Margins, matcher: F) -> Result<EqualityClass>
where
    F: FnOnce() -> Result<Option<FamilySpec>>,
{
    if gap.abs() > margins.alpha_filter {
        return Ok(EqualityClass {
            label: ClassLabel::NotExtremal,
            matched_spec: None,
            alpha_gap: gap,
        });
    }
    let matched = matcher()?;
    let label = match &matched {
        Some(spec) if gap.abs() <= margins.strictness => ClassLabel::of_kind(spec.kind),
        _ => ClassLabel::Flagged,
    };
    Ok(EqualityClass {
        label,
        matched_spec: matched,
        alpha_gap: gap,
    })
}

fn match_family(g: &Graph, family: &[FamilyMember]) -> Result<Option<FamilySpec>> {
    let code = crate::canon::canonical_form(g)?;
    Ok(family.iter().find(|m| m.code == code).map(|m| m.spec.clone()))
}

/// Classifies a 2-connected graph against the equality clause for its order.
pub fn classify_equality(g: &Graph) -> Result<EqualityClass> {
    classify_equality_with(g, &Margins::default())
}

pub fn classify_equality_with(g: &Graph, margins: &Margins) -> Result<EqualityClass> {
    if !is_biconnected(g) {
        return Err(Error::NotBiconnected);
    }
    let n = g.order();
    let alpha = laplacian_spectrum(g)?.eigenvalues[1];
    let gap = alpha - alpha_cycle_closed_form(n)?;
    label_gap(gap, margins, || {
        if n < 4 {
            // K3 is C3.
            return Ok(Some(FamilySpec::cycle(n)?));
        }
        match_family(g, &equality_family(n)?)
    })
}

/// One swept graph. `id` is the canonical code (graph6 of the canonical
/// representative) for the 2-connected sweep, and the `theta:l1,l2,l3`
/// spec for the θ sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportEntry {
    pub id: String,
    pub n: usize,
    pub alpha: f64,
    pub gap: f64,
    pub label: ClassLabel,
    pub matched_spec: Option<FamilySpec>,
    pub hamiltonian: bool,
    /// `α(G) − α(G')` from the rewiring, for non-Hamiltonian graphs.
    pub rewire_alpha_drop: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rewire_problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LowerBound {
        id: String,
        alpha: f64,
        alpha_cycle: f64,
    },
    EqualitySet {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlaggedCase {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub theorem: String,
    pub n: usize,
    pub margins: Margins,
    pub graph_count: usize,
    pub min_alpha: f64,
    pub alpha_cycle: f64,
    /// Members of the expected equality set, as entry ids.
    pub expected_equality: Vec<String>,
    pub entries: Vec<ReportEntry>,
    pub flagged: Vec<FlaggedCase>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_secs: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.flagged.is_empty()
    }

    /// The first failure, naming the offending graph.
    pub fn check(&self) -> std::result::Result<(), String> {
        if let Some(v) = self.violations.first() {
            return Err(match v {
                Violation::LowerBound {
                    id,
                    alpha,
                    alpha_cycle,
                } => {
                    format!(
                        "n={}: {id} has alpha {alpha} below alpha(C_n) {alpha_cycle}",
                        self.n
                    )
                }
                Violation::EqualitySet { missing, unexpected } => format!(
                    "n={}: equality set mismatch, missing {missing:?}, unexpected {unexpected:?}",
                    self.n
                ),
            });
        }
        if let Some(f) = self.flagged.first() {
            return Err(format!("n={}: flagged {}: {}", self.n, f.id, f.reason));
        }
        Ok(())
    }

    pub fn extremal_ids(&self) -> BTreeSet<String> {
        self.entries
            .iter()
            .filter(|e| e.label.is_extremal())
            .map(|e| e.id.clone())
            .collect()
    }

    /// Pretty JSON; the runtime field is included only when set.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn without_runtime(&self) -> Self {
        VerificationReport {
            runtime_secs: None,
            ..self.clone()
        }
    }

    fn finish(&mut self, margins: &Margins) {
        self.graph_count = self.entries.len();
        self.min_alpha = self.entries.iter().map(|e| e.alpha).fold(f64::INFINITY, f64::min);
        for e in &self.entries {
            if e.alpha < self.alpha_cycle - margins.bound_slack {
                self.violations.push(Violation::LowerBound {
                    id: e.id.clone(),
                    alpha: e.alpha,
                    alpha_cycle: self.alpha_cycle,
                });
            }
            if e.label == ClassLabel::Flagged {
                self.flagged.push(FlaggedCase {
                    id: e.id.clone(),
                    reason: format!(
                        "gap {:e} with structural match {:?}",
                        e.gap,
                        e.matched_spec.as_ref().map(ToString::to_string)
                    ),
                });
            }
            if !e.rewire_problems.is_empty() {
                self.flagged.push(FlaggedCase {
                    id: e.id.clone(),
                    reason: e.rewire_problems.join("; "),
                });
            }
        }
        let expected: BTreeSet<String> = self.expected_equality.iter().cloned().collect();
        let found = self.extremal_ids();
        let missing: Vec<String> = expected.difference(&found).cloned().collect();
        let unexpected: Vec<String> = found.difference(&expected).cloned().collect();
        if !missing.is_empty() || !unexpected.is_empty() {
            self.violations
                .push(Violation::EqualitySet { missing, unexpected });
        }
    }
}

fn theorem1_entry(
    graph: &Graph,
    id: String,
    alpha_cycle: f64,
    family: &[FamilyMember],
    margins: &Margins,
) -> Result<ReportEntry> {
    let spectrum = laplacian_spectrum(graph)?;
    let fiedler = fiedler_from_spectrum(&spectrum)?;
    let alpha = fiedler.alpha;
    let gap = alpha - alpha_cycle;
    let class = label_gap(gap, margins, || match_family(graph, family))?;
    let hamiltonian = hamiltonian_cycle(graph)?.is_some();
    let (rewire_alpha_drop, rewire_problems) = if hamiltonian {
        (None, Vec::new())
    } else {
        let report = strictness_report(graph)?;
        (Some(report.alpha_drop), report.problems)
    };
    Ok(ReportEntry {
        id,
        n: graph.order(),
        alpha,
        gap,
        label: class.label,
        matched_spec: class.matched_spec,
        hamiltonian,
        rewire_alpha_drop,
        rewire_problems,
    })
}

/// Sweeps all 2-connected graphs of order `n`.
pub fn verify_theorem_1(n: usize, margins: &Margins) -> Result<VerificationReport> {
    verify_theorem_1_resumable(n, margins, &[], |_| Ok(()))
}

/// As [`verify_theorem_1`], reusing `prior` entries (matched by id) and
/// handing every newly computed entry to `sink` in code order, chunk by
/// chunk, so an interrupted sweep can be resumed from what `sink` saved.
pub fn verify_theorem_1_resumable<F>(
    n: usize,
    margins: &Margins,
    prior: &[ReportEntry],
    mut sink: F,
) -> Result<VerificationReport>
where
    F: FnMut(&ReportEntry) -> Result<()>,
{
    if !(4..=THEOREM1_MAX_ORDER).contains(&n) {
        return Err(Error::OrderLimit {
            what: "2-connected sweep (4..=9)",
            order: n,
            limit: THEOREM1_MAX_ORDER,
        });
    }
    let started = Instant::now();
    let alpha_cycle = alpha_cycle_closed_form(n)?;
    let family = equality_family(n)?;
    let graphs = enumerate_graphs(n, Predicate::Biconnected)?;
    let known: HashMap<&str, &ReportEntry> = prior.iter().map(|e| (e.id.as_str(), e)).collect();

    let mut entries = Vec::with_capacity(graphs.len());
    for chunk in graphs.chunks(CHECKPOINT_CHUNK) {
        let fresh: Vec<Option<Result<ReportEntry>>> = chunk
            .par_iter()
            .map(|e| {
                let id = e.code.to_graph6();
                if known.contains_key(id.as_str()) {
                    None
                } else {
                    Some(theorem1_entry(&e.graph, id, alpha_cycle, &family, margins))
                }
            })
            .collect();
        for (item, computed) in chunk.iter().zip(fresh) {
            match computed {
                Some(entry) => {
                    let entry = entry?;
                    sink(&entry)?;
                    entries.push(entry);
                }
                None => entries.push((*known[item.code.to_graph6().as_str()]).clone()),
            }
        }
    }

    let mut report = VerificationReport {
        schema: SCHEMA_VERSION,
        theorem: "t1".into(),
        n,
        margins: *margins,
        graph_count: 0,
        min_alpha: f64::INFINITY,
        alpha_cycle,
        expected_equality: family.iter().map(|m| m.code.to_graph6()).collect(),
        entries,
        flagged: Vec::new(),
        violations: Vec::new(),
        runtime_secs: None,
    };
    report.finish(margins);
    report.runtime_secs = Some(started.elapsed().as_secs_f64());
    Ok(report)
}

/// Sweeps all θ-graphs of order `n`. Length triples are complete invariants
/// for θ-graphs, so structural matching compares triples.
pub fn verify_theorem_2_order(n: usize, margins: &Margins) -> Result<VerificationReport> {
    if !(4..=THEOREM2_MAX_ORDER).contains(&n) {
        return Err(Error::OrderLimit {
            what: "theta sweep (4..=40)",
            order: n,
            limit: THEOREM2_MAX_ORDER,
        });
    }
    let started = Instant::now();
    let alpha_cycle = alpha_cycle_closed_form(n)?;
    let mut chords: Vec<(FamilySpec, [usize; 3])> = Vec::new();
    for spec in single_chord_family(n)? {
        let triple = theta_lengths(&realize(&spec)?)
            .ok_or_else(|| Error::Defect(format!("{spec} is not a theta-graph")))?;
        chords.push((spec, triple));
    }
    let thetas = enumerate_theta(n)?;
    let entries: Vec<ReportEntry> = thetas
        .par_iter()
        .map(|spec| -> Result<ReportEntry> {
            let graph = realize(spec)?;
            let triple = [spec.indices[0], spec.indices[1], spec.indices[2]];
            let spectrum = laplacian_spectrum(&graph)?;
            let fiedler = fiedler_from_spectrum(&spectrum)?;
            let gap = fiedler.alpha - alpha_cycle;
            let class = label_gap(gap, margins, || {
                Ok(chords.iter().find(|(_, t)| *t == triple).map(|(s, _)| s.clone()))
            })?;
            // A θ-graph has a spanning cycle iff one of its paths is a chord.
            let hamiltonian = triple[0] == 1;
            let (rewire_alpha_drop, rewire_problems) = if hamiltonian {
                (None, Vec::new())
            } else {
                let cert = rewire(&graph, &fiedler)?;
                let drop = cert.alpha_drop();
                let mut problems = Vec::new();
                if !cert.chain_holds() {
                    problems.push("quadratic-form chain fails".to_string());
                }
                if drop <= margins.strictness {
                    problems.push(format!("alpha drop {drop:e} within the strictness margin"));
                }
                (Some(drop), problems)
            };
            Ok(ReportEntry {
                id: spec.to_string(),
                n,
                alpha: fiedler.alpha,
                gap,
                label: class.label,
                matched_spec: class.matched_spec,
                hamiltonian,
                rewire_alpha_drop,
                rewire_problems,
            })
        })
        .collect::<Result<_>>()?;

    let expected_equality = chords
        .iter()
        .map(|(_, t)| FamilySpec::theta(*t).map(|s| s.to_string()))
        .collect::<Result<BTreeSet<_>>>()?
        .into_iter()
        .collect();
    let mut report = VerificationReport {
        schema: SCHEMA_VERSION,
        theorem: "t2".into(),
        n,
        margins: *margins,
        graph_count: 0,
        min_alpha: f64::INFINITY,
        alpha_cycle,
        expected_equality,
        entries,
        flagged: Vec::new(),
        violations: Vec::new(),
        runtime_secs: None,
    };
    report.finish(margins);
    report.runtime_secs = Some(started.elapsed().as_secs_f64());
    Ok(report)
}

/// θ sweep for every `4 ≤ n ≤ n_max`.
pub fn verify_theorem_2(n_max: usize, margins: &Margins) -> Result<Vec<VerificationReport>> {
    if n_max > THEOREM2_MAX_ORDER {
        return Err(Error::OrderLimit {
            what: "theta sweep (4..=40)",
            order: n_max,
            limit: THEOREM2_MAX_ORDER,
        });
    }
    (4..=n_max).map(|n| verify_theorem_2_order(n, margins)).collect()
}

pub const CSV_COLUMNS: [&str; 9] = [
    "n",
    "canonical_code",
    "alpha",
    "alpha_cycle",
    "gap",
    "class_label",
    "matched_spec",
    "hamiltonian",
    "rewire_alpha_drop",
];

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    canonical_code: String,
    alpha: f64,
    alpha_cycle: f64,
    gap: f64,
    class_label: ClassLabel,
    matched_spec: Option<String>,
    hamiltonian: bool,
    rewire_alpha_drop: Option<f64>,
}

/// Writes rows (no header) for `entries` in the fixed column order.
pub fn write_csv_rows<W: Write>(out: W, entries: &[ReportEntry], alpha_cycle: f64) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for e in entries {
        w.serialize(CsvRow {
            n: e.n,
            canonical_code: e.id.clone(),
            alpha: e.alpha,
            alpha_cycle,
            gap: e.gap,
            class_label: e.label,
            matched_spec: e.matched_spec.as_ref().map(ToString::to_string),
            hamiltonian: e.hamiltonian,
            rewire_alpha_drop: e.rewire_alpha_drop,
        })
        .map_err(|err| Error::Defect(format!("csv write: {err}")))?;
    }
    w.flush()
        .map_err(|err| Error::Defect(format!("csv flush: {err}")))?;
    Ok(())
}

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

/// Full CSV document for a report.
pub fn report_to_csv(report: &VerificationReport) -> String {
    let mut buf = Vec::new();
    buf.extend_from_slice(csv_header().as_bytes());
    buf.push(b'\n');
    write_csv_rows(&mut buf, &report.entries, report.alpha_cycle).expect("in-memory csv");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Reads entries back from a checkpoint CSV (with header). Rewiring problems
/// other than a missing strict drop are not stored and come back empty.
pub fn read_csv_entries<R: Read>(input: R, margins: &Margins) -> Result<Vec<ReportEntry>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let mut out = Vec::new();
    for row in r.deserialize::<CsvRow>() {
        let row = row.map_err(|err| Error::Defect(format!("csv read: {err}")))?;
        let matched_spec = row.matched_spec.as_deref().map(str::parse).transpose()?;
        let mut rewire_problems = Vec::new();
        if let Some(drop) = row.rewire_alpha_drop {
            if drop <= margins.strictness {
                rewire_problems.push(format!("alpha drop {drop:e} within the strictness margin"));
            }
        }
        out.push(ReportEntry {
            id: row.canonical_code,
            n: row.n,
            alpha: row.alpha,
            gap: row.gap,
            label: row.class_label,
            matched_spec,
            hamiltonian: row.hamiltonian,
            rewire_alpha_drop: row.rewire_alpha_drop,
            rewire_problems,
        });
    }
    Ok(out)
}

/// Parses a canonical id back to its representative (2-connected sweep ids).
pub fn graph_of_id(id: &str) -> Result<Graph> {
    Ok(CanonicalCode::from_graph6(id)?.to_graph())
}
