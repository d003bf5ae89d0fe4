//! CSV and JSON writers for batch results.
//!
//! CSV files are UTF-8 with a mandatory header row and LF line endings;
//! elements, generating sets and witnesses use the element grammar. JSON
//! summaries are pretty-printed with keys in a fixed order.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::genset::{GenSet, PresentationClass};
use crate::morphisms::AutomorphismTable;
use crate::presentations::{ConjectureReport, Counterexample, Family, Verdict, VerificationRecord};
use crate::wordlen::LambdaReport;

pub const LAMBDA_HEADER: [&str; 8] = [
    "n", "genset", "class", "lambda1", "lambda2", "diameter", "witness1", "witness2",
];

pub const VERIFY_EXTRA_HEADER: [&str; 3] = ["predicted_l1", "predicted_l2", "verdict"];

fn csv_writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink)
}

fn lambda_fields(class: PresentationClass, r: &LambdaReport) -> Vec<String> {
    vec![
        r.genset.n().to_string(),
        r.genset.to_string(),
        class.to_string(),
        r.lambda1.to_string(),
        r.lambda2.to_string(),
        r.diameter.to_string(),
        r.witness1_text(),
        r.witness2_text(),
    ]
}

/// One row per `(class, report)`.
pub fn write_lambda_csv<W: Write>(sink: W, rows: &[(PresentationClass, LambdaReport)]) -> Result<()> {
    let mut w = csv_writer(sink);
    w.write_record(LAMBDA_HEADER)?;
    for (class, r) in rows {
        w.write_record(lambda_fields(*class, r))?;
    }
    w.flush()?;
    Ok(())
}

/// Verification rows: the λ columns plus predictions and the verdict.
pub fn write_verification_csv<W: Write>(sink: W, records: &[VerificationRecord]) -> Result<()> {
    let mut w = csv_writer(sink);
    w.write_record(LAMBDA_HEADER.iter().chain(&VERIFY_EXTRA_HEADER))?;
    for rec in records {
        let mut fields = lambda_fields(rec.class, &rec.observed);
        fields.push(rec.predicted.lambda1.to_string());
        fields.push(rec.predicted.lambda2.to_string());
        fields.push(rec.verdict.to_string());
        w.write_record(fields)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per counterexample found by a sweep.
pub fn write_sweep_csv<W: Write>(sink: W, reports: &[ConjectureReport]) -> Result<()> {
    let mut w = csv_writer(sink);
    w.write_record(["conjecture", "n", "genset", "element", "observed", "bound", "detail"])?;
    for rep in reports {
        for c in &rep.counterexamples {
            let (element, observed, bound, detail) = match c {
                Counterexample::Lambda1 {
                    lambda1,
                    bound,
                    witness: (g, s),
                    ..
                } => (g.to_string(), *lambda1, *bound, format!("s={s}")),
                Counterexample::FlipLength {
                    flip,
                    flip_length,
                    max_rotation_length,
                    longest_rotation,
                    ..
                } => (
                    flip.to_string(),
                    *flip_length,
                    *max_rotation_length,
                    format!("longest rotation {longest_rotation}"),
                ),
            };
            w.write_record([
                rep.conjecture.to_string(),
                c.genset().n().to_string(),
                c.genset().to_string(),
                element,
                observed.to_string(),
                bound.to_string(),
                detail,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `map,element,image` rows; `map` numbers the tables so several fit in one
/// file.
pub fn write_automorphism_csv<W: Write>(sink: W, tables: &[AutomorphismTable]) -> Result<()> {
    let mut w = csv_writer(sink);
    w.write_record(["map", "element", "image"])?;
    for (i, t) in tables.iter().enumerate() {
        for (e, img) in t.rows() {
            w.write_record([i.to_string(), e.to_string(), img.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationEntry {
    pub genset: String,
    pub class: PresentationClass,
    pub predicted_l1: String,
    pub predicted_l2: String,
    pub lambda1: u32,
    pub lambda2: u32,
    pub verdict: Verdict,
}

/// JSON summary of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub n_range: (u32, u32),
    pub families: Vec<Family>,
    pub checked: usize,
    /// Failed exact values or proved bounds.
    pub violations: Vec<ViolationEntry>,
    /// Exceeded conjectured bounds; reported separately from violations.
    pub conjecture_counterexamples: Vec<ViolationEntry>,
    pub max_lambda1_by_n: BTreeMap<u32, u32>,
}

impl VerificationSummary {
    pub fn new(n_range: (u32, u32), families: Vec<Family>, records: &[VerificationRecord]) -> Self {
        let entry = |r: &VerificationRecord| ViolationEntry {
            genset: r.genset.describe(),
            class: r.class,
            predicted_l1: r.predicted.lambda1.to_string(),
            predicted_l2: r.predicted.lambda2.to_string(),
            lambda1: r.observed.lambda1,
            lambda2: r.observed.lambda2,
            verdict: r.verdict,
        };
        let mut max_lambda1_by_n = BTreeMap::new();
        for r in records {
            let e = max_lambda1_by_n.entry(r.n).or_insert(0);
            *e = r.observed.lambda1.max(*e);
        }
        VerificationSummary {
            n_range,
            families,
            checked: records.len(),
            violations: records
                .iter()
                .filter(|r| r.verdict == Verdict::Violation)
                .map(entry)
                .collect(),
            conjecture_counterexamples: records
                .iter()
                .filter(|r| r.verdict == Verdict::ConjectureCounterexample)
                .map(entry)
                .collect(),
            max_lambda1_by_n,
        }
    }
}

/// JSON summary of one or more conjecture sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub n_range: (u32, u32),
    pub families: Vec<Family>,
    pub checked: usize,
    pub violations: Vec<ViolationEntry>,
    pub max_lambda1_by_n: BTreeMap<u32, u32>,
    pub conjectures: Vec<ConjectureReport>,
}

impl SweepSummary {
    pub fn new(reports: Vec<ConjectureReport>) -> Self {
        let first = reports.first();
        SweepSummary {
            n_range: first.map_or((0, 0), |r| r.n_range),
            families: vec![Family::ThreeInv],
            checked: first.map_or(0, |r| r.checked),
            violations: Vec::new(),
            max_lambda1_by_n: first.map(|r| r.max_lambda1_by_n.clone()).unwrap_or_default(),
            conjectures: reports,
        }
    }
}

/// Pretty JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize>(mut sink: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut sink, value)?;
    sink.write_all(b"\n")?;
    Ok(())
}

/// One-line summary of a generating set for text output.
pub fn genset_line(s: &GenSet) -> String {
    format!("{} S={}", s.group(), s)
}
