//! Command-line front end: argument parsing, validation into a [`RunConfig`],
//! and dispatch with a fixed exit-status contract.
//!
//! | status | meaning                                                  |
//! |--------|----------------------------------------------------------|
//! | 0      | clean run                                                |
//! | 1      | domain error, or an exact/proved prediction was violated |
//! | 2      | usage error                                              |
//! | 3      | a conjecture counterexample was found                    |
//!
//! Output is rendered into a buffer and written in one piece, so the bytes
//! produced never depend on `--jobs`.

use std::fmt::Write as _;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::genset::{classify, GenSet, PresentationClass};
use crate::group::DihedralElement;
use crate::morphisms::{
    all_relation_preserving_maps, check_length_transfer, find_relation_preserving_map, AutomorphismTable,
};
use crate::presentations::{sweep_capped, verify_family_capped, ConjectureReport, Counterexample, Family, Verdict};
use crate::report::{
    genset_line, write_automorphism_csv, write_json, write_lambda_csv, write_sweep_csv, write_verification_csv,
    SweepSummary, VerificationSummary,
};
use crate::wordlen::{export_cayley, LambdaReport, LengthTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

/// Largest `n` for single-instance commands unless overridden.
pub const DEFAULT_SINGLE_CAP: u32 = 4096;
/// Largest `n` for range commands unless overridden.
pub const DEFAULT_RANGE_CAP: u32 = crate::presentations::DEFAULT_SWEEP_CAP;
/// Environment variable that overrides both caps.
pub const HARD_CAP_ENV: &str = "DLAMBDA_HARD_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "dlambda",
    version,
    about = "Word lengths and conjugation bounds in dihedral groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute λ₁, λ₂ and the diameter of one set (or of a whole family)
    Lambda,
    /// Classify a generating set and report its subgroup orders
    Classify,
    /// Check closed-form predictions for a family over an n range
    Verify,
    /// Sweep the three-reflection conjectures over an n range
    Sweep {
        #[arg(long, value_enum, default_value = "all")]
        conjecture: ConjectureChoice,
    },
    /// Search for generator bijections that extend to automorphisms
    Automorphism {
        /// Target generator (repeatable); the source set comes from --gen
        #[arg(long = "target", value_name = "ELEMENT")]
        target: Vec<String>,
        /// List every valid bijection instead of the first
        #[arg(long)]
        all: bool,
    },
    /// Write the Cayley graph in DOT format
    Export,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Group parameter of D_n
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true)]
    pub n_min: Option<u32>,
    #[arg(long, global = true)]
    pub n_max: Option<u32>,
    /// Generator in the element grammar, e.g. f, r^2, r^3*f (repeatable)
    #[arg(long = "gen", value_name = "ELEMENT", global = true, allow_hyphen_values = true)]
    pub gens: Vec<String>,
    #[arg(long, global = true)]
    pub family: Option<Family>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Write output here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: logical CPUs)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConjectureChoice {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSource {
    Single(GenSet),
    Family { family: Family, n_min: u32, n_max: u32 },
}

/// A validated command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Lambda(LambdaSource),
    Classify(GenSet),
    Verify {
        family: Family,
        n_min: u32,
        n_max: u32,
    },
    Sweep {
        conjectures: Vec<u8>,
        n_min: u32,
        n_max: u32,
    },
    Automorphism {
        source: GenSet,
        target: GenSet,
        all: bool,
    },
    Export(GenSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub task: Task,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    /// Upper limit on `n` for range commands.
    pub range_cap: u32,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_elements(raw: &[String]) -> Result<Vec<DihedralElement>> {
    raw.iter().map(|g| g.parse()).collect()
}

impl RunConfig {
    /// Validates parsed arguments. `cap_override` replaces both the
    /// single-instance and the range cap.
    pub fn from_cli(cli: &Cli, cap_override: Option<u32>) -> Result<RunConfig> {
        let c = &cli.common;
        let single_cap = cap_override.unwrap_or(DEFAULT_SINGLE_CAP);
        let range_cap = cap_override.unwrap_or(DEFAULT_RANGE_CAP);

        let single = |gens: &[String]| -> Result<GenSet> {
            let n = c.n.ok_or_else(|| usage("--n is required"))?;
            if n > single_cap {
                return Err(usage(format!("--n {n} exceeds the cap {single_cap}")));
            }
            if gens.is_empty() {
                return Err(usage("at least one --gen is required"));
            }
            GenSet::new(n, parse_elements(gens)?)
        };
        let range = || -> Result<(u32, u32)> {
            let (lo, hi) = match (c.n_min, c.n_max, c.n) {
                (None, None, Some(n)) => (n, n),
                (lo, Some(hi), None) => (lo.unwrap_or(3), hi),
                (_, _, Some(_)) => return Err(usage("use either --n or --n-min/--n-max")),
                (_, None, None) => return Err(usage("--n-max is required")),
            };
            if lo < 3 || lo > hi || hi > range_cap {
                return Err(usage(format!(
                    "n range [{lo}, {hi}] must satisfy 3 <= n-min <= n-max <= {range_cap}"
                )));
            }
            Ok((lo, hi))
        };

        let (task, allowed, default) = match &cli.command {
            Command::Lambda => {
                let source = match c.family {
                    Some(family) if c.gens.is_empty() => {
                        let (n_min, n_max) = range()?;
                        LambdaSource::Family { family, n_min, n_max }
                    }
                    Some(_) => return Err(usage("--family and --gen are mutually exclusive")),
                    None => LambdaSource::Single(single(&c.gens)?),
                };
                (
                    Task::Lambda(source),
                    &[OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json][..],
                    OutputFormat::Text,
                )
            }
            Command::Classify => (
                Task::Classify(single(&c.gens)?),
                &[OutputFormat::Text, OutputFormat::Json][..],
                OutputFormat::Text,
            ),
            Command::Verify => {
                let (n_min, n_max) = range()?;
                let family = c.family.unwrap_or(Family::All);
                (
                    Task::Verify { family, n_min, n_max },
                    &[OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json][..],
                    OutputFormat::Text,
                )
            }
            Command::Sweep { conjecture } => {
                let (n_min, n_max) = range()?;
                let conjectures = match conjecture {
                    ConjectureChoice::One => vec![1],
                    ConjectureChoice::Two => vec![2],
                    ConjectureChoice::All => vec![1, 2],
                };
                (
                    Task::Sweep {
                        conjectures,
                        n_min,
                        n_max,
                    },
                    &[OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json][..],
                    OutputFormat::Text,
                )
            }
            Command::Automorphism { target, all } => {
                if target.is_empty() {
                    return Err(usage("at least one --target is required"));
                }
                let source = single(&c.gens)?;
                let target = GenSet::new(source.n(), parse_elements(target)?)?;
                (
                    Task::Automorphism {
                        source,
                        target,
                        all: *all,
                    },
                    &[OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json][..],
                    OutputFormat::Text,
                )
            }
            Command::Export => (
                Task::Export(single(&c.gens)?),
                &[OutputFormat::Dot][..],
                OutputFormat::Dot,
            ),
        };
        let format = c.format.unwrap_or(default);
        if !allowed.contains(&format) {
            return Err(usage(
                format!("--format {format:?} is not supported by this command").to_lowercase(),
            ));
        }
        if c.jobs == Some(0) {
            return Err(usage("--jobs must be at least 1"));
        }
        Ok(RunConfig {
            task,
            format,
            out: c.out.clone(),
            jobs: c.jobs,
            range_cap,
        })
    }
}

/// Maps an error to its exit status.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn report_error(err: &Error, sink: &mut dyn Write) -> i32 {
    let _ = writeln!(sink, "error: {}: {}", err.name(), err);
    exit_code(err)
}

/// Parses `args` (including the program name), validates, and runs.
pub fn main_with<I, T>(args: I, hard_cap: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let cap = match hard_cap.map(|v| v.trim().parse::<u32>()) {
        None => None,
        Some(Ok(v)) if v >= 3 => Some(v),
        Some(_) => return report_error(&usage(format!("{HARD_CAP_ENV} must be an integer >= 3")), err),
    };
    match RunConfig::from_cli(&cli, cap) {
        Ok(config) => run(&config, out, err),
        Err(e) => report_error(&e, err),
    }
}

/// Executes a validated configuration and returns the process status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match config.jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| execute(config)),
            Err(e) => Err(usage(format!("cannot start {k} worker threads: {e}"))),
        },
        None => execute(config),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => return report_error(&e, err),
    };
    let written = match &config.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(&outcome.body)),
        None => out.write_all(&outcome.body).and_then(|_| out.flush()),
    };
    if let Err(e) = written {
        return report_error(&Error::SinkWriteFailure(e), err);
    }
    if !outcome.diagnostics.is_empty() {
        let _ = err.write_all(outcome.diagnostics.as_bytes());
    }
    outcome.status
}

struct Outcome {
    body: Vec<u8>,
    diagnostics: String,
    status: i32,
}

impl Outcome {
    fn clean(body: Vec<u8>) -> Self {
        Outcome {
            body,
            diagnostics: String::new(),
            status: EXIT_OK,
        }
    }
}

fn text(s: String) -> Vec<u8> {
    s.into_bytes()
}

fn execute(config: &RunConfig) -> Result<Outcome> {
    let format = config.format;
    match &config.task {
        Task::Lambda(source) => run_lambda(source, format, config.range_cap),
        Task::Classify(s) => run_classify(s, format),
        Task::Verify { family, n_min, n_max } => run_verify(*family, *n_min, *n_max, format, config.range_cap),
        Task::Sweep {
            conjectures,
            n_min,
            n_max,
        } => run_sweep(conjectures, *n_min, *n_max, format, config.range_cap),
        Task::Automorphism { source, target, all } => run_automorphism(source, target, *all, format),
        Task::Export(s) => {
            let table = LengthTable::compute(s)?;
            let mut body = Vec::new();
            export_cayley(&table, &mut body)?;
            Ok(Outcome::clean(body))
        }
    }
}

fn run_lambda(source: &LambdaSource, format: OutputFormat, cap: u32) -> Result<Outcome> {
    use rayon::prelude::*;

    let sets: Vec<GenSet> = match source {
        LambdaSource::Single(s) => vec![s.clone()],
        LambdaSource::Family { family, n_min, n_max } => {
            if *n_max > cap {
                return Err(usage(format!("--n-max {n_max} exceeds the cap {cap}")));
            }
            (*n_min..=*n_max).flat_map(|n| family.candidates(n)).collect()
        }
    };
    let keep_all = matches!(source, LambdaSource::Single(_));
    let rows: Vec<(PresentationClass, LambdaReport)> = sets
        .par_iter()
        .map(|s| -> Result<Option<(PresentationClass, LambdaReport)>> {
            let class = classify(s).map(|c| c.class).or_else(|e| match e {
                Error::UnsupportedCardinality { .. } => Ok(PresentationClass::GeneratingOutsideFamilies),
                other => Err(other),
            })?;
            let wanted = match source {
                LambdaSource::Family { family, .. } => family.matches(class),
                LambdaSource::Single(_) => true,
            };
            if !(keep_all || wanted) {
                return Ok(None);
            }
            Ok(Some((class, LambdaReport::compute(s)?)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut body = Vec::new();
    match format {
        OutputFormat::Csv => write_lambda_csv(&mut body, &rows)?,
        OutputFormat::Json => {
            let value: Vec<serde_json::Value> = rows
                .iter()
                .map(|(class, r)| {
                    serde_json::json!({
                        "n": r.genset.n(),
                        "genset": r.genset,
                        "class": class,
                        "lambda1": r.lambda1,
                        "lambda2": r.lambda2,
                        "diameter": r.diameter,
                        "witness1": r.witness1,
                        "witness2": r.witness2,
                    })
                })
                .collect();
            match source {
                LambdaSource::Single(_) => write_json(&mut body, &value[0])?,
                LambdaSource::Family { .. } => write_json(&mut body, &value)?,
            }
        }
        _ => {
            let mut s = String::new();
            if let [(class, r)] = rows.as_slice() {
                if keep_all {
                    writeln!(s, "{}", genset_line(&r.genset)).ok();
                    writeln!(s, "class: {class}").ok();
                    writeln!(s, "lambda1 = {}  witness (g, s) = {}", r.lambda1, r.witness1_text()).ok();
                    writeln!(s, "lambda2 = {}  witness (g, s, t) = {}", r.lambda2, r.witness2_text()).ok();
                    writeln!(s, "diameter = {}", r.diameter).ok();
                    return Ok(Outcome::clean(text(s)));
                }
            }
            for (class, r) in &rows {
                writeln!(
                    s,
                    "{}  {class}  lambda1={} lambda2={} diameter={}",
                    r.genset.describe(),
                    r.lambda1,
                    r.lambda2,
                    r.diameter
                )
                .ok();
            }
            writeln!(s, "{} sets", rows.len()).ok();
            body = text(s);
        }
    }
    Ok(Outcome::clean(body))
}

fn run_classify(s: &GenSet, format: OutputFormat) -> Result<Outcome> {
    let c = classify(s)?;
    let mut body = Vec::new();
    if format == OutputFormat::Json {
        write_json(
            &mut body,
            &serde_json::json!({
                "genset": s.describe(),
                "class": c.class,
                "generates": s.generates(),
                "three_flip": c.three_flip,
            }),
        )?;
        return Ok(Outcome::clean(body));
    }
    let mut t = String::new();
    writeln!(t, "{}", s.describe()).ok();
    writeln!(t, "class: {}", c.class).ok();
    writeln!(t, "generates: {}", if s.generates() { "yes" } else { "no" }).ok();
    if let Some(d) = &c.three_flip {
        let g = s.group();
        let normal = [0, d.a, d.b].map(|k| g.reflection(i64::from(k)).to_string());
        writeln!(
            t,
            "normalized: {{{}}} (shift r^{}, a={}, b={})",
            normal.join(", "),
            d.shift,
            d.a,
            d.b
        )
        .ok();
        let h = d.subgroups;
        writeln!(
            t,
            "subgroup orders: |H1|={} |H2|={} |H3|={} |H1H2|={}",
            h.h1, h.h2, h.h3, h.h1h2
        )
        .ok();
        let pairs: Vec<String> = d
            .generating_pairs
            .iter()
            .map(|&(i, j)| format!("({}, {})", s.get(i), s.get(j)))
            .collect();
        writeln!(
            t,
            "generating pairs: {}",
            if pairs.is_empty() {
                "none".to_string()
            } else {
                pairs.join(" ")
            }
        )
        .ok();
    }
    Ok(Outcome::clean(text(t)))
}

fn run_verify(family: Family, n_min: u32, n_max: u32, format: OutputFormat, cap: u32) -> Result<Outcome> {
    let records = verify_family_capped(family, n_min, n_max, cap)?;
    let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count();
    let violations = count(Verdict::Violation);
    let counterexamples = count(Verdict::ConjectureCounterexample);
    let status = if violations > 0 {
        EXIT_DOMAIN
    } else if counterexamples > 0 {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    };
    let mut body = Vec::new();
    let mut diagnostics = String::new();
    for r in records
        .iter()
        .filter(|r| r.verdict >= Verdict::ConjectureCounterexample)
    {
        writeln!(
            diagnostics,
            "{}: {} predicted lambda1 {} lambda2 {}, observed {} / {} at {} / {}",
            r.verdict,
            r.genset.describe(),
            r.predicted.lambda1,
            r.predicted.lambda2,
            r.observed.lambda1,
            r.observed.lambda2,
            r.observed.witness1_text(),
            r.observed.witness2_text()
        )
        .ok();
    }
    match format {
        OutputFormat::Csv => write_verification_csv(&mut body, &records)?,
        OutputFormat::Json => write_json(
            &mut body,
            &VerificationSummary::new((n_min, n_max), vec![family], &records),
        )?,
        _ => {
            let mut t = String::new();
            writeln!(t, "verify family={family} n={n_min}..{n_max}").ok();
            writeln!(
                t,
                "checked {} sets: {} match, {} bound_satisfied, {} conjecture_counterexample",
                records.len(),
                count(Verdict::Match),
                count(Verdict::BoundSatisfied),
                counterexamples
            )
            .ok();
            writeln!(t, "{violations} violations").ok();
            body = text(t);
        }
    }
    Ok(Outcome {
        body,
        diagnostics,
        status,
    })
}

/// Full witness for a counterexample: the offending values plus one
/// geodesic word for each element involved.
pub fn describe_witness(c: &Counterexample) -> Result<String> {
    let s = c.genset();
    let table = LengthTable::compute(s)?;
    let word = |e: DihedralElement| {
        let w: Vec<String> = table.geodesic(e).iter().map(|&i| s.get(i).to_string()).collect();
        if w.is_empty() {
            "1".to_string()
        } else {
            w.join(" . ")
        }
    };
    let mut t = format!("{c}\n");
    match c {
        Counterexample::Lambda1 { witness: (g, x), .. } => {
            let conj = s.group().conjugate(*g, *x);
            writeln!(t, "  g s g^-1 = {conj} = {}", word(conj)).ok();
        }
        Counterexample::FlipLength {
            flip, longest_rotation, ..
        } => {
            writeln!(t, "  {flip} = {}", word(*flip)).ok();
            writeln!(t, "  {longest_rotation} = {}", word(*longest_rotation)).ok();
        }
    }
    Ok(t)
}

fn run_sweep(conjectures: &[u8], n_min: u32, n_max: u32, format: OutputFormat, cap: u32) -> Result<Outcome> {
    let reports: Vec<ConjectureReport> = conjectures
        .iter()
        .map(|&c| sweep_capped(c, n_min, n_max, cap))
        .collect::<Result<_>>()?;
    let found: usize = reports.iter().map(|r| r.counterexamples.len()).sum();
    let mut diagnostics = String::new();
    for r in &reports {
        if let Some(first) = r.counterexamples.first() {
            writeln!(
                diagnostics,
                "COUNTEREXAMPLE to conjecture {} ({} in total; first shown):",
                r.conjecture,
                r.counterexamples.len()
            )
            .ok();
            diagnostics.push_str(&describe_witness(first)?);
        }
    }
    let mut body = Vec::new();
    match format {
        OutputFormat::Csv => write_sweep_csv(&mut body, &reports)?,
        OutputFormat::Json => write_json(&mut body, &SweepSummary::new(reports.clone()))?,
        _ => {
            let mut t = String::new();
            for r in &reports {
                writeln!(
                    t,
                    "conjecture {}: n={}..{}, {} generating three-reflection sets checked, {} counterexamples",
                    r.conjecture,
                    n_min,
                    n_max,
                    r.checked,
                    r.counterexamples.len()
                )
                .ok();
            }
            if let Some(r) = reports.first() {
                let maxes: Vec<String> = r.max_lambda1_by_n.iter().map(|(n, l)| format!("{n}:{l}")).collect();
                writeln!(t, "max lambda1 by n: {}", maxes.join(" ")).ok();
            }
            body = text(t);
        }
    }
    Ok(Outcome {
        body,
        diagnostics,
        status: if found > 0 { EXIT_COUNTEREXAMPLE } else { EXIT_OK },
    })
}

fn run_automorphism(source: &GenSet, target: &GenSet, all: bool, format: OutputFormat) -> Result<Outcome> {
    let tables: Vec<AutomorphismTable> = if all {
        all_relation_preserving_maps(source, target)?
    } else {
        find_relation_preserving_map(source, target)?.into_iter().collect()
    };
    let mut body = Vec::new();
    match format {
        OutputFormat::Csv => write_automorphism_csv(&mut body, &tables)?,
        OutputFormat::Json => {
            let maps: Vec<serde_json::Value> = tables
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "generator_map": t.generator_map,
                        "element_map": t.rows().collect::<Vec<_>>(),
                    })
                })
                .collect();
            write_json(
                &mut body,
                &serde_json::json!({
                    "source": source.describe(),
                    "target": target.describe(),
                    "found": !tables.is_empty(),
                    "maps": maps,
                }),
            )?;
        }
        _ => {
            let mut t = String::new();
            writeln!(t, "source: {}", source.describe()).ok();
            writeln!(t, "target: {}", target.describe()).ok();
            if tables.is_empty() {
                writeln!(t, "no relation-preserving map").ok();
            }
            for (i, table) in tables.iter().enumerate() {
                let gens: Vec<String> = table.generator_map.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                writeln!(t, "map {}: {}", i + 1, gens.join(", ")).ok();
                for (e, img) in table.rows() {
                    writeln!(t, "  {e}\t{img}").ok();
                }
                let tr = check_length_transfer(source, target, table)?;
                writeln!(
                    t,
                    "  lengths transfer pointwise; diameter {}, lambda1 {}, lambda2 {}",
                    tr.diameters.0, tr.lambda1.0, tr.lambda2.0
                )
                .ok();
            }
            body = text(t);
        }
    }
    Ok(Outcome::clean(body))
}
