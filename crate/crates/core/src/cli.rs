//! Command-line front end.
//!
//! Every invocation writes one JSON value to standard output and a short
//! human summary to standard error. Exit status: 0 success, 1 domain refusal
//! or failed verification, 2 bad input.

mod verify;

use std::ffi::OsString;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::arf;
use crate::codec::{self, CatalogEntry};
use crate::diagram::Diagram;
use crate::error::Error;
use crate::region_solver::{self, CrossingSelection};
use crate::unknotter::{self, BasePointOrdering, OrderingText};

pub use verify::{verify_entry, SuiteResult};

#[derive(Parser, Debug)]
#[command(name = "rcc", version, about = "Region crossing changes on link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crossing, component and face counts, incidence rank and linking data.
    Info(InputArgs),
    /// Face set whose region crossing changes flip exactly the given crossings.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Comma separated crossing ids (0-based, in code order).
        #[arg(long, value_name = "IDS")]
        q: String,
        #[arg(long)]
        minimal: bool,
    },
    /// Face set that turns a proper link diagram into a descending one.
    Unknot {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        minimal: bool,
        /// Base points, e.g. `1:4,0:1-` (component:label, `-` for reverse).
        #[arg(long, value_name = "ORDER")]
        ordering: Option<String>,
    },
    /// Arf invariant by the determinant oracle and by unknotting regions.
    Arf {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        minimal: bool,
        #[arg(long, value_name = "ORDER")]
        ordering: Option<String>,
    },
    /// Runs the property suites over a set of diagrams.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Skip diagrams with more crossings.
        #[arg(long, value_name = "C")]
        max_crossings: Option<usize>,
        /// Worker threads.
        #[arg(long, value_name = "K")]
        jobs: Option<usize>,
    },
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct InputArgs {
    /// A single diagram in oriented PD notation.
    #[arg(long)]
    pd: Option<String>,
    /// JSONL catalog of `{"name", "pd"}` records.
    #[arg(long)]
    catalog: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ErrorReport {
    kind: &'static str,
    message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
struct FaceValue {
    face: usize,
    a: i64,
}

#[derive(Debug, Default, Serialize)]
struct Report {
    diagram: String,
    c: usize,
    n: usize,
    faces: usize,
    rank: usize,
    proper: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    writhe: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linking: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    determinant: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solvable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordering: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    selection: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regions: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arf: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arf_via_regions: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a_values: Option<Vec<FaceValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorReport>,
}

impl Report {
    fn base(name: &str, d: &Diagram) -> Report {
        Report {
            diagram: name.to_string(),
            c: d.crossing_count(),
            n: d.component_count(),
            faces: d.face_count(),
            rank: region_solver::incidence_matrix(d).rank(),
            proper: d.is_proper(),
            ..Report::default()
        }
    }

    fn input_error(name: &str, e: &Error) -> Report {
        Report {
            diagram: name.to_string(),
            error: Some(e.into()),
            ..Report::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Ok = 0,
    Refused = 1,
    BadInput = 2,
}

/// Parses `argv` (program name first) and runs the command on the process's
/// standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(outcome) => outcome as i32,
        Err(e) => {
            let _ = writeln!(err, "rcc: {e}");
            let _ = writeln!(
                out,
                "{}",
                serde_json::json!({ "error": ErrorReport::from(&e) })
            );
            Outcome::BadInput as i32
        }
    }
}

struct Inputs {
    entries: Vec<CatalogEntry>,
    /// `file:line: message` lines for rejected catalog records.
    diagnostics: Vec<String>,
    single: bool,
}

fn load_inputs(args: &InputArgs) -> Result<Inputs, Error> {
    if let Some(pd) = &args.pd {
        return Ok(Inputs {
            entries: vec![CatalogEntry {
                name: "pd".into(),
                code: codec::parse_pd(pd)?,
                line: 1,
            }],
            diagnostics: Vec::new(),
            single: true,
        });
    }
    let (label, catalog) = match &args.catalog {
        Some(path) => {
            let file = std::fs::File::open(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), codec::load_catalog(BufReader::new(file))?)
        }
        None => ("<bundled>".to_string(), codec::bundled_catalog()),
    };
    Ok(Inputs {
        entries: catalog.entries,
        diagnostics: catalog
            .diagnostics
            .iter()
            .map(|d| format!("{label}:{}: {}", d.line, d.message))
            .collect(),
        single: false,
    })
}

fn parse_q(text: &str, c: usize) -> Result<CrossingSelection, Error> {
    let mut ids = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let x: usize = part
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad crossing id '{part}'")))?;
        if x >= c {
            return Err(Error::InvalidArgument(format!(
                "crossing id {x} out of range for {c} crossings"
            )));
        }
        ids.push(x);
    }
    Ok(CrossingSelection::from_indices(c, ids))
}

fn ordering_for(d: &Diagram, text: Option<&str>) -> Result<BasePointOrdering, Error> {
    match text {
        None => Ok(BasePointOrdering::default_for(d)),
        Some(s) => BasePointOrdering::new(d, s.parse::<OrderingText>()?.0),
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, Error> {
    let (input, job): (&InputArgs, Job) = match &command {
        Command::Info(input) => (input, Job::Info),
        Command::Solve { input, q, minimal } => (input, Job::Solve { q, minimal: *minimal }),
        Command::Unknot {
            input,
            minimal,
            ordering,
        } => (
            input,
            Job::Unknot {
                minimal: *minimal,
                ordering: ordering.as_deref(),
            },
        ),
        Command::Arf {
            input,
            minimal,
            ordering,
        } => (
            input,
            Job::Arf {
                minimal: *minimal,
                ordering: ordering.as_deref(),
            },
        ),
        Command::Verify {
            input,
            max_crossings,
            jobs,
        } => return run_verify(input, *max_crossings, *jobs, out, err),
    };
    let inputs = load_inputs(input)?;
    let mut worst = Outcome::Ok;
    for d in &inputs.diagnostics {
        writeln!(err, "{d}")?;
        worst = Outcome::BadInput;
    }
    let mut reports = Vec::with_capacity(inputs.entries.len());
    for entry in &inputs.entries {
        let (report, outcome) = job.run(entry);
        writeln!(err, "{}", summary(&report))?;
        worst = worst.max(outcome);
        reports.push(report);
    }
    let json = if inputs.single {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&serde_json::json!({
            "reports": reports,
            "diagnostics": inputs.diagnostics,
        }))
    }
    .expect("reports serialize");
    writeln!(out, "{json}")?;
    Ok(worst)
}

enum Job<'a> {
    Info,
    Solve { q: &'a str, minimal: bool },
    Unknot { minimal: bool, ordering: Option<&'a str> },
    Arf { minimal: bool, ordering: Option<&'a str> },
}

impl Job<'_> {
    fn run(&self, entry: &CatalogEntry) -> (Report, Outcome) {
        let d = match Diagram::from_code(&entry.code) {
            Ok(d) => d,
            Err(e) => return (Report::input_error(&entry.name, &e), Outcome::BadInput),
        };
        let mut report = Report::base(&entry.name, &d);
        let outcome = match self.fill(&d, &mut report) {
            Ok(o) => o,
            Err(e) => {
                let o = match e {
                    Error::NotProper | Error::NotUnknotting => Outcome::Refused,
                    _ => Outcome::BadInput,
                };
                report.error = Some((&e).into());
                o
            }
        };
        (report, outcome)
    }

    fn fill(&self, d: &Diagram, r: &mut Report) -> Result<Outcome, Error> {
        match *self {
            Job::Info => {
                r.writhe = Some(d.writhe());
                r.linking = Some(d.linking_matrix().rows());
                r.determinant = Some(arf::link_determinant(d));
                Ok(Outcome::Ok)
            }
            Job::Solve { q, minimal } => {
                let q = parse_q(q, d.crossing_count())?;
                r.q = Some(q.ids());
                let found = if minimal {
                    region_solver::minimal_regions(d, &q)?
                } else {
                    region_solver::solve_regions(d, &q)
                };
                r.solvable = Some(found.is_some());
                r.regions = found.as_ref().map(|s| s.ids());
                Ok(if found.is_some() {
                    Outcome::Ok
                } else {
                    Outcome::Refused
                })
            }
            Job::Unknot { minimal, ordering } => {
                let ord = ordering_for(d, ordering)?;
                r.ordering = Some(ord.to_string());
                r.selection = Some(unknotter::descending_selection(d, &ord).ids());
                let regions = unknot(d, &ord, minimal)?;
                debug_assert!(unknotter::is_descending(
                    &unknotter::apply_regions(d, &regions),
                    &ord
                ));
                r.regions = Some(regions.ids());
                Ok(Outcome::Ok)
            }
            Job::Arf { minimal, ordering } => {
                let ord = ordering_for(d, ordering)?;
                r.ordering = Some(ord.to_string());
                let regions = unknot(d, &ord, minimal)?;
                r.regions = Some(regions.ids());
                r.arf = Some(arf::arf_link(d)?);
                r.arf_via_regions = Some(arf::arf_via_regions_with(d, &regions, &ord)?);
                r.a_values = Some(
                    (0..d.face_count())
                        .map(|f| FaceValue {
                            face: f,
                            a: arf::region_signs(d, f).a_value,
                        })
                        .collect(),
                );
                Ok(if r.arf == r.arf_via_regions {
                    Outcome::Ok
                } else {
                    Outcome::Refused
                })
            }
        }
    }
}

fn unknot(
    d: &Diagram,
    ord: &BasePointOrdering,
    minimal: bool,
) -> Result<region_solver::RegionSelection, Error> {
    if minimal {
        unknotter::minimal_unknot_regions_with(d, ord)
    } else {
        unknotter::unknot_regions_with(d, ord)
    }
}

fn summary(r: &Report) -> String {
    let mut s = format!(
        "{}: c={} n={} faces={} rank={} proper={}",
        r.diagram, r.c, r.n, r.faces, r.rank, r.proper
    );
    if let Some(solvable) = r.solvable {
        s += &format!(" solvable={solvable}");
    }
    if let Some(regions) = &r.regions {
        s += &format!(" regions={regions:?}");
    }
    if let Some(a) = r.arf {
        s += &format!(" arf={a}");
    }
    if let Some(e) = &r.error {
        s += &format!(" error={}: {}", e.kind, e.message);
    }
    s
}

fn run_verify(
    input: &InputArgs,
    max_crossings: Option<usize>,
    jobs: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, Error> {
    let inputs = load_inputs(input)?;
    let mut worst = Outcome::Ok;
    for d in &inputs.diagnostics {
        writeln!(err, "{d}")?;
        worst = Outcome::BadInput;
    }
    let selected: Vec<&CatalogEntry> = inputs
        .entries
        .iter()
        .filter(|e| max_crossings.is_none_or(|m| e.code.crossing_count() <= m))
        .collect();
    let work = || -> Vec<Vec<SuiteResult>> {
        use rayon::prelude::*;
        selected.par_iter().map(|e| verify_entry(e)).collect()
    };
    let per_entry = match jobs {
        Some(0) => return Err(Error::InvalidArgument("--jobs must be positive".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work),
        None => work(),
    };
    let results: Vec<SuiteResult> = per_entry.into_iter().flatten().collect();
    for r in &results {
        writeln!(
            err,
            "{:<6} {:<18} {:<16} {}",
            if r.passed { "pass" } else { "FAIL" },
            r.suite,
            r.diagram,
            r.detail
        )?;
        if !r.passed {
            worst = worst.max(Outcome::Refused);
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(err, "{} checks, {failed} failed", results.len())?;
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&results).expect("results serialize")
    )?;
    Ok(worst)
}
