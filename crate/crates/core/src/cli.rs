//! The `arcfilt` command line: argument parsing, report rendering and exit
//! codes (0 success, 1 verification mismatch, 2 invalid input).

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::engine::{
    ade_closed_form, arc_series, check_reduction_identity, EngineError, ResourceLimits,
    StabilizationOptions,
};
use crate::graph::{build_ade, parse_dual_graph, AdeType, DualGraph};
use crate::lattice::is_rational;
use crate::semigroup::{curve_arc_series, parse_generators};
use crate::series::{degree_and_pole, expand_rational, product_form};
use crate::verify::{run_suite, Suite, VerifyOptions};

/// Environment variable overriding the largest box tried while waiting for
/// the reduction to stabilize.
pub const MAX_BOX_ENV: &str = "ARCFILT_MAX_BOX";

pub const DEFAULT_ORDER: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "arcfilt",
    version,
    about = "Poincare series of the arc filtration"
)]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arc series of a rational double point, e.g. `A1`, `D5`, `E8`.
    Ade {
        #[arg(value_name = "TYPE")]
        ty: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Also print the tabulated closed form and compare.
        #[arg(long)]
        closed_form: bool,
        #[command(flatten)]
        multi: MultiArgs,
    },
    /// Arc series of a dual graph read from a file.
    Graph {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[command(flatten)]
        multi: MultiArgs,
    },
    /// Arc series of the monomial curve with the given exponents, e.g. `3,4,5`.
    Curve {
        generators: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, clap::Args)]
pub struct MultiArgs {
    /// Compute the multi-variable series and compare its reduction.
    #[arg(long)]
    multi: bool,
    /// Initial box bound for the multi-variable series (defaults to the order).
    #[arg(long = "box", value_name = "M", value_parser = clap::value_parser!(u32).range(1..))]
    bound: Option<u32>,
    /// Permit multi-variable runs on graphs with more than four vertices.
    #[arg(long)]
    allow_large: bool,
}

/// Keys that may appear on the left of a report line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKey {
    ArcSeriesCoeffs,
    ClosedForm,
    Match,
    StabilizedBox,
    ProductForm,
    Degree,
    PoleOrder,
    Rational,
    ReductionCoeffs,
    Summary,
}

impl ReportKey {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportKey::ArcSeriesCoeffs => "arc_series_coeffs",
            ReportKey::ClosedForm => "closed_form",
            ReportKey::Match => "match",
            ReportKey::StabilizedBox => "stabilized_box",
            ReportKey::ProductForm => "product_form",
            ReportKey::Degree => "degree",
            ReportKey::PoleOrder => "pole_order",
            ReportKey::Rational => "rational",
            ReportKey::ReductionCoeffs => "reduction_coeffs",
            ReportKey::Summary => "summary",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub key: ReportKey,
    pub value: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key.as_str(), self.value)
    }
}

/// Collected stdout/stderr and exit code of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub lines: Vec<ReportLine>,
    pub messages: Vec<String>,
    pub exit_code: u8,
}

impl Outcome {
    fn push(&mut self, key: ReportKey, value: impl ToString) {
        self.lines.push(ReportLine {
            key,
            value: value.to_string(),
        });
    }

    fn invalid(&mut self, message: impl ToString) {
        self.messages
            .push(format!("error: {}", message.to_string()));
        self.exit_code = 2;
    }

    fn mismatch(&mut self) {
        self.exit_code = self.exit_code.max(1);
    }

    pub fn stdout(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn max_box_override() -> Result<Option<u32>, String> {
    match std::env::var(MAX_BOX_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map(Some)
            .map_err(|_| format!("{MAX_BOX_ENV}=\"{v}\" is not a positive integer")),
        Err(_) => Ok(None),
    }
}

fn stabilization(multi: &MultiArgs, order: usize) -> Result<StabilizationOptions, String> {
    let limits = if multi.allow_large {
        ResourceLimits::default().allow_large_graphs()
    } else {
        ResourceLimits::default()
    };
    Ok(StabilizationOptions {
        start_box: Some(multi.bound.unwrap_or(order.max(1) as u32)),
        ceiling: max_box_override()?,
        limits,
        ..StabilizationOptions::default()
    })
}

/// Compares the reduced multi-variable series with `arc`, when requested.
fn push_reduction(out: &mut Outcome, g: &DualGraph, order: usize, multi: &MultiArgs) {
    if !multi.multi {
        return;
    }
    let options = match stabilization(multi, order) {
        Ok(o) => o,
        Err(e) => return out.invalid(e),
    };
    match check_reduction_identity(g, order, &options) {
        Ok(cert) => {
            out.push(ReportKey::ReductionCoeffs, &cert.reduced);
            out.push(ReportKey::Match, cert.matches);
            out.push(ReportKey::StabilizedBox, cert.stabilized_box);
            if !cert.matches {
                out.mismatch();
            }
        }
        Err(e @ EngineError::Unstabilized { .. }) => {
            out.push(ReportKey::Match, "inconclusive");
            out.messages.push(format!("error: {e}"));
            out.mismatch();
        }
        Err(e) => out.invalid(e),
    }
}

fn run_ade(ty: &str, order: usize, closed_form: bool, multi: &MultiArgs) -> Outcome {
    let mut out = Outcome::default();
    let ty: AdeType = match ty.parse() {
        Ok(t) => t,
        Err(e) => {
            out.invalid(e);
            return out;
        }
    };
    let g = build_ade(ty);
    let series = match arc_series(&g, order) {
        Ok(s) => s,
        Err(e) => {
            out.invalid(e);
            return out;
        }
    };
    out.push(ReportKey::ArcSeriesCoeffs, &series);
    if closed_form {
        let form = ade_closed_form(ty);
        let matches = expand_rational(&form, order).is_ok_and(|e| e == series);
        out.push(ReportKey::ClosedForm, &form);
        out.push(ReportKey::Match, matches);
        if !matches {
            out.mismatch();
        }
    }
    push_reduction(&mut out, &g, order, multi);
    out
}

fn run_graph(file: &PathBuf, order: usize, multi: &MultiArgs) -> Outcome {
    let mut out = Outcome::default();
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            out.invalid(format!("{}: {e}", file.display()));
            return out;
        }
    };
    let g = match parse_dual_graph(&text) {
        Ok(g) => g,
        Err(e) => {
            out.invalid(e);
            return out;
        }
    };
    out.messages
        .extend(g.warnings().into_iter().map(|w| format!("warning: {w}")));
    out.push(ReportKey::Rational, is_rational(&g));
    match arc_series(&g, order) {
        Ok(series) => out.push(ReportKey::ArcSeriesCoeffs, &series),
        Err(e) => {
            out.invalid(e);
            return out;
        }
    }
    push_reduction(&mut out, &g, order, multi);
    out
}

fn run_curve(generators: &str, order: usize) -> Outcome {
    let mut out = Outcome::default();
    let gens = match parse_generators(generators) {
        Ok(g) => g,
        Err(e) => {
            out.invalid(e);
            return out;
        }
    };
    match curve_arc_series(&gens, order) {
        Ok((series, form)) => {
            out.push(ReportKey::ArcSeriesCoeffs, &series);
            out.push(ReportKey::ClosedForm, &form);
            match product_form(&form) {
                Some(p) => out.push(ReportKey::ProductForm, p),
                None => out.push(ReportKey::ProductForm, "none"),
            }
            let (degree, pole) = degree_and_pole(&form);
            out.push(ReportKey::Degree, degree);
            out.push(ReportKey::PoleOrder, pole);
        }
        Err(e) => out.invalid(e),
    }
    out
}

fn run_verify(suite: &str) -> Outcome {
    let mut out = Outcome::default();
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => {
            out.invalid(e);
            return out;
        }
    };
    let ceiling = match max_box_override() {
        Ok(c) => c,
        Err(e) => {
            out.invalid(e);
            return out;
        }
    };
    let options = VerifyOptions {
        stabilization: StabilizationOptions {
            ceiling,
            ..StabilizationOptions::default()
        },
    };
    let results = run_suite(suite, &options);
    let passed = results.iter().filter(|r| r.passed).count();
    for r in &results {
        out.push(
            ReportKey::Match,
            format!("{}/{} {}", r.suite, r.label, r.passed),
        );
        if !r.passed {
            out.messages
                .push(format!("failed: {}/{}: {}", r.suite, r.label, r.detail));
        }
    }
    out.push(
        ReportKey::Summary,
        format!("{passed}/{} passed", results.len()),
    );
    if passed != results.len() {
        out.mismatch();
    }
    out
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let request = match CommandRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                lines: Vec::new(),
                messages: vec![e.render().to_string().trim_end().to_string()],
                exit_code: code,
            };
        }
    };
    match &request.command {
        Command::Ade {
            ty,
            order,
            closed_form,
            multi,
        } => run_ade(ty, *order, *closed_form, multi),
        Command::Graph { file, order, multi } => run_graph(file, *order, multi),
        Command::Curve { generators, order } => run_curve(generators, *order),
        Command::Verify { suite } => run_verify(suite),
    }
}
