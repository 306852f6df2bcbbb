//! The `polyprime` command line: exact verification, censuses, Monte Carlo
//! estimates, convergence fits and analysis of individual inputs.

mod analyze;
pub mod args;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use polyprime_census::engine::DEFAULT_BUDGET;
use polyprime_census::fit::{fit_property, FitMode};
use polyprime_census::report::{Report, ReportRow};
use polyprime_census::verify::run_verify;
use polyprime_census::{
    exact_probability, mc_estimate, CensusError, FormulaCatalog, Params, PropertyRegistry,
    RunOptions,
};
use polyprime_core::Field;

use args::{CensusArgs, Cli, Command, FitArgs, Format, McArgs, OutputArgs, ParamArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_RUNTIME: i32 = 4;

/// Formulas and properties available to a run.
pub struct Context {
    pub catalog: FormulaCatalog,
    pub registry: PropertyRegistry,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            catalog: FormulaCatalog::standard(),
            registry: PropertyRegistry::standard(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Budget(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verification(_) => EXIT_VERIFICATION,
            Failure::Budget(_) => EXIT_BUDGET,
            Failure::Runtime(_) => EXIT_RUNTIME,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Verification(m)
            | Failure::Budget(m)
            | Failure::Runtime(m) => m,
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        let msg = e.to_string();
        match e {
            CensusError::BudgetExceeded { .. } => Failure::Budget(msg),
            CensusError::UnknownProperty(_)
            | CensusError::UnknownFormula(_)
            | CensusError::InvalidParameters(_) => Failure::Usage(msg),
            CensusError::Algebra(core) => core_failure(core),
            _ => Failure::Runtime(msg),
        }
    }
}

fn core_failure(e: polyprime_core::Error) -> Failure {
    use polyprime_core::Error as E;
    let msg = e.to_string();
    match e {
        E::NotPrime(_)
        | E::InvalidExtensionDegree(_)
        | E::InvalidModulus(_)
        | E::FieldTooLarge { .. }
        | E::Dimension(_)
        | E::InvalidArgument(_)
        | E::Parse(_) => Failure::Usage(msg),
        _ => Failure::Runtime(msg),
    }
}

impl From<polyprime_core::Error> for Failure {
    fn from(e: polyprime_core::Error) -> Self {
        core_failure(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line with the standard formulas and properties,
/// printing to the process streams, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(
        args,
        &Context::default(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

pub fn run_with<I, T>(args: I, ctx: &Context, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(ctx, &a.output, out, err),
        Command::Census(a) => cmd_census(ctx, &a, out),
        Command::Mc(a) => cmd_mc(ctx, &a, out),
        Command::Fit(a) => cmd_fit(ctx, &a, out),
        Command::Analyze(a) => analyze::cmd_analyze(&a.file, out),
        Command::List => cmd_list(ctx, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn parse_field(s: &str) -> std::result::Result<Field, Failure> {
    s.parse::<Field>()
        .map_err(|e| Failure::Usage(format!("--field {s:?}: {e}")))
}

fn build_params(field: Field, a: &ParamArgs) -> std::result::Result<Params, Failure> {
    let mut p = Params::new(field);
    let (mut k, mut n) = (a.k, a.n);
    if let Some(rate) = &a.rate {
        let bad = || Failure::Usage(format!("--rate {rate:?}: expected k/n"));
        let (rk, rn) = rate.split_once('/').ok_or_else(bad)?;
        let rk: usize = rk.trim().parse().map_err(|_| bad())?;
        let rn: usize = rn.trim().parse().map_err(|_| bad())?;
        if k.is_some_and(|x| x != rk) || n.is_some_and(|x| x != rn) {
            return Err(Failure::Usage("--rate disagrees with --k or --n".into()));
        }
        k = Some(rk);
        n = Some(rn);
    }
    if let Some(v) = a.m {
        p = p.with_m(v);
    }
    if let Some(v) = n {
        p = p.with_n(v);
    }
    if let Some(v) = a.p {
        p = p.with_p(v);
    }
    if let Some(v) = k {
        p = p.with_k(v);
    }
    if let Some(v) = a.s {
        p = p.with_s(v);
    }
    match (a.big_n, a.deg.len()) {
        (None, 0) => {}
        (None, _) => p = p.with_degrees(&a.deg),
        (Some(count), 0) => p = p.with_count(count),
        (Some(count), 1) => p = p.with_degrees(&vec![a.deg[0]; count]),
        (Some(count), len) if len == count => p = p.with_degrees(&a.deg),
        (Some(count), len) => {
            return Err(Failure::Usage(format!(
                "--N {count} but --deg lists {len} degrees"
            )))
        }
    }
    Ok(p)
}

fn run_options(o: &OutputArgs, budget: Option<u128>) -> RunOptions {
    RunOptions {
        budget: budget.unwrap_or(DEFAULT_BUDGET),
        workers: o.workers.unwrap_or(0),
    }
}

fn write_report(report: &Report, o: &OutputArgs) -> Outcome {
    let Some(path) = &o.out else { return Ok(()) };
    let file = BufWriter::new(create(path)?);
    match o.format {
        Format::Csv => report.write_csv(file)?,
        Format::Json => report.write_json(file)?,
    }
    Ok(())
}

fn create(path: &Path) -> std::result::Result<File, Failure> {
    File::create(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn cmd_verify(ctx: &Context, o: &OutputArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let report = run_verify(&ctx.catalog, &run_options(o, None))?;
    write!(out, "{}", report.table())?;
    if let Some(path) = &o.out {
        let file = BufWriter::new(create(path)?);
        match o.format {
            Format::Json => serde_json::to_writer_pretty(file, &report)
                .map_err(|e| Failure::Runtime(e.to_string()))?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(file);
                for c in &report.checks {
                    w.serialize(c)
                        .map_err(|e| Failure::Runtime(e.to_string()))?;
                }
                w.flush()?;
            }
        }
    }
    if report.passed() {
        return Ok(());
    }
    for c in report.failures() {
        writeln!(
            err,
            "mismatch in {} at {}: formula {}, enumeration {}",
            c.formula, c.parameters, c.expected, c.observed
        )?;
    }
    let names: Vec<&str> = report.failures().map(|c| c.formula.as_str()).collect();
    Err(Failure::Verification(format!(
        "{} check(s) failed: {}",
        names.len(),
        names.join(", ")
    )))
}

fn cmd_census(ctx: &Context, a: &CensusArgs, out: &mut dyn Write) -> Outcome {
    let property = ctx.registry.get(&a.property)?;
    let params = build_params(parse_field(&a.params.field)?, &a.params)?;
    let opts = run_options(&a.output, a.budget);
    let result = exact_probability(property, &params, &opts)?;
    let value = ctx.catalog.eval(property.formula(), &params).ok();
    let row = ReportRow::from_census(&result, property.formula(), value.as_ref());
    writeln!(out, "{} {}", row.summary(), params.record().dims())?;
    if let Some(v) = &value {
        let prob = result.probability();
        let at = v.at(params.q());
        let diff = if prob >= at { &prob - &at } else { &at - &prob };
        writeln!(
            out,
            "prediction {} = {} at q={}, exact error {}",
            v,
            at,
            params.q(),
            diff
        )?;
    }
    let mut report = Report::new("census", None);
    report.push(params.record(), row);
    write_report(&report, &a.output)
}

fn cmd_mc(ctx: &Context, a: &McArgs, out: &mut dyn Write) -> Outcome {
    let property = ctx.registry.get(&a.property)?;
    let params = build_params(parse_field(&a.params.field)?, &a.params)?;
    let opts = run_options(&a.output, None);
    let est = mc_estimate(property, &params, a.trials, a.seed, &opts)?;
    let value = ctx.catalog.eval(property.formula(), &params).ok();
    let row = ReportRow::from_mc(&est, property.formula(), value.as_ref());
    writeln!(out, "{} {}", row.summary(), params.record().dims())?;
    writeln!(out, "trials {} seed {}", est.trials, est.seed)?;
    let mut report = Report::new("mc", Some(a.seed));
    report.push(params.record(), row);
    write_report(&report, &a.output)
}

fn cmd_fit(ctx: &Context, a: &FitArgs, out: &mut dyn Write) -> Outcome {
    let property = ctx.registry.get(&a.property)?;
    let params = a
        .params
        .field
        .split(',')
        .map(|f| build_params(parse_field(f)?, &a.params))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mode = match a.trials {
        Some(trials) => FitMode::MonteCarlo {
            trials,
            seed: a.seed,
        },
        None => FitMode::Exact,
    };
    let opts = run_options(&a.output, a.budget);
    let fit = fit_property(property, &ctx.catalog, &params, mode, a.tolerance, &opts)?;
    writeln!(
        out,
        "{}: c(q) = (1 - P) q^{} against predicted {}",
        property.name(),
        fit.order,
        fit.predicted
    )?;
    writeln!(
        out,
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "q", "P", "stderr", "c(q)", "residual"
    )?;
    for (pt, r) in fit.points.iter().zip(&fit.residuals) {
        writeln!(
            out,
            "{:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            pt.q, pt.probability, pt.stderr, pt.c, r
        )?;
    }
    writeln!(
        out,
        "deviation {:.6} tolerance {:.6} improved {} monotone {}: {}",
        fit.final_deviation,
        fit.tolerance,
        fit.improved,
        fit.monotone,
        if fit.pass { "PASS" } else { "FAIL" }
    )?;
    if let Some(path) = &a.output.out {
        let mut file = BufWriter::new(create(path)?);
        match a.output.format {
            Format::Json => serde_json::to_writer_pretty(&mut file, &fit)
                .map_err(|e| Failure::Runtime(e.to_string()))?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(file);
                for pt in &fit.points {
                    w.serialize(pt)
                        .map_err(|e| Failure::Runtime(e.to_string()))?;
                }
                w.flush()?;
            }
        }
    }
    if fit.pass {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} does not approach its leading coefficient {}",
            property.name(),
            fit.predicted
        )))
    }
}

fn cmd_list(ctx: &Context, out: &mut dyn Write) -> Outcome {
    writeln!(out, "properties:")?;
    for p in ctx.registry.iter() {
        writeln!(
            out,
            "  {:<22} [{}] {}",
            p.name(),
            p.formula(),
            p.description()
        )?;
    }
    writeln!(out, "formulas:")?;
    for f in ctx.catalog.iter() {
        writeln!(out, "  {:<22} {}", f.name(), f.description())?;
    }
    Ok(())
}
