use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use smallcancel_core::bounds::{
    lower_bound, lower_bound_rough, max_relators_necessary, max_relators_sufficient, min_length_for, min_rank_for,
    upper_bound, upper_bound_rough,
};
use smallcancel_core::checker::{check_with, Algorithm};
use smallcancel_core::montecarlo::{estimate_probability, run_sweep, Axis};
use smallcancel_core::sampler::{PresentationSampler, RandomStream};
use smallcancel_core::{Bound, BoundNote, BoundOptions, BoundValue, CheckOptions, GridSpec, ParamPoint};

use crate::args::{BoundsArgs, CheckArgs, Cli, Command, EstimateArgs, ParamArgs, SampleArgs, SweepArgs};
use crate::report::{BoundReport, BoundsReport, CheckSummary, EstimateReport, FailureReport, Limits, PresentationReport};
use crate::text::{self, ParseError};
use crate::sweep_csv;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Fail = 1,
    InputError = 2,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Core(#[from] smallcancel_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

type Result<T> = std::result::Result<T, CliError>;

/// Caps the worker count of the parallel parts.
struct Workers(Option<rayon::ThreadPool>);

impl Workers {
    fn new(threads: Option<usize>) -> Result<Workers> {
        Ok(Workers(match threads {
            Some(n) => Some(rayon::ThreadPoolBuilder::new().num_threads(n).build()?),
            None => None,
        }))
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.0 {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

/// Runs `cli`, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Status {
    let result = Workers::new(cli.threads).and_then(|workers| match cli.command {
        Command::Check(a) => check(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Sample(a) => sample(a, out),
        Command::Estimate(a) => estimate(a, &workers, out),
        Command::Sweep(a) => sweep(a, &workers, out, err),
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Status::InputError
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    let file_err = |source| CliError::File { path: path.to_owned(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(file_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(file_err)
    }
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<Status> {
    let input = read_input(&a.file)?;
    let path = a.file.display().to_string();
    let ps = text::parse_many(&input).map_err(|source| CliError::Parse { path: path.clone(), source })?;
    if ps.is_empty() {
        return Err(CliError::Usage(format!("{path}: no presentations")));
    }
    let opts = CheckOptions { algorithm: if a.naive { Algorithm::Naive } else { Algorithm::Sorted }, exhaustive: a.all };
    let reports = ps
        .iter()
        .enumerate()
        .map(|(i, p)| PresentationReport::new(i, p, &check_with(p, a.lambda, opts)?))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let passed = reports.iter().filter(|r| r.failures.is_empty()).count();
    let summary = CheckSummary { kind: "check", lambda: a.lambda.to_string(), passed, total: reports.len(), presentations: reports };
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &summary)?;
        writeln!(out)?;
    } else {
        write_check(&summary, out)?;
    }
    Ok(if passed == summary.total { Status::Success } else { Status::Fail })
}

fn write_check(s: &CheckSummary, out: &mut dyn Write) -> io::Result<()> {
    for p in &s.presentations {
        let verdict = if p.failures.is_empty() { "PASS" } else { "FAIL" };
        if s.total == 1 {
            writeln!(out, "{verdict} C'({})", s.lambda)?;
        } else {
            writeln!(out, "presentation {}: {verdict}", p.index + 1)?;
        }
        for f in &p.failures {
            match f {
                FailureReport::NotPowerFree { relator, word } => {
                    writeln!(out, "  relator {} ({word}) is a proper power", relator + 1)?
                }
                FailureReport::NotMinimal { first, second, words: [u, w] } => writeln!(
                    out,
                    "  not minimal: relator {} ({u}) and relator {} ({w}) are conjugate up to inversion",
                    first + 1,
                    second + 1
                )?,
                FailureReport::Piece { length, piece, first, second } => {
                    let describe = |m: &crate::report::Member| {
                        let inv = if m.inverted { "inverse of " } else { "" };
                        format!("{} ({inv}relator {} rotated by {})", m.word, m.relator + 1, m.offset)
                    };
                    writeln!(out, "  piece {piece} (length {length}) starts {} and {}", describe(first), describe(second))?
                }
            }
        }
    }
    if s.total > 1 {
        writeln!(out, "passed {} of {} ({})", s.passed, s.total, s.passed as f64 / s.total as f64)?;
    }
    Ok(())
}

fn point(p: &ParamArgs, lambda: smallcancel_core::Lambda) -> Result<ParamPoint> {
    Ok(ParamPoint::new(p.rank, p.l1.unwrap_or(p.length), p.length, p.relators, lambda)?)
}

fn bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<Status> {
    let p = point(&a.params, a.lambda)?;
    let opts = BoundOptions { mode: a.mode.into(), ..BoundOptions::default() };
    let equal = p.is_equal_length();
    let lower = lower_bound(&p, &opts)?;
    let lower_rough = lower_bound_rough(&p)?;
    let (upper, upper_rough) = if equal {
        (Some(upper_bound(p.r, p.l2, p.m, p.lambda, &opts)?), Some(upper_bound_rough(p.r, p.l2, p.m, p.lambda, &opts)?))
    } else {
        (None, None)
    };
    let limits = match a.target_p {
        Some(t) if !(0.0..=1.0).contains(&t) => return Err(CliError::Usage(format!("--target-p {t} outside [0, 1]"))),
        Some(t) => Some(Limits {
            target_p: t,
            min_length: min_length_for(p.r, p.m, p.lambda, t).into(),
            min_rank: min_rank_for(p.l1, p.l2, p.m, p.lambda, t).into(),
            max_relators_sufficient: equal.then(|| max_relators_sufficient(p.r, p.l2, p.lambda, t).into()),
            max_relators_necessary: equal.then(|| max_relators_necessary(p.r, p.l2, p.lambda, t).into()),
        }),
        None => None,
    };
    if a.json {
        let report = BoundsReport {
            kind: "bounds",
            params: (&p).into(),
            lower: (&lower).into(),
            lower_rough: (&lower_rough).into(),
            upper: upper.as_ref().map(BoundReport::from),
            upper_rough: upper_rough.as_ref().map(BoundReport::from),
            limits,
        };
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
        return Ok(Status::Success);
    }
    writeln!(out, "r={} l1={} l2={} m={} lambda={}", p.r, p.l1, p.l2, p.m, p.lambda)?;
    writeln!(out, "lower bound        {}", describe_bound(&lower))?;
    writeln!(out, "rough lower bound  {}", describe_bound(&lower_rough))?;
    match (&upper, &upper_rough) {
        (Some(u), Some(ur)) => {
            writeln!(out, "upper bound        {}", describe_bound(u))?;
            writeln!(out, "rough upper bound  {}", describe_bound(ur))?;
        }
        _ => writeln!(out, "upper bound        na (needs l1 = l2)")?,
    }
    if let Some(l) = limits {
        let show = |l: &crate::report::Limit| match (&l.value, &l.error) {
            (Some(v), _) => v.to_string(),
            (None, Some(e)) => format!("none ({e})"),
            (None, None) => "none".into(),
        };
        writeln!(out, "limits for probability {}", l.target_p)?;
        writeln!(out, "  smallest length          {}", show(&l.min_length))?;
        writeln!(out, "  smallest rank            {}", show(&l.min_rank))?;
        if let (Some(s), Some(n)) = (&l.max_relators_sufficient, &l.max_relators_necessary) {
            writeln!(out, "  relators sufficient up to {}", show(s))?;
            writeln!(out, "  relators necessary below  {}", show(n))?;
        }
    }
    Ok(Status::Success)
}

/// Exact fractions whose decimal numerator and denominator fit in this many
/// characters are printed as fractions as well.
const SHORT_FRACTION: usize = 40;

fn describe_bound(b: &Bound) -> String {
    let value = if b.value.is_zero() {
        "0".to_string()
    } else {
        let f = b.value.to_f64();
        let decimal = if f == 0.0 { format!("10^{:.6}", b.value.log10()) } else { f.to_string() };
        match &b.value {
            BoundValue::Exact(q) if q.numer().to_string().len() + q.denom().to_string().len() <= SHORT_FRACTION => {
                if q.denom() == &1.into() {
                    decimal
                } else {
                    format!("{}/{} = {decimal}", q.numer(), q.denom())
                }
            }
            _ => decimal,
        }
    };
    match b.note {
        BoundNote::Proper => value,
        BoundNote::Vacuous => format!("{value} (vacuous, clamped at 0)"),
        BoundNote::ZeroClause => format!("{value} (FR(r,ceil(lambda*l)) < 2ml)"),
        BoundNote::EmptyProduct => format!("{value} (vacuous, m' = 0)"),
    }
}

fn sample(a: SampleArgs, out: &mut dyn Write) -> Result<Status> {
    // λ plays no part in sampling.
    let lambda = smallcancel_core::Lambda::new(1, 6)?;
    let sampler = PresentationSampler::new(&point(&a.params, lambda)?)?;
    let mut w = BufWriter::new(out);
    for i in 0..a.count {
        if i > 0 {
            writeln!(w, "{}", text::SEPARATOR)?;
        }
        let p = sampler.sample(&mut RandomStream::new(a.seed, i));
        w.write_all(text::render(&p).as_bytes())?;
    }
    w.flush()?;
    Ok(Status::Success)
}

fn estimate(a: EstimateArgs, workers: &Workers, out: &mut dyn Write) -> Result<Status> {
    let p = point(&a.params, a.lambda)?;
    let e = workers.run(|| estimate_probability(&p, a.samples, a.seed, a.confidence))?;
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &EstimateReport::new(&p, &e))?;
        writeln!(out)?;
    } else {
        writeln!(out, "r={} l1={} l2={} m={} lambda={}", p.r, p.l1, p.l2, p.m, p.lambda)?;
        writeln!(out, "estimate {} ({} of {}, seed {})", e.point_estimate, e.successes, e.trials, e.seed)?;
        writeln!(out, "{}% Wilson interval [{}, {}]", e.confidence * 100.0, e.ci_low, e.ci_high)?;
    }
    Ok(Status::Success)
}

pub fn grid_spec(a: &SweepArgs) -> Result<GridSpec> {
    let mut g = GridSpec::new(a.lambda);
    g.vary = a.vary.clone();
    for &(axis, v) in &a.fix {
        let slot = match axis {
            Axis::R => &mut g.r,
            Axis::L => &mut g.l,
            Axis::M => &mut g.m,
        };
        if slot.replace(v).is_some() {
            return Err(CliError::Usage(format!("axis {} fixed twice", axis.name())));
        }
    }
    g.l1 = a.l1;
    g.density = a.density;
    g.samples = a.samples;
    g.seed = a.seed;
    g.confidence = a.confidence;
    g.bound_options.mode = a.mode.into();
    g.validate()?;
    Ok(g)
}

fn sweep(a: SweepArgs, workers: &Workers, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let grid = grid_spec(&a)?;
    let rows = workers.run(|| run_sweep(&grid))?;
    for row in &rows {
        if let Some(e) = &row.error {
            let p = &row.params;
            writeln!(err, "warning: cell r={} l1={} l2={} m={}: {e}", p.r, p.l1, p.l2, p.m)?;
        }
    }
    match &a.out {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::File { path: path.clone(), source })?;
            sweep_csv::write(&rows, grid.seed, BufWriter::new(file))?;
        }
        None => sweep_csv::write(&rows, grid.seed, out)?,
    }
    Ok(Status::Success)
}
