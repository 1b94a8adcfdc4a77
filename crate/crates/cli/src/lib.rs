//! Command-line front end: argument parsing, dispatch to the core
//! pipelines, JSON/CSV reports and the exit-code contract.

pub mod report;
pub mod spec;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use polaris_core::constructions::{
    core_multiplicity, vanishing_hessian_check, z_and_v_check, ConstructionError,
};
use polaris_core::exactalg::{parse_poly_with_header, AlgError, Rationals};
use polaris_core::fflab::{
    default_prime, polar_degree, DegreeConfig, DegreeEstimate, FflabError, Verdict,
    DEFAULT_EPSILON, DEFAULT_SAMPLES,
};
use polaris_core::polarity::{gradient, is_cone, Hypersurface, PolarityError};
use polaris_core::scrolldual::{
    build_y, interpolate_dual, lift_dual_form, multiplicity_along, ProjectionChain, ScrollError,
    P_INTERPOLATION,
};
use polaris_core::subhankel::{irreducibility_structure, SubHankelBundle, SubHankelError};

use report::{Check, Report, Status};
use spec::{read_spec, SpecFile};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or input files; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A pipeline failed to run; exit code 1.
    #[error("{0}")]
    Run(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Run(_) => 1,
        }
    }
}

fn classify_alg(e: &AlgError) -> bool {
    matches!(
        e,
        AlgError::Parse(_) | AlgError::VarOutOfRange { .. } | AlgError::NotPrime(_)
    )
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> Self {
        if classify_alg(&e) {
            CliError::Usage(e.to_string())
        } else {
            CliError::Run(e.to_string())
        }
    }
}

impl From<PolarityError> for CliError {
    fn from(e: PolarityError) -> Self {
        match e {
            PolarityError::Alg(a) => a.into(),
            PolarityError::NotHomogeneous
            | PolarityError::ZeroPolynomial
            | PolarityError::UnsupportedDegree { .. }
            | PolarityError::OutOfRange(_) => CliError::Usage(e.to_string()),
            _ => CliError::Run(e.to_string()),
        }
    }
}

impl From<FflabError> for CliError {
    fn from(e: FflabError) -> Self {
        match e {
            FflabError::Alg(a) => a.into(),
            FflabError::Polarity(p) => p.into(),
            FflabError::GuardExceeded { .. } | FflabError::Config(_) => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Alg(a) => a.into(),
            ConstructionError::Polarity(p) => p.into(),
            ConstructionError::InvalidSpec(_) => CliError::Usage(e.to_string()),
            ConstructionError::Degenerate(_) => CliError::Run(e.to_string()),
        }
    }
}

impl From<SubHankelError> for CliError {
    fn from(e: SubHankelError) -> Self {
        match e {
            SubHankelError::OrderOutOfRange(_) | SubHankelError::IndexOutOfRange { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Run(e.to_string()),
        }
    }
}

impl From<ScrollError> for CliError {
    fn from(e: ScrollError) -> Self {
        match e {
            ScrollError::InvalidArgs(_) | ScrollError::TooFewSamples { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Run(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "polaris",
    version,
    about = "Polar maps, Hessians and homaloidal hypersurfaces"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "POLARIS_THREADS")]
    pub threads: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print one CSV row per check on stdout.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Identities of the sub-Hankel determinant f^(r).
    Subhankel(SubhankelArgs),
    /// Gordan–Noether polynomial from a spec file or flags.
    Gn(ConstructionArgs),
    /// Permutti polynomial from a spec file or flags.
    Permutti(ConstructionArgs),
    /// Polar-degree estimate over F_p for a form read from a file.
    Degree(DegreeArgs),
    /// Dual hypersurface of a projected rational normal scroll.
    ScrollDual(ScrollArgs),
    /// A fixed check list.
    Suite(SuiteArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Subhankel(_) => "subhankel",
            Command::Gn(_) => "gn",
            Command::Permutti(_) => "permutti",
            Command::Degree(_) => "degree",
            Command::ScrollDual(_) => "scroll-dual",
            Command::Suite(_) => "suite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubCheck {
    Lemma,
    Minors,
    Hb,
    Hessian,
    Irred,
}

#[derive(Debug, Clone, clap::Args, Serialize)]
pub struct SubhankelArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "lemma,minors,hb,hessian,irred"
    )]
    pub checks: Vec<SubCheck>,
}

#[derive(Debug, Clone, clap::Args, Serialize)]
pub struct ConstructionArgs {
    /// JSON spec file; overrides the numeric flags.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// GN only.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub seed: u64,
    /// Random points for the Hessian check.
    #[arg(long, default_value_t = suites::HESSIAN_TRIALS)]
    pub trials: usize,
    /// Permutti only: measure z(f) and v(f).
    #[arg(long)]
    pub zv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    Homaloidal,
    NotDominant,
}

#[derive(Debug, Clone, clap::Args, Serialize)]
pub struct DegreeArgs {
    /// Form in the polynomial text format; `# vars = N` sets the ring.
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub vars: Option<usize>,
    /// Default: a prime keeping P^r(F_p) small.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub samples: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Turn the estimate into a pass/fail check.
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
    /// Write the fiber-size histogram as CSV (fiber_size,count).
    #[arg(long)]
    pub histogram_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, clap::Args, Serialize)]
pub struct ScrollArgs {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long, default_value_t = P_INTERPOLATION)]
    pub p: u32,
    /// Default: 1.2 times the number of monomials of degree a+b.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub seed: u64,
    /// Lift the dual form to the integers and estimate its polar degree.
    #[arg(long)]
    pub verify_degree: bool,
    /// Use S(a,b) itself instead of Y(a,b).
    #[arg(long)]
    pub scroll: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Dolgachev,
    Ext,
    SubhankelAll,
    GnPermutti,
    Serie,
}

#[derive(Debug, Clone, clap::Args, Serialize)]
pub struct SuiteArgs {
    #[arg(long, value_enum)]
    pub name: SuiteName,
    /// Prime for the estimator (dolgachev, ext) or the interpolation (serie).
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub seed: u64,
    /// Ambient dimension for `ext`.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
}

/// Everything a report echoes: the command, its flags and the defaults.
#[derive(Debug, Clone, Serialize)]
struct Config<'a> {
    #[serde(flatten)]
    command: &'a Command,
    defaults: Defaults,
}

#[derive(Debug, Clone, Serialize)]
struct Defaults {
    samples: usize,
    epsilon: f64,
    p_interpolation: u32,
    hessian_trials: usize,
    degree_primes: [(usize, u32); 5],
}

fn defaults() -> Defaults {
    Defaults {
        samples: DEFAULT_SAMPLES,
        epsilon: DEFAULT_EPSILON,
        p_interpolation: P_INTERPOLATION,
        hessian_trials: suites::HESSIAN_TRIALS,
        degree_primes: [2, 3, 4, 5, 6].map(|r| (r, default_prime(r))),
    }
}

/// Runs a parsed command and returns its report.
pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = Report::new(
        cmd.name(),
        Config {
            command: cmd,
            defaults: defaults(),
        },
    );
    let checks = match cmd {
        Command::Subhankel(a) => subhankel(a)?,
        Command::Gn(a) => construction(a, true)?,
        Command::Permutti(a) => construction(a, false)?,
        Command::Degree(a) => degree(a)?,
        Command::ScrollDual(a) => scroll_dual(a)?,
        Command::Suite(a) => match a.name {
            SuiteName::Dolgachev => suites::dolgachev(a.p, a.seed)?,
            SuiteName::Ext => suites::ext(a.r, a.p, a.seed)?,
            SuiteName::SubhankelAll => suites::subhankel_all(8, 6)?,
            SuiteName::GnPermutti => suites::gn_permutti(a.seed - 1)?,
            SuiteName::Serie => suites::serie(a.p, a.seed)?,
        },
    };
    for c in checks {
        report.push(c);
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

fn subhankel(a: &SubhankelArgs) -> Result<Vec<Check>, CliError> {
    let b = SubHankelBundle::build(a.r)?;
    let mut out = Vec::new();
    for c in &a.checks {
        out.push(match c {
            SubCheck::Lemma => suites::lemma_check(&b),
            SubCheck::Minors => suites::minors_check(&b)?,
            SubCheck::Hb => suites::hb_check(&b)?,
            SubCheck::Hessian => suites::hessian_check(&b)?,
            SubCheck::Irred => {
                let rep = irreducibility_structure(&b);
                Check::new(
                    format!("irreducibility r={}", a.r),
                    Status::from_ok(rep.ok),
                    format!(
                        "degree {} in x0, coefficient {}",
                        rep.x0_degree, rep.x0_coefficient
                    ),
                    &rep,
                )
            }
        });
    }
    Ok(out)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag} (or give --spec)")))
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn construction(a: &ConstructionArgs, gn: bool) -> Result<Vec<Check>, CliError> {
    let file = match &a.spec {
        Some(path) => read_spec(&read(path)?)?,
        None if gn => SpecFile::Gn(spec::GnFile {
            r: need(a.r, "r")?,
            t: need(a.t, "t")?,
            m: need(a.m, "m")?,
            n: need(a.n, "n")?,
            d: need(a.d, "d")?,
            seed: Some(a.seed),
            h: None,
            psi: None,
            a: None,
            p: None,
        }),
        None => SpecFile::Permutti(spec::PermuttiFile {
            r: need(a.r, "r")?,
            t: need(a.t, "t")?,
            n: need(a.n, "n")?,
            d: need(a.d, "d")?,
            seed: Some(a.seed),
            m: None,
            p: None,
        }),
    };
    let (label, h, t, bound, exact, zv_spec) = match (&file, gn) {
        (SpecFile::Gn(g), true) => {
            let poly = g.build()?;
            let label = format!("gn ({},{},{},{}) d={}", g.r, g.t, g.m, g.n, g.d);
            (label, poly.hypersurface, g.t, g.d - poly.mu, false, None)
        }
        (SpecFile::Permutti(p), false) => {
            let poly = p.build()?;
            let label = format!("permutti ({},{},{}) d={}", p.r, p.t, p.n, p.d);
            (
                label,
                poly.hypersurface,
                p.t,
                p.d - poly.mu,
                true,
                p.seeded(),
            )
        }
        _ => {
            return Err(CliError::Usage(format!(
                "spec file type does not match the `{}` command",
                if gn { "gn" } else { "permutti" }
            )))
        }
    };
    let mut out = Vec::new();
    let rep = vanishing_hessian_check(&h, a.trials, a.seed)?;
    out.push(Check::new(
        format!("{label}: vanishing hessian"),
        Status::from_ok(rep.hessian.is_zero()),
        format!("zero at {} points, rho = {}", a.trials, rep.rho),
        serde_json::json!({ "poly": h.poly().to_string(), "hessian": rep }),
    ));
    let cone = is_cone(&h)?;
    out.push(Check::new(
        format!("{label}: cone test"),
        Status::Pass,
        if cone.is_cone { "cone" } else { "not a cone" },
        serde_json::json!({ "is_cone": cone.is_cone }),
    ));
    let k = core_multiplicity(&h, t)?;
    let ok = if exact { k == bound } else { k >= bound };
    out.push(Check::new(
        format!("{label}: core multiplicity"),
        Status::from_ok(ok),
        format!("{k} {} {bound}", if exact { "==" } else { ">=" }),
        serde_json::json!({ "multiplicity": k, "d_minus_mu": bound }),
    ));
    if a.zv && !gn {
        out.push(match zv_spec {
            Some(s) => {
                let rep = z_and_v_check(&s)?;
                Check::new(
                    format!("{label}: z and v"),
                    Status::from_ok(rep.ok()),
                    format!(
                        "z = {} (expected {}), v = {} (expected {})",
                        rep.z, rep.z_expected, rep.v, rep.v_expected
                    ),
                    &rep,
                )
            }
            None => Check::new(
                format!("{label}: z and v"),
                Status::Inconclusive,
                "skipped: z and v are measured on seeded instances only",
                serde_json::Value::Null,
            ),
        });
    }
    Ok(out)
}

fn degree_status(e: &DegreeEstimate, expect: Option<Expect>) -> Status {
    match expect {
        Some(Expect::Homaloidal) => Status::from_ok(e.verdict.is_homaloidal()),
        Some(Expect::NotDominant) => Status::from_ok(e.verdict == Verdict::NotDominant),
        None => match &e.verdict {
            Verdict::DeltaEq {
                heuristic: false, ..
            }
            | Verdict::NotDominant => Status::Pass,
            Verdict::DeltaEq {
                heuristic: true, ..
            } => Status::HeuristicPass,
            Verdict::DeltaGe { .. } | Verdict::Inconclusive { .. } => Status::Inconclusive,
        },
    }
}

fn degree(a: &DegreeArgs) -> Result<Vec<Check>, CliError> {
    let f = parse_poly_with_header(&read(&a.poly)?, a.vars, Rationals)
        .map_err(|e| CliError::Usage(format!("{}: {e}", a.poly.display())))?;
    let h = Hypersurface::new(f)?;
    let r = h.r();
    let cfg = DegreeConfig {
        p: a.p.unwrap_or(default_prime(r)),
        samples: a.samples,
        seed: a.seed,
        epsilon: a.epsilon,
    };
    let e = polar_degree(&gradient(&h)?, &cfg)?;
    if let Some(path) = &a.histogram_csv {
        let mut w = csv::Writer::from_path(path)
            .map_err(|err| CliError::Usage(format!("{}: {err}", path.display())))?;
        let io = |err: csv::Error| CliError::Run(err.to_string());
        w.write_record(["fiber_size", "count"]).map_err(io)?;
        for (k, c) in &e.fiber_histogram {
            w.write_record([k.to_string(), c.to_string()]).map_err(io)?;
        }
        w.flush().map_err(|err| CliError::Run(err.to_string()))?;
    }
    Ok(vec![Check::new(
        "polar degree",
        degree_status(&e, a.expect),
        format!(
            "{} at p={}, {} singleton fibers, image ratio {:.3}",
            suites::verdict_text(&e.verdict),
            e.p,
            e.singleton_fibers,
            e.image_ratio.value
        ),
        serde_json::json!({ "poly": h.poly().to_string(), "estimate": e }),
    )])
}

fn scroll_dual(a: &ScrollArgs) -> Result<Vec<Check>, CliError> {
    let chain = if a.scroll {
        ProjectionChain::identity(a.a, a.b)?
    } else {
        build_y(a.a, a.b, a.seed)?
    };
    let d = (a.a + a.b) as u32;
    let what = if a.scroll { "S" } else { "Y" };
    let label = format!("{what}({},{})*", a.a, a.b);
    let mut out = Vec::new();
    let interp = match interpolate_dual(&chain, d, a.p, a.samples, a.seed) {
        Ok(f) => f,
        Err(e @ (ScrollError::DegreeTooLow { .. } | ScrollError::DegenerateSamples { .. })) => {
            out.push(Check::new(
                format!("{label}: interpolation"),
                Status::Fail,
                e.to_string(),
                serde_json::json!({ "chain": chain.summary() }),
            ));
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    let ok = interp.kernel_dim_below == 0 && interp.kernel_dim == 1 && interp.held_out_ok();
    out.push(Check::new(
        format!("{label}: interpolation"),
        Status::from_ok(ok),
        format!(
            "degree {d} over F_{}: kernel dims ({},{}), held-out {}/{}",
            interp.p,
            interp.kernel_dim_below,
            interp.kernel_dim,
            interp.held_out.map_or(0, |h| h.0),
            interp.held_out.map_or(0, |h| h.1),
        ),
        serde_json::json!({ "chain": chain.summary(), "dual": interp }),
    ));
    if a.verify_degree {
        let lift = lift_dual_form(&chain, d, a.seed)?;
        out.push(Check::new(
            format!("{label}: integer lift"),
            Status::from_ok(lift.verified),
            format!(
                "{} primes, checked mod {}",
                lift.primes.len(),
                lift.check_prime
            ),
            &lift,
        ));
        let h = Hypersurface::new(lift.form.clone())?;
        let cfg = DegreeConfig::for_r(h.r(), a.seed);
        let e = polar_degree(&gradient(&h)?, &cfg)?;
        let expect = (!a.scroll).then_some(Expect::Homaloidal);
        out.push(Check::new(
            format!("{label}: polar degree"),
            degree_status(&e, expect),
            format!("{} at p={}", suites::verdict_text(&e.verdict), e.p),
            &e,
        ));
        if !a.scroll {
            let m = multiplicity_along(&lift.form, &chain.l_points[0], &chain.l_points[1])?;
            let expected = d - a.a as u32;
            out.push(Check::new(
                format!("{label}: multiplicity along L-perp"),
                Status::from_ok(m == expected),
                format!("{m} (expected {expected})"),
                serde_json::json!({ "multiplicity": m, "expected": expected }),
            ));
        }
    }
    Ok(out)
}

/// Parses `argv` and runs the command inside a pool of the requested size.
pub fn run_to_report<I, T>(argv: I) -> Result<(Cli, Report), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.render().to_string()))?;
    let report = with_threads(cli.threads, || execute(&cli.command))??;
    Ok((cli, report))
}

fn with_threads<R: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Run(e.to_string()))?;
    Ok(pool.install(f))
}

/// Full entry point: prints, writes files and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        let code = if e.use_stderr() { 2 } else { 0 };
        let _ = e.print();
        return code;
    }
    match run_to_report(argv) {
        Ok((cli, report)) => match emit(&cli, &report) {
            Ok(()) => report.exit_code(),
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(report).map_err(|e| CliError::Run(e.to_string()))?;
    let lines = report.summary_lines().join("\n");
    if let Some(path) = &cli.out {
        std::fs::write(path, json + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        if cli.csv {
            print!(
                "{}",
                report.to_csv().map_err(|e| CliError::Run(e.to_string()))?
            );
        } else {
            println!("{lines}");
        }
    } else if cli.csv {
        eprintln!("{lines}");
        print!(
            "{}",
            report.to_csv().map_err(|e| CliError::Run(e.to_string()))?
        );
    } else {
        eprintln!("{lines}");
        println!("{json}");
    }
    Ok(())
}
