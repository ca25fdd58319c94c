//! Command-line front end for the duke-bounds library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 optimizer budget or resource limit exhausted.

mod config;
mod manifest;
mod output;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use duke_bounds::bounds::{
    objective_parts_with, BoundInput, FVariant, PRIME_POWER_TAIL, WEIGHTED_SUM_OFFSET,
};
use duke_bounds::envelope::{
    c4_samples, constants_for, solve_tau, strip_samples, tau, tau_gap_samples,
    verify_gamma_envelope, verify_strip_max, verify_weight_integral, ParamTriple,
};
use duke_bounds::kappa::{self, batch_report, parse_records, FieldRecord, ParsedRecords};
use duke_bounds::mertens::{
    envelope_samples, verify_lemma_window, MertensEnvelope, MEISSEL_MERTENS, WINDOW_HI, WINDOW_LO,
};
use duke_bounds::optimizer::{self, minimize_hk, Objective, OptimConfig, OptimResult};
use duke_bounds::reference as published;
use duke_bounds::specfun::{prime_log_weight_sum, prime_zeta, zeta_real, EvalOptions};
use duke_bounds::{bounds, reproduce, Error};

use config::{FileConfig, Usage};
use manifest::{ConfigSnapshot, Recorder};
use output::{csv, kappa_csv, num, report_line};

#[derive(Parser)]
#[command(
    name = "duke-bounds",
    version,
    about = "Explicit GRH-conditional constants for Artin L-function short sums and Dedekind zeta residues"
)]
struct Cli {
    /// TOML file with flat `key = value` overrides (grid_resolution, nm_restarts,
    /// nm_tol, max_evals, seed, abs_tol, rel_tol, tail_cutoff).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "DUKE_THREADS")]
    threads: Option<usize>,

    #[command(flatten)]
    optim: OptimArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OptimArgs {
    /// Grid points per axis for the coarse scan [default: 24]
    #[arg(long, global = true)]
    grid_resolution: Option<usize>,
    /// Nelder–Mead restarts from the best grid cells [default: 16]
    #[arg(long, global = true)]
    nm_restarts: Option<usize>,
    /// Relative convergence tolerance on the simplex values [default: 1e-10]
    #[arg(long, global = true)]
    nm_tol: Option<f64>,
    /// Total objective evaluations allowed [default: 1000000]
    #[arg(long, global = true)]
    max_evals: Option<u64>,
    /// Seed for the simplex orientation [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Mertens envelope, strip maximum, gamma envelope,
    /// elementary inequalities and the weight integral.
    Verify {
        /// Mertens window as lo:hi
        #[arg(long, default_value = "1.048:13.5", value_parser = parse_window)]
        window: (f64, f64),
        /// Lattice size per axis for the strip check
        #[arg(long, default_value_t = reproduce::STRIP_GRID)]
        strip_grid: usize,
        /// Samples per axis for the gamma-envelope check
        #[arg(long, default_value_t = reproduce::GAMMA_SAMPLES)]
        gamma_samples: usize,
    },
    /// Minimize A + B, H or K over the search region.
    Optimize {
        #[arg(long, value_enum, default_value_t = ObjectiveKind::Theorem)]
        objective: ObjectiveKind,
        /// Character degree (H and K only)
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Conductor
        #[arg(long = "N", default_value_t = 3.0)]
        n: f64,
        /// Also write the optimizer trace as CSV
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Write the data behind figures 1 to 5 as CSV.
    FigureData {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        figure: u8,
        /// Output file (default: stdout)
        #[arg(long)]
        output: Option<PathBuf>,
        /// Samples per axis
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Residue bounds for number fields.
    Kappa {
        /// File of `degree,abs_discriminant[,label]` lines
        #[arg(long, conflicts_with_all = ["degree", "disc"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "disc")]
        degree: Option<u32>,
        /// Discriminant (sign ignored)
        #[arg(long, requires = "degree", allow_hyphen_values = true)]
        disc: Option<String>,
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::General)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Recompute the H/K table and the constant summary.
    Tables,
    /// Run every reproduction criterion.
    #[command(alias = "paper-check")]
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveKind {
    Theorem,
    #[value(name = "H")]
    H,
    #[value(name = "K")]
    K,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    PerDegree,
    Fresh,
}

impl ModeArg {
    fn mode(self) -> kappa::Mode {
        match self {
            ModeArg::General => kappa::Mode::General,
            ModeArg::PerDegree => kappa::Mode::PerDegree,
            ModeArg::Fresh => kappa::Mode::Fresh,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModeArg::General => "general",
            ModeArg::PerDegree => "per-degree",
            ModeArg::Fresh => "fresh",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_window(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("hi: {e}"))?;
    Ok((lo, hi))
}

/// Status of a command that ran to completion.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Failed = 1,
    Budget = 3,
}

struct Ctx {
    optim: OptimConfig,
    eval: EvalOptions,
    recorder: Recorder,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            error_code(&e)
        }
    };
    ExitCode::from(code)
}

fn error_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Resource { .. }) => 3,
        Some(
            Error::Domain { .. }
            | Error::Precondition(_)
            | Error::Parse { .. }
            | Error::Unsupported(_),
        ) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let mut optim = OptimConfig::default();
    let mut eval = EvalOptions::default();
    if let Some(path) = &cli.config {
        FileConfig::load(path)?.apply(&mut optim, &mut eval);
    }
    let o = &cli.optim;
    optim.grid_resolution = o.grid_resolution.unwrap_or(optim.grid_resolution);
    optim.nm_restarts = o.nm_restarts.unwrap_or(optim.nm_restarts);
    optim.nm_tol = o.nm_tol.unwrap_or(optim.nm_tol);
    optim.max_evals = o.max_evals.unwrap_or(optim.max_evals);
    optim.seed = o.seed.unwrap_or(optim.seed);
    optim.validate().map_err(|e| Usage(e.to_string()))?;
    eval.validate().map_err(|e| Usage(e.to_string()))?;

    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Usage("thread count must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let snapshot = ConfigSnapshot {
        optim: optim.clone(),
        eval,
        threads: rayon::current_num_threads(),
    };
    let mut ctx = Ctx {
        optim,
        eval,
        recorder: Recorder::new(snapshot),
    };

    let status = match cli.command {
        Command::Verify {
            window,
            strip_grid,
            gamma_samples,
        } => cmd_verify(window, strip_grid, gamma_samples)?,
        Command::Optimize {
            objective,
            d,
            n,
            trace,
        } => cmd_optimize(&mut ctx, objective, d, n, trace)?,
        Command::FigureData {
            figure,
            output,
            points,
        } => cmd_figure_data(&mut ctx, figure, output, points)?,
        Command::Kappa {
            input,
            degree,
            disc,
            label,
            mode,
            format,
        } => cmd_kappa(&mut ctx, input, degree, disc, label, mode, format)?,
        Command::Tables => cmd_tables(&ctx)?,
        Command::Check => cmd_check(&ctx),
    };
    ctx.recorder.finish(status as u8, cli.manifest.as_ref())?;
    Ok(status as u8)
}

fn write_out(ctx: &mut Ctx, path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            ctx.recorder.output(p);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_verify(window: (f64, f64), strip_grid: usize, gamma_samples: usize) -> Result<Status> {
    let (lo, hi) = window;
    let env = MertensEnvelope::with_limit(hi.ceil().max(14.0) as u64 + 1)?;
    let reports = vec![
        verify_lemma_window(lo, hi, &env)?,
        verify_strip_max(tau(), strip_grid)?,
        verify_strip_max(0.125, strip_grid)?,
        verify_gamma_envelope(tau(), gamma_samples)?,
        bounds::verify_elementary_inequalities(reproduce::ELEMENTARY_POINTS)?,
        verify_weight_integral()?,
    ];
    for r in &reports {
        println!("{}", report_line(r));
    }
    match reports.iter().find(|r| !r.passed) {
        Some(first) => {
            eprintln!("verification failed: {}", first.name);
            Ok(Status::Failed)
        }
        None => Ok(Status::Ok),
    }
}

fn cmd_optimize(
    ctx: &mut Ctx,
    kind: ObjectiveKind,
    d: u32,
    n: f64,
    trace: Option<PathBuf>,
) -> Result<Status> {
    let objective = match kind {
        ObjectiveKind::Theorem => Objective::Theorem { n },
        ObjectiveKind::H => Objective::H { d, n },
        ObjectiveKind::K => Objective::K { d, n },
    };
    let cfg = OptimConfig {
        record_trace: trace.is_some(),
        ..ctx.optim.clone()
    };
    let res = optimizer::minimize(objective, &cfg)?;
    let mut text = String::new();
    let name = match kind {
        ObjectiveKind::Theorem => "theorem",
        ObjectiveKind::H => "H",
        ObjectiveKind::K => "K",
    };
    writeln!(text, "objective={name}")?;
    if !matches!(kind, ObjectiveKind::Theorem) {
        writeln!(text, "d={d}")?;
    }
    writeln!(text, "N={n}")?;
    write_result(&mut text, &res)?;
    if let ObjectiveKind::Theorem = kind {
        // A + B·d ≤ (A + B)·d for every d ≥ 1
        writeln!(text, "theorem_constant={}", res.value)?;
    }
    print!("{text}");
    if let (Some(path), Some(points)) = (trace, &res.trace) {
        let rows = points.iter().map(|t| {
            vec![
                t.restart.to_string(),
                format!("{}", t.point.beta),
                format!("{}", t.point.delta),
                format!("{}", t.point.eta),
                format!("{}", t.value),
            ]
        });
        let body = csv(
            &[
                ("objective", name.to_string()),
                ("seed", cfg.seed.to_string()),
            ],
            &["restart", "beta", "delta", "eta", "value"],
            rows,
        );
        write_out(ctx, Some(&path), &body)?;
    }
    Ok(if res.converged {
        Status::Ok
    } else {
        Status::Budget
    })
}

fn write_result(text: &mut String, res: &OptimResult) -> std::fmt::Result {
    writeln!(text, "beta={}", res.best.beta)?;
    writeln!(text, "delta={}", res.best.delta)?;
    writeln!(text, "eta={}", res.best.eta)?;
    writeln!(text, "value={}", res.value)?;
    writeln!(text, "evaluations={}", res.evaluations)?;
    writeln!(text, "converged={}", res.converged)
}

fn cmd_figure_data(
    ctx: &mut Ctx,
    figure: u8,
    output: Option<PathBuf>,
    points: usize,
) -> Result<Status> {
    if points < 10 {
        return Err(Usage(format!("--points must be at least 10, got {points}")).into());
    }
    let fig = ("figure", figure.to_string());
    let body = match figure {
        1 => {
            let env = MertensEnvelope::with_limit(100)?;
            let rows = envelope_samples(WINDOW_LO, WINDOW_HI, points, &env)?;
            csv(
                &[fig, ("window", format!("{WINDOW_LO}:{WINDOW_HI}"))],
                &["x", "abs_defect", "envelope"],
                rows.into_iter()
                    .map(|(x, d, m)| vec![num(x), num(d), num(m)]),
            )
        }
        2 => csv(
            &[fig, ("tau", format!("{}", tau()))],
            &["delta", "g"],
            tau_gap_samples(points)
                .into_iter()
                .map(|(d, g)| vec![num(d), num(g)]),
        ),
        3 => {
            let lo = 0.05;
            csv(
                &[fig, ("delta_range", format!("{lo}:{}", tau()))],
                &["delta", "c4"],
                c4_samples(lo, points)
                    .into_iter()
                    .map(|(d, c)| vec![num(d), num(c)]),
            )
        }
        4 => {
            let t_max = 5.0;
            let delta = tau();
            let rows = strip_samples(delta, t_max, points)?;
            csv(
                &[
                    fig,
                    ("delta", format!("{delta}")),
                    ("t_max", format!("{t_max}")),
                ],
                &["sigma", "t", "f"],
                rows.into_iter()
                    .map(|(s, t, f)| vec![num(s), num(t), num(f)]),
            )
        }
        5 => {
            let rows = optimizer::objective_surface(points)?;
            csv(
                &[fig, ("delta", format!("{}", tau())), ("N", "3".into())],
                &["beta", "eta", "value"],
                rows.into_iter()
                    .map(|p| vec![num(p.beta), num(p.eta), num(p.value)]),
            )
        }
        _ => unreachable!("clap restricts the figure id"),
    };
    write_out(ctx, output.as_ref(), &body)?;
    Ok(Status::Ok)
}

#[allow(clippy::too_many_arguments)]
fn cmd_kappa(
    ctx: &mut Ctx,
    input: Option<PathBuf>,
    degree: Option<u32>,
    disc: Option<String>,
    label: Option<String>,
    mode: ModeArg,
    format: Format,
) -> Result<Status> {
    let parsed = match (input, degree, disc) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            parse_records(&text)
        }
        (None, Some(degree), Some(disc)) => {
            let abs: f64 = disc
                .trim_start_matches(['+', '-'])
                .parse()
                .map_err(|_| Usage(format!("--disc {disc:?} is not a number")))?;
            let rec = FieldRecord::new(degree, abs, label).map_err(|e| Usage(e.to_string()))?;
            ParsedRecords {
                records: vec![(1, rec)],
                errors: Vec::new(),
            }
        }
        _ => return Err(Usage("give --input, or --degree with --disc".into()).into()),
    };
    let report = batch_report(&parsed, mode.mode(), &ctx.optim);
    match format {
        Format::Csv => print!("{}", kappa_csv(&report, mode.name())),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    for e in &report.errors {
        eprintln!("line {}: {}", e.line, e.message);
    }
    Ok(if report.errors.is_empty() {
        Status::Ok
    } else {
        Status::Failed
    })
}

fn cmd_tables(ctx: &Ctx) -> Result<Status> {
    let mut t = String::new();
    writeln!(
        t,
        "H/K table (computed at the published triple, then re-optimized)"
    )?;
    writeln!(
        t,
        "{:>2} {:>2} {:>5} | {:>8} {:>10} {:>9} | {:>8} {:>10} {:>9} | {:>10} {:>10}",
        "n", "d", "N0", "H pub", "H calc", "delta", "K pub", "K calc", "delta", "H opt", "K opt"
    )?;
    let mut worst = 0.0f64;
    for row in published::HK_TABLE {
        let (b, dl, e) = row.triple;
        let input = BoundInput::new(ParamTriple::new(b, dl, e)?, row.d, row.n0)?;
        let (h, k) = bounds::h_and_k(&input)?;
        let (ho, ko) = minimize_hk(row.d, row.n0, &ctx.optim)?;
        worst = worst.max((h - row.h).abs());
        writeln!(
            t,
            "{:>2} {:>2} {:>5} | {:>8} {:>10.6} {:>+9.2e} | {:>8} {:>10.6} {:>+9.2e} | {:>10.6} {:>10.6}",
            row.degree, row.d, row.n0, row.h, h, h - row.h, row.k, k, k - row.k, ho.value, ko.value
        )?;
    }
    writeln!(t, "largest H delta: {worst:.2e}")?;

    writeln!(t)?;
    writeln!(t, "constant summary")?;
    let tau_calc = solve_tau()?;
    let c1 = duke_bounds::envelope::c1();
    let beta_min = 5.0 / (2.0 - 4.0 * tau_calc);
    let line = |t: &mut String, name: &str, calc: f64, publ: Option<f64>| match publ {
        Some(p) => writeln!(
            t,
            "{name:<26} {calc:>22.16} {p:>22.16} {:>+10.2e}",
            calc - p
        ),
        None => writeln!(t, "{name:<26} {calc:>22.16}"),
    };
    writeln!(
        t,
        "{:<26} {:>22} {:>22} {:>10}",
        "", "computed", "published", "delta"
    )?;
    line(&mut t, "M (stored)", MEISSEL_MERTENS, None)?;
    line(&mut t, "C1", c1, Some(published::C1))?;
    line(&mut t, "tau", tau_calc, Some(published::TAU))?;
    line(
        &mut t,
        "5/(2 - 4 tau)",
        beta_min,
        Some(published::BETA_THRESHOLD),
    )?;
    let (b, dl, e) = published::OPTIMAL_TRIPLE;
    let p = ParamTriple::new(b, dl, e)?;
    let c = constants_for(&p)?;
    writeln!(t, "at (beta, delta, eta) = ({b}, {dl}, {e}):")?;
    for (name, v) in [
        ("C2", c.c2),
        ("C3", c.c3),
        ("C4", c.c4),
        ("C5", c.c5),
        ("C6", c.c6),
        ("C7", c.c7),
        ("mu", c.mu),
    ] {
        line(&mut t, name, v, None)?;
    }
    let w = prime_log_weight_sum(&ctx.eval)?;
    line(
        &mut t,
        "sum log p/(p(p-1))",
        w.value,
        Some(published::PRIME_LOG_WEIGHT),
    )?;
    writeln!(
        t,
        "{:<26} {:>22.16} < {PRIME_POWER_TAIL}",
        "  with tail bound",
        w.upper()
    )?;
    let pz = prime_zeta(1.5, &ctx.eval)?;
    let lz = zeta_real(1.5, &ctx.eval)?.ln();
    writeln!(
        t,
        "{:<26} {pz:>22.16} < {}",
        "P(3/2)",
        published::PRIME_ZETA_THREE_HALVES_MAX
    )?;
    writeln!(
        t,
        "{:<26} {lz:>22.16} < {}",
        "log zeta(3/2)",
        published::LOG_ZETA_THREE_HALVES_MAX
    )?;
    writeln!(
        t,
        "{:<26} {:>22.16} <= {WEIGHTED_SUM_OFFSET}",
        "0.38 + P(3/2) + log zeta",
        0.38 + pz + lz
    )?;

    writeln!(t)?;
    writeln!(t, "F leading term (A + B at the published triple, N = 3)")?;
    let input = BoundInput::new(p, 1, 3.0)?;
    let body = objective_parts_with(&input, FVariant::Body)?.g(1);
    for (name, variant) in [
        ("y/x (used)", FVariant::Body),
        ("(e-1) y/x", FVariant::Summary),
        ("1.25506 y/(x log y)", FVariant::Rosser),
    ] {
        let v = objective_parts_with(&input, variant)?.g(1);
        writeln!(t, "{name:<26} {v:>22.16} {:>+10.2e}", v - body)?;
    }
    writeln!(
        t,
        "note: the constant summary lists F with (e-1) y/x; the derivation gives y/x"
    )?;
    print!("{t}");
    Ok(Status::Ok)
}

fn cmd_check(ctx: &Ctx) -> Status {
    let outcomes = reproduce::run_all(&ctx.optim, &ctx.eval);
    for o in &outcomes {
        println!("{o}");
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed} of {} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        Status::Ok
    } else {
        Status::Failed
    }
}
