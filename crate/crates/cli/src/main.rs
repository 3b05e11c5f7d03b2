//! Command-line driver: exact radial solutions, grid solver runs, field
//! diagnostics, and parameter sweeps.

use clap::{Args, Parser, Subcommand};
use popmin::config::{parse_run_config, render_run_config, RunConfig};
use popmin::diagnostics::{build_report, DiagnosticsReport, ReportSettings};
use popmin::error::Error;
use popmin::grid::ScalarField;
use popmin::io;
use popmin::potential::validate_spec;
use popmin::radial::{
    radial_bounds_pair, radial_minimizer, rstar_roots, unit_ball_volume, RadialParams,
};
use popmin::solver::run_descent;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Compute and verify minimizers of the constrained density energy
/// int(|grad u|^2 + V u^2) subject to 0 <= u <= 1.
///
/// Lengths (R, r_tilde, T, h, radii) share one arbitrary unit; the potential
/// strengths alpha, beta have units of 1/length; energies follow as
/// length^(d-2); tau and all tolerances are dimensionless.
#[derive(Parser)]
#[command(name = "popmin", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact radially symmetric minimizer for a ball-shaped well.
    ///
    /// Prints the contact radius R*, the branch coefficients a, b, c and the
    /// energy. With --r-tilde, also builds the lower/upper comparison pair
    /// (well balls of radius r_tilde and R, strength --kappa) and profiles
    /// them as r,u_lower,u_upper.
    Radial(RadialArgs),
    /// Run the projected descent solver from a config file and dump
    /// field.csv, history.csv, report.json and run.json.
    Solve(SolveArgs),
    /// Recompute every diagnostic on a dumped field and print the report
    /// with its pass/fail contract lines.
    Check(CheckArgs),
    /// Sweep one radial parameter; emit CSV of R*, energy and contact size.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct RadialArgs {
    /// Space dimension (2 or 3).
    #[arg(long = "d")]
    dim: u32,
    /// Exterior strength alpha (V = alpha^2 outside the well) [1/length].
    #[arg(long)]
    alpha: f64,
    /// Well strength kappa (V = -kappa^2 inside) [1/length].
    #[arg(long)]
    kappa: f64,
    /// Well radius R [length].
    #[arg(long = "R")]
    well_radius: f64,
    /// Inner comparison radius; enables the lower/upper pair [length].
    #[arg(long = "r-tilde")]
    r_tilde: Option<f64>,
    /// Write a sampled profile CSV here.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Profile sample count.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Profile outer radius [length]; defaults to 3R.
    #[arg(long = "r-max")]
    r_max: Option<f64>,
}

#[derive(Args)]
struct SolveArgs {
    /// Run configuration file (line-oriented `key = value`).
    ///
    /// Keys: alpha, beta [1/length]; r_tilde, R_bound, T, h [length];
    /// shape.kind (disc | ellipse | rect | polygon | disc_with_hole) with
    /// its shape.* numeric fields [length]; tau, relaxation, linear_tol,
    /// stop_tol, contact_eps [dimensionless]; max_iters, seed [integer];
    /// use_radial_clamp [bool].
    #[arg(long)]
    config: PathBuf,
    /// Output directory for field.csv, history.csv, report.json, run.json.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Override the pseudo-time step tau.
    #[arg(long)]
    tau: Option<f64>,
    /// Override the truncation half-width T [length].
    #[arg(long = "T")]
    half_width: Option<f64>,
    /// Override the grid spacing h [length].
    #[arg(long = "h")]
    spacing: Option<f64>,
    /// Override the iteration budget.
    #[arg(long)]
    max_iters: Option<usize>,
    /// Override the probe seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override clamping between the radial comparison solutions.
    #[arg(long)]
    use_radial_clamp: Option<bool>,
    /// Override the projection relaxation factor.
    #[arg(long)]
    relaxation: Option<f64>,
}

#[derive(Args)]
struct CheckArgs {
    /// Field CSV (as written by `solve` or the radial sampler).
    #[arg(long)]
    field: PathBuf,
    /// Config naming the potential the field was computed against.
    #[arg(long)]
    config: PathBuf,
    /// Decay-fit annulus radii [length]; defaults to
    /// (min(2R, 0.6T), min(4R, 0.9T)).
    #[arg(long = "fit-annulus", num_args = 2)]
    fit_annulus: Option<Vec<f64>>,
    /// Write report.json here instead of stdout only.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Space dimension (2 or 3).
    #[arg(long = "d")]
    dim: u32,
    /// Base exterior strength [1/length].
    #[arg(long)]
    alpha: f64,
    /// Base well strength [1/length].
    #[arg(long)]
    kappa: f64,
    /// Base well radius [length].
    #[arg(long = "R")]
    well_radius: f64,
    /// Which parameter to vary: kappa | alpha | R.
    #[arg(long)]
    param: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    steps: usize,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config { .. }
        | Error::Admissibility(_)
        | Error::Dimension(_)
        | Error::Domain(_)
        | Error::BoundOrdering { .. }
        | Error::FieldData(_) => 1,
        Error::NoRoot(_)
        | Error::LinearSolver(_)
        | Error::EmptyContactSet
        | Error::NonpositiveInAnnulus { .. }
        | Error::Io(_) => 2,
    }
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn cmd_radial(args: &RadialArgs) -> popmin::Result<()> {
    let params = RadialParams::new(args.dim, args.kappa, args.alpha, args.well_radius)?;
    let roots = rstar_roots(&params)?;
    let sol = radial_minimizer(&params)?;
    println!("dimension      d      = {}", args.dim);
    println!("well strength  kappa  = {}", args.kappa);
    println!("exterior       alpha  = {}", args.alpha);
    println!("well radius    R      = {}", args.well_radius);
    println!("matching roots found  = {} (largest taken)", roots.len());
    println!("contact radius R*     = {}", fmt12(sol.r_star));
    println!("coefficient    a      = {}", fmt12(sol.a));
    println!("coefficient    b      = {}", fmt12(sol.b));
    println!("coefficient    c      = {}", fmt12(sol.c));
    println!("energy                = {}", fmt12(popmin::radial::radial_energy(&sol)));
    let r_max = args.r_max.unwrap_or(3.0 * args.well_radius);
    if let Some(r_tilde) = args.r_tilde {
        let (lower, upper) =
            radial_bounds_pair(args.dim, args.alpha, args.kappa, r_tilde, args.well_radius)?;
        println!("lower contact  r~*    = {}", fmt12(lower.r_star));
        println!("upper contact  R*     = {}", fmt12(upper.r_star));
        if let Some(path) = &args.profile {
            std::fs::write(path, io::radial_bounds_to_csv(&lower, &upper, r_max, args.samples))?;
            println!("profile written to {}", path.display());
        }
    } else if let Some(path) = &args.profile {
        std::fs::write(path, io::radial_profile_to_csv(&sol, r_max, args.samples))?;
        println!("profile written to {}", path.display());
    }
    Ok(())
}

fn load_config(path: &Path, args: Option<&SolveArgs>) -> popmin::Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg = parse_run_config(&text)?;
    if let Some(a) = args {
        if let Some(v) = a.tau {
            cfg.solver.tau = v;
        }
        if let Some(v) = a.half_width {
            cfg.half_width = v;
        }
        if let Some(v) = a.spacing {
            cfg.spacing = v;
        }
        if let Some(v) = a.max_iters {
            cfg.solver.max_iters = v;
        }
        if let Some(v) = a.seed {
            cfg.seed = v;
        }
        if let Some(v) = a.use_radial_clamp {
            cfg.solver.use_radial_clamp = v;
        }
        if let Some(v) = a.relaxation {
            cfg.solver.relaxation = v;
        }
    }
    Ok(cfg)
}

fn cmd_solve(args: &SolveArgs) -> popmin::Result<()> {
    let cfg = load_config(&args.config, Some(args))?;
    for violation in validate_spec(&cfg.potential) {
        eprintln!("warning: {violation}");
    }
    let grid = cfg.grid()?;
    let (field, history) = run_descent(&cfg.potential, &cfg.solver, grid)?;
    let settings = ReportSettings {
        contact_eps: cfg.solver.contact_eps,
        seed: cfg.seed,
        ..ReportSettings::for_domain(cfg.half_width, cfg.potential.r_bound)
    };
    let report = build_report(&field, &cfg.potential, &settings)?;
    std::fs::create_dir_all(&args.out_dir)?;
    std::fs::write(args.out_dir.join("field.csv"), io::field_to_csv(&field))?;
    std::fs::write(args.out_dir.join("history.csv"), io::history_to_csv(&history))?;
    std::fs::write(args.out_dir.join("report.json"), io::to_json_pretty(&report))?;
    let meta = io::RunMetadata {
        config: &cfg,
        grid,
        summary: io::RunSummary::from_history(&history),
        report: &report,
    };
    std::fs::write(args.out_dir.join("run.json"), io::to_json_pretty(&meta))?;
    std::fs::write(args.out_dir.join("resolved.cfg"), render_run_config(&cfg))?;
    let last = history.records.last();
    println!(
        "run finished: {} iterations, energy = {}, contact area = {}",
        history.records.len(),
        last.map_or(f64::NAN, |r| r.energy),
        last.map_or(f64::NAN, |r| r.contact_area),
    );
    println!("outputs in {}", args.out_dir.display());
    Ok(())
}

fn print_contracts(report: &DiagnosticsReport, spec_alpha: f64, h: f64) {
    let lines: [(&str, f64, f64, bool); 5] = [
        (
            "lewy_stampacchia (max side)",
            report.lewy_stampacchia_max_violation.0.max(report.lewy_stampacchia_max_violation.1),
            10.0 * h,
            report.lewy_stampacchia_max_violation.0 <= 10.0 * h
                && report.lewy_stampacchia_max_violation.1 <= 10.0 * h,
        ),
        (
            "distance_bound ratio",
            report.distance_bound_max_ratio,
            1.0 + 10.0 * h,
            report.distance_bound_max_ratio <= 1.0 + 10.0 * h,
        ),
        (
            "decay slope vs alpha (5%)",
            report.decay_fit_slope,
            spec_alpha,
            (report.decay_fit_slope - spec_alpha).abs() <= 0.05 * spec_alpha,
        ),
        (
            "energy/contact identity gap",
            report.energy_contact_identity_gap,
            0.05,
            report.energy_contact_identity_gap <= 0.05,
        ),
        ("positivity (2h margin)", report.positivity_min, 0.0, report.positivity_min > 0.0),
    ];
    for (name, value, reference, pass) in lines {
        println!(
            "contract {name}: {} (value {value:.6e}, reference {reference:.6e})",
            if pass { "PASS" } else { "FAIL" }
        );
    }
}

fn cmd_check(args: &CheckArgs) -> popmin::Result<()> {
    let cfg = load_config(&args.config, None)?;
    let text = std::fs::read_to_string(&args.field)?;
    let field: ScalarField = io::field_from_csv(&text)?;
    let mut settings = ReportSettings {
        contact_eps: cfg.solver.contact_eps,
        seed: cfg.seed,
        ..ReportSettings::for_domain(field.grid.half_width, cfg.potential.r_bound)
    };
    if let Some(ann) = &args.fit_annulus {
        settings.fit_annulus = (ann[0], ann[1]);
    }
    let report = build_report(&field, &cfg.potential, &settings)?;
    let json = io::to_json_pretty(&report);
    println!("{json}");
    print_contracts(&report, cfg.potential.alpha, field.grid.spacing);
    if let Some(out) = &args.out {
        std::fs::write(out, json)?;
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> popmin::Result<()> {
    if args.steps < 2 {
        return Err(Error::Domain("need at least 2 sweep steps".into()));
    }
    let mut csv = String::from("value,r_star,energy,contact_measure\n");
    for k in 0..args.steps {
        let value = args.from + (args.to - args.from) * (k as f64) / ((args.steps - 1) as f64);
        let (dim, mut kappa, mut alpha, mut radius) =
            (args.dim, args.kappa, args.alpha, args.well_radius);
        match args.param.as_str() {
            "kappa" => kappa = value,
            "alpha" => alpha = value,
            "R" => radius = value,
            other => {
                return Err(Error::Domain(format!(
                    "unknown sweep parameter `{other}` (expected kappa | alpha | R)"
                )))
            }
        }
        match RadialParams::new(dim, kappa, alpha, radius).and_then(|p| radial_minimizer(&p)) {
            Ok(sol) => {
                let measure = unit_ball_volume(dim) * sol.r_star.powi(dim as i32);
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt12(value),
                    fmt12(sol.r_star),
                    fmt12(popmin::radial::radial_energy(&sol)),
                    fmt12(measure)
                ));
            }
            Err(e) => eprintln!("warning: skipping {} = {value}: {e}", args.param),
        }
    }
    std::fs::write(&args.out, csv)?;
    println!("sweep written to {}", args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Radial(args) => cmd_radial(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Check(args) => cmd_check(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
