//! Command line harness around the `talbot` crate: parameter derivation
//! reports, single inversions against suite references, convergence sweeps
//! as CSV, and contour node dumps for plotting.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric failure.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use talbot::contour::ContourParams;
use talbot::params;
use talbot::problems::{self, heat::HeatModel};
use talbot::quadrature::{
    convergence_sweep, invert, FixedSource, ParamSource, SweepPoint, Transform, Value,
};
use talbot::roundoff::{self, RoundoffModel, UNIT_ROUNDOFF};

/// Output directory applied to relative `--output` paths.
const OUT_DIR_ENV: &str = "TALBOT_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "talbot",
    about = "Numerical inverse Laplace transform on truncated Talbot contours",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive optimal contour parameters from first principles and verify
    /// them against the published constants.
    DeriveParams {
        #[arg(value_enum)]
        kind: ContourChoice,
    },
    /// Invert one suite transform at a single (N, t) and compare with its
    /// reference inverse.
    Invert {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Inversion time t > 0
        #[arg(long)]
        t: f64,
        /// Number of midpoint nodes
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = ContourChoice::Cotangent)]
        contour: ContourChoice,
        /// off | k0=<v>  (auto needs a sweep)
        #[arg(long, default_value = "k0=1", value_parser = parse_policy_no_auto)]
        roundoff_control: Policy,
    },
    /// Relative error against the reference for a range of N, written as CSV.
    Sweep {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Inversion time t > 0
        #[arg(long)]
        t: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_start: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_stop: u32,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        n_step: u32,
        #[arg(long, value_enum, default_value_t = ContourChoice::Cotangent)]
        contour: ContourChoice,
        /// off | k0=<v> | auto
        #[arg(long, default_value = "k0=1", value_parser = parse_policy)]
        roundoff_control: Policy,
        /// CSV destination (stdout when omitted); relative paths land in
        /// $TALBOT_OUT_DIR when that is set
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump the midpoint nodes of a contour, plus the accuracy cutoff
    /// line Re(z t) = ln(eps), as CSV for plotting.
    DumpContour {
        #[arg(value_enum)]
        kind: ContourChoice,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ContourChoice {
    Cotangent,
    Rational,
}

#[derive(Args)]
struct ProblemArgs {
    /// f1 | f2 | f3 | heat
    problem: String,
    /// Pole location for f1
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Parameter c of f3
    #[arg(long, default_value_t = 0.4)]
    c: f64,
    /// Parameter r of f3
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    /// Interior grid points per dimension for the heat problem
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Policy {
    Off,
    Fixed(f64),
    Auto,
}

fn parse_policy(s: &str) -> Result<Policy, String> {
    match s {
        "off" => Ok(Policy::Off),
        "auto" => Ok(Policy::Auto),
        _ => s
            .strip_prefix("k0=")
            .and_then(|v| v.parse::<f64>().ok())
            .filter(|v| *v > 0.0 && v.is_finite())
            .map(Policy::Fixed)
            .ok_or_else(|| format!("expected off, auto, or k0=<positive value>, got '{s}'")),
    }
}

fn parse_policy_no_auto(s: &str) -> Result<Policy, String> {
    match parse_policy(s)? {
        Policy::Auto => Err("auto estimation needs a sweep; use the sweep command".into()),
        p => Ok(p),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.kind() == ErrorKind::DisplayHelp || e.kind() == ErrorKind::DisplayVersion => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum RunError {
    Usage(String),
    Numeric(String),
}

impl From<talbot::Error> for RunError {
    fn from(e: talbot::Error) -> Self {
        RunError::Numeric(e.to_string())
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Numeric(format!("io: {e}"))
    }
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::DeriveParams { kind } => derive_params(kind),
        Command::Invert {
            problem,
            t,
            n,
            contour,
            roundoff_control,
        } => run_invert(&problem, t, n as usize, contour, roundoff_control),
        Command::Sweep {
            problem,
            t,
            n_start,
            n_stop,
            n_step,
            contour,
            roundoff_control,
            output,
        } => run_sweep(
            &problem,
            t,
            (n_start as usize, n_stop as usize, n_step as usize),
            contour,
            roundoff_control,
            output,
        ),
        Command::DumpContour { kind, n, t, output } => dump_contour(kind, n as usize, t, output),
    }
}

fn derive_params(kind: ContourChoice) -> Result<(), RunError> {
    match kind {
        ContourChoice::Cotangent => {
            let sol = params::optimize_alpha()?;
            let (sigma, mu, nu, alpha) = match sol.params {
                ContourParams::Cotangent {
                    sigma,
                    mu,
                    nu,
                    alpha,
                } => (sigma, mu, nu, alpha),
                _ => unreachable!(),
            };
            println!("contour: cotangent");
            println!(
                "zeta(theta) = -{:.4} + {:.4} theta cot({:.4} theta) + {:.4} i theta",
                sigma, mu, alpha, nu
            );
            println!("alpha  = {:.4}  (derived {:.7})", alpha, alpha);
            println!("c      = {:.4}  (derived {:.7})", sol.c, sol.c);
            println!("sigma  = {:.4}  (derived {:.7})", sigma, sigma);
            println!("mu     = {:.4}  (derived {:.7})", mu, mu);
            println!("nu     = {:.4}  (derived {:.7})", nu, nu);
            println!(
                "saddle theta = +/-{:.4} {:.4} i  (derived {:.7} {:.7} i)",
                sol.saddle.re, sol.saddle.im, sol.saddle.re, sol.saddle.im
            );
            println!("predicted rate: error = O(exp(-{:.4} N))", sol.c);
            let ok = (alpha - 0.6407).abs() <= 5e-4
                && (sol.c - 1.3580).abs() <= 5e-4
                && (sigma - 0.6122).abs() <= 1e-3
                && (mu - 0.5017).abs() <= 1e-3
                && (nu - 0.2645).abs() <= 1e-3
                && (sol.saddle.re - 3.4208).abs() <= 1e-3
                && (sol.saddle.im + 2.3438).abs() <= 1e-3;
            println!(
                "check: {}",
                if ok {
                    "constants match the published values"
                } else {
                    "MISMATCH against the published values"
                }
            );
            if !ok {
                return Err(RunError::Numeric(
                    "derived cotangent constants drifted from the published values".into(),
                ));
            }
        }
        ContourChoice::Rational => {
            let sol = params::derive_rational()?;
            let (a, b, d, e) = match sol.params {
                ContourParams::Rational { a, b, d, e } => (a, b, d, e),
                _ => unreachable!(),
            };
            println!("contour: rational");
            println!(
                "zeta(theta) = {:.4} + {:.4} theta^2 / (theta^2 - {:.4} pi^2) + {:.4} i theta",
                a, b, d, e
            );
            println!("a      = {:.4}  (derived {:.7})", a, a);
            println!("b      = {:.4}  (derived {:.7})", b, b);
            println!("d      = {:.4}  (derived {:.7})", d, d);
            println!("e      = {:.4}  (derived {:.7})", e, e);
            println!("c      = {:.4}  (derived {:.7})", sol.c, sol.c);
            println!(
                "saddle theta = +/-{:.4} {:.4} i  (derived {:.7} {:.7} i)",
                sol.saddle.re, sol.saddle.im, sol.saddle.re, sol.saddle.im
            );
            println!("predicted rate: error = O(exp(-{:.4} N))", sol.c);
            let ok = (a - 0.1446).abs() <= 5e-3
                && (b - 3.0232).abs() <= 5e-3
                && (d - 3.0767).abs() <= 5e-3
                && (e - 0.2339).abs() <= 5e-3
                && (sol.c - 1.311).abs() <= 5e-3;
            println!(
                "check: {}",
                if ok {
                    "constants match the published values"
                } else {
                    "MISMATCH against the published values"
                }
            );
            if !ok {
                return Err(RunError::Numeric(
                    "derived rational constants drifted from the published values".into(),
                ));
            }
        }
    }
    Ok(())
}

struct Problem<'a> {
    label: String,
    transform: Transform<'a>,
    reference: Value,
}

fn build_problem(args: &ProblemArgs, t: f64) -> Result<Problem<'static>, RunError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(RunError::Usage(format!("need finite t > 0, got {t}")));
    }
    match args.problem.as_str() {
        "f1" => {
            if !(args.lambda.is_finite() && args.lambda > 0.0) {
                return Err(RunError::Usage(format!(
                    "f1 needs lambda > 0, got {}",
                    args.lambda
                )));
            }
            Ok(Problem {
                label: format!("f1 (lambda = {})", args.lambda),
                transform: problems::f1_transform(args.lambda),
                reference: Value::Scalar(problems::reference_f1(t, args.lambda)),
            })
        }
        "f2" => Ok(Problem {
            label: "f2".into(),
            transform: problems::f2_transform(),
            reference: Value::Scalar(problems::reference_f2(t)?),
        }),
        "f3" => {
            if !(args.c > 0.0 && args.r >= 0.0) {
                return Err(RunError::Usage(format!(
                    "f3 needs c > 0 and r >= 0, got c = {}, r = {}",
                    args.c, args.r
                )));
            }
            Ok(Problem {
                label: format!("f3 (c = {}, r = {})", args.c, args.r),
                transform: problems::f3_transform(args.c, args.r),
                reference: Value::Scalar(problems::reference_f3(t, args.c, args.r)?),
            })
        }
        "heat" => {
            let model = HeatModel::new(args.m as usize)?;
            let reference = Value::Vector(model.reference(t));
            Ok(Problem {
                label: format!("heat (m = {}, J = {})", model.grid(), model.dim()),
                transform: owned_heat_transform(model),
                reference,
            })
        }
        other => Err(RunError::Usage(format!(
            "unknown problem '{other}' (expected f1, f2, f3, or heat)"
        ))),
    }
}

/// Heat transform that owns its model, so the CLI can pass it around.
fn owned_heat_transform(model: HeatModel) -> Transform<'static> {
    let dim = model.dim();
    Transform::vector(dim, move |z| model.transform(z))
}

fn fixed_source(contour: ContourChoice) -> FixedSource {
    let (params, c) = match contour {
        ContourChoice::Cotangent => params::optimized_cotangent(),
        ContourChoice::Rational => params::optimized_rational(),
    };
    FixedSource { params, c }
}

fn policy_source(contour: ContourChoice, model: RoundoffModel) -> Box<dyn ParamSource> {
    match contour {
        ContourChoice::Cotangent => Box::new(model.cotangent_source()),
        ContourChoice::Rational => Box::new(model.rational_source()),
    }
}

fn params_for(
    contour: ContourChoice,
    policy: Policy,
    n: usize,
) -> Result<(ContourParams, f64), RunError> {
    match policy {
        Policy::Off => {
            let src = fixed_source(contour);
            Ok(src.params_for(n)?)
        }
        Policy::Fixed(k0) => {
            let model = RoundoffModel::with_k0(k0);
            Ok(policy_source(contour, model).params_for(n)?)
        }
        Policy::Auto => Err(RunError::Usage(
            "auto roundoff control needs a sweep".into(),
        )),
    }
}

fn run_invert(
    args: &ProblemArgs,
    t: f64,
    n: usize,
    contour: ContourChoice,
    policy: Policy,
) -> Result<(), RunError> {
    let problem = build_problem(args, t)?;
    let (p, c_used) = params_for(contour, policy, n)?;
    let result = invert(&problem.transform, &p, n, t)?;
    let rel = result.value.relative_error(&problem.reference)?;
    println!("problem: {}", problem.label);
    println!(
        "contour: {}, N = {n}, t = {t}, c = {c_used:.6}",
        match contour {
            ContourChoice::Cotangent => "cotangent",
            ContourChoice::Rational => "rational",
        }
    );
    match (&result.value, &problem.reference) {
        (Value::Scalar(v), Value::Scalar(r)) => {
            println!("value     = {v:.15e}");
            println!("reference = {r:.15e}");
        }
        (v, r) => {
            let norm = |x: &Value| x.components().iter().fold(0.0f64, |m, c| m.max(c.abs()));
            println!(
                "max |value|     = {:.15e}  ({} components)",
                norm(v),
                v.components().len()
            );
            println!("max |reference| = {:.15e}", norm(r));
        }
    }
    println!("rel_error = {rel:.3e}");
    Ok(())
}

fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("N,relative_error,c_used,zeta0_used\n");
    for p in points {
        let err = p
            .rel_error
            .map_or_else(|| "NaN".to_string(), |e| format!("{e:.15e}"));
        let c = if p.c_used.is_finite() {
            format!("{:.15e}", p.c_used)
        } else {
            "NaN".into()
        };
        let z0 = if p.zeta0_used.is_finite() {
            format!("{:.15e}", p.zeta0_used)
        } else {
            "NaN".into()
        };
        let _ = writeln!(out, "{},{},{},{}", p.n, err, c, z0);
    }
    out
}

fn emit(output: Option<PathBuf>, contents: &str) -> Result<(), RunError> {
    match output {
        None => {
            print!("{contents}");
            Ok(())
        }
        Some(path) => {
            let path = match std::env::var_os(OUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path,
            };
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)?;
                }
            }
            fs::write(&path, contents)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn run_sweep(
    args: &ProblemArgs,
    t: f64,
    (n_start, n_stop, n_step): (usize, usize, usize),
    contour: ContourChoice,
    policy: Policy,
    output: Option<PathBuf>,
) -> Result<(), RunError> {
    if n_stop < n_start {
        return Err(RunError::Usage(format!(
            "empty N range: start {n_start} > stop {n_stop}"
        )));
    }
    let problem = build_problem(args, t)?;
    let ns = || (n_start..=n_stop).step_by(n_step);

    let points = match policy {
        Policy::Off => convergence_sweep(
            &problem.transform,
            &problem.reference,
            t,
            ns(),
            &fixed_source(contour),
        ),
        Policy::Fixed(k0) => {
            let model = RoundoffModel::with_k0(k0);
            convergence_sweep(
                &problem.transform,
                &problem.reference,
                t,
                ns(),
                policy_source(contour, model).as_ref(),
            )
        }
        Policy::Auto => {
            // pass 1: measure without control, locate the turn, estimate k0
            let uncontrolled = convergence_sweep(
                &problem.transform,
                &problem.reference,
                t,
                ns(),
                &fixed_source(contour),
            );
            let errors: Vec<(usize, f64)> = uncontrolled
                .iter()
                .filter_map(|p| p.rel_error.map(|e| (p.n, e)))
                .collect();
            match roundoff::detect_n_star(&errors) {
                Ok(n_star) => {
                    let src = fixed_source(contour);
                    let model = RoundoffModel::from_detected(n_star, &src.params, src.c);
                    eprintln!(
                        "auto roundoff control: N* = {n_star}, k0 = {:.3e}",
                        model.k0
                    );
                    convergence_sweep(
                        &problem.transform,
                        &problem.reference,
                        t,
                        ns(),
                        policy_source(contour, model).as_ref(),
                    )
                }
                Err(talbot::Error::NoTurnDetected) => {
                    eprintln!("auto roundoff control: no turn detected, keeping fixed parameters");
                    uncontrolled
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    emit(output, &sweep_csv(&points))
}

fn dump_contour(
    kind: ContourChoice,
    n: usize,
    t: f64,
    output: Option<PathBuf>,
) -> Result<(), RunError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(RunError::Usage(format!("need finite t > 0, got {t}")));
    }
    let (params, _) = match kind {
        ContourChoice::Cotangent => params::optimized_cotangent(),
        ContourChoice::Rational => params::optimized_rational(),
    };
    let nodes = params.nodes(n, t)?;
    let mut out = String::from("theta,Re_z,Im_z,Re_dz,Im_dz\n");
    for k in 0..nodes.n {
        let _ = writeln!(
            out,
            "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e}",
            nodes.thetas[k], nodes.z[k].re, nodes.z[k].im, nodes.dz[k].re, nodes.dz[k].im
        );
    }
    // cutoff line where |exp(z t)| drops to the unit roundoff
    let cutoff_re = UNIT_ROUNDOFF.ln() / t;
    let im_max = 1.05 * nodes.z.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let _ = writeln!(out, "# cutoff Re(z*t) = ln(eps), eps = {UNIT_ROUNDOFF:e}");
    let _ = writeln!(out, "Re_z,Im_z");
    let samples = 33;
    for i in 0..samples {
        let im = -im_max + 2.0 * im_max * i as f64 / (samples - 1) as f64;
        let _ = writeln!(out, "{cutoff_re:.15e},{im:.15e}");
    }
    emit(output, &out)
}
