//! Command-line front end: single-point spectral reports, frequency sweeps,
//! velocity profiles and self-validation runs. All tabular output is CSV
//! with a mandatory header row, 17 significant digits, `.` decimal
//! separator and `\n` line endings, so identical inputs give identical
//! bytes.
//!
//! Exit codes: 0 success, 2 usage error, 3 near-critical guard,
//! 4 validation or numerical failure.

use crate::dispersion::Freq;
use crate::error::StokesError;
use crate::factor::Factorizer;
use crate::oracle::{solve_kinetic_bvp, OracleConfig};
use crate::solution::{
    coeff_a0, dissipation, friction, velocity_profile, verify_wall_bc, wall_velocity, Dimensional,
};
use crate::spectrum;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "stokes2",
    version,
    about = "Oscillating-plate shear flow of a rarefied gas: spectra, sweeps, profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the index, critical frequency and discrete zero at one frequency
    Spectrum {
        /// dimensionless oscillation frequency ω₁ = ωτ
        #[arg(long)]
        omega1: f64,
    },
    /// Tabulate a response quantity over a frequency range as CSV
    Sweep {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// number of grid points (≥ 2, endpoints included)
        #[arg(long)]
        steps: usize,
        /// geometric instead of linear spacing
        #[arg(long)]
        log: bool,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        dim: DimensionalArgs,
    },
    /// Tabulate the complex velocity amplitude U(x₁) as CSV
    Profile {
        #[arg(long)]
        omega1: f64,
        /// largest x₁, mean free paths
        #[arg(long)]
        xmax: f64,
        /// number of grid points (≥ 2, endpoints included)
        #[arg(long)]
        points: usize,
        /// dimensionless time t₁; adds a column with Re{e^(-iω₁t₁) U}
        #[arg(long)]
        time: Option<f64>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        dim: DimensionalArgs,
    },
    /// Run the internal consistency checks at one frequency
    Validate {
        #[arg(long)]
        omega1: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    /// wall velocity amplitude and phase
    Wall,
    /// friction force amplitude and phase
    Force,
    /// time-averaged dissipated power
    Dissipation,
}

/// Optional conversion to laboratory units; give all five or none.
#[derive(Args, Clone, Copy)]
struct DimensionalArgs {
    /// number density, 1/m³
    #[arg(long)]
    n: Option<f64>,
    /// gas temperature, K
    #[arg(long)]
    temperature: Option<f64>,
    /// molecular mass, kg
    #[arg(long)]
    mass: Option<f64>,
    /// relaxation time, s
    #[arg(long)]
    tau: Option<f64>,
    /// plate velocity amplitude, m/s
    #[arg(long)]
    u0: Option<f64>,
}

impl DimensionalArgs {
    fn resolve(&self) -> Result<Option<Dimensional>, CliError> {
        let given = [self.n, self.temperature, self.mass, self.tau, self.u0];
        let count = given.iter().filter(|v| v.is_some()).count();
        match count {
            0 => Ok(None),
            5 => {
                let d = Dimensional {
                    n: self.n.unwrap(),
                    t: self.temperature.unwrap(),
                    m: self.mass.unwrap(),
                    tau: self.tau.unwrap(),
                    u0: self.u0.unwrap(),
                };
                if !(d.n > 0.0 && d.t > 0.0 && d.m > 0.0 && d.tau > 0.0 && d.u0 > 0.0) {
                    return Err(CliError::usage(
                        "dimensional parameters must all be positive",
                    ));
                }
                Ok(Some(d))
            }
            _ => Err(CliError::usage(
                "give all of --n --temperature --mass --tau --u0, or none",
            )),
        }
    }
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    fn failure(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_FAILURE,
            message: msg.into(),
        }
    }
}

impl From<StokesError> for CliError {
    fn from(e: StokesError) -> CliError {
        let code = match e {
            StokesError::NearCritical { .. } => EXIT_GUARD,
            StokesError::InvalidFrequency { .. } | StokesError::Domain(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::failure(format!("i/o error: {e}"))
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version on stdout with success; everything
            // else is a usage error
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("stokes2: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Spectrum { omega1 } => cmd_spectrum(omega1),
        Command::Sweep {
            from,
            to,
            steps,
            log,
            quantity,
            out,
            dim,
        } => cmd_sweep(from, to, steps, log, quantity, &out, dim.resolve()?),
        Command::Profile {
            omega1,
            xmax,
            points,
            time,
            out,
            dim,
        } => cmd_profile(omega1, xmax, points, time, &out, dim.resolve()?),
        Command::Validate { omega1 } => cmd_validate(omega1),
    }
}

// the wider guard band for user-facing point commands: values quoted to a
// few decimals (e.g. 0.733) must not silently land inside the critical band
const CLI_GUARD_BAND: f64 = 1e-3;

fn freq_checked(omega1: f64) -> Result<Freq, CliError> {
    Ok(Freq::new(omega1)?)
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_spectrum(omega1: f64) -> Result<(), CliError> {
    let f = freq_checked(omega1)?;
    let info = spectrum::classify(&f)?;
    println!("omega1          = {}", fmt(omega1));
    println!("omega1_star     = {}", fmt(info.omega1_star));
    println!("kappa           = {}", info.kappa);
    match info.eta0 {
        Some(e) => {
            let resid = crate::dispersion::lambda(e, &f).norm();
            println!("eta0            = {} + {}i", fmt(e.re), fmt(e.im));
            println!("lambda_residual = {resid:.2e}");
        }
        None => println!("eta0            = no discrete zero"),
    }
    Ok(())
}

enum Row {
    Response {
        omega1: f64,
        kappa: i32,
        amplitude: f64,
        phase: f64,
    },
    Power {
        omega1: f64,
        kappa: i32,
        power: f64,
    },
}

fn cmd_sweep(
    from: f64,
    to: f64,
    steps: usize,
    log: bool,
    quantity: Quantity,
    out: &std::path::Path,
    dim: Option<Dimensional>,
) -> Result<(), CliError> {
    if !(from > 0.0 && to > from && steps >= 2) {
        return Err(CliError::usage(
            "sweep requires 0 < from < to and steps >= 2",
        ));
    }
    let grid: Vec<f64> = (0..steps)
        .map(|k| {
            let s = k as f64 / (steps - 1) as f64;
            if log {
                from * (to / from).powf(s)
            } else {
                from + (to - from) * s
            }
        })
        .collect();

    let rows: Vec<Result<Row, StokesError>> = grid
        .par_iter()
        .map(|&w| -> Result<Row, StokesError> {
            let fac = Factorizer::new(Freq::new(w)?)?;
            Ok(match quantity {
                Quantity::Wall => {
                    let r = wall_velocity(&fac)?;
                    Row::Response {
                        omega1: w,
                        kappa: fac.kappa(),
                        amplitude: r.amplitude,
                        phase: r.phase,
                    }
                }
                Quantity::Force => {
                    let r = friction(&fac)?;
                    Row::Response {
                        omega1: w,
                        kappa: fac.kappa(),
                        amplitude: r.a,
                        phase: r.phi,
                    }
                }
                Quantity::Dissipation => Row::Power {
                    omega1: w,
                    kappa: fac.kappa(),
                    power: dissipation(&fac)?,
                },
            })
        })
        .collect();

    let (amp_scale, pow_scale) = match &dim {
        Some(d) => (
            match quantity {
                Quantity::Wall => d.velocity_scale(),
                Quantity::Force => d.force_scale(),
                Quantity::Dissipation => 1.0,
            },
            d.power_scale(),
        ),
        None => (1.0, 1.0),
    };

    let mut buf = String::new();
    match quantity {
        Quantity::Dissipation => buf.push_str("omega1,kappa,power\n"),
        _ => buf.push_str("omega1,kappa,amplitude,phase\n"),
    }
    for row in rows {
        match row {
            Ok(Row::Response {
                omega1,
                kappa,
                amplitude,
                phase,
            }) => {
                buf.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt(omega1),
                    kappa,
                    fmt(amplitude * amp_scale),
                    fmt(phase)
                ));
            }
            Ok(Row::Power {
                omega1,
                kappa,
                power,
            }) => {
                buf.push_str(&format!(
                    "{},{},{}\n",
                    fmt(omega1),
                    kappa,
                    fmt(power * pow_scale)
                ));
            }
            Err(StokesError::NearCritical { omega1, at, .. }) => {
                eprintln!(
                    "stokes2: skipping omega1 = {omega1}: inside the guard band around {at}"
                );
            }
            Err(e) => return Err(e.into()),
        }
    }
    write_atomic(out, buf.as_bytes())?;
    Ok(())
}

fn cmd_profile(
    omega1: f64,
    xmax: f64,
    points: usize,
    time: Option<f64>,
    out: &std::path::Path,
    dim: Option<Dimensional>,
) -> Result<(), CliError> {
    if !(xmax > 0.0 && points >= 2) {
        return Err(CliError::usage("profile requires xmax > 0 and points >= 2"));
    }
    let f = freq_checked(omega1)?;
    spectrum::guard_near_critical(&f, CLI_GUARD_BAND)?;
    let fac = Factorizer::new(f)?;
    let grid: Vec<f64> = (0..points)
        .map(|k| xmax * k as f64 / (points - 1) as f64)
        .collect();
    let p = velocity_profile(&fac, &grid)?;

    let (x_scale, u_scale) = match &dim {
        Some(d) => (d.length_scale(), d.velocity_scale()),
        None => (1.0, 1.0),
    };
    let phase = time.map(|t| (C64::new(0.0, -omega1 * t)).exp());

    let mut buf = String::new();
    buf.push_str(match phase {
        Some(_) => "x1,re_U,im_U,abs_U,U_t\n",
        None => "x1,re_U,im_U,abs_U\n",
    });
    for (x, u) in p.x1.iter().zip(&p.u) {
        let u = u * u_scale;
        buf.push_str(&format!(
            "{},{},{},{}",
            fmt(x * x_scale),
            fmt(u.re),
            fmt(u.im),
            fmt(u.norm())
        ));
        if let Some(ph) = phase {
            buf.push_str(&format!(",{}", fmt((ph * u).re)));
        }
        buf.push('\n');
    }
    write_atomic(out, buf.as_bytes())?;
    Ok(())
}

fn cmd_validate(omega1: f64) -> Result<(), CliError> {
    let f = freq_checked(omega1)?;
    spectrum::guard_near_critical(&f, CLI_GUARD_BAND)?;
    let fac = Factorizer::new(f)?;
    let mut all_ok = true;
    let mut report = |name: &str, value: f64, tol: f64| {
        let ok = value < tol;
        all_ok &= ok;
        println!(
            "{name:<28} {value:>12.3e}  (tol {tol:.0e})  {}",
            if ok { "pass" } else { "FAIL" }
        );
    };

    let factor_resid = [
        C64::new(1.0, 2.0),
        C64::new(-0.7, 0.4),
        C64::new(3.0, -1.5),
        C64::new(0.2, 5.0),
    ]
    .iter()
    .map(|&z| fac.check_factorization(z).unwrap_or(f64::INFINITY))
    .fold(0.0f64, f64::max);
    report("factorization residual", factor_resid, 1e-9);

    let repr_resid = [C64::new(0.0, 2.0), C64::new(0.5, 0.3), C64::new(-1.0, 0.0)]
        .iter()
        .map(|&z| fac.representation_residual(z).unwrap_or(f64::INFINITY))
        .fold(0.0f64, f64::max);
    report("representation residual", repr_resid, 1e-8);

    let grid: Vec<f64> = (0..=40).map(|k| 0.05 + 3.95 * k as f64 / 40.0).collect();
    let bc = verify_wall_bc(&fac, &grid)?;
    report("wall boundary condition", bc, 1e-6);

    if fac.kappa() == 1 {
        let eta0 = fac.eta0().unwrap();
        let exp_form = coeff_a0(&fac)?;
        let x_form = 2.0 * crate::dispersion::SQRT_PI / (eta0 * fac.x(eta0)?);
        report(
            "a0 two-form agreement",
            (exp_form - x_form).norm() / exp_form.norm(),
            1e-9,
        );
    }

    let cfg = OracleConfig::default_for(fac.eta0());
    // sample at the kinetic solver's cell faces, where its profile is not
    // smoothed by the piecewise-linear interpolation between cells
    let dx = cfg.l / cfg.nx as f64;
    let xs: Vec<f64> = (0..=(10.0 / dx) as usize).map(|k| k as f64 * dx).collect();
    let num = solve_kinetic_bvp(fac.freq(), &cfg, &xs)?;
    let ana = velocity_profile(&fac, &xs)?;
    let dev = num
        .u
        .iter()
        .zip(&ana.u)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    report("kinetic solver deviation", dev, 1e-3);

    if all_ok {
        println!("all checks passed");
        Ok(())
    } else {
        Err(CliError::failure("validation failed"))
    }
}

fn write_atomic(path: &std::path::Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(bytes)?;
    file.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("stokes2").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["spectrum"]), EXIT_USAGE);
        assert_eq!(run_args(&["spectrum", "--omega1", "-1"]), EXIT_USAGE);
        assert_eq!(run_args(&["nonsense"]), EXIT_USAGE);
    }

    #[test]
    fn spectrum_reports() {
        assert_eq!(run_args(&["spectrum", "--omega1", "0.3"]), 0);
        assert_eq!(run_args(&["spectrum", "--omega1", "1.0"]), 0);
    }

    #[test]
    fn near_critical_guard_codes() {
        assert_eq!(run_args(&["validate", "--omega1", "0.733"]), EXIT_GUARD);
        let star = spectrum::critical_frequency();
        assert_eq!(
            run_args(&["spectrum", "--omega1", &format!("{}", star + 1e-8)]),
            EXIT_GUARD
        );
    }

    #[test]
    fn sweep_csv_is_stable_and_ordered() {
        let dir = std::env::temp_dir();
        let p1 = dir.join("stokes2_sweep_test_1.csv");
        let p2 = dir.join("stokes2_sweep_test_2.csv");
        let args = |p: &std::path::Path| {
            vec![
                "sweep".to_string(),
                "--from".into(),
                "0.1".into(),
                "--to".into(),
                "2.0".into(),
                "--steps".into(),
                "8".into(),
                "--quantity".into(),
                "wall".into(),
                "--out".into(),
                p.to_str().unwrap().to_string(),
            ]
        };
        let to_codes = |v: Vec<String>| {
            run(std::iter::once("stokes2".to_string()).chain(v))
        };
        assert_eq!(to_codes(args(&p1)), 0);
        assert_eq!(to_codes(args(&p2)), 0);
        let a = std::fs::read(&p1).unwrap();
        let b = std::fs::read(&p2).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "omega1,kappa,amplitude,phase");
        let omegas: Vec<f64> = lines
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(omegas.len(), 8);
        assert!(omegas.windows(2).all(|p| p[0] < p[1]));
        let _ = std::fs::remove_file(p1);
        let _ = std::fs::remove_file(p2);
    }

    #[test]
    fn profile_csv_shape() {
        let p = std::env::temp_dir().join("stokes2_profile_test.csv");
        let code = run([
            "stokes2",
            "profile",
            "--omega1",
            "1.0",
            "--xmax",
            "50",
            "--points",
            "11",
            "--time",
            "0.5",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&p).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x1,re_U,im_U,abs_U,U_t");
        assert_eq!(lines.len(), 12);
        // decay at xmax = 50
        let last: Vec<f64> = lines[11].split(',').map(|v| v.parse().unwrap()).collect();
        assert!(last[3] < 1e-6);
        let _ = std::fs::remove_file(p);
    }

    #[test]
    fn validate_passes_in_both_regimes() {
        assert_eq!(run_args(&["validate", "--omega1", "1.0"]), 0);
        assert_eq!(run_args(&["validate", "--omega1", "0.3"]), 0);
    }

    #[test]
    fn dimensional_group_is_all_or_none() {
        let p = std::env::temp_dir().join("stokes2_dim_test.csv");
        let code = run([
            "stokes2",
            "profile",
            "--omega1",
            "1.0",
            "--xmax",
            "10",
            "--points",
            "5",
            "--n",
            "1e22",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_USAGE);
    }
}
