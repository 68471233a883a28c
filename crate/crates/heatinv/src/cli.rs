//! Command-line front end: one-shot solves, table reproduction, error-curve
//! CSV emission, forward evaluation, and data simulation.
//!
//! Exit codes: 0 success, 2 domain/admissibility error, 3 numerical
//! tolerance failure, 64 malformed usage. All output is deterministic:
//! identical invocations (including the seed) produce byte-identical files.

use crate::composite::{self, CompositeId, ErrorReport};
use crate::contour::QuadratureSpec;
use crate::error::Error;
use crate::invert_large;
use crate::oracle::{self, RootFindSpec, SolverId};
use crate::physics::{
    self, DrainageScenario, InfiltrationScenario, MOISTURE_DATASET, MOISTURE_LENGTH_CM,
    MOISTURE_THETA0, MOISTURE_THETA1,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::NoRoot(_) | Error::Unsupported(_) | Error::Bracket(_) => {
            EXIT_DOMAIN
        }
        Error::Tolerance(_) | Error::Truncation(_) => EXIT_TOLERANCE,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "heatinv",
    version,
    about = "Heat-equation parameter estimation: solve I(a) = c and the drain-spacing, drainage-time and diffusivity inverse problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    /// Significant digits for printed floats (tables keep their own fixed
    /// formats).
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Absolute quadrature tolerance override.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Plain-text key=value file merged under explicit flags
    /// (keys: digits, tol, scheme, seed, out, grid).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve I(a) = c for a with the chosen scheme and report the
    /// reconstruction error.
    SolveA {
        #[arg(long)]
        c: f64,
        /// One of: first-order, fourier-1..3, quadratic, quartic, inv-erfc,
        /// lambert-w, log-log, p-expansion, perfect-match, explicit-1,
        /// explicit-2, oracle.
        #[arg(long)]
        scheme: Option<String>,
    },
    /// Evaluate the forward field solution h(x,t) or theta(x,t).
    Forward {
        /// "drainage" or "infiltration".
        #[arg(long)]
        problem: String,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        t: f64,
        /// Drainage: initial head above drain level, m.
        #[arg(long)]
        h0: Option<f64>,
        /// Drainage: drain-axis elevation, m.
        #[arg(long, default_value_t = 0.0)]
        d: f64,
        /// Drainage: diffusion coefficient A, m^2/day.
        #[arg(long)]
        diffusion: Option<f64>,
        /// Drainage: half spacing L, m.
        #[arg(long)]
        half_spacing: Option<f64>,
        /// Infiltration: residual moisture theta0.
        #[arg(long)]
        theta0: Option<f64>,
        /// Infiltration: boundary moisture theta1.
        #[arg(long)]
        theta1: Option<f64>,
        /// Infiltration: diffusivity D0, cm^2/h.
        #[arg(long)]
        d0: Option<f64>,
        /// Infiltration: profile length L, cm.
        #[arg(long)]
        length: Option<f64>,
    },
    /// IP1: recover the drain spacing 2L from an observed drawdown.
    DrainSpacing {
        #[arg(long)]
        h0: f64,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
        /// Observed height H, m (with --d 0 this is H - d).
        #[arg(long)]
        height: f64,
        /// Elapsed time, days.
        #[arg(long)]
        t: f64,
        /// Diffusion coefficient A, m^2/day (alternative: --k --sy [--b]).
        #[arg(long)]
        diffusion: Option<f64>,
        /// Hydraulic conductivity K, m/day.
        #[arg(long)]
        k: Option<f64>,
        /// Porosity (drainable), dimensionless.
        #[arg(long)]
        sy: Option<f64>,
        /// Effective depth B = d + h0/2, m; defaults to d + h0/2.
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        scheme: Option<String>,
    },
    /// IP2: recover the time to reach an observed height, given the spacing.
    DrainTime {
        #[arg(long)]
        h0: f64,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
        #[arg(long)]
        height: f64,
        /// Drain spacing 2L, m.
        #[arg(long)]
        spacing: f64,
        #[arg(long)]
        diffusion: Option<f64>,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        sy: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        scheme: Option<String>,
    },
    /// IP3: recover the soil diffusivity D0 from one midpoint moisture
    /// reading.
    Diffusivity {
        #[arg(long)]
        theta0: f64,
        #[arg(long)]
        theta1: f64,
        /// Measured moisture at depth L/2 and time T.
        #[arg(long)]
        theta: f64,
        /// Profile length L, cm.
        #[arg(long)]
        length: f64,
        /// Measurement time T, hours.
        #[arg(long)]
        t: f64,
        #[arg(long)]
        scheme: Option<String>,
    },
    /// Reproduce one of the built-in result tables as CSV on stdout.
    ///
    /// 1: accuracy thresholds of the order-N series inversion; 2: drain
    /// spacing reconstructions; 3: drainage time reconstructions; 4:
    /// diffusivity reconstructions.
    Table {
        #[arg(long)]
        id: u8,
        /// Replacement drainage field data (CSV with header
        /// T_days,H_minus_d_m,S_y,K_m_per_day); applies to tables 2 and 3
        /// and requires --h0 (and uses --d, default 0) so that A = K*B/S_y
        /// with B = d + h0/2 can be formed.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        h0: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
    },
    /// Sweep a scheme over a c-grid and emit c,a_estimate,c_reconstructed,
    /// re_percent rows.
    ErrorCurve {
        #[arg(long)]
        scheme: Option<String>,
        /// Number of uniform grid points (endpoints included).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 0.001)]
        c_min: f64,
        #[arg(long, default_value_t = 0.999)]
        c_max: f64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw reproducible moisture scenarios and emit them as CSV.
    Simulate {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        n: usize,
        /// Measurement times in hours, comma separated; cycled when shorter
        /// than n.
        #[arg(long, value_delimiter = ',', required = true)]
        times: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Resolved run configuration: explicit flags merged over the optional
/// config file, defaults last.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub scheme: SolverId,
    pub digits: usize,
    pub seed: u64,
    pub grid_n: usize,
    pub out: Option<PathBuf>,
    pub quad: QuadratureSpec,
}

struct ConfigFile(HashMap<String, String>);

impl ConfigFile {
    fn load(path: Option<&PathBuf>) -> Result<ConfigFile, Error> {
        let mut map = HashMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Domain(format!("cannot read config {}: {e}", p.display())))?;
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(Error::Domain(format!("malformed config line: {line}")));
                };
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(ConfigFile(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Error> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::Domain(format!("config key {key} has invalid value {raw}"))),
        }
    }
}

/// Parses argv and runs the requested subcommand; returns the process exit
/// code.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    EXIT_OK
                }
                _ => {
                    let _ = e.print();
                    EXIT_USAGE
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn resolve_scheme(flag: Option<String>, cfg: &ConfigFile) -> Result<SolverId, Error> {
    let name = match flag {
        Some(s) => s,
        None => cfg
            .get::<String>("scheme")?
            .unwrap_or_else(|| "perfect-match".to_string()),
    };
    name.parse()
}

fn run(cli: Cli) -> Result<(), Error> {
    let cfg = ConfigFile::load(cli.common.config.as_ref())?;
    let digits = match cli.common.digits {
        Some(d) => d,
        None => cfg.get("digits")?.unwrap_or(6),
    };
    let tol = match cli.common.tol {
        Some(t) => t,
        None => cfg.get("tol")?.unwrap_or(1e-12),
    };
    let quad = QuadratureSpec {
        tol,
        ..QuadratureSpec::default()
    };

    match cli.command {
        Command::SolveA { c, scheme } => {
            let id = resolve_scheme(scheme, &cfg)?;
            let a = oracle::invert_with(id, c, &quad)?;
            let rep = composite::relative_error(c, a)?;
            println!("scheme={id}");
            println!("a={}", fmt_sig(a, digits));
            print_report(&rep, digits);
            Ok(())
        }
        Command::Forward {
            problem,
            x,
            t,
            h0,
            d,
            diffusion,
            half_spacing,
            theta0,
            theta1,
            d0,
            length,
        } => match problem.as_str() {
            "drainage" => {
                let mut s = DrainageScenario::new(
                    h0.ok_or_else(|| Error::Domain("drainage forward needs --h0".into()))?,
                    d,
                );
                s.diffusion_m2_day = diffusion;
                s.half_spacing_m = half_spacing;
                let h = crate::contour::eval_h(x, t, &s, &quad)?;
                println!("h={}", fmt_sig(h, digits));
                Ok(())
            }
            "infiltration" => {
                let mut s = InfiltrationScenario::new(
                    theta0.ok_or_else(|| Error::Domain("infiltration forward needs --theta0".into()))?,
                    theta1.ok_or_else(|| Error::Domain("infiltration forward needs --theta1".into()))?,
                    length.ok_or_else(|| Error::Domain("infiltration forward needs --length".into()))?,
                );
                s.diffusivity_cm2_h = d0;
                let th = crate::contour::eval_theta(x, t, &s, &quad)?;
                println!("theta={}", fmt_sig(th, digits));
                Ok(())
            }
            other => Err(Error::Domain(format!(
                "problem must be drainage or infiltration, got {other}"
            ))),
        },
        Command::DrainSpacing {
            h0,
            d,
            height,
            t,
            diffusion,
            k,
            sy,
            b,
            scheme,
        } => {
            let id = resolve_scheme(scheme, &cfg)?;
            let mut s = DrainageScenario::new(h0, d).with_observed(height);
            s.time_days = Some(t);
            s.diffusion_m2_day = Some(resolve_diffusion(diffusion, k, sy, b, h0, d)?);
            let l = physics::solve_ip1_spacing(&s, id, &quad)?;
            println!("spacing_2l_m={}", fmt_sig(2.0 * l, digits));
            Ok(())
        }
        Command::DrainTime {
            h0,
            d,
            height,
            spacing,
            diffusion,
            k,
            sy,
            b,
            scheme,
        } => {
            let id = resolve_scheme(scheme, &cfg)?;
            let mut s = DrainageScenario::new(h0, d).with_observed(height);
            s.half_spacing_m = Some(spacing / 2.0);
            s.diffusion_m2_day = Some(resolve_diffusion(diffusion, k, sy, b, h0, d)?);
            let t = physics::solve_ip2_time(&s, id, &quad)?;
            println!("time_days={}", fmt_sig(t, digits));
            Ok(())
        }
        Command::Diffusivity {
            theta0,
            theta1,
            theta,
            length,
            t,
            scheme,
        } => {
            let id = resolve_scheme(scheme, &cfg)?;
            let mut s = InfiltrationScenario::new(theta0, theta1, length);
            s.measured = Some(theta);
            s.time_h = Some(t);
            let d0 = physics::solve_ip3_diffusivity(&s, id, &quad)?;
            println!("diffusivity_cm2_h={}", fmt_sig(d0, digits));
            Ok(())
        }
        Command::Table { id, data, h0, d } => {
            let csv = match id {
                1 => table_thresholds(&quad)?,
                2 => table_spacing(&quad, data.as_ref(), h0, d)?,
                3 => table_time(&quad, data.as_ref(), h0, d)?,
                4 => {
                    if data.is_some() {
                        return Err(Error::Domain(
                            "--data applies to tables 2 and 3 only".into(),
                        ));
                    }
                    table_diffusivity(&quad)?
                }
                other => Err(Error::Domain(format!("table id must be 1..=4, got {other}")))?,
            };
            print!("{csv}");
            Ok(())
        }
        Command::ErrorCurve {
            scheme,
            grid,
            c_min,
            c_max,
            out,
        } => {
            let id = resolve_scheme(scheme, &cfg)?;
            let n = match grid {
                Some(n) => n,
                None => cfg.get("grid")?.unwrap_or(999),
            };
            let out = out.or(cfg.get::<PathBuf>("out")?);
            if n < 2 || !(c_min > 0.0 && c_max < 1.0 && c_min < c_max) {
                return Err(Error::Domain(
                    "need grid >= 2 and 0 < c_min < c_max < 1".into(),
                ));
            }
            let grid_pts: Vec<f64> = (0..n)
                .map(|i| c_min + (c_max - c_min) * i as f64 / (n - 1) as f64)
                .collect();
            let rows = oracle::error_sweep(id, &grid_pts, &quad)?;
            let mut csv = String::from("c,a_estimate,c_reconstructed,re_percent\r\n");
            for row in &rows {
                match &row.outcome {
                    Ok(rep) => {
                        let _ = writeln!(
                            csv,
                            "{},{},{},{}\r",
                            fmt_sig(row.c, digits),
                            fmt_sig(rep.a_estimate, digits),
                            fmt_sig(rep.c_reconstructed, digits),
                            fmt_sig(rep.re_percent, digits)
                        );
                    }
                    Err(_) => {
                        let _ = writeln!(csv, "{},,,\r", fmt_sig(row.c, digits));
                    }
                }
            }
            emit(out.as_ref(), &csv)
        }
        Command::Simulate { seed, n, times, out } => {
            let seed = match seed {
                Some(s) => s,
                None => cfg.get("seed")?.unwrap_or(0),
            };
            let out = out.or(cfg.get::<PathBuf>("out")?);
            let scenarios = physics::simulate_moisture(seed, n, &times, &quad)?;
            let mut csv = String::from("index,T_h,theta0,theta1,Theta,L_cm,D0_true\r\n");
            for (i, s) in scenarios.iter().enumerate() {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{}\r",
                    i,
                    fmt_sig(s.time_h.unwrap(), digits),
                    fmt_sig(s.theta0, digits),
                    fmt_sig(s.theta1, digits),
                    fmt_sig(s.measured.unwrap(), digits),
                    fmt_sig(s.length_cm, digits),
                    fmt_sig(s.diffusivity_cm2_h.unwrap(), digits)
                );
            }
            emit(out.as_ref(), &csv)
        }
    }
}

fn resolve_diffusion(
    diffusion: Option<f64>,
    k: Option<f64>,
    sy: Option<f64>,
    b: Option<f64>,
    h0: f64,
    d: f64,
) -> Result<f64, Error> {
    if let Some(a) = diffusion {
        return Ok(a);
    }
    match (k, sy) {
        (Some(k), Some(sy)) => {
            if !(sy > 0.0) {
                return Err(Error::Domain("porosity must be positive".into()));
            }
            let b = b.unwrap_or(d + h0 / 2.0);
            Ok(DrainageScenario::diffusion_from_conductivity(k, sy, b))
        }
        _ => Err(Error::Domain(
            "provide --diffusion, or --k with --sy (and optionally --b)".into(),
        )),
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(rep: &ErrorReport, digits: usize) {
    println!("c_target={}", fmt_sig(rep.c_target, digits));
    println!("c_reconstructed={}", fmt_sig(rep.c_reconstructed, digits));
    println!("re_percent={}", fmt_sig(rep.re_percent, digits));
}

/// Formats with `digits` significant digits in plain decimal notation.
fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let digits = digits.max(1);
    let mag = v.abs().log10().floor() as i32;
    let dec = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{v:.dec$}")
}

fn fmt_fixed(v: f64, dp: usize) -> String {
    format!("{v:.dp$}")
}

/// The four scheme columns shared by the reconstruction tables.
const TABLE_SCHEMES: [SolverId; 4] = [
    SolverId::FirstOrder,
    SolverId::Composite(CompositeId::PerfectMatch),
    SolverId::Composite(CompositeId::Explicit1),
    SolverId::Composite(CompositeId::Explicit2),
];

/// Table 1: for each order N, the smallest grid c (step 0.001) from which
/// the series inversion keeps the reconstruction error at or below the
/// 0.01% benchmark, together with the matching a.
fn table_thresholds(_q: &QuadratureSpec) -> Result<String, Error> {
    let rf = RootFindSpec::default();
    let mut csv = String::from("N,M,c_min,a_min\r\n");
    for n in 0..=3u8 {
        let mut threshold = None;
        for i in (2..=999).rev() {
            let c = i as f64 / 1000.0;
            let a = invert_large::invert_fourier_n(c, n)?;
            let re = composite::relative_error(c, a)?.re_percent;
            if re > 0.01 {
                threshold = Some((i + 1) as f64 / 1000.0);
                break;
            }
        }
        let c_min = threshold.ok_or_else(|| {
            Error::Tolerance(format!("no threshold found for order {n}"))
        })?;
        let a_min = oracle::true_a(c_min, &rf)?;
        let m = n as usize * (n as usize + 1) / 2;
        let _ = writeln!(csv, "{n},{m},{},{}\r", fmt_fixed(c_min, 3), fmt_fixed(a_min, 3));
    }
    Ok(csv)
}

struct DrainageRow {
    t_days: f64,
    c1: f64,
    a_true: f64,
    a_coef: f64,
    spacing_true: f64,
}

fn drainage_rows(
    data: Option<&PathBuf>,
    h0: Option<f64>,
    d: f64,
) -> Result<Vec<DrainageRow>, Error> {
    let rf = RootFindSpec::default();
    match data {
        None => {
            // the built-in reconstructions key off the published c1 values,
            // which are authoritative for these records (see the note on
            // DRAINAGE_PUBLISHED_C1)
            physics::DRAINAGE_FIELD_DATA
                .iter()
                .enumerate()
                .map(|(i, rec)| {
                    let c1 = physics::DRAINAGE_PUBLISHED_C1[i];
                    let a_true = oracle::true_a(c1, &rf)?;
                    let spacing_true = physics::DRAINAGE_REFERENCE_SPACING_M[i];
                    let l_true = spacing_true / 2.0;
                    Ok(DrainageRow {
                        t_days: rec.t_days,
                        c1,
                        a_true,
                        a_coef: a_true * l_true * l_true / rec.t_days,
                        spacing_true,
                    })
                })
                .collect()
        }
        Some(path) => {
            let h0 = h0.ok_or_else(|| {
                Error::Domain("--data requires --h0 (and uses --d, default 0)".into())
            })?;
            let records = read_field_csv(path)?;
            records
                .iter()
                .map(|rec| {
                    let s =
                        DrainageScenario::new(h0, d).with_observed(d + rec.h_minus_d_m);
                    let c1 = physics::reduce_drainage(&s)?;
                    let a_true = oracle::true_a(c1, &rf)?;
                    let a_coef = DrainageScenario::diffusion_from_conductivity(
                        rec.k_m_day,
                        rec.s_y,
                        d + h0 / 2.0,
                    );
                    let l_true = (a_coef * rec.t_days / a_true).sqrt();
                    Ok(DrainageRow {
                        t_days: rec.t_days,
                        c1,
                        a_true,
                        a_coef,
                        spacing_true: 2.0 * l_true,
                    })
                })
                .collect()
        }
    }
}

/// Table 2: recovered drain spacing 2L per record and scheme (4 decimals;
/// c1 with 5).
fn table_spacing(
    q: &QuadratureSpec,
    data: Option<&PathBuf>,
    h0: Option<f64>,
    d: f64,
) -> Result<String, Error> {
    let rows = drainage_rows(data, h0, d)?;
    let mut csv =
        String::from("T_days,c1,true_2L_m,first_order,perfect_match,explicit_1,explicit_2\r\n");
    for row in &rows {
        let mut line = format!(
            "{},{},{}",
            fmt_sig(row.t_days, 6),
            fmt_fixed(row.c1, 5),
            fmt_fixed(row.spacing_true, 4)
        );
        for id in TABLE_SCHEMES {
            let a = oracle::invert_with(id, row.c1, q)?;
            let spacing = 2.0 * (row.a_coef * row.t_days / a).sqrt();
            let _ = write!(line, ",{}", fmt_fixed(spacing, 4));
        }
        let _ = writeln!(csv, "{line}\r");
    }
    Ok(csv)
}

/// Table 3: recovered drainage time per record and scheme for the given
/// rounded spacings (4 decimals).
fn table_time(
    q: &QuadratureSpec,
    data: Option<&PathBuf>,
    h0: Option<f64>,
    d: f64,
) -> Result<String, Error> {
    let rows = drainage_rows(data, h0, d)?;
    let mut csv = String::from(
        "spacing_2L_m,c1,true_T_days,first_order,perfect_match,explicit_1,explicit_2\r\n",
    );
    for (i, row) in rows.iter().enumerate() {
        let spacing_given = match data {
            None => physics::DRAINAGE_GIVEN_SPACING_M[i],
            Some(_) => row.spacing_true.round(),
        };
        let l = spacing_given / 2.0;
        let t_true = row.a_true * l * l / row.a_coef;
        let mut line = format!(
            "{},{},{}",
            fmt_sig(spacing_given, 6),
            fmt_fixed(row.c1, 5),
            fmt_fixed(t_true, 4)
        );
        for id in TABLE_SCHEMES {
            let a = oracle::invert_with(id, row.c1, q)?;
            let t = a * l * l / row.a_coef;
            let _ = write!(line, ",{}", fmt_fixed(t, 4));
        }
        let _ = writeln!(csv, "{line}\r");
    }
    Ok(csv)
}

/// Table 4: recovered diffusivity per moisture record and scheme
/// (5 decimals; moisture columns with 6).
fn table_diffusivity(q: &QuadratureSpec) -> Result<String, Error> {
    let rf = RootFindSpec::default();
    let mut csv = String::from(
        "T_h,Theta,c2,true_D0,first_order,perfect_match,explicit_1,explicit_2\r\n",
    );
    for rec in &MOISTURE_DATASET {
        let mut s = InfiltrationScenario::new(MOISTURE_THETA0, MOISTURE_THETA1, MOISTURE_LENGTH_CM);
        s.measured = Some(rec.theta_measured);
        s.time_h = Some(rec.t_h);
        let c2 = physics::reduce_infiltration(&s)?;
        let a_true = oracle::true_a(c2, &rf)?;
        let d0_true = a_true * MOISTURE_LENGTH_CM * MOISTURE_LENGTH_CM / (4.0 * rec.t_h);
        let mut line = format!(
            "{},{},{},{}",
            fmt_sig(rec.t_h, 6),
            fmt_fixed(rec.theta_measured, 6),
            fmt_fixed(c2, 6),
            fmt_fixed(d0_true, 5)
        );
        for id in TABLE_SCHEMES {
            let d0 = physics::solve_ip3_diffusivity(&s, id, q)?;
            let _ = write!(line, ",{}", fmt_fixed(d0, 5));
        }
        let _ = writeln!(csv, "{line}\r");
    }
    Ok(csv)
}

fn read_field_csv(path: &PathBuf) -> Result<Vec<physics::DrainageRecord>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Domain("empty field-data CSV".into()))?
        .trim_end_matches('\r');
    if header != "T_days,H_minus_d_m,S_y,K_m_per_day" {
        return Err(Error::Domain(format!(
            "field-data CSV must start with 'T_days,H_minus_d_m,S_y,K_m_per_day', got '{header}'"
        )));
    }
    let mut out = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Domain(format!(
                "line {}: expected 4 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64, Error> {
            s.trim()
                .parse()
                .map_err(|_| Error::Domain(format!("line {}: bad number '{s}'", lineno + 2)))
        };
        out.push(physics::DrainageRecord {
            t_days: parse(fields[0])?,
            h_minus_d_m: parse(fields[1])?,
            s_y: parse(fields[2])?,
            k_m_day: parse(fields[3])?,
        });
    }
    if out.is_empty() {
        return Err(Error::Domain("field-data CSV has no records".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(fmt_sig(0.0729612, 6), "0.0729612");
        assert_eq!(fmt_sig(48.15861234, 6), "48.1586");
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(2.5, 3), "2.50");
        assert_eq!(fmt_sig(125000.0, 3), "125000");
    }

    #[test]
    fn dispatch_exit_codes() {
        // success
        let code = dispatch(["heatinv", "solve-a", "--c", "0.5", "--scheme", "first-order"]);
        assert_eq!(code, EXIT_OK);
        // admissibility failure
        let code = dispatch(["heatinv", "solve-a", "--c", "1.5", "--scheme", "first-order"]);
        assert_eq!(code, EXIT_DOMAIN);
        // usage failure
        let code = dispatch(["heatinv", "solve-a", "--c", "not-a-number"]);
        assert_eq!(code, EXIT_USAGE);
        let code = dispatch(["heatinv", "no-such-command"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn scheme_falls_back_to_default() {
        let cfg = ConfigFile(HashMap::new());
        let id = resolve_scheme(None, &cfg).unwrap();
        assert_eq!(id, SolverId::Composite(CompositeId::PerfectMatch));
    }
}
