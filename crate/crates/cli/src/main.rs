#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hahn_oscillator::limits::{parabose_limit_scan, ThresholdEntry};
use hahn_oscillator::oscillator::{position_spectrum_closed_form, wavefunction_table};
use hahn_oscillator::parabose::{psi, psi_hermite};
use hahn_oscillator::report::{self, Check};
use hahn_oscillator::{Error, HalfInt, ParaboseParams, RepParams, ThresholdFixture, WavefunctionTable};

use output::{emit, render_phi, render_psi, render_spectrum, write_in, Format, OscMeta, ParaMeta};

#[derive(Parser)]
#[command(name = "hahn-osc", version, about = "Finite u(2)_alpha oscillator: checks, spectra and wavefunction tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RepArgs {
    /// Twice the representation label; must be odd.
    #[arg(long, default_value_t = 65, allow_negative_numbers = true)]
    two_j: i64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
}

impl RepArgs {
    fn params(&self) -> Result<RepParams, Failure> {
        Ok(RepParams::from_two_j(self.two_j, self.alpha)?)
    }
}

#[derive(Args)]
struct OutDir {
    /// Directory for generated files.
    #[arg(long, env = "HAHN_OSC_OUT_DIR", default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run every residual check and report it; exits 1 on the first failure.
    Verify {
        #[command(flatten)]
        rep: RepArgs,
        /// Truncation for the parabose operator checks.
        #[arg(long, default_value_t = 200)]
        trunc: usize,
        /// Threshold fixture for the limit checks (built-in one if absent).
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Position spectrum `q_k`, ascending.
    Spectrum {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Discrete wavefunctions for the given levels.
    Wavefunction {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        levels: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file for a single level; stdout if absent.
        #[arg(long, conflicts_with = "out_dir")]
        output: Option<PathBuf>,
        /// Write one file per level here instead.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Discrete wavefunction files at j = 65/2.
    Figure1 {
        #[arg(long, default_value_t = 65)]
        two_j: i64,
        #[arg(long, value_delimiter = ',', default_value = "-0.5,-0.7,1", allow_hyphen_values = true)]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,65")]
        levels: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutDir,
    },
    /// Parabose wavefunction files on a uniform grid.
    Figure2 {
        #[arg(long = "a", value_delimiter = ',', default_value = "0.5,0.3,2", allow_hyphen_values = true)]
        a_values: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        levels: Vec<u32>,
        #[arg(long, default_value_t = 501)]
        points: usize,
        #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutDir,
    },
    /// Errors of the j -> infinity parabose limit; checked against a fixture.
    LimitScan {
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        levels: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "-0.7,-0.5,1", allow_hyphen_values = true)]
        alphas: Vec<f64>,
        #[arg(long = "two-j", value_delimiter = ',', default_value = "21,61,201,401")]
        two_js: Vec<i64>,
        /// Threshold fixture (built-in one if absent).
        #[arg(long, conflicts_with = "calibrate")]
        fixture: Option<PathBuf>,
        /// Write a fresh fixture (1.25x the final errors) instead of checking.
        #[arg(long)]
        calibrate: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(msg) => Failure::Usage(msg),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verify { rep, trunc, fixture } => cmd_verify(&rep, trunc, fixture.as_deref()),
        Command::Spectrum { rep, format, output } => {
            let params = rep.params()?;
            let s = position_spectrum_closed_form(&params);
            let rows: Vec<(i64, f64)> = s.labels.iter().map(|k| k.twice()).zip(s.eigenvalues.iter().copied()).collect();
            let meta = OscMeta { two_j: params.two_j(), alpha: params.alpha(), n: None };
            Ok(emit(output.as_deref(), &render_spectrum(format, meta, &rows))?)
        }
        Command::Wavefunction { rep, levels, format, output, out_dir } => {
            let params = rep.params()?;
            let table = wavefunction_table(&params)?;
            check_levels(&params, &levels)?;
            match out_dir {
                Some(dir) => {
                    for &n in &levels {
                        let name = format!("phi_2j{}_alpha{}_n{n}.{}", params.two_j(), params.alpha(), format.extension());
                        println!("{}", write_in(&dir, &name, &phi_document(&table, n, format)?)?.display());
                    }
                    Ok(())
                }
                None => {
                    if levels.len() != 1 {
                        return Err(Failure::Usage("several levels need --out-dir".into()));
                    }
                    Ok(emit(output.as_deref(), &phi_document(&table, levels[0], format)?)?)
                }
            }
        }
        Command::Figure1 { two_j, alphas, levels, format, out } => {
            for &alpha in &alphas {
                let params = RepParams::from_two_j(two_j, alpha)?;
                check_levels(&params, &levels)?;
                let table = wavefunction_table(&params)?;
                for &n in &levels {
                    let name = format!("figure1_alpha{alpha}_n{n}.{}", format.extension());
                    println!("{}", write_in(&out.out_dir, &name, &phi_document(&table, n, format)?)?.display());
                }
            }
            Ok(())
        }
        Command::Figure2 { a_values, levels, points, x_min, x_max, format, out } => {
            if points < 2 || !(x_min < x_max) {
                return Err(Failure::Usage("need at least 2 points and x_min < x_max".into()));
            }
            let grid = report::uniform_grid(x_min, x_max, points);
            for &a in &a_values {
                ParaboseParams::new(a, 2)?;
                for &n in &levels {
                    let rows = grid.iter().map(|&x| Ok((x, psi(n, a, x)?))).collect::<Result<Vec<_>, Error>>()?;
                    if a == 0.5 {
                        let dev = rows.iter().map(|&(x, v)| (v - psi_hermite(n, x)).abs()).fold(0.0, f64::max);
                        if !(dev <= 1e-12) {
                            return Err(Failure::Check(format!("a=1/2 n={n} differs from Hermite form by {dev:e}")));
                        }
                    }
                    let name = format!("figure2_a{a}_n{n}.{}", format.extension());
                    let body = render_psi(format, ParaMeta { a, n }, &rows);
                    println!("{}", write_in(&out.out_dir, &name, &body)?.display());
                }
            }
            Ok(())
        }
        Command::LimitScan { levels, alphas, two_js, fixture, calibrate, format, output } => {
            cmd_limit_scan(&levels, &alphas, &two_js, fixture.as_deref(), calibrate.as_deref(), format, output.as_deref())
        }
    }
}

fn check_levels(params: &RepParams, levels: &[usize]) -> Result<(), Failure> {
    match levels.iter().find(|&&n| n >= params.dim()) {
        Some(n) => Err(Failure::Usage(format!("level {n} does not exist for two_j = {}", params.two_j()))),
        None => Ok(()),
    }
}

/// Renders one level after re-checking its norm and parity.
fn phi_document(table: &WavefunctionTable, n: usize, format: Format) -> Result<String, Failure> {
    let values = &table.values[n];
    let norm = (values.iter().map(|v| v * v).sum::<f64>() - 1.0).abs();
    if !(norm <= 1e-12) {
        return Err(Failure::Check(format!("level {n} norm off by {norm:e}")));
    }
    let dim = values.len();
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    if (0..dim).any(|c| values[c] != parity * values[dim - 1 - c]) {
        return Err(Failure::Check(format!("level {n} has the wrong parity")));
    }
    let rows: Vec<(i64, f64, f64)> = table
        .spectrum
        .labels
        .iter()
        .zip(&table.spectrum.eigenvalues)
        .zip(values)
        .map(|((k, q), phi)| (k.twice(), *q, *phi))
        .collect();
    let meta = OscMeta { two_j: table.params.two_j(), alpha: table.params.alpha(), n: Some(n) };
    Ok(render_phi(format, meta, &rows))
}

fn load_fixture(path: Option<&Path>) -> Result<ThresholdFixture, Failure> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            ThresholdFixture::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => Ok(ThresholdFixture::embedded()),
    }
}

fn print_checks(checks: &[Check]) {
    for c in checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!("{status} {:<48} residual={:.3e} tol={:.3e}", c.name, c.residual, c.tolerance);
    }
}

fn cmd_verify(rep: &RepArgs, trunc: usize, fixture: Option<&Path>) -> Result<(), Failure> {
    let params = rep.params()?;
    let fixture = load_fixture(fixture)?;
    let mut checks = report::representation_checks(&params)?;
    checks.extend(report::krawtchouk_checks(13)?);
    checks.extend(report::hahn_checks(&[-0.5, -0.3, 0.0, 1.0, 2.5], &[1, 5, 20, 60])?);
    for a in [0.3, 0.5, 1.0, 2.0] {
        checks.extend(report::parabose_checks(&ParaboseParams::new(a, trunc)?));
    }
    for a in [0.3, 0.5, 2.0] {
        checks.push(report::psi_orthonormality_check(a, 6)?);
    }
    checks.push(report::hermite_form_check(6)?);
    checks.extend(report::limit_checks(&fixture, &[0, 1, 2, 3], &[-0.7, -0.5, 1.0], &[])?);
    print_checks(&checks);
    match report::first_failure(&checks) {
        Some(c) => Err(Failure::Check(format!("first failing check: {}", c.name))),
        None => Ok(()),
    }
}

fn round_up_two_digits(v: f64) -> f64 {
    let exp = v.log10().floor() as i32 - 1;
    let digits = (v / 10f64.powi(exp)).ceil();
    format!("{digits}e{exp}").parse().unwrap()
}

#[derive(serde::Serialize)]
struct ScanRow {
    n: u32,
    alpha: f64,
    two_j: i64,
    error: f64,
}

fn cmd_limit_scan(
    levels: &[u32],
    alphas: &[f64],
    two_js: &[i64],
    fixture: Option<&Path>,
    calibrate: Option<&Path>,
    format: Format,
    output: Option<&Path>,
) -> Result<(), Failure> {
    if two_js.is_empty() || two_js.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::Usage("two-j sequence must be non-empty and ascending".into()));
    }
    let js: Vec<HalfInt> = two_js.iter().map(|&t| HalfInt::from_twice(t)).collect();
    let grid = hahn_oscillator::limits::default_x_grid();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for &alpha in alphas {
        for &n in levels {
            let scan = parabose_limit_scan(n, alpha, &grid, &js)?;
            for j in &scan.skipped {
                eprintln!("note: level {n} absent at two_j = {}, skipped", j.twice());
            }
            for (j, e) in scan.j_sequence.iter().zip(&scan.errors) {
                rows.push(ScanRow { n, alpha, two_j: j.twice(), error: *e });
            }
            if let Some(last) = scan.final_error() {
                let two_j_max = *two_js.last().expect("non-empty");
                entries.push(ThresholdEntry { n, alpha, two_j_max, threshold: round_up_two_digits(1.25 * last) });
            }
        }
    }
    let body = match format {
        Format::Csv => {
            let mut s = String::from("n,alpha,two_j,error\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{}\n", r.n, r.alpha, r.two_j, output::num(r.error)));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n",
    };
    emit(output, &body)?;

    if let Some(path) = calibrate {
        emit(Some(path), &ThresholdFixture { entries }.render())?;
        return Ok(());
    }
    let fixture = load_fixture(fixture)?;
    let checks = report::limit_checks(&fixture, levels, alphas, two_js)?;
    for c in &checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        eprintln!("{status} {} residual={:.3e} tol={:.3e}", c.name, c.residual, c.tolerance);
    }
    match report::first_failure(&checks) {
        Some(c) => Err(Failure::Check(format!("first failing check: {}", c.name))),
        None => Ok(()),
    }
}
