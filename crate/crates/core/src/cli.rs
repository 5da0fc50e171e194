//! Command-line front end. The binary only forwards to [`run`].

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{eigenfunction, solve_spectrum, Method};
use crate::fundamental::build_basis;
use crate::inverse::{
    forward_curve, recover_potential, validate_spectrum_like, ProbeSpec, SpectrumLikeFunction,
};
use crate::io::{
    classification_json, emit_csv, parse_potential_arg, read_problem, read_spectral_data,
    render_json, SpectrumReport,
};
use crate::shooting::{default_window, MissFunction};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Parser)]
#[command(
    name = "dirac-sturm",
    version,
    about = "Dirichlet spectra of -y'' + q y = λ Σ m_i δ(x - t_i) y on [0, 1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Charpoly,
    Tridiag,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Charpoly => Method::CharPoly,
            MethodArg::Tridiag => Method::Tridiag,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues with hypotheses and shooting residuals.
    Spectrum {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Hypotheses and classification only.
    Classify {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Characteristic polynomial coefficients, ascending.
    Charpoly {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Samples `x,E` of the eigenfunction for an eigenvalue.
    Eigenfunction {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Single-mass eigenvalue curve `t,lambda`.
    ForwardMap {
        /// Potential JSON, inline or as a file path.
        #[arg(long)]
        potential: String,
        /// `LO:HI:N` with `0 < LO <= HI < 1`.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover `x,q` from spectral data `t,lambda`.
    Inverse {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Recover even if the data fails the spectrum-like checks.
        #[arg(long)]
        force: bool,
    },
    /// Spectrum-like checks on spectral data, as JSON.
    ValidateSl {
        #[arg(long)]
        data: PathBuf,
    },
    /// Sign-change scan of the shooting miss function.
    Oracle {
        #[arg(long)]
        problem: PathBuf,
        /// `LO:HI`; defaults to a window scaled by the node layout.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
}

fn parse_numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != n {
        return Err(Error::validation(
            what,
            format!("expected {n} fields separated by ':'"),
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::validation(what, format!("\"{p}\" is not a number")))
        })
        .collect()
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let v = parse_numbers(s, 3, "grid")?;
    let (lo, hi, n) = (v[0], v[1], v[2]);
    if n.fract() != 0.0 || n < 1.0 {
        return Err(Error::validation("grid", "N must be a positive integer"));
    }
    if !(lo > 0.0 && hi < 1.0 && lo <= hi) {
        return Err(Error::validation("grid", "need 0 < LO <= HI < 1"));
    }
    let n = n as usize;
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect())
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_curve(path: &Path) -> Result<SpectrumLikeFunction> {
    let rows = read_spectral_data(path)?;
    let (ts, ls) = rows.into_iter().unzip();
    SpectrumLikeFunction::sampled(ts, ls)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Spectrum {
            problem,
            method,
            csv,
            ..
        } => {
            let p = read_problem(&problem)?;
            let tol = p.tolerances();
            let basis = build_basis(&p.potential, &tol)?;
            let c = solve_spectrum(&basis, &p.weight, &tol, method.into())?;
            let report = SpectrumReport::new(&c, &MissFunction::from_basis(&basis, &p.weight))?;
            if csv {
                if c.spectrum.is_all_complex() {
                    writeln!(err, "every complex number is an eigenvalue")?;
                }
                write_output(None, &report.to_csv(), out)
            } else {
                write_output(None, &render_json(&report.to_json_value()), out)
            }
        }
        Command::Classify { problem } => {
            let p = read_problem(&problem)?;
            let tol = p.tolerances();
            let basis = build_basis(&p.potential, &tol)?;
            let c = solve_spectrum(&basis, &p.weight, &tol, Method::CharPoly)?;
            write_output(
                None,
                &render_json(&classification_json(&c.report, &c.spectrum)),
                out,
            )
        }
        Command::Charpoly { problem } => {
            let p = read_problem(&problem)?;
            let tol = p.tolerances();
            let basis = build_basis(&p.potential, &tol)?;
            let cp = crate::assembly::characteristic_polynomial(&basis, &p.weight, &tol)?;
            let v = json!({
                "case": match cp.case {
                    crate::BasisCase::CaseI => "case_i",
                    crate::BasisCase::CaseII => "case_ii",
                },
                "coefficients": cp.reduced.coeffs(),
                "raw_coefficients": cp.raw.coeffs(),
                "reduced": cp.was_reduced(),
            });
            write_output(None, &render_json(&v), out)
        }
        Command::Eigenfunction {
            problem,
            lambda,
            samples,
            out: path,
        } => {
            let p = read_problem(&problem)?;
            let tol = p.tolerances();
            let basis = build_basis(&p.potential, &tol)?;
            let e = eigenfunction(&basis, &p.weight, lambda, &tol)?;
            let rows: Vec<Vec<f64>> = e
                .sample(samples)?
                .into_iter()
                .map(|(x, y)| vec![x, y])
                .collect();
            write_output(path.as_deref(), &emit_csv(&rows, "x,E"), out)
        }
        Command::ForwardMap {
            potential,
            grid,
            out: path,
        } => {
            let q = parse_potential_arg(&potential)?;
            let ts = parse_grid(&grid)?;
            let rows: Vec<Vec<f64>> = forward_curve(&q, &ts, &Tolerances::default())?
                .into_iter()
                .map(|(t, l)| vec![t, l])
                .collect();
            write_output(path.as_deref(), &emit_csv(&rows, "t,lambda"), out)
        }
        Command::Inverse {
            data,
            out: path,
            force,
        } => {
            let f = load_curve(&data)?;
            let SpectrumLikeFunction::Sampled(s) = &f else {
                unreachable!("loaded curves are sampled")
            };
            let grid = s.ts().to_vec();
            let r = recover_potential(&f, &grid, force)?;
            let rows: Vec<Vec<f64>> = r.xs.iter().zip(&r.qs).map(|(&x, &q)| vec![x, q]).collect();
            write_output(path.as_deref(), &emit_csv(&rows, "x,q"), out)
        }
        Command::ValidateSl { data } => {
            let f = load_curve(&data)?;
            let report = validate_spectrum_like(&f, &ProbeSpec::for_function(&f));
            let v = serde_json::to_value(&report).expect("reports serialize");
            write_output(None, &render_json(&v), out)
        }
        Command::Oracle {
            problem,
            window,
            samples,
        } => {
            let p = read_problem(&problem)?;
            let tol = p.tolerances();
            let (lo, hi) = match window {
                Some(w) => {
                    let v = parse_numbers(&w, 2, "window")?;
                    (v[0], v[1])
                }
                None => default_window(&p.weight),
            };
            let roots =
                MissFunction::new(&p.potential, &p.weight, &tol).scan(lo, hi, samples, &tol)?;
            let v = json!({ "roots": roots, "samples": samples, "window": [lo, hi] });
            write_output(None, &render_json(&v), out)
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code: 0 on success, 1 for usage, parse,
/// validation and I/O errors, 2 for numerical trouble.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
