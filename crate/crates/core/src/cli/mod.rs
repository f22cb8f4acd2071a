//! Command-line front end of the `ptcrit` binary.
//!
//! Every command produces a [`Table`]. CSV output starts with `#` lines
//! echoing the run configuration, and JSON output carries the same
//! fields under `config`. Row failures are collected in
//! [`Outcome::failures`] and turn into a nonzero exit status.

pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

use crate::eig::match_values;
use crate::ep::{self, converge_critical, default_schedule, find_complex_ep, find_critical_auto, EpError};
use crate::fit::{fit_linear, fit_power_law_with, FitError, FitOptions, FitResult};
use crate::model::{Family, ModelSpec};
use crate::pt::{self, eval_series, radius_converges, radius_sequence, rs_coefficients_box, PtError};

pub use table::{format_float, read_critical_csv, Cell, CriticalRow, Format, ParseError, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ep(#[from] EpError),
    #[error(transparent)]
    Pt(#[from] PtError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Parser, Clone)]
#[command(name = "ptcrit", version, about = "Exceptional points of PT-symmetric model Hamiltonians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// cubic, quartic, box, mathieu-even, mathieu-odd or rotor3d.
    #[arg(long, global = true, default_value = "cubic")]
    pub model: Family,
    /// Magnetic quantum number |M| for rotor3d.
    #[arg(long, global = true, default_value_t = 0)]
    pub m_abs: u32,
    /// Basis size N. Commands that converge in N use it as a fixed size.
    #[arg(long, global = true)]
    pub basis_size: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Clone)]
pub enum Command {
    /// Physical levels at one coupling.
    Spectrum {
        /// Complex coupling g, e.g. `12i`, `11+26i` or `0.5,-1`.
        #[arg(long, value_parser = parse_complex)]
        coupling: Complex64,
    },
    /// Levels tracked along g = i a (or g = a with `--axis real`).
    Scan {
        #[arg(long, value_parser = parse_range)]
        range: GridRange,
        /// Level labels, e.g. `1-4` or `0,1,5`; default the first four.
        #[arg(long, value_parser = parse_labels)]
        levels: Option<::std::vec::Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Axis::Imag)]
        axis: Axis,
    },
    /// Critical couplings a_n and energies e_n for every pair up to `--n-max`.
    Critical {
        #[arg(long)]
        n_max: usize,
        /// Agreement required between successive basis sizes.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Complex coupling where two levels coalesce.
    ComplexEp {
        /// Starting coupling.
        #[arg(long, value_parser = parse_complex)]
        coupling: Complex64,
        /// Level labels of the pair, e.g. `2,3`.
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
    },
    /// Perturbation series of a box level.
    Series {
        /// Box level, counted from 1.
        #[arg(long)]
        n: usize,
        /// Highest power of g^2.
        #[arg(long, default_value_t = 100)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Report::Coeffs)]
        report: Report,
        /// Grid of a for `--report compare`.
        #[arg(long, value_parser = parse_range, default_value = "0:20:41")]
        range: GridRange,
        /// Basis size of the diagonalization reference in `compare`.
        #[arg(long, default_value_t = 100)]
        dm_basis: usize,
    },
    /// Fit a scaling law to a critical table written by `critical`.
    Fit {
        /// Input CSV; `-` reads standard input.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Form::Power)]
        form: Form,
        /// Inclusive range of pair numbers, e.g. `0:8`.
        #[arg(long, value_parser = parse_rows)]
        rows: Option<(usize, usize)>,
        /// Initial `b,c,s` for the power law.
        #[arg(long, value_parser = parse_init)]
        init: Option<[f64; 3]>,
        /// Hold the exponent fixed.
        #[arg(long)]
        freeze_s: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Imag,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Coeffs,
    Radius,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Power,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn points(&self) -> Vec<f64> {
        let d = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| if k + 1 == self.steps { self.hi } else { self.lo + d * k as f64 }).collect()
    }
}

impl std::fmt::Display for GridRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.steps)
    }
}

/// Parse `a`, `bi`, `a+bi`, `a-bi` or `a,b`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot read {s:?} as a complex number");
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?));
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match cut {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
}

pub fn parse_range(s: &str) -> Result<GridRange, String> {
    let p: Vec<&str> = s.split(':').collect();
    if p.len() != 3 {
        return Err(format!("expected lo:hi:steps, got {s:?}"));
    }
    let lo: f64 = p[0].parse().map_err(|_| format!("bad lower bound {:?}", p[0]))?;
    let hi: f64 = p[1].parse().map_err(|_| format!("bad upper bound {:?}", p[1]))?;
    let steps: usize = p[2].parse().map_err(|_| format!("bad step count {:?}", p[2]))?;
    if steps < 2 {
        return Err("steps must be at least 2".into());
    }
    Ok(GridRange { lo, hi, steps })
}

pub fn parse_labels(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once('-') {
            let a: usize = a.parse().map_err(|_| format!("bad level {a:?}"))?;
            let b: usize = b.parse().map_err(|_| format!("bad level {b:?}"))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad level {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("no levels given".into());
    }
    Ok(out)
}

pub fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    match parse_labels(s)?.as_slice() {
        &[p, q] if p != q => Ok((p, q)),
        _ => Err(format!("expected two distinct levels, got {s:?}")),
    }
}

pub fn parse_rows(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let a = a.parse().map_err(|_| format!("bad row {a:?}"))?;
    let b = b.parse().map_err(|_| format!("bad row {b:?}"))?;
    Ok((a, b))
}

pub fn parse_init(s: &str) -> Result<[f64; 3], String> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|x| x.trim().parse::<f64>()).collect();
    match v.map_err(|e| e.to_string())?.as_slice() {
        &[b, c, e] => Ok([b, c, e]),
        _ => Err("expected b,c,s".into()),
    }
}

/// Result of one command: the data table, rows that failed, and an
/// optional structured payload added to JSON output.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub table: Table,
    pub failures: Vec<String>,
    pub payload: Option<Value>,
}

impl Outcome {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match (format, &self.payload) {
            (Format::Json, Some(p)) => {
                let mut v = self.table.to_json();
                v["result"] = p.clone();
                serde_json::to_writer_pretty(&mut *out, &v)?;
                writeln!(out)
            }
            _ => self.table.write(format, out),
        }
    }
}

fn c2s(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { "" } else { "+" };
    format!("{}{sign}{}i", format_float(z.re), format_float(z.im))
}

impl Cli {
    fn echo(&self) -> Vec<(String, String)> {
        let c = &self.common;
        let mut m = vec![("ptcrit".to_string(), env!("CARGO_PKG_VERSION").to_string())];
        if !matches!(self.command, Command::Fit { .. }) {
            m.push(("model".into(), c.model.to_string()));
            if c.model == Family::Rotor3D {
                m.push(("m_abs".into(), c.m_abs.to_string()));
            }
            if let Some(n) = c.basis_size {
                m.push(("basis_size".into(), n.to_string()));
            }
        }
        let mut push = |k: &str, v: String| m.push((k.to_string(), v));
        match &self.command {
            Command::Spectrum { coupling } => {
                push("command", "spectrum".into());
                push("coupling", c2s(*coupling));
            }
            Command::Scan { range, levels, axis } => {
                push("command", "scan".into());
                push("range", range.to_string());
                push("axis", format!("{axis:?}").to_lowercase());
                if let Some(l) = levels {
                    push("levels", l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                }
            }
            Command::Critical { n_max, tol } => {
                push("command", "critical".into());
                push("n_max", n_max.to_string());
                push("tol", format!("{tol:e}"));
            }
            Command::ComplexEp { coupling, pair } => {
                push("command", "complex-ep".into());
                push("coupling", c2s(*coupling));
                push("pair", format!("{},{}", pair.0, pair.1));
            }
            Command::Series { n, order, report, range, dm_basis } => {
                push("command", "series".into());
                push("n", n.to_string());
                push("order", order.to_string());
                push("report", format!("{report:?}").to_lowercase());
                if *report == Report::Compare {
                    push("range", range.to_string());
                    push("dm_basis", dm_basis.to_string());
                }
            }
            Command::Fit { input, form, rows, init, freeze_s } => {
                push("command", "fit".into());
                push("input", input.display().to_string());
                push("form", format!("{form:?}").to_lowercase());
                if let Some((a, b)) = rows {
                    push("rows", format!("{a}:{b}"));
                }
                if let Some(i) = init {
                    push("init", format!("{},{},{}", i[0], i[1], i[2]));
                }
                if let Some(s) = freeze_s {
                    push("freeze_s", s.to_string());
                }
            }
        }
        m
    }

    fn model(&self, n: usize) -> ModelSpec {
        let c = &self.common;
        let mut m = ModelSpec::new(c.model, Complex64::new(0.0, 0.0), n);
        m.m_abs = if c.model == Family::Rotor3D { c.m_abs } else { 0 };
        m
    }
}

/// Execute the parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut out = match &cli.command {
        Command::Spectrum { coupling } => cmd_spectrum(cli, *coupling)?,
        Command::Scan { range, levels, axis } => cmd_scan(cli, *range, levels.as_deref(), *axis)?,
        Command::Critical { n_max, tol } => cmd_critical(cli, *n_max, *tol)?,
        Command::ComplexEp { coupling, pair } => cmd_complex_ep(cli, *coupling, *pair)?,
        Command::Series { n, order, report, range, dm_basis } => {
            cmd_series(cli, *n, *order, *report, *range, *dm_basis)?
        }
        Command::Fit { input, form, rows, init, freeze_s } => cmd_fit(input, *form, *rows, *init, *freeze_s)?,
    };
    let mut meta = cli.echo();
    meta.append(&mut out.table.meta);
    out.table.meta = meta;
    Ok(out)
}

fn cmd_spectrum(cli: &Cli, g: Complex64) -> Result<Outcome, CliError> {
    let model = cli.model(cli.common.basis_size.unwrap_or(100)).with_coupling(g);
    let levels = ep::levels(&model)?;
    let first = model.family.first_level();
    let mut t = Table::new(&["level", "re", "im"]);
    for (k, z) in levels.iter().enumerate() {
        t.push(vec![(k + first).into(), z.re.into(), z.im.into()]);
    }
    Ok(Outcome { table: t, ..Default::default() })
}

/// Levels along a grid, followed through near-crossings by nearest
/// assignment. An ambiguous assignment flags the row and restarts from
/// the ordering by real part.
pub fn cmd_scan(cli: &Cli, range: GridRange, labels: Option<&[usize]>, axis: Axis) -> Result<Outcome, CliError> {
    let base = cli.model(cli.common.basis_size.unwrap_or(100));
    let first = base.family.first_level();
    let labels: Vec<usize> = labels.map(<[usize]>::to_vec).unwrap_or_else(|| (first..first + 4).collect());
    if let Some(&l) = labels.iter().find(|&&l| l < first) {
        return Err(CliError::Usage(format!("level {l} below the first level {first}")));
    }
    let idx: Vec<usize> = labels.iter().map(|l| l - first).collect();
    let need = idx.iter().max().unwrap() + 1;
    // Two spare levels keep partners of the outermost tracked level in view.
    let window = need + 2;
    let grid = range.points();
    let coupling = |a: f64| match axis {
        Axis::Imag => Complex64::new(0.0, a),
        Axis::Real => Complex64::new(a, 0.0),
    };
    let spectra: Vec<Result<Vec<Complex64>, EpError>> =
        grid.par_iter().map(|&a| ep::levels(&base.with_coupling(coupling(a)))).collect();

    let mut cols = vec!["a".to_string()];
    for l in &labels {
        cols.push(format!("re_e{l}"));
        cols.push(format!("im_e{l}"));
    }
    cols.push("tracking".into());
    let mut t = Table { columns: cols, ..Default::default() };
    let mut failures = Vec::new();
    let mut tracked: Option<Vec<Complex64>> = None;
    for (a, spec) in grid.iter().zip(spectra) {
        let lv = match spec {
            Ok(v) if v.len() >= need => v,
            Ok(v) => {
                failures.push(format!("a = {a}: only {} levels", v.len()));
                tracked = None;
                continue;
            }
            Err(e) => {
                failures.push(format!("a = {a}: {e}"));
                tracked = None;
                continue;
            }
        };
        let w = window.min(lv.len());
        let curr = &lv[..w];
        let (next, flag) = match tracked.as_ref().filter(|p| p.len() == w) {
            None => (curr.to_vec(), "sorted"),
            Some(prev) => {
                let m = match_values(prev, curr);
                if m.ambiguous {
                    (curr.to_vec(), "resorted")
                } else {
                    (m.permutation.iter().map(|&j| curr[j]).collect(), "tracked")
                }
            }
        };
        let mut row = vec![Cell::Float(*a)];
        for &i in &idx {
            row.push(next[i].re.into());
            row.push(next[i].im.into());
        }
        row.push(flag.into());
        t.push(row);
        tracked = Some(next);
    }
    Ok(Outcome { table: t, failures, payload: None })
}

pub fn cmd_critical(cli: &Cli, n_max: usize, tol: f64) -> Result<Outcome, CliError> {
    let family = cli.common.model;
    let ns: Vec<usize> = (family.first_pair()..=n_max).collect();
    let schedule = default_schedule();
    let rows: Vec<Result<ep::CriticalPoint, EpError>> = ns
        .par_iter()
        .map(|&n| match cli.common.basis_size {
            Some(b) => find_critical_auto(&cli.model(b), n, b),
            None => converge_critical(&cli.model(schedule[0]), n, tol, &schedule),
        })
        .collect();
    let mut t = Table::new(&["n", "e_n", "a_n", "n_used", "residual", "converged"]);
    let mut failures = Vec::new();
    for (n, r) in ns.iter().zip(rows) {
        match r {
            Ok(c) => {
                if !c.converged {
                    failures.push(format!("n = {n}: not converged (N = {}, residual {:e})", c.n_used, c.residual));
                }
                t.push(vec![c.n.into(), c.e_n.into(), c.a_n.into(), c.n_used.into(), c.residual.into(), c.converged.into()]);
            }
            Err(e) => failures.push(format!("n = {n}: {e}")),
        }
    }
    Ok(Outcome { table: t, failures, payload: None })
}

fn cmd_complex_ep(cli: &Cli, g0: Complex64, pair: (usize, usize)) -> Result<Outcome, CliError> {
    let basis = cli.common.basis_size.unwrap_or(100);
    let r = find_complex_ep(&cli.model(basis), pair, g0, basis)?;
    let mut t = Table::new(&[
        "re_g", "im_g", "abs_g", "re_e", "im_e", "level_p", "level_q", "n_used", "residual", "iterations",
    ]);
    t.push(vec![
        r.g_c.re.into(),
        r.g_c.im.into(),
        r.g_c.norm().into(),
        r.e_c.re.into(),
        r.e_c.im.into(),
        r.pair.0.into(),
        r.pair.1.into(),
        r.n_used.into(),
        r.residual.into(),
        r.iterations.into(),
    ]);
    Ok(Outcome { table: t, ..Default::default() })
}

pub fn cmd_series(
    cli: &Cli,
    n: usize,
    order: usize,
    report: Report,
    range: GridRange,
    dm_basis: usize,
) -> Result<Outcome, CliError> {
    if cli.common.model != Family::Box {
        return Err(CliError::Usage("series is implemented for --model box only".into()));
    }
    let basis = cli.common.basis_size.unwrap_or_else(|| pt::min_basis(n, order).max(200));
    let c = rs_coefficients_box(n, order, basis)?;
    let mut meta = Vec::new();
    let table = match report {
        Report::Coeffs => {
            let mut t = Table::new(&["j", "coeff", "scaled"]);
            for j in 0..=order {
                t.push(vec![j.into(), c.coeff(j).into(), c.scaled[j].into()]);
            }
            meta.push(("scale".to_string(), format_float(c.scale)));
            t
        }
        Report::Radius => {
            let seq = radius_sequence(&c);
            meta.push(("convergent".to_string(), radius_converges(&seq).to_string()));
            let mut t = Table::new(&["k", "a_k"]);
            for (k, a) in seq.iter().enumerate() {
                t.push(vec![(k + 1).into(), a.unwrap_or(f64::NAN).into()]);
            }
            t
        }
        Report::Compare => {
            let grid = range.points();
            let model = ModelSpec::new(Family::Box, Complex64::new(0.0, 0.0), dm_basis);
            let dm: Vec<Result<Vec<Complex64>, EpError>> =
                grid.par_iter().map(|&a| ep::levels(&model.with_a(a))).collect();
            let mut t = Table::new(&["a", "dm_re", "dm_im", "series_re", "series_im", "abs_diff"]);
            for (a, lv) in grid.iter().zip(dm) {
                let e = lv?[n - 1];
                let s = eval_series(&c, Complex64::new(0.0, *a), order);
                t.push(vec![(*a).into(), e.re.into(), e.im.into(), s.re.into(), s.im.into(), (e - s).norm().into()]);
            }
            t
        }
    };
    let mut table = table;
    table.meta = meta;
    Ok(Outcome { table, ..Default::default() })
}

/// Load a critical table from `path` (`-` for standard input).
pub fn load_critical(path: &std::path::Path) -> Result<Vec<CriticalRow>, CliError> {
    let name = path.display().to_string();
    let mut reader: Box<dyn Read> = if name == "-" { Box::new(io::stdin()) } else { Box::new(File::open(path)?) };
    read_critical_csv(&mut reader).map_err(|source| CliError::Parse { path: name, source })
}

pub fn cmd_fit(
    input: &std::path::Path,
    form: Form,
    rows: Option<(usize, usize)>,
    init: Option<[f64; 3]>,
    freeze_s: Option<f64>,
) -> Result<Outcome, CliError> {
    let data = load_critical(input)?;
    let pts: Vec<(f64, f64)> = data
        .iter()
        .filter(|r| rows.map_or(true, |(lo, hi)| r.n >= lo && r.n <= hi))
        .map(|r| (r.e_n, r.a_n))
        .collect();
    let (result, failures) = match form {
        Form::Linear => (fit_linear(&pts)?, Vec::new()),
        Form::Power => {
            let opts = FitOptions { init, frozen_exponent: freeze_s, ..FitOptions::default() };
            match fit_power_law_with(&pts, &opts) {
                Ok(r) => (r, Vec::new()),
                Err(FitError::NotConverged { best }) => {
                    let msg = format!("fit did not converge after {} iterations", best.iterations);
                    (*best, vec![msg])
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    Ok(Outcome { table: fit_table(&result, form, freeze_s.is_some()), failures, payload: Some(serde_json::to_value(&result).unwrap()) })
}

fn fit_table(r: &FitResult, form: Form, frozen: bool) -> Table {
    let names: &[&str] = match (form, frozen) {
        (Form::Power, false) => &["b", "c", "s"],
        _ => &["b", "c"],
    };
    let mut t = Table::new(&["param", "value", "stderr"]);
    for (k, name) in names.iter().enumerate() {
        t.push(vec![(*name).into(), r.params[k].into(), r.stderr[k].into()]);
    }
    t.meta = vec![
        ("rss".into(), format_float(r.rss)),
        ("iterations".into(), r.iterations.to_string()),
        ("converged".into(), r.converged.to_string()),
        ("gradient_norm".into(), format_float(r.gradient_norm)),
    ];
    t
}

/// Parse arguments, run, write the output and return the exit status:
/// 0 on success, 1 when some rows failed, 2 on a fatal error.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.common.out {
        Some(p) => File::create(p).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.write(cli.common.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            outcome.write(cli.common.format, &mut w)
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    for f in &outcome.failures {
        eprintln!("failed: {f}");
    }
    i32::from(!outcome.failures.is_empty())
}
