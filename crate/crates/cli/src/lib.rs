//! The `tridiag` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 argument error,
//! 3 containment condition not met, 4 root iteration did not converge.

pub mod svg;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use tridiag::charpoly::{
    charpoly_closed_form, charpoly_det_oracle, charpoly_recurrence, wrong_parity_index,
    CharPolyRecord, DET_ORACLE_MAX_N,
};
use tridiag::chebyshev::{chebyshev_s, chebyshev_u, halve_variable, reflect};
use tridiag::fibexplore::mp::shortest_decimal;
use tridiag::fibexplore::{
    conjecture_scan, ellipse_fit, fib_shift_poly, find_roots, local_extrema, perturbed_f29,
    DEFAULT_ELLIPSE_TOL,
};
use tridiag::spectrum::{containment_certificate, eigenvalues_closed_form};
use tridiag::{Error, IntPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONTAINED: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "tridiag",
    version,
    about = "Characteristic polynomials, spectra and root sets of the path-graph matrices A_n"
)]
#[command(propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the characteristic polynomial f_n = det(A_n - λI).
    Charpoly {
        n: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
        method: MethodArg,
        /// Use λ instead of x as the variable.
        #[arg(long)]
        unicode: bool,
    },
    /// Cross-check the three constructions, parity and the Chebyshev identities.
    Verify {
        #[arg(long, default_value_t = 200)]
        max_n: u64,
        #[arg(long, default_value_t = 12)]
        oracle_max: u64,
        /// Flip the sign of one closed-form coefficient of f_N before checking.
        #[arg(long, value_name = "N", hide = true)]
        inject_fault: Option<u64>,
    },
    /// Eigenvalues of A_n, descending.
    Eigs {
        n: u64,
        #[arg(long, default_value_t = 5)]
        digits: usize,
        /// Write CSV to PATH (stdout if PATH is omitted or "-").
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<String>,
    },
    /// Certify spec(A_m) ⊂ spec(A_n), or report why the condition fails.
    Contain { m: u64, n: u64 },
    /// Complex roots of f_n(λ) - F_{n+1}.
    FibRoots {
        n: u64,
        #[arg(long, env = "TRIDIAG_PRECISION_BITS", default_value_t = 256)]
        precision: usize,
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<String>,
        #[arg(long, value_name = "PATH")]
        svg: Option<String>,
        /// Fit a conic through the roots and report it.
        #[arg(long)]
        ellipse: bool,
        /// Use f_29 with the λ^25 coefficient changed from -351 to -350 (n must be 29).
        #[arg(long)]
        perturbed: bool,
    },
    /// Check the root-count and imaginary-part conjecture over a range of n.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, env = "TRIDIAG_PRECISION_BITS", default_value_t = 256)]
        precision: usize,
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<String>,
    },
    /// Real critical points of f_n and the values of f_n there.
    Extrema {
        n: u64,
        #[arg(long, env = "TRIDIAG_PRECISION_BITS", default_value_t = 256)]
        precision: usize,
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<String>,
        #[arg(long, value_name = "PATH")]
        svg: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recurrence,
    Closed,
    Oracle,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn verify(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotSufficient { .. } => EXIT_NOT_CONTAINED,
            Error::NonConvergence { .. } => EXIT_NO_CONVERGENCE,
            Error::ScanFailed { source, .. }
                if matches!(**source, Error::NonConvergence { .. }) =>
            {
                EXIT_NO_CONVERGENCE
            }
            Error::NonIntegralInterpolation { .. } | Error::IntegralityViolation { .. } => {
                EXIT_VERIFY
            }
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::usage(format!("i/o error: {e}"))
    }
}

type CliResult = std::result::Result<(), CliError>;

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Charpoly { n, method, unicode } => cmd_charpoly(n, method, unicode, out),
        Command::Verify {
            max_n,
            oracle_max,
            inject_fault,
        } => cmd_verify(max_n, oracle_max, inject_fault, out),
        Command::Eigs { n, digits, csv } => cmd_eigs(n, digits, csv.as_deref(), out),
        Command::Contain { m, n } => cmd_contain(m, n, out),
        Command::FibRoots {
            n,
            precision,
            csv,
            svg,
            ellipse,
            perturbed,
        } => cmd_fib_roots(
            n,
            precision,
            csv.as_deref(),
            svg.as_deref(),
            ellipse,
            perturbed,
            out,
            err,
        ),
        Command::Scan {
            from,
            to,
            precision,
            csv,
        } => cmd_scan(from, to, precision, csv.as_deref(), out),
        Command::Extrema {
            n,
            precision,
            csv,
            svg,
        } => cmd_extrema(n, precision, csv.as_deref(), svg.as_deref(), out),
    }
}

fn require_index(name: &str, v: u64) -> CliResult {
    if v == 0 {
        return Err(CliError::usage(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn require_precision(bits: usize) -> CliResult {
    if bits < 53 {
        return Err(CliError::usage(format!(
            "--precision must be at least 53, got {bits}"
        )));
    }
    Ok(())
}

/// Writes `text` to stdout when `path` is "-", otherwise to the file.
fn emit(path: &str, text: &str, out: &mut dyn Write) -> CliResult {
    if path == "-" {
        out.write_all(text.as_bytes())?;
    } else {
        fs::write(path, text)?;
    }
    Ok(())
}

pub fn cmd_charpoly(n: u64, method: MethodArg, unicode: bool, out: &mut dyn Write) -> CliResult {
    require_index("n", n)?;
    let record = match method {
        MethodArg::Recurrence => charpoly_recurrence(n)?,
        MethodArg::Closed => charpoly_closed_form(n)?,
        MethodArg::Oracle => {
            if n > DET_ORACLE_MAX_N {
                return Err(CliError::usage(format!(
                    "the determinant oracle is limited to n <= {DET_ORACLE_MAX_N}, got {n}"
                )));
            }
            charpoly_det_oracle(n, n as usize + 1)?
        }
    };
    writeln!(
        out,
        "{}",
        record.poly.render(if unicode { "λ" } else { "x" })
    )?;
    Ok(())
}

fn first_difference(a: &IntPoly, b: &IntPoly) -> Option<usize> {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).find(|&k| a.coeff(k) != b.coeff(k))
}

fn closed_form_checked(n: u64, inject_fault: Option<u64>) -> tridiag::Result<CharPolyRecord> {
    let mut rec = charpoly_closed_form(n)?;
    if inject_fault == Some(n) {
        let k = n as usize;
        rec.poly = rec.poly.with_coeff(k, -rec.poly.coeff(k));
    }
    Ok(rec)
}

pub fn cmd_verify(
    max_n: u64,
    oracle_max: u64,
    inject_fault: Option<u64>,
    out: &mut dyn Write,
) -> CliResult {
    require_index("--max-n", max_n)?;
    if oracle_max > DET_ORACLE_MAX_N {
        return Err(CliError::usage(format!(
            "--oracle-max is limited to {DET_ORACLE_MAX_N}, got {oracle_max}"
        )));
    }
    let oracle_max = oracle_max.min(max_n);

    let mut recurrence_ok = 0;
    let mut parity_ok = 0;
    for n in 1..=max_n {
        let rec = charpoly_recurrence(n)?;
        let closed = closed_form_checked(n, inject_fault)?;
        if let Some(k) = first_difference(&rec.poly, &closed.poly) {
            return Err(CliError::verify(format!(
                "n={n}: recurrence and closed form differ at coefficient {k} ({} vs {})",
                rec.poly.coeff(k),
                closed.poly.coeff(k)
            )));
        }
        recurrence_ok += 1;
        if let Some(k) = wrong_parity_index(&closed.poly, n as usize) {
            return Err(CliError::verify(format!(
                "n={n}: coefficient {k} has the wrong parity"
            )));
        }
        if let Err(e) = closed.check_structure() {
            return Err(CliError::verify(format!("n={n}: {e}")));
        }
        parity_ok += 1;
    }
    writeln!(out, "recurrence == closed form: {recurrence_ok}/{max_n}")?;
    writeln!(out, "parity and structure:      {parity_ok}/{max_n}")?;

    let mut oracle_ok = 0;
    for n in 1..=oracle_max {
        let oracle = charpoly_det_oracle(n, n as usize + 1)?;
        let closed = closed_form_checked(n, inject_fault)?;
        if let Some(k) = first_difference(&oracle.poly, &closed.poly) {
            return Err(CliError::verify(format!(
                "n={n}: determinant oracle and closed form differ at coefficient {k}"
            )));
        }
        oracle_ok += 1;
    }
    writeln!(out, "determinant oracle:        {oracle_ok}/{oracle_max}")?;

    let mut chain_ok = 0;
    for n in 0..=max_n {
        let s = chebyshev_s(n);
        if halve_variable(&chebyshev_u(n))? != s {
            return Err(CliError::verify(format!("n={n}: U_n(x/2) != S_n(x)")));
        }
        if n >= 1 && reflect(&s) != closed_form_checked(n, inject_fault)?.poly {
            return Err(CliError::verify(format!("n={n}: S_n(-λ) != f_n(λ)")));
        }
        chain_ok += 1;
    }
    writeln!(out, "chebyshev identities:      {chain_ok}/{}", max_n + 1)?;
    writeln!(out, "all checks passed")?;
    Ok(())
}

/// Fixed-point decimal with `digits` places, without a sign on zero.
fn fixed(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn cmd_eigs(n: u64, digits: usize, csv: Option<&str>, out: &mut dyn Write) -> CliResult {
    require_index("n", n)?;
    if digits == 0 {
        return Err(CliError::usage("--digits must be at least 1"));
    }
    let set = eigenvalues_closed_form(n)?;
    if let Some(path) = csv {
        let mut text = String::from("s,angle_num,angle_den,value\n");
        for (s, angle, value) in set.iter() {
            let (num, den) = angle.reduced();
            text.push_str(&format!("{s},{num},{den},{:?}\n", value + 0.0));
        }
        emit(path, &text, out)?;
        if path == "-" {
            return Ok(());
        }
    }
    writeln!(out, "{:>6}  {:>12}  value", "s", "angle/π")?;
    for (s, angle, value) in set.iter() {
        let (num, den) = angle.reduced();
        writeln!(
            out,
            "{s:>6}  {:>12}  {}",
            format!("{num}/{den}"),
            fixed(value, digits)
        )?;
    }
    Ok(())
}

pub fn cmd_contain(m: u64, n: u64, out: &mut dyn Write) -> CliResult {
    require_index("m", m)?;
    require_index("n", n)?;
    match containment_certificate(m, n) {
        Ok(cert) => {
            writeln!(out, "spec(A_{m}) is contained in spec(A_{n})")?;
            writeln!(out, "k={}", cert.k)?;
            let map: Vec<String> = cert
                .index_map
                .iter()
                .map(|(r, s)| format!("{r}->{s}"))
                .collect();
            writeln!(out, "map {}", map.join(" "))?;
            Ok(())
        }
        Err(Error::NotSufficient { remainder, .. }) if n > m => Err(CliError {
            code: EXIT_NOT_CONTAINED,
            message: format!("condition not met: (n-m) mod (m+1) = {remainder}"),
        }),
        Err(Error::NotSufficient { .. }) => Err(CliError {
            code: EXIT_NOT_CONTAINED,
            message: format!("condition not met: need m < n, got m={m}, n={n}"),
        }),
        Err(e) => Err(e.into()),
    }
}

/// `a ± bi` with 17 significant digits per part.
fn complex_text(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{:>24.16e} {sign} {:.16e}i", re, im.abs())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_fib_roots(
    n: u64,
    precision: usize,
    csv: Option<&str>,
    svg_path: Option<&str>,
    ellipse: bool,
    perturbed: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    require_index("n", n)?;
    require_precision(precision)?;
    if perturbed && n != 29 {
        return Err(CliError::usage("--perturbed only applies to n = 29"));
    }
    let poly = if perturbed {
        perturbed_f29()
    } else {
        fib_shift_poly(n)?
    };
    let rs = find_roots(&poly, precision)?;
    let points = rs.roots_f64();
    let csv_on_stdout = csv == Some("-");

    if let Some(path) = csv {
        let mut text = String::from("re,im,residual\n");
        for (z, r) in rs.roots.iter().zip(&rs.residuals) {
            text.push_str(&format!(
                "{},{},{}\n",
                shortest_decimal(&z.re, precision),
                shortest_decimal(&z.im, precision),
                shortest_decimal(r, precision)
            ));
        }
        emit(path, &text, out)?;
    }
    if let Some(path) = svg_path {
        let title = if perturbed {
            "roots of perturbed f_29(λ) - F_30".to_string()
        } else {
            format!("roots of f_{n}(λ) - F_{}", n + 1)
        };
        fs::write(path, svg::scatter(&points, &title))?;
    }

    // With CSV on stdout, the human-readable summary goes to stderr.
    let report: &mut dyn Write = if csv_on_stdout { err } else { out };
    if !csv_on_stdout {
        for &(re, im) in &points {
            writeln!(report, "{}", complex_text(re, im))?;
        }
    }
    writeln!(
        report,
        "n={n}{} precision={precision} roots={} real={} max|Im|={:.12}",
        if perturbed { " (perturbed)" } else { "" },
        rs.roots.len(),
        rs.real_roots().len(),
        rs.max_abs_imag()
    )?;
    if ellipse {
        let fit = ellipse_fit(&points)?;
        let [a, b, c, d, e, f] = fit.conic.as_array();
        writeln!(
            report,
            "conic A={a:e} B={b:e} C={c:e} D={d:e} E={e:e} F={f:e}"
        )?;
        writeln!(report, "discriminant={:e}", fit.discriminant)?;
        writeln!(report, "rms_residual={:e}", fit.rms_residual)?;
        let class = if fit.is_ellipse(DEFAULT_ELLIPSE_TOL) {
            "ellipse"
        } else {
            "not ellipse"
        };
        writeln!(
            report,
            "classification={class} (tolerance {DEFAULT_ELLIPSE_TOL:e})"
        )?;
    }
    Ok(())
}

pub fn cmd_scan(
    from: u64,
    to: u64,
    precision: usize,
    csv: Option<&str>,
    out: &mut dyn Write,
) -> CliResult {
    require_index("--from", from)?;
    require_precision(precision)?;
    if from > to {
        return Err(CliError::usage(format!("--from {from} is after --to {to}")));
    }
    let report = conjecture_scan(from, to, precision)?;
    let min_real = |row: &tridiag::fibexplore::ScanRow| {
        row.min_real_root
            .as_ref()
            .map(|r| shortest_decimal(r, precision))
            .unwrap_or_default()
    };
    if let Some(path) = csv {
        let mut text = String::from("n,real_root_count,min_real_root,max_abs_imag\n");
        for row in &report.rows {
            text.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                row.real_root_count,
                min_real(row),
                shortest_decimal(&row.max_abs_imag, precision)
            ));
        }
        emit(path, &text, out)?;
        if path == "-" {
            return Ok(());
        }
    }
    writeln!(
        out,
        "{:>6} {:>6} {:>22} {:>18}",
        "n", "real", "min_real_root", "max_abs_imag"
    )?;
    for row in &report.rows {
        let min = row
            .min_real_root_f64()
            .map(|v| format!("{v:.15}"))
            .unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{:>6} {:>6} {:>22} {:>18.15}",
            row.n,
            row.real_root_count,
            min,
            row.max_abs_imag_f64()
        )?;
        for v in &row.violations {
            writeln!(out, "       violation: {v}")?;
        }
    }
    let at_one: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.imag_strictly_below_one())
        .map(|r| r.n.to_string())
        .collect();
    if !at_one.is_empty() {
        writeln!(out, "max |Im| reaches 1 at n = {}", at_one.join(", "))?;
    }
    if !report.min_real_nonincreasing {
        writeln!(
            out,
            "violation: minimum real root increases somewhere in the range"
        )?;
    }
    let bad = report.violating_ns();
    if bad.is_empty() && report.min_real_nonincreasing {
        writeln!(out, "violations: none")?;
    } else {
        let list: Vec<String> = bad.iter().map(u64::to_string).collect();
        writeln!(
            out,
            "violations at n = {}",
            if list.is_empty() {
                "-".into()
            } else {
                list.join(", ")
            }
        )?;
    }
    Ok(())
}

pub fn cmd_extrema(
    n: u64,
    precision: usize,
    csv: Option<&str>,
    svg_path: Option<&str>,
    out: &mut dyn Write,
) -> CliResult {
    require_precision(precision)?;
    if n < 2 {
        return Err(CliError::usage(format!("extrema need n >= 2, got {n}")));
    }
    let points = local_extrema(n, precision)?;
    if let Some(path) = svg_path {
        let xy: Vec<(f64, f64)> = points.iter().map(|p| p.to_f64()).collect();
        fs::write(
            path,
            svg::scatter(&xy, &format!("critical points of f_{n}")),
        )?;
    }
    if let Some(path) = csv {
        let mut text = String::from("lambda,f_value\n");
        for p in &points {
            text.push_str(&format!(
                "{},{}\n",
                shortest_decimal(&p.lambda, precision),
                shortest_decimal(&p.value, precision)
            ));
        }
        emit(path, &text, out)?;
        if path == "-" {
            return Ok(());
        }
    }
    writeln!(out, "{:>24} {:>24}", "lambda", "f_value")?;
    for p in &points {
        let (x, y) = p.to_f64();
        writeln!(out, "{:>24.16e} {:>24.16e}", x + 0.0, y + 0.0)?;
    }
    Ok(())
}
