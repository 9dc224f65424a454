//! Scans over `n` of the Fibonacci-shifted root sets, and critical points
//! of `f_n` for the extrema question.

use rayon::prelude::*;

use super::fib_shift_poly;
use super::mp::{self, Real};
use super::roots::{find_roots, real_tolerance};
use crate::charpoly::charpoly_closed_form;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub n: u64,
    pub real_root_count: usize,
    /// Smallest real root, if any root is real.
    pub min_real_root: Option<Real>,
    pub max_abs_imag: Real,
    pub min_separation: f64,
    /// Conjecture clauses this `n` breaks (empty when consistent).
    pub violations: Vec<String>,
    precision_bits: usize,
}

impl ScanRow {
    pub fn min_real_root_f64(&self) -> Option<f64> {
        self.min_real_root.as_ref().map(mp::to_f64)
    }

    pub fn max_abs_imag_f64(&self) -> f64 {
        mp::to_f64(&self.max_abs_imag)
    }

    /// `max |Im| < 1` with a margin larger than the classification tolerance.
    pub fn imag_strictly_below_one(&self) -> bool {
        1.0 - self.max_abs_imag_f64() > real_tolerance(self.precision_bits)
            && self.max_abs_imag < mp::f64_to_real(1.0, self.precision_bits)
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub precision_bits: usize,
    pub rows: Vec<ScanRow>,
    /// Minimum real root never increases from one `n` to the next.
    pub min_real_nonincreasing: bool,
}

impl ScanReport {
    pub fn violating_ns(&self) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| !r.violations.is_empty())
            .map(|r| r.n)
            .collect()
    }

    pub fn has_violations(&self) -> bool {
        !self.min_real_nonincreasing || self.rows.iter().any(|r| !r.violations.is_empty())
    }
}

fn scan_one(n: u64, precision_bits: usize) -> Result<ScanRow> {
    let poly = fib_shift_poly(n)?;
    let rs = find_roots(&poly, precision_bits)?;
    let tol = real_tolerance(precision_bits);
    let reals = rs.real_roots();
    let min_real_root = reals
        .iter()
        .min_by(|a, b| a.partial_cmp(b).unwrap())
        .cloned();
    let max_abs_imag = rs
        .roots
        .iter()
        .map(|z| mp::abs(&z.im))
        .max_by(|a, b| a.partial_cmp(b).unwrap())
        .unwrap();
    let min_separation = rs.min_separation();

    let mut violations = Vec::new();
    if n.is_multiple_of(2) {
        if reals.len() != 2 {
            violations.push(format!(
                "even n expects 2 real roots, found {}",
                reals.len()
            ));
        }
    } else {
        if reals.len() != 1 {
            violations.push(format!("odd n expects 1 real root, found {}", reals.len()));
        }
        if reals.iter().any(|r| *r >= mp::zero(precision_bits)) {
            violations.push("odd n expects its real root to be negative".to_string());
        }
    }
    if mp::to_f64(&max_abs_imag) > 1.0 + tol {
        violations.push(format!(
            "imaginary parts exceed 1: max |Im| = {}",
            mp::to_f64(&max_abs_imag)
        ));
    }
    if n >= 2 && !(min_separation > tol) {
        violations.push(format!(
            "roots are not distinct (separation {min_separation:e})"
        ));
    }
    Ok(ScanRow {
        n,
        real_root_count: reals.len(),
        min_real_root,
        max_abs_imag,
        min_separation,
        violations,
        precision_bits,
    })
}

/// Root statistics of `f_n(λ) − F_{n+1}` for every `n` in `n_lo..=n_hi`.
///
/// Each `n` is independent and runs on the rayon pool; rows come back in
/// ascending `n`.
pub fn conjecture_scan(n_lo: u64, n_hi: u64, precision_bits: usize) -> Result<ScanReport> {
    if n_lo == 0 || n_lo > n_hi {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= from <= to, got {n_lo}..={n_hi}"
        )));
    }
    let rows = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            scan_one(n, precision_bits).map_err(|e| Error::ScanFailed {
                n,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mins: Vec<Option<Real>> = rows.iter().map(|r| r.min_real_root.clone()).collect();
    let min_real_nonincreasing = mins.windows(2).all(|w| match (&w[0], &w[1]) {
        (Some(a), Some(b)) => b <= a,
        _ => false,
    });
    Ok(ScanReport {
        precision_bits,
        rows,
        min_real_nonincreasing,
    })
}

/// A real critical point of `f_n` and the value there.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub lambda: Real,
    pub value: Real,
}

impl CriticalPoint {
    pub fn to_f64(&self) -> (f64, f64) {
        (mp::to_f64(&self.lambda), mp::to_f64(&self.value))
    }
}

/// Real roots of `f_n'`, ascending, each paired with `f_n` evaluated there.
pub fn local_extrema(n: u64, precision_bits: usize) -> Result<Vec<CriticalPoint>> {
    if n < 2 {
        return Err(Error::InvalidIndex(format!("extrema need n >= 2, got {n}")));
    }
    let f = charpoly_closed_form(n)?.poly;
    let rs = find_roots(&f.derivative(), precision_bits)?;
    let exact_coeffs: Vec<Real> = f.coeffs().iter().map(mp::exact_int).collect();
    let points = rs
        .real_roots()
        .into_iter()
        .map(|lambda| {
            let value = mp::horner_compensated_real(&exact_coeffs, &lambda, precision_bits);
            CriticalPoint { lambda, value }
        })
        .collect();
    Ok(points)
}
