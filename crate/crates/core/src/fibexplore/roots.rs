//! Simultaneous polynomial root finding by Aberth–Ehrlich iteration.
//!
//! A double-precision pass pulls the starting circle in toward the roots,
//! then the iteration is continued at the working precision with
//! compensated Horner evaluation until every correction is below
//! `2^{−p+8}` relative to `max(|z|, 1)`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::mp::{self, MpComplex, Real};
use crate::error::{Error, Result};
use crate::polycore::IntPoly;

pub const DEFAULT_PRECISION_BITS: usize = 256;
pub const MAX_ITERATIONS: usize = 2000;
const F64_PASS_ITERATIONS: usize = 1000;

/// All complex roots of a polynomial at extended precision.
#[derive(Clone, Debug)]
pub struct RootSet {
    /// Degree of the polynomial.
    pub n: usize,
    pub precision_bits: usize,
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<MpComplex>,
    /// `|p(root)|`, evaluated with compensated Horner.
    pub residuals: Vec<Real>,
    /// Working-precision iterations used.
    pub iterations: usize,
    max_abs_coeff: f64,
}

impl RootSet {
    /// `2^{−p/4}`: imaginary parts below this count as zero.
    pub fn real_tolerance(&self) -> f64 {
        real_tolerance(self.precision_bits)
    }

    pub fn roots_f64(&self) -> Vec<(f64, f64)> {
        self.roots.iter().map(MpComplex::to_f64).collect()
    }

    pub fn residuals_f64(&self) -> Vec<f64> {
        self.residuals.iter().map(mp::to_f64).collect()
    }

    pub fn is_real(&self, idx: usize) -> bool {
        mp::to_f64(&mp::abs(&self.roots[idx].im)) < self.real_tolerance()
    }

    /// Real parts of the roots classified as real, ascending.
    pub fn real_roots(&self) -> Vec<Real> {
        (0..self.roots.len())
            .filter(|&i| self.is_real(i))
            .map(|i| self.roots[i].re.clone())
            .collect()
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.roots
            .iter()
            .map(|z| mp::to_f64(&mp::abs(&z.im)))
            .fold(0.0, f64::max)
    }

    /// The root with the largest imaginary part.
    pub fn top_root(&self) -> &MpComplex {
        self.roots
            .iter()
            .max_by(|a, b| a.im.partial_cmp(&b.im).unwrap())
            .expect("non-empty root set")
    }

    /// Smallest distance between two distinct roots (in `f64`).
    pub fn min_separation(&self) -> f64 {
        let pts = self.roots_f64();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.min((pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1));
            }
        }
        best
    }

    /// Checks root count, conjugate closure and the residual bound.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.roots.len() != self.n || self.residuals.len() != self.n {
            return Err(format!(
                "expected {} roots, got {}",
                self.n,
                self.roots.len()
            ));
        }
        let p = self.precision_bits as i32;
        let conj_tol = 2f64.powi(-p / 2);
        for (i, z) in self.roots.iter().enumerate() {
            if self.is_real(i) {
                continue;
            }
            let c = z.conj();
            let scale = mp::to_f64(&z.abs()).max(1.0);
            let found = self
                .roots
                .iter()
                .any(|w| mp::to_f64(&w.sub(&c).abs()) <= conj_tol * scale);
            if !found {
                return Err(format!("root {z:?} has no conjugate partner"));
            }
        }
        let bound = 2f64.powi(-p / 4) * self.max_abs_coeff;
        if let Some((i, r)) = self
            .residuals_f64()
            .into_iter()
            .enumerate()
            .find(|(_, r)| !(*r < bound))
        {
            return Err(format!("residual {r:e} of root {i} exceeds {bound:e}"));
        }
        Ok(())
    }
}

pub fn real_tolerance(precision_bits: usize) -> f64 {
    2f64.powi(-(precision_bits as i32) / 4)
}

/// `log2 |c|` without overflowing `f64`.
fn log2_abs(c: &BigInt) -> f64 {
    let bits = c.bits();
    if bits <= 1000 {
        return crate::polycore::bigint_to_f64(&c.abs()).log2();
    }
    let shift = bits - 64;
    let top: BigInt = c.abs() >> shift;
    crate::polycore::bigint_to_f64(&top).log2() + shift as f64
}

/// Fujiwara bound: every root satisfies
/// `|z| ≤ 2·max(|c_{n−1}/c_n|, |c_{n−2}/c_n|^{1/2}, …, |c_0/(2c_n)|^{1/n})`.
fn fujiwara_radius(coeffs: &[BigInt]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = log2_abs(&coeffs[n]);
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        let c = &coeffs[n - k];
        if c.is_zero() {
            continue;
        }
        let mut l = log2_abs(c) - lead;
        if k == n {
            l -= 1.0;
        }
        best = best.max(l / k as f64);
    }
    if best == f64::NEG_INFINITY {
        // p = c·λ^n: every root is zero; any small circle will do.
        return 1.0;
    }
    2.0 * best.exp2()
}

fn initial_guesses(coeffs: &[BigInt]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = fujiwara_radius(coeffs);
    // Off-axis phase so that no starting point is real or conjugate to another.
    (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect()
}

/// Newton quotient `p(z)/p'(z)` in `f64`, evaluated through the reversed
/// polynomial when `|z| > 1` so that large arguments cannot overflow.
fn newton_quotient_f64(c: &[f64], z: Complex64) -> Complex64 {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &ck in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + ck;
        }
        p / dp
    } else {
        // p(z) = z^n q(w), q(w) = Σ c_k w^{n−k}, w = 1/z
        let w = z.inv();
        let (mut q, mut dq) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &ck in c {
            dq = dq * w + q;
            q = q * w + ck;
        }
        z / (n as f64 - w * dq / q)
    }
}

/// Coefficients scaled by a power of two into `f64` range, or `None` if the
/// spread is too wide for a double-precision pass to be meaningful.
fn scaled_f64_coeffs(coeffs: &[BigInt]) -> Option<Vec<f64>> {
    let top = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(log2_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    let shift = (top - 900.0).max(0.0).ceil() as u64;
    let out: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            if shift == 0 {
                crate::polycore::bigint_to_f64(c)
            } else {
                crate::polycore::bigint_to_f64(&(c >> shift))
            }
        })
        .collect();
    (out.iter().all(|x| x.is_finite()) && *out.last().unwrap() != 0.0).then_some(out)
}

fn aberth_f64(c: &[f64], z: &mut [Complex64]) {
    let n = z.len();
    let mut done = vec![false; n];
    let mut last = vec![f64::INFINITY; n];
    for _ in 0..F64_PASS_ITERATIONS {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ratio = newton_quotient_f64(c, z[i]);
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                // leave it for the extended-precision stage
                done[i] = true;
                continue;
            }
            z[i] -= w;
            let step = w.norm() / z[i].norm().max(1.0);
            // stalled at the rounding floor of f64 evaluation
            let stalled = step <= 1e-6 && step >= 0.5 * last[i];
            last[i] = step;
            if step <= 1e-14 || stalled {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
}

/// All `deg(p)` complex roots of `p` at `precision_bits` bits.
pub fn find_roots(p: &IntPoly, precision_bits: usize) -> Result<RootSet> {
    find_roots_with_cap(p, precision_bits, MAX_ITERATIONS)
}

pub fn find_roots_with_cap(
    p: &IntPoly,
    precision_bits: usize,
    max_iterations: usize,
) -> Result<RootSet> {
    let degree = p.degree().unwrap_or(0);
    if degree == 0 {
        return Err(Error::DegreeTooLow(degree));
    }
    if precision_bits < 53 {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least 53 bits, got {precision_bits}"
        )));
    }
    let prec = precision_bits;
    let coeffs = p.coeffs();
    let max_abs_coeff = coeffs
        .iter()
        .map(log2_abs)
        .fold(f64::NEG_INFINITY, f64::max)
        .exp2();

    let mut start = initial_guesses(coeffs);
    if let Some(c) = scaled_f64_coeffs(coeffs) {
        let before = start.clone();
        aberth_f64(&c, &mut start);
        if start.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            start = before;
        }
    }

    let exact_coeffs: Vec<Real> = coeffs.iter().map(mp::exact_int).collect();
    let deriv: Vec<Real> = p
        .derivative()
        .coeffs()
        .iter()
        .map(|c| mp::int_to_real(c, prec))
        .collect();
    let mut z: Vec<MpComplex> = start
        .iter()
        .map(|w| MpComplex::from_f64(w.re, w.im, prec))
        .collect();

    let one = MpComplex::from_f64(1.0, 0.0, prec);
    let unit = mp::f64_to_real(1.0, prec);
    let stop = mp::pow2(-(prec as isize) + 8, prec);
    let stop_sq = &stop * &stop;
    let mut done = vec![false; degree];
    let mut iterations = 0;
    while iterations < max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let value = mp::horner_compensated(&exact_coeffs, &z[i], prec);
            if value.is_zero() {
                done[i] = true;
                continue;
            }
            let slope = mp::horner(&deriv, &z[i]);
            let ratio = value.div(&slope);
            let mut sum = MpComplex::zero(prec);
            for j in 0..degree {
                if j != i {
                    sum = sum.add(&z[i].sub(&z[j]).recip());
                }
            }
            let w = ratio.div(&one.sub(&ratio.mul(&sum)));
            z[i] = z[i].sub(&w);
            let mag = z[i].norm_sqr();
            let scale = if mag > unit { mag } else { unit.clone() };
            if w.norm_sqr() <= &stop_sq * &scale {
                done[i] = true;
            }
        }
    }

    let residuals: Vec<Real> = z
        .iter()
        .map(|r| mp::horner_compensated(&exact_coeffs, r, prec).abs())
        .collect();
    if done.iter().any(|d| !d) {
        let residuals: Vec<f64> = residuals.iter().map(mp::to_f64).collect();
        return Err(Error::NonConvergence {
            iterations,
            max_residual: residuals.iter().copied().fold(0.0, f64::max),
            residuals,
        });
    }

    let mut paired: Vec<(MpComplex, Real)> = z.into_iter().zip(residuals).collect();
    paired.sort_by(|a, b| a.0.lex_cmp(&b.0));
    let (roots, residuals) = paired.into_iter().unzip();
    Ok(RootSet {
        n: degree,
        precision_bits,
        roots,
        residuals,
        iterations,
        max_abs_coeff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let rs = find_roots(&IntPoly::from_i64s(&[-1, 0, 1]), 128).unwrap();
        let pts = rs.roots_f64();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].0 + 1.0).abs() < 1e-30 && pts[0].1.abs() < 1e-30);
        assert!((pts[1].0 - 1.0).abs() < 1e-30 && pts[1].1.abs() < 1e-30);
        rs.check_invariants().unwrap();
        assert_eq!(rs.real_roots().len(), 2);
    }

    #[test]
    fn complex_pair_and_zero_root() {
        // λ(λ² + 1)
        let rs = find_roots(&IntPoly::from_i64s(&[0, 1, 0, 1]), 128).unwrap();
        rs.check_invariants().unwrap();
        let pts = rs.roots_f64();
        assert!(pts
            .iter()
            .any(|&(re, im)| re.abs() < 1e-30 && (im - 1.0).abs() < 1e-30));
        assert!(pts
            .iter()
            .any(|&(re, im)| re.abs() < 1e-30 && (im + 1.0).abs() < 1e-30));
        assert!(pts
            .iter()
            .any(|&(re, im)| re.abs() < 1e-30 && im.abs() < 1e-30));
        assert_eq!(rs.real_roots().len(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            find_roots(&IntPoly::constant(3), 128).unwrap_err(),
            Error::DegreeTooLow(0)
        );
        assert!(find_roots(&IntPoly::from_i64s(&[1, 1]), 32).is_err());
    }

    #[test]
    fn non_convergence_reports_residuals() {
        let p = IntPoly::from_i64s(&[3, -7, 0, 2, 0, 0, 1]);
        match find_roots_with_cap(&p, 256, 0) {
            Err(Error::NonConvergence {
                residuals,
                iterations,
                ..
            }) => {
                assert_eq!(residuals.len(), 6);
                assert_eq!(iterations, 0);
            }
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn huge_coefficients_survive_f64_range() {
        // (λ − 1)(λ + 2)·10^400 has coefficients far outside f64 range
        let scale: BigInt = BigInt::from(10).pow(400);
        let p = IntPoly::from_i64s(&[-2, 1, 1]).scale(&scale);
        let rs = find_roots(&p, 128).unwrap();
        let pts = rs.roots_f64();
        assert!((pts[0].0 + 2.0).abs() < 1e-30 && (pts[1].0 - 1.0).abs() < 1e-30);
    }

    #[test]
    fn fujiwara_bounds_roots() {
        let p = IntPoly::from_i64s(&[-6, 11, -6, 1]); // roots 1, 2, 3
        assert!(fujiwara_radius(p.coeffs()) >= 3.0);
    }
}
