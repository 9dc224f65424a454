//! Closed-form spectra of `A_n`, spectral-radius and Golub interval bounds,
//! and exact certificates for `spec(A_m) ⊂ spec(A_n)`.
//!
//! Eigenvalues carry their exact angle `s/(n+1)` (in units of π) next to the
//! floating value, so containment is decided by integer arithmetic.

use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Default tolerance for [`containment_search`].
pub const DEFAULT_SEARCH_TOL: f64 = 1e-12;

/// The rational `index/denom`, read as the angle `π·index/denom`.
///
/// Stored unreduced so the eigenvalue index `s` stays visible; equality is
/// by cross-multiplication.
#[derive(Clone, Copy, Debug)]
pub struct Angle {
    pub index: u64,
    pub denom: u64,
}

impl Angle {
    pub fn new(index: u64, denom: u64) -> Self {
        assert!(denom > 0, "angle denominator must be positive");
        Angle { index, denom }
    }

    /// Lowest-terms `(numerator, denominator)`.
    pub fn reduced(&self) -> (u64, u64) {
        let g = self.index.gcd(&self.denom);
        (self.index / g, self.denom / g)
    }

    /// `2·cos(π·index/denom)`, evaluated as `2·sin(π·(denom − 2·index)/(2·denom))`
    /// so that mirrored angles give exactly negated values and the midpoint is exactly 0.
    pub fn eigenvalue(&self) -> f64 {
        let num = self.denom as f64 - 2.0 * self.index as f64;
        2.0 * (PI * num / (2.0 * self.denom as f64)).sin()
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        u128::from(self.index) * u128::from(other.denom)
            == u128::from(other.index) * u128::from(self.denom)
    }
}

impl Eq for Angle {}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.denom)
    }
}

/// Spectrum of `A_n` in descending order: entry `s−1` is `λ_s = 2cos(sπ/(n+1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueSet {
    pub n: u64,
    pub angles: Vec<Angle>,
    pub values: Vec<f64>,
}

impl EigenvalueSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Iterates `(s, angle, value)` with `s` starting at 1.
    pub fn iter(&self) -> impl Iterator<Item = (u64, Angle, f64)> + '_ {
        self.angles
            .iter()
            .zip(&self.values)
            .map(|(a, &v)| (a.index, *a, v))
    }

    /// Distance from `x` to the nearest eigenvalue.
    pub fn distance_to(&self, x: f64) -> f64 {
        // values are descending; partition_point finds the first value < x
        let idx = self.values.partition_point(|&v| v >= x);
        let mut best = f64::INFINITY;
        if idx > 0 {
            best = best.min((self.values[idx - 1] - x).abs());
        }
        if idx < self.values.len() {
            best = best.min((self.values[idx] - x).abs());
        }
        best
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidIndex("n must be at least 1".to_string()))
    } else {
        Ok(())
    }
}

pub fn eigenvalues_closed_form(n: u64) -> Result<EigenvalueSet> {
    require_positive(n)?;
    let angles: Vec<Angle> = (1..=n).map(|s| Angle::new(s, n + 1)).collect();
    let values: Vec<f64> = angles.iter().map(Angle::eigenvalue).collect();
    // A_n has n distinct eigenvalues; anything else is a numerical bug.
    assert!(
        values.windows(2).all(|w| w[0] > w[1]),
        "closed-form eigenvalues of A_{n} are not strictly decreasing"
    );
    Ok(EigenvalueSet { n, angles, values })
}

/// `ρ(A_n) = 2cos(π/(n+1))`, always below 2.
pub fn spectral_radius(n: u64) -> Result<f64> {
    require_positive(n)?;
    Ok(Angle::new(1, n + 1).eigenvalue())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Golub's interval `[a_k − σ_k, a_k + σ_k]` for `A_n`, which holds at least one eigenvalue.
///
/// With zero diagonal and unit off-diagonals, `σ_k` is 1 at the two ends and
/// `√2` in the interior.
pub fn golub_interval(n: u64, k: u64) -> Result<Interval> {
    require_positive(n)?;
    if k == 0 || k > n {
        return Err(Error::InvalidIndex(format!("k = {k} is outside 1..={n}")));
    }
    let sigma = if k == 1 || k == n { 1.0 } else { 2f64.sqrt() };
    Ok(Interval {
        lo: -sigma,
        hi: sigma,
    })
}

/// `m < n` and `n ≡ m (mod m+1)`.
pub fn containment_sufficient(m: u64, n: u64) -> bool {
    m >= 1 && m < n && (n - m).is_multiple_of(m + 1)
}

/// Witness for `spec(A_m) ⊂ spec(A_n)` when `n = m + (m+1)k`:
/// eigenvalue `r` of `A_m` is eigenvalue `r(k+1)` of `A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentCertificate {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    /// `(r, s)` pairs for `r = 1..=m`.
    pub index_map: Vec<(u64, u64)>,
}

impl ContainmentCertificate {
    /// Re-checks every invariant with exact integer arithmetic.
    pub fn verify(&self) -> bool {
        let (m, n) = (self.m, self.n);
        if !containment_sufficient(m, n) || n - m != (m + 1) * self.k {
            return false;
        }
        if self.index_map.len() as u64 != m {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.index_map.iter().enumerate().all(|(i, &(r, s))| {
            r == i as u64 + 1
                && (1..=n).contains(&s)
                && seen.insert(s)
                && Angle::new(r, m + 1) == Angle::new(s, n + 1)
        })
    }
}

pub fn containment_certificate(m: u64, n: u64) -> Result<ContainmentCertificate> {
    if !containment_sufficient(m, n) {
        let remainder = if m >= 1 && n > m {
            ((n - m) % (m + 1)) as i64
        } else {
            n as i64 - m as i64
        };
        return Err(Error::NotSufficient { m, n, remainder });
    }
    let k = (n - m) / (m + 1);
    let index_map: Vec<(u64, u64)> = (1..=m).map(|r| (r, r * (k + 1))).collect();
    let cert = ContainmentCertificate { m, n, k, index_map };
    debug_assert!(cert.verify());
    Ok(cert)
}

/// Every `n` in `(m, n_max]` for which each eigenvalue of `A_m` lies within
/// `tol` of an eigenvalue of `A_n`. Numerical, so it can see beyond the
/// arithmetic progression the certificate covers.
pub fn containment_search(m: u64, n_max: u64, tol: f64) -> Result<Vec<u64>> {
    require_positive(m)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let small = eigenvalues_closed_form(m)?;
    let mut hits = Vec::new();
    for n in m + 1..=n_max {
        let big = eigenvalues_closed_form(n)?;
        if small.values.iter().all(|&v| big.distance_to(v) <= tol) {
            hits.push(n);
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn small_spectra() {
        let e = eigenvalues_closed_form(2).unwrap();
        assert!(close(e.values[0], 1.0, 1e-15) && close(e.values[1], -1.0, 1e-15));
        let e = eigenvalues_closed_form(3).unwrap();
        let r2 = 2f64.sqrt();
        assert!(close(e.values[0], r2, 1e-15));
        assert_eq!(e.values[1], 0.0);
        assert!(close(e.values[2], -r2, 1e-15));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let e = eigenvalues_closed_form(4).unwrap();
        let want = [phi, 1.0 / phi, -1.0 / phi, -phi];
        for (v, w) in e.values.iter().zip(want) {
            assert!(close(*v, w, 1e-15), "{v} vs {w}");
        }
        assert!(eigenvalues_closed_form(0).is_err());
    }

    #[test]
    fn angle_symmetry_and_zero() {
        for n in 1..=64u64 {
            let e = eigenvalues_closed_form(n).unwrap();
            assert_eq!(e.len() as u64, n);
            for s in 1..=n {
                let a = e.values[(s - 1) as usize];
                let b = e.values[(n - s) as usize];
                assert_eq!(a, -b, "n={n} s={s}");
                assert!(a.abs() < 2.0);
            }
            let zeros = e.values.iter().filter(|&&v| v == 0.0).count();
            assert_eq!(zeros, (n % 2) as usize, "n={n}");
        }
    }

    #[test]
    fn angles_compare_exactly() {
        assert_eq!(Angle::new(1, 5), Angle::new(2, 10));
        assert_ne!(Angle::new(1, 5), Angle::new(2, 11));
        assert_eq!(Angle::new(4, 10).reduced(), (2, 5));
    }

    #[test]
    fn radius_examples() {
        assert!(close(spectral_radius(1).unwrap(), 0.0, 1e-15));
        assert!(close(
            spectral_radius(4).unwrap(),
            (1.0 + 5f64.sqrt()) / 2.0,
            1e-15
        ));
        assert!(close(spectral_radius(5).unwrap(), 3f64.sqrt(), 1e-15));
        let mut prev = spectral_radius(1).unwrap();
        for n in 2..=10_000 {
            let r = spectral_radius(n).unwrap();
            assert!(r > prev && r < 2.0, "n={n}");
            prev = r;
        }
    }

    #[test]
    fn golub_examples() {
        assert_eq!(
            golub_interval(5, 1).unwrap(),
            Interval { lo: -1.0, hi: 1.0 }
        );
        let mid = golub_interval(5, 3).unwrap();
        assert!(close(mid.hi, 2f64.sqrt(), 0.0) && close(mid.lo, -(2f64.sqrt()), 0.0));
        let one = golub_interval(1, 1).unwrap();
        assert!(one.contains(0.0));
        assert!(golub_interval(5, 0).is_err());
        assert!(golub_interval(5, 6).is_err());
    }

    #[test]
    fn golub_intervals_hold_an_eigenvalue() {
        for n in 1..=200u64 {
            let e = eigenvalues_closed_form(n).unwrap();
            for k in 1..=n {
                let iv = golub_interval(n, k).unwrap();
                assert!(e.values.iter().any(|&v| iv.contains(v)), "n={n} k={k}");
            }
            let smallest = Angle::new(n.div_ceil(2), n + 1).eigenvalue();
            assert!(golub_interval(n, 1).unwrap().contains(smallest));
        }
    }

    #[test]
    fn sufficient_condition() {
        assert!(containment_sufficient(4, 9));
        assert!(containment_sufficient(7, 15));
        assert!(!containment_sufficient(4, 10));
        assert!(!containment_sufficient(4, 4));
        assert!(!containment_sufficient(9, 4));
    }

    #[test]
    fn certificates() {
        let c = containment_certificate(4, 9).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.index_map, vec![(1, 2), (2, 4), (3, 6), (4, 8)]);
        assert!(c.verify());
        let c = containment_certificate(7, 15).unwrap();
        assert!(c.index_map.iter().all(|&(r, s)| s == 2 * r));
        let c = containment_certificate(2, 5).unwrap();
        assert_eq!(c.index_map, vec![(1, 2), (2, 4)]);
        assert_eq!(
            containment_certificate(4, 10),
            Err(Error::NotSufficient {
                m: 4,
                n: 10,
                remainder: 1
            })
        );
    }

    #[test]
    fn certificate_values_agree() {
        for m in 1..=20u64 {
            for k in 1..=10u64 {
                let n = m + (m + 1) * k;
                let c = containment_certificate(m, n).unwrap();
                let small = eigenvalues_closed_form(m).unwrap();
                let big = eigenvalues_closed_form(n).unwrap();
                for &(r, s) in &c.index_map {
                    let a = small.values[(r - 1) as usize];
                    let b = big.values[(s - 1) as usize];
                    assert!(close(a, b, 4.0 * f64::EPSILON), "m={m} n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = containment_certificate(4, 9).unwrap();
        c.index_map[1].1 = 5;
        assert!(!c.verify());
    }

    #[test]
    fn search_examples() {
        assert_eq!(
            containment_search(4, 44, 1e-12).unwrap(),
            vec![9, 14, 19, 24, 29, 34, 39, 44]
        );
        assert_eq!(containment_search(1, 9, 1e-12).unwrap(), vec![3, 5, 7, 9]);
        assert_eq!(containment_search(2, 11, 1e-12).unwrap(), vec![5, 8, 11]);
        assert!(containment_search(2, 11, 0.0).is_err());
    }

    #[test]
    fn search_covers_progression() {
        for m in 1..=8u64 {
            let found = containment_search(m, 120, DEFAULT_SEARCH_TOL).unwrap();
            for n in m + 1..=120 {
                if containment_sufficient(m, n) {
                    assert!(found.contains(&n), "m={m} n={n}");
                }
            }
        }
    }
}
