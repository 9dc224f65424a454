//! Extended-precision real and complex arithmetic on top of `dashu-float`.
//!
//! Every value the root finder touches carries the working precision `p`
//! (in bits); binary operations round to the larger operand precision with
//! ties-to-even. Precision 0 means "exact" and is only used transiently
//! inside the compensated Horner step.

use std::cmp::Ordering;
use std::fmt;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};

pub type Real = FBig<HalfEven, 2>;

/// Exact conversion (precision 0).
pub fn exact_int(c: &BigInt) -> Real {
    let (sign, bytes) = c.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    // From<IBig> sizes the precision to the integer; force "unlimited".
    Real::from(if sign == Sign::Minus { -mag } else { mag })
        .with_precision(0)
        .value()
}

/// Correctly rounded conversion to `prec` bits.
pub fn int_to_real(c: &BigInt, prec: usize) -> Real {
    exact_int(c).with_precision(prec).value()
}

pub fn f64_to_real(x: f64, prec: usize) -> Real {
    Real::try_from(x)
        .expect("finite f64")
        .with_precision(prec)
        .value()
}

pub fn zero(prec: usize) -> Real {
    Real::ZERO.with_precision(prec).value()
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Drops the precision limit so that subsequent `+`, `−`, `×` are exact.
pub fn exact(x: &Real) -> Real {
    x.clone().with_precision(0).value()
}

pub fn round_to(x: Real, prec: usize) -> Real {
    x.with_precision(prec).value()
}

/// `2^e` at `prec` bits.
pub fn pow2(e: isize, prec: usize) -> Real {
    Real::from_parts(IBig::from(1), e)
        .with_precision(prec)
        .value()
}

pub fn abs(x: &Real) -> Real {
    if *x < Real::ZERO {
        -x
    } else {
        x.clone()
    }
}

/// Shortest decimal string (up to lucky shorter hits) that reads back to
/// exactly `x` at `prec` bits, in `d.ddde±x` form.
pub fn shortest_decimal(x: &Real, prec: usize) -> String {
    if x.repr().significand().is_zero() {
        return "0".to_string();
    }
    let max_digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    let to_dec = |digits: usize| x.clone().with_base_and_precision::<10>(digits).value();
    let round_trips =
        |digits: usize| to_dec(digits).with_base_and_precision::<2>(prec).value() == *x;
    // Past the first count that is accurate enough every larger count reads
    // back too, so bisect for it. A shorter lucky hit below it is ignored.
    let (mut lo, mut hi) = (1, max_digits);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if round_trips(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    format!("{:e}", to_dec(lo))
}

/// Complex number with extended-precision parts.
#[derive(Clone, PartialEq)]
pub struct MpComplex {
    pub re: Real,
    pub im: Real,
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({re:e} {:+e}i)", im)
    }
}

impl MpComplex {
    pub fn new(re: Real, im: Real) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        MpComplex::new(zero(prec), zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        MpComplex::new(f64_to_real(re, prec), f64_to_real(im, prec))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    pub fn exact(&self) -> Self {
        MpComplex::new(exact(&self.re), exact(&self.im))
    }

    pub fn round_to(self, prec: usize) -> Self {
        MpComplex::new(round_to(self.re, prec), round_to(self.im, prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().significand().is_zero() && self.im.repr().significand().is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        MpComplex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        MpComplex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        MpComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        MpComplex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let num = MpComplex::new(
            &self.re * &o.re + &self.im * &o.im,
            &self.im * &o.re - &self.re * &o.im,
        );
        MpComplex::new(&num.re / &d, &num.im / &d)
    }

    pub fn conj(&self) -> Self {
        MpComplex::new(self.re.clone(), -&self.im)
    }

    /// Lexicographic order on (re, im).
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        self.re
            .partial_cmp(&o.re)
            .unwrap_or(Ordering::Equal)
            .then(self.im.partial_cmp(&o.im).unwrap_or(Ordering::Equal))
    }
}

/// Plain Horner for real `x` at the precision of `x`.
pub fn horner_real(coeffs: &[Real], x: &Real) -> Real {
    let prec = x.precision();
    coeffs.iter().rev().fold(zero(prec), |acc, c| &acc * x + c)
}

/// Plain Horner at the precision of `z`.
pub fn horner(coeffs: &[Real], z: &MpComplex) -> MpComplex {
    let prec = z.re.precision().max(z.im.precision());
    coeffs.iter().rev().fold(MpComplex::zero(prec), |acc, c| {
        let m = acc.mul(z);
        MpComplex::new(&m.re + c, m.im)
    })
}

/// Compensated Horner evaluation at `prec` bits.
///
/// Each step `s·z + c` is formed exactly, rounded to `prec` bits, and the
/// rounding error is fed into a second Horner recurrence. The result is as
/// accurate as plain Horner carried out in twice the working precision.
/// `exact_coeffs` must be exact (precision 0), as produced by [`exact_int`].
pub fn horner_compensated(exact_coeffs: &[Real], z: &MpComplex, prec: usize) -> MpComplex {
    let zx = z.exact();
    let mut s = MpComplex::zero(prec);
    let mut corr = MpComplex::zero(prec);
    for c in exact_coeffs.iter().rev() {
        let sx = s.exact();
        let t = MpComplex::new(
            &sx.re * &zx.re - &sx.im * &zx.im + c,
            &sx.re * &zx.im + &sx.im * &zx.re,
        );
        let rounded = t.clone().round_to(prec);
        let err = MpComplex::new(
            round_to(&t.re - &rounded.re, prec),
            round_to(&t.im - &rounded.im, prec),
        );
        corr = corr.mul(z).add(&err);
        s = rounded;
    }
    s.add(&corr)
}

/// Real-argument variant of [`horner_compensated`].
pub fn horner_compensated_real(exact_coeffs: &[Real], x: &Real, prec: usize) -> Real {
    let xx = exact(x);
    let mut s = zero(prec);
    let mut corr = zero(prec);
    for c in exact_coeffs.iter().rev() {
        let t = exact(&s) * &xx + c;
        let rounded = round_to(t.clone(), prec);
        let err = round_to(&t - &rounded, prec);
        corr = &corr * x + err;
        s = rounded;
    }
    s + corr
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_round_trip() {
        let big: BigInt = "-123456789012345678901234567890123".parse().unwrap();
        let r = exact_int(&big);
        assert_eq!(r.to_int().value().to_string(), big.to_string());
        assert_eq!(to_f64(&int_to_real(&BigInt::from(5), 64)), 5.0);
    }

    #[test]
    fn complex_field_ops() {
        let p = 128;
        let a = MpComplex::from_f64(2.0, 3.0, p);
        let b = MpComplex::from_f64(-1.0, 4.0, p);
        assert_eq!(a.mul(&b).to_f64(), (-14.0, 5.0));
        let q = a.mul(&b).div(&b);
        let (re, im) = q.to_f64();
        assert!((re - 2.0).abs() < 1e-30 && (im - 3.0).abs() < 1e-30);
        let (re, im) = a.recip().mul(&a).to_f64();
        assert!((re - 1.0).abs() < 1e-36 && im.abs() < 1e-36);
        assert_eq!(to_f64(&a.abs()), 13f64.sqrt());
    }

    #[test]
    fn compensated_beats_plain_on_cancellation() {
        // (x − 1)^12 expanded, evaluated near its 12-fold root: plain Horner
        // loses essentially everything, the compensated form does not.
        let coeffs: Vec<BigInt> = (0..=12)
            .map(|k| {
                let b = crate::polycore::binomial(12, k);
                if (12 - k) % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .collect();
        let prec = 64;
        let exact_c: Vec<Real> = coeffs.iter().map(exact_int).collect();
        let rounded: Vec<Real> = coeffs.iter().map(|c| int_to_real(c, prec)).collect();
        let d = 1.0 / 16.0 + 2f64.powi(-40);
        let x = round_to(Real::try_from(1.0 + d).unwrap(), prec);
        let truth = d.powi(12);
        let comp = to_f64(&horner_compensated_real(&exact_c, &x, prec));
        assert!(((comp - truth) / truth).abs() < 1e-12, "{comp} vs {truth}");
        let z = MpComplex::new(x.clone(), zero(prec));
        let compc = horner_compensated(&exact_c, &z, prec).to_f64();
        assert!(((compc.0 - truth) / truth).abs() < 1e-12);
        let plain = to_f64(&horner_real(&rounded, &x));
        assert!(((plain - truth) / truth).abs() > 1e-12);
    }

    #[test]
    fn shortest_decimal_round_trips() {
        let prec = 256;
        let third = &int_to_real(&BigInt::from(1), prec) / &int_to_real(&BigInt::from(3), prec);
        let s = shortest_decimal(&third, prec);
        let dec: FBig<HalfEven, 10> = s.parse().unwrap();
        assert_eq!(dec.with_base_and_precision::<2>(prec).value(), third);
        assert_eq!(
            shortest_decimal(&int_to_real(&BigInt::from(5), prec), prec),
            "5e0"
        );
        assert_eq!(shortest_decimal(&zero(prec), prec), "0");
    }
}
