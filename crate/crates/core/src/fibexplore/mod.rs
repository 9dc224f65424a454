//! Fibonacci-shifted characteristic polynomials `f_n(λ) − F_{n+1}`.
//!
//! Exact part: `f_{4k}(i) = F_{4k+1}` checked in the Gaussian integers.
//! Numeric part: extended-precision root sets, conic fits through the roots,
//! conjecture scans over ranges of `n`, and critical points of `f_n`.

pub mod ellipse;
pub mod explore;
pub mod mp;
pub mod roots;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::charpoly::charpoly_closed_form;
use crate::error::Result;
use crate::polycore::{GaussianInt, IntPoly};

pub use ellipse::{ellipse_fit, Conic, EllipseFit, DEFAULT_ELLIPSE_TOL};
pub use explore::{conjecture_scan, local_extrema, CriticalPoint, ScanReport, ScanRow};
pub use roots::{find_roots, RootSet, DEFAULT_PRECISION_BITS, MAX_ITERATIONS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFib {
    pub index: u64,
    pub value: BigInt,
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`, by plain iteration.
pub fn fibonacci(n: u64) -> BigFib {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    BigFib { index: n, value: a }
}

/// Evaluates `f_{4k}` at `i` exactly and compares against `F_{4k+1}`.
pub fn gaussian_unit_check(k: u64) -> Result<bool> {
    let f = charpoly_closed_form(4 * k)?.poly;
    let value = f.eval_gaussian(&GaussianInt::i());
    Ok(value.is_real() && value.re == fibonacci(4 * k + 1).value)
}

/// `f_n(λ) − F_{n+1}`.
pub fn fib_shift_poly(n: u64) -> Result<IntPoly> {
    let f = charpoly_closed_form(n)?.poly;
    let constant = f.coeff(0) - fibonacci(n + 1).value;
    Ok(f.with_coeff(0, constant))
}

/// `f_29` with the `λ^25` coefficient changed from −351 to −350, minus `F_30`.
pub fn perturbed_f29() -> IntPoly {
    fib_shift_poly(29)
        .expect("29 is a valid index")
        .with_coeff(25, -350)
}
