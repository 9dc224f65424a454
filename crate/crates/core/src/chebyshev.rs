//! Chebyshev polynomials of the second kind `U_n`, their monic normalization
//! `S_n`, and the substitutions that carry them onto `f_n`:
//! `f_n(λ) = S_n(−λ) = U_n(−λ/2)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevPair {
    pub n: u64,
    pub u: IntPoly,
    pub s: IntPoly,
}

impl ChebyshevPair {
    pub fn new(n: u64) -> Self {
        ChebyshevPair {
            n,
            u: chebyshev_u(n),
            s: chebyshev_s(n),
        }
    }
}

/// Runs `P_k = scale·x·P_{k−1} − P_{k−2}` from `P_0 = 1`, `P_1 = first`.
fn three_term(n: u64, first: IntPoly, scale: i64) -> IntPoly {
    if n == 0 {
        return IntPoly::constant(1);
    }
    let scale = BigInt::from(scale);
    let mut prev = IntPoly::constant(1);
    let mut cur = first;
    for _ in 2..=n {
        let next = &cur.shift_mul().scale(&scale) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `U_n` with `U_0 = 1`, `U_1 = 2x`, `U_n = 2x·U_{n−1} − U_{n−2}`.
pub fn chebyshev_u(n: u64) -> IntPoly {
    three_term(n, IntPoly::monomial(2, 1), 2)
}

/// `S_n` with `S_0 = 1`, `S_1 = x`, `S_n = x·S_{n−1} − S_{n−2}`.
pub fn chebyshev_s(n: u64) -> IntPoly {
    three_term(n, IntPoly::monomial(1, 1), 1)
}

/// `p(x) ↦ p(−x)`: odd-index coefficients change sign.
pub fn reflect(p: &IntPoly) -> IntPoly {
    IntPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// `p(x) ↦ p(x/2)`; fails unless every `c_k / 2^k` is an integer.
pub fn halve_variable(p: &IntPoly) -> Result<IntPoly> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    let mut pow = BigInt::one();
    for (index, c) in p.coeffs().iter().enumerate() {
        let (q, r) = c.div_rem(&pow);
        if !r.is_zero() {
            return Err(Error::IntegralityViolation { index });
        }
        out.push(q);
        pow <<= 1;
    }
    Ok(IntPoly::new(out))
}
