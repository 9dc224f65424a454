//! Characteristic polynomials `f_n(λ) = det(A_n − λI_n)`, built three
//! independent ways: the three-term recurrence, the binomial closed form, and
//! determinant evaluation followed by exact interpolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::{binomial, IntMatrix, IntPoly};

/// Largest `n` the determinant oracle accepts.
pub const DET_ORACLE_MAX_N: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Recurrence,
    ClosedForm,
    DetOracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyRecord {
    pub n: u64,
    pub poly: IntPoly,
    pub method: Method,
}

impl CharPolyRecord {
    /// Checks the structural laws every `f_n` obeys: degree `n`, leading
    /// coefficient `(−1)^n`, constant term `(−1)^k` for `n = 2k` and `0` for odd `n`,
    /// and only same-parity powers present.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let n = self.n as usize;
        if self.poly.degree() != Some(n) {
            return Err(format!("degree {:?} != {n}", self.poly.degree()));
        }
        if *self.poly.leading_coeff().unwrap() != sign(n as u64) {
            return Err(format!("leading coefficient is not (-1)^{n}"));
        }
        let constant = self.poly.coeff(0);
        let want = if n.is_multiple_of(2) {
            sign(n as u64 / 2)
        } else {
            BigInt::zero()
        };
        if constant != want {
            return Err(format!("constant term {constant} != {want}"));
        }
        if let Some(k) = wrong_parity_index(&self.poly, n) {
            return Err(format!("coefficient of λ^{k} should vanish by parity"));
        }
        Ok(())
    }
}

/// First index whose parity differs from `n` but whose coefficient is nonzero.
pub fn wrong_parity_index(p: &IntPoly, n: usize) -> Option<usize> {
    p.coeffs()
        .iter()
        .enumerate()
        .find(|(k, c)| (k + n) % 2 == 1 && !c.is_zero())
        .map(|(k, _)| k)
}

fn sign(e: u64) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidIndex(
            "the matrix family starts at n = 1".to_string(),
        ))
    } else {
        Ok(())
    }
}

/// `f_n` via `f_n = −λ·f_{n−1} − f_{n−2}` from `f_1 = −λ`, `f_2 = λ² − 1`.
pub fn charpoly_recurrence(n: u64) -> Result<CharPolyRecord> {
    require_positive(n)?;
    // Seeding with f_0 = 1 reproduces f_2 = λ² − 1 from f_1 = −λ.
    let mut prev = IntPoly::constant(1);
    let mut cur = IntPoly::from_i64s(&[0, -1]);
    for _ in 2..=n {
        let next = &(-cur.shift_mul()) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(CharPolyRecord {
        n,
        poly: cur,
        method: Method::Recurrence,
    })
}

/// Coefficient of `λ^{m−2i}` in `f_m`: `(−1)^{m+i}·C(m−i, i)`.
pub fn closed_form_coefficient(m: u64, i: u64) -> Result<BigInt> {
    require_positive(m)?;
    if i > m / 2 {
        return Err(Error::InvalidIndex(format!(
            "i = {i} is outside 0..={} for m = {m}",
            m / 2
        )));
    }
    Ok(sign(m + i) * binomial(m - i, i as i64))
}

/// `f_n` assembled term by term from the binomial closed form.
pub fn charpoly_closed_form(n: u64) -> Result<CharPolyRecord> {
    require_positive(n)?;
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    for i in 0..=n / 2 {
        coeffs[(n - 2 * i) as usize] = closed_form_coefficient(n, i)?;
    }
    Ok(CharPolyRecord {
        n,
        poly: IntPoly::new(coeffs),
        method: Method::ClosedForm,
    })
}

/// Integers nearest zero in the order `0, 1, −1, 2, −2, …`.
pub fn interpolation_nodes(count: usize) -> Vec<BigInt> {
    (0..count as i64)
        .map(|j| if j % 2 == 1 { (j + 1) / 2 } else { -(j / 2) })
        .map(BigInt::from)
        .collect()
}

/// `f_n` reconstructed from `det(A_n − tI)` at `sample_count` integer nodes.
///
/// Determinants come from [`IntMatrix::bareiss_det`]; the polynomial through the
/// samples is rebuilt by Lagrange interpolation over ℚ, and every coefficient
/// must come out integral.
pub fn charpoly_det_oracle(n: u64, sample_count: usize) -> Result<CharPolyRecord> {
    require_positive(n)?;
    if n > DET_ORACLE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "determinant oracle is limited to n <= {DET_ORACLE_MAX_N}, got {n}"
        )));
    }
    if (sample_count as u64) < n + 1 {
        return Err(Error::InvalidArgument(format!(
            "need at least {} samples for degree {n}, got {sample_count}",
            n + 1
        )));
    }
    let nodes = interpolation_nodes(sample_count);
    let values: Vec<BigInt> = nodes
        .iter()
        .map(|t| IntMatrix::an_minus_t_identity(n as usize, t).bareiss_det())
        .collect();
    let rational = lagrange_interpolate(&nodes, &values);
    let mut coeffs = Vec::with_capacity(rational.len());
    for (index, c) in rational.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegralInterpolation {
                index,
                value: c.to_string(),
            });
        }
        coeffs.push(c.to_integer());
    }
    Ok(CharPolyRecord {
        n,
        poly: IntPoly::new(coeffs),
        method: Method::DetOracle,
    })
}

/// Low-to-high coefficients of the unique polynomial of degree < `nodes.len()`
/// through `(nodes[j], values[j])`.
fn lagrange_interpolate(nodes: &[BigInt], values: &[BigInt]) -> Vec<BigRational> {
    let count = nodes.len();
    let mut result = vec![BigRational::zero(); count];
    for (j, (xj, yj)) in nodes.iter().zip(values).enumerate() {
        if yj.is_zero() {
            continue;
        }
        // basis numerator ∏_{m≠j} (λ − x_m), low-to-high
        let mut basis = vec![BigInt::one()];
        let mut denom = BigInt::one();
        for (m, xm) in nodes.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut next = vec![BigInt::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xm;
            }
            basis = next;
            denom *= xj - xm;
        }
        for (acc, b) in result.iter_mut().zip(basis) {
            *acc += BigRational::new(b * yj, denom.clone());
        }
    }
    result
}

/// First `count` entries of the `d`-th diagonal of Pascal's triangle:
/// entry `j` is `C(d−1+j, d−1)`.
pub fn pascal_diagonal(d: u64, count: usize) -> Result<Vec<BigInt>> {
    if d == 0 || count == 0 {
        return Err(Error::InvalidIndex(
            "diagonal and count must be positive".to_string(),
        ));
    }
    Ok((0..count as u64)
        .map(|j| binomial(d - 1 + j, (d - 1) as i64))
        .collect())
}

/// `f_n(λ)` in `f64` by running the three-term recurrence.
///
/// On `[−2, 2]` the iterates stay bounded by `n + 1`, so this is accurate
/// where expanded Horner evaluation cancels catastrophically.
pub fn eval_f64(n: u64, lambda: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, -lambda);
    if n == 0 {
        return prev;
    }
    for _ in 2..=n {
        let next = -lambda * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}
