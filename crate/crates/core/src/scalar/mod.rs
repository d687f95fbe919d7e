//! Exact coefficient arithmetic.
//!
//! [`Scalar`] is the field `Q(q)` of rational functions with integer
//! coefficients; [`TPoly`] adjoins a formal `t` on top. Quantum integers in
//! the second parameter `omega` (with `omega + omega^-1 = t`) are never built
//! from `omega` itself: [`qint_t`] produces them directly as integer
//! polynomials in `t` through the three-term recurrence.

mod intpoly;
mod laurent;
mod numeric;
mod rational;
mod tpoly;

pub use laurent::LaurentPoly;
pub use numeric::{qint_numeric, NumericParams};
pub use rational::Scalar;
pub use tpoly::TPoly;

use crate::error::{Error, Result};

/// The quantum integer `[m]_q = (q^m - q^-m) / (q - q^-1)`, as the Laurent
/// polynomial `q^(m-1) + q^(m-3) + ... + q^(1-m)`.
pub fn qint(m: i64) -> Result<Scalar> {
    if m <= 0 {
        return Err(Error::Domain(format!("quantum integer index must be >= 1, got {m}")));
    }
    Ok(Scalar::from_laurent(LaurentPoly::from_terms(
        (0..m).map(|k| (m - 1 - 2 * k, 1)),
    )))
}

/// `[m]_omega` as an integer polynomial in `t = omega + omega^-1`:
/// `P_1 = 1`, `P_2 = t`, `P_(k+1) = t * P_k - P_(k-1)`.
pub fn qint_t(m: i64) -> Result<TPoly> {
    if m <= 0 {
        return Err(Error::Domain(format!("quantum integer index must be >= 1, got {m}")));
    }
    let t = TPoly::t();
    let mut prev = TPoly::zero();
    let mut cur = TPoly::one();
    for _ in 1..m {
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
