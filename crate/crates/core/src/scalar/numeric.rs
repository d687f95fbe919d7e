use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric specialization point: loop parameter `delta >= 2`, the
/// non-contractible weight `t` in `(0, delta]`, and the root `q >= 1` of
/// `q + 1/q = delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericParams {
    pub delta: f64,
    pub t: f64,
    pub q: f64,
}

impl NumericParams {
    pub fn new(delta: f64, t: f64) -> Result<Self> {
        let q = q_from_delta(delta)?;
        if !(t.is_finite() && t > 0.0 && t <= delta) {
            return Err(Error::InvalidParams(format!(
                "t must satisfy 0 < t <= delta = {delta}, got {t}"
            )));
        }
        Ok(Self { delta, t, q })
    }

    /// Parameters at `t = delta`, for evaluations that do not involve `t`.
    pub fn at_delta(delta: f64) -> Result<Self> {
        Self::new(delta, delta)
    }

    pub fn with_t(&self, t: f64) -> Result<Self> {
        Self::new(self.delta, t)
    }
}

/// The root `q >= 1` of `q + q^-1 = delta`; `delta = 2` gives `q = 1`.
pub fn q_from_delta(delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta < 2.0 {
        return Err(Error::InvalidParams(format!(
            "delta must be a finite real >= 2, got {delta}"
        )));
    }
    let q = (delta + (delta * delta - 4.0).sqrt()) / 2.0;
    debug_assert!((q + 1.0 / q - delta).abs() <= 1e-12 * delta);
    Ok(q)
}

/// `[m]` with `[2] = x`, by the three-term recurrence in floating point.
/// With `x = delta` this is `[m]_q`; with `x = t` it is `[m]_omega`.
pub fn qint_numeric(m: usize, x: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 1..m {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}
