use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intpoly;

/// Laurent polynomial in `q` with arbitrary-precision integer coefficients.
///
/// Stored densely from the lowest nonzero exponent: `coeffs[k]` is the
/// coefficient of `q^(low + k)`. Both ends are nonzero; zero is the empty
/// vector with `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// `q^exp`
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(exp, BigInt::one())
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(e, c.into());
        }
        acc
    }

    pub(crate) fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        intpoly::trim(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.low
    }

    pub fn max_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Lowest-degree coefficient; zero for the zero polynomial.
    pub fn low_coeff(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub(crate) fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn shifted(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// In-place `self += other`.
    pub fn add_assign_ref(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().max(other.max_exp());
        if low < self.low || high > self.max_exp() {
            let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
            for (k, c) in self.coeffs.drain(..).enumerate() {
                coeffs[(self.low - low) as usize + k] = c;
            }
            self.coeffs = coeffs;
            self.low = low;
        }
        let off = (other.low - self.low) as usize;
        for (k, c) in other.coeffs.iter().enumerate() {
            self.coeffs[off + k] += c;
        }
        let low = self.low;
        *self = Self::from_dense(low, std::mem::take(&mut self.coeffs));
    }

    pub fn eval(&self, q: f64) -> f64 {
        // Horner on the dense part, then the q^low factor.
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c.to_f64().unwrap_or(f64::NAN);
        }
        acc * q.powi(self.low as i32)
    }

    /// Sum of absolute term magnitudes at `q`, used as a scale for
    /// cancellation checks.
    pub(crate) fn eval_abs(&self, q: f64) -> f64 {
        self.terms()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * q.abs().powi(e as i32))
            .sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.terms().rev().map(|(e, c)| (e, c.clone())), "q")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Writes `sum c * var^e` in the given term order, e.g. `q^2 - 2*q + 1 + q^-2`.
pub(crate) fn write_poly(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, BigInt)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag.is_one();
        match e {
            0 => write!(f, "{mag}")?,
            _ => {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_cancels_to_canonical_zero() {
        let p = LaurentPoly::from_terms([(-2, 1), (3, -4)]);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z, LaurentPoly::zero());
    }

    #[test]
    fn product_and_display() {
        let q = LaurentPoly::q_pow(1);
        let qi = LaurentPoly::q_pow(-1);
        let d = &q + &qi;
        let d2 = &d * &d;
        assert_eq!(d2, LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(d2.to_string(), "q^2 + 2 + q^-2");
        assert_eq!((&q - &qi).to_string(), "q - q^-1");
    }

    #[test]
    fn eval_negative_exponents() {
        let p = LaurentPoly::from_terms([(-1, 2), (1, 1)]);
        assert!((p.eval(2.0) - 3.0).abs() < 1e-15);
    }
}
