use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;
use crate::error::{Error, Result};

/// Polynomial in the formal variable `t` with coefficients in `Q(q)`.
/// `coeffs[k]` multiplies `t^k`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<Scalar>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, Scalar::one())
    }

    pub fn monomial(k: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn div_scalar(&self, c: &Scalar) -> Result<Self> {
        let inv = c.inv()?;
        Ok(self.scale(&inv))
    }

    /// Exact polynomial division over `Q(q)`; a nonzero remainder is an error.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let Some(db) = rhs.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = rhs.coeffs[db].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(db).max(1)];
        while rem.len() > db && !rem.is_empty() {
            let dr = rem.len() - 1;
            let c = &rem[dr] * &lead_inv;
            for (k, b) in rhs.coeffs.iter().enumerate() {
                rem[dr - db + k] = &rem[dr - db + k] - &(&c * b);
            }
            quot[dr - db] = c;
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        if !rem.is_empty() {
            return Err(Error::Domain(format!(
                "polynomial division by {rhs} leaves a remainder"
            )));
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Substitutes `t := value` exactly.
    pub fn substitute(&self, value: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Numeric evaluation at real `q` and `t`.
    pub fn eval(&self, q: f64, t: f64) -> Result<f64> {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.eval(q)?;
        }
        Ok(acc)
    }

    /// True when every coefficient is an integer constant.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| {
            c.is_laurent() && (c.is_zero() || (c.numerator().min_exp() == 0 && c.numerator().max_exp() == 0))
        })
    }
}

impl From<Scalar> for TPoly {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self + &(-rhs)
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TPoly::from_coeffs(out)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let simple = c.is_laurent() && c.numerator().terms().count() == 1;
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let body = if simple { body } else { format!("({body})") };
            match (k, body.as_str()) {
                (0, _) => write!(f, "{body}")?,
                (_, "1") => {}
                _ => write!(f, "{body}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_integer_poly() {
        let t = TPoly::t();
        let p = &(&t * &t) - &TPoly::one();
        assert_eq!(p.to_string(), "t^2 - 1");
    }

    #[test]
    fn display_with_q_coefficients() {
        let p = &TPoly::monomial(1, Scalar::delta()) + &TPoly::constant(Scalar::from_int(-2));
        assert_eq!(p.to_string(), "(q + q^-1)*t - 2");
    }

    #[test]
    fn exact_division() {
        let t = TPoly::t();
        let one = TPoly::one();
        let a = &(&t * &t) - &one;
        let b = &t - &one;
        assert_eq!(a.checked_div(&b).unwrap(), &t + &one);
        assert!(a.checked_div(&t).is_err());
        assert_eq!(a.checked_div(&TPoly::zero()), Err(Error::DivisionByZero));
    }
}
