use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::intpoly;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Element of `Q(q)`: a reduced quotient of Laurent polynomials.
///
/// Canonical form: numerator and denominator share no non-unit factor, the
/// denominator has lowest exponent 0 and a positive constant term, and zero
/// is `0 / 1`. Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::constant(BigInt::from(c)))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// The formal variable `q`.
    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q_pow(1))
    }

    /// The loop parameter `delta = q + q^-1`.
    pub fn delta() -> Self {
        Self::from_laurent(delta_laurent())
    }

    /// Builds `num / den` and reduces it to canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.min_exp();
        let num = num.shifted(-shift);
        let den = den.shifted(-shift);
        let (mut num, mut den) = if intpoly::is_unit(den.dense()) {
            (num, den)
        } else {
            let g = intpoly::gcd(num.dense(), den.dense());
            if intpoly::is_unit(&g) {
                (num, den)
            } else {
                (
                    LaurentPoly::from_dense(num.min_exp(), intpoly::div_exact(num.dense(), &g)),
                    LaurentPoly::from_dense(0, intpoly::div_exact(den.dense(), &g)),
                )
            }
        };
        if den.low_coeff().is_negative() {
            num = -&num;
            den = -&den;
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value lies in `Z[q, q^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Re-runs normalization; a no-op on canonical values.
    pub fn renormalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn delta_pow(k: u32) -> Self {
        Self::from_laurent(delta_laurent().pow(k))
    }

    /// Multiplies by a Laurent polynomial without a gcd when the denominator is trivial.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        if self.den.is_one() {
            return Self::from_laurent(&self.num * p);
        }
        Self::normalize(&self.num * p, self.den.clone())
    }

    /// Sums many scalars, grouping by denominator so that normalization runs
    /// once per distinct denominator instead of once per term.
    pub fn sum<'a, I: IntoIterator<Item = &'a Scalar>>(items: I) -> Self {
        let mut groups: HashMap<&'a LaurentPoly, LaurentPoly> = HashMap::new();
        for s in items {
            if s.is_zero() {
                continue;
            }
            groups.entry(&s.den).or_default().add_assign_ref(&s.num);
        }
        let mut acc = Self::zero();
        for (den, num) in groups {
            if num.is_zero() {
                continue;
            }
            acc = &acc + &Self::normalize(num, den.clone());
        }
        acc
    }

    /// Evaluates at a real `q`. A vanishing denominator is a genuine pole
    /// because numerator and denominator are coprime.
    pub fn eval(&self, q: f64) -> Result<f64> {
        let d = self.den.eval(q);
        let scale = self.den.eval_abs(q);
        if d == 0.0 || d.abs() <= 1e-13 * scale {
            return Err(Error::Pole {
                factor: self.den.to_string(),
                q,
            });
        }
        Ok(self.num.eval(q) / d)
    }
}

pub(crate) fn delta_laurent() -> LaurentPoly {
    LaurentPoly::from_terms([(1, 1), (-1, 1)])
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Scalar::from_laurent(num);
            }
            return Scalar::normalize(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::normalize(num, &self.den * &rhs.den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(&self.num * &rhs.num);
        }
        Scalar::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}
