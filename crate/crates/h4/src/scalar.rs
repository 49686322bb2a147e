//! Exact rational scalars. Every coefficient in the engine is a `Scalar`;
//! there is no floating point anywhere.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{EngineError, Result};

/// An exact rational p/q, always in lowest terms with q > 0
/// (maintained by the underlying `BigRational`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        let n = self.0.numer();
        let (sign, digits) = n.to_u64_digits();
        match digits.len() {
            0 => Some(0),
            1 => {
                let mag = digits[0];
                match sign {
                    num::bigint::Sign::Minus => {
                        if mag <= (i64::MAX as u64) + 1 {
                            Some((mag as i128 * -1) as i64)
                        } else {
                            None
                        }
                    }
                    _ => {
                        if mag <= i64::MAX as u64 {
                            Some(mag as i64)
                        } else {
                            None
                        }
                    }
                }
            }
            _ => None,
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        Scalar(self.0.clone().recip())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc *= self.clone();
        }
        acc
    }

    /// The exact rational square root, when one exists.
    pub fn sqrt_exact(&self) -> Result<Scalar> {
        if self.0.is_negative() {
            return Err(EngineError::NotARationalSquare);
        }
        let num = self.0.numer();
        let den = self.0.denom();
        let sn = num.sqrt();
        let sd = den.sqrt();
        if &(&sn * &sn) == num && &(&sd * &sd) == den {
            Ok(Scalar(BigRational::new(sn, sd)))
        } else {
            Err(EngineError::NotARationalSquare)
        }
    }

    /// Canonical text form: `p` for integers, `p/q` otherwise.
    pub fn to_display(&self) -> String {
        if self.0.is_integer() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Scalar {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || EngineError::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar(BigRational::new(p, q)))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_display())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_display())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Generalized binomial coefficient C(n, r) for integer n (possibly
/// negative) and r >= 0, as an exact scalar.
pub fn binomial(n: i64, r: u32) -> Scalar {
    let mut num = Scalar::one();
    for i in 0..r as i64 {
        num *= Scalar::from_int(n - i);
    }
    let mut den = Scalar::one();
    for i in 1..=r as i64 {
        den *= Scalar::from_int(i);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        let s = Scalar::new(6, -4);
        assert_eq!(s.to_display(), "-3/2");
        assert_eq!(Scalar::new(8, 4).to_display(), "2");
        assert_eq!("7/3".parse::<Scalar>().unwrap(), Scalar::new(7, 3));
        assert_eq!("-5".parse::<Scalar>().unwrap(), Scalar::from_int(-5));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(Scalar::from_int(4).sqrt_exact().unwrap(), Scalar::from_int(2));
        assert_eq!(Scalar::new(9, 16).sqrt_exact().unwrap(), Scalar::new(3, 4));
        assert_eq!(
            Scalar::from_int(2).sqrt_exact(),
            Err(EngineError::NotARationalSquare)
        );
        assert_eq!(
            Scalar::from_int(-4).sqrt_exact(),
            Err(EngineError::NotARationalSquare)
        );
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial(5, 2), Scalar::from_int(10));
        assert_eq!(binomial(-1, 3), Scalar::from_int(-1));
        assert_eq!(binomial(-2, 2), Scalar::from_int(3));
        assert_eq!(binomial(3, 0), Scalar::one());
    }

    #[test]
    fn to_i64_bounds() {
        assert_eq!(Scalar::from_int(-7).to_i64(), Some(-7));
        assert_eq!(Scalar::new(1, 2).to_i64(), None);
        assert_eq!(Scalar::from_int(i64::MAX).to_i64(), Some(i64::MAX));
    }
}
