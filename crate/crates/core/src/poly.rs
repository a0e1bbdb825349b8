//! Laurent polynomials in one variable `t` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `sum_k coeffs[k] t^(low + k)`, kept normalized: the zero polynomial has
/// no coefficients and `low = 0`, otherwise the first and last coefficients
/// are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    pub fn from_i64(c: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(c.into()))
    }

    /// `c t^exp`.
    pub fn monomial(c: BigRational, exp: i64) -> Self {
        LaurentPoly::new(exp, vec![c])
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(BigRational::one(), 1)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coefficient(&self, exp: i64) -> BigRational {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn has_negative_powers(&self) -> bool {
        self.order().is_some_and(|o| o < 0)
    }

    /// The value at `t = 0`, or `None` if a negative power is present.
    pub fn value_at_zero(&self) -> Option<BigRational> {
        if self.has_negative_powers() {
            None
        } else {
            Some(self.coefficient(0))
        }
    }

    /// Evaluates at a nonzero rational (or at zero when no negative powers).
    pub fn evaluate(&self, x: &BigRational) -> Option<BigRational> {
        if x.is_zero() {
            return self.value_at_zero();
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Some(acc * pow(x, self.low))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LaurentPoly::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::from_i64(1)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, other: LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let low = self.low.min(other.low);
        let high = self.degree().unwrap().max(other.degree().unwrap());
        let coeffs = (low..=high)
            .map(|e| self.coefficient(e) + other.coefficient(e))
            .collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, other: LaurentPoly) -> LaurentPoly {
        self + (-other)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, other: LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + other.low, coeffs)
    }
}

impl crate::matrix::RingElement for LaurentPoly {}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}
