//! Exact arithmetic: rationals, rational functions in `z`, the shift-symbol Laurent ring,
//! dual numbers and dense matrices over any of them.

mod dual;
mod matrix;
mod poly;
mod shift;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use dual::Dual;
pub use matrix::{rank, solve_linear, Matrix};
pub use poly::{json_rational, series_div, Laurent, Point, Poly, RatFunc};
pub use shift::{Family, ShiftFrac, ShiftMonomial, ShiftPoly, ShiftSymbol};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n` or `n/d`.
pub fn rational_str(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Commutative ring containing the rationals.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;
}

/// A ring in which nonzero elements can (usually) be inverted.
pub trait Field: Ring {
    fn try_inv(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Ring for RatFunc {
    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }
}

impl Field for RatFunc {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Ring for ShiftPoly {
    fn from_rational(q: &Rational) -> Self {
        ShiftPoly::constant(q.clone())
    }
}

impl Ring for ShiftFrac {
    fn from_rational(q: &Rational) -> Self {
        ShiftFrac::from_poly(ShiftPoly::constant(q.clone()))
    }
}

impl Field for ShiftFrac {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}
