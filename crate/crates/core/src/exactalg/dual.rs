use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Rational, Ring};

/// `re + eps·ε` with `ε² = 0`; nesting gives mixed first derivatives.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Ring> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    pub fn real(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }
}

impl<T: Ring> Zero for Dual<T> {
    fn zero() -> Self {
        Dual::real(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<T: Ring> One for Dual<T> {
    fn one() -> Self {
        Dual::real(T::one())
    }
}

impl<T: Ring> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual {
            re: self.re + o.re,
            eps: self.eps + o.eps,
        }
    }
}

impl<T: Ring> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual {
            re: self.re - o.re,
            eps: self.eps - o.eps,
        }
    }
}

impl<T: Ring> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            re: -self.re,
            eps: -self.eps,
        }
    }
}

impl<T: Ring> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual {
            eps: self.re.clone() * o.eps + self.eps * o.re.clone(),
            re: self.re * o.re,
        }
    }
}

impl<T: Ring> Ring for Dual<T> {
    fn from_rational(q: &Rational) -> Self {
        Dual::real(T::from_rational(q))
    }
}

impl<T: Field> Field for Dual<T> {
    fn try_inv(&self) -> Option<Self> {
        let r = self.re.try_inv()?;
        Some(Dual {
            eps: -(self.eps.clone() * r.clone() * r.clone()),
            re: r,
        })
    }
}
