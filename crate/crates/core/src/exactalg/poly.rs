use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_str, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial in `z`, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The coordinate `z`.
    pub fn z() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `z - a`.
    pub fn linear(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| acc * Self::linear(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest index with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// `f(c z)`.
    pub fn scale_arg(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// `f(z + a)`.
    pub fn shift_arg(&self, a: &Rational) -> Self {
        let lin = Self::new(vec![a.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc * lin.clone() + Self::constant(c.clone())
        })
    }

    /// Coefficients reversed to length `n`: `z^(n-1) f(1/z)`.
    fn reversed(&self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - 1 - k] = c.clone();
        }
        v
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    pub fn is_squarefree(&self) -> bool {
        Poly::gcd(self, &self.derivative()).is_constant()
    }

    /// Distinct rational roots, ascending, by the rational root theorem. Integer
    /// coefficients after clearing denominators must stay below 10¹² in size.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero polynomial has every root".into()));
        }
        let mut roots = Vec::new();
        let v = self.valuation().unwrap_or(0);
        if v > 0 {
            roots.push(Rational::zero());
        }
        let core = Poly::new(self.coeffs[v..].to_vec());
        if core.is_constant() {
            return Ok(roots);
        }
        let lcm = core
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| {
                num_integer::Integer::lcm(&acc, c.denom())
            });
        let to_u64 = |c: &Rational| -> Result<u64> {
            let n = (c * Rational::from_integer(lcm.clone())).to_integer().abs();
            u64::try_from(n)
                .ok()
                .filter(|&n| n < 1_000_000_000_000)
                .ok_or_else(|| {
                    Error::InvalidInput("coefficients too large for rational root search".into())
                })
        };
        let divisors = |n: u64| -> Vec<u64> {
            let mut d = Vec::new();
            let mut k = 1;
            while k * k <= n {
                if n.is_multiple_of(k) {
                    d.push(k);
                    if k * k != n {
                        d.push(n / k);
                    }
                }
                k += 1;
            }
            d
        };
        let (a0, an) = (to_u64(&core.coeffs[0])?, to_u64(&core.leading())?);
        for p in divisors(a0) {
            for q in divisors(an) {
                for s in [-1i64, 1] {
                    let r = Rational::new((s * p as i64).into(), (q as i64).into());
                    if core.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(rational_str(c)))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial must be a coefficient array".into()))?;
        let coeffs = arr.iter().map(json_rational).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

/// Accepts `"n/d"`, `"n"`, or a JSON integer.
pub fn json_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
        other => Err(Error::Parse(format!("expected rational, got {other}"))),
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        self + (-o)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", rational_str(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Point of the projective line over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(a) => write!(f, "{}", rational_str(a)),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// Truncated Laurent series `sum_j coeffs[j] s^(valuation + j)` in a local parameter `s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent {
    pub valuation: i64,
    pub coeffs: Vec<Rational>,
}

impl Laurent {
    pub fn coeff(&self, k: i64) -> Rational {
        let j = k - self.valuation;
        if j < 0 {
            return Rational::zero();
        }
        self.coeffs
            .get(j as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// First `n` coefficients of `a/b` as power series; requires `b[0] != 0`.
pub fn series_div(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let inv = b[0].recip();
    let mut c: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = a.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            s -= &b[j] * &c[k - j];
        }
        c.push(s * &inv);
    }
    c
}

/// Rational function `num/den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    num: serde_json::Value,
    den: serde_json::Value,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.divrem(&g)?;
        let (den, _) = den.divrem(&g)?;
        let lc = den.leading().recip();
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<Self> {
        Ok(self.clone() * o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(RatFunc {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        })
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluationPoint(rational_str(x)));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(c z)`.
    pub fn scale_arg(&self, c: &Rational) -> Result<Self> {
        Self::new(self.num.scale_arg(c), self.den.scale_arg(c))
    }

    /// Order of vanishing at `a` (negative for poles).
    pub fn order_at(&self, a: &Point) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        match a {
            Point::Infinity => self.den.coeffs.len() as i64 - self.num.coeffs.len() as i64,
            Point::Finite(a) => {
                let v = |p: &Poly| p.shift_arg(a).valuation().unwrap_or(0) as i64;
                v(&self.num) - v(&self.den)
            }
        }
    }

    /// Laurent expansion in the local parameter (`z - a`, or `1/z` at infinity), `n` terms.
    pub fn laurent(&self, at: &Point, n: usize) -> Laurent {
        if self.is_zero() {
            return Laurent {
                valuation: 0,
                coeffs: vec![Rational::zero(); n],
            };
        }
        let (num, den, base) = match at {
            Point::Infinity => {
                let (dn, dd) = (self.num.coeffs.len(), self.den.coeffs.len());
                (
                    self.num.reversed(dn),
                    self.den.reversed(dd),
                    dd as i64 - dn as i64,
                )
            }
            Point::Finite(a) => (
                self.num.shift_arg(a).coeffs,
                self.den.shift_arg(a).coeffs,
                0,
            ),
        };
        let vn = num.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let vd = den.iter().position(|c| !c.is_zero()).unwrap_or(0);
        Laurent {
            valuation: base + vn as i64 - vd as i64,
            coeffs: series_div(&num[vn..], &den[vd..], n),
        }
    }

    /// Coefficients of `z^0, z^-1, ..., z^-N` at infinity.
    pub fn laurent_expand_at_infinity(&self, order: usize) -> Result<Vec<Rational>> {
        let l = self.laurent(&Point::Infinity, order + 1);
        if l.valuation < 0 {
            return Err(Error::PoleAtEvaluationPoint("inf".into()));
        }
        Ok((0..=order as i64).map(|k| l.coeff(k)).collect())
    }

    /// Residue at `a`; at infinity this is minus the `z^-1` coefficient.
    pub fn residue_at(&self, a: &Point) -> Rational {
        match a {
            Point::Infinity => {
                let l = self.laurent(a, 1);
                let need = (1 - l.valuation + 1).max(1) as usize;
                -self.laurent(a, need).coeff(1)
            }
            Point::Finite(_) => {
                let l = self.laurent(a, 1);
                if l.valuation >= 0 {
                    return Rational::zero();
                }
                let need = (-l.valuation) as usize;
                self.laurent(a, need).coeff(-1)
            }
        }
    }

    /// Value at `a`, requiring regularity there.
    pub fn value_at(&self, a: &Point) -> Result<Rational> {
        let l = self.laurent(a, 1);
        if l.valuation < 0 {
            return Err(Error::PoleAtEvaluationPoint(a.to_string()));
        }
        Ok(l.coeff(0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RatFuncJson {
            num: self.num.to_json(),
            den: self.den.to_json(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        if v.is_string() || v.is_number() {
            return Ok(Self::constant(json_rational(v)?));
        }
        let r: RatFuncJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(Poly::from_json(&r.num)?, Poly::from_json(&r.den)?)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num + o.num, self.den).expect("nonzero den");
        }
        RatFunc::new(
            self.num * o.den.clone() + o.num * self.den.clone(),
            self.den * o.den,
        )
        .expect("nonzero den")
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self + (-o)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        RatFunc::new(self.num * o.num, self.den * o.den).expect("nonzero den")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
