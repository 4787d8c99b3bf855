use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_str, Rational};
use crate::error::{Error, Result};

/// Symbol family. `U` carries gauge unknowns of the triangularization solver and
/// `T` its section coefficients; `Y`, `P` are the eigenvalue and twist symbols.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    P,
    T,
    U,
    Y,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::P => 'P',
            Family::T => 'T',
            Family::U => 'U',
            Family::Y => 'Y',
        }
    }

    fn from_letter(c: &str) -> Result<Self> {
        match c {
            "P" => Ok(Family::P),
            "T" => Ok(Family::T),
            "U" => Ok(Family::U),
            "Y" => Ok(Family::Y),
            _ => Err(Error::Parse(format!("unknown symbol family {c:?}"))),
        }
    }
}

/// `F(node, shift)`, standing for `f_node(q^shift z)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ShiftSymbol {
    pub family: Family,
    pub node: u32,
    pub shift: i32,
}

impl ShiftSymbol {
    pub fn new(family: Family, node: u32, shift: i32) -> Self {
        ShiftSymbol {
            family,
            node,
            shift,
        }
    }

    pub fn y(node: u32, shift: i32) -> Self {
        Self::new(Family::Y, node, shift)
    }

    pub fn p(node: u32, shift: i32) -> Self {
        Self::new(Family::P, node, shift)
    }

    pub fn shifted(self, m: i32) -> Self {
        ShiftSymbol {
            shift: self.shift + m,
            ..self
        }
    }
}

impl fmt::Display for ShiftSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.family.letter(), self.node, self.shift)
    }
}

/// Product of symbol powers. Exponents are stored doubled so that the half-integral
/// exponents needed transiently for `P` stay exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ShiftMonomial {
    factors: Vec<(ShiftSymbol, i32)>,
}

fn exp_str(e2: i32) -> String {
    if e2 % 2 == 0 {
        (e2 / 2).to_string()
    } else {
        format!("{e2}/2")
    }
}

fn parse_exp2(s: &str) -> Result<i32> {
    let q = parse_rational(s)?;
    let d = q * Rational::from_integer(2.into());
    if !d.is_integer() {
        return Err(Error::Parse(format!(
            "exponent {s} is not a multiple of 1/2"
        )));
    }
    d.to_integer()
        .try_into()
        .map_err(|_| Error::Parse(format!("exponent {s} out of range")))
}

impl ShiftMonomial {
    pub fn one() -> Self {
        ShiftMonomial::default()
    }

    /// `sym^(exp2/2)`.
    pub fn power2(sym: ShiftSymbol, exp2: i32) -> Result<Self> {
        if exp2 % 2 != 0 && sym.family != Family::P {
            return Err(Error::FractionalExponentOutsideP(sym.to_string()));
        }
        Ok(Self::from_factors(vec![(sym, exp2)]))
    }

    pub fn power(sym: ShiftSymbol, exp: i32) -> Self {
        Self::from_factors(vec![(sym, 2 * exp)])
    }

    pub fn symbol(sym: ShiftSymbol) -> Self {
        Self::power(sym, 1)
    }

    /// Builds from (symbol, doubled exponent) pairs in any order, merging repeats.
    fn from_factors(fs: Vec<(ShiftSymbol, i32)>) -> Self {
        let mut map: BTreeMap<ShiftSymbol, i32> = BTreeMap::new();
        for (s, e) in fs {
            *map.entry(s).or_insert(0) += e;
        }
        ShiftMonomial {
            factors: map.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    /// `(symbol, doubled exponent)` pairs in sorted order.
    pub fn factors(&self) -> &[(ShiftSymbol, i32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent2(&self, sym: &ShiftSymbol) -> i32 {
        self.factors
            .binary_search_by(|(s, _)| s.cmp(sym))
            .map_or(0, |i| self.factors[i].1)
    }

    pub fn inverse(&self) -> Self {
        ShiftMonomial {
            factors: self.factors.iter().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        Self::from_factors(self.factors.iter().map(|&(s, e)| (s, e * k)).collect())
    }

    pub fn shift(&self, m: i32) -> Self {
        ShiftMonomial {
            factors: self
                .factors
                .iter()
                .map(|&(s, e)| (s.shifted(m), e))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// Sum of `P` exponents (doubled); orders monomials from highest weight downwards.
    fn p_degree2(&self) -> i32 {
        self.factors
            .iter()
            .filter(|(s, _)| s.family == Family::P)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn map_symbols(&self, f: impl Fn(ShiftSymbol) -> Option<ShiftSymbol>) -> Self {
        Self::from_factors(
            self.factors
                .iter()
                .filter_map(|&(s, e)| f(s).map(|t| (t, e)))
                .collect(),
        )
    }

    pub fn without(&self, sym: &ShiftSymbol) -> Self {
        ShiftMonomial {
            factors: self
                .factors
                .iter()
                .filter(|(s, _)| s != sym)
                .cloned()
                .collect(),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &ShiftSymbol> {
        self.factors.iter().map(|(s, _)| s)
    }

    fn write_factors(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " * ")?;
            }
            if *e == 2 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{}", exp_str(*e))?;
            }
        }
        Ok(())
    }
}

impl Mul for &ShiftMonomial {
    type Output = ShiftMonomial;
    fn mul(self, o: &ShiftMonomial) -> ShiftMonomial {
        let (a, b) = (&self.factors, &o.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ShiftMonomial { factors: out }
    }
}

impl Ord for ShiftMonomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.p_degree2()
            .cmp(&o.p_degree2())
            .then_with(|| self.factors.len().cmp(&o.factors.len()))
            .then_with(|| self.factors.cmp(&o.factors))
    }
}

impl PartialOrd for ShiftMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for ShiftMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        self.write_factors(f)
    }
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    sym: Family,
    node: u32,
    shift: i32,
    exp: String,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    factors: Vec<FactorJson>,
}

/// Laurent polynomial in shift symbols with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ShiftPoly {
    terms: BTreeMap<ShiftMonomial, Rational>,
}

impl ShiftPoly {
    pub fn constant(c: Rational) -> Self {
        Self::term(ShiftMonomial::one(), c)
    }

    pub fn term(m: ShiftMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ShiftPoly { terms }
    }

    pub fn monomial(m: ShiftMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn symbol(sym: ShiftSymbol) -> Self {
        Self::monomial(ShiftMonomial::symbol(sym))
    }

    pub fn y(node: u32, shift: i32) -> Self {
        Self::symbol(ShiftSymbol::y(node, shift))
    }

    pub fn p(node: u32, shift: i32) -> Self {
        Self::symbol(ShiftSymbol::p(node, shift))
    }

    /// Terms from highest weight (fewest `P`s) downwards.
    pub fn terms(&self) -> impl Iterator<Item = (&ShiftMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ShiftMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some((m, c))` when this is the single term `c·m`.
    pub fn as_term(&self) -> Option<(&ShiftMonomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.as_term() {
            None if self.is_zero() => Some(Rational::zero()),
            Some((m, c)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    fn add_term(&mut self, m: ShiftMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ShiftPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ShiftMonomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ShiftPoly {
            terms: self.terms.iter().map(|(k, x)| (k * m, x * c)).collect(),
        }
    }

    /// Inverse of a single term; `None` otherwise.
    pub fn inverse_term(&self) -> Option<Self> {
        let (m, c) = self.as_term()?;
        Some(Self::term(m.inverse(), c.recip()))
    }

    /// Integer power; negative powers require a single term.
    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            let inv = self
                .inverse_term()
                .ok_or_else(|| Error::InvalidInput(format!("cannot invert {self}")))?;
            return inv.pow(-k);
        }
        Ok((0..k).fold(Self::one(), |acc, _| acc * self.clone()))
    }

    /// `z ↦ q^m z`: every shift index increases by `m`.
    pub fn shift(&self, m: i32) -> Self {
        if m == 0 {
            return self.clone();
        }
        ShiftPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.shift(m), c.clone()))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(ShiftMonomial::is_integral)
    }

    pub fn symbols(&self) -> BTreeSet<ShiftSymbol> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols().copied())
            .collect()
    }

    /// Apply a symbol map to every monomial (dropping symbols mapped to `None`).
    pub fn map_symbols(&self, f: impl Fn(ShiftSymbol) -> Option<ShiftSymbol>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_symbols(&f), c.clone());
        }
        out
    }

    /// Group terms by the (doubled) exponent of `sym`, with `sym` removed.
    pub fn collect_in(&self, sym: &ShiftSymbol) -> BTreeMap<i32, ShiftPoly> {
        let mut out: BTreeMap<i32, ShiftPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent2(sym))
                .or_default()
                .add_term(m.without(sym), c.clone());
        }
        out
    }

    /// Replace symbols by polynomials. Replaced symbols must occur with non-negative integer
    /// exponents unless their replacement is a single term.
    pub fn substitute(&self, f: &impl Fn(&ShiftSymbol) -> Option<ShiftPoly>) -> Result<Self> {
        let mut out = Self::zero();
        let mut cache: BTreeMap<(ShiftSymbol, i32), ShiftPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Self::one();
            for &(s, e) in m.factors() {
                match f(&s) {
                    None => kept.push((s, e)),
                    Some(val) => {
                        let pw = match cache.get(&(s, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = if e % 2 != 0 {
                                    let (vm, vc) = val.as_term().ok_or_else(|| {
                                        Error::NonIntegralExponent(format!("{s}^{}", exp_str(e)))
                                    })?;
                                    if !(vc.is_one()) {
                                        return Err(Error::NonIntegralExponent(format!(
                                            "{s}^{}",
                                            exp_str(e)
                                        )));
                                    }
                                    Self::monomial(ShiftMonomial::from_factors(
                                        vm.factors().iter().map(|&(t, x)| (t, x * e / 2)).collect(),
                                    ))
                                } else {
                                    val.pow(e / 2)?
                                };
                                cache.insert((s, e), p.clone());
                                p
                            }
                        };
                        acc = acc * pw;
                    }
                }
            }
            let rest = ShiftMonomial::from_factors(kept);
            for (k, x) in acc.mul_monomial(&rest, c).terms {
                out.add_term(k, x);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: rational_str(c),
                factors: m
                    .factors()
                    .iter()
                    .map(|&(s, e)| FactorJson {
                        sym: s.family,
                        node: s.node,
                        shift: s.shift,
                        exp: exp_str(e),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::zero();
        for t in terms {
            let mut fs = Vec::new();
            for f in t.factors {
                let sym = ShiftSymbol::new(f.sym, f.node, f.shift);
                let e = parse_exp2(&f.exp)?;
                if e % 2 != 0 && f.sym != Family::P {
                    return Err(Error::FractionalExponentOutsideP(sym.to_string()));
                }
                fs.push((sym, e));
            }
            out.add_term(ShiftMonomial::from_factors(fs), parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

impl Zero for ShiftPoly {
    fn zero() -> Self {
        ShiftPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ShiftPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for ShiftPoly {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut big, small) = if self.len() >= o.len() {
            (self, o)
        } else {
            (o, self)
        };
        for (m, c) in small.terms {
            big.add_term(m, c);
        }
        big
    }
}

impl Sub for ShiftPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ShiftPoly {
    type Output = Self;
    fn neg(self) -> Self {
        ShiftPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for ShiftPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a * b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for ShiftPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let shown = if k == 0 {
                c.clone()
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
                c.abs()
            };
            if m.is_one() {
                write!(f, "{}", rational_str(&shown))?;
            } else {
                if !shown.is_one() {
                    write!(f, "{} * ", rational_str(&shown))?;
                }
                m.write_factors(f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for ShiftPoly {
    type Err = Error;

    /// Parses the canonical text form, e.g. `Y(1,0) - 2 * P(1,-1) * Y(1,-1)^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        let mut out = ShiftPoly::zero();
        let mut i = 0;
        let mut sign = Rational::one();
        if toks.first().map(String::as_str) == Some("-") {
            sign = -sign;
            i += 1;
        } else if toks.first().map(String::as_str) == Some("+") {
            i += 1;
        }
        loop {
            let mut coeff = sign.clone();
            let mut fs = Vec::new();
            loop {
                let t = toks
                    .get(i)
                    .ok_or_else(|| Error::Parse(format!("truncated {s:?}")))?;
                if t.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                    coeff *= parse_rational(t)?;
                    i += 1;
                } else {
                    let fam = Family::from_letter(t)?;
                    let node: u32 = toks
                        .get(i + 1)
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad node in {s:?}")))?;
                    let shift: i32 = toks
                        .get(i + 2)
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad shift in {s:?}")))?;
                    i += 3;
                    let mut e = 2;
                    if toks.get(i).map(String::as_str) == Some("^") {
                        let x = toks
                            .get(i + 1)
                            .ok_or_else(|| Error::Parse("missing exponent".into()))?;
                        e = parse_exp2(x)?;
                        i += 2;
                    }
                    let sym = ShiftSymbol::new(fam, node, shift);
                    if e % 2 != 0 && fam != Family::P {
                        return Err(Error::FractionalExponentOutsideP(sym.to_string()));
                    }
                    fs.push((sym, e));
                }
                if toks.get(i).map(String::as_str) == Some("*") {
                    i += 1;
                } else {
                    break;
                }
            }
            out.add_term(ShiftMonomial::from_factors(fs), coeff);
            match toks.get(i).map(String::as_str) {
                None => break,
                Some("+") => sign = Rational::one(),
                Some("-") => sign = -Rational::one(),
                Some(t) => return Err(Error::Parse(format!("unexpected {t:?} in {s:?}"))),
            }
            i += 1;
        }
        Ok(out)
    }
}

/// Splits into symbol letters, signed numbers/rationals, and the punctuation `+ - * ^`.
/// Node and shift arguments inside parentheses become separate number tokens.
fn tokenize(s: &str) -> Result<Vec<String>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| {
        let start = *i;
        if cs[*i] == '-' {
            *i += 1;
        }
        while *i < cs.len() && (cs[*i].is_ascii_digit() || cs[*i] == '/') {
            *i += 1;
        }
        cs[start..*i].iter().collect::<String>()
    };
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' | '*' => {
                out.push(c.to_string());
                i += 1;
            }
            '-' => {
                out.push("-".into());
                i += 1;
            }
            '^' => {
                out.push("^".into());
                i += 1;
                while i < cs.len() && cs[i] == ' ' {
                    i += 1;
                }
                out.push(number(&mut i));
            }
            '(' => {
                i += 1;
                let close = cs[i..]
                    .iter()
                    .position(|&x| x == ')')
                    .ok_or_else(|| Error::Parse(format!("unclosed '(' in {s:?}")))?;
                let inner: String = cs[i..i + close].iter().collect();
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected (node,shift) in {s:?}")))?;
                out.push(a.trim().to_string());
                out.push(b.trim().to_string());
                i += close + 1;
            }
            c if c.is_ascii_digit() => out.push(number(&mut i)),
            c if c.is_ascii_alphabetic() => {
                out.push(c.to_string());
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

/// Fraction of shift polynomials. Denominators are normalized by scaling only; monomial
/// denominators are absorbed into the numerator. Equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct ShiftFrac {
    num: ShiftPoly,
    den: ShiftPoly,
}

impl ShiftFrac {
    pub fn new(num: ShiftPoly, den: ShiftPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(inv) = den.inverse_term() {
            return Ok(Self::from_poly(num * inv));
        }
        let lead = den.terms().next().expect("nonzero").1.recip();
        Ok(ShiftFrac {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: ShiftPoly) -> Self {
        ShiftFrac {
            num: p,
            den: ShiftPoly::one(),
        }
    }

    pub fn num(&self) -> &ShiftPoly {
        &self.num
    }

    pub fn den(&self) -> &ShiftPoly {
        &self.den
    }

    /// The Laurent polynomial this fraction equals, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&ShiftPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn shift(&self, m: i32) -> Self {
        ShiftFrac {
            num: self.num.shift(m),
            den: self.den.shift(m),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.num.is_integral() && self.den.is_integral()
    }
}

impl From<ShiftPoly> for ShiftFrac {
    fn from(p: ShiftPoly) -> Self {
        Self::from_poly(p)
    }
}

impl PartialEq for ShiftFrac {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.clone() * o.den.clone() == o.num.clone() * self.den.clone()
    }
}

impl Zero for ShiftFrac {
    fn zero() -> Self {
        Self::from_poly(ShiftPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ShiftFrac {
    fn one() -> Self {
        Self::from_poly(ShiftPoly::one())
    }
}

impl Add for ShiftFrac {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return ShiftFrac::new(self.num + o.num, self.den).expect("nonzero den");
        }
        ShiftFrac::new(
            self.num * o.den.clone() + o.num * self.den.clone(),
            self.den * o.den,
        )
        .expect("nonzero den")
    }
}

impl Sub for ShiftFrac {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ShiftFrac {
    type Output = Self;
    fn neg(self) -> Self {
        ShiftFrac {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for ShiftFrac {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ShiftFrac::new(self.num * o.num, self.den * o.den).expect("nonzero den")
    }
}

impl fmt::Display for ShiftFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn sp(s: &str) -> ShiftPoly {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ShiftPoly::y(1, 0).shift(-1), ShiftPoly::y(1, -1));
        let x = sp("Y(1,0) + P(2,-1) * Y(2,-2)^-1");
        assert_eq!(x.shift(2), sp("Y(1,2) + P(2,1) * Y(2,0)^-1"));
    }

    #[test]
    fn canonical_text() {
        let u = ShiftPoly::term(
            &ShiftMonomial::symbol(ShiftSymbol::p(2, 0))
                * &ShiftMonomial::power(ShiftSymbol::y(2, 0), -1),
            rat(-1, 1),
        );
        assert_eq!(u.to_string(), "-1 * P(2,0) * Y(2,0)^-1");
        let t = ShiftPoly::y(1, 0) + ShiftPoly::p(1, -1) * ShiftPoly::y(1, -1).pow(-1).unwrap();
        assert_eq!(t.to_string(), "Y(1,0) + P(1,-1) * Y(1,-1)^-1");
        assert_eq!(sp(&t.to_string()), t);
        assert_eq!(sp(&u.to_string()), u);
        let h = sp("2/3 * P(3,0)^-1/2 - 5 + Y(1,1)^3");
        assert_eq!(sp(&h.to_string()), h);
        assert_eq!(ShiftPoly::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn json_format() {
        let u = sp("-1 * P(2,0) * Y(2,0)^-1");
        let j = u.to_json();
        assert_eq!(
            j,
            serde_json::json!([{"coeff":"-1","factors":[
                {"sym":"P","node":2,"shift":0,"exp":"1"},
                {"sym":"Y","node":2,"shift":0,"exp":"-1"}]}])
        );
    }

    #[test]
    fn half_exponents_only_for_p() {
        assert!(ShiftMonomial::power2(ShiftSymbol::p(1, 0), 1).is_ok());
        assert_eq!(
            ShiftMonomial::power2(ShiftSymbol::y(1, 0), 1),
            Err(Error::FractionalExponentOutsideP("Y(1,0)".into()))
        );
        assert!("Y(1,0)^1/2".parse::<ShiftPoly>().is_err());
        let half = sp("P(1,0)^1/2");
        assert_eq!(half.clone() * half, sp("P(1,0)"));
    }

    #[test]
    fn substitution() {
        let x = sp("U(1,0) * Y(1,0) + U(1,0)^2 - 3");
        let r = x
            .substitute(&|s: &ShiftSymbol| (s.family == Family::U).then(|| sp("Y(1,0)^-1 + 1")))
            .unwrap();
        assert_eq!(r, sp("Y(1,0) + 2 * Y(1,0)^-1 + Y(1,0)^-2 - 1"));
        let c = x.collect_in(&ShiftSymbol::new(Family::U, 1, 0));
        assert_eq!(c[&4], sp("1"));
        assert_eq!(c[&2], sp("Y(1,0)"));
        assert_eq!(c[&0], sp("-3"));
    }

    #[test]
    fn frac_equality() {
        let a = ShiftPoly::y(1, 0) + ShiftPoly::one();
        let b = ShiftPoly::y(2, 0) - ShiftPoly::one();
        let f1 = ShiftFrac::new(a.clone(), b.clone()).unwrap();
        let f2 = ShiftFrac::new(a.clone() * a.clone(), b.clone() * a.clone()).unwrap();
        let f3 = ShiftFrac::new(a.scale(&rat(-2, 1)), b.scale(&rat(-2, 1))).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(f2, f3);
        assert_eq!(f1, f3);
        assert_eq!(f1.clone() * f1.inv().unwrap(), ShiftFrac::one());
        let m = ShiftFrac::new(ShiftPoly::y(1, 0), ShiftPoly::p(1, 0).scale(&rat(2, 1))).unwrap();
        assert_eq!(m.as_poly().unwrap(), &sp("1/2 * P(1,0)^-1 * Y(1,0)"));
    }
}
