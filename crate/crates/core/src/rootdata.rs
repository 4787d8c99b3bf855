//! Simply-laced root data: Cartan matrices, positive roots, pairings, Freudenthal
//! characters and the dimension formulas for multiplicative Higgs moduli.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{int, json_rational, rat, rational_str, Matrix, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Series {
    A,
    D,
    E,
    /// `GL(n)`; only the dimension formulas and the explicit GL constructions use it.
    GL,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DynkinType {
    pub series: Series,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A | Series::GL => rank >= 1,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::UnsupportedType(format!("{series:?}{rank}")));
        }
        Ok(DynkinType { series, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Series::A, n).expect("valid rank")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Series::D, n).expect("valid rank")
    }

    /// The simply-laced type governing roots and weights (`GL(n)` gives `A_{n-1}`).
    pub fn semisimple(&self) -> Result<DynkinType> {
        match self.series {
            Series::GL if self.rank >= 2 => DynkinType::new(Series::A, self.rank - 1),
            Series::GL => Err(Error::UnsupportedType("GL1 has no semisimple part".into())),
            _ => Ok(*self),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.series {
            Series::A => "A",
            Series::D => "D",
            Series::E => "E",
            Series::GL => "GL",
        };
        write!(f, "{s}{}", self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let up = s.to_ascii_uppercase();
        let (series, rest) = if let Some(r) = up.strip_prefix("GL") {
            (Series::GL, r)
        } else if let Some(r) = up.strip_prefix('A') {
            (Series::A, r)
        } else if let Some(r) = up.strip_prefix('D') {
            (Series::D, r)
        } else if let Some(r) = up.strip_prefix('E') {
            (Series::E, r)
        } else {
            return Err(Error::UnsupportedType(s.to_string()));
        };
        let rank = rest
            .parse()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        DynkinType::new(series, rank)
    }
}

/// Bourbaki-labelled Cartan matrix.
pub fn cartan_matrix(ty: DynkinType) -> Result<Vec<Vec<i64>>> {
    let ty = ty.semisimple()?;
    let n = ty.rank;
    let mut c = vec![vec![0i64; n]; n];
    let mut link = |i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    match ty.series {
        Series::A => (1..n).for_each(|i| link(i, i + 1)),
        Series::D => {
            (1..n - 1).for_each(|i| link(i, i + 1));
            link(n - 2, n);
        }
        Series::E => {
            link(1, 3);
            link(2, 4);
            (3..n).for_each(|i| link(i, i + 1));
        }
        Series::GL => unreachable!(),
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    Ok(c)
}

/// A direction for every Dynkin edge, stored as `(source, target)` with 1-based nodes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuiverOrientation {
    pub edges: Vec<(usize, usize)>,
}

impl QuiverOrientation {
    /// Every edge points from the larger to the smaller label: `(i+1) → i` for `A_n`,
    /// `2 → 1, 3 → 2, 4 → 2` for `D_4`.
    pub fn default_for(rs: &RootSystem) -> Self {
        let mut edges = Vec::new();
        for j in 0..rs.rank() {
            for i in 0..j {
                if rs.cartan[i][j] != 0 {
                    edges.push((j + 1, i + 1));
                }
            }
        }
        QuiverOrientation { edges }
    }

    /// Validates against the Dynkin diagram: each edge exactly once, in one direction.
    pub fn new(rs: &RootSystem, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if a == 0 || b == 0 || a > rs.rank() || b > rs.rank() || rs.cartan[a - 1][b - 1] != -1 {
                return Err(Error::InvalidInput(format!(
                    "{a}->{b} is not a Dynkin edge"
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInput(format!("edge {a}-{b} oriented twice")));
            }
        }
        if seen.len() != QuiverOrientation::default_for(rs).edges.len() {
            return Err(Error::InvalidInput("orientation misses an edge".into()));
        }
        Ok(QuiverOrientation { edges })
    }

    /// Targets `j` of edges `i → j`.
    pub fn out_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.0 == i).map(|e| e.1)
    }

    /// Sources `j` of edges `j → i`.
    pub fn into(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.1 == i).map(|e| e.0)
    }

    /// Parses `"2>1,3>2,4>2"`.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<Self> {
        let edges = s
            .split(',')
            .map(|e| {
                let (a, b) = e
                    .split_once('>')
                    .ok_or_else(|| Error::Parse(format!("edge {e:?} must look like 2>1")))?;
                let p = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(x.to_string()))
                };
                Ok((p(a)?, p(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rs, edges)
    }
}

/// Weight-multiplicity table in fundamental-weight coordinates; the monomial
/// `∏ y_j^{c_j}` for the weight `∑ c_j ω_j`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Character {
    pub terms: BTreeMap<Vec<i64>, i64>,
}

impl Character {
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, w: &[i64]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_constant(&mut self, c: i64) {
        let r = self.terms.keys().next().map_or(0, Vec::len);
        let e = self.terms.entry(vec![0; r]).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&vec![0; r]);
        }
    }

    /// `self − other`, dropping zero entries.
    pub fn difference(&self, other: &Character) -> Character {
        let mut terms = self.terms.clone();
        for (w, m) in &other.terms {
            let e = terms.entry(w.clone()).or_insert(0);
            *e -= m;
            if *e == 0 {
                terms.remove(w);
            }
        }
        Character { terms }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: DynkinType,
    pub cartan: Vec<Vec<i64>>,
    /// Simple-root coordinates, ordered by height then descending lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
}

impl RootSystem {
    pub fn new(ty: DynkinType) -> Result<Self> {
        let cartan = cartan_matrix(ty)?;
        let n = cartan.len();
        let cm = Matrix::from_fn(n, n, |i, j| int(cartan[i][j]));
        let inv = cm.inverse().expect("Cartan matrices are invertible");
        let cartan_inv = inv.to_rows();
        let positive_roots = positive_roots_of(&cartan);
        Ok(RootSystem {
            ty: ty.semisimple()?,
            cartan,
            positive_roots,
            cartan_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `⟨α∨_i, β⟩` for `β` in simple-root coordinates.
    pub fn coroot_pairing(&self, i: usize, beta: &[i64]) -> i64 {
        (0..self.rank()).map(|j| self.cartan[i][j] * beta[j]).sum()
    }

    /// Root in fundamental-weight coordinates.
    pub fn root_as_weight(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|i| self.coroot_pairing(i, beta))
            .collect()
    }

    pub fn height(beta: &[i64]) -> i64 {
        beta.iter().sum()
    }

    pub fn highest_root(&self) -> Vec<i64> {
        self.positive_roots.last().cloned().expect("nonempty")
    }

    pub fn cartan_inverse(&self) -> &[Vec<Rational>] {
        &self.cartan_inv
    }

    /// `⟨λ∨, μ⟩` for a coweight in fundamental-coweight coordinates and a weight in
    /// fundamental-weight coordinates.
    pub fn pair(&self, coweight: &[Rational], weight: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, c) in coweight.iter().enumerate() {
            for (j, m) in weight.iter().enumerate() {
                s += c * &self.cartan_inv[i][j] * m;
            }
        }
        s
    }

    /// `⟨ρ, λ∨⟩` for a coweight in fundamental-coweight coordinates.
    pub fn rho_pairing(&self, coweight: &[Rational]) -> Rational {
        let rho = vec![int(1); self.rank()];
        self.pair(coweight, &rho)
    }

    /// Weight inner product `(μ, ν)` with roots of squared length 2.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let a: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
        let b: Vec<Rational> = b.iter().map(|&x| int(x)).collect();
        self.pair(&a, &b)
    }

    /// Simple reflection of a weight in fundamental-weight coordinates.
    pub fn reflect_weight(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|j| mu[j] - mu[i] * self.cartan[i][j])
            .collect()
    }

    /// Freudenthal's recursion for the irreducible module of highest weight `lambda`.
    pub fn classical_character(&self, lambda: &[i64]) -> Result<Character> {
        let r = self.rank();
        if lambda.len() != r || lambda.iter().any(|&c| c < 0) {
            return Err(Error::InvalidInput(format!("{lambda:?} is not dominant")));
        }
        // integer Gram matrix det(C)·C⁻¹ so all inner products stay in i64
        let det = Matrix::from_fn(r, r, |i, j| int(self.cartan[i][j])).det();
        let gram: Vec<Vec<i64>> = self
            .cartan_inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * &det).to_integer().try_into().expect("small"))
                    .collect()
            })
            .collect();
        let inner = |a: &[i64], b: &[i64]| -> i64 {
            (0..r)
                .map(|i| (0..r).map(|j| a[i] * gram[i][j] * b[j]).sum::<i64>())
                .sum()
        };
        let weight_of = |d: &[i64]| -> Vec<i64> {
            (0..r)
                .map(|j| lambda[j] - (0..r).map(|i| d[i] * self.cartan[i][j]).sum::<i64>())
                .collect()
        };
        let roots: Vec<(Vec<i64>, Vec<i64>)> = self
            .positive_roots
            .iter()
            .map(|b| (b.clone(), self.root_as_weight(b)))
            .collect();
        let plus_rho = |w: &[i64]| w.iter().map(|x| x + 1).collect::<Vec<_>>();
        let lr = plus_rho(lambda);
        let norm_l = inner(&lr, &lr);
        // keyed by depth: ν = λ − ∑ d_i α_i
        let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        mult.insert(vec![0; r], 1);
        let mut layer: BTreeSet<Vec<i64>> = [vec![0; r]].into();
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for d in &layer {
                for i in 0..r {
                    let mut e = d.clone();
                    e[i] += 1;
                    if next.contains(&e) {
                        continue;
                    }
                    let nu = weight_of(&e);
                    let nr = plus_rho(&nu);
                    let denom = norm_l - inner(&nr, &nr);
                    if denom == 0 {
                        continue;
                    }
                    let mut sum = 0i64;
                    for (beta, a) in &roots {
                        let mut k = 1;
                        loop {
                            let up: Vec<i64> = (0..r).map(|j| e[j] - k * beta[j]).collect();
                            if up.iter().any(|&x| x < 0) {
                                break;
                            }
                            if let Some(&m) = mult.get(&up) {
                                let w = weight_of(&up);
                                sum += m * inner(&w, a);
                            }
                            k += 1;
                        }
                    }
                    if (2 * sum) % denom != 0 {
                        return Err(Error::InvalidInput("non-integral multiplicity".into()));
                    }
                    let m = 2 * sum / denom;
                    if m > 0 {
                        mult.insert(e.clone(), m);
                        next.insert(e);
                    }
                }
            }
            layer = next;
        }
        Ok(Character {
            terms: mult.into_iter().map(|(d, m)| (weight_of(&d), m)).collect(),
        })
    }

    pub fn fundamental_character(&self, i: usize) -> Result<Character> {
        let mut w = vec![0; self.rank()];
        w[i] = 1;
        self.classical_character(&w)
    }

    /// All weights of the module (with multiplicity) in fundamental-weight coordinates.
    pub fn weights(&self, lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
        Ok(self
            .classical_character(lambda)?
            .terms
            .into_iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w, m as usize))
            .collect())
    }
}

fn positive_roots_of(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut all: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for b in &layer {
            for i in 0..n {
                let p: i64 = (0..n).map(|j| cartan[i][j] * b[j]).sum();
                // simply laced: b + α_i is a root iff ⟨α∨_i, b⟩ = −1
                if p == -1 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if all.insert(c.clone()) {
                        next.insert(c);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by(|a, b| {
        RootSystem::height(a)
            .cmp(&RootSystem::height(b))
            .then(b.cmp(a))
    });
    roots
}

/// Finite set of distinct rational points, each with a dominant coweight. For simply-laced
/// types coweights are in fundamental-coweight coordinates; for `GL(n)` they are the `n`
/// diagonal entries (non-increasing).
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ColoredDivisor {
    pub points: Vec<(Rational, Vec<i64>)>,
}

#[derive(Serialize, Deserialize)]
struct DivisorPointJson {
    z: serde_json::Value,
    coweight: Vec<i64>,
}

impl ColoredDivisor {
    pub fn new(ty: DynkinType, points: Vec<(Rational, Vec<i64>)>) -> Result<Self> {
        let width = ty.rank;
        let mut seen = BTreeSet::new();
        for (z, cw) in &points {
            if !seen.insert(z.clone()) {
                return Err(Error::InvalidInput(format!(
                    "repeated point {}",
                    rational_str(z)
                )));
            }
            if cw.len() != width {
                return Err(Error::InvalidInput(format!(
                    "coweight {cw:?} has wrong length"
                )));
            }
            let dominant = match ty.series {
                Series::GL => cw.windows(2).all(|w| w[0] >= w[1]),
                _ => cw.iter().all(|&c| c >= 0),
            };
            if !dominant {
                return Err(Error::InvalidInput(format!(
                    "coweight {cw:?} is not dominant"
                )));
            }
        }
        Ok(ColoredDivisor { points })
    }

    pub fn from_json(ty: DynkinType, v: &serde_json::Value) -> Result<Self> {
        let pts: Vec<DivisorPointJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let points = pts
            .into_iter()
            .map(|p| Ok((json_rational(&p.z)?, p.coweight)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ty, points)
    }

    pub fn union(&self, other: &ColoredDivisor) -> ColoredDivisor {
        ColoredDivisor {
            points: self.points.iter().chain(&other.points).cloned().collect(),
        }
    }
}

/// `∑ ⟨ρ, ω∨_{z_i}⟩`, possibly half-integral.
pub fn rho_sum(ty: DynkinType, divisor: &ColoredDivisor) -> Result<Rational> {
    match ty.series {
        Series::GL => {
            let n = ty.rank as i64;
            Ok(divisor
                .points
                .iter()
                .flat_map(|(_, cw)| {
                    cw.iter()
                        .enumerate()
                        .map(move |(k, &c)| rat((n - 1 - 2 * k as i64) * c, 2))
                })
                .sum())
        }
        _ => {
            let rs = RootSystem::new(ty)?;
            Ok(divisor
                .points
                .iter()
                .map(|(_, cw)| {
                    let cw: Vec<Rational> = cw.iter().map(|&c| int(c)).collect();
                    rs.rho_pairing(&cw)
                })
                .sum())
        }
    }
}

fn integral(q: Rational) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::NonIntegralDimension(rational_str(&q)));
    }
    q.to_integer()
        .try_into()
        .map_err(|_| Error::InvalidInput("dimension overflow".into()))
}

/// `dim B = ∑ ⟨ρ, ω∨_{z_i}⟩`.
pub fn base_dimension(ty: DynkinType, divisor: &ColoredDivisor) -> Result<i64> {
    integral(rho_sum(ty, divisor)?)
}

/// `2 ∑ ⟨ρ, ω∨_{z_i}⟩`.
pub fn moduli_dimension(ty: DynkinType, divisor: &ColoredDivisor) -> Result<i64> {
    integral(rho_sum(ty, divisor)? * int(2))
}

/// Dimension after Hamiltonian reduction by a torus of rank `rank_t`.
pub fn reduced_dimension(ty: DynkinType, divisor: &ColoredDivisor, rank_t: usize) -> Result<i64> {
    let d = moduli_dimension(ty, divisor)? - 2 * rank_t as i64;
    if d < 0 {
        return Err(Error::NegativeDimension(d));
    }
    Ok(d)
}
