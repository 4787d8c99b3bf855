//! The rational Poisson–Lie group `G₁[[z⁻¹]]` for `GL_n`: evaluation functions and their
//! gradients, the Sklyanin bracket, Hamiltonian fields, the residue form `Ω` on tangent
//! pairs, and torus moment maps.
//!
//! The pairing is the trace form `κ(X, Y) = tr(XY)` of the defining representation.
//! A tangent pair `(Xᴸ, Xᴿ)` acts by `δg = Xᴸ g + g Xᴿ`, so `(Xᴸ + Y, Xᴿ − g⁻¹ Y g)`
//! represents the same vector.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{
    int, parse_rational, rank, rational_str, solve_linear, Dual, Field, Matrix, Point, Poly,
    RatFunc, Rational, Ring,
};
use crate::rootdata::{ColoredDivisor, DynkinType, RootSystem};

/// Scalar `C` in `Ω(X_φ, X_ψ) = −C·{φ, ψ}` for the conventions of this module.
/// Measured on the `GL₂` quadric and frozen; the compatibility suite re-derives it.
pub const OMEGA_BRACKET_CONSTANT: i64 = 1;

/// A framed rational map `ℙ¹ → GL_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRatMap {
    pub matrix: Matrix<RatFunc>,
    /// `g(∞)`.
    pub framing: Matrix<Rational>,
    pub divisor: Option<ColoredDivisor>,
}

impl GroupRatMap {
    pub fn new(matrix: Matrix<RatFunc>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::InvalidInput("group element must be square".into()));
        }
        let framing = matrix.try_map(|f| f.value_at(&Point::Infinity))?;
        if framing.det().is_zero() {
            return Err(Error::SingularFraming);
        }
        Ok(GroupRatMap {
            matrix,
            framing,
            divisor: None,
        })
    }

    pub fn with_divisor(mut self, divisor: ColoredDivisor) -> Self {
        self.divisor = Some(divisor);
        self
    }

    /// `g_∞ + Σ Aₖ/(z − zₖ)`.
    pub fn from_residues(
        framing: Matrix<Rational>,
        poles: &[(Rational, Matrix<Rational>)],
    ) -> Result<Self> {
        let mut m = framing.map(|c| RatFunc::constant(c.clone()));
        for (zk, a) in poles {
            let inv = RatFunc::from_poly(Poly::linear(zk)).inv()?;
            m = m + a.map(|c| inv.clone() * RatFunc::constant(c.clone()));
        }
        Self::new(m)
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn at(&self, u: &Rational) -> Result<Matrix<Rational>> {
        self.matrix.try_map(|f| f.eval(u))
    }

    pub fn inverse(&self) -> Result<Matrix<RatFunc>> {
        self.matrix.inverse().ok_or(Error::DivisionByZero)
    }

    /// `{"matrix": [[entry, ...], ...], "divisor": [...]}`, entries as `RatFunc` JSON or rationals.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .get("matrix")
            .and_then(|m| m.as_array())
            .ok_or_else(|| Error::Parse("group map needs a \"matrix\" array".into()))?;
        let rows: Vec<Vec<RatFunc>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                    .iter()
                    .map(RatFunc::from_json)
                    .collect()
            })
            .collect::<Result<_>>()?;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Parse("matrix must be square".into()));
        }
        let mut g = Self::new(Matrix::from_rows(rows))?;
        if let Some(fr) = v.get("framing") {
            let expected: Vec<Vec<Rational>> =
                serde_json::from_value::<Vec<Vec<serde_json::Value>>>(fr.clone())
                    .map_err(|e| Error::Parse(format!("framing: {e}")))?
                    .iter()
                    .map(|r| r.iter().map(crate::exactalg::json_rational).collect())
                    .collect::<Result<_>>()?;
            if Matrix::from_rows(expected) != g.framing {
                return Err(Error::InvalidInput(
                    "stated framing differs from g(∞)".into(),
                ));
            }
        }
        if let Some(d) = v.get("divisor") {
            let ty = DynkinType::new(crate::rootdata::Series::GL, g.size())?;
            g.divisor = Some(ColoredDivisor::from_json(ty, d)?);
        }
        Ok(g)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "matrix": self.matrix.to_rows().iter().map(|r| r.iter().map(RatFunc::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "framing": self.framing.to_rows().iter().map(|r| r.iter().map(rational_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Which function of the group element is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionKind {
    /// Matrix entry `(a, b)`, 1-based.
    Entry(usize, usize),
    /// `k`-th elementary symmetric function of the eigenvalues (`1` is the trace).
    CharCoeff(usize),
}

impl FunctionKind {
    pub fn is_invariant(&self) -> bool {
        matches!(self, FunctionKind::CharCoeff(_))
    }
}

/// `φ_u : g ↦ φ(g(u))`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationFunction {
    pub kind: FunctionKind,
    pub point: Rational,
}

impl EvaluationFunction {
    pub fn entry(a: usize, b: usize, point: Rational) -> Self {
        EvaluationFunction {
            kind: FunctionKind::Entry(a, b),
            point,
        }
    }

    pub fn trace(point: Rational) -> Self {
        Self::char_coeff(1, point)
    }

    pub fn char_coeff(k: usize, point: Rational) -> Self {
        EvaluationFunction {
            kind: FunctionKind::CharCoeff(k),
            point,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let ok = match self.kind {
            FunctionKind::Entry(a, b) => (1..=n).contains(&a) && (1..=n).contains(&b),
            FunctionKind::CharCoeff(k) => (1..=n).contains(&k),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{self} is not defined on GL{n}"
            )))
        }
    }

    /// `φ(G)` for a constant matrix over any ring.
    pub fn apply<T: Ring>(&self, g: &Matrix<T>) -> T {
        match self.kind {
            FunctionKind::Entry(a, b) => g[(a - 1, b - 1)].clone(),
            FunctionKind::CharCoeff(k) => g.char_coeffs()[k].clone(),
        }
    }

    /// `D` with `∂φ/∂G_ab = D_ba`, so that `∇_L = G·D` and `∇_R = D·G`.
    fn differential<T: Ring>(&self, g: &Matrix<T>) -> Matrix<T> {
        let n = g.rows();
        match self.kind {
            FunctionKind::Entry(a, b) => Matrix::unit(n, b - 1, a - 1).map(T::from_rational),
            FunctionKind::CharCoeff(k) => {
                // ∇e_k = Σ_{i<k} (−1)^i e_{k−1−i} G^{i+1}
                let e = g.char_coeffs();
                let mut d = Matrix::zeros(n, n);
                let mut pw = Matrix::identity(n);
                for i in 0..k {
                    let c = if i % 2 == 0 {
                        e[k - 1 - i].clone()
                    } else {
                        -e[k - 1 - i].clone()
                    };
                    d = d + pw.scale(&c);
                    pw = pw * g.clone();
                }
                d
            }
        }
    }

    pub fn value(&self, g: &GroupRatMap) -> Result<Rational> {
        self.check(g.size())?;
        Ok(self.apply(&g.at(&self.point)?))
    }
}

impl fmt::Display for EvaluationFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FunctionKind::Entry(a, b) => write!(f, "entry:{a},{b}")?,
            FunctionKind::CharCoeff(1) => write!(f, "trace")?,
            FunctionKind::CharCoeff(k) => write!(f, "coeff:{k}")?,
        }
        write!(f, "@{}", rational_str(&self.point))
    }
}

impl FromStr for EvaluationFunction {
    type Err = Error;

    /// `entry:1,2@u`, `trace@u`, `coeff:2@u`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, point) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("{s:?}: expected <function>@<point>")))?;
        let point = parse_rational(point.trim())?;
        let kind = kind.trim();
        let kind = if kind == "trace" {
            FunctionKind::CharCoeff(1)
        } else if let Some(k) = kind.strip_prefix("coeff:") {
            FunctionKind::CharCoeff(
                k.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index in {s:?}")))?,
            )
        } else if let Some(ab) = kind.strip_prefix("entry:") {
            let (a, b) = ab
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("{s:?}: expected entry:a,b")))?;
            let p = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index in {s:?}")))
            };
            FunctionKind::Entry(p(a)?, p(b)?)
        } else {
            return Err(Error::Parse(format!("unknown function {kind:?}")));
        };
        Ok(EvaluationFunction { kind, point })
    }
}

fn kappa<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> T {
    (a.clone() * b.clone()).trace()
}

/// `(∇⁰_L φ, ∇⁰_R φ)` at a constant matrix, identified with `𝔤` through `κ`.
pub fn gradients_at<T: Ring>(phi: &EvaluationFunction, g: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let d = phi.differential(g);
    (g.clone() * d.clone(), d * g.clone())
}

pub fn gradients(
    phi: &EvaluationFunction,
    g: &GroupRatMap,
) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
    phi.check(g.size())?;
    Ok(gradients_at(phi, &g.at(&phi.point)?))
}

/// The closed formula `(κ(∇_Lφ, ∇_Lψ) − κ(∇_Rφ, ∇_Rψ))/(u − v)` on values `G_u`, `G_v`.
pub fn bracket_at<T: Field>(
    phi: &EvaluationFunction,
    gu: &Matrix<T>,
    psi: &EvaluationFunction,
    gv: &Matrix<T>,
) -> Result<T> {
    let d = &phi.point - &psi.point;
    if d.is_zero() {
        return Err(Error::CoincidentPoints);
    }
    let (lp, rp) = gradients_at(phi, gu);
    let (lq, rq) = gradients_at(psi, gv);
    Ok((kappa(&lp, &lq) - kappa(&rp, &rq)) * T::from_rational(&d.recip()))
}

pub fn sklyanin_bracket(
    phi: &EvaluationFunction,
    psi: &EvaluationFunction,
    g: &GroupRatMap,
) -> Result<Rational> {
    phi.check(g.size())?;
    psi.check(g.size())?;
    if phi.point == psi.point {
        return Err(Error::CoincidentPoints);
    }
    bracket_at(phi, &g.at(&phi.point)?, psi, &g.at(&psi.point)?)
}

/// A basis of `𝔤` together with its `κ`-dual basis.
#[derive(Clone, Debug)]
pub struct LieBasis {
    pub basis: Vec<Matrix<Rational>>,
    pub dual: Vec<Matrix<Rational>>,
}

impl LieBasis {
    /// Dual basis computed by inverting the Gram matrix of `κ`.
    pub fn new(basis: Vec<Matrix<Rational>>) -> Result<Self> {
        let d = basis.len();
        let gram = Matrix::from_fn(d, d, |i, j| kappa(&basis[i], &basis[j]));
        let inv = gram
            .inverse()
            .ok_or_else(|| Error::InvalidInput("κ is degenerate on this basis".into()))?;
        let n = basis.first().map_or(0, |b| b.rows());
        let dual = (0..d)
            .map(|i| {
                (0..d).fold(Matrix::zeros(n, n), |acc, j| {
                    acc + basis[j].scale(&inv[(i, j)])
                })
            })
            .collect();
        Ok(LieBasis { basis, dual })
    }

    pub fn gl(n: usize) -> Self {
        let basis = (0..n)
            .flat_map(|i| (0..n).map(move |j| Matrix::unit(n, i, j)))
            .collect();
        Self::new(basis).expect("trace form is nondegenerate on gl_n")
    }

    /// `E_ij` for `i ≠ j` and `E_ii − E_{i+1,i+1}`.
    pub fn sl(n: usize) -> Self {
        let mut basis: Vec<Matrix<Rational>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    basis.push(Matrix::unit(n, i, j));
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            basis.push(Matrix::unit(n, i, i) - Matrix::unit(n, i + 1, i + 1));
        }
        Self::new(basis).expect("trace form is nondegenerate on sl_n")
    }

    /// `Ω = Σ Xⁱ ⊗ X̌ᵢ` applied to `κ(·, a) ⊗ κ(·, b)`.
    pub fn casimir_pairing(&self, a: &Matrix<Rational>, b: &Matrix<Rational>) -> Rational {
        self.basis
            .iter()
            .zip(&self.dual)
            .fold(Rational::zero(), |acc, (x, y)| {
                acc + kappa(x, a) * kappa(y, b)
            })
    }
}

/// `d/dt φ(e^{Xt} G)` and `d/dt φ(G e^{Xt})` at `t = 0`, by dual numbers.
fn directional(
    phi: &EvaluationFunction,
    g: &Matrix<Rational>,
    x: &Matrix<Rational>,
) -> (Rational, Rational) {
    let lift = |m: &Matrix<Rational>| {
        Matrix::from_fn(g.rows(), g.cols(), |i, j| {
            Dual::new(g[(i, j)].clone(), m[(i, j)].clone())
        })
    };
    let left = phi.apply(&lift(&(x.clone() * g.clone()))).eps;
    let right = phi.apply(&lift(&(g.clone() * x.clone()))).eps;
    (left, right)
}

/// The bracket from the `r`-matrix `Ω/(z − w) = Ω Σ_{k≤N} wᵏ z^{−k−1}`, truncated after
/// `N + 1` terms. The Casimir tensor is contracted with directional derivatives along an
/// explicit basis of `𝔤𝔩_n`, independently of the closed gradient formulas. The partial sum
/// is exact whenever `v = 0`, and in general differs from the closed form by the tail
/// `K·(v/u)^{N+1}/(u − v)`.
pub fn bracket_r_matrix_oracle(
    phi: &EvaluationFunction,
    psi: &EvaluationFunction,
    g: &GroupRatMap,
    n: usize,
) -> Result<Rational> {
    Ok(r_matrix_numerator(phi, psi, g)? * geometric_partial_sum(&phi.point, &psi.point, n)?)
}

/// `K` with `{φ_u, ψ_v} = K/(u − v)`, by the Casimir contraction.
pub fn r_matrix_numerator(
    phi: &EvaluationFunction,
    psi: &EvaluationFunction,
    g: &GroupRatMap,
) -> Result<Rational> {
    phi.check(g.size())?;
    psi.check(g.size())?;
    let basis = LieBasis::gl(g.size());
    let (gu, gv) = (g.at(&phi.point)?, g.at(&psi.point)?);
    let mut k = Rational::zero();
    for (x, y) in basis.basis.iter().zip(&basis.dual) {
        let (lu, ru) = directional(phi, &gu, x);
        let (lv, rv) = directional(psi, &gv, y);
        k += lu * lv - ru * rv;
    }
    Ok(k)
}

/// `Σ_{k=0}^{N} vᵏ u^{−k−1}`.
pub fn geometric_partial_sum(u: &Rational, v: &Rational, n: usize) -> Result<Rational> {
    if u.is_zero() {
        return Err(Error::PoleAtEvaluationPoint("0".into()));
    }
    let r = v / u;
    let mut term = u.recip();
    let mut s = Rational::zero();
    for _ in 0..=n {
        s += &term;
        term *= &r;
    }
    Ok(s)
}

/// `{{φ,ψ},χ} + {{ψ,χ},φ} + {{χ,φ},ψ}`. The outer bracket is the derivative of the inner
/// one along the Hamiltonian flow `δg(z) = {g(z), χ_w}`, taken exactly with dual numbers.
pub fn jacobi_cyclic_sum(f: [&EvaluationFunction; 3], g: &GroupRatMap) -> Result<Rational> {
    let mut total = Rational::zero();
    for s in 0..3 {
        let (phi, psi, chi) = (f[s], f[(s + 1) % 3], f[(s + 2) % 3]);
        total += outer_bracket(phi, psi, chi, g)?;
    }
    Ok(total)
}

fn flow_at(
    chi: &EvaluationFunction,
    g: &GroupRatMap,
    z: &Rational,
) -> Result<Matrix<Dual<Rational>>> {
    let (l, r) = gradients(chi, g)?;
    let gz = g.at(z)?;
    let d = z - &chi.point;
    if d.is_zero() {
        return Err(Error::CoincidentPoints);
    }
    let dg = (l * gz.clone() - gz.clone() * r).scale(&d.recip());
    Ok(Matrix::from_fn(gz.rows(), gz.cols(), |i, j| {
        Dual::new(gz[(i, j)].clone(), dg[(i, j)].clone())
    }))
}

/// `{{φ,ψ},χ}(g)`.
pub fn outer_bracket(
    phi: &EvaluationFunction,
    psi: &EvaluationFunction,
    chi: &EvaluationFunction,
    g: &GroupRatMap,
) -> Result<Rational> {
    for h in [phi, psi, chi] {
        h.check(g.size())?;
    }
    let gu = flow_at(chi, g, &phi.point)?;
    let gv = flow_at(chi, g, &psi.point)?;
    Ok(bracket_at(phi, &gu, psi, &gv)?.eps)
}

/// A tangent vector `[(Xᴸ, Xᴿ)]` at `g`; both components vanish at `∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentPair {
    pub xl: Matrix<RatFunc>,
    pub xr: Matrix<RatFunc>,
}

impl TangentPair {
    /// The representative `(δg·g⁻¹, 0)` of a variation `δg`.
    pub fn from_variation(dg: &Matrix<RatFunc>, g: &GroupRatMap) -> Result<Self> {
        let n = g.size();
        Ok(TangentPair {
            xl: dg.clone() * g.inverse()?,
            xr: Matrix::zeros(n, n),
        })
    }

    /// `δg = Xᴸ g + g Xᴿ`.
    pub fn variation(&self, g: &GroupRatMap) -> Matrix<RatFunc> {
        self.xl.clone() * g.matrix.clone() + g.matrix.clone() * self.xr.clone()
    }

    /// `(Xᴸ + Y, Xᴿ − g⁻¹ Y g)`, the same tangent vector.
    pub fn regauge(&self, y: &Matrix<RatFunc>, g: &GroupRatMap) -> Result<Self> {
        let conj = g.inverse()? * y.clone() * g.matrix.clone();
        Ok(TangentPair {
            xl: self.xl.clone() + y.clone(),
            xr: self.xr.clone() - conj,
        })
    }

    /// Rational points where some entry has a pole.
    pub fn poles(&self) -> Result<Vec<Rational>> {
        let mut pts = Vec::new();
        for f in self.xl.entries().iter().chain(self.xr.entries()) {
            pts.extend(rational_poles(f)?);
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    pub fn vanishes_at_infinity(&self) -> bool {
        self.xl
            .entries()
            .iter()
            .chain(self.xr.entries())
            .all(|f| f.order_at(&Point::Infinity) >= 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m = |x: &Matrix<RatFunc>| {
            x.to_rows()
                .iter()
                .map(|r| r.iter().map(RatFunc::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        serde_json::json!({ "xl": m(&self.xl), "xr": m(&self.xr) })
    }
}

fn rational_poles(f: &RatFunc) -> Result<Vec<Rational>> {
    let den = f.den();
    if den.is_constant() {
        return Ok(Vec::new());
    }
    let roots = den.rational_roots()?;
    let squarefree = den.divrem(&Poly::gcd(den, &den.derivative()))?.0;
    if squarefree.degree() != Some(roots.len()) {
        return Err(Error::InvalidInput(format!(
            "{f} has poles away from the rationals"
        )));
    }
    Ok(roots)
}

/// `X_φ(w) = (∇_Lφ, −∇_Rφ)/(w − u)`; as a flow, `δg(w) = {g(w), φ_u}`.
pub fn hamiltonian_field(phi: &EvaluationFunction, g: &GroupRatMap) -> Result<TangentPair> {
    let (l, r) = gradients(phi, g)?;
    let s = RatFunc::from_poly(Poly::linear(&phi.point)).inv()?;
    let lift = |m: &Matrix<Rational>| m.map(|c| s.clone() * RatFunc::constant(c.clone()));
    Ok(TangentPair {
        xl: lift(&l),
        xr: -lift(&r),
    })
}

fn pole_order(m: &Matrix<RatFunc>, p: &Point) -> i64 {
    m.entries()
        .iter()
        .map(|f| f.order_at(p))
        .min()
        .map_or(0, |o| (-o).max(0))
}

/// Laurent coefficients `lo..=hi` at `p` of every entry.
fn laurent_coeffs(m: &Matrix<RatFunc>, p: &Point, lo: i64, hi: i64) -> Vec<Matrix<Rational>> {
    let laurents: Vec<_> = m
        .entries()
        .iter()
        .map(|f| {
            let v = f.order_at(p).min(hi);
            f.laurent(p, (hi - v + 1).max(1) as usize)
        })
        .collect();
    (lo..=hi)
        .map(|k| {
            Matrix::from_fn(m.rows(), m.cols(), |i, j| {
                laurents[i * m.cols() + j].coeff(k)
            })
        })
        .collect()
}

/// The change of frame `Y` near `p` making `(Xᴸ + Y, Xᴿ − g⁻¹Yg)` regular at `p`; a
/// Laurent polynomial in `w − p`. `NotTangent` if no such `Y` exists.
pub fn frame_change(x: &TangentPair, g: &GroupRatMap, p: &Rational) -> Result<Matrix<RatFunc>> {
    let n = g.size();
    let pt = Point::Finite(p.clone());
    let ginv = g.inverse()?;
    let (kl, kr) = (pole_order(&x.xl, &pt), pole_order(&x.xr, &pt));
    let (hg, hi) = (pole_order(&g.matrix, &pt), pole_order(&ginv, &pt));
    let top = hg + hi - 1; // highest regular order of Y that can reach the polar part
    let low = -(kr.max(kl + hg + hi));
    let a = laurent_coeffs(&ginv, &pt, -hi, -low);
    let b = laurent_coeffs(&g.matrix, &pt, -hg, -low);
    let xl = laurent_coeffs(&x.xl, &pt, -kl, -1);
    let xr = laurent_coeffs(&x.xr, &pt, low, -1);
    let a_at = |i: i64| &a[(i + hi) as usize];
    let b_at = |j: i64| &b[(j + hg) as usize];
    // polar part of Y is forced; the regular orders 0..=top are unknowns
    let y_polar: Vec<(i64, Matrix<Rational>)> = (-kl..0)
        .map(|k| (k, -xl[(k + kl) as usize].clone()))
        .collect();
    // coefficient of s^t in g⁻¹ (Y_k s^k) g
    let conj_coeff = |t: i64, k: i64, y: &Matrix<Rational>| -> Matrix<Rational> {
        let mut out = Matrix::zeros(n, n);
        for i in -hi..=(t - k + hg) {
            let j = t - k - i;
            if j >= -hg {
                out = out + a_at(i).clone() * y.clone() * b_at(j).clone();
            }
        }
        out
    };
    let unknowns = if top >= 0 {
        (top + 1) as usize * n * n
    } else {
        0
    };
    let orders: Vec<i64> = (low..0).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &t in &orders {
        // Xᴿ_t − Σ (g⁻¹ Y g)_t = 0
        let mut known = xr[(t - low) as usize].clone();
        for (k, y) in &y_polar {
            known = known - conj_coeff(t, *k, y);
        }
        let cols: Vec<Matrix<Rational>> = (0..unknowns)
            .map(|u| {
                let k = (u / (n * n)) as i64;
                let e = u % (n * n);
                conj_coeff(t, k, &Matrix::unit(n, e / n, e % n))
            })
            .collect();
        for e in 0..n * n {
            rows.push(
                cols.iter()
                    .map(|c| c.entries()[e].clone())
                    .collect::<Vec<_>>(),
            );
            rhs.push(known.entries()[e].clone());
        }
    }
    let sol = if unknowns == 0 {
        if rhs.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotTangent(format!(
                "polar part at {} is not removable",
                rational_str(p)
            )));
        }
        Vec::new()
    } else {
        let m = Matrix::from_fn(rows.len(), unknowns, |i, j| rows[i][j].clone());
        solve_linear(&m, &rhs)
            .ok_or_else(|| Error::NotTangent(format!("no regular frame at {}", rational_str(p))))?
    };
    let s = RatFunc::from_poly(Poly::linear(p));
    let mut y = Matrix::zeros(n, n);
    for (k, c) in &y_polar {
        let sk = s.pow(*k as i32)?;
        y = y + c.map(|v| sk.clone() * RatFunc::constant(v.clone()));
    }
    for u in 0..unknowns {
        if sol[u].is_zero() {
            continue;
        }
        let k = (u / (n * n)) as i32;
        let e = u % (n * n);
        y[(e / n, e % n)] =
            y[(e / n, e % n)].clone() + s.pow(k)? * RatFunc::constant(sol[u].clone());
    }
    Ok(y)
}

/// A representative of `x` regular at `p`.
pub fn local_frames(x: &TangentPair, g: &GroupRatMap, p: &Rational) -> Result<TangentPair> {
    let y = frame_change(x, g, p)?;
    let out = x.regauge(&y, g)?;
    let pt = Point::Finite(p.clone());
    debug_assert!(pole_order(&out.xl, &pt) == 0 && pole_order(&out.xr, &pt) == 0);
    Ok(out)
}

/// `Ω(X, X') = Σ_{D̃} res (κ(Xᴸᵢ, X'ᴸ₀) − κ(Xᴿᵢ, X'ᴿ₀))` with the `1/2πi` absorbed.
///
/// Away from the poles of the global representative of `X` the local frame can be the
/// global one, and the residue theorem removes those points; each pole `p` contributes
/// `res_p (κ(Y_p, X'ᴸ) + κ(g⁻¹Y_p g, X'ᴿ))` for its frame change `Y_p`.
pub fn omega_form(x: &TangentPair, xp: &TangentPair, g: &GroupRatMap) -> Result<Rational> {
    let ginv = g.inverse()?;
    let mut total = Rational::zero();
    for p in x.poles()? {
        let y = frame_change(x, g, &p)?;
        let conj = ginv.clone() * y.clone() * g.matrix.clone();
        let f = kappa(&y, &xp.xl) + kappa(&conj, &xp.xr);
        total += f.residue_at(&Point::Finite(p));
    }
    Ok(total)
}

/// `res_∞` of `e_k(g(z))` (negated, so that it is the `z⁻¹` coefficient) and the
/// constant field it generates, the `z⁰` coefficient of `∇e_k(g(z))` at infinity.
pub fn moment_residue(k: usize, g: &GroupRatMap) -> Result<(Rational, Matrix<Rational>)> {
    let phi = EvaluationFunction::char_coeff(k, Rational::zero());
    phi.check(g.size())?;
    let value = -phi.apply(&g.matrix).residue_at(&Point::Infinity);
    let (grad, _) = gradients_at(&phi, &g.matrix);
    let field = grad.try_map(|f| f.value_at(&Point::Infinity))?;
    Ok((value, field))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorusRank {
    pub rank: usize,
    pub semisimple_rank: usize,
    /// `X_ρ` (up to a positive scalar) in fundamental-weight coordinates.
    pub vectors: Vec<Vec<Rational>>,
}

impl TorusRank {
    pub fn is_full(&self) -> bool {
        self.rank == self.semisimple_rank
    }
}

/// Rank of the span of `X_ρ = Σ_w w·∏ 𝔮ₖ^{⟨w, ω∨ₖ⟩}` over the modules with the given highest
/// weights, at `g_∞ = ∏ 𝔮ₖ^{ω∨ₖ}`. Each `X_ρ` is divided by `∏ 𝔮ₖ^{⟨λ, ω∨ₖ⟩}` so all
/// exponents are the integers `−⟨λ − w, ω∨ₖ⟩`.
pub fn torus_independence(
    ty: DynkinType,
    q: &[Rational],
    highest_weights: &[Vec<i64>],
) -> Result<TorusRank> {
    let rs = RootSystem::new(ty)?;
    let r = rs.rank();
    if q.len() != r || q.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput(format!(
            "expected {r} nonzero parameters"
        )));
    }
    let qpow = |a: &[i64]| -> Rational {
        a.iter().zip(q).fold(Rational::one(), |acc, (&e, qk)| {
            let p = num_traits::pow(qk.clone(), e.unsigned_abs() as usize);
            if e >= 0 {
                acc * p
            } else {
                acc / p
            }
        })
    };
    // α(g_∞) = ∏ 𝔮ₖ^{aₖ} for α = Σ aₖ αₖ
    if rs.positive_roots.iter().any(|a| qpow(a).is_one()) {
        return Err(Error::NotRegularSemisimple);
    }
    let cinv = rs.cartan_inverse();
    let to_roots = |w: &[i64]| -> Result<Vec<i64>> {
        (0..r)
            .map(|k| {
                let c = (0..r).fold(Rational::zero(), |acc, j| acc + int(w[j]) * &cinv[j][k]);
                if c.is_integer() {
                    c.to_integer()
                        .try_into()
                        .map_err(|_| Error::InvalidInput("weight overflow".into()))
                } else {
                    Err(Error::InvalidInput(
                        "weight difference outside the root lattice".into(),
                    ))
                }
            })
            .collect()
    };
    let mut vectors = Vec::new();
    for lambda in highest_weights {
        let ch = rs.classical_character(lambda)?;
        let mut v = vec![Rational::zero(); r];
        for (w, m) in &ch.terms {
            let diff: Vec<i64> = lambda.iter().zip(w).map(|(a, b)| a - b).collect();
            let n = to_roots(&diff)?;
            let s = int(*m) / qpow(&n);
            for k in 0..r {
                v[k] += int(w[k]) * &s;
            }
        }
        vectors.push(v);
    }
    let m = Matrix::from_fn(vectors.len(), r, |i, j| vectors[i][j].clone());
    Ok(TorusRank {
        rank: rank(&m),
        semisimple_rank: r,
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn sample() -> GroupRatMap {
        let a = Matrix::from_ints(&[&[1, 2], &[-1, 3]]);
        GroupRatMap::from_residues(Matrix::from_ints(&[&[2, 1], &[0, 1]]), &[(rat(1, 2), a)])
            .unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["entry:1,2@3/2", "trace@-1", "coeff:2@0"] {
            assert_eq!(s.parse::<EvaluationFunction>().unwrap().to_string(), s);
        }
        assert!("entry:1@2".parse::<EvaluationFunction>().is_err());
    }

    #[test]
    fn identity_gradients_coincide() {
        let g = GroupRatMap::new(Matrix::identity(2)).unwrap();
        let (l, r) = gradients(&EvaluationFunction::entry(1, 2, int(1)), &g).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, Matrix::unit(2, 1, 0));
    }

    #[test]
    fn gradient_pairs_with_first_order_variation() {
        let g = sample();
        let phi = EvaluationFunction::char_coeff(2, int(3));
        let (l, r) = gradients(&phi, &g).unwrap();
        let x = Matrix::from_ints(&[&[0, 5], &[-2, 1]]);
        let (dl, dr) = directional(&phi, &g.at(&int(3)).unwrap(), &x);
        assert_eq!(kappa(&l, &x), dl);
        assert_eq!(kappa(&r, &x), dr);
    }

    #[test]
    fn trace_gradients_agree() {
        let (l, r) = gradients(&EvaluationFunction::trace(int(2)), &sample()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn coincident_points_rejected() {
        let f = EvaluationFunction::entry(1, 1, int(2));
        assert_eq!(
            sklyanin_bracket(&f, &f, &sample()),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn first_oracle_term() {
        let g = sample();
        let (phi, psi) = (
            EvaluationFunction::entry(1, 2, int(2)),
            EvaluationFunction::entry(2, 1, int(0)),
        );
        assert_eq!(
            bracket_r_matrix_oracle(&phi, &psi, &g, 0).unwrap(),
            sklyanin_bracket(&phi, &psi, &g).unwrap()
        );
    }

    #[test]
    fn torus_examples() {
        let a1 = torus_independence(DynkinType::a(1), &[rat(1, 10)], &[vec![1]]).unwrap();
        assert!(a1.is_full());
        let a2 = torus_independence(
            DynkinType::a(2),
            &[rat(1, 10), rat(1, 10)],
            &[vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(a2.rank, 2);
        assert_eq!(
            torus_independence(DynkinType::a(1), &[int(1)], &[vec![1]]),
            Err(Error::NotRegularSemisimple)
        );
    }

    #[test]
    fn constant_map_has_no_moment() {
        let g = GroupRatMap::new(
            Matrix::from_ints(&[&[2, 0], &[0, 3]]).map(|c| RatFunc::constant(c.clone())),
        )
        .unwrap();
        let (value, field) = moment_residue(1, &g).unwrap();
        assert!(value.is_zero());
        assert_eq!(field, g.framing);
    }
}
