//! Explicit rational multiplicative Higgs moduli for `GL₂` with two minuscule
//! singularities, its Darboux chart, and the `GL_n` Hitchin fibration.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{int, rational_str, Matrix, Poly, RatFunc, Rational};
use crate::sklyanin::{omega_form, sklyanin_bracket, EvaluationFunction, GroupRatMap, TangentPair};

const VARS: [&str; 4] = ["a0", "b0", "c0", "d0"];

/// `Σ lᵢxᵢ + Σ_{i≤j} q_{ij}xᵢxⱼ + c = 0` in `(a₀, b₀, c₀, d₀)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub linear: [Rational; 4],
    /// Upper-triangular coefficients `(i, j, q_ij)`.
    pub quadratic: Vec<(usize, usize, Rational)>,
    pub constant: Rational,
}

impl Relation {
    pub fn eval(&self, x: &[Rational; 4]) -> Rational {
        let mut s = self.constant.clone();
        for (l, v) in self.linear.iter().zip(x) {
            s += l * v;
        }
        for (i, j, q) in &self.quadratic {
            s += q * &x[*i] * &x[*j];
        }
        s
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Rational, String)> = Vec::new();
        for (i, j, q) in &self.quadratic {
            let name = if i == j {
                format!("{}^2", VARS[*i])
            } else {
                format!("{}*{}", VARS[*i], VARS[*j])
            };
            terms.push((q.clone(), name));
        }
        for (l, v) in self.linear.iter().zip(VARS) {
            terms.push((l.clone(), v.to_string()));
        }
        terms.push((self.constant.clone(), String::new()));
        let mut out = String::new();
        for (c, name) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
            let neg = c < Rational::zero();
            let a = if neg { -c } else { c };
            let body = match (a.is_one(), name.is_empty()) {
                (true, false) => name,
                (_, true) => rational_str(&a),
                (false, false) => format!("{}*{}", rational_str(&a), name),
            };
            out += &match (out.is_empty(), neg) {
                (true, false) => body,
                (true, true) => format!("-{body}"),
                (false, false) => format!(" + {body}"),
                (false, true) => format!(" - {body}"),
            };
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} = 0")
    }
}

/// Framed `GL₂` multiplicative Higgs fields with a zero of `det` at `z₁` and a pole at `z₂`:
/// `g(z) = (g_∞ z − g₀)/(z − z₂)` with `g₀` on a hyperplane section of a quadric.
#[derive(Clone, Debug, PartialEq)]
pub struct GL2MinusculeSpace {
    pub z1: Rational,
    pub z2: Rational,
    /// `(a_∞, b_∞, c_∞, d_∞)`.
    pub framing: [Rational; 4],
    pub linear_relation: Relation,
    pub quadric_relation: Relation,
}

pub fn gl2_minuscule_space(
    z1: Rational,
    z2: Rational,
    framing: [Rational; 4],
) -> Result<GL2MinusculeSpace> {
    if z1 == z2 {
        return Err(Error::CoincidentSingularities);
    }
    let [ai, bi, ci, di] = framing.clone();
    let det = &ai * &di - &bi * &ci;
    if det.is_zero() {
        return Err(Error::SingularFraming);
    }
    // −a₀d_∞ − a_∞d₀ + b₀c_∞ + b_∞c₀ = (−z₁ − z₂) det
    let linear_relation = Relation {
        linear: [-di, ci, bi, -ai],
        quadratic: Vec::new(),
        constant: (&z1 + &z2) * &det,
    };
    // a₀d₀ − b₀c₀ = z₁z₂ det
    let quadric_relation = Relation {
        linear: [int(0), int(0), int(0), int(0)],
        quadratic: vec![(0, 3, int(1)), (1, 2, int(-1))],
        constant: -(&z1 * &z2 * &det),
    };
    Ok(GL2MinusculeSpace {
        z1,
        z2,
        framing,
        linear_relation,
        quadric_relation,
    })
}

impl GL2MinusculeSpace {
    pub fn contains(&self, p: &[Rational; 4]) -> bool {
        self.linear_relation.eval(p).is_zero() && self.quadric_relation.eval(p).is_zero()
    }

    fn framing_matrix(&self) -> Matrix<Rational> {
        let [a, b, c, d] = self.framing.clone();
        Matrix::from_rows(vec![vec![a, b], vec![c, d]])
    }

    /// `g(z) = (g_∞ z − g₀)/(z − z₂)`; the point must lie on the variety.
    pub fn group_map(&self, p: &[Rational; 4]) -> Result<GroupRatMap> {
        if !self.contains(p) {
            return Err(Error::InvalidInput(
                "point is not on the moduli space".into(),
            ));
        }
        let inv = RatFunc::from_poly(Poly::linear(&self.z2)).inv()?;
        let gi = self.framing_matrix();
        let entry = |k: usize| {
            let num = Poly::new(vec![-p[k].clone(), gi.entries()[k].clone()]);
            RatFunc::from_poly(num) * inv.clone()
        };
        GroupRatMap::new(Matrix::from_rows(vec![
            vec![entry(0), entry(1)],
            vec![entry(2), entry(3)],
        ]))
    }

    /// The tangent vector `∂g/∂x` for a variation `δg₀` of the residue data.
    pub fn tangent(&self, g: &GroupRatMap, dg0: &[Rational; 4]) -> Result<TangentPair> {
        let inv = RatFunc::from_poly(Poly::linear(&self.z2)).inv()?;
        let dg = Matrix::from_fn(2, 2, |i, j| {
            inv.clone() * RatFunc::constant(-dg0[2 * i + j].clone())
        });
        TangentPair::from_variation(&dg, g)
    }
}

/// `a₀ = a, b₀ = b(m − a), c₀ = (m + a)/b, d₀ = −a`: a point of `a₀² + b₀c₀ = m²`, the
/// space for identity framing with `z₁ = −m`, `z₂ = m`.
pub fn darboux_chart(m: &Rational, a: &Rational, b: &Rational) -> Result<[Rational; 4]> {
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    Ok([a.clone(), b * (m - a), (m + a) / b, -a.clone()])
}

pub fn identity_framed_space(m: &Rational) -> Result<GL2MinusculeSpace> {
    gl2_minuscule_space(-m.clone(), m.clone(), [int(1), int(0), int(0), int(1)])
}

/// `{a, b}` through the chain rule from Sklyanin brackets of entry functions at the
/// auxiliary points `u ≠ v` (away from `±m`). Uses `g₀ = z − (z − m)g(z)` at any `z`.
pub fn darboux_bracket(
    m: &Rational,
    a: &Rational,
    b: &Rational,
    u: &Rational,
    v: &Rational,
) -> Result<Rational> {
    let space = identity_framed_space(m)?;
    let p = darboux_chart(m, a, b)?;
    let g = space.group_map(&p)?;
    // a₀ = u − (u − m) g₁₁(u), b₀ = −(v − m) g₁₂(v)
    let inner = sklyanin_bracket(
        &EvaluationFunction::entry(1, 1, u.clone()),
        &EvaluationFunction::entry(1, 2, v.clone()),
        &g,
    )?;
    let a0b0 = (u - m) * (v - m) * inner;
    // b = b₀/(m − a₀) and {a₀, a₀} = 0
    Ok(a0b0 / (m - a))
}

/// `Ω(∂/∂a, ∂/∂b)` at the chart point `(a, b)`.
pub fn darboux_omega(m: &Rational, a: &Rational, b: &Rational) -> Result<Rational> {
    let space = identity_framed_space(m)?;
    let g = space.group_map(&darboux_chart(m, a, b)?)?;
    let da = [int(1), -b.clone(), b.recip(), int(-1)];
    let db = [int(0), m - a, -(m + a) / (b * b), int(0)];
    omega_form(&space.tangent(&g, &da)?, &space.tangent(&g, &db)?, &g)
}

/// Characteristic-polynomial coefficients `e₁, …, e_n` of `g(z)` (trace first, det last).
pub fn hitchin_fibration(g: &GroupRatMap) -> Vec<RatFunc> {
    g.matrix.char_coeffs().into_iter().skip(1).collect()
}

/// `[[q/p₂, −p₁/p₂], [1, 0]]`.
pub fn hitchin_section_gl2(p1: &Poly, p2: &Poly, q: &Poly) -> Result<GroupRatMap> {
    let d = p1.degree();
    let monic = |p: &Poly| p.degree().is_some() && p.leading().is_one();
    if !monic(p1) || !monic(p2) || p2.degree() != d {
        return Err(Error::DegreeMismatch(
            "p₁ and p₂ must be monic of equal degree".into(),
        ));
    }
    if q.degree().is_some_and(|k| Some(k) >= d) {
        return Err(Error::DegreeMismatch("deg q must be below deg p₂".into()));
    }
    let den = RatFunc::from_poly(p2.clone()).inv()?;
    let m = Matrix::from_rows(vec![
        vec![
            RatFunc::from_poly(q.clone()) * den.clone(),
            -(RatFunc::from_poly(p1.clone()) * den),
        ],
        vec![RatFunc::one(), RatFunc::zero()],
    ]);
    GroupRatMap::new(m)
}

/// Regular semisimple for `GL_n`: the characteristic polynomial is squarefree.
pub fn check_framing(g_inf: &Matrix<Rational>) -> bool {
    let e = g_inf.char_coeffs();
    let n = e.len() - 1;
    let coeffs = (0..=n)
        .map(|j| {
            if (n - j).is_multiple_of(2) {
                e[n - j].clone()
            } else {
                -e[n - j].clone()
            }
        })
        .collect();
    Poly::new(coeffs).is_squarefree()
}
