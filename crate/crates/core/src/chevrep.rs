//! Exact Chevalley generators in small faithful representations, and the group elements
//! built from them: unipotent exponentials, Weyl representatives, cocharacters.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{
    int, rational_str, Matrix, RatFunc, Rational, Ring, ShiftMonomial, ShiftPoly, ShiftSymbol,
};
use crate::rootdata::{DynkinType, RootSystem, Series};

/// How coweights pair with basis vectors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoweightBasis {
    /// Coweights in fundamental-coweight coordinates, paired through the Cartan matrix.
    Fundamental,
    /// `GL(n)`: coweights are the diagonal exponents themselves.
    Diagonal,
}

#[derive(Clone, Debug)]
pub struct ChevalleyRep {
    pub root_system: RootSystem,
    pub e: Vec<Matrix<Rational>>,
    pub f: Vec<Matrix<Rational>>,
    pub h: Vec<Matrix<Rational>>,
    /// Weight of each basis vector in fundamental-weight coordinates.
    pub weights: Vec<Vec<i64>>,
    /// Root vectors `e_α`, aligned with `root_system.positive_roots`.
    pub root_vectors: Vec<Matrix<Rational>>,
    pub coweights: CoweightBasis,
}

fn unit(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    Matrix::unit(n, i - 1, j - 1)
}

impl ChevalleyRep {
    fn from_e(rs: RootSystem, e: Vec<Matrix<Rational>>, coweights: CoweightBasis) -> Self {
        let f: Vec<_> = e.iter().map(Matrix::transpose).collect();
        let h: Vec<_> = e.iter().zip(&f).map(|(a, b)| a.commutator(b)).collect();
        let dim = e[0].rows();
        let weights = (0..dim)
            .map(|k| {
                h.iter()
                    .map(|hi| hi[(k, k)].to_integer().try_into().expect("small"))
                    .collect()
            })
            .collect();
        let root_vectors = root_vectors(&rs, &e);
        ChevalleyRep {
            root_system: rs,
            e,
            f,
            h,
            weights,
            root_vectors,
            coweights,
        }
    }

    /// Defining `(n+1)`-dimensional representation of `A_n`.
    pub fn defining_a(n: usize) -> Self {
        let rs = RootSystem::new(DynkinType::a(n)).expect("valid type");
        let e = (1..=n).map(|i| unit(n + 1, i, i + 1)).collect();
        Self::from_e(rs, e, CoweightBasis::Fundamental)
    }

    /// Defining representation of `GL(n)`; coweights are diagonal exponent vectors.
    pub fn gl(n: usize) -> Self {
        let mut r = Self::defining_a(n - 1);
        r.coweights = CoweightBasis::Diagonal;
        r
    }

    /// `2n`-dimensional vector representation of `D_n` with `k̄ = 2n+1−k`: basis vector
    /// `k ≤ n` has weight `ε_k`, and `k̄` has weight `−ε_k`.
    pub fn vector_d(n: usize) -> Self {
        let rs = RootSystem::new(DynkinType::d(n)).expect("valid type");
        let dim = 2 * n;
        let bar = |k: usize| dim + 1 - k;
        let mut e: Vec<Matrix<Rational>> = (1..n)
            .map(|i| unit(dim, i, i + 1) - unit(dim, bar(i + 1), bar(i)))
            .collect();
        e.push(unit(dim, n - 1, bar(n)) - unit(dim, n, bar(n - 1)));
        Self::from_e(rs, e, CoweightBasis::Fundamental)
    }

    /// Standard representation for a type: defining for `A_n`, vector for `D_n`.
    pub fn standard(ty: DynkinType) -> Result<Self> {
        match ty.series {
            Series::A => Ok(Self::defining_a(ty.rank)),
            Series::D => Ok(Self::vector_d(ty.rank)),
            Series::GL => Ok(Self::gl(ty.rank)),
            Series::E => Err(Error::UnsupportedType(format!(
                "no matrix representation for {ty}"
            ))),
        }
    }

    /// Relabel nodes by a diagram automorphism: generator `i` of the result is generator
    /// `perm[i]` of `self`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let c = &self.root_system.cartan;
        let r = c.len();
        let ok = perm.len() == r && (0..r).all(|i| (0..r).all(|j| c[perm[i]][perm[j]] == c[i][j]));
        if !ok {
            return Err(Error::InvalidInput(format!(
                "{perm:?} is not a diagram automorphism"
            )));
        }
        let e = perm.iter().map(|&p| self.e[p].clone()).collect();
        Ok(Self::from_e(self.root_system.clone(), e, self.coweights))
    }

    pub fn dim(&self) -> usize {
        self.e[0].rows()
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// Checks `[h_i,e_j] = A_ij e_j`, `[h_i,f_j] = −A_ij f_j`, `[e_i,f_j] = δ_ij h_i`,
    /// the Serre relations, and nilpotency of every `e_i`, `f_i`.
    pub fn check_relations(&self) -> bool {
        let a = &self.root_system.cartan;
        let r = self.rank();
        let zero = Matrix::zeros(self.dim(), self.dim());
        for i in 0..r {
            for j in 0..r {
                let aij = int(a[i][j]);
                if self.h[i].commutator(&self.e[j]) != self.e[j].scale(&aij)
                    || self.h[i].commutator(&self.f[j]) != self.f[j].scale(&-aij)
                {
                    return false;
                }
                let ef = self.e[i].commutator(&self.f[j]);
                if (i == j && ef != self.h[i]) || (i != j && ef != zero) {
                    return false;
                }
                if i != j {
                    let times = (1 - a[i][j]) as usize;
                    let (mut x, mut y) = (self.e[j].clone(), self.f[j].clone());
                    for _ in 0..times {
                        x = self.e[i].commutator(&x);
                        y = self.f[i].commutator(&y);
                    }
                    if !x.is_zero() || !y.is_zero() {
                        return false;
                    }
                }
            }
            let d = self.dim() as u32;
            if !self.e[i].pow(d).is_zero() || !self.f[i].pow(d).is_zero() {
                return false;
            }
        }
        true
    }

    /// `σ_i = exp(−e_i)·exp(f_i)·exp(−e_i)`; in the 2-dimensional `A_1` representation
    /// this is `[[0,−1],[1,0]]`.
    pub fn weyl_representative(&self, i: usize) -> Matrix<Rational> {
        let m = -Rational::one();
        let a = Matrix::exp_nilpotent(&m, &self.e[i]).expect("nilpotent");
        let b = Matrix::exp_nilpotent(&Rational::one(), &self.f[i]).expect("nilpotent");
        a.clone() * b * a
    }

    /// Exponents `⟨λ∨, μ_k⟩` of the cocharacter on each basis vector.
    pub fn cocharacter_exponents(&self, coweight: &[Rational]) -> Vec<Rational> {
        match self.coweights {
            CoweightBasis::Diagonal => coweight.to_vec(),
            CoweightBasis::Fundamental => self
                .weights
                .iter()
                .map(|w| {
                    let w: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
                    self.root_system.pair(coweight, &w)
                })
                .collect(),
        }
    }

    /// `sym^{λ∨}` over the shift ring; half-integral powers are only allowed for `P` symbols.
    pub fn cocharacter_symbol(
        &self,
        coweight: &[Rational],
        sym: ShiftSymbol,
    ) -> Result<Matrix<ShiftPoly>> {
        let entries = self
            .cocharacter_exponents(coweight)
            .into_iter()
            .map(|x| {
                let twice = x * int(2);
                if !twice.is_integer() {
                    return Err(Error::NonIntegralExponent(format!("{sym}")));
                }
                let e2: i32 = twice.to_integer().try_into().expect("small");
                Ok(ShiftPoly::monomial(ShiftMonomial::power2(sym, e2)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::diagonal(entries))
    }

    /// `sym^{λ∨}` times the central scalar that makes the first basis vector's exponent
    /// zero. All exponents of an irreducible representation agree mod 1, so the result is
    /// integral even when `λ∨` is not a cocharacter of the simply connected group.
    pub fn cocharacter_symbol_lifted(
        &self,
        coweight: &[Rational],
        sym: ShiftSymbol,
    ) -> Result<Matrix<ShiftPoly>> {
        let ex = self.cocharacter_exponents(coweight);
        let base = ex.first().cloned().unwrap_or_default();
        let entries = ex
            .into_iter()
            .map(|x| {
                let x = x - &base;
                if !x.is_integer() {
                    return Err(Error::NonIntegralExponent(format!("{sym}")));
                }
                Ok(ShiftPoly::monomial(ShiftMonomial::power(
                    sym,
                    x.to_integer().try_into().expect("small"),
                )))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::diagonal(entries))
    }

    /// `s^{λ∨}` for a rational function `s`; requires integral exponents.
    pub fn cocharacter_ratfunc(
        &self,
        coweight: &[Rational],
        s: &RatFunc,
    ) -> Result<Matrix<RatFunc>> {
        let entries = self
            .cocharacter_exponents(coweight)
            .into_iter()
            .map(|x| {
                if s.is_one() {
                    return Ok(RatFunc::one());
                }
                if !x.is_integer() {
                    return Err(Error::NonIntegralExponent(rational_str(&x)));
                }
                s.pow(x.to_integer().try_into().expect("small"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::diagonal(entries))
    }

    /// Whether `x` lies in the weight space of the root (or weight) `beta`, given in
    /// fundamental-weight coordinates: entries `(a,b)` vanish unless `μ_a − μ_b = beta`.
    pub fn in_weight_space(&self, x: &Matrix<Rational>, beta: &[i64]) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                x[(a, b)].is_zero()
                    || self.weights[a]
                        .iter()
                        .zip(&self.weights[b])
                        .map(|(p, q)| p - q)
                        .eq(beta.iter().copied())
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mat = |m: &Matrix<Rational>| {
            serde_json::Value::Array(
                m.to_rows()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| serde_json::Value::String(rational_str(x)))
                            .collect()
                    })
                    .collect(),
            )
        };
        serde_json::json!({
            "type": self.root_system.ty.to_string(),
            "dim": self.dim(),
            "e": self.e.iter().map(mat).collect::<Vec<_>>(),
            "f": self.f.iter().map(mat).collect::<Vec<_>>(),
            "h": self.h.iter().map(mat).collect::<Vec<_>>(),
            "weights": self.weights,
        })
    }
}

/// `e_α` built as iterated commutators `[e_β, e_i]` with `α = β + α_i`, taking the
/// smallest admissible `i`.
fn root_vectors(rs: &RootSystem, e: &[Matrix<Rational>]) -> Vec<Matrix<Rational>> {
    let mut out: Vec<Matrix<Rational>> = Vec::with_capacity(rs.positive_roots.len());
    for (k, alpha) in rs.positive_roots.iter().enumerate() {
        if RootSystem::height(alpha) == 1 {
            let i = alpha.iter().position(|&c| c == 1).expect("simple");
            out.push(e[i].clone());
            continue;
        }
        let (i, j) = (0..alpha.len())
            .find_map(|i| {
                let mut beta = alpha.clone();
                beta[i] -= 1;
                rs.positive_roots[..k]
                    .iter()
                    .position(|b| *b == beta)
                    .map(|j| (i, j))
            })
            .expect("every non-simple root has a predecessor");
        out.push(out[j].commutator(&e[i]));
    }
    out
}

/// `exp(c·N)` for a rational nilpotent `N` over any coefficient ring.
pub fn exp_nilpotent<R: Ring>(c: &R, n: &Matrix<Rational>) -> Result<Matrix<R>> {
    Matrix::exp_nilpotent(c, &n.map(R::from_rational))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn shipped_reps_satisfy_relations() {
        for n in 1..=8 {
            assert!(ChevalleyRep::defining_a(n).check_relations(), "A{n}");
        }
        let d4 = ChevalleyRep::vector_d(4);
        assert!(d4.check_relations());
        assert_eq!(d4.e[3], unit(8, 3, 5) - unit(8, 4, 6));
        assert!(d4.relabeled(&[2, 1, 0, 3]).unwrap().check_relations());
        assert!(d4.relabeled(&[1, 0, 2, 3]).is_err());
    }

    #[test]
    fn a1_weyl_representative() {
        let r = ChevalleyRep::defining_a(1);
        let s = r.weyl_representative(0);
        assert_eq!(s, Matrix::from_ints(&[&[0, -1], &[1, 0]]));
        assert_eq!(s.pow(4), Matrix::identity(2));
        let t = Matrix::diagonal(vec![rat(3, 1), rat(-2, 7)]);
        let conj = s.clone() * t * s.inverse().unwrap();
        assert!(conj.is_diagonal());
    }

    #[test]
    fn exponential_examples() {
        let r = ChevalleyRep::defining_a(1);
        let g = exp_nilpotent(&rat(5, 2), &r.e[0]).unwrap();
        assert_eq!(
            g,
            Matrix::from_rows(vec![vec![rat(1, 1), rat(5, 2)], vec![rat(0, 1), rat(1, 1)]])
        );
        assert_eq!(
            exp_nilpotent(&rat(0, 1), &r.e[0]).unwrap(),
            Matrix::identity(2)
        );
    }

    #[test]
    fn root_vectors_live_in_root_spaces() {
        for rep in [ChevalleyRep::vector_d(4), ChevalleyRep::defining_a(3)] {
            for (beta, x) in rep.root_system.positive_roots.iter().zip(&rep.root_vectors) {
                assert!(!x.is_zero());
                assert!(rep.in_weight_space(x, &rep.root_system.root_as_weight(beta)));
            }
        }
    }

    #[test]
    fn d4_half_integral_cocharacter() {
        let r = ChevalleyRep::vector_d(4);
        let w3 = vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)];
        let ex = r.cocharacter_exponents(&w3);
        assert!(ex.iter().all(|x| *x == rat(1, 2) || *x == rat(-1, 2)));
        assert!(r.cocharacter_symbol(&w3, ShiftSymbol::p(3, 0)).is_ok());
        assert_eq!(
            r.cocharacter_symbol(&w3, ShiftSymbol::y(3, 0)).unwrap_err(),
            Error::FractionalExponentOutsideP("Y(3,0)".into())
        );
    }

    #[test]
    fn gl2_cocharacter() {
        let r = ChevalleyRep::gl(2);
        let g = r
            .cocharacter_ratfunc(&[rat(1, 1), rat(0, 1)], &RatFunc::z())
            .unwrap();
        assert_eq!(g, Matrix::diagonal(vec![RatFunc::z(), RatFunc::one()]));
    }
}
