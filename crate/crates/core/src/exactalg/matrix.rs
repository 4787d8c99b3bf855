use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;

use super::{int, Field, Rational, Ring};
use crate::error::{Error, Result};

/// Dense row-major square-or-rectangular matrix over a ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// The matrix unit `E_ij` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = T::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl FnMut(&T) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.clone() * o.clone() - o.clone() * self.clone()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| acc * self.clone())
    }

    /// `exp(c·N)` as the terminating series; errors unless `N^n = 0`.
    pub fn exp_nilpotent(c: &T, n: &Self) -> Result<Self> {
        let dim = n.rows;
        let cn = n.scale(c);
        let mut term = Self::identity(dim);
        let mut sum = Self::identity(dim);
        for k in 1..=dim {
            term = (term * cn.clone()).scale(&T::from_rational(&int(k as i64).recip()));
            if term.is_zero() {
                break;
            }
            sum = sum + term.clone();
        }
        if !n.pow(dim as u32).is_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(sum)
    }

    /// Elementary symmetric functions `e_0 = 1, e_1, ..., e_n` of the eigenvalues, via Newton's identities.
    pub fn char_coeffs(&self) -> Vec<T> {
        let n = self.rows;
        let mut p = Vec::with_capacity(n + 1);
        p.push(T::from_rational(&int(n as i64)));
        let mut pw = Self::identity(n);
        for _ in 1..=n {
            pw = pw * self.clone();
            p.push(pw.trace());
        }
        let mut e = vec![T::one()];
        for k in 1..=n {
            let mut s = T::zero();
            for i in 1..=k {
                let t = e[k - i].clone() * p[i].clone();
                s = if i % 2 == 1 { s + t } else { s - t };
            }
            e.push(s * T::from_rational(&int(k as i64).recip()));
        }
        e
    }

    /// Flatten to row-major rational matrix rows.
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data
            .chunks(self.cols.max(1))
            .map(|r| r.to_vec())
            .collect()
    }
}

impl<T: Field> Matrix<T> {
    /// Gaussian elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let s = a[(col, col)].try_inv()?;
            a.scale_row(col, &s);
            inv.scale_row(col, &s);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, col, &f);
                    inv.add_row_multiple(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> T {
        let n = self.rows;
        let mut a = self.clone();
        let mut d = T::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return T::zero();
            };
            if piv != col {
                a.swap_rows(col, piv);
                d = -d;
            }
            let p = a[(col, col)].clone();
            let pinv = p.try_inv().expect("nonzero pivot");
            d = d * p;
            for r in col + 1..n {
                if !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone() * pinv.clone();
                    a.add_row_multiple(r, col, &f);
                }
            }
        }
        d
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: &T) {
        for j in 0..self.cols {
            self[(r, j)] = s.clone() * self[(r, j)].clone();
        }
    }

    /// row[r] -= f * row[src]
    fn add_row_multiple(&mut self, r: usize, src: usize, f: &T) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone();
            self[(r, j)] = self[(r, j)].clone() - f.clone() * v;
        }
    }
}

/// Solve `A x = b` over a field; returns one solution or `None` when inconsistent.
pub fn solve_linear<T: Field>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug = Matrix::from_fn(m, n + 1, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !aug[(r, col)].is_zero()) else {
            continue;
        };
        aug.swap_rows(row, p);
        let s = aug[(row, col)].try_inv()?;
        aug.scale_row(row, &s);
        for r in 0..m {
            if r != row && !aug[(r, col)].is_zero() {
                let f = aug[(r, col)].clone();
                aug.add_row_multiple(r, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    if (row..m).any(|r| !aug[(r, n)].is_zero()) {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, n)].clone();
    }
    Some(x)
}

/// Rank over a field.
pub fn rank<T: Field>(a: &Matrix<T>) -> usize {
    let mut m = a.clone();
    let mut row = 0;
    for col in 0..m.cols() {
        let Some(p) = (row..m.rows()).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let s = m[(row, col)].try_inv().expect("nonzero pivot");
        m.scale_row(row, &s);
        for r in row + 1..m.rows() {
            if !m[(r, col)].is_zero() {
                let f = m[(r, col)].clone();
                m.add_row_multiple(r, row, &f);
            }
        }
        row += 1;
    }
    row
}

impl Matrix<Rational> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Add for Matrix<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .into_iter()
            .zip(o.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl<T: Ring> Sub for Matrix<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .into_iter()
            .zip(o.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl<T: Ring> Neg for Matrix<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Ring> Mul for Matrix<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn inverse_and_det() {
        let a = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), rat(18, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(a * inv, Matrix::identity(3));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn char_coeffs_match_det() {
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let e = a.char_coeffs();
        assert_eq!(e, vec![rat(1, 1), rat(5, 1), rat(-2, 1)]);
    }

    #[test]
    fn nilpotent_exponential() {
        let e = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let g = Matrix::exp_nilpotent(&rat(5, 1), &e).unwrap();
        assert_eq!(g, Matrix::from_ints(&[&[1, 5], &[0, 1]]));
        assert_eq!(
            Matrix::exp_nilpotent(&rat(1, 1), &Matrix::from_ints(&[&[1, 0], &[0, 0]])),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn linear_solve_and_rank() {
        let a = Matrix::from_ints(&[&[1, 2], &[2, 4], &[0, 1]]);
        let x = solve_linear(&a, &[rat(3, 1), rat(6, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1)]);
        assert!(solve_linear(&a, &[rat(3, 1), rat(7, 1), rat(1, 1)]).is_none());
        assert_eq!(rank(&a), 2);
    }
}
