//! Small dense matrices over the coefficient types used by the engine.

use std::fmt::Debug;

use num_complex::Complex64;

use crate::algebra::Algebra;
use crate::report::Residual;
use crate::scalar::{ExactScalar, QISqrt2, Rational};

/// Ring operations shared by matrix entry types.
pub trait Coeff: Clone + PartialEq + Send + Sync + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Size used for tolerance checks; `0` or `1` for exact types.
    fn magnitude(&self) -> f64;
    fn text(&self) -> String;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn from_sign(s: i8) -> Self {
        if s < 0 {
            Self::one().neg()
        } else {
            Self::one()
        }
    }
}

/// Entry types that can be obtained by evaluating an exact scalar at `q`.
pub trait Evaluate: Coeff {
    fn evaluate(c: &ExactScalar, q: &Rational) -> Option<Self>;
}

/// Fields with exact division, for elimination.
pub trait ExactField: Coeff {
    fn inv(&self) -> Option<Self>;
}

impl Coeff for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn add(&self, o: &Self) -> Self {
        ExactScalar::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ExactScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        ExactScalar::neg(self)
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn text(&self) -> String {
        self.to_text()
    }
}

impl Coeff for QISqrt2 {
    fn zero() -> Self {
        QISqrt2::zero()
    }
    fn one() -> Self {
        QISqrt2::one()
    }
    fn add(&self, o: &Self) -> Self {
        QISqrt2::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QISqrt2::mul(self, o)
    }
    fn neg(&self) -> Self {
        QISqrt2::neg(self)
    }
    fn conj(&self) -> Self {
        QISqrt2::conj(self)
    }
    fn is_zero(&self) -> bool {
        QISqrt2::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn text(&self) -> String {
        self.to_text()
    }
}

impl Evaluate for QISqrt2 {
    fn evaluate(c: &ExactScalar, q: &Rational) -> Option<Self> {
        c.eval_at_q(q)
    }
}

impl ExactField for QISqrt2 {
    fn inv(&self) -> Option<Self> {
        QISqrt2::inv(self)
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn text(&self) -> String {
        format!("{:.12e}{:+.12e}i", self.re, self.im)
    }
}

impl Evaluate for Complex64 {
    fn evaluate(c: &ExactScalar, q: &Rational) -> Option<Self> {
        Some(c.eval(q.to_f64()))
    }
}

/// Square dense matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Coeff> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(dim: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        DenseMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.dim + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &T) {
        let idx = r * self.dim + c;
        self.data[idx] = self.data[idx].add(v);
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        DenseMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        DenseMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        DenseMatrix { dim: self.dim, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = &self.data[r * d + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = &o.data[k * d + c];
                    if !b.is_zero() {
                        out.add_at(r, c, &a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    /// Kronecker product with `self` as the major index.
    pub fn kron(&self, o: &Self) -> Self {
        let (a, b) = (self.dim, o.dim);
        Self::from_fn(a * b, |r, c| self.get(r / b, c / b).mul(o.get(r % b, c % b)))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn nonzero_count(&self, tol: f64) -> usize {
        self.data.iter().filter(|x| x.magnitude() > tol).count()
    }

    /// Restriction to the rows and columns in `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |r, c| self.get(idx[r], idx[c]).clone())
    }

    pub fn map<U: Coeff, F: Fn(&T) -> U>(&self, f: F) -> DenseMatrix<U> {
        DenseMatrix { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).text()).collect();
            s.push_str(&row.join("\t"));
            s.push('\n');
        }
        s
    }
}

impl DenseMatrix<ExactScalar> {
    /// Evaluates every entry at `q`; `None` if some entry cannot be evaluated.
    pub fn evaluate<T: Evaluate>(&self, q: &Rational) -> Option<DenseMatrix<T>> {
        let data = self.data.iter().map(|x| T::evaluate(x, q)).collect::<Option<Vec<T>>>()?;
        Some(DenseMatrix { dim: self.dim, data })
    }

    pub fn eval_complex(&self, q: f64) -> DenseMatrix<Complex64> {
        self.map(|x| x.eval(q))
    }
}

impl DenseMatrix<Complex64> {
    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| *self.get(r, c))
    }
}

/// Rank of a list of vectors by exact Gaussian elimination.
pub fn rank<T: ExactField>(rows: &[Vec<T>]) -> usize {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        let pivot: Vec<T> = m[rank].iter().map(|x| x.mul(&inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for c in col..cols {
                    row[c] = row[c].sub(&f.mul(&pivot[c]));
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Matrix image sampled at a rational `q`, usable wherever an [`Algebra`] is.
#[derive(Clone, Debug)]
pub struct Sampled<T: Coeff> {
    pub q: Rational,
    /// Entries with magnitude at or below `tol` count as zero.
    pub tol: f64,
    pub m: DenseMatrix<T>,
}

impl<T: Evaluate> Algebra for Sampled<T> {
    fn add(&self, o: &Self) -> Self {
        Sampled { q: self.q.clone(), tol: self.tol, m: self.m.add(&o.m) }
    }

    fn mul(&self, o: &Self) -> Self {
        Sampled { q: self.q.clone(), tol: self.tol, m: self.m.mul(&o.m) }
    }

    fn scale(&self, c: &ExactScalar) -> Self {
        let v = T::evaluate(c, &self.q).expect("scalar evaluable at the sample point");
        Sampled { q: self.q.clone(), tol: self.tol, m: self.m.scale(&v) }
    }

    fn one_like(&self) -> Self {
        Sampled { q: self.q.clone(), tol: self.tol, m: DenseMatrix::identity(self.m.dim()) }
    }

    fn residual(&self) -> Residual {
        let count = self.m.nonzero_count(self.tol);
        let worst = self.m.max_magnitude();
        let witness = (count > 0).then(|| {
            let idx = self.m.entries().iter().position(|x| x.magnitude() > self.tol).unwrap_or(0);
            let d = self.m.dim();
            format!("entry ({}, {}) = {}", idx / d, idx % d, self.m.entries()[idx].text())
        });
        Residual {
            zero: count == 0,
            terms: count,
            text: if count == 0 { "0".into() } else { format!("max|entry|={worst:e}") },
            witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let r = |v: &[i64]| v.iter().map(|x| QISqrt2::int(*x)).collect::<Vec<_>>();
        assert_eq!(rank(&[r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[0, 1, 1])]), 2);
        assert_eq!(rank::<QISqrt2>(&[]), 0);
    }

    #[test]
    fn kron_major_index_is_left() {
        let a = DenseMatrix::<QISqrt2>::from_fn(2, |r, c| QISqrt2::int((r * 2 + c) as i64));
        let id = DenseMatrix::<QISqrt2>::identity(2);
        let k = a.kron(&id);
        assert_eq!(k.get(2, 0), &QISqrt2::int(2));
        assert_eq!(k.get(1, 0), &QISqrt2::zero());
    }
}
