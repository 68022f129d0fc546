//! Small dense matrices over the engine's coefficient rings. Ranks here are
//! bundle ranks (≤ a handful), so naive algorithms are the right tool.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{Arg, HalfFn, LaurentPoly};
use crate::scalar::GaussianRational;
use crate::smoothfn::SmoothFn;

/// The ring interface the matrix algebra needs.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl Ring for HalfFn {
    fn zero() -> Self {
        HalfFn::zero()
    }
    fn one() -> Self {
        HalfFn::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        HalfFn::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        HalfFn::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        HalfFn::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        HalfFn::neg(self)
    }
    fn is_zero(&self) -> bool {
        HalfFn::is_zero(self)
    }
}

impl Ring for SmoothFn {
    fn zero() -> Self {
        SmoothFn::zero()
    }
    fn one() -> Self {
        SmoothFn::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        SmoothFn::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        SmoothFn::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        SmoothFn::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        SmoothFn::neg(self)
    }
    fn is_zero(&self) -> bool {
        SmoothFn::is_zero(self)
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn scalar(n: usize, t: T) -> Self {
        Mat::from_fn(n, n, |r, c| if r == c { t.clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|t| t.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat::from_fn(self.rows, self.cols, |r, c| f(self.at(r, c)))
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).add(rhs.at(r, c)))
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).sub(rhs.at(r, c)))
    }

    pub fn neg(&self) -> Mat<T> {
        self.map(|t| t.neg())
    }

    pub fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        Mat::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(r, k).mul(rhs.at(k, c)));
            }
            acc
        })
    }

    pub fn scale(&self, t: &T) -> Mat<T> {
        self.map(|x| x.mul(t))
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Laplace-expansion determinant; fine at bundle ranks.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        match n {
            0 => T::one(),
            1 => self.at(0, 0).clone(),
            _ => {
                let mut acc = T::zero();
                for c in 0..n {
                    let minor = Mat::from_fn(n - 1, n - 1, |i, j| {
                        self.at(i + 1, if j < c { j } else { j + 1 }).clone()
                    });
                    let term = self.at(0, c).mul(&minor.det());
                    acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    /// Transposed cofactor matrix, so self · adjugate = det · identity.
    pub fn adjugate(&self) -> Mat<T> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Mat::identity(0);
        }
        if n == 1 {
            return Mat::identity(1);
        }
        Mat::from_fn(n, n, |r, c| {
            // cofactor C_{c,r} for the transpose
            let minor = Mat::from_fn(n - 1, n - 1, |i, j| {
                self.at(if i < c { i } else { i + 1 }, if j < r { j } else { j + 1 })
                    .clone()
            });
            let d = minor.det();
            if (r + c) % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Mat<T>) -> Mat<T> {
        Mat::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self.at(r / rhs.rows, c / rhs.cols).mul(rhs.at(r % rhs.rows, c % rhs.cols))
        })
    }

    /// Block diagonal of two square matrices.
    pub fn block_diag(&self, rhs: &Mat<T>) -> Mat<T> {
        let (n, m) = (self.rows, rhs.rows);
        assert!(self.is_square() && rhs.is_square());
        Mat::from_fn(n + m, n + m, |r, c| {
            if r < n && c < n {
                self.at(r, c).clone()
            } else if r >= n && c >= n {
                rhs.at(r - n, c - n).clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }
}

impl Mat<HalfFn> {
    /// Inverse of a cocycle block: requires det to be an invertible monomial,
    /// which is exactly the engine's invertibility criterion for transition
    /// matrices.
    pub fn inverse_monomial_det(&self) -> Result<Mat<HalfFn>> {
        let det = self.det();
        let det_inv = det.inverse_monomial().map_err(|_| {
            Error::InvalidBundle(format!("determinant {det:?} is not an invertible monomial"))
        })?;
        Ok(self.adjugate().scale(&det_inv))
    }

    pub fn conj(&self) -> Mat<HalfFn> {
        self.map(|h| h.conj())
    }

    /// Entrywise plain-Laurent view; errors if any entry depends on z̄.
    pub fn expect_z(&self) -> Result<Mat<LaurentPoly>> {
        let mut out = Mat::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r, c).expect_z()?.clone();
            }
        }
        Ok(out)
    }
}

impl Mat<LaurentPoly> {
    pub fn conj_coeffs(&self) -> Mat<LaurentPoly> {
        self.map(|p| p.conj_coeffs())
    }

    pub fn as_half(&self, arg: Arg) -> Mat<HalfFn> {
        self.map(|p| HalfFn::new(p.clone(), arg))
    }

    pub fn derive(&self) -> Mat<LaurentPoly> {
        self.map(|p| p.derive())
    }
}

impl Mat<SmoothFn> {
    pub fn conj(&self) -> Mat<SmoothFn> {
        self.map(|f| f.conj())
    }

    pub fn del_z(&self) -> Mat<SmoothFn> {
        self.map(|f| f.del_z())
    }

    pub fn del_zbar(&self) -> Mat<SmoothFn> {
        self.map(|f| f.del_zbar())
    }

    pub fn subst_map(&self, map: &crate::laurent::MonomialMap) -> Mat<SmoothFn> {
        self.map(|f| f.subst_map(map))
    }

    /// Field inverse via adjugate / det.
    pub fn inverse(&self) -> Result<Mat<SmoothFn>> {
        let det = self.det();
        let det_inv = det.inv()?;
        Ok(self.adjugate().scale(&det_inv))
    }

    pub fn conj_transpose(&self) -> Mat<SmoothFn> {
        self.transpose().conj()
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:?}", self.data[r * self.cols + c])?;
                if c + 1 < self.cols {
                    write!(f, ", ")?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as GQ;

    #[test]
    fn det_and_adjugate() {
        let m = Mat::from_rows(vec![
            vec![GQ::from_int(1), GQ::from_int(2)],
            vec![GQ::from_int(3), GQ::from_int(4)],
        ]);
        assert_eq!(m.det(), GQ::from_int(-2));
        let adj = m.adjugate();
        let prod = m.mul(&adj);
        assert_eq!(prod, Mat::scalar(2, GQ::from_int(-2)));
    }

    #[test]
    fn halffn_matrix_inverse() {
        use crate::laurent::{Arg, HalfFn, LaurentPoly};
        let z = HalfFn::new(LaurentPoly::var(), Arg::Z);
        let m = Mat::from_rows(vec![
            vec![z.clone(), HalfFn::one()],
            vec![HalfFn::zero(), z.clone()],
        ]);
        let inv = m.inverse_monomial_det().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }
}
