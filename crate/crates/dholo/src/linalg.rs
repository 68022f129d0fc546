//! Exact linear algebra over Q and small univariate polynomial utilities over
//! Q. This is the workhorse behind the global-section solver, the coboundary
//! solver and the idempotent search in endomorphism algebras.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense matrix over Q in row-major Vec<Vec<_>> form; rows are equations.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: Vec<Vec<Q>>,
    pub cols: usize,
}

impl QMat {
    pub fn new(cols: usize) -> Self {
        QMat { rows: Vec::new(), cols }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols));
        QMat { rows, cols }
    }

    pub fn push_row(&mut self, row: Vec<Q>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (row..self.rows.len()).find(|&r| !self.rows[r][col].is_zero())
            else {
                continue;
            };
            self.rows.swap(row, pivot_row);
            let inv = {
                let p = &self.rows[row][col];
                Q::one() / p.clone()
            };
            for x in self.rows[row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..self.rows.len() {
                if r != row && !self.rows[r][col].is_zero() {
                    let factor = self.rows[r][col].clone();
                    for c in 0..self.cols {
                        let sub = &self.rows[row][c] * &factor;
                        self.rows[r][c] = &self.rows[r][c] - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows.len() {
                break;
            }
        }
        pivots
    }

    /// Basis of the right nullspace {x : A x = 0}.
    pub fn nullspace(mut self) -> Vec<Vec<Q>> {
        let pivots = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -self.rows[i][f].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b, if any.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows.len());
        let mut aug = QMat::new(self.cols + 1);
        for (row, rhs) in self.rows.iter().zip(b) {
            let mut r = row.clone();
            r.push(rhs.clone());
            aug.push_row(r);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.rows[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn rank(mut self) -> usize {
        self.rref().len()
    }
}

/// Univariate polynomial over Q, dense ascending coefficients, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly {
    pub coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![Q::one()] }
    }

    /// t − c
    pub fn linear(c: &Q) -> Self {
        QPoly::new(vec![-c.clone(), Q::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let lead = self.coeffs.last().unwrap().clone();
        QPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        self.add(&rhs.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }

    /// Euclidean division (quotient, remainder).
    pub fn div_rem(&self, rhs: &QPoly) -> (QPoly, QPoly) {
        assert!(!rhs.is_zero());
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(rhs.coeffs.len() - 1)];
        let dlead = rhs.coeffs.last().unwrap();
        while let Some(rdeg) = rem.degree() {
            let ddeg = rhs.degree().unwrap();
            if rdeg < ddeg {
                break;
            }
            let factor = rem.coeffs.last().unwrap() / dlead;
            let shift = rdeg - ddeg;
            quot[shift] = factor.clone();
            let mut t = vec![Q::zero(); shift];
            t.extend(rhs.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&QPoly::new(t));
        }
        (QPoly::new(quot), rem)
    }

    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) with u·self + v·rhs = g.
    pub fn xgcd(&self, rhs: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (QPoly::zero(), QPoly::zero(), QPoly::zero());
        }
        let lead = r0.coeffs.last().unwrap().clone();
        let inv = Q::one() / lead;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &q_int(i as i64 + 1))
                .collect(),
        )
    }

    /// All rational roots with multiplicity, by the rational root theorem on
    /// the integer-cleared polynomial.
    pub fn rational_roots(&self) -> Vec<(Q, usize)> {
        let Some(deg) = self.degree() else { return vec![] };
        if deg == 0 {
            return vec![];
        }
        // Clear denominators.
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm_bigint(&lcm, c.denom());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        // Strip t^k.
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
        let mut roots: Vec<(Q, usize)> = Vec::new();
        if shift > 0 {
            roots.push((Q::zero(), shift));
        }
        let ints = &ints[shift..];
        if ints.len() <= 1 {
            return roots;
        }
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sign in [1i64, -1] {
                    let cand = Q::new(&p * BigInt::from(sign), q.clone());
                    if self.eval(&cand).is_zero() && !roots.iter().any(|(r, _)| *r == cand) {
                        // Multiplicity by repeated division.
                        let mut mult = 0;
                        let mut cur = self.clone();
                        let lin = QPoly::linear(&cand);
                        loop {
                            let (qt, rem) = cur.div_rem(&lin);
                            if rem.is_zero() {
                                mult += 1;
                                cur = qt;
                            } else {
                                break;
                            }
                        }
                        roots.push((cand, mult));
                    }
                }
            }
        }
        roots
    }
}

fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / gcd_bigint(a, b)
}

fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Desk-scale: the constants come from random small rationals.
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        // x + y = 0 in 3 unknowns: nullity 2
        let m = QMat::from_rows(vec![vec![q_int(1), q_int(1), q_int(0)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((v[0].clone() + v[1].clone()).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMat::from_rows(vec![vec![q_int(1), q_int(1)], vec![q_int(1), q_int(-1)]]);
        let x = m.solve(&[q_int(3), q_int(1)]).unwrap();
        assert_eq!(x, vec![q_int(2), q_int(1)]);
        let m2 = QMat::from_rows(vec![vec![q_int(1), q_int(1)], vec![q_int(2), q_int(2)]]);
        assert!(m2.solve(&[q_int(0), q_int(1)]).is_none());
    }

    #[test]
    fn poly_xgcd() {
        // (t−1) and (t−2) are coprime
        let a = QPoly::linear(&q_int(1));
        let b = QPoly::linear(&q_int(2));
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(u.mul(&a).add(&v.mul(&b)), QPoly::one());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (t − 1/2)²(t + 3)
        let p = QPoly::linear(&Q::new(BigInt::from(1), BigInt::from(2)));
        let p = p.mul(&p).mul(&QPoly::linear(&q_int(-3)));
        let mut roots = p.rational_roots();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            roots,
            vec![(q_int(-3), 1), (Q::new(BigInt::from(1), BigInt::from(2)), 2)]
        );
    }
}
