//! Rational bigraded functions in (z, z̄): the exact stand-in for d-smooth
//! local data. Numerator and denominator are finitely supported maps
//! (k, l) ↦ coefficient of z^k z̄^l; arithmetic, ∂/∂z, ∂/∂z̄ and conjugation
//! are all exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{Arg, HalfFn, LaurentPoly, MonomialMap};
use crate::scalar::GaussianRational;

/// A bigraded Laurent polynomial Σ c_{k,l} z^k z̄^l.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: BTreeMap<(i64, i64), GaussianRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::term(0, 0, GaussianRational::one())
    }

    pub fn term(k: i64, l: i64, c: GaussianRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((k, l), c);
        }
        BiPoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64, GaussianRational)>) -> Self {
        let mut p = BiPoly::zero();
        for (k, l, c) in terms {
            p.add_term(k, l, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, l: i64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((k, l)).or_insert_with(GaussianRational::zero);
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&(k, l));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((k, l), c) in &rhs.coeffs {
            out.add_term(*k, *l, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((k1, l1), c1) in &self.coeffs {
            for ((k2, l2), c2) in &rhs.coeffs {
                out.add_term(k1 + k2, l1 + l2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Formal ∂/∂z.
    pub fn del_z(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((k, l), c) in &self.coeffs {
            out.add_term(k - 1, *l, c * &GaussianRational::from_int(*k));
        }
        out
    }

    /// Formal ∂/∂z̄.
    pub fn del_zbar(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((k, l), c) in &self.coeffs {
            out.add_term(*k, l - 1, c * &GaussianRational::from_int(*l));
        }
        out
    }

    /// Complex conjugation: swaps the bidegrees and conjugates coefficients.
    pub fn conj(&self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|((k, l), c)| ((*l, *k), c.conj())).collect(),
        }
    }

    fn min_exps(&self) -> Option<(i64, i64)> {
        let mut it = self.coeffs.keys();
        let first = *it.next()?;
        Some(self.coeffs.keys().fold(first, |(ak, al), (k, l)| (ak.min(*k), al.min(*l))))
    }

    fn shift(&self, dk: i64, dl: i64) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|((k, l), c)| ((k + dk, l + dl), c.clone())).collect(),
        }
    }

    /// Leading term under lexicographic order on (k, l).
    fn leading(&self) -> Option<((i64, i64), &GaussianRational)> {
        self.coeffs.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact division self / rhs in the bigraded Laurent ring; None when the
    /// quotient is not polynomial.
    pub fn div_exact(&self, rhs: &BiPoly) -> Option<BiPoly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let ((dk, dl), dc) = rhs.leading().unwrap();
        let dinv = dc.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        // In the Laurent ring every monomial divides every monomial, so the
        // division loop is driven purely by leading-term cancellation; it
        // terminates because the leading exponent strictly decreases.
        let mut steps = 0usize;
        while let Some(((rk, rl), rc)) = rem.leading() {
            let t = BiPoly::term(rk - dk, rl - dl, rc * &dinv);
            quot = quot.add(&t);
            rem = rem.add(&t.mul(rhs).neg());
            steps += 1;
            // Non-exact Laurent division descends forever; cut it off well
            // beyond any quotient size this engine produces.
            if steps > 10_000 {
                return None;
            }
        }
        Some(quot)
    }

    pub fn from_laurent(p: &LaurentPoly, arg: Arg) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e, c) in p.terms() {
            match arg {
                Arg::Z => out.add_term(*e, 0, c.clone()),
                Arg::ZBar => out.add_term(0, *e, c.clone()),
            }
        }
        out
    }

    /// Substitute the chart transition (z ↦ map) into the polynomial.
    pub fn subst_map(&self, map: &MonomialMap) -> BiPoly {
        let e = map.exp as i64;
        let mut out = BiPoly::zero();
        for ((k, l), c) in &self.coeffs {
            let factor = &map.coeff.pow(*k).expect("invertible")
                * &map.coeff.conj().pow(*l).expect("invertible");
            let (nk, nl) = if map.conjugated {
                (e * l, e * k)
            } else {
                (e * k, e * l)
            };
            out.add_term(nk, nl, &factor * c);
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((k, l), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} * z^{k} zb^{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A rational bigraded function num/den, den ≢ 0. Equality is decided by
/// cross-multiplication, so representatives need not be reduced; arithmetic
/// still strips common monomial factors to keep supports small.
#[derive(Clone)]
pub struct SmoothFn {
    num: BiPoly,
    den: BiPoly,
}

impl SmoothFn {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivZero);
        }
        Ok(SmoothFn { num, den }.reduce())
    }

    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den = BiPoly::one();
            return self;
        }
        // Strip the common monomial factor z^k z̄^l.
        let (nk, nl) = self.num.min_exps().unwrap();
        let (dk, dl) = self.den.min_exps().unwrap();
        let (ck, cl) = (nk.min(dk), nl.min(dl));
        if ck != 0 || cl != 0 {
            self.num = self.num.shift(-ck, -cl);
            self.den = self.den.shift(-ck, -cl);
        }
        // Cancel the full denominator when the division is exact.
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = BiPoly::one();
        }
        self
    }

    pub fn zero() -> Self {
        SmoothFn { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        SmoothFn { num: BiPoly::one(), den: BiPoly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        SmoothFn { num: BiPoly::term(0, 0, c), den: BiPoly::one() }
    }

    /// The monomial z^k z̄^l.
    pub fn monomial(k: i64, l: i64) -> Self {
        SmoothFn { num: BiPoly::term(k, l, GaussianRational::one()), den: BiPoly::one() }
    }

    pub fn from_poly(num: BiPoly) -> Self {
        SmoothFn { num, den: BiPoly::one() }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &SmoothFn) -> SmoothFn {
        SmoothFn {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
        .reduce()
    }

    pub fn sub(&self, rhs: &SmoothFn) -> SmoothFn {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SmoothFn {
        SmoothFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &SmoothFn) -> SmoothFn {
        SmoothFn {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        }
        .reduce()
    }

    pub fn scale(&self, c: &GaussianRational) -> SmoothFn {
        SmoothFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<SmoothFn> {
        if self.is_zero() {
            return Err(Error::DivZero);
        }
        Ok(SmoothFn { num: self.den.clone(), den: self.num.clone() }.reduce())
    }

    pub fn div(&self, rhs: &SmoothFn) -> Result<SmoothFn> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Quotient rule for ∂/∂z.
    pub fn del_z(&self) -> SmoothFn {
        SmoothFn {
            num: self.num.del_z().mul(&self.den).add(&self.num.mul(&self.den.del_z()).neg()),
            den: self.den.mul(&self.den),
        }
        .reduce()
    }

    /// Quotient rule for ∂/∂z̄.
    pub fn del_zbar(&self) -> SmoothFn {
        SmoothFn {
            num: self.num.del_zbar().mul(&self.den).add(&self.num.mul(&self.den.del_zbar()).neg()),
            den: self.den.mul(&self.den),
        }
        .reduce()
    }

    pub fn conj(&self) -> SmoothFn {
        SmoothFn { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn subst_map(&self, map: &MonomialMap) -> SmoothFn {
        SmoothFn {
            num: self.num.subst_map(map),
            den: self.den.subst_map(map),
        }
        .reduce()
    }

    pub fn pow(&self, k: u32) -> SmoothFn {
        let mut acc = SmoothFn::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn from_half(h: &HalfFn) -> SmoothFn {
        SmoothFn::from_poly(BiPoly::from_laurent(&h.body, h.arg))
    }

    /// When the function is an honest bigraded Laurent polynomial, return it.
    pub fn to_poly(&self) -> Option<BiPoly> {
        self.num.div_exact(&self.den)
    }

    /// When the function is a Laurent polynomial in z alone, return it.
    pub fn to_laurent_z(&self) -> Option<LaurentPoly> {
        let p = self.to_poly()?;
        let mut out = LaurentPoly::zero();
        for ((k, l), c) in p.terms() {
            if *l != 0 {
                return None;
            }
            out.add_term(*k, c.clone());
        }
        Some(out)
    }
}

impl PartialEq for SmoothFn {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for SmoothFn {}

impl fmt::Display for SmoothFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gq(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn del_zbar_kills_holomorphic() {
        let f = SmoothFn::monomial(2, 0);
        assert!(f.del_zbar().is_zero());
    }

    #[test]
    fn del_z_product() {
        // ∂/∂z (z z̄) = z̄
        let f = SmoothFn::monomial(1, 1);
        assert_eq!(f.del_z(), SmoothFn::monomial(0, 1));
    }

    #[test]
    fn conj_swaps_bidegree() {
        // conj(z/(1+z z̄)) = z̄/(1+z z̄)
        let den = BiPoly::from_terms([(0, 0, gq(1)), (1, 1, gq(1))]);
        let f = SmoothFn::new(BiPoly::term(1, 0, gq(1)), den.clone()).unwrap();
        let g = SmoothFn::new(BiPoly::term(0, 1, gq(1)), den).unwrap();
        assert_eq!(f.conj(), g);
    }

    #[test]
    fn inverse_and_equality() {
        let den = BiPoly::from_terms([(0, 0, gq(1)), (1, 1, gq(1))]);
        let f = SmoothFn::new(BiPoly::term(1, 2, gq(3)), den).unwrap();
        let g = f.inv().unwrap();
        assert_eq!(f.mul(&g), SmoothFn::one());
        assert_eq!(SmoothFn::zero().inv(), Err(Error::DivZero));
    }

    #[test]
    fn exact_division_reduces() {
        // (z² z̄ + z) / z = z z̄ + 1 exactly
        let num = BiPoly::from_terms([(2, 1, gq(1)), (1, 0, gq(1))]);
        let den = BiPoly::term(1, 0, gq(1));
        let f = SmoothFn::new(num, den).unwrap();
        assert_eq!(f.to_poly().unwrap(), BiPoly::from_terms([(1, 1, gq(1)), (0, 0, gq(1))]));
    }

    #[test]
    fn leibniz_on_quotients() {
        // f = 1/(1+z z̄): ∂f/∂z = −z̄/(1+z z̄)²
        let den = BiPoly::from_terms([(0, 0, gq(1)), (1, 1, gq(1))]);
        let f = SmoothFn::new(BiPoly::one(), den.clone()).unwrap();
        let expect = SmoothFn::new(BiPoly::term(0, 1, gq(-1)), den.clone().mul(&den)).unwrap();
        assert_eq!(f.del_z(), expect);
        // mixed partials commute
        assert_eq!(f.del_z().del_zbar(), f.del_zbar().del_z());
    }
}
