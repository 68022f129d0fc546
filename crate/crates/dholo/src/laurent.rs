//! One-variable Laurent polynomials over the Gaussian rationals, together with
//! the half-plane wrapper `HalfFn` (a Laurent polynomial read in either the
//! chart coordinate or its conjugate) and the monomial chart transitions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Finitely supported map exponent → coefficient; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::term(0, GaussianRational::one())
    }

    pub fn var() -> Self {
        LaurentPoly::term(1, GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        LaurentPoly::term(0, c)
    }

    pub fn term(exp: i64, coeff: GaussianRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, GaussianRational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(GaussianRational::zero);
        *entry += &coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    pub fn coeff(&self, exp: i64) -> GaussianRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    /// Least exponent in the support (the valuation at 0). None for 0.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Some((e, c)) when the polynomial is the single term c·z^e, c ≠ 0.
    pub fn as_monomial(&self) -> Option<(i64, &GaussianRational)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((*e, c))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: i64, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (e + exp, a * c)).collect(),
        }
    }

    /// Formal d/dz.
    pub fn derive(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.coeffs {
            out.add_term(e - 1, c * &GaussianRational::from_int(*e));
        }
        out
    }

    /// Coefficient of z⁻¹.
    pub fn residue(&self) -> GaussianRational {
        self.coeff(-1)
    }

    /// Coefficient-wise complex conjugation (the exponents stay put).
    pub fn conj_coeffs(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    /// Multiplicative inverse, defined exactly when the polynomial is a monomial.
    pub fn inverse_monomial(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((e, c)) => Ok(LaurentPoly::term(-e, c.inverse()?)),
            None => Err(Error::DivZero),
        }
    }

    /// Substitute z ↦ c·z^e (e = ±1), staying in the same variable.
    pub fn subst_scaled_power(&self, c: &GaussianRational, e: i8) -> Result<Self> {
        let mut out = LaurentPoly::zero();
        for (k, a) in &self.coeffs {
            out.add_term(e as i64 * k, a * &c.pow(*k)?);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} * z^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Whether a local expression is read in the chart coordinate z or in z̄.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Arg {
    Z,
    ZBar,
}

impl Arg {
    pub fn flip(self) -> Arg {
        match self {
            Arg::Z => Arg::ZBar,
            Arg::ZBar => Arg::Z,
        }
    }

    pub fn compose(self, conjugated: bool) -> Arg {
        if conjugated {
            self.flip()
        } else {
            self
        }
    }
}

/// body(z) when arg = Z, body(z̄) when arg = ZBar. Constants normalize to Z,
/// so the argument tag is canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfFn {
    pub body: LaurentPoly,
    pub arg: Arg,
}

impl HalfFn {
    pub fn new(body: LaurentPoly, arg: Arg) -> Self {
        let arg = if body.is_constant() { Arg::Z } else { arg };
        HalfFn { body, arg }
    }

    pub fn zero() -> Self {
        HalfFn::new(LaurentPoly::zero(), Arg::Z)
    }

    pub fn one() -> Self {
        HalfFn::new(LaurentPoly::one(), Arg::Z)
    }

    pub fn constant(c: GaussianRational) -> Self {
        HalfFn::new(LaurentPoly::constant(c), Arg::Z)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.body.is_constant()
    }

    /// The shared argument of two operands, or None on a genuine Z/ZBar clash.
    fn join_arg(&self, other: &HalfFn) -> Option<Arg> {
        match (self.is_constant(), other.is_constant()) {
            (true, _) => Some(other.arg),
            (_, true) => Some(self.arg),
            _ if self.arg == other.arg => Some(self.arg),
            _ => None,
        }
    }

    pub fn add(&self, other: &HalfFn) -> HalfFn {
        let arg = self
            .join_arg(other)
            .expect("HalfFn add: mixed z and z-bar arguments");
        HalfFn::new(&self.body + &other.body, arg)
    }

    pub fn sub(&self, other: &HalfFn) -> HalfFn {
        let arg = self
            .join_arg(other)
            .expect("HalfFn sub: mixed z and z-bar arguments");
        HalfFn::new(&self.body - &other.body, arg)
    }

    pub fn mul(&self, other: &HalfFn) -> HalfFn {
        let arg = self
            .join_arg(other)
            .expect("HalfFn mul: mixed z and z-bar arguments");
        HalfFn::new(&self.body * &other.body, arg)
    }

    pub fn neg(&self) -> HalfFn {
        HalfFn::new(-&self.body, self.arg)
    }

    /// Pointwise complex conjugate: conj(body(w)) = conj-coeffs(body)(w̄).
    pub fn conj(&self) -> HalfFn {
        HalfFn::new(self.body.conj_coeffs(), self.arg.flip())
    }

    /// Derivative with respect to the variable the function actually depends
    /// on (z for arg Z, z̄ for arg ZBar).
    pub fn derive(&self) -> HalfFn {
        HalfFn::new(self.body.derive(), self.arg)
    }

    pub fn inverse_monomial(&self) -> Result<HalfFn> {
        Ok(HalfFn::new(self.body.inverse_monomial()?, self.arg))
    }

    /// Demand a plain Laurent polynomial in z.
    pub fn expect_z(&self) -> Result<&LaurentPoly> {
        if self.arg == Arg::Z {
            Ok(&self.body)
        } else {
            Err(Error::ShapeMismatch("expected a function of z, found z-bar".into()))
        }
    }
}

/// A chart transition w = c·z^e or w = c·z̄^e with e = ±1 and c an invertible
/// Gaussian rational. Closed under inversion and composition, which keeps all
/// chart algebra inside Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialMap {
    pub coeff: GaussianRational,
    pub exp: i8,
    pub conjugated: bool,
}

impl MonomialMap {
    pub fn new(coeff: GaussianRational, exp: i8, conjugated: bool) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::NonMonomial("zero leading coefficient".into()));
        }
        if exp != 1 && exp != -1 {
            return Err(Error::NonMonomial(format!("exponent {exp} not in {{+1,-1}}")));
        }
        Ok(MonomialMap { coeff, exp, conjugated })
    }

    pub fn identity() -> Self {
        MonomialMap { coeff: GaussianRational::one(), exp: 1, conjugated: false }
    }

    pub fn is_identity(&self) -> bool {
        self.coeff.is_one() && self.exp == 1 && !self.conjugated
    }

    /// The inverse chart transition: z as a function of w.
    pub fn inverse(&self) -> MonomialMap {
        match (self.exp, self.conjugated) {
            // w = c z  =>  z = c⁻¹ w
            (1, false) => MonomialMap {
                coeff: self.coeff.inverse().expect("nonzero"),
                exp: 1,
                conjugated: false,
            },
            // w = c/z  =>  z = c/w
            (-1, false) => self.clone(),
            // w = c z̄  =>  z = conj(c)⁻¹ w̄
            (1, true) => MonomialMap {
                coeff: self.coeff.conj().inverse().expect("nonzero"),
                exp: 1,
                conjugated: true,
            },
            // w = c/z̄  =>  z = conj(c)/w̄
            (-1, true) => MonomialMap {
                coeff: self.coeff.conj(),
                exp: -1,
                conjugated: true,
            },
            _ => unreachable!(),
        }
    }

    /// self ∘ other: first apply `other` (v in terms of z), then `self`
    /// (w in terms of v); the result expresses w in terms of z.
    pub fn compose(&self, other: &MonomialMap) -> MonomialMap {
        // If self reads v̄, the inner map contributes conjugated data.
        let inner_coeff = if self.conjugated {
            other.coeff.conj()
        } else {
            other.coeff.clone()
        };
        let coeff = &self.coeff * &inner_coeff.pow(self.exp as i64).expect("nonzero");
        MonomialMap {
            coeff,
            exp: self.exp * other.exp,
            conjugated: self.conjugated != other.conjugated,
        }
    }

    /// Derivative of the map with respect to its source variable: ∂w/∂z for a
    /// holomorphic map, ∂w/∂z̄ for an antiholomorphic one. A HalfFn in the
    /// source chart.
    pub fn derivative(&self) -> HalfFn {
        let body = LaurentPoly::term(
            self.exp as i64 - 1,
            &self.coeff * &GaussianRational::from_int(self.exp as i64),
        );
        HalfFn::new(body, if self.conjugated { Arg::ZBar } else { Arg::Z })
    }

    /// Compose a Laurent polynomial in the target coordinate with the map:
    /// f(w) expressed in the source chart.
    pub fn subst_laurent(&self, f: &LaurentPoly) -> HalfFn {
        let body = f
            .subst_scaled_power(&self.coeff, self.exp)
            .expect("coeff invertible");
        HalfFn::new(body, if self.conjugated { Arg::ZBar } else { Arg::Z })
    }

    /// Compose a HalfFn in the target coordinate with the map. Covers all
    /// four (arg, conjugated) combinations; g(w̄) pulls back through
    /// w̄ = conj(c)·(z or z̄)^e.
    pub fn subst_half(&self, g: &HalfFn) -> HalfFn {
        let (c, flip) = match g.arg {
            Arg::Z => (self.coeff.clone(), self.conjugated),
            Arg::ZBar => (self.coeff.conj(), !self.conjugated),
        };
        let body = g
            .body
            .subst_scaled_power(&c, self.exp)
            .expect("coeff invertible");
        HalfFn::new(body, if flip { Arg::ZBar } else { Arg::Z })
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.conjugated { "zb" } else { "z" };
        write!(f, "{} * {}^{}", self.coeff, var, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gq(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn derive_power_rule() {
        // d/dz z² = 2z
        let f = LaurentPoly::term(2, gq(1));
        assert_eq!(f.derive(), LaurentPoly::term(1, gq(2)));
    }

    #[test]
    fn conj_reflect_flips() {
        // conj of i·z is (−i)·z̄
        let f = HalfFn::new(LaurentPoly::term(1, GaussianRational::i()), Arg::Z);
        let g = f.conj();
        assert_eq!(g.arg, Arg::ZBar);
        assert_eq!(g.body, LaurentPoly::term(1, -GaussianRational::i()));
        assert_eq!(g.conj(), f);
    }

    #[test]
    fn mul_cancels_pole() {
        // (z⁻¹ + 1)·z = 1 + z
        let f = LaurentPoly::from_terms([(-1, gq(1)), (0, gq(1))]);
        let g = LaurentPoly::var();
        assert_eq!(&f * &g, LaurentPoly::from_terms([(0, gq(1)), (1, gq(1))]));
    }

    #[test]
    fn residue_of_derivative_vanishes() {
        let f = LaurentPoly::from_terms([(-3, gq(2)), (-1, gq(5)), (2, gq(7))]);
        assert!(f.derive().residue().is_zero());
        assert_eq!(LaurentPoly::from_terms([(-1, gq(3)), (0, gq(5))]).residue(), gq(3));
        assert_eq!(LaurentPoly::term(2, gq(1)).residue(), gq(0));
    }

    #[test]
    fn monomial_substitution_examples() {
        // f = w³ through w = 1/z̄ gives z̄⁻³
        let inv_conj = MonomialMap::new(gq(1), -1, true).unwrap();
        let f = LaurentPoly::term(3, gq(1));
        let h = inv_conj.subst_laurent(&f);
        assert_eq!(h.arg, Arg::ZBar);
        assert_eq!(h.body, LaurentPoly::term(-3, gq(1)));

        // f = w through w = 2z gives 2z
        let double = MonomialMap::new(gq(2), 1, false).unwrap();
        let h = double.subst_laurent(&LaurentPoly::var());
        assert_eq!(h.arg, Arg::Z);
        assert_eq!(h.body, LaurentPoly::term(1, gq(2)));

        // f = w⁻¹ + w through w = 1/z̄ gives z + z⁻¹
        let f = LaurentPoly::from_terms([(-1, gq(1)), (1, gq(1))]);
        let h = inv_conj.subst_laurent(&f);
        assert_eq!(h.arg, Arg::ZBar);
        assert_eq!(h.body, LaurentPoly::from_terms([(-1, gq(1)), (1, gq(1))]));
    }

    #[test]
    fn map_inverse_round_trip() {
        for map in [
            MonomialMap::new(GaussianRational::from_parts(2, 1, 1, 1), 1, false).unwrap(),
            MonomialMap::new(gq(3), -1, false).unwrap(),
            MonomialMap::new(GaussianRational::from_parts(0, 1, 1, 1), 1, true).unwrap(),
            MonomialMap::new(gq(1), -1, true).unwrap(),
            MonomialMap::new(GaussianRational::from_parts(1, 2, 3, 5), -1, true).unwrap(),
        ] {
            let composed = map.compose(&map.inverse());
            assert!(composed.is_identity(), "{map} ∘ inverse = {composed}");
            let composed = map.inverse().compose(&map);
            assert!(composed.is_identity());

            // substitute_monomial round trip on a generic f
            let f = LaurentPoly::from_terms([
                (-2, GaussianRational::from_parts(1, 3, 0, 1)),
                (0, gq(4)),
                (3, GaussianRational::from_parts(0, 1, -2, 7)),
            ]);
            let once = map.subst_laurent(&f);
            let back = map.inverse().subst_half(&once);
            assert_eq!(back, HalfFn::new(f.clone(), Arg::Z));
        }
    }
}
