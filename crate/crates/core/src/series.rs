//! Truncated power series over Q(params) with valuation tracking.
//!
//! A series holds its coefficients for x^0..x^{T-1}; T is the truncation
//! order. Valuations are reported as either an exact index or "at least T"
//! when every stored coefficient vanishes (the val(0) = infinity
//! convention, cut off at the truncation).

use crate::field::Field;
use crate::param::ParamRat;
use crate::{Error, PolyZ, RatZ};
use std::fmt;

/// Valuation of a truncated series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Val {
    At(usize),
    /// All coefficients below the truncation order vanish.
    AtLeast(usize),
}

impl Val {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Val::At(v) => v >= bound,
            Val::AtLeast(t) => t >= bound,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::At(v) => write!(f, "{}", v),
            Val::AtLeast(t) => write!(f, ">= {}", t),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<ParamRat>,
}

impl TruncSeries {
    pub fn zero(trunc: usize) -> Self {
        assert!(trunc >= 1, "truncation order must be at least 1");
        TruncSeries { coeffs: vec![ParamRat::zero(); trunc] }
    }

    pub fn from_coeffs(coeffs: Vec<ParamRat>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    pub fn from_poly(p: &PolyZ, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for (i, c) in p.coeffs().iter().enumerate() {
            if i >= trunc {
                break;
            }
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> ParamRat {
        self.coeffs.get(i).cloned().unwrap_or_else(ParamRat::zero)
    }

    pub fn coeffs(&self) -> &[ParamRat] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, c: ParamRat) {
        assert!(i < self.coeffs.len());
        self.coeffs[i] = c;
    }

    /// Smallest index with a nonzero coefficient, or "at least T".
    pub fn val(&self) -> Val {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Val::At(v),
            None => Val::AtLeast(self.trunc()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Restricts to a (smaller) truncation order.
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc >= 1);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(trunc);
        while coeffs.len() < trunc {
            coeffs.push(ParamRat::zero());
        }
        TruncSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.trunc().min(other.trunc());
        TruncSeries {
            coeffs: (0..t).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let t = self.trunc().min(other.trunc());
        TruncSeries {
            coeffs: (0..t).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.trunc().min(other.trunc());
        let mut out = vec![ParamRat::zero(); t];
        for (i, a) in self.coeffs.iter().enumerate().take(t) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= t {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn scale(&self, c: &ParamRat) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// Multiplication by the monomial c*x^e; the result knows e more
    /// coefficients than the input.
    pub fn mul_monomial(&self, c: &ParamRat, e: usize) -> Self {
        let mut coeffs = vec![ParamRat::zero(); e];
        coeffs.extend(self.coeffs.iter().map(|a| a.mul(c)));
        TruncSeries { coeffs }
    }

    /// Term-by-term antiderivative with zero constant term; gains one order.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.trunc() + 1);
        coeffs.push(ParamRat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.mul(&ParamRat::constant(crate::field::rat(1, (i + 1) as i64))));
        }
        TruncSeries { coeffs }
    }

    /// Formal derivative; loses one order (constant input keeps order 1).
    pub fn derivative(&self) -> Self {
        if self.trunc() == 1 {
            return Self::zero(1);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&ParamRat::int(i as i64)))
            .collect();
        TruncSeries { coeffs }
    }

    /// Inverse of a series with a nonzero constant term.
    pub fn invert(&self) -> Result<Self, Error> {
        if self.coeffs[0].is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = self.trunc();
        let inv0 = self.coeffs[0].inv()?;
        let mut out = vec![ParamRat::zero(); t];
        out[0] = inv0.clone();
        for n in 1..t {
            let mut acc = ParamRat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
                }
            }
            out[n] = acc.neg().mul(&inv0);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Expansion of a rational function regular at the origin (after
    /// cancelling any common x-power between numerator and denominator).
    pub fn expand_ratz(f: &RatZ, trunc: usize) -> Result<Self, Error> {
        if f.is_zero() {
            return Ok(Self::zero(trunc));
        }
        let nv = f.num().val();
        let dv = f.den().val();
        if dv > nv {
            return Err(Error::SingularAtOrigin);
        }
        let num = shift_down(f.num(), dv);
        let den = shift_down(f.den(), dv);
        let ns = Self::from_poly(&num, trunc);
        let ds = Self::from_poly(&den, trunc);
        Ok(ns.mul(&ds.invert()?))
    }

    /// Substitutes x -> q*x: coefficient i is multiplied by q^i.
    pub fn dilate(&self, q: &ParamRat) -> Self {
        let mut pow = ParamRat::one();
        let mut out = Vec::with_capacity(self.trunc());
        for c in &self.coeffs {
            out.push(c.mul(&pow));
            pow = pow.mul(q);
        }
        TruncSeries { coeffs: out }
    }

    /// Substitutes x -> x/(1 + beta*x), the series image of s -> s + beta
    /// under x = 1/s. Requires a zero constant term.
    pub fn compose_shift_recip(&self, beta: i64) -> Self {
        let t = self.trunc();
        let mut out = Self::zero(t);
        // w = x/(1+beta x); accumulate u_m * w^m
        let mut geom = Self::zero(t);
        for i in 0..t {
            geom.coeffs[i] = ParamRat::constant(crate::field::int(-beta).pow(i as i32));
        }
        let w = geom.mul_monomial(&ParamRat::one(), 1).truncate(t);
        let mut wp = {
            let mut one = Self::zero(t);
            one.coeffs[0] = ParamRat::one();
            one
        };
        for m in 1..t {
            wp = wp.mul(&w);
            if !self.coeffs[m].is_zero() {
                out = out.add(&wp.scale(&self.coeffs[m]));
            }
        }
        out
    }
}

fn shift_down(p: &PolyZ, k: usize) -> PolyZ {
    PolyZ::from_coeffs(p.coeffs().iter().skip(k).cloned().collect())
}

/// Evaluates a polynomial in Y with rational-function coefficients at a
/// series, by Horner's rule. Every coefficient must be regular at the
/// origin.
pub fn poly_eval_at_series(f: &[RatZ], s: &TruncSeries) -> Result<TruncSeries, Error> {
    let t = s.trunc();
    let mut acc = TruncSeries::zero(t);
    for c in f.iter().rev() {
        acc = acc.mul(s).add(&TruncSeries::expand_ratz(c, t)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::param::ParamRat;

    fn c(n: i64, d: i64) -> ParamRat {
        ParamRat::constant(rat(n, d))
    }

    fn series(v: &[(i64, i64)]) -> TruncSeries {
        TruncSeries::from_coeffs(v.iter().map(|&(n, d)| c(n, d)).collect())
    }

    #[test]
    fn val_examples() {
        // z^2 - z^4/9 truncated at 8 -> 2
        let mut s = TruncSeries::zero(8);
        s.set_coeff(2, c(1, 1));
        s.set_coeff(4, c(-1, 9));
        assert_eq!(s.val(), Val::At(2));
        // zero series truncated at 6 -> ">= 6"
        assert_eq!(TruncSeries::zero(6).val(), Val::AtLeast(6));
    }

    #[test]
    fn tan_second_convergent_residual_val() {
        // brute-force oracle: f2 = z/(1 - z^2/3) = sum z^(2j+1)/3^j;
        // residual f2' - 1 - f2^2 = -z^4/9 - 2z^6/27 - ..., valuation 4,
        // and val(tan - f2) = 5 = residual valuation + 1.
        let t = 8;
        let mut f2 = TruncSeries::zero(t);
        let mut j = 0usize;
        loop {
            let e = 2 * j + 1;
            if e >= t {
                break;
            }
            f2.set_coeff(e, ParamRat::constant(rat(1, 3i64.pow(j as u32))));
            j += 1;
        }
        let mut resid = f2.derivative();
        resid.set_coeff(0, resid.coeff(0).sub(&ParamRat::one()));
        let resid = resid.sub(&f2.mul(&f2).truncate(resid.trunc()));
        assert_eq!(resid.val(), Val::At(4));
        assert_eq!(resid.coeff(4), c(-1, 9));
        let tan = series(&[(0, 1), (1, 1), (0, 1), (1, 3), (0, 1), (2, 15), (0, 1), (17, 315)]);
        assert_eq!(tan.sub(&f2).val(), Val::At(5));
    }

    #[test]
    fn integrate_examples() {
        // 1 + z -> z + z^2/2, truncation gains one order
        let s = series(&[(1, 1), (1, 1)]);
        let i = s.integrate();
        assert_eq!(i.trunc(), 3);
        assert_eq!(i.coeff(0), c(0, 1));
        assert_eq!(i.coeff(1), c(1, 1));
        assert_eq!(i.coeff(2), c(1, 2));
        // 0 -> 0
        assert!(TruncSeries::zero(4).integrate().is_zero());
        // 1 + z^2 -> z + z^3/3 (one step of the fixed-point oracle)
        let s = series(&[(1, 1), (0, 1), (1, 1)]);
        let i = s.integrate();
        assert_eq!(i.coeff(1), c(1, 1));
        assert_eq!(i.coeff(3), c(1, 3));
    }

    #[test]
    fn integrate_then_differentiate_is_identity() {
        let s = series(&[(3, 1), (-1, 2), (7, 5), (0, 1), (2, 9)]);
        assert_eq!(s.integrate().derivative(), s);
    }

    #[test]
    fn poly_eval_examples() {
        // F = 1 + Y^2 at s = z gives 1 + z^2
        let one = RatZ::from_poly(PolyZ::constant(ParamRat::one()));
        let zero = RatZ::zero();
        let f = vec![one.clone(), zero.clone(), one.clone()];
        let mut z = TruncSeries::zero(5);
        z.set_coeff(1, ParamRat::one());
        let r = poly_eval_at_series(&f, &z).unwrap();
        assert_eq!(r.coeff(0), ParamRat::one());
        assert_eq!(r.coeff(1), ParamRat::zero());
        assert_eq!(r.coeff(2), ParamRat::one());
        // F = Y at s = 0 gives 0
        let f = vec![zero.clone(), one.clone()];
        assert!(poly_eval_at_series(&f, &TruncSeries::zero(4)).unwrap().is_zero());
    }

    #[test]
    fn gauss_constant_coefficient_expands_geometrically() {
        // a(c-b)z/(cz(z-1)) = -(a(c-b)/c) * (1 + z + z^2 + ...)
        let a = ParamRat::var(0);
        let b = ParamRat::var(1);
        let cc = ParamRat::var(2);
        let z = PolyZ::var();
        let num = z.scale(&a.mul(&cc.sub(&b))); // a(c-b) z
        let den = z.mul(&z.sub(&PolyZ::one())).scale(&cc); // c z (z-1)
        let f = RatZ::new(num, den).unwrap();
        let s = TruncSeries::expand_ratz(&f, 4).unwrap();
        let expect = ParamRat::new(
            a.num().mul(&cc.sub(&b).num()).neg(),
            cc.num().clone(),
        )
        .unwrap();
        for i in 0..4 {
            assert_eq!(s.coeff(i), expect);
        }
    }

    #[test]
    fn val_shift_property() {
        let s = series(&[(0, 1), (5, 3), (0, 1), (1, 7)]);
        let shifted = s.mul_monomial(&ParamRat::one(), 3);
        assert_eq!(s.val(), Val::At(1));
        assert_eq!(shifted.val(), Val::At(4));
    }
}
