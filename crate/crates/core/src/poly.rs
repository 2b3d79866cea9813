//! Dense univariate polynomials and reduced fractions over any [`Field`].
//! One implementation serves every level of the tower: polynomials in z
//! over Q(params), polynomials in the recurrence index over Q(params)(z),
//! and closed-form coefficient functions of the subsequence index.

use crate::field::Field;
use crate::Error;
use std::fmt;

/// Dense univariate polynomial; no trailing zero coefficients, empty = 0.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            UPoly { coeffs: vec![c] }
        }
    }

    pub fn var() -> Self {
        UPoly { coeffs: vec![F::zero(), F::one()] }
    }

    /// x^k with coefficient c.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0 (check `is_zero` separately).
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Valuation: index of the lowest nonzero coefficient; 0 for the zero
    /// polynomial (check `is_zero` separately).
    pub fn val(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division over the coefficient field.
    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < other.deg() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let d = other.deg();
        let lc_inv = other.lc().inv();
        let mut quo = vec![F::zero(); rem.len() - d];
        while rem.len() > d {
            let k = rem.len() - 1;
            let q = rem[k].mul(&lc_inv);
            if !q.is_zero() {
                quo[k - d] = q.clone();
                for (i, b) in other.coeffs.iter().enumerate() {
                    rem[k - d + i] = rem[k - d + i].sub(&q.mul(b));
                }
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn divexact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.divrem(other);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic GCD over the coefficient field.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.divexact(&g).expect("gcd divides").mul(other).monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Composition x -> a*x + b by Horner's rule.
    pub fn compose_affine(&self, a: &F, b: &F) -> Self {
        let lin = Self::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// x -> x + k for integer k.
    pub fn shift_int(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        self.compose_affine(&F::one(), &F::from_int(k))
    }

    /// x -> a*x.
    pub fn scale_var(&self, a: &F) -> Self {
        let mut pow = F::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul(&pow));
            pow = pow.mul(a);
        }
        Self::from_coeffs(out)
    }

    pub fn map<G: Field>(&self, f: &dyn Fn(&F) -> G) -> UPoly<G> {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn render(&self, var: &str, coeff: &dyn Fn(&F) -> String, coeff_is_simple: &dyn Fn(&F) -> bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = coeff(c);
            let body = if i == 0 {
                if coeff_is_simple(c) {
                    cs
                } else {
                    format!("({})", cs)
                }
            } else {
                let xs = if i == 1 { var.to_string() } else { format!("{}^{}", var, i) };
                if c.is_one() {
                    xs
                } else if cs == "-1" {
                    format!("-{}", xs)
                } else if coeff_is_simple(c) {
                    format!("{}*{}", cs, xs)
                } else {
                    format!("({})*{}", cs, xs)
                }
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

/// Reduced fraction of univariate polynomials with a monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct UFrac<F: Field> {
    num: UPoly<F>,
    den: UPoly<F>,
}

impl<F: Field> UFrac<F> {
    pub fn from_poly(p: UPoly<F>) -> Self {
        UFrac { num: p, den: UPoly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(UPoly::var())
    }

    pub fn new(num: UPoly<F>, den: UPoly<F>) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UPoly<F>, den: UPoly<F>) -> Self {
        if num.is_zero() {
            return UFrac { num, den: UPoly::one() };
        }
        let (mut num, mut den) = (num, den);
        if den.deg() > 0 && num.deg() > 0 {
            let g = num.gcd(&den);
            if g.deg() > 0 {
                num = num.divexact(&g).expect("gcd divides");
                den = den.divexact(&g).expect("gcd divides");
            }
        }
        let lc = den.lc().inv();
        UFrac { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn num(&self) -> &UPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.deg() == 0
    }

    /// The polynomial part when the denominator is 1 (it is monic, so a
    /// degree-0 denominator means exactly 1).
    pub fn as_poly(&self) -> Option<UPoly<F>> {
        if self.is_poly() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        if g.deg() == 0 {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            return Self::monic_only(num, den);
        }
        let d1g = self.den.divexact(&g).expect("gcd divides");
        let d2g = other.den.divexact(&g).expect("gcd divides");
        let t = self.num.mul(&d2g).add(&other.num.mul(&d1g));
        let h = t.gcd(&g);
        if h.deg() == 0 {
            return Self::monic_only(t, self.den.mul(&d2g));
        }
        let num = t.divexact(&h).expect("gcd divides");
        let den = self.den.divexact(&h).expect("h divides").mul(&d2g);
        Self::monic_only(num, den)
    }

    fn monic_only(num: UPoly<F>, den: UPoly<F>) -> Self {
        let lc = den.lc().inv();
        UFrac { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_poly(UPoly::zero());
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.deg() > 0 { self.num.divexact(&g1).expect("gcd divides") } else { self.num.clone() };
        let d2 = if g1.deg() > 0 { other.den.divexact(&g1).expect("gcd divides") } else { other.den.clone() };
        let n2 = if g2.deg() > 0 { other.num.divexact(&g2).expect("gcd divides") } else { other.num.clone() };
        let d1 = if g2.deg() > 0 { self.den.divexact(&g2).expect("gcd divides") } else { self.den.clone() };
        Self::monic_only(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn checked_inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::monic_only(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.checked_inv()?))
    }

    /// Substitution x -> a*x + b applied to numerator and denominator.
    pub fn compose_affine(&self, a: &F, b: &F) -> Self {
        Self::reduced(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    pub fn shift_int(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self::reduced(self.num.shift_int(k), self.den.shift_int(k))
    }

    pub fn scale_var(&self, a: &F) -> Self {
        Self::reduced(self.num.scale_var(a), self.den.scale_var(a))
    }

    pub fn eval(&self, x: &F) -> Result<F, Error> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x).mul(&d.inv()))
    }

    pub fn map_coeffs<G: Field>(&self, f: &dyn Fn(&F) -> G) -> UFrac<G> {
        UFrac::reduced(self.num.map(f), self.den.map(f))
    }

    pub fn derivative_by(&self, d: &dyn Fn(&UPoly<F>) -> UPoly<F>) -> Self {
        // (n/d)' = (n'd - nd')/d^2
        let num = d(&self.num).mul(&self.den).sub(&self.num.mul(&d(&self.den)));
        Self::reduced(num, self.den.mul(&self.den))
    }
}

impl<F: Field> Field for UFrac<F> {
    fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UPoly::one())
    }
    fn from_int(n: i64) -> Self {
        Self::from_poly(UPoly::constant(F::from_int(n)))
    }
    fn is_zero(&self) -> bool {
        UFrac::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        UFrac::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UFrac::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        UFrac::mul(self, other)
    }
    fn neg(&self) -> Self {
        UFrac::neg(self)
    }
    fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }
}

impl<F: Field> fmt::Display for UFrac<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat, BigRat};

    fn p(v: &[i64]) -> UPoly<BigRat> {
        UPoly::from_coeffs(v.iter().map(|&n| int(n)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn fraction_reduces_and_den_monic() {
        // (x^2 - 1)/(2x - 2) -> (x + 1)/2 with monic denominator 1
        let f = UFrac::new(p(&[-1, 0, 1]), p(&[-2, 2])).unwrap();
        assert_eq!(f.num(), &p(&[1, 1]).scale(&rat(1, 2)));
        assert!(f.is_poly());
    }

    #[test]
    fn affine_composition() {
        // (x^2) at x -> x + 1 gives x^2 + 2x + 1
        assert_eq!(p(&[0, 0, 1]).shift_int(1), p(&[1, 2, 1]));
        // scale_var: x^2 at x -> 3x gives 9x^2
        assert_eq!(p(&[0, 0, 1]).scale_var(&int(3)), p(&[0, 0, 9]));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(&[1, 2, 3]); // 1 + 2x + 3x^2
        assert_eq!(f.derivative(), p(&[2, 6]));
        assert_eq!(f.eval(&int(2)), int(17));
    }

    #[test]
    fn render_polys() {
        let f = p(&[1, -2, 3]);
        let s = f.render("n", &crate::field::fmt_rat, &|_| true);
        assert_eq!(s, "3*n^2 - 2*n + 1");
    }
}
