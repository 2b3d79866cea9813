//! The parameter field Q(params): sparse multivariate polynomials over big
//! rationals under a fixed lexicographic monomial order, and reduced
//! fractions of them.
//!
//! Variables are identified by index; names live in the problem layer and
//! are only needed for display. Exponent vectors are stored with trailing
//! zeros trimmed, so the number of variables never has to be threaded
//! through arithmetic and the zero and one polynomials are context-free.

use crate::field::{fmt_rat, BigRat};
use crate::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with trailing zeros trimmed. `Vec` ordering gives the
/// lexicographic monomial order with variable 0 most significant.
pub type Mono = Vec<u32>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0));
    }
    trim(&mut out);
    out
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.clone();
    for (i, e) in b.iter().enumerate() {
        if out[i] < *e {
            return None;
        }
        out[i] -= *e;
    }
    trim(&mut out);
    Some(out)
}

fn trim(m: &mut Mono) {
    while m.last() == Some(&0) {
        m.pop();
    }
}

/// Sparse multivariate polynomial over Q with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPoly {
    terms: BTreeMap<Mono, BigRat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(index: usize) -> Self {
        let mut m = vec![0u32; index + 1];
        m[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, BigRat::one());
        ParamPoly { terms }
    }

    pub fn from_terms(list: Vec<(Mono, BigRat)>) -> Self {
        let mut p = Self::zero();
        for (mut m, c) in list {
            trim(&mut m);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.is_empty())
    }

    /// Returns the constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRat> {
        if self.is_zero() {
            Some(BigRat::zero())
        } else if self.is_constant() {
            self.terms.get(&Vec::new()).cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &BigRat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRat::zero)
    }

    /// Smallest variable index that actually occurs, if any.
    fn first_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.iter().position(|&e| e > 0))
            .min()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.get(v).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes variable `v` by a polynomial.
    pub fn subst_var(&self, v: usize, value: &ParamPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0);
            let mut rest = m.clone();
            if v < rest.len() {
                rest[v] = 0;
            }
            trim(&mut rest);
            let mut t = ParamPoly::from_terms(vec![(rest, c.clone())]);
            if e > 0 {
                t = t.mul(&value.pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluates variable `v` at a rational value.
    pub fn eval_var(&self, v: usize, value: &BigRat) -> Self {
        self.subst_var(v, &ParamPoly::constant(value.clone()))
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn divexact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = other.leading().expect("nonzero");
        let lm = lm.clone();
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero");
            let qm = mono_div(rm, &lm)?;
            let qc = rc / &lc;
            let t = ParamPoly::from_terms(vec![(qm, qc)]);
            rem = rem.sub(&t.mul(other));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Rational content: the positive rational r with self/r integer-primitive,
    /// carrying the sign of the leading coefficient.
    pub fn rat_content(&self) -> BigRat {
        if self.is_zero() {
            return BigRat::one();
        }
        let mut gcd_num = BigInt::zero();
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            gcd_num = gcd_num.gcd(c.numer());
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut content = BigRat::new(gcd_num, lcm_den);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        content
    }

    /// Divides out the rational content: integer-primitive with positive
    /// leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.rat_content().recip())
    }

    /// Coefficients with respect to variable `v`, lowest degree first.
    /// Each coefficient has no occurrence of `v`.
    fn coeffs_in(&self, v: usize) -> Vec<ParamPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![ParamPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0) as usize;
            let mut rest = m.clone();
            if v < rest.len() {
                rest[v] = 0;
            }
            trim(&mut rest);
            out[e].add_term(rest, c.clone());
        }
        out
    }

    fn from_coeffs_in(v: usize, coeffs: &[ParamPoly]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let xe = ParamPoly::var(v).pow(e as u32);
            out = out.add(&c.mul(&xe));
        }
        out
    }

    /// GCD, normalized integer-primitive with positive leading coefficient.
    /// Recursive primitive PRS on the lowest occurring variable.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        if self == other {
            return self.primitive();
        }
        let v = match (self.first_var(), other.first_var()) {
            (Some(a), Some(b)) => a.min(b),
            _ => return Self::one(),
        };
        let da = self.degree_in(v);
        let db = other.degree_in(v);
        if da == 0 {
            // gcd has no v; it divides the v-content of `other`
            let cont = gcd_list(&other.coeffs_in(v));
            return self.gcd(&cont);
        }
        if db == 0 {
            let cont = gcd_list(&self.coeffs_in(v));
            return cont.gcd(other);
        }
        let fa = self.coeffs_in(v);
        let fb = other.coeffs_in(v);
        // univariate over Q: plain monic Euclid, no pseudo-remainder growth
        if fa.iter().all(|c| c.is_constant()) && fb.iter().all(|c| c.is_constant()) {
            let ca: Vec<BigRat> = fa.iter().map(|c| c.as_constant().expect("constant")).collect();
            let cb: Vec<BigRat> = fb.iter().map(|c| c.as_constant().expect("constant")).collect();
            let g = gcd_univariate(ca, cb);
            let coeffs: Vec<ParamPoly> = g.into_iter().map(ParamPoly::constant).collect();
            return ParamPoly::from_coeffs_in(v, &coeffs).primitive();
        }
        let cont_a = gcd_list(&fa);
        let cont_b = gcd_list(&fb);
        let cont = cont_a.gcd(&cont_b);
        let prim_a: Vec<_> = fa.iter().map(|c| c.divexact(&cont_a).expect("content divides")).collect();
        let prim_b: Vec<_> = fb.iter().map(|c| c.divexact(&cont_b).expect("content divides")).collect();
        let (mut r0, mut r1) = if da >= db { (prim_a, prim_b) } else { (prim_b, prim_a) };
        loop {
            let rem = prem(&r0, &r1);
            if rem.iter().all(|c| c.is_zero()) {
                let g = ParamPoly::from_coeffs_in(v, &r1);
                return cont.mul(&g.primitive_wrt(v)).primitive();
            }
            if rem.len() == 1 {
                // degree 0 in v: coprime apart from content
                return cont.primitive();
            }
            let rcont = gcd_list(&rem);
            let mut rprim: Vec<_> = rem
                .iter()
                .map(|c| c.divexact(&rcont).expect("content divides"))
                .collect();
            scale_vec_primitive(&mut rprim);
            r0 = r1;
            r1 = rprim;
        }
    }

    /// Primitive part with respect to the coefficients in variable `v`.
    fn primitive_wrt(&self, v: usize) -> Self {
        let coeffs = self.coeffs_in(v);
        let cont = gcd_list(&coeffs);
        self.divexact(&cont).expect("content divides")
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.divexact(&g).expect("gcd divides").mul(other).primitive()
    }

    /// Renders with the given variable names (index -> name).
    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (v, &e) in m.iter().enumerate() {
                if e == 1 {
                    factors.push(names(v));
                } else if e > 1 {
                    factors.push(format!("{}^{}", names(v), e));
                }
            }
            let abs = if c.is_negative() { -c } else { c.clone() };
            let coeff_str = fmt_rat(&abs);
            let body = if factors.is_empty() {
                coeff_str
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", coeff_str, factors.join("*"))
            };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

fn gcd_list(polys: &[ParamPoly]) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for p in polys {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = g.gcd(p);
    }
    if g.is_zero() {
        ParamPoly::zero()
    } else {
        g
    }
}

/// Divides a coefficient vector by its collective rational content, keeping
/// pseudo-remainder chains integer-primitive.
fn scale_vec_primitive(v: &mut [ParamPoly]) {
    let mut gcd_num = BigInt::zero();
    let mut lcm_den = BigInt::one();
    for p in v.iter() {
        for (_, c) in p.terms() {
            gcd_num = gcd_num.gcd(c.numer());
            lcm_den = lcm_den.lcm(c.denom());
        }
    }
    if gcd_num.is_zero() {
        return;
    }
    let content = BigRat::new(gcd_num, lcm_den);
    let inv = content.recip();
    for p in v.iter_mut() {
        *p = p.scale(&inv);
    }
}

/// Monic Euclidean GCD of univariate rational-coefficient polynomials.
fn gcd_univariate(a: Vec<BigRat>, b: Vec<BigRat>) -> Vec<BigRat> {
    let trim = |mut v: Vec<BigRat>| -> Vec<BigRat> {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a);
    let mut r1 = trim(b);
    while !r1.is_empty() {
        // r0 mod r1
        let d = r1.len() - 1;
        let lead = r1[d].clone();
        let mut rem = r0.clone();
        while rem.len() > d {
            let k = rem.len() - 1;
            let f = &rem[k] / &lead;
            if !f.is_zero() {
                for (i, c) in r1.iter().enumerate() {
                    rem[k - d + i] = &rem[k - d + i] - &(&f * c);
                }
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
        }
        r0 = r1;
        r1 = rem;
    }
    if let Some(lead) = r0.last().cloned() {
        for c in r0.iter_mut() {
            *c = &*c / &lead;
        }
    }
    r0
}

/// Pseudo-remainder of coefficient vectors in one distinguished variable.
fn prem(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let db = b.len() - 1;
    let lb = b.last().expect("nonzero divisor");
    let mut r: Vec<ParamPoly> = a.to_vec();
    loop {
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.is_empty() || r.len() - 1 < db {
            if r.is_empty() {
                r.push(ParamPoly::zero());
            }
            return r;
        }
        let dr = r.len() - 1;
        let lr = r.last().expect("nonzero").clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for i in 0..=db {
            r[dr - db + i] = r[dr - db + i].sub(&lr.mul(&b[i]));
        }
    }
}

/// Reduced fraction of multivariate parameter polynomials. The denominator
/// is integer-primitive with a positive leading coefficient under the
/// monomial order; the numerator carries all rational content.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamRat {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamRat {
    pub fn from_poly(p: ParamPoly) -> Self {
        ParamRat { num: p, den: ParamPoly::one() }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(ParamPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(crate::field::int(n))
    }

    pub fn var(index: usize) -> Self {
        Self::from_poly(ParamPoly::var(index))
    }

    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return ParamRat { num, den: ParamPoly::one() };
        }
        let (mut num, mut den) = (num, den);
        if !den.is_constant() || !num.is_constant() {
            let g = num.gcd(&den);
            if !g.is_constant() {
                num = num.divexact(&g).expect("gcd divides");
                den = den.divexact(&g).expect("gcd divides");
            }
        }
        let c = den.rat_content();
        den = den.scale(&c.recip());
        num = num.scale(&c.recip());
        ParamRat { num, den }
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        if let (Some(n), Some(d)) = (self.num.as_constant(), self.den.as_constant()) {
            if !d.is_zero() {
                return Some(n / d);
            }
        }
        None
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            return Self::reduced(num, self.den.clone());
        }
        // Henrici: split off the common denominator factor first.
        let g = self.den.gcd(&other.den);
        if g.is_constant() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            // reduced inputs with coprime denominators stay reduced
            return Self::normalize_sign(num, den);
        }
        let d1g = self.den.divexact(&g).expect("gcd divides");
        let d2g = other.den.divexact(&g).expect("gcd divides");
        let t = self.num.mul(&d2g).add(&other.num.mul(&d1g));
        let h = t.gcd(&g);
        if h.is_constant() {
            return Self::normalize_sign(t, self.den.mul(&d2g));
        }
        let num = t.divexact(&h).expect("gcd divides");
        let den = self.den.divexact(&h).expect("h divides den via g").mul(&d2g);
        Self::normalize_sign(num, den)
    }

    fn normalize_sign(num: ParamPoly, den: ParamPoly) -> Self {
        let c = den.rat_content();
        ParamRat { num: num.scale(&c.recip()), den: den.scale(&c.recip()) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ParamRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_poly(ParamPoly::zero());
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.divexact(&g1).expect("gcd divides");
        let n2 = other.num.divexact(&g2).expect("gcd divides");
        let d1 = self.den.divexact(&g2).expect("gcd divides");
        let d2 = other.den.divexact(&g1).expect("gcd divides");
        Self::normalize_sign(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitutes parameter `v` by a rational function.
    pub fn subst_var(&self, v: usize, value: &ParamRat) -> Self {
        let dn = self.num.degree_in(v).max(self.den.degree_in(v));
        if dn == 0 {
            return self.clone();
        }
        // clear value's denominator: substitute x -> vn/vd and multiply
        // both sides by vd^dn.
        let subst_poly = |p: &ParamPoly| -> ParamPoly {
            let coeffs = p.coeffs_in(v);
            let mut out = ParamPoly::zero();
            for (e, c) in coeffs.iter().enumerate() {
                let term = c
                    .mul(&value.num.pow(e as u32))
                    .mul(&value.den.pow(dn - e as u32));
                out = out.add(&term);
            }
            out
        };
        Self::reduced(subst_poly(&self.num), subst_poly(&self.den))
    }

    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            return self.num.render(names);
        }
        let num = self.num.render(names);
        let den = self.den.render(names);
        let wrap = |s: String| {
            if s.contains(' ') {
                format!("({})", s)
            } else {
                s
            }
        };
        format!("{}/{}", wrap(num), wrap(den))
    }
}

impl crate::field::Field for ParamRat {
    fn zero() -> Self {
        Self::from_poly(ParamPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }
    fn from_int(n: i64) -> Self {
        Self::int(n)
    }
    fn is_zero(&self) -> bool {
        ParamRat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ParamRat::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        ParamRat::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ParamRat::mul(self, other)
    }
    fn neg(&self) -> Self {
        ParamRat::neg(self)
    }
    fn inv(&self) -> Self {
        ParamRat::inv(self).expect("inverse of zero")
    }
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("p{}", v)))
    }
}
