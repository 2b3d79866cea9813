//! C-fractions: conversion from power series, convergents through the
//! three-term recurrence, closed forms with periodic tail formulas, and
//! contraction of convergent subsequences to order-2 recurrences.

use crate::field::Field;
use crate::ore::{RecOp, ShiftKind};
use crate::param::ParamRat;
use crate::poly::UPoly;
use crate::series::TruncSeries;
use crate::{Error, PolyN, PolyZ, RatK, RatN, RatZ};

/// One partial numerator: the monomial coeff * x^exp with exp >= 1.
#[derive(Clone, PartialEq, Debug)]
pub struct CfTerm {
    pub coeff: ParamRat,
    pub exp: usize,
}

/// Expanded continued fraction data: a0 plus the list of partial
/// numerators actually determined from a truncated series.
#[derive(Clone, PartialEq, Debug)]
pub struct CFracTerms {
    pub a0: ParamRat,
    pub terms: Vec<CfTerm>,
    /// The remainder vanished identically within the truncation: the series
    /// is (up to truncation) exactly the finite fraction.
    pub exact: bool,
    /// All requested terms were determined before precision ran out.
    pub complete: bool,
}

/// Closed-form family for one residue class: a_k = coeff(kappa) * x^exp
/// where k = period * kappa + class. In the q-difference case the
/// coefficient function is in X = q^kappa.
#[derive(Clone, PartialEq, Debug)]
pub struct TailRecord {
    pub coeff: RatK,
    pub exp: usize,
}

/// Closed-form C-fraction: explicit prefix a_1..a_p, then one tail formula
/// per residue class modulo the period.
#[derive(Clone, PartialEq, Debug)]
pub struct CFracForm {
    pub a0: ParamRat,
    pub prefix: Vec<CfTerm>,
    pub period: usize,
    /// Indexed by class = k mod period.
    pub tails: Vec<TailRecord>,
    /// Parameter index of q when tails are functions of q^kappa.
    pub qvar: Option<usize>,
}

impl CFracForm {
    /// The partial numerator at full index m >= 1.
    pub fn term_at(&self, m: usize) -> Result<CfTerm, Error> {
        assert!(m >= 1);
        if m <= self.prefix.len() {
            return Ok(self.prefix[m - 1].clone());
        }
        let r = m % self.period;
        let kappa = ((m - r) / self.period) as i64;
        let tail = &self.tails[r];
        let x = match self.qvar {
            None => ParamRat::int(kappa),
            Some(q) => ParamRat::var(q).pow(kappa as u32),
        };
        let coeff = tail.coeff.eval(&x)?;
        Ok(CfTerm { coeff, exp: tail.exp })
    }

    /// The partial numerator at the symbolic full index period*nu + off, as
    /// a rational function of nu over Q(params)(z) (tail coefficient times
    /// its monomial).
    pub fn term_symbolic(&self, off: i64) -> Result<RatN, Error> {
        let r = (off.rem_euclid(self.period as i64)) as usize;
        let shift = (off - r as i64) / self.period as i64;
        let tail = &self.tails[r];
        let lifted: RatN = tail
            .coeff
            .map_coeffs(&|c: &ParamRat| RatZ::from_poly(PolyZ::constant(c.clone())));
        let composed = match self.qvar {
            None => lifted.shift_int(shift),
            Some(q) => lifted.scale_var(&crate::ore::q_power(q, shift)),
        };
        let mono = RatZ::from_poly(PolyZ::monomial(ParamRat::one(), tail.exp));
        Ok(composed.mul(&RatN::constant(mono)))
    }

    /// Smallest nonnegative nu such that the full index period*nu + off
    /// lies past the prefix.
    pub fn symbolic_valid_from(&self, off: i64) -> usize {
        let p = self.prefix.len() as i64;
        let lo = p + 1 - off; // need period*nu >= lo
        if lo <= 0 {
            0
        } else {
            ((lo + self.period as i64 - 1) / self.period as i64) as usize
        }
    }

    pub fn shift_kind(&self) -> ShiftKind {
        match self.qvar {
            None => ShiftKind::Shift,
            Some(q) => ShiftKind::QDilate(q),
        }
    }
}

/// Numerator/denominator pair of a convergent.
#[derive(Clone, PartialEq, Debug)]
pub struct ConvergentPair {
    pub p: PolyZ,
    pub q: PolyZ,
    pub index: usize,
}

/// Source of partial numerators for convergent generation.
pub enum CfSource<'a> {
    Terms(&'a CFracTerms),
    Form(&'a CFracForm),
}

impl CfSource<'_> {
    fn term_at(&self, m: usize) -> Result<CfTerm, Error> {
        match self {
            CfSource::Terms(t) => t.terms.get(m - 1).cloned().ok_or_else(|| {
                Error::Unsupported(format!("partial numerator {} not available", m))
            }),
            CfSource::Form(f) => f.term_at(m),
        }
    }
}

/// Convergents P_0/Q_0 .. P_n/Q_n from the three-term recurrence with
/// (P_-1, P_0) = (1, 0) and (Q_-1, Q_0) = (0, 1).
pub fn convergents(source: &CfSource, upto: usize) -> Result<Vec<ConvergentPair>, Error> {
    let mut pm1 = PolyZ::one();
    let mut p0 = PolyZ::zero();
    let mut qm1 = PolyZ::zero();
    let mut q0 = PolyZ::one();
    let mut out = vec![ConvergentPair { p: p0.clone(), q: q0.clone(), index: 0 }];
    for m in 1..=upto {
        let t = source.term_at(m)?;
        let a = PolyZ::monomial(t.coeff.clone(), t.exp);
        let p1 = p0.add(&a.mul(&pm1));
        let q1 = q0.add(&a.mul(&qm1));
        out.push(ConvergentPair { p: p1.clone(), q: q1.clone(), index: m });
        pm1 = p0;
        p0 = p1;
        qm1 = q0;
        q0 = q1;
    }
    Ok(out)
}

/// Converts a truncated series into its C-fraction by repeated extraction
/// of the leading monomial and inversion of the remainder. Stops when the
/// requested number of terms is reached, the remainder vanishes within
/// truncation (exact), or precision is exhausted.
pub fn series_to_cfrac(s: &TruncSeries, max_terms: usize) -> CFracTerms {
    let a0 = s.coeff(0);
    let mut terms = Vec::new();
    let mut cur = s.clone();
    cur.set_coeff(0, ParamRat::zero());
    let mut prec = s.trunc();
    loop {
        if terms.len() == max_terms {
            return CFracTerms { a0, terms, exact: false, complete: true };
        }
        let v = (0..prec).find(|&i| !cur.coeff(i).is_zero());
        let Some(v) = v else {
            return CFracTerms { a0, terms, exact: true, complete: false };
        };
        let c = cur.coeff(v);
        let newprec = prec - v;
        if newprec < 2 {
            // the term itself is determined, but nothing beyond it
            terms.push(CfTerm { coeff: c, exp: v });
            let complete = terms.len() == max_terms;
            return CFracTerms { a0, terms, exact: false, complete };
        }
        // remainder = a/t - 1 where t = c x^v (1 + h); precision drops by v
        let cinv = c.inv().expect("leading coefficient nonzero");
        let mut h = TruncSeries::zero(newprec);
        for i in 0..newprec {
            h.set_coeff(i, cur.coeff(v + i).mul(&cinv));
        }
        let inv = h.invert().expect("unit constant term");
        let mut next = inv;
        next.set_coeff(0, ParamRat::zero());
        terms.push(CfTerm { coeff: c, exp: v });
        cur = next;
        prec = newprec;
    }
}

/// Order-2 recurrence for a convergent subsequence along one residue
/// class: W(nu+2) = b(nu) W(nu+1) + a(nu) W(nu) with W(nu) = P at full
/// index period*nu + class.
#[derive(Clone, Debug)]
pub struct SubseqRec {
    pub op: RecOp,
    pub b: RatN,
    pub a: RatN,
    pub class: usize,
    pub valid_from: usize,
}

/// Eliminates the intermediate residue classes from the three-term
/// recurrence by forward substitution over the pair basis
/// (P at period*nu + class, P at period*nu + class + 1).
pub fn contract_subsequence(
    form: &CFracForm,
    stride: usize,
    class: usize,
) -> Result<SubseqRec, Error> {
    if stride != form.period {
        return Err(Error::Unsupported(
            "contraction stride must equal the period".to_string(),
        ));
    }
    let ell = form.period;
    let shift = form.shift_kind();
    let mut alpha: Vec<RatN> = vec![RatN::one(), RatN::zero()];
    let mut beta: Vec<RatN> = vec![RatN::zero(), RatN::one()];
    let mut valid = 0usize;
    for i in 2..=2 * ell {
        let off = class as i64 + i as i64;
        let a = form.term_symbolic(off)?;
        valid = valid.max(form.symbolic_valid_from(off));
        let na = alpha[i - 1].add(&a.mul(&alpha[i - 2]));
        let nb = beta[i - 1].add(&a.mul(&beta[i - 2]));
        alpha.push(na);
        beta.push(nb);
    }
    let (a_l, b_l) = (alpha[ell].clone(), beta[ell].clone());
    let (a_2l, b_2l) = (alpha[2 * ell].clone(), beta[2 * ell].clone());
    if b_l.is_zero() {
        return Err(Error::DegenerateContraction);
    }
    let b = b_2l.checked_div(&b_l)?;
    let a = a_2l.sub(&b.mul(&a_l));
    if a.is_zero() {
        return Err(Error::DegenerateContraction);
    }
    let op = RecOp::from_rational(vec![a.neg(), b.neg(), RatN::one()], shift);
    Ok(SubseqRec { op, b, a, class, valid_from: valid })
}

/// Equivalence transformation to unit partial denominators: given closed
/// forms a(k), b(k) of a recurrence u_{k+2} = b_{k+2} u_{k+1} + a_{k+2} u_k,
/// returns the transformed partial numerator a(k)/(b(k) b(k-1)).
pub fn normalize_bk(a: &RatK, b: &RatK) -> Result<RatK, Error> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let bm1 = b.shift_int(-1);
    if bm1.is_zero() {
        return Err(Error::DivisionByZero);
    }
    a.checked_div(&b.mul(&bm1))
}

/// Variant over Q(params)(z)(nu), used with contracted coefficients.
pub fn normalize_bk_ratn(a: &RatN, b: &RatN, shift: ShiftKind) -> Result<RatN, Error> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let bm1 = match shift {
        ShiftKind::Shift => b.shift_int(-1),
        ShiftKind::QDilate(q) => b.scale_var(&crate::ore::q_power(q, -1)),
    };
    a.checked_div(&b.mul(&bm1))
}

/// Lifts a parameter-valued polynomial in the index to PolyN.
pub fn lift_polyk(p: &UPoly<ParamRat>) -> PolyN {
    p.map(&|c: &ParamRat| RatZ::from_poly(PolyZ::constant(c.clone())))
}

#[cfg(test)]
pub(crate) mod test_forms {
    use super::*;

    /// ell=1 closed form for tan: prefix (z), tail -z^2/((2k-3)(2k-1)).
    pub fn tan_form() -> CFracForm {
        let k = UPoly::<ParamRat>::var();
        let den = k
            .scale(&ParamRat::int(2))
            .sub(&UPoly::constant(ParamRat::int(3)))
            .mul(&k.scale(&ParamRat::int(2)).sub(&UPoly::constant(ParamRat::int(1))));
        let coeff = RatK::new(UPoly::constant(ParamRat::int(-1)), den).unwrap();
        CFracForm {
            a0: ParamRat::zero(),
            prefix: vec![CfTerm { coeff: ParamRat::one(), exp: 1 }],
            period: 1,
            tails: vec![TailRecord { coeff, exp: 2 }],
            qvar: None,
        }
    }

    /// ell=2 closed form for exp: prefix (z), a_{2k} = -z/(2(2k-1)),
    /// a_{2k+1} = z/(2(2k+1)).
    pub fn exp_form() -> CFracForm {
        let k = UPoly::<ParamRat>::var();
        let even_den = k.scale(&ParamRat::int(4)).sub(&UPoly::constant(ParamRat::int(2)));
        let odd_den = k.scale(&ParamRat::int(4)).add(&UPoly::constant(ParamRat::int(2)));
        CFracForm {
            a0: ParamRat::zero(),
            prefix: vec![CfTerm { coeff: ParamRat::one(), exp: 1 }],
            period: 2,
            tails: vec![
                TailRecord {
                    coeff: RatK::new(UPoly::constant(ParamRat::int(-1)), even_den).unwrap(),
                    exp: 1,
                },
                TailRecord {
                    coeff: RatK::new(UPoly::constant(ParamRat::int(1)), odd_den).unwrap(),
                    exp: 1,
                },
            ],
            qvar: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_forms::*;
    use super::*;
    use crate::field::rat;
    use crate::solver::test_models::{brouncker_model, exp_model, tan_model};

    fn c(n: i64, d: i64) -> ParamRat {
        ParamRat::constant(rat(n, d))
    }

    fn tan_terms(n: usize) -> CFracTerms {
        let s = tan_model().solve_series(2 * n + 2).unwrap();
        series_to_cfrac(&s, n)
    }

    #[test]
    fn tan_cfrac_terms() {
        // [0, z, -z^2/3, -z^2/15, -z^2/35, -z^2/63, -z^2/99, -z^2/143]
        let got = tan_terms(7);
        assert!(got.complete);
        assert_eq!(got.a0, ParamRat::zero());
        let expect = [
            (1i64, 1i64, 1usize),
            (-1, 3, 2),
            (-1, 15, 2),
            (-1, 35, 2),
            (-1, 63, 2),
            (-1, 99, 2),
            (-1, 143, 2),
        ];
        for (i, (n, d, e)) in expect.iter().enumerate() {
            assert_eq!(got.terms[i].coeff, c(*n, *d), "term {}", i + 1);
            assert_eq!(got.terms[i].exp, *e);
        }
    }

    #[test]
    fn exp_cfrac_terms() {
        let s = exp_model().solve_series(12).unwrap();
        let got = series_to_cfrac(&s, 5);
        assert_eq!(got.terms[0].coeff, ParamRat::one());
        assert_eq!(got.terms[1].coeff, c(-1, 2));
        assert_eq!(got.terms[2].coeff, c(1, 6));
        assert_eq!(got.terms[3].coeff, c(-1, 6));
        assert_eq!(got.terms[4].coeff, c(1, 10));
        assert!(got.terms.iter().all(|t| t.exp == 1));
    }

    #[test]
    fn single_monomial_is_exact() {
        let mut s = TruncSeries::zero(6);
        s.set_coeff(1, ParamRat::one());
        let got = series_to_cfrac(&s, 5);
        assert!(got.exact);
        assert_eq!(got.terms.len(), 1);
        assert_eq!(got.terms[0].coeff, ParamRat::one());
        assert_eq!(got.terms[0].exp, 1);
    }

    #[test]
    fn convergents_examples() {
        let terms = tan_terms(4);
        let src = CfSource::Terms(&terms);
        let conv = convergents(&src, 3).unwrap();
        // P1 = z, Q1 = 1; P2 = z, Q2 = 1 - z^2/3
        assert_eq!(conv[1].p, PolyZ::var());
        assert_eq!(conv[1].q, PolyZ::one());
        assert_eq!(conv[2].p, PolyZ::var());
        let q2 = PolyZ::from_coeffs(vec![ParamRat::one(), ParamRat::zero(), c(-1, 3)]);
        assert_eq!(conv[2].q, q2);
        // P3 = z - z^3/15
        let p3 = PolyZ::from_coeffs(vec![
            ParamRat::zero(),
            ParamRat::one(),
            ParamRat::zero(),
            c(-1, 15),
        ]);
        assert_eq!(conv[3].p, p3);
        // P3/Q3 equals the hand-normalized z/(1 - (z^2/3)/(1 - z^2/15))
        let inner = RatZ::new(
            PolyZ::monomial(c(1, 3), 2),
            PolyZ::from_coeffs(vec![ParamRat::one(), ParamRat::zero(), c(-1, 15)]),
        )
        .unwrap();
        let outer_den = RatZ::one().sub(&inner);
        let expect = RatZ::from_poly(PolyZ::var()).checked_div(&outer_den).unwrap();
        let got = RatZ::new(conv[3].p.clone(), conv[3].q.clone()).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn convergents_keep_unit_constant_terms() {
        let form = tan_form();
        let conv = convergents(&CfSource::Form(&form), 8).unwrap();
        for pair in &conv {
            assert_eq!(pair.q.coeff(0), ParamRat::one(), "Q({})(0) = 1", pair.index);
            assert!(pair.p.coeff(0).is_zero(), "P({})(0) = 0", pair.index);
        }
    }

    #[test]
    fn roundtrip_with_strictly_increasing_valuation() {
        let model = tan_model();
        let t = 16;
        let s = model.solve_series(t).unwrap();
        let terms = series_to_cfrac(&s, 7);
        let conv = convergents(&CfSource::Terms(&terms), 7).unwrap();
        let mut last: Option<usize> = None;
        for pair in conv.iter().skip(1) {
            let f = RatZ::new(pair.p.clone(), pair.q.clone()).unwrap();
            let fs = TruncSeries::expand_ratz(&f, t).unwrap();
            let diff = s.sub(&fs);
            let v = match diff.val() {
                crate::series::Val::At(v) => v,
                crate::series::Val::AtLeast(b) => b,
            };
            if let Some(lv) = last {
                assert!(v > lv, "valuation must increase: {} then {}", lv, v);
            }
            last = Some(v);
        }
    }

    #[test]
    fn conversion_is_one_to_one() {
        // expansion of P_n/Q_n converts back to the same first n terms
        let form = tan_form();
        let n = 6;
        let conv = convergents(&CfSource::Form(&form), n).unwrap();
        let f = RatZ::new(conv[n].p.clone(), conv[n].q.clone()).unwrap();
        let fs = TruncSeries::expand_ratz(&f, 2 * n + 4).unwrap();
        let back = series_to_cfrac(&fs, n);
        for m in 1..=n {
            let expect = form.term_at(m).unwrap();
            assert_eq!(back.terms[m - 1], expect, "term {}", m);
        }
    }

    #[test]
    fn contract_exp_even_class() {
        // P_{2k+2} = P_{2k} + z^2/(4(4k^2-1)) P_{2k-2}
        let form = exp_form();
        let sub = contract_subsequence(&form, 2, 0).unwrap();
        assert_eq!(sub.valid_from, 0);
        assert_eq!(sub.b, RatN::one());
        // in the recurrence variable: a(nu) = z^2/(4(2nu+1)(2nu+3))
        let nu = PolyN::var();
        let den = nu
            .scale(&RatZ::from_int(2))
            .add(&PolyN::constant(RatZ::from_int(1)))
            .mul(&nu.scale(&RatZ::from_int(2)).add(&PolyN::constant(RatZ::from_int(3))))
            .scale(&RatZ::from_int(4));
        let z2 = RatZ::from_poly(PolyZ::monomial(ParamRat::one(), 2));
        let expect = RatN::new(PolyN::constant(z2), den).unwrap();
        assert_eq!(sub.a, expect);
    }

    #[test]
    fn contract_period_one_is_the_recurrence_itself() {
        let form = tan_form();
        let sub = contract_subsequence(&form, 1, 0).unwrap();
        assert_eq!(sub.b, RatN::one());
        assert_eq!(sub.valid_from, 0);
        let expect = form.term_symbolic(2).unwrap();
        assert_eq!(sub.a, expect);
    }

    #[test]
    fn contraction_annihilates_unfolded_subsequence() {
        let form = exp_form();
        for class in 0..2usize {
            let sub = contract_subsequence(&form, 2, class).unwrap();
            let hi = 2 * (sub.valid_from + 10) + class;
            let conv = convergents(&CfSource::Form(&form), hi).unwrap();
            for kappa in sub.valid_from..=sub.valid_from + 8 {
                let window: Vec<RatZ> = (0..3)
                    .map(|i| {
                        let idx = 2 * (kappa + i) + class;
                        RatZ::from_poly(conv[idx].p.clone())
                    })
                    .collect();
                let v = sub.op.apply(&window, kappa as i64);
                assert!(v.is_zero(), "class {} kappa {}", class, kappa);
            }
        }
    }

    #[test]
    fn normalize_bk_examples() {
        // b = 1: unchanged
        let k = UPoly::<ParamRat>::var();
        let a = RatK::from_poly(k.clone());
        let b1 = RatK::one();
        assert_eq!(normalize_bk(&a, &b1).unwrap(), a);
        // a_k = k, b_k = 2 -> a_k/4
        let b2 = RatK::constant(ParamRat::int(2));
        let got = normalize_bk(&a, &b2).unwrap();
        assert_eq!(
            got,
            RatK::new(k.clone(), UPoly::constant(ParamRat::int(4))).unwrap()
        );
    }

    #[test]
    fn normalize_bk_preserves_convergent_values() {
        // unfold u_{k+2} = b u_{k+1} + a u_k and the transformed
        // unit-denominator recurrence; reduced fractions agree for k <= 6
        let k = UPoly::<ParamRat>::var();
        let a = RatK::new(k.clone(), k.add(&UPoly::constant(ParamRat::int(3)))).unwrap();
        let b = RatK::new(
            k.add(&UPoly::constant(ParamRat::int(1))),
            UPoly::constant(ParamRat::int(2)),
        )
        .unwrap();
        let atil = normalize_bk(&a, &b).unwrap();
        let evalk = |f: &RatK, k0: i64| f.eval(&ParamRat::int(k0)).unwrap();
        let (mut pm1, mut p0) = (ParamRat::one(), ParamRat::zero());
        let (mut qm1, mut q0) = (ParamRat::zero(), ParamRat::one());
        let (mut tpm1, mut tp0) = (pm1.clone(), p0.clone());
        let (mut tqm1, mut tq0) = (qm1.clone(), q0.clone());
        for kk in 1..=6i64 {
            let bk = evalk(&b, kk);
            let ak = evalk(&a, kk);
            let p1 = bk.mul(&p0).add(&ak.mul(&pm1));
            let q1 = bk.mul(&q0).add(&ak.mul(&qm1));
            let t = if kk == 1 {
                evalk(&a, 1).div(&evalk(&b, 1)).unwrap()
            } else {
                evalk(&atil, kk)
            };
            let tp1 = tp0.add(&t.mul(&tpm1));
            let tq1 = tq0.add(&t.mul(&tqm1));
            if !q1.is_zero() && !tq1.is_zero() {
                assert_eq!(
                    p1.div(&q1).unwrap(),
                    tp1.div(&tq1).unwrap(),
                    "at k = {}",
                    kk
                );
            }
            pm1 = p0;
            p0 = p1;
            qm1 = q0;
            q0 = q1;
            tpm1 = tp0;
            tp0 = tp1;
            tqm1 = tq0;
            tq0 = tq1;
        }
    }

    #[test]
    fn brouncker_terms_in_reciprocal_variable() {
        let model = brouncker_model();
        let s = model.solve_series(20).unwrap();
        let got = series_to_cfrac(&s, 8);
        assert_eq!(got.terms[0].coeff, ParamRat::int(4));
        assert_eq!(got.terms[0].exp, 1);
        assert_eq!(got.terms[1].coeff, c(1, 2));
        assert_eq!(got.terms[1].exp, 2);
        for (i, t) in got.terms.iter().enumerate().skip(2) {
            let k = (i + 1) as i64;
            assert_eq!(t.coeff, c((2 * k - 3) * (2 * k - 3), 4), "a_{}", k);
            assert_eq!(t.exp, 2);
        }
    }
}
