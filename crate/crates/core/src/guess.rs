//! Data-driven discovery: rational interpolation of partial-numerator
//! coefficients with period detection, and linear-recurrence guessing from
//! sequence values by exact nullspace computation.
//!
//! Everything here is heuristic; accepted guesses match all supplied data
//! including held-out points, and certification happens downstream.

use crate::cfrac::{CFracForm, CFracTerms, TailRecord};
use crate::field::Field;
use crate::linalg::nullspace_first;
use crate::ore::{RecOp, ShiftKind};
use crate::param::ParamRat;
use crate::poly::{UFrac, UPoly};
use crate::{Error, PolyN, RatK, RatZ};

/// Search caps and validation margins; echoed into certificates so guesses
/// are reproducible.
#[derive(Clone, Debug, PartialEq)]
pub struct GuessConfig {
    /// Number of continued fraction terms to guess from.
    pub terms: usize,
    /// Maximum period to try.
    pub period_max: usize,
    /// Degree caps for rational interpolation of tail coefficients.
    pub max_num_deg: usize,
    pub max_den_deg: usize,
    /// Caps for recurrence guessing.
    pub rec_max_order: usize,
    pub rec_max_deg: usize,
    /// Held-out points that must validate a guess.
    pub verify_margin: usize,
    /// Largest prefix length to strip before classifying tails.
    pub prefix_max: usize,
}

impl Default for GuessConfig {
    fn default() -> Self {
        GuessConfig {
            terms: 20,
            period_max: 2,
            max_num_deg: 4,
            max_den_deg: 4,
            rec_max_order: 6,
            rec_max_deg: 8,
            verify_margin: 2,
            prefix_max: 3,
        }
    }
}

impl GuessConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.terms < 2 * (self.max_num_deg + self.max_den_deg + 2) {
            return Err(Error::Unsupported(
                "too few terms for the interpolation degree caps".to_string(),
            ));
        }
        if self.verify_margin < 2 {
            return Err(Error::Unsupported(
                "verification margin must be at least 2".to_string(),
            ));
        }
        Ok(())
    }
}

/// Rational interpolation: the lowest-degree p(k)/q(k) within the caps that
/// matches every point, fitted on all but `margin` points and validated on
/// the rest. Points are (abscissa, value).
pub fn guess_rational(
    points: &[(ParamRat, ParamRat)],
    max_num_deg: usize,
    max_den_deg: usize,
    margin: usize,
) -> Option<RatK> {
    if points.len() < 3 {
        return None;
    }
    let fit = points.len().saturating_sub(margin);
    if fit < 2 {
        return None;
    }
    let maxdeg = max_num_deg.max(max_den_deg);
    let pows: Vec<Vec<ParamRat>> = points
        .iter()
        .map(|(x, _)| {
            let mut row = Vec::with_capacity(maxdeg + 1);
            let mut p = ParamRat::one();
            for _ in 0..=maxdeg {
                row.push(p.clone());
                p = p.mul(x);
            }
            row
        })
        .collect();
    for total in 0..=(max_num_deg + max_den_deg) {
        for dn in 0..=total.min(max_num_deg) {
            let dd = total - dn;
            if dd > max_den_deg {
                continue;
            }
            let ncols = dn + dd + 2;
            if ncols > fit + 1 {
                continue;
            }
            let mut rows = Vec::with_capacity(fit);
            for (i, (_, v)) in points.iter().enumerate().take(fit) {
                let mut row = Vec::with_capacity(ncols);
                for j in 0..=dn {
                    row.push(pows[i][j].clone());
                }
                for j in 0..=dd {
                    row.push(v.neg().mul(&pows[i][j]));
                }
                rows.push(row);
            }
            let Some(sol) = nullspace_first::<ParamRat>(&rows, ncols) else {
                continue;
            };
            let num = UPoly::from_coeffs(sol[..=dn].to_vec());
            let den = UPoly::from_coeffs(sol[dn + 1..].to_vec());
            if den.is_zero() {
                continue;
            }
            let Ok(cand) = UFrac::new(num, den) else {
                continue;
            };
            let ok = points.iter().all(|(x, v)| match cand.eval(x) {
                Ok(got) => got == *v,
                Err(_) => false,
            });
            if ok {
                return Some(cand);
            }
        }
    }
    None
}

/// Tries to explain the expanded terms by a closed form of exactly the
/// given period: strip a minimal prefix, require a constant exponent per
/// residue class, interpolate each class's coefficients.
pub fn guess_form_at_period(
    terms: &CFracTerms,
    period: usize,
    qvar: Option<usize>,
    cfg: &GuessConfig,
) -> Option<CFracForm> {
    let n = terms.terms.len();
    if n < 8 {
        return None;
    }
    'prefix: for p in 0..=cfg.prefix_max.min(n.saturating_sub(4)) {
        let mut class_exp: Vec<Option<usize>> = vec![None; period];
        let mut class_points: Vec<Vec<(ParamRat, ParamRat)>> = vec![Vec::new(); period];
        for m in (p + 1)..=n {
            let t = &terms.terms[m - 1];
            let r = m % period;
            match class_exp[r] {
                None => class_exp[r] = Some(t.exp),
                Some(e) if e == t.exp => {}
                _ => continue 'prefix,
            }
            let kappa = ((m - r) / period) as i64;
            let x = match qvar {
                None => ParamRat::int(kappa),
                Some(q) => ParamRat::var(q).pow(kappa as u32),
            };
            class_points[r].push((x, t.coeff.clone()));
        }
        let mut tails = Vec::with_capacity(period);
        let mut ok = true;
        for r in 0..period {
            let Some(exp) = class_exp[r] else {
                ok = false;
                break;
            };
            if exp == 0 {
                ok = false;
                break;
            }
            let Some(coeff) = guess_rational(
                &class_points[r],
                cfg.max_num_deg,
                cfg.max_den_deg,
                cfg.verify_margin,
            ) else {
                ok = false;
                break;
            };
            if denominator_vanishes_later(&coeff, qvar) {
                ok = false;
                break;
            }
            tails.push(TailRecord { coeff, exp });
        }
        if !ok {
            continue;
        }
        return Some(CFracForm {
            a0: terms.a0.clone(),
            prefix: terms.terms[..p].to_vec(),
            period,
            tails,
            qvar,
        });
    }
    None
}

/// True when the tail denominator vanishes at some class index beyond the
/// sampled window (interpolation itself already rejects poles at samples).
fn denominator_vanishes_later(coeff: &RatK, qvar: Option<usize>) -> bool {
    let den = coeff.den();
    if den.deg() == 0 {
        return false;
    }
    let lifted = crate::cfrac::lift_polyk(den);
    let kind = match qvar {
        None => ShiftKind::Shift,
        Some(q) => ShiftKind::QDilate(q),
    };
    match crate::ore::index_roots(&lifted, kind) {
        Ok(roots) => !roots.is_empty(),
        Err(_) => true,
    }
}

/// The closed form with the smallest period (then smallest prefix) that
/// validates on all terms.
pub fn guess_cfrac_formula(
    terms: &CFracTerms,
    qvar: Option<usize>,
    cfg: &GuessConfig,
) -> Option<CFracForm> {
    for period in 1..=cfg.period_max {
        if let Some(f) = guess_form_at_period(terms, period, qvar, cfg) {
            return Some(f);
        }
    }
    None
}

/// Guesses the smallest-order recurrence annihilating the values, with
/// coefficients polynomial in the index (or in q^k) of ascending degree,
/// fitted on the early terms and validated on all of them.
pub fn guessrec(values: &[RatZ], shift: ShiftKind, cfg: &GuessConfig) -> Option<RecOp> {
    let n = values.len();
    if n < 4 {
        return None;
    }
    for order in 1..=cfg.rec_max_order {
        if n <= order {
            break;
        }
        for deg in 0..=cfg.rec_max_deg {
            let unknowns = (order + 1) * (deg + 1);
            // hold out as many windows as the margin allows while keeping
            // the fit generically determined up to scale
            let slack = (n + 1).checked_sub(order + unknowns);
            let Some(slack) = slack else { continue };
            let margin = cfg.verify_margin.min(slack);
            let rows_avail = n - margin - order;
            let mut rows = Vec::with_capacity(rows_avail);
            for base in 0..rows_avail {
                let x = shift.index_value(base as i64);
                let mut xpow = Vec::with_capacity(deg + 1);
                let mut p = RatZ::one();
                for _ in 0..=deg {
                    xpow.push(p.clone());
                    p = p.mul(&x);
                }
                let mut row = Vec::with_capacity(unknowns);
                for i in 0..=order {
                    for d in 0..=deg {
                        row.push(xpow[d].mul(&values[base + i]));
                    }
                }
                rows.push(row);
            }
            let Some(sol) = nullspace_first::<RatZ>(&rows, unknowns) else {
                continue;
            };
            let mut coeffs: Vec<PolyN> = Vec::with_capacity(order + 1);
            for i in 0..=order {
                let c = UPoly::from_coeffs(sol[i * (deg + 1)..(i + 1) * (deg + 1)].to_vec());
                coeffs.push(c);
            }
            if coeffs.last().map(|c| c.is_zero()).unwrap_or(true) {
                continue; // genuinely lower order; already searched
            }
            let op = RecOp::from_polys(coeffs, shift);
            let ok = (0..n - order)
                .all(|base| op.apply(&values[base..base + order + 1], base as i64).is_zero());
            if ok {
                return Some(op);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::series_to_cfrac;
    use crate::field::rat;
    use crate::solver::test_models::{exp_model, tan_model};
    use crate::PolyZ;

    fn c(n: i64, d: i64) -> ParamRat {
        ParamRat::constant(rat(n, d))
    }

    #[test]
    fn interpolate_tan_coefficients() {
        // points (n, -1/((2n-3)(2n-1))) for n = 2..8 -> the closed form
        let pts: Vec<(ParamRat, ParamRat)> = (2..=8i64)
            .map(|n| (ParamRat::int(n), c(-1, (2 * n - 3) * (2 * n - 1))))
            .collect();
        let f = guess_rational(&pts, 4, 4, 2).unwrap();
        let expect = RatK::new(
            UPoly::constant(c(-1, 1)),
            UPoly::from_coeffs(vec![c(3, 1), c(-8, 1), c(4, 1)]),
        )
        .unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn interpolate_constant() {
        let pts: Vec<_> = (0..6i64)
            .map(|n| (ParamRat::int(n), ParamRat::int(7)))
            .collect();
        let f = guess_rational(&pts, 4, 4, 2).unwrap();
        assert_eq!(f, RatK::constant(ParamRat::int(7)));
    }

    #[test]
    fn interpolate_brouncker_tail() {
        // (k, (2k-3)^2/4) for k = 3..8
        let pts: Vec<_> = (3..=8i64)
            .map(|k| (ParamRat::int(k), c((2 * k - 3) * (2 * k - 3), 4)))
            .collect();
        let f = guess_rational(&pts, 4, 4, 2).unwrap();
        let expect = RatK::from_poly(UPoly::from_coeffs(vec![c(9, 4), c(-3, 1), c(1, 1)]));
        assert_eq!(f, expect);
    }

    #[test]
    fn guess_tan_form() {
        let s = tan_model().solve_series(44).unwrap();
        let terms = series_to_cfrac(&s, 20);
        let cfg = GuessConfig::default();
        let form = guess_cfrac_formula(&terms, None, &cfg).unwrap();
        assert_eq!(form.period, 1);
        assert_eq!(form.prefix.len(), 1);
        assert_eq!(form.prefix[0].coeff, ParamRat::one());
        assert_eq!(form.prefix[0].exp, 1);
        assert_eq!(form.tails[0].exp, 2);
        let expect = RatK::new(
            UPoly::constant(c(-1, 1)),
            UPoly::from_coeffs(vec![c(3, 1), c(-8, 1), c(4, 1)]),
        )
        .unwrap();
        assert_eq!(form.tails[0].coeff, expect);
    }

    #[test]
    fn guess_exp_form() {
        let s = exp_model().solve_series(26).unwrap();
        let terms = series_to_cfrac(&s, 20);
        let cfg = GuessConfig::default();
        let form = guess_cfrac_formula(&terms, None, &cfg).unwrap();
        assert_eq!(form.period, 2);
        assert_eq!(form.prefix.len(), 1);
        // a_{2k} = -1/(2(2k-1)), a_{2k+1} = 1/(2(2k+1))
        let even = RatK::new(
            UPoly::constant(c(-1, 1)),
            UPoly::from_coeffs(vec![c(-2, 1), c(4, 1)]),
        )
        .unwrap();
        let odd = RatK::new(
            UPoly::constant(c(1, 1)),
            UPoly::from_coeffs(vec![c(2, 1), c(4, 1)]),
        )
        .unwrap();
        assert_eq!(form.tails[0].coeff, even);
        assert_eq!(form.tails[1].coeff, odd);
    }

    #[test]
    fn guess_airy_form_from_synthetic_terms() {
        // a_1 = -z^3/4, a_{2k} = (6k-1)z^3/8, a_{2k+1} = (6k+1)z^3/8
        let mut terms = Vec::new();
        terms.push(crate::cfrac::CfTerm { coeff: c(-1, 4), exp: 3 });
        for m in 2..=20usize {
            let k = (m / 2) as i64;
            let coeff = if m % 2 == 0 { c(6 * k - 1, 8) } else { c(6 * k + 1, 8) };
            terms.push(crate::cfrac::CfTerm { coeff, exp: 3 });
        }
        let terms = CFracTerms { a0: ParamRat::zero(), terms, exact: false, complete: true };
        let cfg = GuessConfig::default();
        let form = guess_cfrac_formula(&terms, None, &cfg).unwrap();
        assert_eq!(form.period, 2);
        assert_eq!(form.prefix.len(), 1);
        let even = RatK::from_poly(UPoly::from_coeffs(vec![c(-1, 8), c(6, 8)]));
        let odd = RatK::from_poly(UPoly::from_coeffs(vec![c(1, 8), c(6, 8)]));
        assert_eq!(form.tails[0].coeff, even);
        assert_eq!(form.tails[1].coeff, odd);
        assert_eq!(form.tails[0].exp, 3);
    }

    #[test]
    fn guessrec_tan_h_values() {
        // six H values -1, -z^2, -z^4/9, ... -> (2n+1)^2 S - z^2
        let mut values = Vec::new();
        let mut denom = rat(1, 1);
        for n in 0..6i64 {
            if n > 0 {
                denom = denom * rat(2 * n - 1, 1);
            }
            let coeff = ParamRat::constant(-(rat(1, 1) / (denom.clone() * denom.clone())));
            values.push(RatZ::from_poly(PolyZ::monomial(coeff, 2 * n as usize)));
        }
        let cfg = GuessConfig::default();
        let op = guessrec(&values, ShiftKind::Shift, &cfg).unwrap();
        let z2 = PolyN::constant(RatZ::from_poly(PolyZ::monomial(ParamRat::one(), 2)));
        let expect = RecOp::from_polys(
            vec![
                z2.neg(),
                crate::cfrac::lift_polyk(&UPoly::from_coeffs(vec![c(1, 1), c(4, 1), c(4, 1)])),
            ],
            ShiftKind::Shift,
        );
        assert_eq!(op, expect);
    }

    #[test]
    fn guessrec_geometric() {
        // u_n = z^n -> S - z
        let values: Vec<RatZ> = (0..8usize)
            .map(|n| RatZ::from_poly(PolyZ::monomial(ParamRat::one(), n)))
            .collect();
        let cfg = GuessConfig::default();
        let op = guessrec(&values, ShiftKind::Shift, &cfg).unwrap();
        let z = PolyN::constant(RatZ::from_poly(PolyZ::var()));
        let expect = RecOp::from_polys(vec![z.neg(), PolyN::one()], ShiftKind::Shift);
        assert_eq!(op, expect);
    }

    #[test]
    fn guessrec_exp_even_h_values() {
        // H_{2k+2} = -z^2 H_{2k} / (4(2k+1)^2) -> 4(2k+1)^2 S + z^2
        let mut values = vec![RatZ::from_int(-1)];
        for k in 0..6i64 {
            let prev = values.last().unwrap().clone();
            let ratio = RatZ::new(
                PolyZ::monomial(c(-1, 4 * (2 * k + 1) * (2 * k + 1)), 2),
                PolyZ::one(),
            )
            .unwrap();
            values.push(prev.mul(&ratio));
        }
        let cfg = GuessConfig::default();
        let op = guessrec(&values, ShiftKind::Shift, &cfg).unwrap();
        let z2 = PolyN::constant(RatZ::from_poly(PolyZ::monomial(ParamRat::one(), 2)));
        let lead = crate::cfrac::lift_polyk(&UPoly::from_coeffs(vec![c(4, 1), c(16, 1), c(16, 1)]));
        let expect = RecOp::from_polys(vec![z2, lead], ShiftKind::Shift);
        assert_eq!(op, expect);
    }

    #[test]
    fn guessrec_rejects_garbage_within_caps() {
        let mut values = Vec::new();
        let mut acc = PolyZ::one();
        for n in 1..10usize {
            acc = acc.mul(&PolyZ::from_coeffs(vec![
                ParamRat::int(n as i64),
                ParamRat::one(),
            ]));
            let p = acc.add(&PolyZ::constant(ParamRat::int((n * n * n % 7) as i64)));
            values.push(RatZ::from_poly(p));
        }
        let cfg = GuessConfig { rec_max_order: 2, rec_max_deg: 2, ..GuessConfig::default() };
        assert!(guessrec(&values, ShiftKind::Shift, &cfg).is_none());
    }

    #[test]
    fn config_validation() {
        assert!(GuessConfig::default().validate().is_ok());
        let bad = GuessConfig { terms: 10, ..GuessConfig::default() };
        assert!(bad.validate().is_err());
    }
}
