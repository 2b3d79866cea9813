use cfrac_core::cfrac::*;
use cfrac_core::guess::*;
use cfrac_core::pipeline::*;
use cfrac_core::prover::*;
use std::time::Instant;

fn main() {
    use cfrac_core::field::Field;
    use cfrac_core::param::ParamRat;
    use cfrac_core::solver::{BiPoly, EqKind, EquationModel};
    use cfrac_core::{PolyZ, RatZ};
    // q-exponential (normalized): Y(qz) - Y(z) - (q-1)z - (q-1)z Y(z) = 0
    let q = ParamRat::var(0);
    let qm1_z = PolyZ::from_coeffs(vec![ParamRat::zero(), q.sub(&ParamRat::one())]);
    let mut poly = BiPoly::zero();
    poly.set_coeff(0, 1, RatZ::from_int(1));
    poly.set_coeff(1, 0, RatZ::from_int(-1).sub(&RatZ::from_poly(qm1_z.clone())));
    poly.set_coeff(0, 0, RatZ::from_poly(qm1_z).neg());
    let model = EquationModel {
        kind: EqKind::QDifference,
        poly,
        step: 0,
        q_param: Some(0),
        shift_applied: ParamRat::one(),
        leading_hint: None,
    };
    let cfg = PipelineConfig::default();
    let t0 = Instant::now();
    let terms = expand_terms(&model, &cfg).unwrap();
    eprintln!("terms: {:?} {}", t0.elapsed(), terms.terms.len());
    let t0 = Instant::now();
    let form = guess_form_at_period(&terms, 2, Some(0), &cfg.guess).unwrap();
    eprintln!("form: {:?} prefix {}", t0.elapsed(), form.prefix.len());
    let t0 = Instant::now();
    let sub = contract_subsequence(&form, 2, 0).unwrap();
    eprintln!("contract: {:?} valid {}", t0.elapsed(), sub.valid_from);
    let t0 = Instant::now();
    let (op, valid) = find_h_recurrence(&model, &sub, 30).unwrap();
    eprintln!("h-rec: {:?} order {} valid {}", t0.elapsed(), op.order(), valid);
    let t0 = Instant::now();
    let mand = op.mandatory_indices().unwrap();
    eprintln!("mandatory: {:?} {:?}", t0.elapsed(), mand);
    let count = mand.iter().max().map(|m| m + 1).unwrap_or(0).max(op.order() + 5);
    let t0 = Instant::now();
    let h = build_h_initials(&model, &form, count, 2, 2 * valid).unwrap();
    eprintln!("h-init: {:?} count {}", t0.elapsed(), h.values.len());
    let t0 = Instant::now();
    for base in 0..h.values.len().saturating_sub(op.order()) {
        let w = &h.values[base..base + op.order() + 1];
        assert!(op.apply(w, base as i64).is_zero(), "base {}", base);
    }
    eprintln!("annihilation: {:?}", t0.elapsed());
    let mut initials = std::collections::BTreeMap::new();
    for i in &mand {
        initials.insert(*i, h.values[*i].clone());
    }
    let t0 = Instant::now();
    let red = reduce_order(&op, &initials, &cfg.guess, 16).unwrap().unwrap();
    eprintln!("reduce: {:?} order {}", t0.elapsed(), red.reduced.order());
    let t0 = Instant::now();
    let v = valuation_verdict(&red.reduced, &h, EqKind::QDifference).unwrap();
    eprintln!("verdict: {:?} {:?}", t0.elapsed(), v);
}
