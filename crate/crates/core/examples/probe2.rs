use std::time::Instant;
fn main() {
    use cfrac_core::field::Field;
    use cfrac_core::param::ParamRat;
    use cfrac_core::solver::{BiPoly, EqKind, EquationModel};
    use cfrac_core::{PolyZ, RatZ};
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
    for t in [8usize, 16, 24, 32, 46] {
        let t0 = Instant::now();
        let s = model.solve_series(t).unwrap();
        let top = s.coeff(t - 1);
        eprintln!(
            "T={} in {:?}; top coeff terms: num {} den {}",
            t,
            t0.elapsed(),
            top.num().num_terms(),
            top.den().num_terms()
        );
    }
}
