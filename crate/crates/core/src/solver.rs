//! Equation models for the three supported kinds and their truncated
//! series solutions.
//!
//! A model always describes the normalized unknown with value 0 at the
//! expansion point; nonzero initial values are removed beforehand by the
//! change of unknown Y -> a + Y, and the applied shift is recorded for the
//! certificate.
//!
//! Series conventions: differential and q-difference solutions expand in z
//! at the origin; difference solutions expand in t = 1/s at infinity, and
//! valuations of rational functions of s are measured as denominator degree
//! minus numerator degree.

use crate::field::Field;
use crate::param::ParamRat;
use crate::series::{poly_eval_at_series, TruncSeries, Val};
use crate::{Error, PolyZ, RatZ};

/// Which functional equation the model encodes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EqKind {
    /// Y' = F(z, Y); stored as E(Y0, Y1) = 0 with Y0 = Y, Y1 = Y', linear in Y1.
    Differential,
    /// E(Y(s), Y(s+step)) = 0; series variable t = 1/s.
    Difference,
    /// E(Y(z), Y(qz)) = 0.
    QDifference,
}

/// Polynomial in the two evaluations of the unknown, with rational-function
/// coefficients: sum of g[i][j] * Y0^i * Y1^j.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly {
    rows: Vec<Vec<RatZ>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<Vec<RatZ>>) -> Self {
        let mut b = BiPoly { rows };
        b.trim();
        b
    }

    fn trim(&mut self) {
        for row in &mut self.rows {
            while row.last().map(|c| c.is_zero()).unwrap_or(false) {
                row.pop();
            }
        }
        while self.rows.last().map(|r| r.is_empty()).unwrap_or(false) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn coeff(&self, i: usize, j: usize) -> RatZ {
        self.rows
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(RatZ::zero)
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: RatZ) {
        while self.rows.len() <= i {
            self.rows.push(Vec::new());
        }
        while self.rows[i].len() <= j {
            self.rows[i].push(RatZ::zero());
        }
        self.rows[i][j] = c;
        self.trim();
    }

    /// Degree in Y0.
    pub fn deg0(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// Degree in Y1.
    pub fn deg1(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &RatZ)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            let s = out.coeff(i, j).add(c);
            out.set_coeff(i, j, s);
        }
        out
    }

    pub fn scale(&self, c: &RatZ) -> Self {
        BiPoly::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(|x| x.mul(c)).collect())
                .collect(),
        )
    }

    /// Substitutes Y0 -> a + Y0 and Y1 -> a + Y1 (the change of unknown for
    /// a nonzero initial value).
    pub fn shift_unknown(&self, a: &ParamRat) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let av = RatZ::from_poly(PolyZ::constant(a.clone()));
        let mut out = BiPoly::zero();
        for (i, j, c) in self.terms() {
            for i2 in 0..=i {
                for j2 in 0..=j {
                    let bin = binom(i, i2) * binom(j, j2);
                    let factor = av
                        .pow((i - i2) as u32 + (j - j2) as u32)
                        .mul(&RatZ::from_int(bin));
                    let t = c.mul(&factor);
                    let s = out.coeff(i2, j2).add(&t);
                    out.set_coeff(i2, j2, s);
                }
            }
        }
        out
    }

    /// Common denominator of all coefficients (monic).
    pub fn den_lcm(&self) -> PolyZ {
        let mut den = PolyZ::one();
        for (_, _, c) in self.terms() {
            den = den.lcm(c.den());
        }
        den
    }

    /// Exact evaluation at rational functions.
    pub fn eval_ratz(&self, y0: &RatZ, y1: &RatZ) -> RatZ {
        let mut acc = RatZ::zero();
        for (i, j, c) in self.terms() {
            acc = acc.add(&c.mul(&y0.pow(i as u32)).mul(&y1.pow(j as u32)));
        }
        acc
    }
}

fn binom(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// A normalized first-order functional equation.
#[derive(Clone, Debug)]
pub struct EquationModel {
    pub kind: EqKind,
    /// E(Y0, Y1) = 0 with rational-function coefficients in the main
    /// variable (z, or s for the difference kind).
    pub poly: BiPoly,
    /// Difference step (s -> s + step); 0 otherwise.
    pub step: i64,
    /// Parameter index of q for the q-difference kind.
    pub q_param: Option<usize>,
    /// Initial value that was removed by the change of unknown.
    pub shift_applied: ParamRat,
    /// Chosen branch for the difference-kind leading coefficient.
    pub leading_hint: Option<ParamRat>,
}

impl EquationModel {
    /// Solved-form coefficients f_0..f_d with Y' = F(z, Y) = sum f_j Y^j,
    /// for the differential kind. Requires the Y1-part to be linear with a
    /// Y0-free coefficient.
    pub fn solved_form(&self) -> Result<Vec<RatZ>, Error> {
        assert_eq!(self.kind, EqKind::Differential);
        if self.poly.deg1() > 1 {
            return Err(Error::Unsupported(
                "equation is not linear in y'".to_string(),
            ));
        }
        let mut e1 = RatZ::zero();
        let mut e0: Vec<RatZ> = Vec::new();
        for (i, j, c) in self.poly.terms() {
            if j == 1 {
                if i > 0 {
                    return Err(Error::Unsupported(
                        "the y' coefficient must not involve y".to_string(),
                    ));
                }
                e1 = c.clone();
            } else {
                while e0.len() <= i {
                    e0.push(RatZ::zero());
                }
                e0[i] = e0[i].add(c);
            }
        }
        if e1.is_zero() {
            return Err(Error::Unsupported("no y' term".to_string()));
        }
        let mut f: Vec<RatZ> = e0
            .iter()
            .map(|c| c.neg().checked_div(&e1))
            .collect::<Result<_, _>>()?;
        while f.last().map(|c| c.is_zero()).unwrap_or(false) {
            f.pop();
        }
        if f.len() <= 1 {
            return Err(Error::Unsupported(
                "right-hand side must depend on y".to_string(),
            ));
        }
        Ok(f)
    }

    /// Degree d of F in Y for the differential kind.
    pub fn rhs_degree(&self) -> Result<usize, Error> {
        Ok(self.solved_form()?.len() - 1)
    }

    /// True if some solved-form coefficient has a pole at the origin.
    pub fn singular_at_origin(&self) -> Result<bool, Error> {
        let f = self.solved_form()?;
        Ok(f.iter().any(|c| c.den().val() > c.num().val()))
    }

    /// The unique truncated series solution vanishing at the expansion
    /// point.
    pub fn solve_series(&self, trunc: usize) -> Result<TruncSeries, Error> {
        assert!(trunc >= 1);
        match self.kind {
            EqKind::Differential => {
                if self.singular_at_origin()? {
                    self.solve_undetermined(trunc)
                } else {
                    self.solve_fixed_point(trunc)
                }
            }
            EqKind::Difference | EqKind::QDifference => self.solve_undetermined(trunc),
        }
    }

    /// Fixed-point iteration Y <- integral of F(z, Y), run exactly `trunc`
    /// times; each pass gains at least one correct order, so pass i only
    /// needs working precision i + 3.
    fn solve_fixed_point(&self, trunc: usize) -> Result<TruncSeries, Error> {
        let f = self.solved_form()?;
        let mut y = TruncSeries::zero(1);
        for i in 0..trunc {
            let t = (i + 3).min(trunc);
            y = poly_eval_at_series(&f, &y.truncate(t))?
                .integrate()
                .truncate(t);
        }
        Ok(y.truncate(trunc))
    }

    /// Undetermined coefficients on the denominator-cleared equation,
    /// determining one series coefficient per residual order. Residual
    /// coefficients are extracted order by order so the total work is a
    /// single convolution pass.
    fn solve_undetermined(&self, trunc: usize) -> Result<TruncSeries, Error> {
        let work = trunc + 4;
        let mut state = UndeterminedState::new(self, work)?;
        let dtot = self
            .poly
            .terms()
            .map(|(i, j, _)| i + j)
            .max()
            .unwrap_or(1)
            .max(1);
        let mut frozen = vec![false; work];
        frozen[0] = true;
        let mut gain: Option<i64> = None;
        let mut used_hint = false;
        let mut v = 0usize;
        while v < work - 1 {
            if !state.residual_coeff(v).is_zero() {
                // pick the coefficient index controlling this order
                let candidates: Vec<usize> = match gain {
                    Some(g) => {
                        let m = v as i64 - g;
                        if m >= 1 && (m as usize) < work && !frozen[m as usize] {
                            vec![m as usize]
                        } else {
                            (1..work).filter(|&m| !frozen[m]).collect()
                        }
                    }
                    None => (1..work).filter(|&m| !frozen[m]).collect(),
                };
                let mut solved = false;
                for m in candidates {
                    let mut values = Vec::with_capacity(dtot + 1);
                    for c in 0..=dtot as i64 {
                        state.set_coeff(m, ParamRat::int(c));
                        values.push(state.residual_coeff(v));
                    }
                    state.set_coeff(m, ParamRat::zero());
                    let phi = newton_interpolate(&values);
                    if phi.len() <= 1 {
                        continue;
                    }
                    let root = if phi.len() == 2 {
                        phi[0].neg().div(&phi[1])?
                    } else {
                        match (&self.leading_hint, used_hint) {
                            (Some(hint), false) => {
                                let mut acc = ParamRat::zero();
                                for c in phi.iter().rev() {
                                    acc = acc.mul(hint).add(c);
                                }
                                if !acc.is_zero() {
                                    return Err(Error::NoFormalSolution(
                                        "supplied leading coefficient is not a solution branch"
                                            .to_string(),
                                    ));
                                }
                                used_hint = true;
                                hint.clone()
                            }
                            _ => return Err(Error::BranchingSolution),
                        }
                    };
                    state.set_coeff(m, root);
                    frozen[m] = true;
                    gain = Some(v as i64 - m as i64);
                    solved = true;
                    break;
                }
                if !solved {
                    return Err(Error::NoFormalSolution(format!(
                        "no coefficient controls residual order {}",
                        v
                    )));
                }
                if !state.residual_coeff(v).is_zero() {
                    return Err(Error::NoFormalSolution(format!(
                        "residual order {} not cleared",
                        v
                    )));
                }
            }
            v += 1;
        }
        // every coefficient within the requested order must be pinned down
        if let Some(m) = (1..trunc).find(|&m| !frozen[m]) {
            let g = gain.unwrap_or(0);
            if (m as i64 + g) >= (work - 1) as i64 {
                return Err(Error::NoFormalSolution(format!(
                    "coefficient {} left undetermined",
                    m
                )));
            }
        }
        Ok(TruncSeries::from_coeffs(state.y[..trunc].to_vec()))
    }

    /// Valuation of the residual of an exact rational function under the
    /// equation, in the expansion variable.
    pub fn residual_valuation(&self, f: &RatZ) -> Result<Val, Error> {
        let resid = match self.kind {
            EqKind::Differential => {
                let fd = f.derivative_by(&|p| p.derivative());
                let solved = self.solved_form()?;
                let mut rhs = RatZ::zero();
                for c in solved.iter().rev() {
                    rhs = rhs.mul(f).add(c);
                }
                fd.sub(&rhs)
            }
            EqKind::QDifference => {
                let q = ParamRat::var(self.q_param.expect("q present"));
                let fq = dilate_ratz(f, &q);
                self.poly.eval_ratz(f, &fq)
            }
            EqKind::Difference => {
                let fs = shift_arg_ratz(f, self.step);
                self.poly.eval_ratz(f, &fs)
            }
        };
        Ok(ratz_valuation(&resid, self.kind))
    }

    /// The remainder polynomial: the equation evaluated at the convergent
    /// P/Q with all denominators cleared. For the differential kind this is
    /// lcm * Q^max(2,d) * ((P/Q)' - F(z, P/Q)); for the other kinds
    /// lcm * Q^d0 * Qshift^d1 * E(P/Q, Pshift/Qshift).
    pub fn residual_numerator(&self, p: &PolyZ, q: &PolyZ) -> Result<PolyZ, Error> {
        assert!(!q.is_zero(), "zero denominator");
        match self.kind {
            EqKind::Differential => {
                let f = self.solved_form()?;
                let d = f.len() - 1;
                let e = d.max(2);
                let lcm = lcm_of_dens(&f);
                let wron = p.derivative().mul(q).sub(&p.mul(&q.derivative()));
                let mut acc = q.pow((e - 2) as u32).mul(&wron).mul(&lcm);
                for (j, fj) in f.iter().enumerate() {
                    if fj.is_zero() {
                        continue;
                    }
                    let cleared = fj
                        .mul(&RatZ::from_poly(lcm.clone()))
                        .as_poly()
                        .expect("lcm clears every solved-form denominator");
                    let term = cleared.mul(&p.pow(j as u32)).mul(&q.pow((e - j) as u32));
                    acc = acc.sub(&term);
                }
                Ok(acc)
            }
            EqKind::QDifference | EqKind::Difference => {
                let (pshift, qshift) = match self.kind {
                    EqKind::QDifference => {
                        let qq = ParamRat::var(self.q_param.expect("q present"));
                        (dilate_polyz(p, &qq), dilate_polyz(q, &qq))
                    }
                    _ => (p.shift_int(self.step), q.shift_int(self.step)),
                };
                let d0 = self.poly.deg0() as u32;
                let d1 = self.poly.deg1() as u32;
                let lcm = self.poly.den_lcm();
                let mut acc = PolyZ::zero();
                for (i, j, c) in self.poly.terms() {
                    let cleared = c
                        .mul(&RatZ::from_poly(lcm.clone()))
                        .as_poly()
                        .expect("lcm clears");
                    let term = cleared
                        .mul(&p.pow(i as u32))
                        .mul(&q.pow(d0 - i as u32))
                        .mul(&pshift.pow(j as u32))
                        .mul(&qshift.pow(d1 - j as u32));
                    acc = acc.add(&term);
                }
                Ok(acc)
            }
        }
    }
}

fn lcm_of_dens(f: &[RatZ]) -> PolyZ {
    let mut lcm = PolyZ::one();
    for c in f {
        lcm = lcm.lcm(c.den());
    }
    lcm
}

/// Incremental evaluation state for the undetermined-coefficient solver:
/// the partial solution, its derived series (derivative or substituted
/// argument), and the cleared coefficient expansions.
struct UndeterminedState<'a> {
    eq: &'a EquationModel,
    work: usize,
    y: Vec<ParamRat>,
    /// derivative (differential), dilated (q), or argument-shifted
    /// (difference) series of y
    d: Vec<ParamRat>,
    /// expansions of the cleared coefficients, aligned with poly.terms()
    gser: Vec<(usize, usize, TruncSeries)>,
    /// difference kind: power table of t/(1 + step t)
    wtab: Option<Vec<TruncSeries>>,
    /// q kind: powers of q
    qpow: Vec<ParamRat>,
}

impl<'a> UndeterminedState<'a> {
    fn new(eq: &'a EquationModel, work: usize) -> Result<Self, Error> {
        let lcm = eq.poly.den_lcm();
        let mut gser = Vec::new();
        match eq.kind {
            EqKind::Difference => {
                let mut shift = 0i64;
                for (_, _, c) in eq.poly.terms() {
                    let d = c.num().deg() as i64 - c.den().deg() as i64;
                    if d > shift {
                        shift = d;
                    }
                }
                for (i, j, c) in eq.poly.terms() {
                    gser.push((i, j, expand_in_recip(c, shift, work)?));
                }
            }
            _ => {
                for (i, j, c) in eq.poly.terms() {
                    let cleared = c.mul(&RatZ::from_poly(lcm.clone()));
                    gser.push((i, j, TruncSeries::expand_ratz(&cleared, work)?));
                }
            }
        }
        let wtab = match eq.kind {
            EqKind::Difference => Some(shift_power_table(eq.step, work)),
            _ => None,
        };
        let mut qpow = Vec::new();
        if eq.kind == EqKind::QDifference {
            let q = ParamRat::var(eq.q_param.expect("q present"));
            let mut p = ParamRat::one();
            for _ in 0..work {
                qpow.push(p.clone());
                p = p.mul(&q);
            }
        }
        Ok(UndeterminedState {
            eq,
            work,
            y: vec![ParamRat::zero(); work],
            d: vec![ParamRat::zero(); work],
            gser,
            wtab,
            qpow,
        })
    }

    fn set_coeff(&mut self, m: usize, c: ParamRat) {
        let old = std::mem::replace(&mut self.y[m], c.clone());
        let delta = c.sub(&old);
        if delta.is_zero() {
            return;
        }
        match self.eq.kind {
            EqKind::Differential => {
                if m >= 1 {
                    self.d[m - 1] = self.d[m - 1].add(&delta.mul(&ParamRat::int(m as i64)));
                }
            }
            EqKind::QDifference => {
                self.d[m] = self.d[m].add(&delta.mul(&self.qpow[m]));
            }
            EqKind::Difference => {
                let w = &self.wtab.as_ref().expect("difference table")[m];
                for x in 0..self.work {
                    let wc = w.coeff(x);
                    if !wc.is_zero() {
                        self.d[x] = self.d[x].add(&delta.mul(&wc));
                    }
                }
            }
        }
    }

    /// Coefficient of order x of Y0^i * Y1^j over the current state.
    fn power_coeff(&self, i: usize, j: usize, x: usize) -> ParamRat {
        match (i, j) {
            (0, 0) => {
                if x == 0 {
                    ParamRat::one()
                } else {
                    ParamRat::zero()
                }
            }
            (1, 0) => self.y[x].clone(),
            (0, 1) => self.d[x].clone(),
            _ => {
                // peel one factor and convolve
                let (i2, j2, f): (usize, usize, &Vec<ParamRat>) = if i > 0 {
                    (i - 1, j, &self.y)
                } else {
                    (i, j - 1, &self.d)
                };
                let mut acc = ParamRat::zero();
                for u in 0..=x {
                    if !f[u].is_zero() {
                        let rest = self.power_coeff(i2, j2, x - u);
                        if !rest.is_zero() {
                            acc = acc.add(&f[u].mul(&rest));
                        }
                    }
                }
                acc
            }
        }
    }

    /// Coefficient of order v of the cleared equation at the current state.
    fn residual_coeff(&self, v: usize) -> ParamRat {
        let mut acc = ParamRat::zero();
        for (i, j, g) in &self.gser {
            for a in 0..=v {
                let ga = g.coeff(a);
                if ga.is_zero() {
                    continue;
                }
                let p = self.power_coeff(*i, *j, v - a);
                if !p.is_zero() {
                    acc = acc.add(&ga.mul(&p));
                }
            }
        }
        acc
    }
}

/// Expansion of a rational function of s in t = 1/s, pre-multiplied by
/// t^shift so the result is a regular series.
fn expand_in_recip(c: &RatZ, shift: i64, trunc: usize) -> Result<TruncSeries, Error> {
    if c.is_zero() {
        return Ok(TruncSeries::zero(trunc));
    }
    let dn = c.num().deg() as i64;
    let dd = c.den().deg() as i64;
    let npoly = reverse_poly(c.num());
    let dpoly = reverse_poly(c.den());
    let ns = TruncSeries::from_poly(&npoly, trunc);
    let ds = TruncSeries::from_poly(&dpoly, trunc);
    let base = ns.mul(&ds.invert()?);
    let e = dd - dn + shift;
    if e < 0 {
        return Err(Error::Unsupported(
            "difference equation has a deeper pole than accounted for".to_string(),
        ));
    }
    Ok(base.mul_monomial(&ParamRat::one(), e as usize).truncate(trunc))
}

/// Powers (t/(1+beta t))^m for m = 0..trunc-1.
fn shift_power_table(beta: i64, trunc: usize) -> Vec<TruncSeries> {
    let mut geom = TruncSeries::zero(trunc);
    for i in 0..trunc {
        geom.set_coeff(i, ParamRat::constant(crate::field::int(-beta).pow(i as i32)));
    }
    let w = geom.mul_monomial(&ParamRat::one(), 1).truncate(trunc);
    let mut one = TruncSeries::zero(trunc);
    one.set_coeff(0, ParamRat::one());
    let mut out = vec![one];
    for m in 1..trunc {
        out.push(out[m - 1].mul(&w));
    }
    out
}

fn compose_with_table(y: &TruncSeries, table: &[TruncSeries]) -> TruncSeries {
    let t = y.trunc().min(table.len());
    let mut acc = TruncSeries::zero(t);
    for m in 1..t {
        let c = y.coeff(m);
        if !c.is_zero() {
            acc = acc.add(&table[m].truncate(t).scale(&c));
        }
    }
    acc
}

fn reverse_poly(p: &PolyZ) -> PolyZ {
    let mut coeffs: Vec<ParamRat> = p.coeffs().to_vec();
    coeffs.reverse();
    PolyZ::from_coeffs(coeffs)
}

/// Newton interpolation of values at 0, 1, ..., n-1, returned as monomial
/// coefficients (no trailing zeros).
fn newton_interpolate(values: &[ParamRat]) -> Vec<ParamRat> {
    let n = values.len();
    let mut table = vec![values.to_vec()];
    for level in 1..n {
        let prev = &table[level - 1];
        let mut next = Vec::with_capacity(n - level);
        for i in 0..n - level {
            let num = prev[i + 1].sub(&prev[i]);
            next.push(num.mul(&ParamRat::constant(crate::field::rat(1, level as i64))));
        }
        table.push(next);
    }
    let mut poly = vec![ParamRat::zero(); n];
    let mut basis = vec![ParamRat::one()]; // falling factorial basis
    for (k, lvl) in table.iter().enumerate() {
        let c = lvl[0].clone();
        for (i, b) in basis.iter().enumerate() {
            poly[i] = poly[i].add(&c.mul(b));
        }
        let mut next = vec![ParamRat::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] = next[i + 1].add(b);
            next[i] = next[i].sub(&b.mul(&ParamRat::int(k as i64)));
        }
        basis = next;
    }
    while poly.last().map(|c| c.is_zero()).unwrap_or(false) {
        poly.pop();
    }
    poly
}

/// Valuation of a rational function per the kind's convention: order at
/// z = 0, or denominator degree minus numerator degree for the difference
/// kind (clamped to 0 for the unsigned variant).
pub fn ratz_valuation(f: &RatZ, kind: EqKind) -> Val {
    if f.is_zero() {
        return Val::AtLeast(usize::MAX);
    }
    match kind {
        EqKind::Difference => {
            let v = f.den().deg() as i64 - f.num().deg() as i64;
            Val::At(v.max(0) as usize)
        }
        _ => Val::At(f.num().val().saturating_sub(f.den().val())),
    }
}

/// Signed valuation (the difference kind can go negative); `None` for zero.
pub fn ratz_valuation_signed(f: &RatZ, kind: EqKind) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(match kind {
        EqKind::Difference => f.den().deg() as i64 - f.num().deg() as i64,
        _ => f.num().val() as i64 - f.den().val() as i64,
    })
}

pub fn dilate_polyz(p: &PolyZ, q: &ParamRat) -> PolyZ {
    p.scale_var(q)
}

pub fn dilate_ratz(f: &RatZ, q: &ParamRat) -> RatZ {
    RatZ::new(f.num().scale_var(q), f.den().scale_var(q)).expect("nonzero denominator")
}

pub fn shift_arg_ratz(f: &RatZ, step: i64) -> RatZ {
    RatZ::new(f.num().shift_int(step), f.den().shift_int(step)).expect("nonzero denominator")
}

#[cfg(test)]
pub(crate) mod test_models {
    use super::*;
    use crate::field::int;

    fn c(n: i64) -> RatZ {
        RatZ::from_int(n)
    }

    /// y' = 1 + y^2 as E(Y0, Y1) = 1 + Y0^2 - Y1 = 0.
    pub fn tan_model() -> EquationModel {
        let mut poly = BiPoly::zero();
        poly.set_coeff(0, 0, c(1));
        poly.set_coeff(2, 0, c(1));
        poly.set_coeff(0, 1, c(-1));
        EquationModel {
            kind: EqKind::Differential,
            poly,
            step: 0,
            q_param: None,
            shift_applied: ParamRat::zero(),
            leading_hint: None,
        }
    }

    /// y' = 1 + y (exponential, normalized).
    pub fn exp_model() -> EquationModel {
        let mut poly = BiPoly::zero();
        poly.set_coeff(0, 0, c(1));
        poly.set_coeff(1, 0, c(1));
        poly.set_coeff(0, 1, c(-1));
        EquationModel {
            kind: EqKind::Differential,
            poly,
            step: 0,
            q_param: None,
            shift_applied: ParamRat::one(),
            leading_hint: None,
        }
    }

    /// b(s) b(s+2) = 16/(s+1)^2 as E = Y0*Y1 - 16/(s+1)^2.
    pub fn brouncker_model() -> EquationModel {
        let mut poly = BiPoly::zero();
        poly.set_coeff(1, 1, c(1));
        let den = PolyZ::from_coeffs(vec![ParamRat::one(), ParamRat::one()]).pow(2);
        let rhs = RatZ::new(PolyZ::constant(ParamRat::int(-16)), den).unwrap();
        poly.set_coeff(0, 0, rhs);
        EquationModel {
            kind: EqKind::Difference,
            poly,
            step: 2,
            q_param: None,
            shift_applied: ParamRat::zero(),
            leading_hint: Some(ParamRat::int(4)),
        }
    }

    /// q-exponential, normalized unknown Y = e_q - 1 with q = parameter 0:
    /// Y(qz) - Y(z) - (q-1)z - (q-1)z Y(z) = 0.
    pub fn qexp_model() -> EquationModel {
        let q = ParamRat::var(0);
        let qm1_z = PolyZ::from_coeffs(vec![ParamRat::zero(), q.sub(&ParamRat::one())]);
        let mut poly = BiPoly::zero();
        poly.set_coeff(0, 1, c(1));
        poly.set_coeff(1, 0, c(-1).sub(&RatZ::from_poly(qm1_z.clone())));
        poly.set_coeff(0, 0, RatZ::from_poly(qm1_z).neg());
        EquationModel {
            kind: EqKind::QDifference,
            poly,
            step: 0,
            q_param: Some(0),
            shift_applied: ParamRat::one(),
            leading_hint: None,
        }
    }

    /// z^4 y' = 2y^2 + (z^3 - 4) y - z^3 (the Airy quotient, normalized).
    pub fn airy_model() -> EquationModel {
        let z3 = RatZ::from_poly(PolyZ::monomial(ParamRat::one(), 3));
        let z4 = RatZ::from_poly(PolyZ::monomial(ParamRat::one(), 4));
        let mut poly = BiPoly::zero();
        poly.set_coeff(0, 1, z4);
        poly.set_coeff(2, 0, c(-2));
        poly.set_coeff(1, 0, c(4).sub(&z3));
        poly.set_coeff(0, 0, z3);
        EquationModel {
            kind: EqKind::Differential,
            poly,
            step: 0,
            q_param: None,
            shift_applied: ParamRat::constant(int(-1)),
            leading_hint: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_models::*;
    use super::*;
    use crate::field::rat;

    #[test]
    fn tan_series_first_terms() {
        // oracle: classical recursion c_{m+1} = ([m=0] + sum c_i c_j)/(m+1)
        let model = tan_model();
        let s = model.solve_series(7).unwrap();
        let mut oracle = vec![rat(0, 1); 8];
        oracle[1] = rat(1, 1);
        for m in 1..7 {
            let mut acc = rat(0, 1);
            for i in 1..m {
                acc = acc + oracle[i].clone() * oracle[m - i].clone();
            }
            oracle[m + 1] = acc / rat((m + 1) as i64, 1);
        }
        for i in 0..7 {
            assert_eq!(
                s.coeff(i),
                ParamRat::constant(oracle[i].clone()),
                "coeff {}",
                i
            );
        }
        assert_eq!(s.coeff(5), ParamRat::constant(rat(2, 15)));
    }

    #[test]
    fn brouncker_series() {
        let model = brouncker_model();
        let s = model.solve_series(8).unwrap();
        assert_eq!(s.coeff(1), ParamRat::int(4));
        assert_eq!(s.coeff(2), ParamRat::zero());
        assert_eq!(s.coeff(3), ParamRat::int(-2));
        assert_eq!(s.coeff(5), ParamRat::constant(rat(11, 2)));
        assert_eq!(s.coeff(7), ParamRat::constant(rat(-173, 4)));
    }

    #[test]
    fn brouncker_without_hint_branches() {
        let mut model = brouncker_model();
        model.leading_hint = None;
        assert_eq!(model.solve_series(4), Err(Error::BranchingSolution));
    }

    #[test]
    fn qexp_series_coefficients() {
        // (1-q)^m / ((1-q)(1-q^2)...(1-q^m)) for m = 1..3
        let model = qexp_model();
        let s = model.solve_series(5).unwrap();
        let q = ParamRat::var(0);
        let one = ParamRat::one();
        let mut den = one.clone();
        let mut num = one.clone();
        for m in 1..=3usize {
            num = if m == 1 { one.sub(&q) } else { num.mul(&one.sub(&q)) };
            den = den.mul(&one.sub(&q.pow(m as u32)));
            let expect = num.div(&den).unwrap();
            assert_eq!(s.coeff(m), expect, "coefficient {}", m);
        }
    }

    #[test]
    fn airy_singular_equation_solves_by_fallback() {
        let model = airy_model();
        assert!(model.singular_at_origin().unwrap());
        let s = model.solve_series(10).unwrap();
        assert_eq!(s.coeff(3), ParamRat::constant(rat(-1, 4)));
        assert_eq!(s.coeff(6), ParamRat::constant(rat(5, 32)));
        assert_eq!(s.coeff(9), ParamRat::constant(rat(-15, 64)));
    }

    #[test]
    fn residual_valuation_examples() {
        let model = tan_model();
        // f = z: residual -z^2, valuation 2
        let z = RatZ::from_poly(PolyZ::var());
        assert_eq!(model.residual_valuation(&z).unwrap(), Val::At(2));
        // f = z/(1 - z^2/3): residual -z^4/9 - ..., valuation 4
        let den = PolyZ::from_coeffs(vec![
            ParamRat::one(),
            ParamRat::zero(),
            ParamRat::constant(rat(-1, 3)),
        ]);
        let f2 = RatZ::new(PolyZ::var(), den).unwrap();
        assert_eq!(model.residual_valuation(&f2).unwrap(), Val::At(4));
    }

    #[test]
    fn residual_of_truncated_solution_is_deep() {
        let model = tan_model();
        let t = 9;
        let s = model.solve_series(t).unwrap();
        let p = PolyZ::from_coeffs(s.coeffs().to_vec());
        match model.residual_valuation(&RatZ::from_poly(p)).unwrap() {
            Val::At(v) => assert!(v >= t - 1, "valuation {} too small", v),
            Val::AtLeast(_) => {}
        }
    }

    #[test]
    fn residual_numerator_examples() {
        let model = tan_model();
        // (P0, Q0) = (0, 1) -> H_0 = -1
        let h0 = model
            .residual_numerator(&PolyZ::zero(), &PolyZ::one())
            .unwrap();
        assert_eq!(h0, PolyZ::constant(ParamRat::int(-1)));
        // (P1, Q1) = (z, 1) -> H_1 = -z^2
        let h1 = model
            .residual_numerator(&PolyZ::var(), &PolyZ::one())
            .unwrap();
        assert_eq!(h1, PolyZ::monomial(ParamRat::int(-1), 2));
        // Brouncker (P1, Q1) = (4, s) -> 16(s+1)^2 - 16s(s+2) = 16
        let model = brouncker_model();
        let h = model
            .residual_numerator(&PolyZ::constant(ParamRat::int(4)), &PolyZ::var())
            .unwrap();
        assert_eq!(h, PolyZ::constant(ParamRat::int(16)));
    }

    #[test]
    fn solver_uniqueness_and_contraction() {
        // two fixed-point runs from different seeds agree; successive
        // iterates approach each other strictly
        let model = tan_model();
        let t = 8;
        let f = model.solved_form().unwrap();
        let mut y0 = TruncSeries::zero(t);
        let mut y1 = TruncSeries::zero(t);
        y1.set_coeff(1, ParamRat::int(1));
        let mut last_gap: Option<usize> = None;
        for _ in 0..t {
            y0 = poly_eval_at_series(&f, &y0)
                .unwrap()
                .integrate()
                .truncate(t);
            y1 = poly_eval_at_series(&f, &y1)
                .unwrap()
                .integrate()
                .truncate(t);
            if let Val::At(g) = y0.sub(&y1).val() {
                if let Some(lg) = last_gap {
                    assert!(g > lg, "contraction failed: {} then {}", lg, g);
                }
                last_gap = Some(g);
            }
        }
        assert_eq!(y0, y1);
    }
}
