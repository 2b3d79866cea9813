//! End-to-end driver: series solution, continued fraction expansion,
//! closed-form guessing over increasing periods, remainder recurrence,
//! reduction of order, and the valuation-growth verdict, assembled into a
//! certificate. Any stage can fail; failures name the stage.

use crate::cfrac::{contract_subsequence, series_to_cfrac, CFracTerms, SubseqRec};
use crate::field::Field;
use crate::guess::{guess_form_at_period, GuessConfig};
use crate::ore::RecOp;
use crate::prover::{
    build_h_initials, find_h_recurrence, recheck_certificate, reduce_order,
    riccati_h_recurrence, valuation_verdict, Certificate, Verdict,
};
use crate::solver::{EqKind, EquationModel};
use crate::{Error, RatZ};
use std::collections::BTreeMap;

/// Pipeline stages, for failure reports.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stage {
    SolveSeries,
    CfracExpansion,
    GuessForm,
    Contract,
    HRecurrence,
    ReduceOrder,
    Verdict,
    Certify,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::SolveSeries => "series solution",
            Stage::CfracExpansion => "continued fraction expansion",
            Stage::GuessForm => "closed-form guessing",
            Stage::Contract => "subsequence contraction",
            Stage::HRecurrence => "remainder recurrence",
            Stage::ReduceOrder => "reduction of order",
            Stage::Verdict => "valuation verdict",
            Stage::Certify => "certificate assembly",
        };
        write!(f, "{}", s)
    }
}

/// A failure report naming the stage; never coexists with a verdict.
#[derive(Clone, Debug)]
pub struct StageFail {
    pub stage: Stage,
    pub message: String,
}

impl std::fmt::Display for StageFail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FAIL at {}: {}", self.stage, self.message)
    }
}

fn fail(stage: Stage, message: impl Into<String>) -> StageFail {
    StageFail { stage, message: message.into() }
}

/// Knobs shared by the CLI and tests.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub guess: GuessConfig,
    /// Truncation override for the series solution.
    pub trunc: Option<usize>,
    /// Remainder values to compute directly from convergents.
    pub h_count: Option<usize>,
    /// Cap for the reduction-of-order ladder N = 4, 8, 16, ...
    pub reduce_cap: usize,
    /// Order safety cap for the generic remainder-recurrence search.
    pub h_order_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            guess: GuessConfig::default(),
            trunc: None,
            h_count: None,
            reduce_cap: 16,
            h_order_cap: 30,
        }
    }
}

/// Expands enough series coefficients to determine the requested number of
/// continued fraction terms, retrying with a doubled truncation order when
/// precision runs out.
pub fn expand_terms(
    eq: &EquationModel,
    cfg: &PipelineConfig,
) -> Result<CFracTerms, StageFail> {
    let n = cfg.guess.terms;
    let mut trunc = cfg.trunc.unwrap_or(n + 6);
    for _ in 0..4 {
        let series = eq
            .solve_series(trunc)
            .map_err(|e| fail(Stage::SolveSeries, e.to_string()))?;
        let terms = series_to_cfrac(&series, n);
        if terms.complete {
            return Ok(terms);
        }
        if terms.exact {
            return Err(fail(
                Stage::CfracExpansion,
                "the series terminates: the solution is a finite continued fraction",
            ));
        }
        trunc *= 2;
    }
    Err(fail(
        Stage::CfracExpansion,
        format!("could not determine {} terms within the truncation cap", n),
    ))
}

/// Runs the whole discover-and-prove pipeline.
pub fn run_pipeline(
    eq: &EquationModel,
    cfg: &PipelineConfig,
) -> Result<Certificate, StageFail> {
    cfg.guess
        .validate()
        .map_err(|e| fail(Stage::GuessForm, e.to_string()))?;
    let terms = expand_terms(eq, cfg)?;
    let mut last_fail = fail(
        Stage::GuessForm,
        format!(
            "no closed form of period <= {} matches the expanded terms",
            cfg.guess.period_max
        ),
    );
    for period in 1..=cfg.guess.period_max {
        let Some(form) = guess_form_at_period(&terms, period, eq.q_param, &cfg.guess) else {
            continue;
        };
        match prove_form(eq, &form, cfg) {
            Ok(cert) => return Ok(cert),
            Err(f) => last_fail = f,
        }
    }
    Err(last_fail)
}

/// The proving half: contraction, remainder recurrence, reduction, verdict,
/// certificate.
pub fn prove_form(
    eq: &EquationModel,
    form: &crate::cfrac::CFracForm,
    cfg: &PipelineConfig,
) -> Result<Certificate, StageFail> {
    let stride = form.period;
    let mut subsequences: Vec<SubseqRec> = Vec::new();
    for class in 0..stride {
        let sub = contract_subsequence(form, stride, class)
            .map_err(|e| fail(Stage::Contract, e.to_string()))?;
        subsequences.push(sub);
    }
    let class0 = &subsequences[0];

    // remainder recurrence along the class-0 subsequence
    let mut riccati_path = false;
    let (h_op, valid_from) = match h_recurrence_for(eq, class0, cfg, &mut riccati_path) {
        Ok(x) => x,
        Err(e) => return Err(fail(Stage::HRecurrence, e.to_string())),
    };
    // shift the operator so its identities start at subsequence index 0
    let h_op = if valid_from > 0 {
        h_op.rebase(valid_from as i64)
    } else {
        h_op
    };
    let offset = stride * valid_from;

    let mandatory = h_op
        .mandatory_indices()
        .map_err(|e| fail(Stage::HRecurrence, e.to_string()))?;
    let need = mandatory.iter().max().map(|m| m + 1).unwrap_or(0);
    let count = need
        .max(h_op.order() + 5)
        .max(cfg.h_count.unwrap_or(0));
    let h = build_h_initials(eq, form, count, stride, offset)
        .map_err(|e| fail(Stage::HRecurrence, e.to_string()))?;

    // the recurrence must annihilate every directly computed window
    for base in 0..h.values.len().saturating_sub(h_op.order()) {
        let w = &h.values[base..base + h_op.order() + 1];
        if !h_op.apply(w, base as i64).is_zero() {
            return Err(fail(
                Stage::HRecurrence,
                format!(
                    "remainder recurrence fails on directly computed values at index {}",
                    base
                ),
            ));
        }
    }

    let mut initials: BTreeMap<usize, RatZ> = BTreeMap::new();
    for i in &mandatory {
        initials.insert(*i, h.values[*i].clone());
    }

    let reduction = reduce_order(&h_op, &initials, &cfg.guess, cfg.reduce_cap)
        .map_err(|e| fail(Stage::ReduceOrder, e.to_string()))?;
    let Some(red) = reduction else {
        return Err(fail(
            Stage::ReduceOrder,
            "no certified lower-order recurrence found within the ladder cap",
        ));
    };

    let verdict = valuation_verdict(&red.reduced, &h, eq.kind)
        .map_err(|e| fail(Stage::Verdict, e.to_string()))?;
    if let Verdict::Inconclusive { reason } = &verdict {
        return Err(fail(Stage::Verdict, reason.clone()));
    }

    let cert = Certificate {
        equation: eq.clone(),
        cfrac: form.clone(),
        guess_config: cfg.guess.clone(),
        subsequences,
        h_stride: stride,
        h_offset: offset,
        h_clearing: h.clearing,
        h_recurrence: h_op,
        h_initials: h.values,
        h_index_set: mandatory,
        riccati_path,
        reduced: red.reduced,
        reduced_index_set: red.index_set,
        comparison_window: red.window,
        division_remainder_zero: red.division_remainder_zero,
        verdict,
    };
    recheck_certificate(&cert)
        .map_err(|step| fail(Stage::Certify, format!("recheck failed at {}", step)))?;
    Ok(cert)
}

fn h_recurrence_for(
    eq: &EquationModel,
    sub: &SubseqRec,
    cfg: &PipelineConfig,
    riccati_path: &mut bool,
) -> Result<(RecOp, usize), Error> {
    if eq.kind == EqKind::Differential && eq.rhs_degree()? == 2 {
        match riccati_h_recurrence(sub, 2) {
            Ok(x) => {
                *riccati_path = true;
                return Ok(x);
            }
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    find_h_recurrence(eq, sub, cfg.h_order_cap)
}
