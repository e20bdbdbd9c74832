use std::ops::ControlFlow;

use serde_json::json;

use crate::error::{Error, Result};
use crate::factbase::{FactSet, Status};
use crate::sequences::{first_macaulay_violation, is_o_sequence, HVector};

use super::check::run_case_plan;
use super::diagram::{for_each_candidate, Diagram};
use super::plan::{Case, CasePlan, CaseSplitParams, CaseStep, CaseValue, Certificate, SplitVariable, StepKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Refutation {
    Refuted(Certificate),
    /// Diagrams that neither arithmetic nor the fact base rules out.
    Inconclusive { survivors: Vec<Diagram> },
}

enum Closure {
    Violation(usize),
    Known(HVector, Status),
}

fn eliminate(d: &Diagram, facts: &FactSet) -> Result<Option<Closure>> {
    if let Some(deg) = first_macaulay_violation(&d.bot) {
        return Ok(Some(Closure::Violation(deg)));
    }
    let mid = d.mid_candidate()?;
    Ok(match facts.status_of(&mid) {
        s @ (Status::NotGorenstein | Status::NotOSequence) => Some(Closure::Known(mid, s)),
        _ => None,
    })
}

fn check_target(top: &HVector) -> Result<()> {
    if !is_o_sequence(top) {
        return Err(Error::domain(format!("{top} is not an O-sequence")));
    }
    Ok(())
}

/// Tries to refute `top` by eliminating every Green-admissible diagram,
/// either by a Macaulay violation in the bottom row or by a negative
/// status of the middle candidate in `facts`.
pub fn refute_by_enumeration(top: &HVector, facts: &FactSet) -> Result<Refutation> {
    check_target(top)?;
    let mut cases = Vec::new();
    let mut survivors = Vec::new();
    let mut err = None;
    for_each_candidate(top, |d| {
        match eliminate(&d, facts) {
            Ok(Some(closure)) => {
                let first = match closure {
                    Closure::Violation(deg) => CaseStep::new(StepKind::MacaulayViolation, json!({"degree": deg})),
                    Closure::Known(h, s) => CaseStep::new(StepKind::DbLookup, json!({"hvector": h, "status": s})),
                };
                cases.push(Case {
                    value: CaseValue::Diagram(d),
                    steps: vec![first, CaseStep::contradiction()],
                });
            }
            Ok(None) => survivors.push(d),
            Err(e) => {
                err = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    if !survivors.is_empty() {
        return Ok(Refutation::Inconclusive { survivors });
    }
    let split = CaseSplitParams {
        variable: SplitVariable::Diagram,
        cases,
    };
    let plan = CasePlan {
        id: format!("enum-{top}"),
        target: top.clone(),
        comment: None,
        steps: vec![CaseStep::new(
            StepKind::CaseSplit,
            serde_json::to_value(split).expect("params serialize"),
        )],
    };
    Ok(Refutation::Refuted(run_case_plan(&plan, facts)?))
}

/// True when some diagram of `top` survives elimination; stops at the
/// first survivor.
pub fn has_surviving_diagram(top: &HVector, facts: &FactSet) -> Result<bool> {
    check_target(top)?;
    let mut found = false;
    let mut err = None;
    for_each_candidate(top, |d| match eliminate(&d, facts) {
        Ok(Some(_)) => ControlFlow::Continue(()),
        Ok(None) => {
            found = true;
            ControlFlow::Break(())
        }
        Err(e) => {
            err = Some(e);
            ControlFlow::Break(())
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}
