//! Diagram enumeration, case-plan replay, certificates and classification.

mod check;
mod classify;
mod diagram;
mod plan;
mod refute;

pub use check::{run_case_plan, verify_certificate};
pub use classify::{build_knowledge, classify, tabulate, Cell, ClassificationTable, Knowledge};
pub use diagram::{detect_forced_socle, diagram_candidates, enumerate_diagrams, for_each_candidate, Diagram};
pub use plan::{
    canonical_json, AxiomKind, Case, CasePlan, CaseSplitParams, CaseStep, CaseValue, Certificate, DbLookupParams,
    DegreeParams, Elimination, FactUse, GotzmannParams, SaturationBoundParams, SplitVariable, StepKind,
    UniqueDiagramParams,
};
pub use refute::{has_surviving_diagram, refute_by_enumeration, Refutation};

use crate::error::Result;
use crate::factbase::FactSet;

const SHIPPED_PLANS: &[(&str, &str)] = &[
    ("h1-1-16-15-15-16-1", include_str!("../../data/plans/h1-1-16-15-15-16-1.json")),
    ("h2-1-17-15-15-17-1", include_str!("../../data/plans/h2-1-17-15-15-17-1.json")),
    ("prop-1-12-11-12-1", include_str!("../../data/plans/prop-1-12-11-12-1.json")),
    ("thm1-1-17-15-17-1", include_str!("../../data/plans/thm1-1-17-15-17-1.json")),
    ("thm2-1-25-22-22-25-1", include_str!("../../data/plans/thm2-1-25-22-22-25-1.json")),
];

const SHIPPED_FACTS: &str = include_str!("../../data/facts.hvf");

/// The case plans bundled with the library, ordered by id.
pub fn shipped_plans() -> Result<Vec<CasePlan>> {
    SHIPPED_PLANS.iter().map(|(_, text)| CasePlan::from_json(text)).collect()
}

pub fn shipped_plan(id: &str) -> Option<Result<CasePlan>> {
    SHIPPED_PLANS
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, text)| CasePlan::from_json(text))
}

/// The bundled seed fact file.
pub fn shipped_facts() -> Result<FactSet> {
    FactSet::import(SHIPPED_FACTS)
}

#[cfg(test)]
mod tests;
