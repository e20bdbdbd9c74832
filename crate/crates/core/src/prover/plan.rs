//! Case plans and certificates as JSON documents.
//!
//! A plan is a tree of steps. Every step has a `kind` and kind-specific
//! `params`; axiom steps also name the axiom and carry a citation. A
//! certificate is the same tree with `checked_values` filled in by the
//! interpreter, plus the fact-base entries the argument relied on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::factbase::Status;
use crate::sequences::{HVector, VarietyKind};

use super::diagram::Diagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    UniqueDiagram,
    MaxGrowth,
    GotzmannVariety,
    SaturationBound,
    CaseSplit,
    ForcedSocle,
    SaturationSocle,
    LevelDecomposition,
    MacaulayViolation,
    DbLookup,
    Contradiction,
}

impl StepKind {
    /// Kinds that derive a contradiction and must be followed by
    /// `Contradiction`.
    pub fn is_closing(self) -> bool {
        matches!(
            self,
            StepKind::ForcedSocle
                | StepKind::SaturationSocle
                | StepKind::LevelDecomposition
                | StepKind::MacaulayViolation
                | StepKind::DbLookup
        )
    }
}

/// The closed whitelist of geometric lemmas a plan may invoke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomKind {
    GotzmannLine,
    GotzmannConic,
    SaturationBound,
    SaturationSocle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseStep {
    pub kind: StepKind,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom: Option<AxiomKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checked_values: Option<BTreeMap<String, Value>>,
}

impl CaseStep {
    pub fn new(kind: StepKind, params: Value) -> Self {
        CaseStep {
            kind,
            params,
            axiom: None,
            citation: None,
            comment: None,
            checked_values: None,
        }
    }

    pub fn contradiction() -> Self {
        CaseStep::new(StepKind::Contradiction, Value::Null)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CasePlan {
    pub id: String,
    pub target: HVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub steps: Vec<CaseStep>,
}

impl CasePlan {
    pub fn from_json(text: &str) -> Result<CasePlan> {
        serde_json::from_str(text).map_err(|e| Error::parse(Some(e.line()), e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactUse {
    pub hvector: HVector,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub id: String,
    pub target: HVector,
    pub conclusion: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub steps: Vec<CaseStep>,
    pub facts_used: Vec<FactUse>,
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::parse(Some(e.line()), e.to_string()))
    }

    /// Canonical text: sorted keys, two-space indent, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        canonical_json(self)
    }

    /// Hex SHA-256 of the canonical text.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_json().as_bytes()))
    }

    pub fn as_plan(&self) -> CasePlan {
        CasePlan {
            id: self.id.clone(),
            target: self.target.clone(),
            comment: self.comment.clone(),
            steps: self.steps.clone(),
        }
    }
}

/// Serializes through `serde_json::Value`, whose maps are ordered by key.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let tree = serde_json::to_value(value).expect("plan types serialize");
    let mut text = serde_json::to_string_pretty(&tree).expect("values serialize");
    text.push('\n');
    text
}

// Per-kind parameters.

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Elimination {
    pub mid: Vec<u64>,
    pub bot: Vec<u64>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniqueDiagramParams {
    pub survivor: Diagram,
    #[serde(default)]
    pub eliminated: Vec<Elimination>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeParams {
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GotzmannParams {
    pub variety: VarietyKind,
    pub degree: usize,
    pub through: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaturationBoundParams {
    pub variety: VarietyKind,
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitVariable {
    /// Number of points `m` in the saturation of `J`.
    Points,
    /// `h_{R/J}(e)`.
    HilbertValue,
    /// Green-admissible diagram candidates.
    Diagram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CaseValue {
    Int(u64),
    Diagram(Diagram),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub value: CaseValue,
    pub steps: Vec<CaseStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSplitParams {
    pub variable: SplitVariable,
    pub cases: Vec<Case>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DbLookupParams {
    pub hvector: HVector,
    pub status: Status,
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn canonical_keys_are_sorted() {
        let step = CaseStep {
            kind: StepKind::MaxGrowth,
            params: json!({"degree": 2}),
            axiom: None,
            citation: None,
            comment: Some("z".into()),
            checked_values: Some(BTreeMap::from([("to".into(), json!(4)), ("from".into(), json!(3))])),
        };
        let text = canonical_json(&step);
        let order: Vec<usize> = ["checked_values", "from", "to", "comment", "kind", "params"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{text}");
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(CasePlan::from_json(r#"{"id":"x","target":"1,3,1","steps":[],"extra":1}"#).is_err());
        assert!(CasePlan::from_json(r#"{"id":"x","target":"1,3,1","steps":[{"kind":"Nope"}]}"#).is_err());
        assert!(CasePlan::from_json(r#"{"id":"x","target":"1, 3,1","steps":[]}"#).is_err());
        let plan = CasePlan::from_json(r#"{"id":"x","target":"1,3,1","steps":[{"kind":"Contradiction"}]}"#).unwrap();
        assert_eq!(plan.steps, vec![CaseStep::contradiction()]);
    }

    #[test]
    fn case_values_parse() {
        let v: CaseValue = serde_json::from_value(json!(3)).unwrap();
        assert_eq!(v, CaseValue::Int(3));
        let v: CaseValue = serde_json::from_value(json!({"mid": [0, 1, 1], "bot": [1, 2, 0]})).unwrap();
        assert!(matches!(v, CaseValue::Diagram(_)));
        assert!(serde_json::from_value::<CaseValue>(json!(-1)).is_err());
    }
}
