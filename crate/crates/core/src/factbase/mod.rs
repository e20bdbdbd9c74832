//! Known Gorenstein / non-Gorenstein statuses with provenance.
//!
//! A [`FactSet`] holds at most one status per h-vector. Concrete statuses
//! never downgrade to [`Status::Open`], and a conflicting concrete status
//! is a hard error. [`FactSet::apply_closure`] saturates the set under the
//! inverse-system constructions on `(1,r,h2,r,1)` and `(1,r,h2,h2,r,1)`
//! and their contrapositives.

mod closure;
mod file;
mod seeds;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macaulay::binomial;
use crate::sequences::{candidate_params, is_o_sequence, trivial_extension, HVector};

pub use closure::{ClosureRule, DEFAULT_MAX_CODIM};
pub use file::FACT_FILE_HEADER;
pub use seeds::{cited_level_seed, seed_facts, CERTIFIED_TARGETS, LEVEL_SEEDS, UNIMODAL_CITATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Gorenstein,
    NotGorenstein,
    NotOSequence,
    Open,
}

impl Status {
    /// Short code used in fact files.
    pub fn code(self) -> &'static str {
        match self {
            Status::Gorenstein => "G",
            Status::NotGorenstein => "NG",
            Status::NotOSequence => "NO",
            Status::Open => "OPEN",
        }
    }

    pub fn from_code(code: &str) -> Option<Status> {
        Some(match code {
            "G" => Status::Gorenstein,
            "NG" => Status::NotGorenstein,
            "NO" => Status::NotOSequence,
            "OPEN" => Status::Open,
            _ => return None,
        })
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// A literature citation, stored as a short anchor text.
    Citation(String),
    /// Trivial extension of a cited level h-vector.
    TrivialExtensionOf(HVector),
    /// Derived by a closure rule from the given fact.
    ClosureFrom(HVector, ClosureRule),
    /// Established by the certificate with this id.
    Certificate(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Citation(text) => {
                f.write_str("citation:\"")?;
                for c in text.chars() {
                    if c == '"' || c == '\\' {
                        f.write_str("\\")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("\"")
            }
            Provenance::TrivialExtensionOf(seed) => write!(f, "trivext:{seed}"),
            Provenance::ClosureFrom(parent, rule) => write!(f, "closure:{parent}/{rule}"),
            Provenance::Certificate(id) => write!(f, "cert:{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactRecord {
    pub hvector: HVector,
    pub status: Status,
    pub provenance: Option<Provenance>,
}

impl FactRecord {
    pub fn new(hvector: HVector, status: Status, provenance: Provenance) -> Self {
        FactRecord {
            hvector,
            status,
            provenance: Some(provenance),
        }
    }

    pub fn open(hvector: HVector, note: Option<&str>) -> Self {
        FactRecord {
            hvector,
            status: Status::Open,
            provenance: note.map(|n| Provenance::Citation(n.to_string())),
        }
    }

    /// Local well-formedness: status agrees with the O-sequence test and
    /// the provenance is arithmetically consistent with the h-vector.
    pub fn validate(&self) -> Result<()> {
        let h = &self.hvector;
        let oseq = is_o_sequence(h);
        match self.status {
            Status::NotOSequence if oseq => {
                return Err(Error::domain(format!("{h} is an O-sequence")))
            }
            Status::Gorenstein | Status::NotGorenstein if !oseq => {
                return Err(Error::domain(format!("{h} is not an O-sequence")))
            }
            _ => {}
        }
        if self.status != Status::Open && self.provenance.is_none() {
            return Err(Error::domain(format!("{h}: non-open fact without provenance")));
        }
        match &self.provenance {
            Some(Provenance::TrivialExtensionOf(seed)) => {
                if self.status != Status::Gorenstein {
                    return Err(Error::domain(format!("{h}: trivial extensions are Gorenstein")));
                }
                if cited_level_seed(seed).is_none() {
                    return Err(Error::domain(format!("{seed} is not a cited level h-vector")));
                }
                if &trivial_extension(seed)? != h {
                    return Err(Error::domain(format!("{h} is not the trivial extension of {seed}")));
                }
            }
            Some(Provenance::ClosureFrom(parent, rule)) => {
                if rule.status() != self.status || rule.apply(parent).as_ref() != Some(h) {
                    return Err(Error::domain(format!("{h} does not follow from {parent} by {rule}")));
                }
            }
            Some(Provenance::Certificate(_)) if self.status != Status::NotGorenstein => {
                return Err(Error::domain(format!("{h}: certificates only refute")));
            }
            _ => {}
        }
        Ok(())
    }
}

/// A consistent set of facts keyed by h-vector.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactSet {
    records: BTreeMap<HVector, FactRecord>,
    unimodal_rule: Option<String>,
}

impl FactSet {
    pub fn new() -> Self {
        FactSet::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &FactRecord> {
        self.records.values()
    }

    pub fn get(&self, h: &HVector) -> Option<&FactRecord> {
        self.records.get(h)
    }

    /// Citation backing the unimodal rule, if enabled.
    pub fn unimodal_rule(&self) -> Option<&str> {
        self.unimodal_rule.as_deref()
    }

    pub fn with_unimodal_rule(mut self, citation: impl Into<String>) -> Self {
        self.unimodal_rule = Some(citation.into());
        self
    }

    /// Inserts `rec`, returning whether the set changed.
    pub fn insert(&mut self, rec: FactRecord) -> Result<bool> {
        rec.validate()?;
        match self.records.get(&rec.hvector) {
            None => {}
            Some(existing) if existing.status == rec.status => return Ok(false),
            Some(_) if rec.status == Status::Open => return Ok(false),
            Some(existing) if existing.status == Status::Open => {}
            Some(existing) => {
                return Err(Error::StatusConflict {
                    hvector: rec.hvector.to_string(),
                    existing: existing.status,
                    offered: rec.status,
                })
            }
        }
        self.records.insert(rec.hvector.clone(), rec);
        Ok(true)
    }

    /// Value-style insert.
    pub fn add_fact(mut self, rec: FactRecord) -> Result<Self> {
        self.insert(rec)?;
        Ok(self)
    }

    /// Drops every record whose provenance is a certificate, returning
    /// the remaining set and the removed claims.
    pub fn split_certificate_claims(&self) -> (FactSet, Vec<FactRecord>) {
        let mut rest = self.clone();
        let claims: Vec<FactRecord> = self
            .records
            .values()
            .filter(|r| matches!(r.provenance, Some(Provenance::Certificate(_))))
            .cloned()
            .collect();
        for c in &claims {
            rest.records.remove(&c.hvector);
        }
        (rest, claims)
    }

    /// Status of `h`: `NotOSequence` by computation, otherwise the stored
    /// status, otherwise the unimodal rule, otherwise `Open`.
    pub fn status_of(&self, h: &HVector) -> Status {
        self.explain(h).0
    }

    /// Like [`status_of`](Self::status_of), with the provenance that
    /// justifies the answer.
    pub fn explain(&self, h: &HVector) -> (Status, Option<Provenance>) {
        if !is_o_sequence(h) {
            return (Status::NotOSequence, None);
        }
        if let Some(rec) = self.records.get(h) {
            return (rec.status, rec.provenance.clone());
        }
        if let Some(citation) = &self.unimodal_rule {
            if unimodal_in_range(h) {
                return (Status::Gorenstein, Some(Provenance::Citation(citation.clone())));
            }
        }
        (Status::Open, None)
    }

    /// Follows provenance links until a root (citation, trivial extension
    /// of a cited seed, or certificate). Errors on cycles or dangling
    /// links.
    pub fn provenance_root(&self, h: &HVector) -> Result<Provenance> {
        let mut current = h.clone();
        for _ in 0..=self.records.len() {
            let rec = self
                .records
                .get(&current)
                .ok_or_else(|| Error::domain(format!("dangling provenance link to {current}")))?;
            match &rec.provenance {
                Some(Provenance::ClosureFrom(parent, _)) => current = parent.clone(),
                Some(root) => return Ok(root.clone()),
                None => return Err(Error::domain(format!("{current} has no provenance"))),
            }
        }
        Err(Error::domain(format!("provenance cycle through {h}")))
    }
}

/// `(1,r,h2,r,1)` or `(1,r,h2,h2,r,1)` with `r <= h2 <= C(r+1,2)`.
pub fn unimodal_in_range(h: &HVector) -> bool {
    match candidate_params(h) {
        Some((_, r, h2)) => r <= h2 && binomial(r + 1, 2).is_ok_and(|top| h2 <= top),
        None => false,
    }
}
