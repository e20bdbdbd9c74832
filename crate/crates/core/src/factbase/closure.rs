use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::macaulay::binomial;
use crate::sequences::{candidate_params, is_o_sequence, symmetric_candidate, HVector};

use super::{FactRecord, FactSet, Provenance, Status};

/// Default codimension bound for closure propagation.
pub const DEFAULT_MAX_CODIM: u64 = 30;

/// Propagation rules on symmetric candidates of socle degree 4 and 5.
///
/// `F1`/`F2` raise a Gorenstein candidate along `h2` and along `(r, h2)`
/// jointly; `C1`/`C2` are their contrapositives on non-Gorenstein ones.
/// Each rule moves one step, so chains of steps realize the full
/// `a <= b <= C(r+1,2)` ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosureRule {
    /// Gorenstein `(r, a)` gives Gorenstein `(r, a + 1)` up to `C(r+1,2)`.
    F1,
    /// Gorenstein `(r, a)` gives Gorenstein `(r + 1, a + 1)`.
    F2,
    /// Not Gorenstein `(r, b)` gives not Gorenstein `(r, b - 1)`.
    C1,
    /// Not Gorenstein `(r + 1, a + 1)` gives not Gorenstein `(r, a)`.
    C2,
}

impl ClosureRule {
    pub fn status(self) -> Status {
        match self {
            ClosureRule::F1 | ClosureRule::F2 => Status::Gorenstein,
            ClosureRule::C1 | ClosureRule::C2 => Status::NotGorenstein,
        }
    }

    /// The candidate this rule derives from `parent`, if any. Targets
    /// that are not O-sequences are never produced.
    pub fn apply(self, parent: &HVector) -> Option<HVector> {
        let (e, r, a) = candidate_params(parent)?;
        let (r2, a2) = match self {
            ClosureRule::F1 => (r, a + 1),
            ClosureRule::F2 => (r + 1, a + 1),
            ClosureRule::C1 => (r, a.checked_sub(1)?),
            ClosureRule::C2 => (r.checked_sub(1)?, a.checked_sub(1)?),
        };
        if r2 == 0 || a2 == 0 || a2 > binomial(r2 + 1, 2).ok()? {
            return None;
        }
        let child = symmetric_candidate(e, r2, a2).ok()?;
        is_o_sequence(&child).then_some(child)
    }
}

impl fmt::Display for ClosureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ClosureRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "F1" => ClosureRule::F1,
            "F2" => ClosureRule::F2,
            "C1" => ClosureRule::C1,
            "C2" => ClosureRule::C2,
            _ => return Err(Error::parse(None, format!("unknown closure rule {s:?}"))),
        })
    }
}

impl FactSet {
    /// Least fixed point under the unimodal rule (when enabled) and
    /// `F1`, `F2`, `C1`, `C2`, with `F2` and the unimodal rule bounded by
    /// `max_codim`.
    ///
    /// Errors with [`Error::StatusConflict`] if the rules derive
    /// contradictory statuses.
    pub fn apply_closure(&self, max_codim: u64) -> Result<FactSet> {
        let mut out = self.clone();
        if let Some(citation) = self.unimodal_rule.clone() {
            for e in [4, 5] {
                for r in 1..=max_codim {
                    for h2 in r..=binomial(r + 1, 2)? {
                        let h = symmetric_candidate(e, r, h2)?;
                        out.insert(FactRecord::new(h, Status::Gorenstein, Provenance::Citation(citation.clone())))?;
                    }
                }
            }
        }

        let mut queue: VecDeque<HVector> = out.records.keys().cloned().collect();
        while let Some(h) = queue.pop_front() {
            let Some((_, r, _)) = candidate_params(&h) else {
                continue;
            };
            let rules: &[ClosureRule] = match out.records[&h].status {
                Status::Gorenstein => &[ClosureRule::F1, ClosureRule::F2],
                Status::NotGorenstein => &[ClosureRule::C1, ClosureRule::C2],
                _ => continue,
            };
            for &rule in rules {
                if rule == ClosureRule::F2 && r + 1 > max_codim {
                    continue;
                }
                let Some(child) = rule.apply(&h) else {
                    continue;
                };
                let rec = FactRecord::new(child.clone(), rule.status(), Provenance::ClosureFrom(h.clone(), rule));
                if out.insert(rec)? {
                    queue.push_back(child);
                }
            }
        }
        Ok(out)
    }
}
