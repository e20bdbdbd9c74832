use serde::Serialize;

use crate::error::{Error, Result};
use crate::factbase::{FactRecord, FactSet, Provenance, Status, DEFAULT_MAX_CODIM};
use crate::macaulay::binomial;
use crate::sequences::{first_macaulay_violation, symmetric_candidate, HVector};

use super::check::{run_case_plan, verify_certificate};
use super::plan::{CasePlan, Certificate};

/// A fact base after all plans have been replayed and closure has
/// reached its fixed point.
#[derive(Debug, Clone)]
pub struct Knowledge {
    pub facts: FactSet,
    pub certificates: Vec<Certificate>,
}

/// Seeds minus their certificate claims, closed; then every plan is
/// replayed, verified and its conclusion merged, re-closing after each.
/// Plans that depend on conclusions of others are retried until no plan
/// makes progress. Fails if any plan never succeeds or a certificate
/// claim of the seeds is left uncertified.
pub fn build_knowledge(seeds: &FactSet, plans: &[CasePlan], max_codim: u64) -> Result<Knowledge> {
    let (base, claims) = seeds.split_certificate_claims();
    let mut facts = base.apply_closure(max_codim)?;
    let mut pending: Vec<&CasePlan> = plans.iter().collect();
    pending.sort_by(|a, b| a.id.cmp(&b.id));
    let mut certificates = Vec::new();
    loop {
        let mut last_error = None;
        let mut progressed = false;
        let mut still = Vec::new();
        for plan in pending {
            match run_case_plan(plan, &facts) {
                Ok(cert) => {
                    verify_certificate(&cert, &facts)?;
                    facts.insert(FactRecord::new(
                        cert.target.clone(),
                        Status::NotGorenstein,
                        Provenance::Certificate(cert.id.clone()),
                    ))?;
                    facts = facts.apply_closure(max_codim)?;
                    certificates.push(cert);
                    progressed = true;
                }
                Err(e) => {
                    last_error.get_or_insert(e);
                    still.push(plan);
                }
            }
        }
        pending = still;
        if pending.is_empty() {
            break;
        }
        if !progressed {
            return Err(last_error.expect("a pending plan failed"));
        }
    }
    for claim in claims {
        let certified = certificates.iter().any(|c| c.target == claim.hvector);
        if !certified || facts.status_of(&claim.hvector) != claim.status {
            return Err(Error::domain(format!("claim {} is not established by any plan", claim.hvector)));
        }
    }
    Ok(Knowledge { facts, certificates })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub r: u64,
    pub h2: u64,
    pub hvector: HVector,
    pub status: Status,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationTable {
    pub e: usize,
    pub max_codim: u64,
    pub min_nonunimodal_codim: Option<u64>,
    pub rows: Vec<Cell>,
}

impl ClassificationTable {
    pub fn open_count(&self) -> usize {
        self.rows.iter().filter(|c| c.status == Status::Open).count()
    }

    /// Gorenstein cells with `h2 < r`.
    pub fn nonunimodal(&self) -> Vec<(u64, u64)> {
        self.rows
            .iter()
            .filter(|c| c.status == Status::Gorenstein && c.h2 < c.r)
            .map(|c| (c.r, c.h2))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,h2,hvector,status,provenance\n");
        for c in &self.rows {
            let prov = c.provenance.replace('"', "\"\"");
            out.push_str(&format!("{},{},\"{}\",{},\"{prov}\"\n", c.r, c.h2, c.hvector, c.status.code()));
        }
        out
    }

    /// One line per codimension with a status code for each `h2`.
    pub fn to_table(&self) -> String {
        let mut out = format!("socle degree {}, codimension <= {}\n", self.e, self.max_codim);
        out.push_str("legend: G Gorenstein, x not Gorenstein, . not an O-sequence, ? open\n");
        for r in 1..=self.max_codim {
            let line: String = self
                .rows
                .iter()
                .filter(|c| c.r == r)
                .map(|c| match c.status {
                    Status::Gorenstein => 'G',
                    Status::NotGorenstein => 'x',
                    Status::NotOSequence => '.',
                    Status::Open => '?',
                })
                .collect();
            out.push_str(&format!("r={r:>3} {line}\n"));
        }
        match self.min_nonunimodal_codim {
            Some(r) => out.push_str(&format!("least codimension with a nonunimodal Gorenstein h-vector: {r}\n")),
            None => out.push_str("no nonunimodal Gorenstein h-vector in range\n"),
        }
        out.push_str(&format!("open cells: {}\n", self.open_count()));
        out
    }
}

/// Reads every cell `(r, h2)`, `1 <= r <= max_r`, `1 <= h2 <= C(r+1,2)`,
/// off an already built fact base.
pub fn tabulate(e: usize, max_r: u64, facts: &FactSet) -> Result<ClassificationTable> {
    if !(e == 4 || e == 5) || max_r == 0 {
        return Err(Error::domain(format!("classification needs e in {{4, 5}} and max codim >= 1, got e={e}, r={max_r}")));
    }
    let mut rows = Vec::new();
    for r in 1..=max_r {
        for h2 in 1..=binomial(r + 1, 2)? {
            let hvector = symmetric_candidate(e, r, h2)?;
            let (status, prov) = facts.explain(&hvector);
            let provenance = match (status, prov) {
                (Status::NotOSequence, _) => {
                    let d = first_macaulay_violation(hvector.entries()).expect("not an O-sequence");
                    format!("macaulay:{d}")
                }
                (_, Some(p)) => p.to_string(),
                (_, None) => "none".to_string(),
            };
            rows.push(Cell {
                r,
                h2,
                hvector,
                status,
                provenance,
            });
        }
    }
    let min_nonunimodal_codim = rows
        .iter()
        .find(|c| c.status == Status::Gorenstein && c.h2 < c.r)
        .map(|c| c.r);
    Ok(ClassificationTable {
        e,
        max_codim: max_r,
        min_nonunimodal_codim,
        rows,
    })
}

/// Builds the knowledge base from `seeds` and `plans`, then tabulates.
pub fn classify(e: usize, max_r: u64, seeds: &FactSet, plans: &[CasePlan]) -> Result<ClassificationTable> {
    let knowledge = build_knowledge(seeds, plans, max_r.max(DEFAULT_MAX_CODIM))?;
    tabulate(e, max_r, &knowledge.facts)
}
