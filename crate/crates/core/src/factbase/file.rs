//! The `hvfacts-v1` line format.
//!
//! ```text
//! hvfacts-v1
//! rule=unimodal prov=citation:"..."
//! hvector=1,13,12,13,1 status=G prov=citation:"Stanley 1978: ..."
//! hvector=1,17,16,16,17,1 status=G prov=trivext:1,3,6,10,14
//! hvector=1,16,14,16,1 status=NG prov=closure:1,17,15,17,1/C2
//! hvector=1,12,11,12,1 status=NG prov=cert:prop-1-12-11-12-1
//! hvector=1,19,17,19,1 status=OPEN prov=none
//! ```
//!
//! Fields are separated by single spaces. Record lines carry exactly the
//! keys `hvector`, `status` and `prov`; rule lines carry `rule` and
//! `prov`. Status codes are `G`, `NG`, `NO` and `OPEN`. Citation text is
//! double-quoted with `\"` and `\\` escapes. Blank lines and lines
//! starting with `#` are ignored. Export writes the rule line first, then
//! records ordered by their canonical h-vector text.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::sequences::HVector;

use super::{FactRecord, FactSet, Provenance, Status};

pub const FACT_FILE_HEADER: &str = "hvfacts-v1";

impl FactSet {
    pub fn export(&self) -> String {
        let mut out = String::new();
        out.push_str(FACT_FILE_HEADER);
        out.push('\n');
        if let Some(citation) = &self.unimodal_rule {
            out.push_str(&format!("rule=unimodal prov={}\n", Provenance::Citation(citation.clone())));
        }
        let mut lines: Vec<(String, &FactRecord)> =
            self.records.values().map(|r| (r.hvector.to_string(), r)).collect();
        lines.sort_by(|a, b| a.0.cmp(&b.0));
        for (key, rec) in lines {
            let prov = rec
                .provenance
                .as_ref()
                .map_or_else(|| "none".to_string(), |p| p.to_string());
            out.push_str(&format!("hvector={key} status={} prov={prov}\n", rec.status.code()));
        }
        out
    }

    pub fn import(text: &str) -> Result<FactSet> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        if header != FACT_FILE_HEADER {
            return Err(Error::VersionMismatch {
                found: header.to_string(),
                expected: FACT_FILE_HEADER,
            });
        }
        let mut fs = FactSet::new();
        for (number, line) in lines {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |msg: String| Error::parse(Some(number), msg);
            let mut fields = split_fields(line).map_err(&at)?;
            if let Some(rule) = fields.remove("rule") {
                expect_keys(&fields, &["prov"]).map_err(&at)?;
                if rule != "unimodal" {
                    return Err(at(format!("unknown rule {rule:?}")));
                }
                match parse_provenance(&fields["prov"]).map_err(&at)? {
                    Some(Provenance::Citation(text)) => fs.unimodal_rule = Some(text),
                    _ => return Err(at("rule provenance must be a citation".into())),
                }
                continue;
            }
            expect_keys(&fields, &["hvector", "prov", "status"]).map_err(&at)?;
            let hvector: HVector = fields["hvector"]
                .parse()
                .map_err(|e: Error| at(e.to_string()))?;
            if hvector.to_string() != fields["hvector"] {
                return Err(at(format!("non-canonical h-vector {:?}", fields["hvector"])));
            }
            let status = Status::from_code(&fields["status"])
                .ok_or_else(|| at(format!("unknown status {:?}", fields["status"])))?;
            let provenance = parse_provenance(&fields["prov"]).map_err(&at)?;
            let rec = FactRecord {
                hvector,
                status,
                provenance,
            };
            match fs.insert(rec) {
                Ok(_) => {}
                Err(e @ Error::StatusConflict { .. }) => return Err(e),
                Err(e) => return Err(at(e.to_string())),
            }
        }
        Ok(fs)
    }
}

fn expect_keys(fields: &BTreeMap<String, String>, keys: &[&str]) -> std::result::Result<(), String> {
    let found: Vec<&str> = fields.keys().map(String::as_str).collect();
    if found != keys {
        return Err(format!("expected keys {keys:?}, found {found:?}"));
    }
    Ok(())
}

/// Splits `k=v k=v ...`, honouring double quotes inside values.
fn split_fields(line: &str) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut fields = BTreeMap::new();
    let mut chars = line.chars().peekable();
    while chars.peek().is_some() {
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        if key.is_empty() || !key.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(format!("bad key {key:?}"));
        }
        let mut value = String::new();
        let mut quoted = false;
        let mut escaped = false;
        for c in chars.by_ref() {
            if escaped {
                escaped = false;
            } else if quoted && c == '\\' {
                escaped = true;
            } else if c == '"' {
                quoted = !quoted;
            } else if c == ' ' && !quoted {
                break;
            }
            value.push(c);
        }
        if quoted {
            return Err(format!("unterminated quote in {key}"));
        }
        if fields.insert(key.clone(), value).is_some() {
            return Err(format!("duplicate key {key}"));
        }
    }
    Ok(fields)
}

fn parse_provenance(text: &str) -> std::result::Result<Option<Provenance>, String> {
    let (kind, rest) = text
        .split_once(':')
        .unwrap_or((text, ""));
    Ok(Some(match kind {
        "none" if rest.is_empty() => return Ok(None),
        "citation" => {
            let inner = rest
                .strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .ok_or_else(|| format!("citation must be quoted: {rest:?}"))?;
            let mut out = String::new();
            let mut chars = inner.chars();
            while let Some(c) = chars.next() {
                match c {
                    '\\' => match chars.next() {
                        Some(e @ ('"' | '\\')) => out.push(e),
                        other => return Err(format!("bad escape \\{other:?}")),
                    },
                    '"' => return Err("unescaped quote in citation".into()),
                    c => out.push(c),
                }
            }
            Provenance::Citation(out)
        }
        "trivext" => Provenance::TrivialExtensionOf(rest.parse().map_err(|e: Error| e.to_string())?),
        "closure" => {
            let (parent, rule) = rest
                .split_once('/')
                .ok_or_else(|| format!("closure provenance needs parent/rule: {rest:?}"))?;
            Provenance::ClosureFrom(
                parent.parse().map_err(|e: Error| e.to_string())?,
                rule.parse().map_err(|e: Error| e.to_string())?,
            )
        }
        "cert" if !rest.is_empty() && !rest.contains(' ') => Provenance::Certificate(rest.to_string()),
        _ => return Err(format!("unknown provenance {text:?}")),
    }))
}
