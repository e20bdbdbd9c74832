//! H-vectors and the sequence-level checks built on the Macaulay bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::macaulay::{binomial, within_next};

/// The h-vector of a standard graded artinian algebra.
///
/// Entry 0 is always 1 and trailing zeros are stripped on construction.
/// Internal zeros are representable (intermediate rows need them) but make
/// the vector fail [`is_o_sequence`] when followed by a positive entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(mut entries: Vec<u64>) -> Result<Self> {
        if entries.first() != Some(&1) {
            return Err(Error::domain("h-vector must start with 1"));
        }
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Ok(HVector(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Entry in degree `d`, zero past the end.
    pub fn get(&self, d: usize) -> u64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn socle_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn codimension(&self) -> u64 {
        self.get(1)
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for HVector {
    type Err = Error;

    /// Canonical comma-separated decimal form, e.g. `1,12,11,12,1`.
    /// Whitespace, signs and leading zeros are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|field| {
                let canonical = !field.is_empty()
                    && field.bytes().all(|b| b.is_ascii_digit())
                    && (field == "0" || !field.starts_with('0'));
                if !canonical {
                    return Err(Error::parse(None, format!("bad h-vector entry {field:?} in {s:?}")));
                }
                field
                    .parse::<u64>()
                    .map_err(|e| Error::parse(None, format!("entry {field:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HVector::new(entries)
    }
}

impl Serialize for HVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// First degree `d >= 1` with `row[d + 1] > macaulay_next(row[d], d)`.
///
/// Works on raw rows (the bottom row of a diagram may end in zeros); a
/// positive entry after a zero is reported as a violation since every
/// bound on 0 is 0.
pub fn first_macaulay_violation(row: &[u64]) -> Option<usize> {
    (1..row.len().saturating_sub(1)).find(|&d| !within_next(row[d + 1], row[d], d))
}

pub fn is_o_sequence(h: &HVector) -> bool {
    first_macaulay_violation(h.entries()).is_none()
}

pub fn is_symmetric(h: &HVector) -> bool {
    let e = h.entries();
    e.iter().eq(e.iter().rev())
}

/// `(1, r, h2, r, 1)` for `e = 4`, `(1, r, h2, h2, r, 1)` for `e = 5`.
pub fn symmetric_candidate(e: usize, r: u64, h2: u64) -> Result<HVector> {
    match e {
        4 => HVector::new(vec![1, r, h2, r, 1]),
        5 => HVector::new(vec![1, r, h2, h2, r, 1]),
        _ => Err(Error::domain(format!("symmetric candidates exist for socle degree 4 or 5, not {e}"))),
    }
}

/// Reads `(r, h2)` back from a socle-degree-4/5 symmetric candidate.
pub fn candidate_params(h: &HVector) -> Option<(usize, u64, u64)> {
    let e = h.socle_degree();
    if !(e == 4 || e == 5) || !is_symmetric(h) {
        return None;
    }
    if e == 5 && h.get(2) != h.get(3) {
        return None;
    }
    Some((e, h.get(1), h.get(2)))
}

/// The trivial extension of a level h-vector: `g_i = h_i + h_{e+1-i}`.
pub fn trivial_extension(level: &HVector) -> Result<HVector> {
    let h = level.entries();
    let e = level.socle_degree();
    let mut g = Vec::with_capacity(e + 2);
    g.push(1);
    for i in 1..=e {
        g.push(
            h[i].checked_add(h[e + 1 - i])
                .ok_or(Error::Overflow("trivial extension"))?,
        );
    }
    g.push(1);
    HVector::new(g)
}

/// `h_i = min(C(r-1+i, i), t * C(r-1+e-i, e-i))`; no levelness claim.
pub fn compressed_level_candidate(r: u64, t: u64, e: usize) -> Result<HVector> {
    if r == 0 || t == 0 || e == 0 {
        return Err(Error::domain("compressed candidate needs r, t, e >= 1"));
    }
    let entries = (0..=e)
        .map(|i| {
            let total = binomial(r - 1 + i as u64, i as i64)?;
            let dual = binomial(r - 1 + (e - i) as u64, (e - i) as i64)?
                .checked_mul(t)
                .ok_or(Error::Overflow("compressed candidate"));
            Ok(match dual {
                Ok(dual) => total.min(dual),
                // t * C(..) exceeds u64 so the min is the first term
                Err(_) => total,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    HVector::new(entries)
}

/// `(h_e - q_e, h_{e-1} - q_{e-1}, ..., h_0 - q_0)` with the level
/// decomposition preconditions checked.
pub fn reverse_difference(h: &HVector, quotient: &HVector) -> Result<HVector> {
    let e = h.socle_degree();
    if quotient.socle_degree() != e {
        return Err(Error::domain(format!(
            "socle degrees differ: {h} has {e}, {quotient} has {}",
            quotient.socle_degree()
        )));
    }
    let diff = (0..=e)
        .rev()
        .map(|i| {
            h.get(i).checked_sub(quotient.get(i)).ok_or_else(|| {
                Error::domain(format!("{quotient} exceeds {h} in degree {i}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if diff[0] != 1 {
        return Err(Error::domain(format!(
            "top-degree difference must be 1, got {}",
            diff[0]
        )));
    }
    HVector::new(diff)
}

/// Necessary condition for `quotient` to be a level quotient of type one
/// less than `h`: the reversed difference must be an O-sequence.
pub fn level_decomposition_check(h: &HVector, quotient: &HVector) -> Result<bool> {
    Ok(is_o_sequence(&reverse_difference(h, quotient)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarietyKind {
    Line,
    Conic,
    Plane,
    QuadricSurface,
}

impl VarietyKind {
    /// The surface whose general hyperplane section has this profile.
    pub fn lift(self) -> Option<VarietyKind> {
        match self {
            VarietyKind::Line => Some(VarietyKind::Plane),
            VarietyKind::Conic => Some(VarietyKind::QuadricSurface),
            _ => None,
        }
    }
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Hilbert function of the reference variety in degree `d`.
pub fn variety_hf(kind: VarietyKind, d: usize) -> Result<u64> {
    let d64 = d as u64;
    let overflow = || Error::Overflow("variety Hilbert function");
    match kind {
        VarietyKind::Line => d64.checked_add(1).ok_or_else(overflow),
        VarietyKind::Conic if d == 0 => Ok(1),
        VarietyKind::Conic => d64
            .checked_mul(2)
            .and_then(|v| v.checked_add(1))
            .ok_or_else(overflow),
        VarietyKind::Plane => binomial(d64.checked_add(2).ok_or_else(overflow)?, 2),
        VarietyKind::QuadricSurface => {
            let big = binomial(d64.checked_add(3).ok_or_else(overflow)?, 3)?;
            Ok(big - binomial(d64 + 1, 3)?)
        }
    }
}

/// `(variety_hf(kind, 0), ..., variety_hf(kind, e))`.
pub fn variety_profile(kind: VarietyKind, e: usize) -> Result<HVector> {
    HVector::new((0..=e).map(|d| variety_hf(kind, d)).collect::<Result<_>>()?)
}
