//! The shipped seed facts.
//!
//! Citation texts are short anchors naming where a fact comes from; they
//! are shown by `hvlab facts list` and carried into classification output.

use crate::sequences::{is_o_sequence, symmetric_candidate, trivial_extension, HVector};

use super::{FactRecord, FactSet, Provenance, Status};

pub const UNIMODAL_CITATION: &str =
    "inverse systems: unimodal (1,r,h2,[h2,]r,1) with r <= h2 <= C(r+1,2) is Gorenstein";

/// Level h-vectors whose levelness is taken from the literature. Only
/// trivial extensions of these may carry `trivext` provenance.
pub const LEVEL_SEEDS: &[(&[u64], &str)] = &[
    (&[1, 3, 6, 10], "level: Stanley 1978 seed"),
    (&[1, 3, 6, 10, 14], "level: cited seed (1,3,6,10,14)"),
    (&[1, 4, 9, 16], "level: cited seed (1,4,9,16)"),
    (&[1, 4, 10, 19], "level: cited seed (1,4,10,19)"),
    (&[1, 4, 10, 20], "level: cited seed (1,4,10,20)"),
    (&[1, 4, 9, 16, 24], "level: cited seed (1,4,9,16,24)"),
    (&[1, 4, 9, 16, 25], "level: cited seed (1,4,9,16,25)"),
];

/// Targets refuted by the shipped case plans, with the plan ids.
pub const CERTIFIED_TARGETS: &[(&str, &str)] = &[
    ("1,12,11,12,1", "prop-1-12-11-12-1"),
    ("1,17,15,17,1", "thm1-1-17-15-17-1"),
    ("1,16,15,15,16,1", "h1-1-16-15-15-16-1"),
    ("1,17,15,15,17,1", "h2-1-17-15-15-17-1"),
    ("1,25,22,22,25,1", "thm2-1-25-22-22-25-1"),
];

pub fn cited_level_seed(h: &HVector) -> Option<&'static str> {
    LEVEL_SEEDS
        .iter()
        .find(|(entries, _)| *entries == h.entries())
        .map(|(_, citation)| *citation)
}

fn hv(entries: &[u64]) -> HVector {
    HVector::new(entries.to_vec()).expect("seed h-vectors start with 1")
}

fn parsed(text: &str) -> HVector {
    text.parse().expect("seed h-vector text is canonical")
}

fn cite(fs: &mut FactSet, h: HVector, status: Status, citation: &str) {
    fs.insert(FactRecord::new(h, status, Provenance::Citation(citation.into())))
        .expect("seed facts are consistent");
}

/// The seed facts: cited constructions and refutations, trivial
/// extensions of cited level seeds, certificate claims for the shipped
/// plans, known open cases, and the unimodal rule.
pub fn seed_facts() -> FactSet {
    let mut fs = FactSet::new().with_unimodal_rule(UNIMODAL_CITATION);

    cite(&mut fs, parsed("1,13,12,13,1"), Status::Gorenstein, "Stanley 1978: trivial extension of (1,3,6,10)");
    cite(&mut fs, parsed("1,18,16,16,18,1"), Status::Gorenstein, "Ahn-Shin: (1,18,16,16,18,1) is Gorenstein");

    for seed in [&[1, 3, 6, 10, 14][..], &[1, 4, 9, 16], &[1, 4, 10, 19], &[1, 4, 10, 20], &[1, 4, 9, 16, 24], &[1, 4, 9, 16, 25]] {
        let seed = hv(seed);
        let ext = trivial_extension(&seed).expect("small seeds");
        fs.insert(FactRecord::new(ext, Status::Gorenstein, Provenance::TrivialExtensionOf(seed)))
            .expect("seed facts are consistent");
    }

    for (target, plan) in CERTIFIED_TARGETS {
        fs.insert(FactRecord::new(parsed(target), Status::NotGorenstein, Provenance::Certificate(plan.to_string())))
            .expect("seed facts are consistent");
    }

    cite(&mut fs, parsed("1,16,14,14,16,1"), Status::NotGorenstein, "Ahn-Shin: (1,16,14,14,16,1) is not Gorenstein");
    for b in 1..11u64 {
        let h = symmetric_candidate(4, 11, b).expect("socle degree 4");
        if is_o_sequence(&h) {
            cite(&mut fs, h, Status::NotGorenstein, "earlier classification: Gorenstein (1,11,b,11,1) has b >= 11");
        }
    }
    cite(&mut fs, parsed("1,18,15,18,1"), Status::NotGorenstein, "case analysis sketch (uncertified): (1,18,15,18,1)");
    for r in 5..=23u64 {
        let h = symmetric_candidate(4, r, r - 4).expect("socle degree 4");
        if is_o_sequence(&h) {
            cite(&mut fs, h, Status::NotGorenstein, "case analysis sketch (uncertified): (1,r,r-4,r,1), r <= 23");
        }
    }
    cite(&mut fs, parsed("1,27,23,23,27,1"), Status::NotGorenstein, "quadric case analysis sketch (uncertified): (1,27,23,23,27,1)");

    let open = [
        ("1,18,16,18,1", "open: first unresolved (1,r,r-2,r,1)"),
        ("1,19,17,19,1", "open: remaining (1,r,r-2,r,1)"),
        ("1,19,16,19,1", "open: (1,r,r-3,r,1) for 19 <= r <= 22"),
        ("1,20,17,20,1", "open: (1,r,r-3,r,1) for 19 <= r <= 22"),
        ("1,21,18,21,1", "open: (1,r,r-3,r,1) for 19 <= r <= 22"),
        ("1,22,19,22,1", "open: (1,r,r-3,r,1) for 19 <= r <= 22"),
        ("1,26,23,23,26,1", "open: (1,r,r-3,r-3,r,1) at r = 26"),
        ("1,27,24,24,27,1", "open: (1,r,r-3,r-3,r,1) at r = 27"),
        ("1,28,24,24,28,1", "open: last unresolved (1,r,r-4,r-4,r,1)"),
    ];
    for (h, note) in open {
        fs.insert(FactRecord::open(parsed(h), Some(note)))
            .expect("seed facts are consistent");
    }

    fs
}
