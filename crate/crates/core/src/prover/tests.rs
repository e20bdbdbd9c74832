use super::*;
use crate::error::Error;
use crate::factbase::{seed_facts, FactRecord, Provenance, Status, DEFAULT_MAX_CODIM, CERTIFIED_TARGETS};
use crate::sequences::HVector;

fn hv(s: &str) -> HVector {
    s.parse().unwrap()
}

fn knowledge() -> Knowledge {
    build_knowledge(&seed_facts(), &shipped_plans().unwrap(), DEFAULT_MAX_CODIM).unwrap()
}

#[test]
fn shipped_facts_match_seeds() {
    let expected = seed_facts().export();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/facts.hvf");
    if std::env::var_os("HVLAB_BLESS").is_some() {
        std::fs::write(path, &expected).unwrap();
    }
    assert_eq!(std::fs::read_to_string(path).unwrap(), expected);
    assert_eq!(shipped_facts().unwrap(), seed_facts());
}

#[test]
fn shipped_plans_parse_and_match_targets() {
    let plans = shipped_plans().unwrap();
    assert_eq!(plans.len(), CERTIFIED_TARGETS.len());
    for (target, id) in CERTIFIED_TARGETS {
        let plan = shipped_plan(id).unwrap().unwrap();
        assert_eq!(plan.target, hv(target));
        assert_eq!(&plan.id, id);
    }
}

#[test]
fn pipeline_certifies_every_claim() {
    let k = knowledge();
    let mut ids: Vec<&str> = k.certificates.iter().map(|c| c.id.as_str()).collect();
    ids.sort();
    let mut want: Vec<&str> = CERTIFIED_TARGETS.iter().map(|(_, id)| *id).collect();
    want.sort();
    assert_eq!(ids, want);
    for cert in &k.certificates {
        verify_certificate(cert, &k.facts).unwrap();
        let rec = k.facts.get(&cert.target).unwrap();
        assert_eq!(rec.provenance, Some(Provenance::Certificate(cert.id.clone())));
    }
}

#[test]
fn prop_plan_alone() {
    let facts = seed_facts().split_certificate_claims().0.apply_closure(DEFAULT_MAX_CODIM).unwrap();
    let plan = shipped_plan("prop-1-12-11-12-1").unwrap().unwrap();
    let cert = run_case_plan(&plan, &facts).unwrap();
    assert_eq!(cert.conclusion, Status::NotGorenstein);
    assert!(cert.facts_used.is_empty());
    let text = cert.to_canonical_json();
    assert!(text.contains("\"lower_base\": 15"));
    assert!(text.contains("\"upper\": 17"));
    // determinism
    assert_eq!(run_case_plan(&plan, &facts).unwrap().to_canonical_json(), text);
    let back = Certificate::from_json(&text).unwrap();
    assert_eq!(back, cert);
    verify_certificate(&back, &facts).unwrap();
}

#[test]
fn h1_needs_the_prop_certificate() {
    let facts = seed_facts().split_certificate_claims().0.apply_closure(DEFAULT_MAX_CODIM).unwrap();
    let plan = shipped_plan("h1-1-16-15-15-16-1").unwrap().unwrap();
    match run_case_plan(&plan, &facts) {
        Err(Error::PlanCheckFailure { message, .. }) => assert!(message.contains("1,12,11,12,1"), "{message}"),
        other => panic!("{other:?}"),
    }
    let k = knowledge();
    let cert = run_case_plan(&plan, &k.facts).unwrap();
    let used: Vec<String> = cert.facts_used.iter().map(|f| f.hvector.to_string()).collect();
    assert_eq!(used, vec!["1,11,10,11,1", "1,12,11,12,1"]);
}

#[test]
fn verify_rejects_missing_fact() {
    let k = knowledge();
    let cert = k.certificates.iter().find(|c| c.id == "h2-1-17-15-15-17-1").unwrap();
    let bare = seed_facts().split_certificate_claims().0;
    assert!(verify_certificate(cert, &bare).is_err());
}

#[test]
fn incomplete_cover_is_reported() {
    let facts = seed_facts().apply_closure(DEFAULT_MAX_CODIM).unwrap();
    let mut plan = shipped_plan("thm1-1-17-15-17-1").unwrap().unwrap();
    let split = plan.steps.last_mut().unwrap();
    split.params["cases"].as_array_mut().unwrap().pop();
    match run_case_plan(&plan, &facts) {
        Err(Error::IncompleteCover { missing, .. }) => assert_eq!(missing, vec!["1"]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn bad_plans_name_the_failing_step() {
    let facts = seed_facts().apply_closure(DEFAULT_MAX_CODIM).unwrap();
    let base = shipped_plan("prop-1-12-11-12-1").unwrap().unwrap();

    let mut plan = base.clone();
    plan.steps[1].params["degree"] = 3.into();
    match run_case_plan(&plan, &facts) {
        Err(Error::PlanCheckFailure { step, .. }) => assert_eq!(step, "steps[1]"),
        other => panic!("{other:?}"),
    }

    let mut plan = base.clone();
    plan.steps[2].axiom = None;
    assert!(matches!(run_case_plan(&plan, &facts), Err(Error::PlanCheckFailure { .. })));

    let mut plan = base.clone();
    plan.steps[2].citation = Some("  ".into());
    assert!(matches!(run_case_plan(&plan, &facts), Err(Error::PlanCheckFailure { .. })));

    let mut plan = base.clone();
    plan.steps.truncate(3);
    assert!(matches!(run_case_plan(&plan, &facts), Err(Error::PlanCheckFailure { .. })));

    // dropping a contradiction marker leaves an unterminated branch
    let mut plan = base;
    let text = serde_json::to_string(&plan).unwrap().replacen(r#",{"kind":"Contradiction"}"#, "", 1);
    plan = CasePlan::from_json(&text).unwrap();
    assert!(matches!(run_case_plan(&plan, &facts), Err(Error::PlanCheckFailure { .. })));
}

#[test]
fn refuter_examples() {
    let mut facts = seed_facts().split_certificate_claims().0;
    let top = hv("1,17,15,15,17,1");
    assert!(matches!(refute_by_enumeration(&top, &facts).unwrap(), Refutation::Inconclusive { .. }));
    facts
        .insert(FactRecord::new(hv("1,12,11,12,1"), Status::NotGorenstein, Provenance::Certificate("prop-1-12-11-12-1".into())))
        .unwrap();
    match refute_by_enumeration(&top, &facts).unwrap() {
        Refutation::Refuted(cert) => {
            verify_certificate(&cert, &facts).unwrap();
            assert!(cert.to_canonical_json().contains("MacaulayViolation"));
        }
        other => panic!("{other:?}"),
    }
    for h in ["1,12,11,12,1", "1,13,12,13,1"] {
        match refute_by_enumeration(&hv(h), &facts).unwrap() {
            Refutation::Inconclusive { survivors } => assert!(!survivors.is_empty()),
            other => panic!("{h}: {other:?}"),
        }
    }
    assert!(refute_by_enumeration(&hv("1,3,1,3,1"), &facts).is_err());
}

#[test]
fn small_classification() {
    let table = classify(4, 3, &seed_facts(), &shipped_plans().unwrap()).unwrap();
    for c in &table.rows {
        if c.status != Status::NotOSequence {
            assert_eq!(c.status, Status::Gorenstein, "{}", c.hvector);
        }
    }
    assert_eq!(table.min_nonunimodal_codim, None);
    assert!(tabulate(6, 3, &seed_facts()).is_err());
}

#[test]
fn saturation_intervals() {
    let k = knowledge();
    for (id, lower, upper) in [
        ("prop-1-12-11-12-1", 15, 17),
        ("thm1-1-17-15-17-1", 25, 26),
        ("h1-1-16-15-15-16-1", 21, 22),
        ("thm2-1-25-22-22-25-1", 36, 36),
    ] {
        let cert = k.certificates.iter().find(|c| c.id == id).unwrap();
        let step = cert.steps.iter().find(|s| s.kind == StepKind::SaturationBound).unwrap();
        let checked = step.checked_values.as_ref().unwrap();
        assert_eq!(checked["lower_base"], lower, "{id}");
        assert_eq!(checked["upper"], upper, "{id}");
    }
}
