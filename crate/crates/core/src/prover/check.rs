//! The case-plan interpreter.
//!
//! Every number a plan states is recomputed here; the interpreter fills in
//! `checked_values` so the resulting certificate shows its arithmetic.
//! Verification is replay: a certificate is valid iff running it as a plan
//! reproduces it exactly.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factbase::{FactSet, Status};
use crate::macaulay::{gotzmann_persistence, macaulay_next};
use crate::sequences::{
    first_macaulay_violation, is_o_sequence, level_decomposition_check, reverse_difference, variety_hf,
    variety_profile, HVector, VarietyKind,
};

use super::diagram::{detect_forced_socle, diagram_candidates, enumerate_diagrams, Diagram};
use super::plan::{
    AxiomKind, CasePlan, CaseSplitParams, CaseStep, CaseValue, Certificate, DbLookupParams, DegreeParams, FactUse,
    GotzmannParams, SaturationBoundParams, SplitVariable, StepKind, UniqueDiagramParams,
};

/// What the steps so far have established.
#[derive(Debug, Clone, Default)]
struct Context {
    diagram: Option<Diagram>,
    max_growth: Option<usize>,
    lifted: Option<VarietyKind>,
    /// `(variety_hf(lifted, e), upper)` from a saturation bound.
    bound: Option<(u64, u64)>,
    points: Option<u64>,
    hilbert_value: Option<u64>,
    closed_by: Option<StepKind>,
}

struct Run<'a> {
    plan_id: &'a str,
    top: &'a HVector,
    e: usize,
    facts: &'a FactSet,
    used: BTreeSet<FactUse>,
}

type Checked = BTreeMap<String, Value>;

impl Run<'_> {
    fn fail(&self, path: &str, message: impl Into<String>) -> Error {
        Error::PlanCheckFailure {
            plan: self.plan_id.to_string(),
            step: path.to_string(),
            message: message.into(),
        }
    }

    fn params<T: DeserializeOwned>(&self, step: &CaseStep, path: &str) -> Result<T> {
        serde_json::from_value(step.params.clone()).map_err(|e| self.fail(path, format!("bad params: {e}")))
    }

    fn lookup(&mut self, h: &HVector, expected: Status, path: &str) -> Result<()> {
        if !matches!(expected, Status::NotGorenstein | Status::NotOSequence) {
            return Err(self.fail(path, format!("lookup of {h} must claim a negative status")));
        }
        let found = self.facts.status_of(h);
        if found != expected {
            return Err(self.fail(path, format!("fact base has {h} as {found}, plan claims {expected}")));
        }
        if found == Status::NotGorenstein {
            self.used.insert(FactUse {
                hvector: h.clone(),
                status: found,
            });
        }
        Ok(())
    }

    /// `h_{R/J}(t)`: the target up to degree `e - 1`, the split value at `e`.
    fn h_j(&self, ctx: &Context, t: usize, path: &str) -> Result<u64> {
        if t < self.e {
            Ok(self.top.get(t))
        } else if t == self.e {
            ctx.hilbert_value
                .ok_or_else(|| self.fail(path, "h_{R/J}(e) is not fixed by an enclosing case split"))
        } else {
            Err(self.fail(path, format!("degree {t} exceeds the socle degree")))
        }
    }

    fn run_steps(&mut self, steps: &[CaseStep], mut ctx: Context, path: &str) -> Result<Vec<CaseStep>> {
        let mut out = Vec::with_capacity(steps.len());
        let mut ended = false;
        for (i, step) in steps.iter().enumerate() {
            let here = format!("{path}[{i}]");
            if ended {
                return Err(self.fail(&here, "steps after the end of a branch"));
            }
            if ctx.closed_by.is_some() && step.kind != StepKind::Contradiction {
                return Err(self.fail(&here, "a contradiction was derived; only Contradiction may follow"));
            }
            self.check_axiom(step, &here)?;
            let mut checked_step = step.clone();
            let checked = match step.kind {
                StepKind::CaseSplit => {
                    ended = true;
                    let (values, params) = self.case_split(step, &ctx, &here)?;
                    checked_step.params = serde_json::to_value(params).expect("params serialize");
                    values
                }
                StepKind::Contradiction => {
                    ended = true;
                    if !step.params.is_null() {
                        return Err(self.fail(&here, "Contradiction takes no params"));
                    }
                    let by = ctx
                        .closed_by
                        .ok_or_else(|| self.fail(&here, "no contradiction has been derived"))?;
                    BTreeMap::from([("closed_by".to_string(), json!(by))])
                }
                _ => self.simple_step(step, &mut ctx, &here)?,
            };
            checked_step.checked_values = Some(checked);
            out.push(checked_step);
        }
        if !ended {
            return Err(self.fail(path, "branch does not end in Contradiction or CaseSplit"));
        }
        Ok(out)
    }

    fn check_axiom(&self, step: &CaseStep, path: &str) -> Result<()> {
        let expected = match step.kind {
            StepKind::GotzmannVariety => {
                let p: GotzmannParams = self.params(step, path)?;
                match p.variety {
                    VarietyKind::Line => Some(AxiomKind::GotzmannLine),
                    VarietyKind::Conic => Some(AxiomKind::GotzmannConic),
                    other => return Err(self.fail(path, format!("no persistence axiom for {other}"))),
                }
            }
            StepKind::SaturationBound => Some(AxiomKind::SaturationBound),
            StepKind::SaturationSocle => Some(AxiomKind::SaturationSocle),
            _ => None,
        };
        if step.axiom != expected {
            return Err(self.fail(path, format!("{:?} step must name axiom {expected:?}, found {:?}", step.kind, step.axiom)));
        }
        match (&expected, &step.citation) {
            (Some(_), Some(c)) if !c.trim().is_empty() => Ok(()),
            (Some(_), _) => Err(self.fail(path, "axiom step without a citation")),
            (None, Some(_)) => Err(self.fail(path, "citation on a non-axiom step")),
            (None, None) => Ok(()),
        }
    }

    fn diagram<'c>(&self, ctx: &'c Context, path: &str) -> Result<&'c Diagram> {
        ctx.diagram
            .as_ref()
            .ok_or_else(|| self.fail(path, "no diagram has been fixed"))
    }

    fn simple_step(&mut self, step: &CaseStep, ctx: &mut Context, path: &str) -> Result<Checked> {
        let e = self.e;
        let mut checked = Checked::new();
        let mut put = |k: &str, v: Value| {
            checked.insert(k.to_string(), v);
        };
        match step.kind {
            StepKind::UniqueDiagram => {
                if ctx.diagram.is_some() {
                    return Err(self.fail(path, "diagram already fixed"));
                }
                let p: UniqueDiagramParams = self.params(step, path)?;
                let all = enumerate_diagrams(self.top).map_err(|e| self.fail(path, e.to_string()))?;
                let mut declared: Vec<Diagram> = p
                    .eliminated
                    .iter()
                    .map(|el| Diagram {
                        mid: el.mid.clone(),
                        bot: el.bot.clone(),
                    })
                    .chain(std::iter::once(p.survivor.clone()))
                    .collect();
                declared.sort();
                if declared != all {
                    return Err(self.fail(
                        path,
                        format!("declared diagrams {declared:?} differ from the enumeration {all:?}"),
                    ));
                }
                for el in &p.eliminated {
                    let mid = HVector::new(el.mid[1..].to_vec()).map_err(|e| self.fail(path, e.to_string()))?;
                    self.lookup(&mid, el.status, path)?;
                }
                put("diagram_count", json!(all.len()));
                put("survivor_mid", json!(p.survivor.mid_candidate().map_err(|e| self.fail(path, e.to_string()))?));
                ctx.diagram = Some(p.survivor);
            }
            StepKind::MaxGrowth => {
                let DegreeParams { degree: d } = self.params(step, path)?;
                let bot = &self.diagram(ctx, path)?.bot;
                if d == 0 || d >= e {
                    return Err(self.fail(path, format!("degree {d} out of range")));
                }
                let bound = self.arith(path, macaulay_next(bot[d], d))?;
                if bot[d] == 0 || bot[d + 1] != bound {
                    return Err(self.fail(path, format!("bot growth {} -> {} at degree {d} is not maximal ({bound})", bot[d], bot[d + 1])));
                }
                put("from", json!(bot[d]));
                put("to", json!(bot[d + 1]));
                put("bound", json!(bound));
                ctx.max_growth = Some(d);
            }
            StepKind::GotzmannVariety => {
                let p: GotzmannParams = self.params(step, path)?;
                let d = p.degree;
                if ctx.max_growth != Some(d) {
                    return Err(self.fail(path, format!("no maximal growth established at degree {d}")));
                }
                if ctx.lifted.is_some() {
                    return Err(self.fail(path, "variety already lifted"));
                }
                // J = (I_{<= e-1}) is generated in degrees <= d + 1
                if d + 2 != e || p.through != e - d {
                    return Err(self.fail(path, format!("persistence must start at degree e - 2 = {} and run through e", e - 2)));
                }
                let base = self.diagram(ctx, path)?.bot[d];
                let expected = self.arith(path, variety_hf(p.variety, d))?;
                if base != expected {
                    return Err(self.fail(path, format!("bot[{d}] = {base}, {} has {expected}", p.variety)));
                }
                let mut persistence = Vec::new();
                for s in 1..=p.through {
                    let got = self.arith(path, gotzmann_persistence(base, d, s))?;
                    let want = self.arith(path, variety_hf(p.variety, d + s))?;
                    if got != want {
                        return Err(self.fail(path, format!("persistence {got} != {want} in degree {}", d + s)));
                    }
                    persistence.push(got);
                }
                let lift = p.variety.lift().expect("line and conic lift");
                put("base", json!(base));
                put("persistence", json!(persistence));
                put("lift", json!(lift));
                ctx.lifted = Some(lift);
            }
            StepKind::SaturationBound => {
                let p: SaturationBoundParams = self.params(step, path)?;
                if ctx.lifted != Some(p.variety) {
                    return Err(self.fail(path, format!("{} has not been established", p.variety)));
                }
                if p.degree != e || ctx.bound.is_some() {
                    return Err(self.fail(path, format!("saturation bound must be stated once, in degree {e}")));
                }
                let lower = self.arith(path, variety_hf(p.variety, e))?;
                let upper = self.arith(path, macaulay_next(self.top.get(e - 1), e - 1))?;
                if lower > upper {
                    return Err(self.fail(path, format!("empty interval {lower}..{upper}")));
                }
                put("lower_base", json!(lower));
                put("upper", json!(upper));
                put("max_points", json!(upper - lower));
                ctx.bound = Some((lower, upper));
            }
            StepKind::ForcedSocle => {
                let DegreeParams { degree: d } = self.params(step, path)?;
                if d < 2 || d + 1 > e {
                    return Err(self.fail(path, format!("degree {d} out of range")));
                }
                let vals = [self.h_j(ctx, d - 1, path)?, self.h_j(ctx, d, path)?, self.h_j(ctx, d + 1, path)?];
                let alpha = self.arith(path, detect_forced_socle(vals[0], vals[1], vals[2], d))?;
                if alpha == 0 {
                    return Err(self.fail(path, format!("no socle forced by {vals:?} at degree {d}")));
                }
                put("values", json!(vals));
                put("alpha", json!(alpha));
                put("socle_degree", json!(d - 1));
                ctx.closed_by = Some(step.kind);
            }
            StepKind::SaturationSocle => {
                let DegreeParams { degree: s } = self.params(step, path)?;
                let (Some(v), Some(m)) = (ctx.lifted, ctx.points) else {
                    return Err(self.fail(path, "needs a lifted variety and a point count"));
                };
                if s < 2 || s > e {
                    return Err(self.fail(path, format!("degree {s} out of range")));
                }
                let at = self.h_j(ctx, s, path)?;
                let below = self.h_j(ctx, s - 1, path)?;
                let sat_at = self.arith(path, variety_hf(v, s))? + m;
                let sat_below = self.arith(path, variety_hf(v, s - 1))? + m;
                if at != sat_at || below <= sat_below {
                    return Err(self.fail(
                        path,
                        format!("need h_J({s}) = {sat_at} and h_J({}) > {sat_below}, have {at} and {below}", s - 1),
                    ));
                }
                put("saturated", json!([sat_below, sat_at]));
                put("values", json!([below, at]));
                put("socle_degree", json!(s - 1));
                ctx.closed_by = Some(step.kind);
            }
            StepKind::LevelDecomposition => {
                if !step.params.is_null() {
                    return Err(self.fail(path, "LevelDecomposition takes no params"));
                }
                let (Some(v), Some(0)) = (ctx.lifted, ctx.points) else {
                    return Err(self.fail(path, "needs a lifted variety and zero points"));
                };
                let h = (0..=e).map(|t| self.h_j(ctx, t, path)).collect::<Result<Vec<_>>>()?;
                let h = HVector::new(h).map_err(|err| self.fail(path, err.to_string()))?;
                let q = self.arith(path, variety_profile(v, e))?;
                let diff = reverse_difference(&h, &q).map_err(|err| self.fail(path, err.to_string()))?;
                if self.arith(path, level_decomposition_check(&h, &q))? {
                    return Err(self.fail(path, format!("reverse difference {diff} is an O-sequence")));
                }
                put("hvector", json!(h));
                put("quotient", json!(q));
                put("reverse_difference", json!(diff));
                put("violation_degree", json!(first_macaulay_violation(diff.entries())));
                ctx.closed_by = Some(step.kind);
            }
            StepKind::MacaulayViolation => {
                let DegreeParams { degree: d } = self.params(step, path)?;
                let bot = &self.diagram(ctx, path)?.bot;
                if d == 0 || d >= e {
                    return Err(self.fail(path, format!("degree {d} out of range")));
                }
                let bound = self.arith(path, macaulay_next(bot[d], d))?;
                if bot[d + 1] <= bound {
                    return Err(self.fail(path, format!("bot growth {} -> {} at degree {d} is within {bound}", bot[d], bot[d + 1])));
                }
                put("from", json!(bot[d]));
                put("to", json!(bot[d + 1]));
                put("bound", json!(bound));
                ctx.closed_by = Some(step.kind);
            }
            StepKind::DbLookup => {
                let p: DbLookupParams = self.params(step, path)?;
                let mid = self
                    .diagram(ctx, path)?
                    .mid_candidate()
                    .map_err(|err| self.fail(path, err.to_string()))?;
                if p.hvector != mid {
                    return Err(self.fail(path, format!("lookup of {} but the diagram's mid is {mid}", p.hvector)));
                }
                self.lookup(&p.hvector, p.status, path)?;
                put("found", json!(p.status));
                ctx.closed_by = Some(step.kind);
            }
            StepKind::CaseSplit | StepKind::Contradiction => unreachable!("handled by run_steps"),
        }
        Ok(checked)
    }

    fn arith<T>(&self, path: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| self.fail(path, e.to_string()))
    }

    fn case_split(&mut self, step: &CaseStep, ctx: &Context, path: &str) -> Result<(Checked, CaseSplitParams)> {
        let mut p: CaseSplitParams = self.params(step, path)?;
        let cover: Vec<CaseValue> = match p.variable {
            SplitVariable::Points => {
                let (lower, upper) = ctx.bound.ok_or_else(|| self.fail(path, "no saturation bound established"))?;
                if ctx.points.is_some() {
                    return Err(self.fail(path, "points already fixed"));
                }
                (0..=upper - lower).map(CaseValue::Int).collect()
            }
            SplitVariable::HilbertValue => {
                let (lower, upper) = ctx.bound.ok_or_else(|| self.fail(path, "no saturation bound established"))?;
                let m = ctx.points.ok_or_else(|| self.fail(path, "points not fixed"))?;
                if ctx.hilbert_value.is_some() {
                    return Err(self.fail(path, "h_{R/J}(e) already fixed"));
                }
                (lower + m..=upper).map(CaseValue::Int).collect()
            }
            SplitVariable::Diagram => {
                if ctx.diagram.is_some() {
                    return Err(self.fail(path, "diagram already fixed"));
                }
                let all = diagram_candidates(self.top).map_err(|e| self.fail(path, e.to_string()))?;
                all.into_iter().map(CaseValue::Diagram).collect()
            }
        };
        let declared: Vec<&CaseValue> = p.cases.iter().map(|c| &c.value).collect();
        let missing: Vec<String> = cover
            .iter()
            .filter(|v| !declared.contains(v))
            .map(case_label)
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteCover {
                plan: self.plan_id.to_string(),
                step: path.to_string(),
                missing,
            });
        }
        if declared.len() != cover.len() || declared.iter().zip(&cover).any(|(a, b)| *a != b) {
            return Err(self.fail(path, "cases must list the covered values once each, in order"));
        }

        for (i, case) in p.cases.iter_mut().enumerate() {
            let mut sub = ctx.clone();
            match (&case.value, p.variable) {
                (CaseValue::Int(v), SplitVariable::Points) => sub.points = Some(*v),
                (CaseValue::Int(v), SplitVariable::HilbertValue) => sub.hilbert_value = Some(*v),
                (CaseValue::Diagram(d), SplitVariable::Diagram) => sub.diagram = Some(d.clone()),
                _ => unreachable!("cover values match the variable"),
            }
            case.steps = self.run_steps(&case.steps, sub, &format!("{path}.cases[{i}]"))?;
        }
        let values: Vec<Value> = cover
            .iter()
            .map(|v| serde_json::to_value(v).expect("case values serialize"))
            .collect();
        Ok((BTreeMap::from([("cover".to_string(), Value::Array(values))]), p))
    }
}

fn case_label(v: &CaseValue) -> String {
    match v {
        CaseValue::Int(n) => n.to_string(),
        CaseValue::Diagram(d) => format!("mid={:?}", d.mid),
    }
}

/// Replays `plan` against `facts`, returning a NotGorenstein certificate
/// if every branch closes.
pub fn run_case_plan(plan: &CasePlan, facts: &FactSet) -> Result<Certificate> {
    let top = &plan.target;
    let mut run = Run {
        plan_id: &plan.id,
        top,
        e: top.socle_degree(),
        facts,
        used: BTreeSet::new(),
    };
    if run.e < 3 || top.get(run.e) != 1 || !crate::sequences::is_symmetric(top) || !is_o_sequence(top) {
        return Err(run.fail("target", format!("{top} is not a symmetric O-sequence of socle degree >= 3")));
    }
    let steps = run.run_steps(&plan.steps, Context::default(), "steps")?;
    Ok(Certificate {
        id: plan.id.clone(),
        target: top.clone(),
        conclusion: Status::NotGorenstein,
        comment: plan.comment.clone(),
        steps,
        facts_used: run.used.into_iter().collect(),
    })
}

/// Checks `cert` by replay. `Err` carries the first failure.
pub fn verify_certificate(cert: &Certificate, facts: &FactSet) -> Result<()> {
    let fail = |step: &str, message: String| Error::PlanCheckFailure {
        plan: cert.id.clone(),
        step: step.to_string(),
        message,
    };
    if cert.conclusion != Status::NotGorenstein {
        return Err(fail("conclusion", format!("unsupported conclusion {}", cert.conclusion)));
    }
    let fresh = run_case_plan(&cert.as_plan(), facts)?;
    if fresh != *cert {
        let a = serde_json::to_value(cert).expect("certificates serialize");
        let b = serde_json::to_value(&fresh).expect("certificates serialize");
        let at = first_difference(&a, &b, String::new()).unwrap_or_default();
        return Err(fail(&at, "recorded value differs from the recomputed one".into()));
    }
    Ok(())
}

fn first_difference(a: &Value, b: &Value, at: String) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                (Some(u), Some(v)) => first_difference(u, v, format!("{at}/{k}")),
                _ => Some(format!("{at}/{k}")),
            })
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => x
            .iter()
            .zip(y)
            .enumerate()
            .find_map(|(i, (u, v))| first_difference(u, v, format!("{at}/{i}"))),
        _ => (a != b).then_some(at),
    }
}
