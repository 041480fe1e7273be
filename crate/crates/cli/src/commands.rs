//! One function per subcommand. Each returns the text rendering, the JSON
//! result and the exit status; `main` wraps them in the output envelope.

use std::fmt::Write;

use anyhow::{bail, Context};
use num_bigint::{BigInt, BigUint};
use rivercross::family::{ConjectureReport, FamilyTerm};
use rivercross::strategy::StrategyName;
use rivercross::transfer::{legal_state_bound, TraceStage};
use rivercross::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Family, Instance, Method};

pub const SOLVABLE: u8 = 0;
pub const UNSOLVABLE: u8 = 2;

pub struct Outcome {
    pub text: String,
    pub params: Value,
    pub result: Value,
    pub status: u8,
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data always serializes")
}

fn params(inst: &Instance) -> anyhow::Result<McParams> {
    McParams::new(inst.m, inst.c, inst.b, inst.d).context("invalid instance")
}

fn family_spec(f: &Family) -> anyhow::Result<FamilySpec> {
    Ok(FamilySpec::new(f.r, f.b, f.d, f.k)
        .context("invalid family")?
        .starting_at(f.from))
}

fn unsolvable_line(p: &McParams) -> String {
    format!("UNSOLVABLE: no sequence of legal crossings solves {p}\n")
}

#[derive(Serialize)]
struct SolveResult {
    params: McParams,
    solvable: bool,
    crossings: Option<usize>,
    /// Decimal string so that large counts survive 64-bit JSON readers.
    count: String,
    solutions: Vec<SolutionPath>,
}

pub fn solve(inst: &Instance, all: bool) -> anyhow::Result<Outcome> {
    let p = params(inst)?;
    let Some(sols) = solve_mc(&p) else {
        let result = SolveResult {
            params: p,
            solvable: false,
            crossings: None,
            count: "0".into(),
            solutions: vec![],
        };
        return Ok(Outcome {
            text: unsolvable_line(&p),
            params: to_json(&p),
            result: to_json(&result),
            status: UNSOLVABLE,
        });
    };
    let total = sols.solutions.len();
    let shown: Vec<SolutionPath> = if all {
        sols.solutions
    } else {
        sols.solutions.into_iter().take(1).collect()
    };
    let mut text = format!(
        "Instance {p}\nShortest solutions: {total}, each with {} crossings\n",
        sols.crossings
    );
    for (i, s) in shown.iter().enumerate() {
        writeln!(text, "Solution {}: {s}", i + 1)?;
    }
    let result = SolveResult {
        params: p,
        solvable: true,
        crossings: Some(sols.crossings),
        count: total.to_string(),
        solutions: shown,
    };
    Ok(Outcome {
        text,
        params: to_json(&p),
        result: to_json(&result),
        status: SOLVABLE,
    })
}

pub fn spell(inst: &Instance, index: usize) -> anyhow::Result<Outcome> {
    let p = params(inst)?;
    let Some(sols) = solve_mc(&p) else {
        let result = json!({ "params": p, "solvable": false });
        return Ok(Outcome {
            text: unsolvable_line(&p),
            params: to_json(&p),
            result,
            status: UNSOLVABLE,
        });
    };
    let count = sols.solutions.len();
    let Some(sol) = sols.solutions.get(index) else {
        bail!(
            "solution index {index} is out of range; {p} has {count} shortest solutions (0..{})",
            count - 1
        );
    };
    let transcript = spell_out(&p, sol)?;
    let result = json!({
        "params": p,
        "solvable": true,
        "index": index,
        "solution": sol,
        "transcript": transcript.lines().collect::<Vec<_>>(),
    });
    Ok(Outcome {
        text: format!("{transcript}\n"),
        params: to_json(&p),
        result,
        status: SOLVABLE,
    })
}

pub fn count(inst: &Instance, method: Method) -> anyhow::Result<Outcome> {
    let p = params(inst)?;
    let mut extra = None;
    let found: Option<(usize, BigUint)> = match method {
        Method::Graph => {
            let (g, idx) = mc_graph(&p);
            all_shortest_paths(&g, idx.source(), idx.sink())?
                .map(|l| (l.length, BigUint::from(l.count())))
        }
        Method::Matrix => {
            let (g, idx) = mc_graph(&p);
            count_shortest_walks(&g, idx.source(), idx.sink()).map(|w| (w.length, w.count))
        }
        Method::Transfer => match solve_by_transfer(&SpeciesPuzzle::missionaries_cannibals(&p)) {
            TransferOutcome::Solvable {
                crossings, count, ..
            } => Some((crossings, count)),
            TransferOutcome::Unsolvable {
                states_bound,
                iterations_run,
            } => {
                extra = Some((states_bound, iterations_run));
                None
            }
        },
    };
    let mut result = json!({
        "params": p,
        "method": method,
        "solvable": found.is_some(),
        "crossings": found.as_ref().map(|f| f.0),
        "count": found.as_ref().map_or("0".to_string(), |f| f.1.to_string()),
    });
    if let Some((bound, iterations)) = extra {
        result["states_bound"] = json!(bound);
        result["iterations_run"] = json!(iterations);
    }
    let method_name = to_json(&method);
    let method_name = method_name.as_str().unwrap_or_default();
    let (text, status) = match &found {
        Some((crossings, n)) => (
            format!("Instance {p}\nMethod: {method_name}\nCrossings: {crossings}\nCount: {n}\n"),
            SOLVABLE,
        ),
        None => {
            let mut text = format!(
                "Instance {p}\nMethod: {method_name}\n{}",
                unsolvable_line(&p)
            );
            if let Some((bound, iterations)) = extra {
                writeln!(
                    text,
                    "Checked g_i for i <= {iterations} ({bound} legal states)"
                )?;
            }
            (text, UNSOLVABLE)
        }
    };
    Ok(Outcome {
        text,
        params: to_json(&p),
        result,
        status,
    })
}

fn poly_json(poly: &SparsePolynomial) -> Value {
    let terms: Vec<Value> = poly
        .ordered_terms()
        .into_iter()
        .map(|(e, c)| json!([c.to_string(), e]))
        .collect();
    json!({ "text": poly.to_string(), "terms": terms })
}

fn stage_json(s: &TraceStage) -> Value {
    json!({ "index": s.index, "g": s.g.as_ref().map(poly_json), "f": poly_json(&s.f) })
}

fn outcome_json(o: &TransferOutcome) -> Value {
    match o {
        TransferOutcome::Solvable {
            stage,
            crossings,
            count,
        } => {
            json!({ "solvable": true, "stage": stage, "crossings": crossings, "count": count.to_string() })
        }
        TransferOutcome::Unsolvable {
            states_bound,
            iterations_run,
        } => {
            json!({ "solvable": false, "states_bound": states_bound, "iterations_run": iterations_run })
        }
    }
}

pub fn trace(inst: &Instance, steps: Option<usize>) -> anyhow::Result<Outcome> {
    let p = params(inst)?;
    let sp = SpeciesPuzzle::missionaries_cannibals(&p);
    let outcome = solve_by_transfer(&sp);
    let rounds = steps.unwrap_or(match &outcome {
        TransferOutcome::Solvable { stage, .. } => *stage,
        TransferOutcome::Unsolvable { iterations_run, .. } => *iterations_run,
    });
    let stages = transfer_trace(&sp, rounds);
    // Without --steps a solvable trace ends at the g_i that solves it.
    let stop_at_g = steps.is_none() && outcome.is_solvable();
    let mut text = format!(
        "Instance {p}\nP = {}\n",
        rivercross::transfer::crossing_polynomial(&sp)
    );
    for s in &stages {
        if let Some(g) = &s.g {
            writeln!(text, "g_{} = {g}", s.index)?;
        }
        if !(stop_at_g && s.index == rounds) {
            writeln!(text, "f_{} = {}", s.index, s.f)?;
        }
    }
    let status = match &outcome {
        TransferOutcome::Solvable {
            stage,
            crossings,
            count,
        } => {
            writeln!(text, "g_{stage} has constant term {count}: {count} shortest solutions of {crossings} crossings")?;
            SOLVABLE
        }
        TransferOutcome::Unsolvable {
            states_bound,
            iterations_run,
        } => {
            writeln!(
                text,
                "UNSOLVABLE: g_i has zero constant term for every i <= {iterations_run}, and there are only {states_bound} legal states"
            )?;
            UNSOLVABLE
        }
    };
    let result = json!({
        "params": p,
        "states_bound": legal_state_bound(&sp),
        "outcome": outcome_json(&outcome),
        "stages": stages.iter().map(stage_json).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        text,
        params: to_json(&p),
        result,
        status,
    })
}

fn family_params(fs: &FamilySpec) -> Value {
    json!({ "r": fs.surplus, "boat": fs.boat, "margin": fs.margin, "terms": fs.terms, "from": fs.first_index })
}

fn terms_json(fs: &FamilySpec, terms: &[FamilyTerm]) -> Vec<Value> {
    fs.indices()
        .zip(terms)
        .map(|(i, t)| match t {
            FamilyTerm::Solved { crossings, count } => {
                json!({ "i": i, "solvable": true, "crossings": crossings, "count": count.to_string() })
            }
            FamilyTerm::Unsolvable => json!({ "i": i, "solvable": false, "crossings": null, "count": "0" }),
        })
        .collect()
}

fn format_values(values: &[BigInt]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn sequence(f: &Family) -> anyhow::Result<Outcome> {
    let fs = family_spec(f)?;
    let terms = family_counts(&fs);
    let values: Vec<BigInt> = terms.iter().map(FamilyTerm::value).collect();
    let mut text = format!("Family: {}\n{}\n", fs.describe(), format_values(&values));
    let unsolvable: Vec<String> = fs
        .indices()
        .zip(&terms)
        .filter(|(_, t)| **t == FamilyTerm::Unsolvable)
        .map(|(i, _)| i.to_string())
        .collect();
    if !unsolvable.is_empty() {
        writeln!(
            text,
            "Unsolvable (shown as 0) at i = {}",
            unsolvable.join(", ")
        )?;
    }
    let result = json!({ "family": fs.describe(), "terms": terms_json(&fs, &terms) });
    Ok(Outcome {
        text,
        params: family_params(&fs),
        result,
        status: SOLVABLE,
    })
}

fn report_json(report: &ConjectureReport) -> Value {
    let fs = &report.family;
    let recurrence = report.recurrence.as_ref().map(|r| {
        json!({
            "order": r.order(),
            "coefficients": r.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "relation": r.render("i"),
            "recurrent_from": report.recurrent_from(),
            "imposed_from": fs.first_index as usize + r.first_constrained(),
        })
    });
    let gf = report.gf.as_ref().map(|g| {
        json!({
            "numerator": g.numerator.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "denominator": g.denominator.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "text": g.to_string(),
            "series_start": fs.first_index,
        })
    });
    json!({
        "family": fs.describe(),
        "max_order": report.max_order,
        "terms": terms_json(fs, &report.terms),
        "all_unsolvable": report.all_unsolvable(),
        "recurrence": recurrence,
        "gf": gf,
        "held_out": report.held_out,
        "verified": report.verified,
    })
}

pub fn conjecture(f: &Family, max_order: usize) -> anyhow::Result<Outcome> {
    let fs = family_spec(f)?;
    anyhow::ensure!(max_order >= 1, "--max-order must be at least 1");
    let report = conjecture_report(&fs, max_order);
    Ok(Outcome {
        text: report.to_string(),
        params: json!({ "family": family_params(&fs), "max_order": max_order }),
        result: report_json(&report),
        status: SOLVABLE,
    })
}

pub fn strategy(inst: &Instance, name: Option<&str>) -> anyhow::Result<Outcome> {
    let p = params(inst)?;
    let Some(name) = name else {
        let applicable = applicability(&p);
        let mut text = format!("Instance {p}\n");
        for s in StrategyName::ALL {
            let mark = if applicable.contains(&s) {
                "applies"
            } else {
                "-"
            };
            writeln!(text, "{:<28}{:<9}{}", s.label(), mark, s.condition())?;
        }
        let result = json!({
            "params": p,
            "applicable": applicable.iter().map(|s| s.label()).collect::<Vec<_>>(),
        });
        return Ok(Outcome {
            text,
            params: to_json(&p),
            result,
            status: SOLVABLE,
        });
    };
    let Some(s) = StrategyName::from_label(name) else {
        let known: Vec<&str> = StrategyName::ALL.iter().map(|s| s.label()).collect();
        bail!(
            "unknown strategy {name:?}; expected one of {}",
            known.join(", ")
        );
    };
    match build_strategy(&p, s) {
        Err(e) => {
            let result = json!({ "params": p, "strategy": s.label(), "applicable": false, "condition": s.condition() });
            Ok(Outcome {
                text: format!("NOT APPLICABLE: {e}\n"),
                params: to_json(&p),
                result,
                status: UNSOLVABLE,
            })
        }
        Ok(ms) => {
            let verdict = validate_solution(&p, &ms);
            let mut text = format!("Instance {p}\nStrategy: {s} ({})\n", s.condition());
            for (mv, state) in ms.moves().iter().zip(ms.states(&p).iter().skip(1)) {
                writeln!(text, "{mv}    {state}")?;
            }
            match &verdict {
                Ok(()) => writeln!(text, "Valid solution with {} crossings", ms.len())?,
                Err(v) => writeln!(text, "INVALID: {v}")?,
            }
            let result = json!({
                "params": p,
                "strategy": s.label(),
                "applicable": true,
                "moves": ms.moves().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "crossings": ms.len(),
                "valid": verdict.is_ok(),
            });
            Ok(Outcome {
                text,
                params: to_json(&p),
                result,
                status: SOLVABLE,
            })
        }
    }
}
