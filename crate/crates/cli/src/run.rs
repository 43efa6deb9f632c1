//! Verb dispatch and report printing.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use kempf_core::action::state;
use kempf_core::decision::{
    gotzmann_number, hilbert_point, in_hull, is_semistable_with, q_of_d, solve_esc_until, Certificate, SearchOptions,
    Verdict, XiPoint,
};
use kempf_core::groebner::{buchberger_until, contains_one, Ideal, MonomialOrder};
use kempf_core::reduction::{reduce_sysal_to_sc, ESCInstance, PolySystem, SCInstance};
use kempf_core::unipoly::UniPoly;
use kempf_core::{Character, ExteriorVector, Polynomial, Rational};
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::input::{Failure, Inputs};
use crate::{Cli, Command, OutputFormat};

/// A computed answer in both output formats.
struct Answer {
    json: Value,
    text: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HullInput {
    weights: Vec<Character>,
    xi: Vec<String>,
}

fn verb(command: &Command) -> &'static str {
    match command {
        Command::Reduce { .. } => "reduce",
        Command::SolveSc { .. } => "solve-sc",
        Command::SolveEsc { .. } => "solve-esc",
        Command::Groebner { .. } => "groebner",
        Command::State { .. } => "state",
        Command::Hull { .. } => "hull",
        Command::HilbertPoint { .. } => "hilbert-point",
        Command::Semistable { .. } => "semistable",
        Command::Gotzmann { .. } => "gotzmann",
    }
}

/// Run the command, print the report and return the exit code.
pub fn execute(cli: Cli) -> u8 {
    let start = Instant::now();
    let verb = verb(&cli.command);
    let mut inputs = Inputs::default();
    let outcome = deadline(cli.global.timeout, start).and_then(|d| dispatch(&cli.command, &mut inputs, d));
    let elapsed = start.elapsed();

    let mut report = Map::new();
    report.insert("verb".into(), json!(verb));
    report.insert("inputs".into(), json!(inputs.digests));
    if cli.global.timing {
        report.insert("wall_time_ms".into(), json!(elapsed.as_millis() as u64));
    }
    let (code, text) = match outcome {
        Ok(answer) => {
            report.insert("result".into(), answer.json);
            (0, answer.text)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            if !matches!(failure, Failure::Timeout) {
                return failure.exit_code();
            }
            report.insert("result".into(), Value::Null);
            report.insert("error".into(), json!(failure.message()));
            (failure.exit_code(), format!("timeout exceeded after {:.3}s", elapsed.as_secs_f64()))
        }
    };
    let mut body = match cli.global.output {
        OutputFormat::Json => serde_json::to_string_pretty(&Value::Object(report)).expect("values serialize"),
        OutputFormat::Text => text.trim_end().to_string(),
    };
    if cli.global.timing && cli.global.output == OutputFormat::Text {
        body.push_str(&format!("\nwall time: {} ms", elapsed.as_millis()));
    }
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{body}");
    code
}

fn deadline(timeout: Option<f64>, start: Instant) -> Result<Option<Instant>, Failure> {
    match timeout {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(start + Duration::from_secs_f64(s))),
        Some(s) => Err(Failure::Input(format!("--timeout must be a positive number of seconds, got {s}"))),
    }
}

fn dispatch(command: &Command, inputs: &mut Inputs, deadline: Option<Instant>) -> Result<Answer, Failure> {
    match command {
        Command::Reduce { system, out } => reduce(inputs.json("system", system)?, out.as_deref()),
        Command::SolveSc { instance } => {
            let inst: SCInstance = inputs.json("instance", instance)?;
            solve(&inst.to_esc(), deadline)
        }
        Command::SolveEsc { instance } => solve(&inputs.json("instance", instance)?, deadline),
        Command::Groebner { ideal, order } => groebner(inputs.ideal("ideal", ideal)?, *order, deadline),
        Command::State { point } => weights(&inputs.json("point", point)?),
        Command::Hull { input } => hull(inputs.json("input", input)?),
        Command::HilbertPoint { ideal, out } => {
            let gens = inputs.ideal("ideal", &ideal.ideal)?;
            let (point, b) = hilbert(&gens, ideal.vars, ideal.degree)?;
            if let Some(path) = out {
                write_json(path, &serde_json::to_value(&point).expect("points serialize"))?;
            }
            let mut text = format!("b = {b}\n");
            for (w, c) in point.coords() {
                text.push_str(&format!("{w}: {c}\n"));
            }
            Ok(Answer {
                json: json!({ "b": b, "point": point }),
                text,
            })
        }
        Command::Semistable { ideal, point, jobs } => {
            let v: ExteriorVector = match (point, &ideal.ideal, ideal.degree) {
                (Some(path), _, _) => inputs.json("point", path)?,
                (None, Some(path), Some(d)) => {
                    let gens = inputs.ideal("ideal", path)?;
                    hilbert(&gens, ideal.vars, d)?.0
                }
                _ => return Err(Failure::Input("semistable needs --point or --ideal with --degree".into())),
            };
            semistable(&v, *jobs, deadline)
        }
        Command::Gotzmann { poly, vars, degree } => {
            inputs.record("poly", poly.as_bytes());
            gotzmann(poly, vars.zip(*degree))
        }
    }
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("values serialize") + "\n";
    fs::write(path, text).map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))
}

fn reduce(system: PolySystem, out: Option<&Path>) -> Result<Answer, Failure> {
    let inst = reduce_sysal_to_sc(&system)?;
    let instance = serde_json::to_value(&inst).expect("instances serialize");
    if let Some(path) = out {
        write_json(path, &instance)?;
    }
    let amb = inst.ambient();
    let text = format!(
        "l = {}, d = {}\npoint in degree {} wedge 2 over {} variables, {} nonzero coordinates\ncharacter {}\n",
        system.l(),
        system.d(),
        amb.d,
        amb.r,
        inst.point().num_nonzero(),
        inst.character()
    );
    Ok(Answer {
        json: json!({ "l": system.l(), "d": system.d(), "instance": instance }),
        text,
    })
}

fn solve(inst: &ESCInstance, deadline: Option<Instant>) -> Result<Answer, Failure> {
    let solvable = solve_esc_until(inst, deadline)?;
    Ok(Answer {
        json: json!({ "solvable": solvable }),
        text: format!("solvable: {solvable}"),
    })
}

fn groebner(gens: Vec<Polynomial>, order: MonomialOrder, deadline: Option<Instant>) -> Result<Answer, Failure> {
    let basis = buchberger_until(&Ideal::new(gens), order, deadline)?;
    let elements: Vec<String> = basis.elements().iter().map(ToString::to_string).collect();
    Ok(Answer {
        text: elements.join("\n"),
        json: json!({ "order": order, "basis": elements, "contains_one": contains_one(&basis) }),
    })
}

/// Weights in descending order.
fn weights(v: &ExteriorVector) -> Result<Answer, Failure> {
    let ws: Vec<Character> = state(v)?.into_iter().rev().collect();
    Ok(Answer {
        text: ws.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
        json: json!({ "weights": ws }),
    })
}

fn hull(input: HullInput) -> Result<Answer, Failure> {
    let xi: Vec<Rational> = input
        .xi
        .iter()
        .map(|s| s.trim().parse().map_err(|_| Failure::Input(format!("`{s}` is not a rational number"))))
        .collect::<Result<_, _>>()?;
    let inside = in_hull(&input.weights.into_iter().collect(), &XiPoint::new(xi)?)?;
    Ok(Answer {
        json: json!({ "in_hull": inside }),
        text: format!("in hull: {inside}"),
    })
}

/// Without `--vars`, `r` is the largest variable index used, and at least 2.
fn hilbert(gens: &[Polynomial], vars: Option<usize>, d: u32) -> Result<(ExteriorVector, usize), Failure> {
    let r = vars.unwrap_or_else(|| gens.iter().map(|g| g.max_space_index() as usize).max().unwrap_or(0).max(2));
    Ok(hilbert_point(gens, r, d)?)
}

fn semistable(v: &ExteriorVector, jobs: usize, deadline: Option<Instant>) -> Result<Answer, Failure> {
    let verdict: Verdict = is_semistable_with(v, SearchOptions { jobs, deadline })?;
    let text = match &verdict.certificate {
        Certificate::Exhausted { checked_pairs } => format!("semistable ({checked_pairs} pairs checked)"),
        Certificate::Unstable { q, omega, groebner } => {
            let mut text = format!("unstable\nq: {:?}\nomega: {omega}\ngroebner:", q.images());
            if groebner.is_empty() {
                text.push_str(" (zero ideal)");
            }
            for g in groebner {
                text.push_str(&format!("\n  {g}"));
            }
            text
        }
    };
    Ok(Answer {
        json: serde_json::to_value(&verdict).expect("verdicts serialize"),
        text,
    })
}

fn gotzmann(poly: &str, q_at: Option<(usize, u32)>) -> Result<Answer, Failure> {
    let p: UniPoly = poly.parse()?;
    let s = gotzmann_number(&p)?;
    let mut result = json!({ "polynomial": p.to_string(), "gotzmann": s });
    let mut text = format!("gotzmann number: {s}");
    if let Some((r, d)) = q_at {
        let q = q_of_d(&p, r, d)?;
        let q = q.to_u64().ok_or_else(|| Failure::Internal(format!("Q({d}) = {q} does not fit in 64 bits")))?;
        result["q_of_d"] = json!(q);
        text.push_str(&format!("\nQ({d}) = {q}"));
    }
    Ok(Answer { json: result, text })
}
