use std::fs;
use std::process::ExitCode;

use qborel::{Error, C64};
use serde_json::{json, Value};

use crate::{Common, Format};

/// Per-point table for CSV output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub pass: bool,
    pub table: Option<Table>,
}

pub fn cx(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Errors caused by the inputs rather than by the numerics.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInput(_)
            | Error::InvalidBase(_)
            | Error::InvalidModulus(_)
            | Error::ZeroParameter
            | Error::SingularDirection(_)
            | Error::NotIncreasing
            | Error::DegenerateOperator
            | Error::Unsupported(_)
    )
}

fn number(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn csv_text(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory write");
    for r in &t.rows {
        w.write_record(r.iter().map(|&v| number(v)))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn config(common: &Common) -> Value {
    let q = common.quad();
    json!({
        "q": common.q,
        "quadrature": {
            "step": q.step,
            "tol": q.tol,
            "max_window": q.max_window,
            "blocks": q.blocks,
            "edge_tol": q.edge_tol,
        },
    })
}

pub fn emit(name: &str, common: &Common, outcome: Result<Outcome, Error>) -> ExitCode {
    let (report, table, code) = match outcome {
        Ok(o) => {
            let report = json!({
                "command": name,
                "config": config(common),
                "inputs": o.inputs,
                "results": o.results,
                "pass": o.pass,
            });
            (report, o.table, if o.pass { 0 } else { 1 })
        }
        Err(e) => {
            let code = if is_input_error(&e) { 2 } else { 1 };
            eprintln!("qborel {name}: {e}");
            let report = json!({
                "command": name,
                "config": config(common),
                "error": e.to_string(),
                "pass": false,
            });
            (report, None, code)
        }
    };
    let json_text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    let primary = match (common.format, &table) {
        (Format::Csv, Some(t)) => csv_text(t),
        _ => json_text.clone(),
    };
    print!("{primary}");
    if let Some(path) = &common.out {
        let mut ok = fs::write(path, &primary).is_ok();
        if let (Format::Json, Some(t)) = (common.format, &table) {
            ok &= fs::write(path.with_extension("csv"), csv_text(t)).is_ok();
        }
        if !ok {
            eprintln!("qborel {name}: could not write {}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
