use std::io::{self, Write};

use mcm_core::report::CheckReport;
use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Text form: a status line with parameters, then data and counterexample
/// lines. Wall time goes to stderr so stdout stays reproducible.
pub fn print_report(rep: &CheckReport, json: bool) -> io::Result<()> {
    let mut out = io::stdout().lock();
    if json {
        writeln!(out, "{}", serde_json::to_string(rep).expect("report serializes"))?;
        return Ok(());
    }
    let mut line = format!("{} {}", if rep.pass { "PASS" } else { "FAIL" }, rep.check);
    if let Some(n) = rep.n {
        line.push_str(&format!(" n={n}"));
    }
    for (k, v) in &rep.params {
        line.push_str(&format!(" {k}={}", scalar(v)));
    }
    writeln!(out, "{line}")?;
    for (k, v) in &rep.data {
        writeln!(out, "  {k}: {}", scalar(v))?;
    }
    if let Some(ce) = &rep.counterexample {
        writeln!(out, "  counterexample: {ce}")?;
    }
    eprintln!("{}: {} ms", rep.check, rep.elapsed_ms);
    Ok(())
}

pub fn print_value(label: &str, value: &Value, json: bool) -> io::Result<()> {
    let mut out = io::stdout().lock();
    if json {
        writeln!(out, "{}", serde_json::to_string(value).expect("value serializes"))
    } else {
        match value {
            Value::Object(map) => {
                writeln!(out, "{label}")?;
                for (k, v) in map {
                    match v {
                        Value::Array(items) => {
                            writeln!(out, "  {k}:")?;
                            for item in items {
                                writeln!(out, "    {}", scalar(item))?;
                            }
                        }
                        other => writeln!(out, "  {k}: {}", scalar(other))?,
                    }
                }
                Ok(())
            }
            other => writeln!(out, "{}", scalar(other)),
        }
    }
}
