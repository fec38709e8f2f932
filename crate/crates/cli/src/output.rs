//! Deterministic JSON and CSV emission.
//!
//! Object keys come out sorted (serde_json's default map) and every float is
//! printed with 12 significant digits, so identical runs give identical bytes.

use serde_json::Value;
use std::fmt::Write;

/// `printf("%.12g")` for finite values; non-finite values become `null`.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_json(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_u64() {
                write!(out, "{i}").unwrap();
            } else if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(items) => {
            // Short scalar arrays stay on one line.
            if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_json(out, x, indent);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_json(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

/// The run record: `seed`, `version`, `config`, `command`, then `result` or
/// `error`, in that order.
pub fn envelope(seed: u64, command: &str, config: &Value, body: Result<&Value, &Value>) -> String {
    let mut out = String::from("{\n");
    write!(
        out,
        "  \"seed\": {seed},\n  \"version\": {},\n",
        serde_json::to_string(env!("CARGO_PKG_VERSION")).unwrap()
    )
    .unwrap();
    out.push_str("  \"config\": ");
    write_json(&mut out, config, 1);
    write!(
        out,
        ",\n  \"command\": {},\n",
        serde_json::to_string(command).unwrap()
    )
    .unwrap();
    let (key, v) = match body {
        Ok(v) => ("result", v),
        Err(v) => ("error", v),
    };
    write!(out, "  \"{key}\": ").unwrap();
    write_json(&mut out, v, 1);
    out.push_str("\n}\n");
    out
}

pub struct CsvRow {
    pub n: usize,
    pub estimate: f64,
    pub stderr: f64,
    pub exact: Option<f64>,
    pub envelope: Option<f64>,
}

/// Rows under a commented reproducibility header.
pub fn csv(seed: u64, command: &str, config: &Value, rows: &[CsvRow]) -> String {
    let mut out = String::new();
    let mut cfg = String::new();
    write_json(&mut cfg, config, 0);
    writeln!(
        out,
        "# command={command} seed={seed} version={}",
        env!("CARGO_PKG_VERSION")
    )
    .unwrap();
    for line in cfg.lines() {
        writeln!(out, "# {line}").unwrap();
    }
    out.push_str("n,estimate,stderr,exact_if_available,envelope\n");
    let opt = |x: Option<f64>| x.map(format_float).unwrap_or_default();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            format_float(r.estimate),
            format_float(r.stderr),
            opt(r.exact),
            opt(r.envelope)
        )
        .unwrap();
    }
    out
}
