use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Parses `5..100,150,200..1000:50`: inclusive ranges with optional step,
/// and single values. The result is sorted and deduplicated.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, rest)) = part.split_once("..") {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, step)) => (hi, step.parse::<usize>().with_context(|| format!("step in {part:?}"))?),
                None => (rest, 1),
            };
            let lo: usize = lo.parse().with_context(|| format!("range start in {part:?}"))?;
            let hi: usize = hi.parse().with_context(|| format!("range end in {part:?}"))?;
            if step == 0 || lo > hi {
                bail!("empty range {part:?}");
            }
            out.extend((lo..=hi).step_by(step));
        } else {
            out.push(part.parse().with_context(|| format!("bad n {part:?}"))?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        bail!("empty n-list");
    }
    Ok(out)
}

/// Renders rows of named columns in the requested format. JSON is an array
/// of objects; CSV has a header line; table pads columns.
pub fn render(format: Format, columns: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Value::Object(
                        columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), Value::String(v.clone())))
                            .collect(),
                    )
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("serialisable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = columns.join(",");
            s.push('\n');
            for r in rows {
                s.push_str(&r.join(","));
                s.push('\n');
            }
            s
        }
        Format::Table => {
            let widths: Vec<usize> = (0..columns.len())
                .map(|i| {
                    rows.iter()
                        .map(|r| r[i].len())
                        .chain([columns[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut s = String::new();
            let line = |s: &mut String, cells: &mut dyn Iterator<Item = &str>| {
                let cells: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                let _ = writeln!(s, "{}", cells.join("  ").trim_end());
            };
            line(&mut s, &mut columns.iter().copied());
            for r in rows {
                line(&mut s, &mut r.iter().map(String::as_str));
            }
            s
        }
    }
}

/// A single record: JSON object, `key,value` CSV, or aligned `key: value` lines.
pub fn render_record(format: Format, fields: &[(&str, Value)]) -> String {
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match format {
        Format::Json => {
            let obj: serde_json::Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serialisable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in fields {
                let _ = writeln!(s, "{k},{}", plain(v).replace(',', ";"));
            }
            s
        }
        Format::Table => {
            let w = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in fields {
                let _ = writeln!(s, "{k:<w$}  {}", plain(v));
            }
            s
        }
    }
}
