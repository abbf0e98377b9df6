//! Instance files.
//!
//! Text: decimal integers separated by whitespace, any number of lines. Lines
//! whose first non-blank character is `#` are comments; a `# label: ...`
//! comment carries the instance label.
//!
//! Structured: `{"label": "...", "weights": ["1", "2", ...]}`. Weights are
//! decimal strings so no precision is lost.

use std::io::{Read, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;

const LABEL_PREFIX: &str = "label:";

/// Reals in output documents: 17 significant digits, scientific notation.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceFormat {
    Text,
    Json,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    weights: Vec<String>,
}

pub fn parse_text(text: &str) -> Result<Instance> {
    let mut weights = Vec::new();
    let mut label = None;
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(l) = comment.trim_start().strip_prefix(LABEL_PREFIX) {
                label = Some(l.trim().to_string());
            }
            continue;
        }
        let mut offset = 0;
        for token in line.split_whitespace() {
            let column = line[offset..].find(token).map_or(offset, |p| offset + p) + 1;
            offset = column - 1 + token.len();
            weights.push(parse_weight(token, lineno + 1, column)?);
        }
    }
    if weights.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "no weights found".into(),
        });
    }
    let instance = Instance::new(weights)?;
    Ok(match label {
        Some(l) => instance.with_label(l),
        None => instance,
    })
}

fn parse_weight(token: &str, line: usize, column: usize) -> Result<BigUint> {
    let digits = token.strip_prefix('+').unwrap_or(token);
    if let Some(rest) = digits.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Input(format!(
                "negative weight {token} at line {line}, column {column}"
            )));
        }
    }
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            line,
            column,
            message: format!("expected a non-negative decimal integer, found {token:?}"),
        });
    }
    Ok(digits.parse().expect("validated digits"))
}

pub fn parse_json(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let weights = doc
        .weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            parse_weight(w.trim(), 1, 1).map_err(|e| match e {
                Error::Parse { .. } => Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("weights[{i}] = {w:?} is not a non-negative decimal integer"),
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let instance = Instance::new(weights)?;
    Ok(match doc.label {
        Some(l) => instance.with_label(l),
        None => instance,
    })
}

/// Reads either format; a leading `{` selects the structured one.
pub fn load_instance<R: Read>(mut reader: R) -> Result<Instance> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    if text.trim_start().starts_with('{') {
        parse_json(&text)
    } else {
        parse_text(&text)
    }
}

pub fn to_text(instance: &Instance) -> String {
    let mut out = String::new();
    if let Some(label) = instance.label() {
        out.push_str(&format!("# {LABEL_PREFIX} {label}\n"));
    }
    let weights: Vec<String> = instance.weights().iter().map(|w| w.to_string()).collect();
    out.push_str(&weights.join(" "));
    out.push('\n');
    out
}

pub fn to_json(instance: &Instance) -> String {
    let doc = InstanceDoc {
        label: instance.label().map(str::to_string),
        weights: instance.weights().iter().map(|w| w.to_string()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn save_instance<W: Write>(instance: &Instance, format: InstanceFormat, mut writer: W) -> Result<()> {
    let text = match format {
        InstanceFormat::Text => to_text(instance),
        InstanceFormat::Json => to_json(instance) + "\n",
    };
    writer.write_all(text.as_bytes())?;
    Ok(())
}
