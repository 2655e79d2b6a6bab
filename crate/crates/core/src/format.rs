//! Text formats for matrices, certificates and traces.
//!
//! Matrix files are JSON objects `{"dimension": n, "entries": [[..], ..]}`
//! whose entries are rational strings `"p/q"` (integers may also be JSON
//! numbers). A bare whitespace-separated square matrix is accepted on input.
//! Writers produce one canonical text per value, so parsing and re-writing a
//! canonical file is byte-identical.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cone::Factorization;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, LatticeVector, Rational, SymMatrix};
use crate::walk::{Certificate, PivotRule, TraceEvent};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn scalar(value: &Value) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(parse_err(format!("expected a rational string, found {other}"))),
    }
}

fn integer(value: &Value) -> Result<BigInt> {
    match value {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        Value::String(s) => s.trim().parse().map_err(|_| parse_err(format!("invalid integer '{s}'"))),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

fn matrix_from_value(value: &Value) -> Result<SymMatrix> {
    let rows = value.as_array().ok_or_else(|| parse_err("matrix entries must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix row must be an array"))?
                .iter()
                .map(scalar)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SymMatrix::from_rows(rows)
}

fn object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    value.as_object().ok_or_else(|| parse_err(format!("{what} must be a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("missing field '{key}'")))
}

fn check_dimension(obj: &Map<String, Value>, m: &SymMatrix) -> Result<()> {
    let n = field(obj, "dimension")?
        .as_u64()
        .ok_or_else(|| parse_err("dimension must be a nonnegative integer"))?;
    if n as usize != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: n as usize,
            found: m.dim(),
        });
    }
    Ok(())
}

/// Parses a JSON matrix file or a plain whitespace-separated matrix.
pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        let obj = object(&value, "matrix file")?;
        let m = matrix_from_value(field(obj, "entries")?)?;
        check_dimension(obj, &m)?;
        return Ok(m);
    }
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SymMatrix::from_rows(rows)
}

fn row_text(row: &[Rational]) -> String {
    let cells: Vec<String> = row.iter().map(|v| format!("\"{}\"", format_rational(v))).collect();
    format!("[{}]", cells.join(", "))
}

fn rows_text(m: &SymMatrix, indent: &str) -> String {
    let rows: Vec<String> = m.rows().map(|r| format!("{indent}{}", row_text(r))).collect();
    rows.join(",\n")
}

/// Canonical JSON matrix file, one row per line, trailing newline.
pub fn write_matrix(m: &SymMatrix) -> String {
    format!(
        "{{\n  \"dimension\": {},\n  \"entries\": [\n{}\n  ]\n}}\n",
        m.dim(),
        rows_text(m, "    ")
    )
}

/// Lowercase hex SHA-256 of the canonical matrix text.
pub fn matrix_hash(m: &SymMatrix) -> String {
    hex::encode(Sha256::digest(write_matrix(m).as_bytes()))
}

pub fn pivot_rule_name(rule: PivotRule) -> &'static str {
    match rule {
        PivotRule::NormalizedGreedy => "greedy",
        PivotRule::Random => "random",
        PivotRule::FirstIndex => "first",
    }
}

pub fn parse_pivot_rule(name: &str) -> Result<PivotRule> {
    match name {
        "greedy" => Ok(PivotRule::NormalizedGreedy),
        "random" => Ok(PivotRule::Random),
        "first" => Ok(PivotRule::FirstIndex),
        other => Err(parse_err(format!("unknown pivot rule '{other}'"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metadata {
    pub iterations: usize,
    pub pivot_rule: PivotRule,
    pub seed: u64,
    pub wall_time_ms: u64,
}

/// Certificate together with its run metadata, as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub dimension: usize,
    pub certificate: Certificate,
    pub metadata: Metadata,
}

fn coordinate(c: &BigInt) -> Value {
    match c.to_u64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn compact(value: &Value) -> String {
    serde_json::to_string(value).expect("JSON values serialize")
}

/// Canonical certificate text; factorization terms are sorted by vector.
pub fn write_certificate(cert: &CertificateFile) -> String {
    let (kind, body) = match &cert.certificate {
        Certificate::Factorization(f) => {
            let f = f.clone().sorted();
            let terms: Vec<String> = f
                .terms()
                .iter()
                .map(|(alpha, v)| {
                    let coords: Vec<Value> = v.coords().iter().map(coordinate).collect();
                    format!(
                        "    {{\"coefficient\": \"{}\", \"vector\": {}}}",
                        format_rational(alpha),
                        compact(&Value::Array(coords))
                    )
                })
                .collect();
            let list = if terms.is_empty() {
                "[]".to_string()
            } else {
                format!("[\n{}\n  ]", terms.join(",\n"))
            };
            ("factorization", format!("  \"terms\": {list},\n"))
        }
        Certificate::Witness(w) => ("witness", format!("  \"witness\": [\n{}\n  ],\n", rows_text(w, "    "))),
        Certificate::IterationLimit => ("iteration-limit", String::new()),
    };
    let m = &cert.metadata;
    format!(
        "{{\n  \"kind\": \"{kind}\",\n  \"dimension\": {},\n{body}  \"metadata\": {{\"iterations\": {}, \"pivot_rule\": \"{}\", \"seed\": {}, \"wall_time_ms\": {}}}\n}}\n",
        cert.dimension,
        m.iterations,
        pivot_rule_name(m.pivot_rule),
        m.seed,
        m.wall_time_ms
    )
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let obj = object(&value, "certificate")?;
    let dimension = field(obj, "dimension")?
        .as_u64()
        .ok_or_else(|| parse_err("dimension must be a nonnegative integer"))? as usize;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| parse_err("kind must be a string"))?;
    let certificate = match kind {
        "factorization" => {
            let terms = field(obj, "terms")?
                .as_array()
                .ok_or_else(|| parse_err("terms must be an array"))?
                .iter()
                .map(|t| {
                    let t = object(t, "term")?;
                    let alpha = scalar(field(t, "coefficient")?)?;
                    let coords = field(t, "vector")?
                        .as_array()
                        .ok_or_else(|| parse_err("vector must be an array"))?
                        .iter()
                        .map(integer)
                        .collect::<Result<Vec<_>>>()?;
                    Ok((alpha, LatticeVector::new(coords)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Certificate::Factorization(Factorization::new(dimension, terms)?)
        }
        "witness" => {
            let w = matrix_from_value(field(obj, "witness")?)?;
            if w.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: w.dim(),
                });
            }
            Certificate::Witness(w)
        }
        "iteration-limit" => Certificate::IterationLimit,
        other => return Err(parse_err(format!("unknown certificate kind '{other}'"))),
    };
    let meta = object(field(obj, "metadata")?, "metadata")?;
    let number = |key: &str| {
        field(meta, key)?
            .as_u64()
            .ok_or_else(|| parse_err(format!("metadata field '{key}' must be a nonnegative integer")))
    };
    let metadata = Metadata {
        iterations: number("iterations")? as usize,
        pivot_rule: parse_pivot_rule(
            field(meta, "pivot_rule")?
                .as_str()
                .ok_or_else(|| parse_err("pivot_rule must be a string"))?,
        )?,
        seed: number("seed")?,
        wall_time_ms: number("wall_time_ms")?,
    };
    Ok(CertificateFile {
        dimension,
        certificate,
        metadata,
    })
}

/// One JSON line per event. `scale` maps the vertex into the reporting frame
/// (1 for the unit frame, 2 for the doubled one).
pub fn write_trace(events: &[TraceEvent], scale: &Rational) -> String {
    let mut out = String::new();
    for e in events {
        let vertex = e.vertex.scale(scale);
        let rows: Vec<Value> = vertex
            .rows()
            .map(|r| Value::Array(r.iter().map(|v| json!(format_rational(v))).collect()))
            .collect();
        let line = json!({
            "iteration": e.iteration,
            "vertex_hash": matrix_hash(&vertex),
            "objective": format_rational(&(&e.objective * scale)),
            "pivot_index": e.pivot_index,
            "vertex": rows,
        });
        out.push_str(&compact(&line));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    #[test]
    fn matrix_round_trip() {
        let m = SymMatrix::from_rows(vec![vec![int(1), frac(-1, 2)], vec![frac(-1, 2), int(1)]]).unwrap();
        let text = write_matrix(&m);
        assert_eq!(
            text,
            "{\n  \"dimension\": 2,\n  \"entries\": [\n    [\"1\", \"-1/2\"],\n    [\"-1/2\", \"1\"]\n  ]\n}\n"
        );
        assert_eq!(parse_matrix(&text).unwrap(), m);
        assert_eq!(write_matrix(&parse_matrix(&text).unwrap()), text);
    }

    #[test]
    fn plain_and_numeric_inputs() {
        let m = parse_matrix("2 -1\n-1 2\n").unwrap();
        assert_eq!(m, SymMatrix::from_integers(&[[2, -1], [-1, 2]]).unwrap());
        let j = parse_matrix("{\"dimension\": 2, \"entries\": [[2, \"-2/2\"], [-1, 2]]}").unwrap();
        assert_eq!(j, m);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_matrix("1/0"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("1 2\n3 4"), Err(Error::NotSymmetric { .. })));
        assert!(parse_matrix("{\"dimension\": 3, \"entries\": [[1]]}").is_err());
        assert!(parse_matrix("{\"entries\": [[1]]}").is_err());
        assert!(parse_matrix("1 2 3\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let f = Factorization::new(
            2,
            vec![
                (frac(3, 2), LatticeVector::from_u64s(&[1, 2])),
                (int(1), LatticeVector::from_u64s(&[0, 1])),
            ],
        )
        .unwrap();
        let metadata = Metadata {
            iterations: 3,
            pivot_rule: PivotRule::Random,
            seed: 7,
            wall_time_ms: 12,
        };
        for certificate in [
            Certificate::Factorization(f.clone()),
            Certificate::Witness(SymMatrix::from_integers(&[[0, 1], [1, 0]]).unwrap()),
            Certificate::IterationLimit,
            Certificate::Factorization(Factorization::new(2, vec![]).unwrap()),
        ] {
            let cert = CertificateFile {
                dimension: 2,
                certificate,
                metadata: metadata.clone(),
            };
            let text = write_certificate(&cert);
            let back = parse_certificate(&text).unwrap();
            assert_eq!(write_certificate(&back), text);
        }
        let text = write_certificate(&CertificateFile {
            dimension: 2,
            certificate: Certificate::Factorization(f),
            metadata,
        });
        // sorted by vector
        assert!(text.find("[0,1]").unwrap() < text.find("[1,2]").unwrap());
    }

    #[test]
    fn big_coordinates_are_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(coordinate(&big), json!("123456789012345678901234567890"));
        assert_eq!(integer(&coordinate(&big)).unwrap(), big);
    }

    #[test]
    fn trace_lines() {
        let e = TraceEvent {
            iteration: 1,
            vertex: SymMatrix::identity(2),
            objective: frac(3, 2),
            pivot_index: Some(4),
            pivot: None,
        };
        let text = write_trace(&[e], &int(2));
        let v: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(v["objective"], json!("3"));
        assert_eq!(v["pivot_index"], json!(4));
        assert_eq!(v["vertex_hash"].as_str().unwrap().len(), 64);
    }
}
