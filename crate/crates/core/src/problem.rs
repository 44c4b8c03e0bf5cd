//! Problem files: a symmetric system, named points, and point pairs to query.
//!
//! ```json
//! {
//!   "name": "ball",
//!   "n": 3, "d": 2,
//!   "constraints": [{"coeffs": [[0, 0, 1, 1], [0, 1, -1, 1]], "rel": "ge"}],
//!   "box": [[-2, -2, -2], [2, 2, 2]],
//!   "points": {"origin": [0, 0, 0], "p": ["-0.5", 0, "1/2"]},
//!   "pairs": [["origin", "p"]]
//! }
//! ```
//!
//! A term `[e_1, ..., e_d, num, den]` stands for `num/den * Z_1^e_1 ... Z_d^e_d`.
//! Scalars are JSON numbers or strings (`"3"`, `"-7/4"`, `"0.5"`), all read exactly.

use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Q};
use crate::sympoly::{BoundingBox, Constraint, PowerSumPoly, Relation, SymmetricSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub system: SymmetricSystem,
    pub points: BTreeMap<String, Vec<Q>>,
    pub pairs: Vec<(String, String)>,
}

fn err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn scalar(v: &Value, at: &str) -> Result<Q> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(err(at, format!("expected a number or string, got {other}"))),
    };
    parse_rational(&text).map_err(|m| err(at, m))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(at, "expected an array"))
}

fn count(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|k| usize::try_from(k).ok())
        .ok_or_else(|| err(at, "expected a non-negative integer"))
}

fn vector(v: &Value, at: &str) -> Result<Vec<Q>> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(k, x)| scalar(x, &format!("{at}[{k}]")))
        .collect()
}

fn exponent(v: &Value, at: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|k| u32::try_from(k).ok())
        .ok_or_else(|| err(at, "exponent must be a non-negative integer"))
}

fn term(v: &Value, d: usize, at: &str) -> Result<(Vec<u32>, Q)> {
    let t = array(v, at)?;
    if t.len() != d + 2 {
        return Err(err(at, format!("term needs {d} exponents then numerator and denominator")));
    }
    let e = t[..d]
        .iter()
        .enumerate()
        .map(|(k, x)| exponent(x, &format!("{at}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let num = scalar(&t[d], &format!("{at}[{d}]"))?;
    let den = scalar(&t[d + 1], &format!("{at}[{}]", d + 1))?;
    if den == Q::from_integer(0.into()) {
        return Err(err(format!("{at}[{}]", d + 1), "zero denominator"));
    }
    Ok((e, num / den))
}

fn relation(v: &Value, at: &str) -> Result<Relation> {
    match v.as_str() {
        Some("ge") | Some(">=") => Ok(Relation::Ge),
        Some("eq") | Some("=") => Ok(Relation::Eq),
        Some("gt") | Some(">") => Ok(Relation::Gt),
        _ => Err(err(at, format!("relation must be ge, eq or gt, got {v}"))),
    }
}

/// Parse a problem file from bytes.
pub fn parse_problem(bytes: &[u8]) -> Result<ProblemFile> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| {
        err(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let obj = root.as_object().ok_or_else(|| err("$", "expected an object"))?;
    let field = |k: &str| obj.get(k).ok_or_else(|| err("$", format!("missing field {k:?}")));

    let n = count(field("n")?, "$.n")?;
    let d = count(field("d")?, "$.d")?;
    if n == 0 {
        return Err(err("$.n", "n must be positive"));
    }
    if d == 0 || d > n {
        return Err(err("$.d", format!("degree bound d = {d} must satisfy 1 <= d <= n = {n}")));
    }

    let mut constraints = Vec::new();
    for (i, c) in array(field("constraints")?, "$.constraints")?.iter().enumerate() {
        let at = format!("$.constraints[{i}]");
        let coeffs = c.get("coeffs").ok_or_else(|| err(&at, "missing field \"coeffs\""))?;
        let terms = array(coeffs, &format!("{at}.coeffs"))?
            .iter()
            .enumerate()
            .map(|(k, t)| term(t, d, &format!("{at}.coeffs[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let g = PowerSumPoly::new(d, terms).map_err(|e| err(&at, e.to_string()))?;
        let rel = relation(c.get("rel").unwrap_or(&Value::Null), &format!("{at}.rel"))?;
        constraints.push(Constraint { g, rel });
    }

    let b = array(field("box")?, "$.box")?;
    if b.len() != 2 {
        return Err(err("$.box", "expected [lo, hi]"));
    }
    let lo = vector(&b[0], "$.box[0]")?;
    let hi = vector(&b[1], "$.box[1]")?;
    let bbox = BoundingBox::from_vectors(&lo, &hi, n).map_err(|e| err("$.box", e.to_string()))?;
    let system = SymmetricSystem::new(n, d, constraints, bbox).map_err(|e| err("$", e.to_string()))?;

    let mut points = BTreeMap::new();
    if let Some(p) = obj.get("points") {
        let p = p.as_object().ok_or_else(|| err("$.points", "expected an object"))?;
        for (name, v) in p {
            let at = format!("$.points.{name}");
            let x = vector(v, &at)?;
            if x.len() != n {
                return Err(err(at, format!("point has {} coordinates, expected {n}", x.len())));
            }
            points.insert(name.clone(), x);
        }
    }

    let mut pairs = Vec::new();
    if let Some(p) = obj.get("pairs") {
        for (k, pair) in array(p, "$.pairs")?.iter().enumerate() {
            let at = format!("$.pairs[{k}]");
            let names: Vec<&str> = array(pair, &at)?.iter().filter_map(Value::as_str).collect();
            let [a, b] = names[..] else {
                return Err(err(at, "expected two point names"));
            };
            for name in [a, b] {
                if !points.contains_key(name) {
                    return Err(err(&at, format!("unknown point {name:?}")));
                }
            }
            pairs.push((a.to_string(), b.to_string()));
        }
    }

    let name = obj.get("name").and_then(Value::as_str).map(str::to_string);
    Ok(ProblemFile { name, system, points, pairs })
}

pub fn read_problem(path: &Path) -> Result<ProblemFile> {
    let bytes = std::fs::read(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    parse_problem(&bytes).map_err(|e| match e {
        Error::Parse { location, message } => {
            Error::Parse { location: format!("{}: {location}", path.display()), message }
        }
        other => other,
    })
}

/// Read a bare point: a JSON array of scalars, or an object with a `"point"` array.
pub fn parse_point(bytes: &[u8]) -> Result<Vec<Q>> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| {
        err(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    match v.get("point") {
        Some(p) => vector(p, "$.point"),
        None => vector(&v, "$"),
    }
}

impl ProblemFile {
    /// Canonical JSON form; rationals are written as strings.
    pub fn to_json(&self) -> Value {
        let sys = &self.system;
        let s = |x: &Q| Value::String(format_rational(x));
        let constraints: Vec<Value> = sys
            .constraints
            .iter()
            .map(|c| {
                let coeffs: Vec<Value> = c
                    .g
                    .terms()
                    .map(|(e, q)| {
                        let mut t: Vec<Value> = e.iter().map(|&k| json!(k)).collect();
                        t.push(Value::String(q.numer().to_string()));
                        t.push(Value::String(q.denom().to_string()));
                        Value::Array(t)
                    })
                    .collect();
                json!({ "coeffs": coeffs, "rel": c.rel })
            })
            .collect();
        let mut out = Map::new();
        if let Some(name) = &self.name {
            out.insert("name".into(), json!(name));
        }
        out.insert("n".into(), json!(sys.n));
        out.insert("d".into(), json!(sys.d));
        out.insert("constraints".into(), Value::Array(constraints));
        out.insert(
            "box".into(),
            json!([vec![s(&sys.bbox.lo); sys.n], vec![s(&sys.bbox.hi); sys.n]]),
        );
        let points: Map<String, Value> = self
            .points
            .iter()
            .map(|(k, x)| (k.clone(), Value::Array(x.iter().map(s).collect())))
            .collect();
        out.insert("points".into(), Value::Object(points));
        out.insert(
            "pairs".into(),
            Value::Array(self.pairs.iter().map(|(a, b)| json!([a, b])).collect()),
        );
        Value::Object(out)
    }

    pub fn point(&self, name: &str) -> Result<&[Q]> {
        self.points
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| err("$.points", format!("unknown point {name:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    const BALL: &str = r#"{
        "n": 3, "d": 2,
        "constraints": [{"coeffs": [[0, 0, 1, 1], [0, 1, -1, 1]], "rel": "ge"}],
        "box": [[-2, -2, -2], [2, 2, 2]],
        "points": {"o": [0, 0, 0], "p": ["-0.5", 0, 0.5]},
        "pairs": [["o", "p"]]
    }"#;

    #[test]
    fn minimal_ball() {
        let p = parse_problem(BALL.as_bytes()).unwrap();
        assert_eq!((p.system.n, p.system.d), (3, 2));
        assert_eq!(p.system.constraints.len(), 1);
        assert_eq!(p.system.constraints[0].rel, Relation::Ge);
        assert_eq!(p.system.constraints[0].g.to_string(), "1 + -1*Z2");
        assert_eq!((p.system.bbox.lo.clone(), p.system.bbox.hi.clone()), (q(-2), q(2)));
        assert_eq!(p.point("p").unwrap(), &[qr(-1, 2), q(0), qr(1, 2)]);
    }

    #[test]
    fn degree_above_n_rejected() {
        let text = BALL.replace("\"d\": 2", "\"d\": 4");
        let e = parse_problem(text.as_bytes()).unwrap_err();
        assert!(matches!(&e, Error::Parse { location, .. } if location == "$.d"), "{e}");
    }

    #[test]
    fn bad_rational_located() {
        let text = BALL.replace("\"-0.5\"", "\"-0.5x\"");
        let e = parse_problem(text.as_bytes()).unwrap_err();
        assert!(e.to_string().contains("$.points.p[0]"), "{e}");
    }

    #[test]
    fn asymmetric_box_rejected() {
        let text = BALL.replace("[2, 2, 2]", "[2, 3, 2]");
        assert!(parse_problem(text.as_bytes()).is_err());
    }

    #[test]
    fn round_trip() {
        let p = parse_problem(BALL.as_bytes()).unwrap();
        let again = parse_problem(p.to_json().to_string().as_bytes()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn bare_points() {
        assert_eq!(parse_point(b"[\"1/3\", 2]").unwrap(), vec![qr(1, 3), q(2)]);
        assert_eq!(parse_point(b"{\"point\": [0.25]}").unwrap(), vec![qr(1, 4)]);
    }
}
