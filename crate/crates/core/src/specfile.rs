//! JSON channel/scheme documents.
//!
//! ```json
//! {
//!   "alphabets": { "W": 1, "X": 2, "Y1": 2, "Y2": 2, "U": 1, "V1": 2, "V2": 2 },
//!   "state_law": [1.0],
//!   "channel_law": [[[[1.0, 0.0], [0.0, 0.0]]], [[[0.0, 0.0], [0.0, 1.0]]]],
//!   "scheme": {
//!     "u_law": [1.0],
//!     "aux_law": [[[[0.25, 0.25], [0.25, 0.25]]]],
//!     "input_law": [[[[1.0, 0.0], [1.0, 0.0]], [[0.0, 1.0], [0.0, 1.0]]]]
//!   }
//! }
//! ```
//!
//! `channel_law` is indexed `[x][w][y1][y2]`, `aux_law` `[w][u][v1][v2]` and
//! `input_law` `[w][v1][v2][x]`. `U`, `V1`, `V2` are only required when a
//! scheme is present. A standalone scheme file carries its own
//! `"alphabets": {"U", "V1", "V2"}` next to the three laws; a full document
//! with a `scheme` block is also accepted wherever a scheme file is.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::channel::{
    ChannelAlphabets, ChannelSpec, CodingScheme, SchemeAlphabets, Violation, ViolationKind,
};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlphabets {
    #[serde(rename = "W", skip_serializing_if = "Option::is_none")]
    w: Option<usize>,
    #[serde(rename = "X", skip_serializing_if = "Option::is_none")]
    x: Option<usize>,
    #[serde(rename = "Y1", skip_serializing_if = "Option::is_none")]
    y1: Option<usize>,
    #[serde(rename = "Y2", skip_serializing_if = "Option::is_none")]
    y2: Option<usize>,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none")]
    u: Option<usize>,
    #[serde(rename = "V1", skip_serializing_if = "Option::is_none")]
    v1: Option<usize>,
    #[serde(rename = "V2", skip_serializing_if = "Option::is_none")]
    v2: Option<usize>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawScheme {
    #[serde(skip_serializing_if = "Option::is_none")]
    alphabets: Option<RawAlphabets>,
    u_law: Value,
    aux_law: Value,
    input_law: Value,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    alphabets: RawAlphabets,
    state_law: Value,
    channel_law: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    scheme: Option<RawScheme>,
}

/// A parsed channel document and its optional embedded scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecDocument {
    pub spec: ChannelSpec,
    pub scheme: Option<CodingScheme>,
}

/// Parses a channel document. Syntax and type errors are [`Error::Parse`]
/// (with line and column); shape mismatches are [`Error::InvalidSpec`].
/// Normalization is not checked here; see [`ChannelSpec::validate`].
pub fn parse_document(text: &str) -> Result<SpecDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let a = &raw.alphabets;
    let alphabets = ChannelAlphabets {
        w: required(a.w, "alphabets.W")?,
        x: required(a.x, "alphabets.X")?,
        y1: required(a.y1, "alphabets.Y1")?,
        y2: required(a.y2, "alphabets.Y2")?,
    };
    let mut violations = Vec::new();
    let state_law = flatten(&raw.state_law, "state_law", &[("w", alphabets.w)], &mut violations)?;
    let channel_law = flatten(
        &raw.channel_law,
        "channel_law",
        &[("x", alphabets.x), ("w", alphabets.w), ("y1", alphabets.y1), ("y2", alphabets.y2)],
        &mut violations,
    )?;
    let scheme = match &raw.scheme {
        Some(s) => {
            let sa = scheme_alphabets(s.alphabets.as_ref().unwrap_or(&raw.alphabets))?;
            Some(build_scheme(s, sa, &alphabets, &mut violations)?)
        }
        None => None,
    };
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    Ok(SpecDocument { spec: ChannelSpec { alphabets, state_law, channel_law }, scheme })
}

/// Parses a scheme file against the channel it will be paired with.
pub fn parse_scheme(text: &str, channel: &ChannelAlphabets) -> Result<CodingScheme> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("channel_law").is_some() {
        return parse_document(text)?
            .scheme
            .ok_or_else(|| Error::Parse("document has no `scheme` block".into()));
    }
    let raw: RawScheme = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let sa = scheme_alphabets(
        raw.alphabets
            .as_ref()
            .ok_or_else(|| Error::Parse("missing field `alphabets` in scheme file".into()))?,
    )?;
    let mut violations = Vec::new();
    let scheme = build_scheme(&raw, sa, channel, &mut violations)?;
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    Ok(scheme)
}

/// Serializes a channel (and optionally a scheme) in the document format.
pub fn to_json(spec: &ChannelSpec, scheme: Option<&CodingScheme>) -> String {
    let c = &spec.alphabets;
    let s = scheme.map(|s| s.alphabets);
    let doc = RawDocument {
        alphabets: RawAlphabets {
            w: Some(c.w),
            x: Some(c.x),
            y1: Some(c.y1),
            y2: Some(c.y2),
            u: s.map(|s| s.u),
            v1: s.map(|s| s.v1),
            v2: s.map(|s| s.v2),
        },
        state_law: nest(&spec.state_law, &[c.w]),
        channel_law: nest(&spec.channel_law, &[c.x, c.w, c.y1, c.y2]),
        scheme: scheme.map(|sch| raw_scheme(sch, c, false)),
    };
    serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
}

/// Serializes a standalone scheme file.
pub fn scheme_to_json(scheme: &CodingScheme, channel: &ChannelAlphabets) -> String {
    serde_json::to_string_pretty(&raw_scheme(scheme, channel, true)).expect("scheme serializes") + "\n"
}

fn raw_scheme(s: &CodingScheme, c: &ChannelAlphabets, with_alphabets: bool) -> RawScheme {
    let a = s.alphabets;
    RawScheme {
        alphabets: with_alphabets.then_some(RawAlphabets {
            w: None,
            x: None,
            y1: None,
            y2: None,
            u: Some(a.u),
            v1: Some(a.v1),
            v2: Some(a.v2),
        }),
        u_law: nest(&s.u_law, &[a.u]),
        aux_law: nest(&s.aux_law, &[c.w, a.u, a.v1, a.v2]),
        input_law: nest(&s.input_law, &[c.w, a.v1, a.v2, c.x]),
    }
}

fn required(v: Option<usize>, field: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Parse(format!("missing field `{field}`")))
}

fn scheme_alphabets(a: &RawAlphabets) -> Result<SchemeAlphabets> {
    Ok(SchemeAlphabets {
        u: required(a.u, "alphabets.U")?,
        v1: required(a.v1, "alphabets.V1")?,
        v2: required(a.v2, "alphabets.V2")?,
    })
}

fn build_scheme(
    raw: &RawScheme,
    alphabets: SchemeAlphabets,
    c: &ChannelAlphabets,
    violations: &mut Vec<Violation>,
) -> Result<CodingScheme> {
    let a = alphabets;
    Ok(CodingScheme {
        alphabets,
        u_law: flatten(&raw.u_law, "u_law", &[("u", a.u)], violations)?,
        aux_law: flatten(
            &raw.aux_law,
            "aux_law",
            &[("w", c.w), ("u", a.u), ("v1", a.v1), ("v2", a.v2)],
            violations,
        )?,
        input_law: flatten(
            &raw.input_law,
            "input_law",
            &[("w", c.w), ("v1", a.v1), ("v2", a.v2), ("x", c.x)],
            violations,
        )?,
    })
}

/// Flattens a nested array row-major, recording length mismatches as shape
/// violations. Non-numeric leaves and non-array nodes are parse errors.
fn flatten(
    value: &Value,
    law: &str,
    axes: &[(&str, usize)],
    violations: &mut Vec<Violation>,
) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut coords = Vec::new();
    let before = violations.len();
    walk(value, law, axes, &mut coords, &mut out, violations)?;
    if violations.len() > before {
        out.clear();
    }
    Ok(out)
}

fn walk(
    value: &Value,
    law: &str,
    axes: &[(&str, usize)],
    coords: &mut Vec<(String, usize)>,
    out: &mut Vec<f64>,
    violations: &mut Vec<Violation>,
) -> Result<()> {
    let path = || {
        let mut p = law.to_string();
        for (n, i) in coords.iter() {
            p.push_str(&format!("[{n}={i}]"));
        }
        p
    };
    match axes.split_first() {
        None => match value.as_f64() {
            Some(p) => {
                out.push(p);
                Ok(())
            }
            None => Err(Error::Parse(format!("{}: expected a number, found {value}", path()))),
        },
        Some((&(name, card), rest)) => {
            let items = value
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{}: expected an array over {name}", path())))?;
            if items.len() != card {
                violations.push(Violation::new(
                    law,
                    coords.clone(),
                    ViolationKind::Shape(format!(
                        "axis {name} has {} entries, alphabet size is {card}",
                        items.len()
                    )),
                ));
                return Ok(());
            }
            for (i, item) in items.iter().enumerate() {
                coords.push((name.to_string(), i));
                walk(item, law, rest, coords, out, violations)?;
                coords.pop();
            }
            Ok(())
        }
    }
}

fn nest(data: &[f64], dims: &[usize]) -> Value {
    match dims.split_first() {
        None => Value::from(data[0]),
        Some((&d, rest)) => {
            let stride: usize = rest.iter().product();
            Value::Array((0..d).map(|i| nest(&data[i * stride..(i + 1) * stride], rest)).collect())
        }
    }
}
