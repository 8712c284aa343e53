//! Text formats.
//!
//! - Prefix: one line of base-10 naturals separated by spaces, e.g. `2 4 6`.
//!   A JSON flat array (`[2,4,6]`) or an object with a `"prefix"` array is
//!   accepted as well.
//! - Chain: one prefix per line, in chain order.
//! - Pairing: an `f` line, a `g` line and `m=<nat>`.
//! - Sample: `elements=<nats>; bound=<nat>`.

use serde_json::Value;

use crate::algebra::Chain;
use crate::extraction::PairedListings;
use crate::prefix::{PrefixListing, SetSample};
use crate::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_nats(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(format!("{tok:?} is not a natural number")))
        })
        .collect()
}

fn json_nats(value: &Value) -> Result<Vec<u64>> {
    let items = value
        .as_array()
        .ok_or_else(|| parse_err("expected a JSON array of naturals"))?;
    items
        .iter()
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| parse_err(format!("{v} is not a natural number")))
        })
        .collect()
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))
}

pub fn parse_prefix(text: &str) -> Result<PrefixListing> {
    let text = text.trim();
    let values = if text.starts_with('[') {
        json_nats(&parse_json(text)?)?
    } else if text.starts_with('{') {
        let doc = parse_json(text)?;
        let field = doc
            .get("prefix")
            .ok_or_else(|| parse_err("JSON object has no \"prefix\" field"))?;
        json_nats(field)?
    } else {
        if text.lines().count() > 1 {
            return Err(parse_err("expected a single prefix line"));
        }
        parse_nats(text)?
    };
    PrefixListing::new(values)
}

pub fn format_prefix(p: &PrefixListing) -> String {
    p.to_string()
}

/// Parses a chain file. A JSON array of arrays, or an object with a
/// `"chain"` field, is also accepted. The descending invariant is validated.
pub fn parse_chain(text: &str) -> Result<Chain> {
    let text = text.trim();
    let rows: Vec<Vec<u64>> = if text.starts_with('[') || text.starts_with('{') {
        let doc = parse_json(text)?;
        let rows = if doc.is_object() {
            doc.get("chain")
                .cloned()
                .ok_or_else(|| parse_err("JSON object has no \"chain\" field"))?
        } else {
            doc
        };
        rows.as_array()
            .ok_or_else(|| parse_err("expected an array of prefixes"))?
            .iter()
            .map(json_nats)
            .collect::<Result<_>>()?
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(parse_nats)
            .collect::<Result<_>>()?
    };
    let listings = rows
        .into_iter()
        .map(PrefixListing::new)
        .collect::<Result<Vec<_>>>()?;
    Chain::new(listings)
}

pub fn format_chain(c: &Chain) -> String {
    let mut out = String::new();
    for l in c.listings() {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    out
}

/// Parses a pairing record and validates every pairing invariant. The JSON
/// object form `{"f": [...], "g": [...], "m": n}` is also accepted.
pub fn parse_paired(text: &str) -> Result<PairedListings> {
    let text = text.trim();
    if text.starts_with('{') {
        let doc = parse_json(text)?;
        let field = |k: &str| {
            doc.get(k)
                .ok_or_else(|| parse_err(format!("JSON object has no {k:?} field")))
        };
        let f = json_nats(field("f")?)?;
        let g = json_nats(field("g")?)?;
        let m = field("m")?
            .as_u64()
            .ok_or_else(|| parse_err("\"m\" is not a natural number"))?;
        return PairedListings::new(PrefixListing::new(f)?, PrefixListing::new(g)?, m);
    }
    let mut m = None;
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix("m=") {
            if m.is_some() {
                return Err(parse_err("duplicate m= line"));
            }
            m = Some(
                rest.trim()
                    .parse::<u64>()
                    .map_err(|_| parse_err(format!("bad m value {rest:?}")))?,
            );
        } else {
            rows.push(parse_nats(line)?);
        }
    }
    let m = m.ok_or_else(|| parse_err("missing m= line"))?;
    let [f, g]: [Vec<u64>; 2] = rows.try_into().map_err(|rows: Vec<_>| {
        parse_err(format!("expected 2 prefix lines, found {}", rows.len()))
    })?;
    PairedListings::new(PrefixListing::new(f)?, PrefixListing::new(g)?, m)
}

pub fn format_paired(p: &PairedListings) -> String {
    format!("{}\n{}\nm={}\n", p.f(), p.g(), p.m())
}

/// Parses `elements=<nats>; bound=<nat>`, or the JSON object
/// `{"elements": [...], "bound": n}`.
pub fn parse_sample(text: &str) -> Result<SetSample> {
    let text = text.trim();
    if text.starts_with('{') {
        let doc = parse_json(text)?;
        let elements = json_nats(
            doc.get("elements")
                .ok_or_else(|| parse_err("JSON object has no \"elements\" field"))?,
        )?;
        let bound = doc
            .get("bound")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("missing or bad \"bound\""))?;
        return SetSample::new(elements, bound);
    }
    let (elements, bound) = text
        .split_once(';')
        .ok_or_else(|| parse_err("expected \"elements=...; bound=...\""))?;
    let elements = elements
        .trim()
        .strip_prefix("elements=")
        .ok_or_else(|| parse_err("expected \"elements=\""))?;
    let bound = bound
        .trim()
        .strip_prefix("bound=")
        .ok_or_else(|| parse_err("expected \"bound=\""))?;
    let bound = bound
        .trim()
        .parse::<u64>()
        .map_err(|_| parse_err(format!("bad bound {bound:?}")))?;
    SetSample::new(parse_nats(elements)?, bound)
}

pub fn format_sample(s: &SetSample) -> String {
    let parts: Vec<String> = s.elements().iter().map(u64::to_string).collect();
    format!("elements={}; bound={}", parts.join(" "), s.bound())
}
