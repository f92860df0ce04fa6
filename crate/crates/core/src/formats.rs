//! File formats and inline generator specs.
//!
//! - Family files: first line `n=<n>`, then one mask per line in hex.
//! - Coloring files: first line `n=<n>`, then one color id per mask in
//!   mask order (2^n lines).
//! - Posets as JSON: `{"n": size, "covers": [[p, q], ...], "labels": [..]}`.
//! - Inline specs: `crown:3`, `spider:2x5`, `butterfly:4`, `layer:6:3`, …
//!   accepted anywhere a poset, coloring, or family file is accepted.

use thiserror::Error;

use crate::constructions;
use crate::copies::Coloring;
use crate::families::{layer, middle_layers, SetFamily};
use crate::poset::{catalog, CatalogId, Poset};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown spec: {0}")]
    UnknownSpec(String),
    #[error("json error: {0}")]
    Json(String),
    #[error("construction error: {0}")]
    Construction(#[from] constructions::ConstructionError),
    #[error("poset error: {0}")]
    Poset(#[from] crate::poset::PosetError),
    #[error("family error: {0}")]
    Family(#[from] crate::families::FamilyError),
}

fn parse_header(line: Option<&str>) -> Result<u32, FormatError> {
    let line = line.ok_or_else(|| FormatError::Parse("empty input".into()))?.trim();
    let rest = line
        .strip_prefix("n=")
        .ok_or_else(|| FormatError::Parse(format!("expected n=<n>, got {line:?}")))?;
    rest.parse::<u32>().map_err(|e| FormatError::Parse(format!("bad n: {e}")))
}

/// Emits a family in the line format.
pub fn family_to_string(family: &SetFamily) -> String {
    let mut out = format!("n={}\n", family.ground());
    for &m in family.members() {
        out.push_str(&format!("{m:x}\n"));
    }
    out
}

/// Parses the family line format.
pub fn family_from_str(text: &str) -> Result<SetFamily, FormatError> {
    let mut lines = text.lines();
    let n = parse_header(lines.next())?;
    let mut members = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let raw = line.strip_prefix("0x").unwrap_or(line);
        let mask = u64::from_str_radix(raw, 16)
            .map_err(|e| FormatError::Parse(format!("bad mask {line:?}: {e}")))?;
        members.push(mask);
    }
    Ok(SetFamily::new(n, members))
}

/// Emits a coloring in the line format.
pub fn coloring_to_string(coloring: &Coloring) -> String {
    let mut out = format!("n={}\n", coloring.ground());
    for &c in coloring.colors() {
        out.push_str(&format!("{c}\n"));
    }
    out
}

/// Parses the coloring line format.
pub fn coloring_from_str(text: &str) -> Result<Coloring, FormatError> {
    let mut lines = text.lines();
    let n = parse_header(lines.next())?;
    let mut colors = Vec::with_capacity(1 << n);
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        colors.push(
            line.parse::<u32>()
                .map_err(|e| FormatError::Parse(format!("bad color {line:?}: {e}")))?,
        );
    }
    if colors.len() != 1usize << n {
        return Err(FormatError::Parse(format!(
            "expected {} colors, got {}",
            1usize << n,
            colors.len()
        )));
    }
    Ok(Coloring::new(n, colors))
}

/// Serializes a poset as JSON with its cover relation.
pub fn poset_to_json(poset: &Poset) -> serde_json::Value {
    let covers: Vec<[usize; 2]> = poset.hasse().arcs.iter().map(|&(p, q)| [p, q]).collect();
    let mut obj = serde_json::json!({
        "n": poset.size(),
        "covers": covers,
    });
    if let Some(labels) = poset.labels() {
        obj["labels"] = serde_json::json!(labels);
    }
    obj
}

/// Parses the poset JSON format.
pub fn poset_from_json(value: &serde_json::Value) -> Result<Poset, FormatError> {
    let n = value["n"]
        .as_u64()
        .ok_or_else(|| FormatError::Json("missing n".into()))? as usize;
    let covers = value["covers"]
        .as_array()
        .ok_or_else(|| FormatError::Json("missing covers".into()))?;
    let mut pairs = Vec::with_capacity(covers.len());
    for c in covers {
        let arr = c.as_array().filter(|a| a.len() == 2);
        let arr = arr.ok_or_else(|| FormatError::Json("cover must be a pair".into()))?;
        let p = arr[0].as_u64().ok_or_else(|| FormatError::Json("bad cover".into()))? as usize;
        let q = arr[1].as_u64().ok_or_else(|| FormatError::Json("bad cover".into()))? as usize;
        pairs.push((p, q));
    }
    let mut poset = Poset::transitive_closure(&pairs, n)?;
    if let Some(labels) = value["labels"].as_array() {
        let labels: Option<Vec<String>> =
            labels.iter().map(|l| l.as_str().map(str::to_string)).collect();
        if let Some(labels) = labels {
            if labels.len() == n {
                poset = poset.with_labels(labels);
            }
        }
    }
    Ok(poset)
}

/// Parses a catalog spec like `crown:3`, `broom:2`, `spider:2x5`,
/// `diamond`, `chain:4`, `boolean:2`, `x`.
pub fn poset_spec(spec: &str) -> Result<Poset, FormatError> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let num = |a: Option<&str>| -> Result<usize, FormatError> {
        a.ok_or_else(|| FormatError::UnknownSpec(format!("{spec}: missing parameter")))?
            .parse::<usize>()
            .map_err(|e| FormatError::Parse(format!("{spec}: {e}")))
    };
    let id = match name {
        "chain" => CatalogId::Chain(num(arg)?),
        "antichain" => CatalogId::Antichain(num(arg)?),
        "fork" => CatalogId::Fork(num(arg)?),
        "broom" => CatalogId::Broom(num(arg)?),
        "diamond" => CatalogId::Diamond,
        "butterfly" => CatalogId::Butterfly,
        "crown" => CatalogId::Crown(num(arg)?),
        "path" | "path_poset" => CatalogId::PathPoset(num(arg)?),
        "boolean" => CatalogId::Boolean(num(arg)?),
        "x" | "x_poset" => CatalogId::XPoset,
        "spider" => {
            let a = arg.ok_or_else(|| {
                FormatError::UnknownSpec(format!("{spec}: spider needs <k>x<l>"))
            })?;
            let (k, l) = a
                .split_once('x')
                .ok_or_else(|| FormatError::UnknownSpec(format!("{spec}: spider needs <k>x<l>")))?;
            let k = k.parse::<usize>().map_err(|e| FormatError::Parse(format!("{spec}: {e}")))?;
            let l = l.parse::<usize>().map_err(|e| FormatError::Parse(format!("{spec}: {e}")))?;
            CatalogId::Spider { leg_len: k, legs: l }
        }
        _ => return Err(FormatError::UnknownSpec(spec.to_string())),
    };
    Ok(catalog(&id)?)
}

/// Parses a coloring generator spec: `butterfly:<n>`, `broomchain:<n>:<s>`,
/// `antichainchain:<n>:<k>`, `alldistinct:<n>`, `mono:<n>`,
/// `lowertriv:<family-spec>`.
pub fn coloring_spec(spec: &str) -> Result<Coloring, FormatError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |i: usize| -> Result<u32, FormatError> {
        parts
            .get(i)
            .ok_or_else(|| FormatError::UnknownSpec(format!("{spec}: missing parameter")))?
            .parse::<u32>()
            .map_err(|e| FormatError::Parse(format!("{spec}: {e}")))
    };
    match parts[0] {
        "butterfly" => Ok(constructions::butterfly_coloring(num(1)?)?),
        "broomchain" => Ok(constructions::broom_chain_coloring(num(1)?, num(2)?)?),
        "antichainchain" => Ok(constructions::antichain_chain_coloring(num(1)?, num(2)?)?),
        "alldistinct" => Ok(crate::copies::rainbow_coloring(num(1)?)),
        "mono" => Ok(crate::copies::monochromatic_coloring(num(1)?)),
        "lowertriv" => {
            let family = family_spec(&parts[1..].join(":"))?;
            Ok(constructions::lowertriv_coloring(&family)?)
        }
        _ => Err(FormatError::UnknownSpec(spec.to_string())),
    }
}

/// Parses a family generator spec: `layer:<n>:<k>`, `middle:<n>:<h>`,
/// `full:<n>`, `kt:<n>` (the shifted-copies fork/broom-free family).
pub fn family_spec(spec: &str) -> Result<SetFamily, FormatError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |i: usize| -> Result<u32, FormatError> {
        parts
            .get(i)
            .ok_or_else(|| FormatError::UnknownSpec(format!("{spec}: missing parameter")))?
            .parse::<u32>()
            .map_err(|e| FormatError::Parse(format!("{spec}: {e}")))
    };
    match parts[0] {
        "layer" => Ok(layer(num(1)?, num(2)?)?),
        "middle" => Ok(middle_layers(num(1)?, num(2)?)?),
        "full" => Ok(SetFamily::full_cube(num(1)?)),
        "kt" => Ok(constructions::katona_tarjan_family(num(1)?)),
        _ => Err(FormatError::UnknownSpec(spec.to_string())),
    }
}

/// Loads a poset from an inline spec, a JSON file path, or a JSON literal.
pub fn load_poset(arg: &str) -> Result<Poset, FormatError> {
    if arg.trim_start().starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(arg).map_err(|e| FormatError::Json(e.to_string()))?;
        return poset_from_json(&v);
    }
    if std::path::Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| FormatError::Parse(e.to_string()))?;
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| FormatError::Json(e.to_string()))?;
        return poset_from_json(&v);
    }
    poset_spec(arg)
}

/// Loads a family from an inline spec or a file in the line format.
pub fn load_family(arg: &str) -> Result<SetFamily, FormatError> {
    if std::path::Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| FormatError::Parse(e.to_string()))?;
        return family_from_str(&text);
    }
    family_spec(arg)
}

/// Loads a coloring from an inline spec or a file in the line format.
pub fn load_coloring(arg: &str) -> Result<Coloring, FormatError> {
    if std::path::Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| FormatError::Parse(e.to_string()))?;
        return coloring_from_str(&text);
    }
    coloring_spec(arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_roundtrip() {
        let f = middle_layers(5, 2).unwrap();
        let text = family_to_string(&f);
        assert!(text.starts_with("n=5\n"));
        assert_eq!(family_from_str(&text).unwrap(), f);
    }

    #[test]
    fn coloring_roundtrip() {
        let c = constructions::butterfly_coloring(4).unwrap();
        let text = coloring_to_string(&c);
        assert_eq!(coloring_from_str(&text).unwrap(), c);
    }

    #[test]
    fn poset_json_roundtrip() {
        let p = catalog(&CatalogId::Crown(3)).unwrap();
        let json = poset_to_json(&p);
        assert_eq!(json["covers"].as_array().unwrap().len(), 6);
        let q = poset_from_json(&json).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn specs_parse() {
        assert_eq!(poset_spec("crown:3").unwrap().size(), 6);
        assert_eq!(poset_spec("spider:2x5").unwrap().size(), 11);
        assert_eq!(poset_spec("diamond").unwrap().size(), 4);
        assert!(poset_spec("dodecahedron").is_err());
        assert_eq!(family_spec("layer:4:2").unwrap().len(), 6);
        assert_eq!(family_spec("kt:5").unwrap().len(), 12);
        assert_eq!(coloring_spec("butterfly:4").unwrap().color_count(), 11);
        assert_eq!(coloring_spec("mono:3").unwrap().color_count(), 1);
    }
}
