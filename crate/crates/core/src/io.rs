//! JSON file formats for groups, representations and matrix algebras.
//!
//! Every file carries `"schema": 1`. Complex numbers are `[re, im]` pairs and
//! matrices are arrays of rows.
//!
//! Group file, either form:
//!
//! ```json
//! {"schema": 1, "name": "Z2", "order": 2, "mult": [[0, 1], [1, 0]], "labels": ["e", "g"]}
//! {"schema": 1, "name": "S3", "permutations": [[1, 0, 2], [1, 2, 0]]}
//! ```
//!
//! Representation file: `matrices` maps element labels to matrices. If the
//! keys form a subgroup they are taken as the full representation, otherwise
//! as generator images that are closed under products. An optional
//! `cocycle` (`{"g": {"h": [re, im]}}`) is cross-checked against the one
//! recovered from the matrices.
//!
//! ```json
//! {"schema": 1, "group": "v4.json", "dim": 2, "matrices": {"e": [[[1,0],[0,0]],[[0,0],[1,0]]], ...}}
//! ```
//!
//! Algebra file: `{"schema": 1, "dim": m, "matrices": [M1, M2, ...]}`, a
//! spanning set whose generated *-algebra is completed on load.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use crate::linalg::{CMat, C64};
use crate::rep::ProjectiveRep;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    schema: Option<u64>,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    order: Option<usize>,
    mult: Option<Vec<Vec<usize>>>,
    labels: Option<Vec<String>>,
    permutations: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    schema: Option<u64>,
    #[serde(default)]
    #[allow(dead_code)]
    group: Option<Value>,
    dim: usize,
    matrices: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
    cocycle: Option<BTreeMap<String, BTreeMap<String, [f64; 2]>>>,
    // Written by `RepJson`; informational on input.
    #[serde(default)]
    #[allow(dead_code)]
    domain: Option<Vec<String>>,
    #[serde(default)]
    #[allow(dead_code)]
    ordinary: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    schema: Option<u64>,
    dim: usize,
    matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

fn check_schema(path: &str, schema: Option<u64>) -> Result<()> {
    match schema {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(Error::schema(path, "schema", format!("unsupported version {v}, expected 1"))),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let field = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.contains("field"))
            .unwrap_or("")
            .to_string();
        Error::schema(path, field, msg)
    })
}

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_string(), source })
}

/// Parses a group description; `path` is used only in error messages.
pub fn parse_group(path: &str, text: &str, max_order: usize) -> Result<FiniteGroup> {
    let f: GroupFile = parse(path, text)?;
    check_schema(path, f.schema)?;
    match (f.mult, f.permutations) {
        (Some(mult), None) => {
            if let Some(order) = f.order {
                if order != mult.len() {
                    return Err(Error::schema(path, "order", format!("{order} but mult has {} rows", mult.len())));
                }
            }
            FiniteGroup::from_table(mult, f.labels).map_err(|e| Error::schema(path, "mult", e.to_string()))
        }
        (None, Some(perms)) => {
            if f.labels.is_some() {
                return Err(Error::schema(path, "labels", "labels are generated for permutation groups"));
            }
            let g = FiniteGroup::from_permutations(&perms, max_order).map_err(|e| match e {
                Error::OrderCapExceeded { .. } => e,
                other => Error::schema(path, "permutations", other.to_string()),
            })?;
            if let Some(order) = f.order {
                if order != g.order() {
                    return Err(Error::schema(path, "order", format!("{order} but the closure has order {}", g.order())));
                }
            }
            Ok(g)
        }
        (Some(_), Some(_)) => Err(Error::schema(path, "mult", "give either `mult` or `permutations`, not both")),
        (None, None) => Err(Error::schema(path, "mult", "missing `mult` or `permutations`")),
    }
}

pub fn load_group(path: &str) -> Result<FiniteGroup> {
    parse_group(path, &read_file(path)?, DEFAULT_MAX_ORDER)
}

/// Reads `path`, falling back to a bundled fixture of the same file name
/// when no such file exists.
pub fn read_or_bundled(path: &str) -> Result<String> {
    if std::path::Path::new(path).exists() {
        return read_file(path);
    }
    match crate::fixtures::bundled(path) {
        Some(text) => Ok(text.to_string()),
        None => read_file(path),
    }
}

fn to_matrix(path: &str, field: &str, rows: &[Vec<[f64; 2]>], dim: usize) -> Result<CMat> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::schema(path, field, format!("expected a {dim}x{dim} matrix")));
    }
    Ok(CMat::from_fn(dim, dim, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

/// Parses a representation file against an already loaded group.
pub fn parse_rep(path: &str, text: &str, group: &Arc<FiniteGroup>, tol: f64) -> Result<ProjectiveRep> {
    let f: RepFile = parse(path, text)?;
    check_schema(path, f.schema)?;
    if f.dim == 0 {
        return Err(Error::schema(path, "dim", "must be positive"));
    }
    let mut images: Vec<(usize, CMat)> = Vec::new();
    for (label, rows) in &f.matrices {
        let x = group
            .element_by_label(label)
            .map_err(|e| Error::schema(path, format!("matrices.{label}"), e.to_string()))?;
        images.push((x, to_matrix(path, &format!("matrices.{label}"), rows, f.dim)?));
    }
    if images.is_empty() {
        return Err(Error::schema(path, "matrices", "no matrices given"));
    }
    images.sort_by_key(|(x, _)| *x);
    let keys: Vec<usize> = images.iter().map(|(x, _)| *x).collect();
    let rep = match Subgroup::new(group, keys.iter().copied()) {
        Ok(domain) if domain.order() == keys.len() => {
            let mats = images.into_iter().map(|(_, m)| m).collect();
            ProjectiveRep::new(group.clone(), domain, mats, tol)
        }
        _ => ProjectiveRep::from_generator_images(group.clone(), &images, tol),
    }
    .map_err(|e| Error::schema(path, "matrices", e.to_string()))?;
    if let Some(given) = f.cocycle {
        for (gl, row) in &given {
            let gx = group.element_by_label(gl).map_err(|e| Error::schema(path, "cocycle", e.to_string()))?;
            for (hl, v) in row {
                let hx = group.element_by_label(hl).map_err(|e| Error::schema(path, "cocycle", e.to_string()))?;
                let (Some(i), Some(j)) = (rep.domain().position(gx), rep.domain().position(hx)) else {
                    return Err(Error::schema(path, format!("cocycle.{gl}.{hl}"), "element outside the domain"));
                };
                let z = C64::new(v[0], v[1]);
                if (rep.cocycle().at(i, j) - z).norm() > tol.max(1e-9) * 10.0 {
                    return Err(Error::schema(
                        path,
                        format!("cocycle.{gl}.{hl}"),
                        format!("given {z} but the matrices give {}", rep.cocycle().at(i, j)),
                    ));
                }
            }
        }
    }
    Ok(rep)
}

pub fn load_rep(path: &str, group: &Arc<FiniteGroup>, tol: f64) -> Result<ProjectiveRep> {
    parse_rep(path, &read_file(path)?, group, tol)
}

/// Parses an algebra spanning set.
pub fn parse_algebra(path: &str, text: &str) -> Result<Vec<CMat>> {
    let f: AlgebraFile = parse(path, text)?;
    check_schema(path, f.schema)?;
    f.matrices
        .iter()
        .enumerate()
        .map(|(i, rows)| to_matrix(path, &format!("matrices[{i}]"), rows, f.dim))
        .collect()
}

pub fn load_algebra(path: &str) -> Result<Vec<CMat>> {
    parse_algebra(path, &read_file(path)?)
}

/// Rounds away floating-point dust so that serialized output is stable.
pub fn clean(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn complex_json(z: C64) -> [f64; 2] {
    [clean(z.re), clean(z.im)]
}

pub fn matrix_json(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect()).collect()
}

/// Serializable form of a representation, readable back by [`parse_rep`].
#[derive(Clone, Debug, Serialize)]
pub struct RepJson {
    pub schema: u64,
    pub dim: usize,
    pub domain: Vec<String>,
    pub ordinary: bool,
    pub matrices: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

impl RepJson {
    pub fn new(rep: &ProjectiveRep, tol: f64) -> Self {
        let g = rep.group();
        RepJson {
            schema: SCHEMA_VERSION,
            dim: rep.dim(),
            domain: rep.domain().labels(g),
            ordinary: rep.is_ordinary(tol),
            matrices: rep
                .domain()
                .elements()
                .iter()
                .map(|&x| (g.label(x).to_string(), matrix_json(rep.matrix(x))))
                .collect(),
        }
    }
}

/// Parses a subgroup spec: `all`, or comma-separated element labels whose
/// generated subgroup is taken.
pub fn parse_subgroup(group: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("all") {
        return Ok(Subgroup::whole(group));
    }
    let gens = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| group.element_by_label(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subgroup::generated_by(group, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bad_schema_version() {
        let e = parse_group("x.json", r#"{"schema": 2, "order": 1, "mult": [[0]]}"#, 10).unwrap_err();
        assert!(matches!(e, Error::Schema { ref field, .. } if field == "schema"));
    }

    #[test]
    fn unknown_field_is_reported() {
        let e = parse_group("x.json", r#"{"schema": 1, "mutl": [[0]]}"#, 10).unwrap_err();
        assert!(e.to_string().contains("x.json"), "{e}");
        assert!(e.to_string().contains("mutl"), "{e}");
    }

    #[test]
    fn non_latin_table_cites_field() {
        let e = parse_group("bad.json", r#"{"mult": [[0, 1], [0, 1]]}"#, 10).unwrap_err();
        match e {
            Error::Schema { path, field, .. } => {
                assert_eq!(path, "bad.json");
                assert_eq!(field, "mult");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn generator_images_close_up() {
        let g = Arc::new(parse_group("v4", fixtures::V4_JSON, 10).unwrap());
        let text = r#"{"dim": 2, "matrices": {
            "a": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
            "b": [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]}}"#;
        let rep = parse_rep("gen.json", text, &g, 1e-9).unwrap();
        assert_eq!(rep.domain().order(), 4);
        assert!(!rep.is_ordinary(1e-9));
    }

    #[test]
    fn cocycle_cross_check() {
        let g = Arc::new(parse_group("v4", fixtures::V4_JSON, 10).unwrap());
        let good = fixtures::PAULI_JSON.replacen(
            "\"matrices\"",
            "\"cocycle\": {\"a\": {\"b\": [0, -1]}}, \"matrices\"",
            1,
        );
        parse_rep("p.json", &good, &g, 1e-9).unwrap();
        let bad = fixtures::PAULI_JSON.replacen("\"matrices\"", "\"cocycle\": {\"a\": {\"b\": [0, 1]}}, \"matrices\"", 1);
        let e = parse_rep("p.json", &bad, &g, 1e-9).unwrap_err();
        assert!(matches!(e, Error::Schema { ref field, .. } if field == "cocycle.a.b"));
    }

    #[test]
    fn rep_json_round_trip() {
        let (g, psi) = fixtures::pauli();
        let text = serde_json::to_string(&RepJson::new(&psi, 1e-9)).unwrap();
        let back = parse_rep("rt.json", &text, &g, 1e-9).unwrap();
        assert!(back.max_abs_diff(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn subgroup_specs() {
        let g = parse_group("s3", fixtures::S3_JSON, 10).unwrap();
        assert_eq!(parse_subgroup(&g, "all").unwrap().order(), 6);
        assert_eq!(parse_subgroup(&g, "1,(12)").unwrap().order(), 2);
        assert_eq!(parse_subgroup(&g, "(123)").unwrap().order(), 3);
        assert!(parse_subgroup(&g, "(1234)").is_err());
    }
}
