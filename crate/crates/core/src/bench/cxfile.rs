//! Complex files and object expressions.
//!
//! A complex file lists components by degree as multiplicity maps, and
//! differentials by their source degree as blocks keyed by simple name
//! (`ss`) and numerical basis name (`nil`):
//!
//! ```json
//! { "components": { "0": { "one": 1 }, "1": { "h1": 1 } },
//!   "differentials": { "0": { "nil": { "alpha": [["1"]] } } } }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::model::{matrix, matrix_strings};
use super::BenchError;
use crate::catcore::{CategorySpec, Mor, Obj};
use crate::homotopy::Complex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub components: BTreeMap<i32, BTreeMap<String, usize>>,
    #[serde(default)]
    pub differentials: BTreeMap<i32, MorRecord>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorRecord {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ss: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nil: BTreeMap<String, Vec<Vec<String>>>,
}

fn err(field: impl Into<String>, message: impl Into<String>) -> BenchError {
    BenchError::Parse { field: field.into(), line: None, message: message.into() }
}

fn simple(spec: &CategorySpec, field: &str, name: &str) -> Result<usize, BenchError> {
    spec.simple_index(name).ok_or_else(|| err(field, format!("unknown simple {name:?}")))
}

/// `(entry, index)` of a numerical basis element by name.
fn nil_basis(spec: &CategorySpec, field: &str, name: &str) -> Result<(usize, usize), BenchError> {
    let hits: Vec<(usize, usize)> = spec
        .bimodule
        .iter()
        .enumerate()
        .flat_map(|(e, b)| b.basis_names.iter().enumerate().filter(|(_, n)| *n == name).map(move |(k, _)| (e, k)))
        .collect();
    match hits[..] {
        [one] => Ok(one),
        [] => Err(err(field, format!("unknown numerical basis element {name:?}"))),
        _ => Err(err(field, format!("ambiguous numerical basis element {name:?}"))),
    }
}

pub fn mor_from_record(
    spec: &CategorySpec,
    field: &str,
    source: &Obj,
    target: &Obj,
    rec: &MorRecord,
) -> Result<Mor, BenchError> {
    let mut m = Mor::zero(spec, source, target);
    for (name, rows) in &rec.ss {
        let s = simple(spec, &format!("{field}.ss"), name)?;
        m.ss[s] = matrix(&format!("{field}.ss.{name}"), rows, (target.mult(s), source.mult(s)))?;
    }
    for (name, rows) in &rec.nil {
        let (e, k) = nil_basis(spec, &format!("{field}.nil"), name)?;
        let b = &spec.bimodule[e];
        m.nil[e][k] = matrix(&format!("{field}.nil.{name}"), rows, (target.mult(b.target), source.mult(b.source)))?;
    }
    Ok(m)
}

pub fn mor_to_record(spec: &CategorySpec, m: &Mor) -> MorRecord {
    let mut rec = MorRecord::default();
    for (s, block) in m.ss.iter().enumerate() {
        if !block.is_zero() {
            rec.ss.insert(spec.name(s).to_string(), matrix_strings(block));
        }
    }
    for (e, stack) in m.nil.iter().enumerate() {
        for (k, block) in stack.iter().enumerate() {
            if !block.is_zero() {
                rec.nil.insert(spec.bimodule[e].basis_names[k].clone(), matrix_strings(block));
            }
        }
    }
    rec
}

pub fn obj_from_map(spec: &CategorySpec, field: &str, map: &BTreeMap<String, usize>) -> Result<Obj, BenchError> {
    let mut v = vec![0; spec.n_simples()];
    for (name, &k) in map {
        v[simple(spec, field, name)?] += k;
    }
    Ok(Obj(v))
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<ComplexFile, BenchError> {
        serde_json::from_str(text).map_err(|e| BenchError::Parse {
            field: "document".into(),
            line: Some(e.line()),
            message: e.to_string(),
        })
    }

    pub fn to_complex(&self, spec: &CategorySpec) -> Result<Complex, BenchError> {
        let mut objs = BTreeMap::new();
        for (&i, map) in &self.components {
            objs.insert(i, obj_from_map(spec, &format!("components.{i}"), map)?);
        }
        let zero = Obj::zero(spec);
        let mut diffs = BTreeMap::new();
        for (&i, rec) in &self.differentials {
            let (src, tgt) = (objs.get(&i).unwrap_or(&zero), objs.get(&(i + 1)).unwrap_or(&zero));
            diffs.insert(i, mor_from_record(spec, &format!("differentials.{i}"), src, tgt, rec)?);
        }
        Complex::new(spec, objs, diffs).map_err(|e| err("differentials", e.to_string()))
    }

    pub fn from_complex(spec: &CategorySpec, x: &Complex) -> ComplexFile {
        let components = x
            .components()
            .iter()
            .map(|(&i, o)| {
                let map = (0..spec.n_simples())
                    .filter(|&s| o.mult(s) > 0)
                    .map(|s| (spec.name(s).to_string(), o.mult(s)))
                    .collect();
                (i, map)
            })
            .collect();
        let differentials = x.differentials().iter().map(|(&i, d)| (i, mor_to_record(spec, d))).collect();
        ComplexFile { components, differentials }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes") + "\n"
    }
}

pub fn load_complex(spec: &CategorySpec, path: impl AsRef<Path>) -> Result<Complex, BenchError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))?;
    ComplexFile::parse(&text)?.to_complex(spec)
}

/// `name | expr + expr | n * name`.
pub fn parse_obj_expr(spec: &CategorySpec, expr: &str) -> Result<Obj, BenchError> {
    let mut v = vec![0; spec.n_simples()];
    if expr.trim().is_empty() {
        return Err(err("obj", "empty object expression"));
    }
    for term in expr.split('+') {
        let term = term.trim();
        let (count, name) = match term.split_once('*') {
            Some((n, name)) => {
                let n: usize = n.trim().parse().map_err(|_| err("obj", format!("bad multiplicity in {term:?}")))?;
                (n, name.trim())
            }
            None => (1, term),
        };
        if name.is_empty() {
            return Err(err("obj", format!("missing simple in {term:?}")));
        }
        v[simple(spec, "obj", name)?] += count;
    }
    Ok(Obj(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::ell;
    use crate::bench::fixtures::upper_triangular;

    #[test]
    fn expressions() {
        let c = ell();
        assert_eq!(parse_obj_expr(&c, "one+h1").unwrap(), Obj(vec![1, 1, 0, 0]));
        assert_eq!(parse_obj_expr(&c, " 2*h1 + lef + h1").unwrap(), Obj(vec![0, 3, 1, 0]));
        assert!(parse_obj_expr(&c, "one+").is_err());
        assert!(parse_obj_expr(&c, "x*h1").is_err());
        assert!(parse_obj_expr(&c, "nope").is_err());
    }

    #[test]
    fn complexes_round_trip() {
        let c = ell();
        let (x, _) = upper_triangular(&c).unwrap();
        let file = ComplexFile::from_complex(&c, &x);
        let back = ComplexFile::parse(&file.to_json()).unwrap().to_complex(&c).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn doc_example_parses() {
        let c = ell();
        let text = r#"{ "components": { "0": { "one": 1 }, "1": { "h1": 1 } },
            "differentials": { "0": { "nil": { "alpha": [["1"]] } } } }"#;
        let x = ComplexFile::parse(text).unwrap().to_complex(&c).unwrap();
        assert_eq!(x, crate::bench::fixtures::arrow_complex(&c).unwrap());
    }

    #[test]
    fn non_complexes_are_rejected() {
        let c = ell();
        let text = r#"{ "components": { "0": { "one": 1 }, "1": { "one": 1 }, "2": { "one": 1 } },
            "differentials": { "0": { "ss": { "one": [["1"]] } }, "1": { "ss": { "one": [["1"]] } } } }"#;
        assert!(ComplexFile::parse(text).unwrap().to_complex(&c).is_err());
    }
}
