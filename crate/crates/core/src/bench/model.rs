//! The JSON model file.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::BenchError;
use crate::catcore::{BimoduleEntry, CategorySpec, DualEntry, FusionEntry, Parity, SimpleObject};
use crate::qlinalg::{format_scalar, parse_scalar, Mat, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub simples: Vec<SimpleRecord>,
    pub unit: String,
    #[serde(default)]
    pub fusion: Vec<FusionRecord>,
    #[serde(default)]
    pub bimodule: Vec<BimoduleRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub duals: Vec<DualRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleRecord {
    pub name: String,
    pub parity: ParityRecord,
    pub rank: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityRecord {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionRecord {
    pub left: String,
    pub right: String,
    pub summands: Vec<String>,
    /// Row-major, rationals as strings.
    pub symmetry_matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleRecord {
    pub source: String,
    pub target: String,
    pub dim: usize,
    pub basis_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualRecord {
    pub object: String,
    pub dual: String,
    pub twist: String,
    pub ev: Vec<String>,
    pub coev: Vec<String>,
}

fn parse_err(field: impl Into<String>, message: impl Into<String>) -> BenchError {
    BenchError::Parse { field: field.into(), line: None, message: message.into() }
}

pub(crate) fn rational(field: &str, s: &str) -> Result<Scalar, BenchError> {
    parse_scalar(s).map_err(|e| parse_err(field, format!("bad rational {s:?}: {e}")))
}

pub(crate) fn matrix(field: &str, rows: &[Vec<String>], shape: (usize, usize)) -> Result<Mat, BenchError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(parse_err(field, format!("expected a {}x{} matrix", shape.0, shape.1)));
    }
    let mut m = Mat::zeros(shape.0, shape.1);
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            m[(r, c)] = rational(&format!("{field}[{r}][{c}]"), s)?;
        }
    }
    Ok(m)
}

pub(crate) fn matrix_strings(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(format_scalar).collect()).collect()
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile, BenchError> {
        serde_json::from_str(text).map_err(|e| BenchError::Parse {
            field: "document".into(),
            line: Some(e.line()),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes") + "\n"
    }

    /// Converts and validates.
    pub fn to_spec(&self) -> Result<CategorySpec, BenchError> {
        let mut names = BTreeMap::new();
        let mut simples = Vec::new();
        for (i, s) in self.simples.iter().enumerate() {
            if s.rank <= 0 {
                return Err(parse_err(format!("simples[{i}].rank"), "rank must be positive"));
            }
            if names.insert(s.name.clone(), i).is_some() {
                return Err(parse_err(format!("simples[{i}].name"), format!("duplicate simple {:?}", s.name)));
            }
            let parity = match s.parity {
                ParityRecord::Even => Parity::Even,
                ParityRecord::Odd => Parity::Odd,
            };
            let rank = u32::try_from(s.rank).map_err(|_| parse_err(format!("simples[{i}].rank"), "rank too large"))?;
            simples.push(SimpleObject::new(&s.name, parity, rank));
        }
        let lookup = |field: String, name: &str| -> Result<usize, BenchError> {
            names.get(name).copied().ok_or_else(|| parse_err(field, format!("unknown simple {name:?}")))
        };
        let unit = lookup("unit".into(), &self.unit)?;

        let mut fusion = BTreeMap::new();
        for (i, f) in self.fusion.iter().enumerate() {
            let left = lookup(format!("fusion[{i}].left"), &f.left)?;
            let right = lookup(format!("fusion[{i}].right"), &f.right)?;
            let summands = f
                .summands
                .iter()
                .enumerate()
                .map(|(k, s)| lookup(format!("fusion[{i}].summands[{k}]"), s))
                .collect::<Result<Vec<_>, _>>()?;
            let n = summands.len();
            let symmetry = matrix(&format!("fusion[{i}].symmetry_matrix"), &f.symmetry_matrix, (n, n))?;
            if fusion.insert((left, right), FusionEntry { summands, symmetry }).is_some() {
                return Err(parse_err(format!("fusion[{i}]"), "duplicate fusion row"));
            }
        }

        let mut bimodule = Vec::new();
        for (i, b) in self.bimodule.iter().enumerate() {
            if b.dim != b.basis_names.len() {
                return Err(parse_err(format!("bimodule[{i}].dim"), "dim must equal the number of basis names"));
            }
            if b.dim == 0 {
                continue;
            }
            bimodule.push(BimoduleEntry {
                source: lookup(format!("bimodule[{i}].source"), &b.source)?,
                target: lookup(format!("bimodule[{i}].target"), &b.target)?,
                basis_names: b.basis_names.clone(),
            });
        }

        let mut duals = BTreeMap::new();
        for (i, d) in self.duals.iter().enumerate() {
            let field = |k: &str| format!("duals[{i}].{k}");
            let object = lookup(field("object"), &d.object)?;
            let entry = DualEntry {
                dual: lookup(field("dual"), &d.dual)?,
                twist: lookup(field("twist"), &d.twist)?,
                ev: d.ev.iter().enumerate().map(|(k, s)| rational(&format!("{}[{k}]", field("ev")), s)).collect::<Result<_, _>>()?,
                coev: d
                    .coev
                    .iter()
                    .enumerate()
                    .map(|(k, s)| rational(&format!("{}[{k}]", field("coev")), s))
                    .collect::<Result<_, _>>()?,
            };
            duals.insert(object, entry);
        }

        let mut spec = CategorySpec { simples, unit, fusion, bimodule, duals };
        spec.fill_unit_rows();
        spec.validate().map_err(BenchError::Cat)?;
        Ok(spec)
    }

    /// The file form of a spec. Unit rows that `fill_unit_rows` would
    /// recreate are left out.
    pub fn from_spec(spec: &CategorySpec) -> ModelFile {
        let name = |s: usize| spec.name(s).to_string();
        let simples = spec
            .simples
            .iter()
            .map(|s| SimpleRecord {
                name: s.name.clone(),
                parity: match s.parity {
                    Parity::Even => ParityRecord::Even,
                    Parity::Odd => ParityRecord::Odd,
                },
                rank: s.rank as i64,
            })
            .collect();
        let fusion = spec
            .fusion
            .iter()
            .filter(|((l, r), e)| {
                let default = (*l == spec.unit || *r == spec.unit)
                    && e.summands == [if *l == spec.unit { *r } else { *l }]
                    && e.symmetry == Mat::identity(1);
                !default
            })
            .map(|(&(l, r), e)| FusionRecord {
                left: name(l),
                right: name(r),
                summands: e.summands.iter().map(|&s| name(s)).collect(),
                symmetry_matrix: matrix_strings(&e.symmetry),
            })
            .collect();
        let bimodule = spec
            .bimodule
            .iter()
            .map(|b| BimoduleRecord {
                source: name(b.source),
                target: name(b.target),
                dim: b.dim(),
                basis_names: b.basis_names.clone(),
            })
            .collect();
        let duals = spec
            .duals
            .iter()
            .map(|(&s, d)| DualRecord {
                object: name(s),
                dual: name(d.dual),
                twist: name(d.twist),
                ev: d.ev.iter().map(format_scalar).collect(),
                coev: d.coev.iter().map(format_scalar).collect(),
            })
            .collect();
        ModelFile { simples, unit: name(spec.unit), fusion, bimodule, duals }
    }
}

pub fn parse_spec(text: &str) -> Result<CategorySpec, BenchError> {
    ModelFile::parse(text)?.to_spec()
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<CategorySpec, BenchError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

pub fn spec_to_json(spec: &CategorySpec) -> String {
    ModelFile::from_spec(spec).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::{arrow, ell};

    #[test]
    fn builtin_models_round_trip() {
        for spec in [ell(), arrow()] {
            let text = spec_to_json(&spec);
            assert_eq!(parse_spec(&text).unwrap(), spec);
        }
    }

    #[test]
    fn shipped_file_is_ell() {
        let text = include_str!("../../../../models/ell.json");
        assert_eq!(parse_spec(text).unwrap(), ell());
    }

    #[test]
    fn zero_rank_is_rejected() {
        let text = spec_to_json(&ell()).replacen("\"rank\": 1", "\"rank\": 0", 1);
        match parse_spec(&text) {
            Err(BenchError::Parse { field, message, .. }) => {
                assert_eq!(field, "simples[0].rank");
                assert_eq!(message, "rank must be positive");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_rational_names_the_entry() {
        let text = spec_to_json(&ell()).replacen("\"-2\"", "\"-2/0\"", 1);
        let err = parse_spec(&text).unwrap_err();
        assert!(matches!(err, BenchError::Parse { .. }), "{err:?}");
    }

    #[test]
    fn syntax_errors_carry_a_line() {
        let err = parse_spec("{\n  \"simples\": [\n  oops\n]}").unwrap_err();
        assert!(matches!(err, BenchError::Parse { line: Some(3), .. }), "{err:?}");
    }

    #[test]
    fn non_involutive_symmetry_is_incoherent() {
        let text = spec_to_json(&ell()).replacen("\"-1\"", "\"1/2\"", 1);
        let err = parse_spec(&text).unwrap_err();
        assert!(matches!(err, BenchError::Cat(crate::catcore::CatError::IncoherentSpec { .. })), "{err:?}");
    }
}
