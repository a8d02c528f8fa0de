//! JSON and CSV encodings.
//!
//! Space descriptors:
//!
//! ```json
//! {"kind": "lp", "p": 2}
//! {"kind": "lp", "p": "inf"}
//! {"kind": "lorentz", "p": 1,
//!  "weights": {"prefix": [1.0, 0.8], "tail": {"type": "geometric", "param": 0.5}}}
//! {"kind": "direct_sum", "aggregation": "sum",
//!  "components": [{"kind": "lp", "p": 1}, {"kind": "lp", "p": 2}],
//!  "component_map": {"type": "mod", "modulus": 2}}
//! ```
//!
//! Sparse vectors are objects from decimal index strings to numbers,
//! `{"1": 3.0, "4": -1.5}`, written in ascending index order.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use qgreedy::democracy::DemocracyTable;
use qgreedy::verify::VerificationReport;
use qgreedy::{
    Aggregation, ComponentMap, Exponent, SpaceKind, SpaceSpec, SparseVector, Tail, Weights,
};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentDto {
    Finite(f64),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TailDto {
    Geometric { param: f64 },
    Power { param: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsDto {
    #[serde(default)]
    pub prefix: Vec<f64>,
    pub tail: TailDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComponentMapDto {
    Mod { modulus: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AggregationDto {
    #[default]
    Sum,
    Max,
}

/// Wire form of a space descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDto {
    Lp {
        p: ExponentDto,
    },
    Lorentz {
        p: f64,
        weights: WeightsDto,
    },
    DirectSum {
        components: Vec<SpaceDto>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        component_map: Option<ComponentMapDto>,
        #[serde(default)]
        aggregation: AggregationDto,
    },
}

impl SpaceDto {
    pub fn to_space(&self) -> Result<SpaceSpec> {
        let kind = match self {
            SpaceDto::Lp { p } => SpaceKind::Lp(match p {
                ExponentDto::Finite(p) => Exponent::Finite(*p),
                ExponentDto::Named(s) if matches!(s.as_str(), "inf" | "infinity") => {
                    Exponent::Infinity
                }
                ExponentDto::Named(s) => {
                    return Err(CliError::Config(format!("unknown exponent {s:?}")))
                }
            }),
            SpaceDto::Lorentz { p, weights } => {
                let tail = match weights.tail {
                    TailDto::Geometric { param } => Tail::Geometric(param),
                    TailDto::Power { param } => Tail::Power(param),
                };
                SpaceKind::Lorentz {
                    p: *p,
                    weights: Weights::new(weights.prefix.clone(), tail)?,
                }
            }
            SpaceDto::DirectSum {
                components,
                component_map,
                aggregation,
            } => {
                let components = components
                    .iter()
                    .map(SpaceDto::to_space)
                    .collect::<Result<Vec<_>>>()?;
                let map = match component_map {
                    Some(ComponentMapDto::Mod { modulus }) => ComponentMap::Mod(*modulus),
                    None => ComponentMap::Mod(components.len()),
                };
                let aggregation = match aggregation {
                    AggregationDto::Sum => Aggregation::Sum,
                    AggregationDto::Max => Aggregation::Max,
                };
                SpaceKind::DirectSum {
                    components,
                    map,
                    aggregation,
                }
            }
        };
        Ok(SpaceSpec::new(kind)?)
    }

    pub fn from_space(space: &SpaceSpec) -> Self {
        match space.kind() {
            SpaceKind::Lp(Exponent::Finite(p)) => SpaceDto::Lp {
                p: ExponentDto::Finite(*p),
            },
            SpaceKind::Lp(Exponent::Infinity) => SpaceDto::Lp {
                p: ExponentDto::Named("inf".into()),
            },
            SpaceKind::Lorentz { p, weights } => SpaceDto::Lorentz {
                p: *p,
                weights: WeightsDto {
                    prefix: weights.prefix().to_vec(),
                    tail: match weights.tail() {
                        Tail::Geometric(param) => TailDto::Geometric { param },
                        Tail::Power(param) => TailDto::Power { param },
                    },
                },
            },
            SpaceKind::DirectSum {
                components,
                map,
                aggregation,
            } => SpaceDto::DirectSum {
                components: components.iter().map(SpaceDto::from_space).collect(),
                component_map: Some(match map {
                    ComponentMap::Mod(m) => ComponentMapDto::Mod { modulus: *m },
                }),
                aggregation: match aggregation {
                    Aggregation::Sum => AggregationDto::Sum,
                    Aggregation::Max => AggregationDto::Max,
                },
            },
        }
    }
}

pub fn parse_space(json: &str, origin: &str) -> Result<SpaceSpec> {
    let dto: SpaceDto = serde_json::from_str(json).map_err(|e| CliError::json(origin, e))?;
    dto.to_space()
}

/// Serde adapter for [`SparseVector`] as an index-keyed object.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VectorJson(pub SparseVector);

impl Serialize for VectorJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, a) in self.0.iter() {
            map.serialize_entry(&k.to_string(), &a)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for VectorJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = VectorJson;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping positive index strings to numbers")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<VectorJson, A::Error> {
                let mut pairs = Vec::new();
                while let Some((key, value)) = access.next_entry::<String, f64>()? {
                    let k: usize = key
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad index {key:?}")))?;
                    pairs.push((k, value));
                }
                SparseVector::from_pairs(pairs)
                    .map(VectorJson)
                    .map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_map(V)
    }
}

pub fn parse_vector(json: &str, origin: &str) -> Result<SparseVector> {
    serde_json::from_str::<VectorJson>(json)
        .map(|v| v.0)
        .map_err(|e| CliError::json(origin, e))
}

pub fn parse_corpus(json: &str, origin: &str) -> Result<Vec<SparseVector>> {
    serde_json::from_str::<Vec<VectorJson>>(json)
        .map(|v| v.into_iter().map(|v| v.0).collect())
        .map_err(|e| CliError::json(origin, e))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsJson {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "C1", skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(rename = "C2", skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(rename = "C_eta", skip_serializing_if = "Option::is_none")]
    pub c_eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack_factor: Option<f64>,
}

/// One entry of the verification report array.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub check_id: String,
    pub inputs_digest: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constants: ConstantsJson,
    pub pass: bool,
    /// `null` when the right-hand side vanishes but the left does not.
    pub slack_ratio: Option<f64>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        Self {
            check_id: r.check.as_str().to_string(),
            inputs_digest: r.inputs.clone(),
            lhs: r.lhs,
            rhs: r.rhs,
            constants: ConstantsJson {
                k: r.constants.k,
                c1: r.constants.c1,
                c2: r.constants.c2,
                c_eta: r.constants.c_eta,
                slack_factor: r.constants.slack_factor,
            },
            pass: r.pass,
            slack_ratio: r.slack_ratio.is_finite().then_some(r.slack_ratio),
        }
    }
}

/// Full-precision decimal: 17 significant digits.
pub fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

/// Democracy table as CSV with header `N,h_r,h_l,mu,v,doubling_ratio`.
/// `doubling_ratio` on row `N` is `mu(2N)/mu(N)`, empty when `2N` is
/// beyond the table.
pub fn democracy_csv(table: &DemocracyTable) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["N", "h_r", "h_l", "mu", "v", "doubling_ratio"])?;
    for n in 1..=table.n_max() {
        let i = n - 1;
        w.write_record([
            n.to_string(),
            full_precision(table.h_r[i]),
            full_precision(table.h_l[i]),
            full_precision(table.mu[i]),
            full_precision(table.v[i]),
            table
                .doubling_ratio(n)
                .map(full_precision)
                .unwrap_or_default(),
        ])?;
    }
    w.into_inner().map_err(|e| CliError::Config(e.to_string()))
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types always serialize");
    out.push(b'\n');
    out
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// File-name friendly label for a space, e.g. `l1_l2_sum`.
pub fn space_slug(space: &SpaceSpec) -> String {
    let raw = space.to_string().to_lowercase();
    let mut slug = String::new();
    for c in raw.chars() {
        if c.is_ascii_alphanumeric() || c == '.' {
            slug.push(if c == '.' { 'p' } else { c });
        } else if !slug.ends_with('_') && !slug.is_empty() {
            slug.push('_');
        }
    }
    slug.trim_end_matches('_').to_string()
}

/// Keeps insertion order stable for small string-keyed objects.
pub type JsonObject = BTreeMap<String, serde_json::Value>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_examples_parse() {
        let l2 = parse_space(r#"{"kind": "lp", "p": 2}"#, "test").unwrap();
        assert_eq!(l2, SpaceSpec::lp(2.0).unwrap());
        let inf = parse_space(r#"{"kind": "lp", "p": "inf"}"#, "test").unwrap();
        assert_eq!(inf, SpaceSpec::linf());
        let lor = parse_space(
            r#"{"kind": "lorentz", "p": 1, "weights": {"prefix": [], "tail": {"type": "geometric", "param": 0.5}}}"#,
            "test",
        )
        .unwrap();
        assert_eq!(
            lor,
            SpaceSpec::lorentz(1.0, Weights::geometric(0.5).unwrap()).unwrap()
        );
        let ds = parse_space(
            r#"{"kind": "direct_sum", "components": [{"kind": "lp", "p": 1}, {"kind": "lp", "p": 2}],
                "component_map": {"type": "mod", "modulus": 2}, "aggregation": "sum"}"#,
            "test",
        )
        .unwrap();
        assert_eq!(ds, SpaceSpec::l1_plus_l2());
    }

    #[test]
    fn bad_spaces_are_config_errors() {
        for bad in [
            r#"{"kind": "lp", "p": 0.5}"#,
            r#"{"kind": "lp", "p": "huge"}"#,
            r#"{"kind": "lorentz", "p": 1, "weights": {"prefix": [1, 2], "tail": {"type": "power", "param": 1}}}"#,
            r#"{"kind": "direct_sum", "components": [{"kind": "lp", "p": 1}], "component_map": {"type": "mod", "modulus": 3}}"#,
            r#"{"kind": "sobolev"}"#,
        ] {
            let err = parse_space(bad, "test").unwrap_err();
            assert_eq!(err.exit_code(), crate::error::EXIT_CONFIG, "{bad}: {err}");
        }
    }

    #[test]
    fn space_dto_round_trip() {
        let nested = SpaceSpec::direct_sum(
            vec![SpaceSpec::l1_plus_l2(), SpaceSpec::linf()],
            Aggregation::Max,
        )
        .unwrap();
        let json = serde_json::to_string(&SpaceDto::from_space(&nested)).unwrap();
        assert_eq!(parse_space(&json, "rt").unwrap(), nested);
    }

    #[test]
    fn vectors_use_numeric_order() {
        let x = parse_vector(r#"{"10": 1.5, "2": -3, "7": 0}"#, "test").unwrap();
        assert_eq!(x.entries(), &[(2, -3.0), (10, 1.5)]);
        let out = serde_json::to_string(&VectorJson(x)).unwrap();
        assert_eq!(out, r#"{"2":-3.0,"10":1.5}"#);
        assert!(parse_vector(r#"{"0": 1}"#, "test").is_err());
        assert!(parse_vector(r#"{"a": 1}"#, "test").is_err());
    }

    #[test]
    fn csv_layout() {
        let t = DemocracyTable::closed_form(&SpaceSpec::lp(2.0).unwrap(), 3);
        let text = String::from_utf8(democracy_csv(&t).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "N,h_r,h_l,mu,v,doubling_ratio");
        assert_eq!(lines[1], "1,1.0000000000000000e0,1.0000000000000000e0,1.0000000000000000e0,1.0000000000000000e0,1.0000000000000000e0");
        assert!(lines[2].starts_with("2,1.4142135623730951e0,"));
        assert!(lines[2].ends_with(','));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn slugs() {
        assert_eq!(space_slug(&SpaceSpec::l1_plus_l2()), "l1_l2_sum");
        assert_eq!(space_slug(&SpaceSpec::linf()), "linf");
    }
}
