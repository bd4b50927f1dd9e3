//! Versioned JSON schemas for the published interfaces. Every document may
//! carry `"schema": "orlicz-lab/v1"`; when present it must match.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::algebra::{AlgebraElement, StateDensity, WeightedBlockAlgebra};
use crate::crossed::extreme::IotaSum;
use crate::crossed::profile::ScalarProfile;
use crate::crossed::{CrossedElement, CrossedModel, Factor};
use crate::fundamental::FundamentalFunction;
use crate::linalg::CMatrix;
use crate::orlicz::OrliczFunction;
use crate::report::SCHEMA;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("json parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema version '{found}' (expected '{expected}')")]
    Schema { found: String, expected: &'static str },
    #[error("invalid orlicz function: {0}")]
    Orlicz(#[from] crate::orlicz::OrliczError),
    #[error("invalid algebra data: {0}")]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error("invalid quasi-concave profile: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error("invalid density: {0}")]
    Crossed(#[from] crate::crossed::CrossedError),
    #[error("element needs an algebra (inline or via --algebra)")]
    MissingAlgebra,
    #[error("{0}")]
    Invalid(String),
}

/// Parse a JSON document, honouring an optional `schema` field.
pub fn parse_document<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, JsonError> {
    let mut value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(obj) = value.as_object_mut() {
        if let Some(schema) = obj.remove("schema") {
            let found = schema.as_str().unwrap_or_default().to_string();
            if found != SCHEMA {
                return Err(JsonError::Schema {
                    found,
                    expected: SCHEMA,
                });
            }
        }
    }
    Ok(serde_json::from_value(value)?)
}

// ── Orlicz functions ─────────────────────────────────────────────────────

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CapJson {
    Finite(f64),
    Tag(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PsiJson {
    Power { p: f64 },
    Linf,
    OneCapInf,
    OnePlusInf,
    Table {
        knots: Vec<(f64, f64)>,
        #[serde(default)]
        b_psi: Option<CapJson>,
    },
}

pub fn psi_from_json(spec: &PsiJson) -> Result<OrliczFunction, JsonError> {
    Ok(match spec {
        PsiJson::Power { p } => OrliczFunction::power(*p)?,
        PsiJson::Linf => OrliczFunction::linf(),
        PsiJson::OneCapInf => OrliczFunction::OneCapInf,
        PsiJson::OnePlusInf => OrliczFunction::OnePlusInf,
        PsiJson::Table { knots, b_psi } => {
            let cap = match b_psi {
                None => None,
                Some(CapJson::Finite(b)) => Some(*b),
                Some(CapJson::Tag(tag)) if tag == "inf" => None,
                Some(CapJson::Tag(tag)) => {
                    return Err(JsonError::Invalid(format!("unknown b_psi tag '{tag}'")))
                }
            };
            OrliczFunction::table(knots.clone(), cap)?
        }
    })
}

pub fn parse_psi(text: &str) -> Result<OrliczFunction, JsonError> {
    let spec: PsiJson = parse_document(text)?;
    psi_from_json(&spec)
}

// ── Algebras, elements, densities ────────────────────────────────────────

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockSpecJson {
    pub dim: usize,
    pub weight: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub blocks: Vec<BlockSpecJson>,
}

pub fn algebra_from_json(spec: &AlgebraJson) -> Result<Arc<WeightedBlockAlgebra>, JsonError> {
    Ok(WeightedBlockAlgebra::new(
        spec.blocks.iter().map(|b| (b.dim, b.weight)).collect(),
    )?)
}

pub fn parse_algebra(text: &str) -> Result<Arc<WeightedBlockAlgebra>, JsonError> {
    let spec: AlgebraJson = parse_document(text)?;
    algebra_from_json(&spec)
}

/// Per-block matrices as nested arrays of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraJson>,
    pub blocks: Vec<MatrixJson>,
}

fn matrix_from_json(m: &MatrixJson) -> Result<CMatrix, JsonError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(JsonError::Invalid("matrix rows must be square".into()));
    }
    Ok(CMatrix::from_fn(n, |i, j| {
        Complex64::new(m[i][j][0], m[i][j][1])
    }))
}

pub fn element_from_json(
    spec: &ElementJson,
    fallback: Option<&Arc<WeightedBlockAlgebra>>,
) -> Result<AlgebraElement, JsonError> {
    let alg = match (&spec.algebra, fallback) {
        (Some(a), _) => algebra_from_json(a)?,
        (None, Some(a)) => a.clone(),
        (None, None) => return Err(JsonError::MissingAlgebra),
    };
    let blocks = spec
        .blocks
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgebraElement::new(alg, blocks)?)
}

pub fn element_to_json(a: &AlgebraElement, include_algebra: bool) -> ElementJson {
    let blocks = a
        .blocks()
        .iter()
        .map(|m| {
            (0..m.dim())
                .map(|i| {
                    (0..m.dim())
                        .map(|j| [m[(i, j)].re, m[(i, j)].im])
                        .collect()
                })
                .collect()
        })
        .collect();
    ElementJson {
        algebra: include_algebra.then(|| AlgebraJson {
            blocks: a
                .algebra()
                .blocks()
                .iter()
                .map(|&(dim, weight)| BlockSpecJson { dim, weight })
                .collect(),
        }),
        blocks,
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RhoJson {
    #[default]
    #[serde(skip_deserializing)]
    Unset,
    Tag(String),
    Density { rho: ElementJson },
}

pub fn model_from_json(
    alg: &Arc<WeightedBlockAlgebra>,
    rho: &RhoJson,
) -> Result<Arc<CrossedModel>, JsonError> {
    match rho {
        RhoJson::Unset => Ok(CrossedModel::tracial(alg.clone())),
        RhoJson::Tag(tag) if tag == "tracial" => Ok(CrossedModel::tracial(alg.clone())),
        RhoJson::Tag(tag) => Err(JsonError::Invalid(format!("unknown rho tag '{tag}'"))),
        RhoJson::Density { rho } => {
            let density = element_from_json(rho, Some(alg))?;
            let state = StateDensity::new(density)?;
            Ok(CrossedModel::with_state(&state))
        }
    }
}

// ── Quasi-concave profiles ───────────────────────────────────────────────

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiJson {
    pub knots: Vec<(f64, f64)>,
}

pub fn parse_phi(text: &str) -> Result<crate::geometry::QuasiConcaveProfile, JsonError> {
    let spec: PhiJson = parse_document(text)?;
    Ok(crate::geometry::QuasiConcaveProfile::new(spec.knots)?)
}

// ── Crossed elements ─────────────────────────────────────────────────────

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ProfileJson {
    Power {
        alpha: f64,
        #[serde(default = "one")]
        coef: f64,
    },
    Constant { value: f64 },
    Fundamental {
        norm: String,
        psi: PsiJson,
        #[serde(default = "one")]
        power: f64,
    },
}

fn one() -> f64 {
    1.0
}

pub fn profile_from_json(spec: &ProfileJson) -> Result<ScalarProfile, JsonError> {
    Ok(match spec {
        ProfileJson::Power { alpha, coef } => ScalarProfile::Power {
            coef: *coef,
            alpha: *alpha,
        },
        ProfileJson::Constant { value } => ScalarProfile::Constant(*value),
        ProfileJson::Fundamental { norm, psi, power } => {
            let f = psi_from_json(psi)?;
            let ff = match norm.as_str() {
                "lux" => FundamentalFunction::luxemburg(f),
                "orl" => FundamentalFunction::orlicz(f),
                other => {
                    return Err(JsonError::Invalid(format!(
                        "unknown fundamental norm '{other}' (lux|orl)"
                    )))
                }
            };
            ScalarProfile::Fundamental { ff, pow: *power }
        }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorJson {
    Matrix(ElementJson),
    Profile(ProfileJson),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CrossedBody {
    Separable { base: ElementJson, profile: ProfileJson },
    Haagerup { base: ElementJson, p: f64 },
    Pi { base: ElementJson },
    Product { factors: Vec<FactorJson> },
    Iota {
        #[serde(default)]
        linf: Option<ElementJson>,
        #[serde(default)]
        l1: Option<ElementJson>,
        #[serde(default)]
        l2r: Option<ElementJson>,
        #[serde(default)]
        l2l: Option<ElementJson>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossedFile {
    pub algebra: AlgebraJson,
    #[serde(default)]
    pub rho: RhoJson,
    #[serde(flatten)]
    pub body: CrossedBody,
}

pub enum ParsedCrossed {
    Element(CrossedElement),
    Iota(IotaSum),
}

impl ParsedCrossed {
    pub fn element(&self) -> CrossedElement {
        match self {
            ParsedCrossed::Element(x) => x.clone(),
            ParsedCrossed::Iota(x) => x.element(),
        }
    }
}

pub fn parse_crossed(text: &str) -> Result<(Arc<CrossedModel>, ParsedCrossed), JsonError> {
    let spec: CrossedFile = parse_document(text)?;
    let alg = algebra_from_json(&spec.algebra)?;
    let model = model_from_json(&alg, &spec.rho)?;
    let parsed = match &spec.body {
        CrossedBody::Separable { base, profile } => {
            let b = element_from_json(base, Some(&alg))?;
            let g = profile_from_json(profile)?;
            ParsedCrossed::Element(CrossedElement::separable(model.clone(), b, g))
        }
        CrossedBody::Haagerup { base, p } => {
            let b = element_from_json(base, Some(&alg))?;
            ParsedCrossed::Element(CrossedElement::haagerup(model.clone(), b, *p))
        }
        CrossedBody::Pi { base } => {
            let b = element_from_json(base, Some(&alg))?;
            ParsedCrossed::Element(CrossedElement::pi(model.clone(), b))
        }
        CrossedBody::Product { factors } => {
            let fs = factors
                .iter()
                .map(|f| {
                    Ok(match f {
                        FactorJson::Matrix(m) => {
                            Factor::Matrix(element_from_json(m, Some(&alg))?)
                        }
                        FactorJson::Profile(p) => Factor::OfH(profile_from_json(p)?),
                    })
                })
                .collect::<Result<Vec<_>, JsonError>>()?;
            ParsedCrossed::Element(CrossedElement::product(model.clone(), fs))
        }
        CrossedBody::Iota { linf, l1, l2r, l2l } => {
            let mut acc: Option<IotaSum> = None;
            let mut push = |sum: IotaSum| {
                acc = Some(match acc.take() {
                    None => sum,
                    Some(prev) => prev.add(&sum),
                });
            };
            if let Some(f) = linf {
                push(IotaSum::iota_inf(model.clone(), element_from_json(f, Some(&alg))?));
            }
            if let Some(f) = l1 {
                push(IotaSum::iota_1(model.clone(), element_from_json(f, Some(&alg))?));
            }
            if let Some(f) = l2r {
                push(IotaSum::iota_2r(model.clone(), element_from_json(f, Some(&alg))?));
            }
            if let Some(f) = l2l {
                push(IotaSum::iota_2l(model.clone(), element_from_json(f, Some(&alg))?));
            }
            let sum = acc.ok_or_else(|| {
                JsonError::Invalid("iota element needs at least one slot".into())
            })?;
            ParsedCrossed::Iota(sum)
        }
    };
    Ok((model, parsed))
}

/// Sample an Orlicz function to an output knot table.
pub fn psi_to_table_json(psi: &OrliczFunction, lo: f64, hi: f64, n: usize) -> PsiJson {
    let knots: Vec<(f64, f64)> = std::iter::once((0.0, 0.0))
        .chain(
            crate::numeric::log_grid(lo, hi, n)
                .into_iter()
                .map(|t| (t, psi.eval(t)))
                .filter(|&(_, y)| y.is_finite()),
        )
        .collect();
    let cap = psi.cap();
    PsiJson::Table {
        knots,
        b_psi: if cap.is_finite() {
            Some(CapJson::Finite(cap))
        } else {
            Some(CapJson::Tag("inf".into()))
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_builtin_psis() {
        assert_eq!(
            parse_psi(r#"{"kind":"power","p":2}"#).unwrap(),
            OrliczFunction::power(2.0).unwrap()
        );
        assert_eq!(parse_psi(r#"{"kind":"linf"}"#).unwrap(), OrliczFunction::linf());
        assert_eq!(
            parse_psi(r#"{"kind":"one-cap-inf"}"#).unwrap(),
            OrliczFunction::OneCapInf
        );
        assert_eq!(
            parse_psi(r#"{"kind":"one-plus-inf"}"#).unwrap(),
            OrliczFunction::OnePlusInf
        );
    }

    #[test]
    fn parse_table_with_caps() {
        let t = parse_psi(r#"{"kind":"table","knots":[[0,0],[1,1],[2,3]],"b_psi":"inf"}"#)
            .unwrap();
        assert!((t.eval(1.5) - 2.0).abs() < 1e-12);
        let capped =
            parse_psi(r#"{"kind":"table","knots":[[0,0],[1,1]],"b_psi":2.0}"#).unwrap();
        assert_eq!(capped.eval(3.0), f64::INFINITY);
        // Non-convex tables carry the failing knot index.
        let err = parse_psi(r#"{"kind":"table","knots":[[0,0],[1,2],[2,3]],"b_psi":"inf"}"#)
            .unwrap_err();
        assert!(err.to_string().contains("knot 2"), "{err}");
    }

    #[test]
    fn schema_field_is_checked() {
        assert!(parse_psi(r#"{"schema":"orlicz-lab/v1","kind":"linf"}"#).is_ok());
        let err = parse_psi(r#"{"schema":"other/v9","kind":"linf"}"#).unwrap_err();
        assert!(matches!(err, JsonError::Schema { .. }));
    }

    #[test]
    fn element_round_trip() {
        let alg = WeightedBlockAlgebra::new(vec![(2, 1.0), (1, 0.5)]).unwrap();
        let a = AlgebraElement::identity(alg);
        let json = serde_json::to_string(&element_to_json(&a, true)).unwrap();
        let spec: ElementJson = parse_document(&json).unwrap();
        let back = element_from_json(&spec, None).unwrap();
        assert!(a.distance(&back) < 1e-15);
    }

    #[test]
    fn parse_crossed_kinds() {
        let text = r#"{
            "algebra": {"blocks": [{"dim": 1, "weight": 1.0}]},
            "rho": "tracial",
            "kind": "haagerup",
            "base": {"blocks": [[[[2.0, 0.0]]]]},
            "p": 2.0
        }"#;
        let (_model, parsed) = parse_crossed(text).unwrap();
        let x = parsed.element();
        assert!((x.mu(1.0).unwrap() - 2.0).abs() < 1e-10);
        let iota = r#"{
            "algebra": {"blocks": [{"dim": 1, "weight": 1.0}]},
            "kind": "iota",
            "linf": {"blocks": [[[[1.0, 0.0]]]]}
        }"#;
        let (_m, parsed) = parse_crossed(iota).unwrap();
        assert!(matches!(parsed, ParsedCrossed::Iota(_)));
    }
}
