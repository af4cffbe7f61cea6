//! JSON documents. Every top-level document carries `"version": 1` and a
//! `"kind"` tag; nested payloads repeat the tag but omit the version.
//!
//! Scalars are integers, `"p/q"` strings, or `{"a": .., "b": ..}` for
//! `a + b√d` where `d` comes from the enclosing field.

use affcryst::affine::{AffineLieElement, AffineMap};
use affcryst::lie::{Grading, LieAlgebra};
use affcryst::rep::AffineRep;
use affcryst::shadow::PolycyclicRep;
use affcryst::torus::CAProduct;
use affcryst::{Field, Matrix, Scalar, Vector};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

macro_rules! kind_tag {
    ($name:ident, $tag:literal) => {
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
        pub enum $name {
            #[default]
            #[serde(rename = $tag)]
            Tag,
        }
    };
}

kind_tag!(LieTag, "lie");
kind_tag!(RepTag, "rep");
kind_tag!(PcRepTag, "pcrep");
kind_tag!(CaTag, "ca");
kind_tag!(ExtTag, "ext");
kind_tag!(GridTag, "grid");
kind_tag!(VerdictTag, "verdict");
kind_tag!(BuildTag, "build");
kind_tag!(RealizationTag, "realization");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
    Quadratic { a: Box<ScalarJson>, b: Box<ScalarJson> },
}

impl ScalarJson {
    pub fn from_scalar(x: &Scalar) -> ScalarJson {
        if x.is_rational() {
            ScalarJson::Text(x.rational_part().to_string())
        } else {
            ScalarJson::Quadratic {
                a: Box::new(ScalarJson::Text(x.rational_part().to_string())),
                b: Box::new(ScalarJson::Text(x.surd_part().to_string())),
            }
        }
    }

    pub fn to_scalar(&self, field: Field) -> Result<Scalar, CliError> {
        match self {
            ScalarJson::Int(n) => Ok(Scalar::from_int(*n)),
            ScalarJson::Text(s) => s.parse().map_err(|_| CliError::Parse(format!("bad scalar {s:?}"))),
            ScalarJson::Quadratic { a, b } => {
                let d = field
                    .discriminant()
                    .ok_or_else(|| CliError::Parse("irrational scalar in a rational document".into()))?;
                let (a, b) = (a.to_scalar(Field::Rational)?, b.to_scalar(Field::Rational)?);
                match (a.as_rational(), b.as_rational()) {
                    (Some(a), Some(b)) => Ok(Scalar::quadratic(a.clone(), b.clone(), d)),
                    _ => Err(CliError::Parse("nested irrational scalar".into())),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldJson {
    #[default]
    Q,
    Qsqrt {
        d: u64,
    },
}

impl FieldJson {
    pub fn from_field(f: Field) -> FieldJson {
        match f {
            Field::Rational => FieldJson::Q,
            Field::Quadratic(d) => FieldJson::Qsqrt { d },
        }
    }

    pub fn to_field(self) -> Result<Field, CliError> {
        match self {
            FieldJson::Q => Ok(Field::Rational),
            FieldJson::Qsqrt { d } => Field::quadratic(d).map_err(|e| CliError::Parse(e.to_string())),
        }
    }
}

fn is_rational(f: &FieldJson) -> bool {
    *f == FieldJson::Q
}

pub fn vector_json(v: &[Scalar]) -> Vec<ScalarJson> {
    v.iter().map(ScalarJson::from_scalar).collect()
}

pub fn matrix_json(m: &Matrix) -> Vec<Vec<ScalarJson>> {
    m.to_rows().iter().map(|r| vector_json(r)).collect()
}

pub fn parse_vector(v: &[ScalarJson], field: Field) -> Result<Vector, CliError> {
    v.iter().map(|x| x.to_scalar(field)).collect()
}

pub fn parse_matrix(rows: &[Vec<ScalarJson>], field: Field) -> Result<Matrix, CliError> {
    let rows = rows.iter().map(|r| parse_vector(r, field)).collect::<Result<Vec<_>, _>>()?;
    Matrix::try_from_rows(rows).map_err(|e| CliError::Parse(e.to_string()))
}

/// Square matrix of the given size.
fn parse_square(rows: &[Vec<ScalarJson>], n: usize, field: Field, what: &str) -> Result<Matrix, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse(format!("{what} must be {n}x{n}")));
    }
    parse_matrix(rows, field)
}

/// An affine element or map as its linear part and translation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineJson {
    #[serde(rename = "M")]
    pub m: Vec<Vec<ScalarJson>>,
    pub w: Vec<ScalarJson>,
}

impl AffineJson {
    pub fn from_parts(linear: &Matrix, translation: &[Scalar]) -> AffineJson {
        AffineJson {
            m: matrix_json(linear),
            w: vector_json(translation),
        }
    }

    pub fn from_map(g: &AffineMap) -> AffineJson {
        AffineJson::from_parts(&g.linear_part(), &g.translation_part())
    }

    fn parts(&self, n: usize, field: Field) -> Result<(Matrix, Vector), CliError> {
        let m = parse_square(&self.m, n, field, "M")?;
        if self.w.len() != n {
            return Err(CliError::Parse(format!("w must have {n} entries")));
        }
        Ok((m, parse_vector(&self.w, field)?))
    }

    pub fn to_lie_element(&self, n: usize, field: Field) -> Result<AffineLieElement, CliError> {
        let (m, w) = self.parts(n, field)?;
        Ok(AffineLieElement::new(&m, &w)?)
    }

    pub fn to_map(&self, n: usize, field: Field) -> Result<AffineMap, CliError> {
        let (m, w) = self.parts(n, field)?;
        Ok(AffineMap::new(&m, &w)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: LieTag,
    pub n: usize,
    #[serde(default)]
    pub field: FieldJson,
    /// `[i, j, [c¹ … cⁿ]]` with 0-based `i, j`.
    pub brackets: Vec<(usize, usize, Vec<ScalarJson>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<Vec<ScalarJson>>>,
}

impl LieDoc {
    /// Lists only the nonzero brackets `[Xᵢ, Xⱼ]` with `i < j`.
    pub fn from_algebra(l: &LieAlgebra) -> LieDoc {
        LieDoc {
            version: None,
            kind: LieTag::Tag,
            n: l.dim(),
            field: FieldJson::from_field(l.field()),
            brackets: l.nonzero_brackets().iter().map(|(i, j, c)| (*i, *j, vector_json(c))).collect(),
            weights: None,
            derivation: None,
        }
    }

    pub fn field(&self) -> Result<Field, CliError> {
        self.field.to_field()
    }

    /// Builds and validates the algebra.
    pub fn to_algebra(&self) -> Result<LieAlgebra, CliError> {
        let field = self.field()?;
        let brackets = self
            .brackets
            .iter()
            .map(|(i, j, c)| Ok((*i, *j, parse_vector(c, field)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let l = LieAlgebra::new(self.n, field, &brackets)?;
        l.validate()?;
        Ok(l)
    }

    pub fn grading(&self) -> Option<Grading> {
        self.weights.clone().map(Grading::new)
    }

    pub fn derivation_matrix(&self) -> Result<Option<Matrix>, CliError> {
        self.derivation
            .as_ref()
            .map(|d| parse_square(d, self.n, self.field()?, "derivation"))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: RepTag,
    pub algebra: LieDoc,
    pub images: Vec<AffineJson>,
}

impl RepDoc {
    pub fn from_rep(rep: &AffineRep) -> RepDoc {
        RepDoc {
            version: None,
            kind: RepTag::Tag,
            algebra: LieDoc::from_algebra(rep.algebra()),
            images: rep
                .images()
                .iter()
                .map(|y| AffineJson::from_parts(&y.linear_part(), &y.translation_part()))
                .collect(),
        }
    }

    pub fn to_rep(&self) -> Result<AffineRep, CliError> {
        let l = self.algebra.to_algebra()?;
        let (n, field) = (l.dim(), l.field());
        let images = self
            .images
            .iter()
            .map(|y| y.to_lie_element(n, field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AffineRep::new(l, images)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcRepDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: PcRepTag,
    pub n: usize,
    #[serde(default)]
    pub field: FieldJson,
    /// Full `(n+1)×(n+1)` matrices.
    pub generators: Vec<Vec<Vec<ScalarJson>>>,
    pub supplement: usize,
}

impl PcRepDoc {
    pub fn from_rep(rep: &PolycyclicRep) -> PcRepDoc {
        PcRepDoc {
            version: None,
            kind: PcRepTag::Tag,
            n: rep.dim(),
            field: FieldJson::from_field(rep.field()),
            generators: rep.generators().iter().map(|g| matrix_json(g.matrix())).collect(),
            supplement: rep.supplement(),
        }
    }

    pub fn to_rep(&self) -> Result<PolycyclicRep, CliError> {
        let field = self.field.to_field()?;
        let generators = self
            .generators
            .iter()
            .map(|g| Ok(AffineMap::from_matrix(parse_square(g, self.n + 1, field, "generator")?)?))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PolycyclicRep::new(self.n, field, generators, self.supplement)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: CaTag,
    pub n: usize,
    #[serde(default, skip_serializing_if = "is_rational")]
    pub field: FieldJson,
    /// `d[i][j]` holds the coordinates of `eᵢ∘eⱼ`.
    pub d: Vec<Vec<Vec<ScalarJson>>>,
}

impl CaDoc {
    pub fn from_product(c: &CAProduct) -> CaDoc {
        let table = c.table();
        let field = table
            .iter()
            .flatten()
            .flatten()
            .fold(Field::Rational, |f, x| f.join(x.field()).unwrap_or(f));
        CaDoc {
            version: None,
            kind: CaTag::Tag,
            n: c.dim(),
            field: FieldJson::from_field(field),
            d: table.iter().map(|row| row.iter().map(|v| vector_json(v)).collect()).collect(),
        }
    }

    pub fn to_product(&self) -> Result<CAProduct, CliError> {
        let field = self.field.to_field()?;
        let n = self.n;
        if self.d.len() != n || self.d.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(CliError::Parse(format!("d must be {n}x{n}x{n}")));
        }
        let table = self
            .d
            .iter()
            .map(|row| row.iter().map(|v| parse_vector(v, field)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CAProduct::new(table)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoJson {
    pub phi: Vec<Vec<ScalarJson>>,
    pub order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<AffineJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: ExtTag,
    pub rep: RepDoc,
    pub autos: Vec<AutoJson>,
    /// Signed 1-based generator indices: lifts first, then the base generators.
    pub relations: Vec<Vec<i64>>,
}

impl ExtDoc {
    pub fn from_spec(spec: &affcryst::realization::ExtensionSpec) -> ExtDoc {
        ExtDoc {
            version: None,
            kind: ExtTag::Tag,
            rep: RepDoc::from_rep(spec.rep()),
            autos: spec
                .autos()
                .iter()
                .map(|a| AutoJson {
                    phi: matrix_json(&a.phi),
                    order: a.order,
                    lift: a.lift.as_ref().map(AffineJson::from_map),
                })
                .collect(),
            relations: spec.relations().to_vec(),
        }
    }

    pub fn to_spec(&self) -> Result<affcryst::realization::ExtensionSpec, CliError> {
        let rep = self.rep.to_rep()?;
        let (n, field) = (rep.dim(), rep.algebra().field());
        let autos = self
            .autos
            .iter()
            .map(|a| {
                Ok(affcryst::realization::AutoSpec {
                    phi: parse_square(&a.phi, n, field, "phi")?,
                    order: a.order,
                    lift: a.lift.as_ref().map(|g| g.to_map(n, field)).transpose()?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(affcryst::realization::ExtensionSpec::new(rep, autos, self.relations.clone())?)
    }
}

/// A fixed-locus scan over the plane family `grid_family(u₁, u₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: GridTag,
    /// Values taken by each of `u₁, u₂`.
    pub values: Vec<ScalarJson>,
    pub phi: Vec<Vec<ScalarJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: VerdictTag,
    #[serde(default, skip_serializing_if = "is_rational")]
    pub field: FieldJson,
    pub crystallographic: bool,
    pub delta: Option<ScalarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shadow_dim: Option<usize>,
    pub engel_ok: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreeStepParams {
    pub alpha: ScalarJson,
    pub beta: ScalarJson,
    pub gamma: ScalarJson,
    pub points_tried: usize,
    pub derivation_space_dim: usize,
    pub derivation: Vec<Vec<ScalarJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: BuildTag,
    pub method: String,
    pub delta: ScalarJson,
    pub rep: RepDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<ThreeStepParams>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoReportJson {
    pub phi: Vec<Vec<ScalarJson>>,
    pub order: u32,
    pub fixed: bool,
    pub certified: bool,
    pub user_lift: bool,
    pub conjugator: Option<AffineJson>,
    pub lift: Option<AffineJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub word: Vec<i64>,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationVerdictJson {
    Realizable,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub kind: RealizationTag,
    #[serde(default, skip_serializing_if = "is_rational")]
    pub field: FieldJson,
    pub verdict: RealizationVerdictJson,
    pub base_crystallographic: bool,
    pub autos: Vec<AutoReportJson>,
    pub relations: Option<Vec<RelationJson>>,
}

/// Any top-level document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Lie(LieDoc),
    Rep(RepDoc),
    PcRep(PcRepDoc),
    Ca(CaDoc),
    Ext(ExtDoc),
    Grid(GridDoc),
    Verdict(VerdictDoc),
    Build(BuildDoc),
    Realization(RealizationDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lie(_) => "lie",
            Document::Rep(_) => "rep",
            Document::PcRep(_) => "pcrep",
            Document::Ca(_) => "ca",
            Document::Ext(_) => "ext",
            Document::Grid(_) => "grid",
            Document::Verdict(_) => "verdict",
            Document::Build(_) => "build",
            Document::Realization(_) => "realization",
        }
    }

    /// Parses an envelope; the version must be present and recognized.
    pub fn parse(text: &str) -> Result<Document, CliError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let version = value.get("version").and_then(serde_json::Value::as_u64);
        if version != Some(SCHEMA_VERSION as u64) {
            return Err(CliError::Parse(format!(
                "unsupported or missing schema version {:?}",
                value.get("version")
            )));
        }
        let kind = value
            .get("kind")
            .and_then(serde_json::Value::as_str)
            .ok_or_else(|| CliError::Parse("missing kind".into()))?
            .to_owned();
        fn typed<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T, CliError> {
            serde_json::from_value(v).map_err(|e| CliError::Parse(e.to_string()))
        }
        Ok(match kind.as_str() {
            "lie" => Document::Lie(typed(value)?),
            "rep" => Document::Rep(typed(value)?),
            "pcrep" => Document::PcRep(typed(value)?),
            "ca" => Document::Ca(typed(value)?),
            "ext" => Document::Ext(typed(value)?),
            "grid" => Document::Grid(typed(value)?),
            "verdict" => Document::Verdict(typed(value)?),
            "build" => Document::Build(typed(value)?),
            "realization" => Document::Realization(typed(value)?),
            other => return Err(CliError::Parse(format!("unknown kind {other:?}"))),
        })
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut doc = self.clone();
        doc.set_version(Some(SCHEMA_VERSION));
        let s = match &doc {
            Document::Lie(d) => serde_json::to_string_pretty(d),
            Document::Rep(d) => serde_json::to_string_pretty(d),
            Document::PcRep(d) => serde_json::to_string_pretty(d),
            Document::Ca(d) => serde_json::to_string_pretty(d),
            Document::Ext(d) => serde_json::to_string_pretty(d),
            Document::Grid(d) => serde_json::to_string_pretty(d),
            Document::Verdict(d) => serde_json::to_string_pretty(d),
            Document::Build(d) => serde_json::to_string_pretty(d),
            Document::Realization(d) => serde_json::to_string_pretty(d),
        };
        s.expect("documents serialize") + "\n"
    }

    fn set_version(&mut self, v: Option<u32>) {
        match self {
            Document::Lie(d) => d.version = v,
            Document::Rep(d) => d.version = v,
            Document::PcRep(d) => d.version = v,
            Document::Ca(d) => d.version = v,
            Document::Ext(d) => d.version = v,
            Document::Grid(d) => d.version = v,
            Document::Verdict(d) => d.version = v,
            Document::Build(d) => d.version = v,
            Document::Realization(d) => d.version = v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_forms() {
        let q = Field::Rational;
        assert_eq!(ScalarJson::Int(-3).to_scalar(q).unwrap(), Scalar::from_int(-3));
        assert_eq!(ScalarJson::Text("6/4".into()).to_scalar(q).unwrap(), Scalar::ratio(3, 2));
        let x: ScalarJson = serde_json::from_str(r#"{"a":"3/2","b":"1/2"}"#).unwrap();
        assert!(x.to_scalar(q).is_err());
        let l = x.to_scalar(Field::Quadratic(5)).unwrap();
        assert_eq!(l, Scalar::surd((3, 2), (1, 2), 5));
        assert_eq!(ScalarJson::from_scalar(&l), x.clone());
        assert_eq!(serde_json::to_string(&ScalarJson::from_scalar(&Scalar::ratio(-1, 2))).unwrap(), "\"-1/2\"");
    }

    #[test]
    fn field_forms() {
        let f: FieldJson = serde_json::from_str(r#"{"type":"Qsqrt","d":5}"#).unwrap();
        assert_eq!(f.to_field().unwrap(), Field::Quadratic(5));
        let bad: FieldJson = serde_json::from_str(r#"{"type":"Qsqrt","d":4}"#).unwrap();
        assert!(bad.to_field().is_err());
        assert_eq!(serde_json::to_string(&FieldJson::Q).unwrap(), r#"{"type":"Q"}"#);
    }

    #[test]
    fn kind_tags_are_checked() {
        let bad = r#"{"kind":"rep","n":1,"brackets":[]}"#;
        assert!(serde_json::from_str::<LieDoc>(bad).is_err());
        let ok = r#"{"kind":"lie","n":1,"brackets":[]}"#;
        assert!(serde_json::from_str::<LieDoc>(ok).is_ok());
    }

    #[test]
    fn lie_validation_is_an_invariant_error() {
        // [X0,X1] = X0 is not nilpotent
        let doc: LieDoc = serde_json::from_str(r#"{"kind":"lie","n":2,"brackets":[[0,1,[1,0]]]}"#).unwrap();
        assert_eq!(doc.to_algebra().unwrap_err().exit_code(), 3);
    }
}
