//! Command implementations behind the `affcryst` binary. Each command takes
//! document text and returns a document (or CSV), so tests can drive them
//! without touching the filesystem.

pub mod schema;

use std::str::FromStr;

use affcryst::lie::LieAlgebra;
use affcryst::par::Parallelism;
use affcryst::realization::{realize, RealizationVerdict};
use affcryst::rep::is_crystallographic;
use affcryst::scheuneman::{derivation_rep, graded_rep, three_step_rep, two_step_rep, ThreeStepConfig};
use affcryst::search::SearchOptions;
use affcryst::shadow::is_crystallographic_poly;
use affcryst::torus::{canonical_product, ca_to_rep, fixed_locus_scan};
use affcryst::{Field, Scalar};
use thiserror::Error;

use schema::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] affcryst::Error),
}

impl CliError {
    /// 2 for unreadable input or bad usage, 3 for invariant violations,
    /// 4 for an internal invariant breach.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(e) if e.is_internal() => 4,
            CliError::Core(_) => 3,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildKind {
    TwoStep,
    Graded,
    Derivation,
    ThreeStep,
}

impl BuildKind {
    pub fn name(self) -> &'static str {
        match self {
            BuildKind::TwoStep => "two-step",
            BuildKind::Graded => "graded",
            BuildKind::Derivation => "derivation",
            BuildKind::ThreeStep => "three-step",
        }
    }
}

impl FromStr for BuildKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "two-step" => BuildKind::TwoStep,
            "graded" => BuildKind::Graded,
            "derivation" => BuildKind::Derivation,
            "three-step" => BuildKind::ThreeStep,
            _ => return Err(CliError::Usage(format!("unknown build kind {s:?}"))),
        })
    }
}

/// Settings shared by all commands.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Seed for the randomized nonsingularity sampling above the grid cap.
    pub seed: Option<u64>,
    pub parallel: bool,
    /// Overrides the three-step parameter grid or the scan values.
    pub grid: Option<Vec<Scalar>>,
}

impl RunOptions {
    pub fn parallelism(&self) -> Parallelism {
        if self.parallel {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }

    pub fn search(&self) -> SearchOptions {
        let mut s = SearchOptions {
            parallelism: self.parallelism(),
            ..SearchOptions::default()
        };
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        s
    }
}

/// Parses `"1,-2,1/2"`.
pub fn parse_grid(s: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("bad grid value {t:?}"))))
        .collect()
}

fn scalar_field(x: &Scalar) -> Field {
    x.field()
}

pub fn cmd_check(text: &str, _opts: &RunOptions) -> Result<VerdictDoc, CliError> {
    match Document::parse(text)? {
        Document::Rep(d) => {
            let rep = d.to_rep()?;
            let v = is_crystallographic(&rep)?;
            let mut details = vec![format!("dimension {}", rep.dim())];
            if !v.engel_ok {
                details.push("images are not simultaneously nilpotent".into());
            }
            Ok(VerdictDoc {
                version: Some(SCHEMA_VERSION),
                kind: VerdictTag::Tag,
                field: FieldJson::from_field(rep.algebra().field()),
                crystallographic: v.crystallographic,
                delta: v.delta.as_ref().map(ScalarJson::from_scalar),
                shadow_dim: None,
                engel_ok: v.engel_ok,
                details,
            })
        }
        Document::PcRep(d) => {
            let rep = d.to_rep()?;
            let v = is_crystallographic_poly(&rep)?;
            let mut details = vec![
                format!("dimension {}", rep.dim()),
                format!("{} generators, supplement {}", rep.generators().len(), rep.supplement()),
            ];
            if v.delta.is_none() {
                details.push(format!("shadow closure has dimension {} < {}", v.shadow_dim, rep.dim()));
            }
            let field = v
                .delta
                .as_ref()
                .map(scalar_field)
                .and_then(|f| f.join(rep.field()))
                .unwrap_or(rep.field());
            Ok(VerdictDoc {
                version: Some(SCHEMA_VERSION),
                kind: VerdictTag::Tag,
                field: FieldJson::from_field(field),
                crystallographic: v.crystallographic,
                delta: v.delta.as_ref().map(ScalarJson::from_scalar),
                shadow_dim: Some(v.shadow_dim),
                engel_ok: v.engel_ok,
                details,
            })
        }
        other => Err(CliError::Usage(format!("check expects a rep or pcrep document, got {}", other.kind()))),
    }
}

fn lie_input(text: &str) -> Result<(LieDoc, LieAlgebra), CliError> {
    match Document::parse(text)? {
        Document::Lie(d) => {
            let l = d.to_algebra()?;
            Ok((d, l))
        }
        other => Err(CliError::Usage(format!("build expects a lie document, got {}", other.kind()))),
    }
}

pub fn cmd_build(kind: BuildKind, text: &str, opts: &RunOptions) -> Result<BuildDoc, CliError> {
    let (doc, l) = lie_input(text)?;
    let mut parameters = None;
    let rep = match kind {
        BuildKind::TwoStep => two_step_rep(&l)?,
        BuildKind::Graded => {
            let g = doc
                .grading()
                .ok_or_else(|| CliError::Usage("graded build needs \"weights\"".into()))?;
            graded_rep(&l, &g)?
        }
        BuildKind::Derivation => {
            let d = doc
                .derivation_matrix()?
                .ok_or_else(|| CliError::Usage("derivation build needs \"derivation\"".into()))?;
            derivation_rep(&l, &d)?
        }
        BuildKind::ThreeStep => {
            let mut cfg = ThreeStepConfig {
                search: opts.search(),
                parallelism: opts.parallelism(),
                ..ThreeStepConfig::default()
            };
            if let Some(g) = &opts.grid {
                cfg.grid = g.clone();
            }
            let r = three_step_rep(&l, &cfg)?;
            parameters = Some(ThreeStepParams {
                alpha: ScalarJson::from_scalar(&r.alpha),
                beta: ScalarJson::from_scalar(&r.beta),
                gamma: ScalarJson::from_scalar(&r.gamma),
                points_tried: r.points_tried,
                derivation_space_dim: r.derivation_space_dim,
                derivation: matrix_json(&r.derivation),
            });
            r.rep
        }
    };
    let delta = affcryst::rep::delta(&rep)?;
    Ok(BuildDoc {
        version: Some(SCHEMA_VERSION),
        kind: BuildTag::Tag,
        method: kind.name().into(),
        delta: ScalarJson::from_scalar(&delta),
        rep: RepDoc::from_rep(&rep),
        parameters,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefspaceOutput {
    Canonical(CaDoc),
    /// CSV with header `u1,u2,fixed`.
    Locus(String),
}

impl DefspaceOutput {
    pub fn render(&self) -> String {
        match self {
            DefspaceOutput::Canonical(c) => Document::Ca(c.clone()).to_json(),
            DefspaceOutput::Locus(s) => s.clone(),
        }
    }
}

pub fn cmd_defspace(text: &str, opts: &RunOptions) -> Result<DefspaceOutput, CliError> {
    let canonical = |rep| -> Result<DefspaceOutput, CliError> {
        let mut c = CaDoc::from_product(&canonical_product(&rep)?);
        c.version = Some(SCHEMA_VERSION);
        Ok(DefspaceOutput::Canonical(c))
    };
    match Document::parse(text)? {
        Document::Rep(d) => canonical(d.to_rep()?),
        Document::Ca(d) => canonical(ca_to_rep(&d.to_product()?)?),
        Document::Grid(d) => {
            let values = match &opts.grid {
                Some(g) => g.clone(),
                None => parse_vector(&d.values, Field::Rational)?,
            };
            let phi = parse_matrix(&d.phi, Field::Rational)?;
            if phi.rows() != 2 || phi.cols() != 2 {
                return Err(CliError::Parse("phi must be 2x2".into()));
            }
            let points = fixed_locus_scan(&values, &phi, &opts.search(), opts.parallelism())?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["u1", "u2", "fixed"])?;
            for p in &points {
                w.write_record([p.u[0].to_string(), p.u[1].to_string(), p.fixed.to_string()])?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(DefspaceOutput::Locus(String::from_utf8(bytes).expect("csv is utf-8")))
        }
        other => Err(CliError::Usage(format!(
            "defspace expects a rep, ca or grid document, got {}",
            other.kind()
        ))),
    }
}

pub fn cmd_realize(text: &str, opts: &RunOptions) -> Result<RealizationDoc, CliError> {
    let doc = match Document::parse(text)? {
        Document::Ext(d) => d,
        other => return Err(CliError::Usage(format!("realize expects an ext document, got {}", other.kind()))),
    };
    let spec = doc.to_spec()?;
    let report = realize(&spec, &opts.search())?;
    let autos = spec
        .autos()
        .iter()
        .zip(&report.autos)
        .map(|(a, r)| AutoReportJson {
            phi: matrix_json(&a.phi),
            order: a.order,
            fixed: r.conjugator.is_some(),
            certified: r.certified,
            user_lift: r.user_lift,
            conjugator: r.conjugator.as_ref().map(AffineJson::from_map),
            lift: r.lift.as_ref().map(AffineJson::from_map),
        })
        .collect();
    let relations = report.extension.as_ref().map(|e| {
        e.relations
            .iter()
            .map(|r| RelationJson {
                word: r.word.clone(),
                holds: r.holds,
            })
            .collect()
    });
    Ok(RealizationDoc {
        version: Some(SCHEMA_VERSION),
        kind: RealizationTag::Tag,
        field: doc.rep.algebra.field,
        verdict: match report.verdict {
            RealizationVerdict::Realizable => RealizationVerdictJson::Realizable,
            RealizationVerdict::NotCertified => RealizationVerdictJson::NotCertified,
        },
        base_crystallographic: report.base_crystallographic,
        autos,
        relations,
    })
}
