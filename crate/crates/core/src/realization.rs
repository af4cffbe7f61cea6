//! Finite extensions of crystallographic nilpotent groups: fixed points of
//! automorphisms on representation classes, finite-order correction of
//! lifts, and split-extension generator lists checked against relations.
//!
//! Relation words are sequences of signed 1-based generator indices over the
//! extended generator list: lifts first (`1..=m`), then the base group
//! generators `exp(Yᵢ)` (`m+1..=m+n`). A negative index stands for the inverse.

use crate::affine::{exp_nilpotent, log_unipotent, AffineMap};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::{find_conjugator, is_crystallographic, precompose, AffineRep, ConjugatorSearch};
use crate::scalar::Scalar;
use crate::search::SearchOptions;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutoSpec {
    pub phi: Matrix,
    pub order: u32,
    /// A user-supplied lift, verified but not corrected.
    pub lift: Option<AffineMap>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionSpec {
    rep: AffineRep,
    autos: Vec<AutoSpec>,
    relations: Vec<Vec<i64>>,
}

/// Exact multiplicative order of `m`, if at most `max`.
fn order_of(m: &Matrix, max: u32) -> Option<u32> {
    let id = Matrix::identity(m.rows());
    let mut p = m.clone();
    for k in 1..=max {
        if p == id {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

impl ExtensionSpec {
    pub fn new(rep: AffineRep, autos: Vec<AutoSpec>, relations: Vec<Vec<i64>>) -> Result<ExtensionSpec> {
        for (idx, a) in autos.iter().enumerate() {
            if !rep.algebra().is_automorphism(&a.phi)? {
                return Err(Error::NotAutomorphism);
            }
            if a.order == 0 || order_of(&a.phi, a.order) != Some(a.order) {
                return Err(Error::OrderMismatch {
                    index: idx,
                    declared: a.order,
                    detail: "the automorphism does not have this exact order".into(),
                });
            }
            if let Some(l) = &a.lift {
                if l.dim() != rep.dim() {
                    return Err(Error::DimensionMismatch(format!("lift {} has the wrong dimension", idx + 1)));
                }
            }
        }
        let total = (autos.len() + rep.dim()) as i64;
        for w in &relations {
            if let Some(&bad) = w.iter().find(|&&g| g == 0 || g.abs() > total) {
                return Err(Error::BadGeneratorIndex(bad));
            }
        }
        Ok(ExtensionSpec { rep, autos, relations })
    }

    pub fn rep(&self) -> &AffineRep {
        &self.rep
    }

    pub fn autos(&self) -> &[AutoSpec] {
        &self.autos
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }
}

/// A conjugator from `ρ` to `ρ∘Φ⁻¹`. Its inverse realizes `Φ` on the image.
pub fn fixed_point_check(rep: &AffineRep, phi: &Matrix, opts: &SearchOptions) -> Result<ConjugatorSearch> {
    find_conjugator(rep, &precompose(rep, phi)?, opts)
}

/// `exp(−(1/k)·log(ĝᵏ))·ĝ`, an element of order dividing `k`.
pub fn cyclic_splitting(g_hat: &AffineMap, k: u32) -> Result<AffineMap> {
    if k == 0 {
        return Err(Error::InvalidStructure("order must be positive".into()));
    }
    let s = g_hat.pow(k);
    if !s.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    if s.compose(g_hat) != g_hat.compose(&s) {
        return Err(Error::NotCommuting);
    }
    let correction = log_unipotent(&s)?.scale(&Scalar::ratio(-1, i64::from(k)));
    let g = exp_nilpotent(&correction)?.compose(g_hat);
    if !g.pow(k).matrix().is_identity() {
        return Err(Error::Internal("corrected lift does not have the requested order".into()));
    }
    Ok(g)
}

/// Whether `lift·exp(Yᵢ)·lift⁻¹ = exp(ρ(Φ·Xᵢ))` for every `i`.
pub fn realizes(rep: &AffineRep, phi: &Matrix, lift: &AffineMap) -> Result<bool> {
    for i in 0..rep.dim() {
        let lhs = lift.conjugate(&rep.images()[i])?;
        if lhs != rep.image_of(&phi.column(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationResult {
    pub word: Vec<i64>,
    pub holds: bool,
    pub residual: Matrix,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionReport {
    /// Lifts followed by the base group generators.
    pub generators: Vec<AffineMap>,
    pub relations: Vec<RelationResult>,
}

pub fn evaluate_word(generators: &[AffineMap], word: &[i64]) -> Result<AffineMap> {
    let n = generators.first().map_or(0, AffineMap::dim);
    let mut acc = AffineMap::identity(n);
    for &g in word {
        let idx = usize::try_from(g.unsigned_abs()).ok().filter(|&i| i >= 1 && i <= generators.len());
        let idx = idx.ok_or(Error::BadGeneratorIndex(g))? - 1;
        let factor = if g > 0 {
            generators[idx].clone()
        } else {
            generators[idx].inverse()?
        };
        acc = acc.compose(&factor);
    }
    Ok(acc)
}

/// Checks each lift against its automorphism and order, then evaluates every
/// relation word. A failing relation is an error carrying its residual.
pub fn build_split_extension(spec: &ExtensionSpec, lifts: &[AffineMap]) -> Result<ExtensionReport> {
    if lifts.len() != spec.autos.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} lifts for {} automorphisms",
            lifts.len(),
            spec.autos.len()
        )));
    }
    let base = spec.rep.group_generators()?;
    for (j, (lift, auto)) in lifts.iter().zip(&spec.autos).enumerate() {
        if !realizes(&spec.rep, &auto.phi, lift)? {
            return Err(Error::LiftMismatch(j));
        }
        // lift^k must act trivially: unipotent and centralizing the base
        let p = lift.pow(auto.order);
        if !p.is_unipotent() || base.iter().any(|b| b.compose(&p) != p.compose(b)) {
            return Err(Error::OrderMismatch {
                index: j,
                declared: auto.order,
                detail: "the lift's power is not a unipotent element centralizing the base".into(),
            });
        }
    }
    let generators: Vec<AffineMap> = lifts.iter().cloned().chain(base).collect();
    let mut relations = Vec::with_capacity(spec.relations.len());
    for (index, word) in spec.relations.iter().enumerate() {
        let value = evaluate_word(&generators, word)?;
        let holds = value.matrix().is_identity();
        if !holds {
            return Err(Error::RelationFailed {
                index,
                word: word.clone(),
                residual: value.into_matrix(),
            });
        }
        relations.push(RelationResult {
            word: word.clone(),
            holds,
            residual: value.into_matrix(),
        });
    }
    Ok(ExtensionReport { generators, relations })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutoReport {
    /// `Some` when the class of `ρ` is fixed; a user-supplied lift counts.
    pub conjugator: Option<AffineMap>,
    pub certified: bool,
    pub lift: Option<AffineMap>,
    pub user_lift: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RealizationVerdict {
    Realizable,
    NotCertified,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealizationReport {
    pub base_crystallographic: bool,
    pub autos: Vec<AutoReport>,
    pub extension: Option<ExtensionReport>,
    pub verdict: RealizationVerdict,
}

/// Finds or verifies a lift per automorphism, corrects found lifts to the
/// declared order, and checks the relations.
pub fn realize(spec: &ExtensionSpec, opts: &SearchOptions) -> Result<RealizationReport> {
    let base_crystallographic = is_crystallographic(&spec.rep)?.crystallographic;
    if !base_crystallographic {
        return Err(Error::NotCrystallographic);
    }
    let mut autos = Vec::with_capacity(spec.autos.len());
    for (j, a) in spec.autos.iter().enumerate() {
        let report = match &a.lift {
            Some(lift) => {
                if !realizes(&spec.rep, &a.phi, lift)? {
                    return Err(Error::LiftMismatch(j));
                }
                AutoReport {
                    conjugator: Some(lift.inverse()?),
                    certified: true,
                    lift: Some(lift.clone()),
                    user_lift: true,
                }
            }
            None => {
                let found = fixed_point_check(&spec.rep, &a.phi, opts)?;
                let lift = match &found.conjugator {
                    Some(g) => Some(cyclic_splitting(&g.inverse()?, a.order)?),
                    None => None,
                };
                AutoReport {
                    conjugator: found.conjugator,
                    certified: found.certified,
                    lift,
                    user_lift: false,
                }
            }
        };
        autos.push(report);
    }
    let lifts: Option<Vec<AffineMap>> = autos.iter().map(|a| a.lift.clone()).collect();
    let (extension, verdict) = match lifts {
        Some(l) => (Some(build_split_extension(spec, &l)?), RealizationVerdict::Realizable),
        None => (None, RealizationVerdict::NotCertified),
    };
    Ok(RealizationReport {
        base_crystallographic,
        autos,
        extension,
        verdict,
    })
}
