//! Polycyclic representations given by generator images, their unipotent
//! shadow, and the crystallography test through the shadow.
//!
//! The group-theoretic hypotheses (torsionfree polycyclic group, generators
//! adapted to a nilpotent supplement, rank equal to the dimension) are the
//! caller's responsibility. When they fail the verdict is unspecified.

use crate::affine::{log_unipotent, AffineLieElement, AffineMap};
use crate::engel::engel_flag;
use crate::error::{Error, Result};
use crate::jordan::jordan_decompose;
use crate::lie::lie_closure;
use crate::matrix::{Matrix, Vector};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolycyclicRep {
    n: usize,
    field: Field,
    generators: Vec<AffineMap>,
    supplement: usize,
}

impl PolycyclicRep {
    /// Generators `0..supplement` span the supplement, the rest the Fitting part.
    pub fn new(n: usize, field: Field, generators: Vec<AffineMap>, supplement: usize) -> Result<PolycyclicRep> {
        if supplement > generators.len() {
            return Err(Error::InvalidStructure(format!(
                "supplement size {supplement} exceeds {} generators",
                generators.len()
            )));
        }
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(format!("generator of dimension {} in dimension {n}", g.dim())));
            }
            if g.linear_part().det()?.is_zero() {
                return Err(Error::Singular);
            }
            if let Some(f) = g.matrix().field() {
                if field.join(f) != Some(field) {
                    return Err(Error::InvalidField(format!("generator entries outside {field:?}")));
                }
            }
        }
        if generators[supplement..].iter().any(|g| !g.is_unipotent()) {
            return Err(Error::NotUnipotent);
        }
        Ok(PolycyclicRep {
            n,
            field,
            generators,
            supplement,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[AffineMap] {
        &self.generators
    }

    pub fn supplement(&self) -> usize {
        self.supplement
    }

    /// Conjugates every generator by `g`.
    pub fn conjugate(&self, g: &AffineMap) -> Result<PolycyclicRep> {
        let gi = g.inverse()?;
        let generators = self.generators.iter().map(|x| g.compose(x).compose(&gi)).collect();
        let field = g.matrix().field().and_then(|f| self.field.join(f)).unwrap_or(self.field);
        PolycyclicRep::new(self.n, field, generators, self.supplement)
    }
}

/// `θᵢ = (gᵢ)_u`; Fitting generators are returned as they are.
pub fn shadow_generators(rep: &PolycyclicRep) -> Result<Vec<AffineMap>> {
    rep.generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if i >= rep.supplement {
                return Ok(g.clone());
            }
            AffineMap::from_matrix(jordan_decompose(g.matrix())?.unipotent)
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVerdict {
    pub crystallographic: bool,
    /// Set when the shadow closure has full dimension.
    pub delta: Option<Scalar>,
    pub shadow_dim: usize,
    pub engel_ok: bool,
    /// Echelon basis of the Lie algebra generated by the shadow logarithms.
    pub closure: Vec<AffineLieElement>,
}

pub fn is_crystallographic_poly(rep: &PolycyclicRep) -> Result<PolyVerdict> {
    let logs: Vec<Matrix> = shadow_generators(rep)?
        .iter()
        .map(|t| log_unipotent(t).map(|x| x.matrix().clone()))
        .collect::<Result<_>>()
        .map_err(|e| match e {
            Error::NotUnipotent => Error::Internal("shadow generator is not unipotent".into()),
            other => other,
        })?;
    let closure = lie_closure(&logs);
    let shadow_dim = closure.len();
    let engel_ok = closure.is_empty() || engel_flag(&closure).is_some();
    let closure: Vec<AffineLieElement> = closure
        .into_iter()
        .map(AffineLieElement::from_matrix)
        .collect::<Result<_>>()?;
    let delta = if shadow_dim == rep.n {
        let cols: Vec<Vector> = closure.iter().map(AffineLieElement::translation_part).collect();
        Some(if cols.is_empty() { Scalar::one() } else { Matrix::from_columns(&cols).det()? })
    } else {
        None
    };
    let crystallographic = engel_ok && delta.as_ref().is_some_and(|d| !d.is_zero());
    Ok(PolyVerdict {
        crystallographic,
        delta,
        shadow_dim,
        engel_ok,
        closure,
    })
}

/// Matrices of `X ↦ gᵢ·X·gᵢ⁻¹` on the shadow closure, in its echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HullAction {
    pub basis: Vec<AffineLieElement>,
    pub matrices: Vec<Matrix>,
}

fn echelon_coordinates(basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    // the basis is reduced echelon, so coordinates are read off at pivots
    let coords: Vector = basis
        .iter()
        .map(|b| {
            let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
            v[p].clone()
        })
        .collect();
    let mut back = vec![Scalar::zero(); v.len()];
    for (c, b) in coords.iter().zip(basis) {
        for (o, x) in back.iter_mut().zip(b) {
            *o += &(c * x);
        }
    }
    (back == v).then_some(coords)
}

pub fn hull_action_from_reference(reference: &PolycyclicRep) -> Result<HullAction> {
    let verdict = is_crystallographic_poly(reference)?;
    if !verdict.crystallographic {
        return Err(Error::NotCrystallographic);
    }
    let basis = verdict.closure;
    let flat: Vec<Vector> = basis.iter().map(|b| b.matrix().to_vector()).collect();
    let matrices = reference
        .generators
        .iter()
        .map(|g| {
            let cols = basis
                .iter()
                .map(|b| {
                    let img = g.conjugate(b)?.matrix().to_vector();
                    echelon_coordinates(&flat, &img)
                        .ok_or_else(|| Error::Internal("generator does not normalize the shadow closure".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(&cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HullAction { basis, matrices })
}

/// `χ(g) = χ(a)·(T − 1)`.
pub fn char_restriction_check(g: &AffineMap, a: &Matrix) -> Result<bool> {
    let n = a.ensure_square()?;
    if g.dim() != n {
        return Err(Error::DimensionMismatch(format!("affine map of dimension {} against a {n}x{n} action", g.dim())));
    }
    let lhs = g.matrix().char_poly()?;
    let rhs = &a.char_poly()? * &Polynomial::from_i64(&[-1, 1]);
    Ok(lhs == rhs)
}
