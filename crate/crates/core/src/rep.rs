//! Affine representations of nilpotent Lie algebras and the crystallography
//! test for the corresponding nilpotent groups.
//!
//! A representation is stored at the Lie level: basis vector `Xᵢ` maps to
//! `Yᵢ = (Mᵢ, wᵢ)` in 𝔞(V), and the group generators are `exp(Yᵢ)`.

use crate::affine::{exp_nilpotent, AffineLieElement, AffineMap};
use crate::engel::engel_flag;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{Matrix, Vector};
use crate::scalar::Scalar;
use crate::search::{nonsingular_element, SearchOptions};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineRep {
    algebra: LieAlgebra,
    images: Vec<AffineLieElement>,
}

/// Outcome of [`is_crystallographic`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub crystallographic: bool,
    /// `None` when the images are not simultaneously nilpotent.
    pub delta: Option<Scalar>,
    pub engel_ok: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugatorSearch {
    pub conjugator: Option<AffineMap>,
    /// `false` only when no conjugator was found by sampling above the cap.
    pub certified: bool,
    /// Dimension of the solution space of the linear conjugacy system.
    pub solution_dim: usize,
}

impl AffineRep {
    /// Builds and validates; the ambient dimension must equal `dim L`.
    pub fn new(algebra: LieAlgebra, images: Vec<AffineLieElement>) -> Result<AffineRep> {
        let rep = AffineRep::unchecked(algebra, images)?;
        validate_rep(&rep)?;
        Ok(rep)
    }

    /// Checks shapes only. Use [`validate_rep`] for the bracket identity.
    pub fn unchecked(algebra: LieAlgebra, images: Vec<AffineLieElement>) -> Result<AffineRep> {
        let n = algebra.dim();
        if images.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a {n}-dimensional algebra",
                images.len()
            )));
        }
        if let Some(y) = images.iter().find(|y| y.dim() != n) {
            return Err(Error::DimensionMismatch(format!(
                "image acting on dimension {} but the algebra has dimension {n}",
                y.dim()
            )));
        }
        Ok(AffineRep { algebra, images })
    }

    /// `(φ_{Xᵢ}, D·Xᵢ)` for a linear representation `φ` on 𝔲 itself and a map `D`.
    pub fn from_pair(algebra: LieAlgebra, phi: &[Matrix], d: &Matrix) -> Result<AffineRep> {
        let images = phi
            .iter()
            .enumerate()
            .map(|(i, m)| AffineLieElement::new(m, &d.column(i)))
            .collect::<Result<Vec<_>>>()?;
        AffineRep::new(algebra, images)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn images(&self) -> &[AffineLieElement] {
        &self.images
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Image of `Σ xᵢ·Xᵢ`.
    pub fn image_of(&self, x: &[Scalar]) -> AffineLieElement {
        AffineLieElement::combination(x, &self.images, self.dim())
    }

    pub fn group_generators(&self) -> Result<Vec<AffineMap>> {
        self.images.iter().map(exp_nilpotent).collect()
    }
}

/// Checks `Y_{[Xᵢ,Xⱼ]} = [Yᵢ, Yⱼ]` on all basis pairs.
pub fn validate_rep(rep: &AffineRep) -> Result<()> {
    let n = rep.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = rep.image_of(&rep.algebra.bracket_basis(i, j));
            if lhs != rep.images[i].bracket(&rep.images[j]) {
                return Err(Error::BracketMismatch(i, j));
            }
        }
    }
    Ok(())
}

/// Column `i` is `Mᵢ·x + wᵢ`.
pub fn tau(rep: &AffineRep, x: &[Scalar]) -> Result<Matrix> {
    if x.len() != rep.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basepoint of length {} in dimension {}",
            x.len(),
            rep.dim()
        )));
    }
    let cols: Vec<Vector> = rep.images.iter().map(|y| y.orbit_differential(x)).collect();
    Ok(Matrix::from_columns(&cols))
}

fn engel_ok(rep: &AffineRep) -> bool {
    let ms: Vec<Matrix> = rep.images.iter().map(|y| y.matrix().clone()).collect();
    ms.is_empty() || engel_flag(&ms).is_some()
}

/// `det τ₀`, cross-checked against `det τ_x` at `x = (1, 2, …, n)`.
pub fn delta(rep: &AffineRep) -> Result<Scalar> {
    if !engel_ok(rep) {
        return Err(Error::NotUnipotentRep);
    }
    let n = rep.dim();
    let d0 = tau(rep, &vec![Scalar::zero(); n])?.det()?;
    let probe: Vector = (1..=n as i64).map(Scalar::from_int).collect();
    let d1 = tau(rep, &probe)?.det()?;
    if d0 != d1 {
        return Err(Error::Internal(format!("det tau depends on the basepoint: {d0} vs {d1}")));
    }
    Ok(d0)
}

pub fn is_crystallographic(rep: &AffineRep) -> Result<Verdict> {
    validate_rep(rep)?;
    if !engel_ok(rep) {
        return Ok(Verdict {
            crystallographic: false,
            delta: None,
            engel_ok: false,
        });
    }
    let d = delta(rep)?;
    Ok(Verdict {
        crystallographic: !d.is_zero(),
        delta: Some(d),
        engel_ok: true,
    })
}

/// Images `g·Yᵢ·g⁻¹`.
pub fn conjugate(rep: &AffineRep, g: &AffineMap) -> Result<AffineRep> {
    if g.dim() != rep.dim() {
        return Err(Error::DimensionMismatch("conjugating map of a different dimension".into()));
    }
    if g.linear_part().det()?.is_zero() {
        return Err(Error::Singular);
    }
    let images = rep
        .images
        .iter()
        .map(|y| g.conjugate(y))
        .collect::<Result<Vec<_>>>()?;
    Ok(AffineRep {
        algebra: rep.algebra.clone(),
        images,
    })
}

/// `ρ ∘ Φ⁻¹`: images `Y′ᵢ = Σⱼ (Φ⁻¹)ⱼᵢ·Yⱼ`.
pub fn precompose(rep: &AffineRep, phi: &Matrix) -> Result<AffineRep> {
    if !rep.algebra.is_automorphism(phi)? {
        return Err(Error::NotAutomorphism);
    }
    let inv = phi.inverse()?;
    let images = (0..rep.dim()).map(|i| rep.image_of(&inv.column(i))).collect();
    Ok(AffineRep {
        algebra: rep.algebra.clone(),
        images,
    })
}

/// Searches for `G ∈ Aff(V)` with `conjugate(ρ, G) = ρ′`.
///
/// The conditions `exp(Y′ᵢ)·G = G·exp(Yᵢ)` are linear in the entries of `G`
/// once its last row is constrained to `(0, …, 0, c)`. A nonsingular element
/// of the solution space is scaled to `c = 1` and rechecked exactly.
pub fn find_conjugator(rep: &AffineRep, other: &AffineRep, opts: &SearchOptions) -> Result<ConjugatorSearch> {
    if rep.dim() != other.dim() {
        return Err(Error::DimensionMismatch("representations of different dimensions".into()));
    }
    let n = rep.dim();
    let size = n + 1;
    let unknowns = size * size;
    let gens = rep.group_generators()?;
    let gens2 = other.group_generators()?;
    let mut rows: Vec<Vector> = Vec::new();
    for (a, b) in gens.iter().zip(&gens2) {
        // (B·G − G·A)_{rc} = Σ_s B_{rs} G_{sc} − G_{rs} A_{sc}
        let (a, b) = (a.matrix(), b.matrix());
        for r in 0..size {
            for c in 0..size {
                let mut row = vec![Scalar::zero(); unknowns];
                for s in 0..size {
                    if !b[(r, s)].is_zero() {
                        row[s * size + c] += &b[(r, s)];
                    }
                    if !a[(s, c)].is_zero() {
                        row[r * size + s] -= &a[(s, c)];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    for j in 0..n {
        let mut row = vec![Scalar::zero(); unknowns];
        row[n * size + j] = Scalar::one();
        rows.push(row);
    }
    let space: Vec<Matrix> = Matrix::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_vector(size, size, v))
        .collect();
    let solution_dim = space.len();
    if space.is_empty() {
        return Ok(ConjugatorSearch {
            conjugator: None,
            certified: true,
            solution_dim,
        });
    }
    let found = nonsingular_element(&space, opts)?;
    let Some(g) = found.element else {
        return Ok(ConjugatorSearch {
            conjugator: None,
            certified: found.certified,
            solution_dim,
        });
    };
    let c = g[(n, n)].inv().ok_or_else(|| Error::Internal("nonsingular solution with zero corner".into()))?;
    let g = AffineMap::from_matrix(g.scale(&c))?;
    if conjugate(rep, &g)?.images != other.images {
        return Err(Error::Internal("conjugator failed its recheck".into()));
    }
    Ok(ConjugatorSearch {
        conjugator: Some(g),
        certified: true,
        solution_dim,
    })
}
