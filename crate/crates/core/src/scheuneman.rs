//! Constructions of simply transitive unipotent affine representations from
//! a linear representation `φ` and a nonsingular derivation `D` for it.

use crate::error::{Error, Result};
use crate::lie::{central_series_decomposition, derivation_space, grading_derivation, is_derivation_for, Grading, LieAlgebra, LinearRep};
use crate::matrix::{Matrix, Vector};
use crate::par::{self, Parallelism};
use crate::rep::AffineRep;
use crate::scalar::Scalar;
use crate::search::{nonsingular_element, SearchOptions};

fn check_class(l: &LieAlgebra, max: usize) -> Result<usize> {
    let class = l.validate()?.class;
    if class > max {
        return Err(Error::ClassTooLarge { class, max });
    }
    Ok(class)
}

/// `(½·ad, id)`, for algebras of class at most 2.
pub fn two_step_rep(l: &LieAlgebra) -> Result<AffineRep> {
    check_class(l, 2)?;
    let half = Scalar::ratio(1, 2);
    let phi: Vec<Matrix> = (0..l.dim()).map(|i| l.ad(i).scale(&half)).collect();
    AffineRep::from_pair(l.clone(), &phi, &Matrix::identity(l.dim()))
}

/// `(ad, D)` for a nonsingular derivation `D`.
pub fn derivation_rep(l: &LieAlgebra, d: &Matrix) -> Result<AffineRep> {
    l.validate()?;
    if d.rows() != l.dim() || d.cols() != l.dim() {
        return Err(Error::DimensionMismatch(format!("{}x{} derivation", d.rows(), d.cols())));
    }
    if !l.is_derivation(d) {
        return Err(Error::NotDerivation);
    }
    if d.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let phi: Vec<Matrix> = (0..l.dim()).map(|i| l.ad(i)).collect();
    AffineRep::from_pair(l.clone(), &phi, d)
}

pub fn graded_rep(l: &LieAlgebra, g: &Grading) -> Result<AffineRep> {
    derivation_rep(l, &grading_derivation(l, g)?)
}

#[derive(Clone, Debug)]
pub struct ThreeStepConfig {
    /// Values tried for each of `α, β, γ`, in order.
    pub grid: Vec<Scalar>,
    /// Layers `V₁, V₂, V₃` as bases; the greedy central-series split when `None`.
    pub decomposition: Option<Vec<Vec<Vector>>>,
    pub search: SearchOptions,
    pub parallelism: Parallelism,
}

impl Default for ThreeStepConfig {
    fn default() -> Self {
        ThreeStepConfig {
            grid: vec![
                Scalar::from_int(1),
                Scalar::from_int(2),
                Scalar::from_int(3),
                Scalar::ratio(1, 2),
                Scalar::ratio(1, 3),
            ],
            decomposition: None,
            search: SearchOptions::default(),
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeStepResult {
    pub rep: AffineRep,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    /// The block scaling `g` with `φ_X = g·ad_X·g⁻¹`.
    pub scaling: Matrix,
    pub derivation: Matrix,
    /// Grid points examined before (and including) the success.
    pub points_tried: usize,
    pub derivation_space_dim: usize,
}

/// Grid points `(α, β, γ)` in lexicographic order of grid position.
pub fn parameter_grid(grid: &[Scalar]) -> Vec<[Scalar; 3]> {
    let mut out = Vec::with_capacity(grid.len().pow(3));
    for a in grid {
        for b in grid {
            for c in grid {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

/// Searches the parameter grid for a scaling `g` such that `φ = g·ad·g⁻¹`
/// admits a nonsingular derivation, solving the full derivation space at
/// each point.
pub fn three_step_rep(l: &LieAlgebra, cfg: &ThreeStepConfig) -> Result<ThreeStepResult> {
    check_class(l, 3)?;
    let n = l.dim();
    let layers = match &cfg.decomposition {
        Some(d) => d.clone(),
        None => central_series_decomposition(l),
    };
    if layers.len() > 3 || layers.iter().map(Vec::len).sum::<usize>() != n {
        return Err(Error::InvalidStructure("decomposition must have at most 3 layers spanning the algebra".into()));
    }
    let columns: Vec<Vector> = layers.iter().flatten().cloned().collect();
    let p = Matrix::from_columns(&columns);
    let p_inv = p
        .inverse()
        .map_err(|_| Error::InvalidStructure("decomposition layers are not independent".into()))?;
    let ad = LinearRep::adjoint(l);
    let points = parameter_grid(&cfg.grid);
    let attempt = |idx: &usize| -> Option<ThreeStepResult> {
        let params = &points[*idx];
        let diag: Vec<Scalar> = layers
            .iter()
            .enumerate()
            .flat_map(|(k, layer)| std::iter::repeat_n(params[k].clone(), layer.len()))
            .collect();
        let g = &(&p * &Matrix::diagonal(&diag)) * &p_inv;
        let phi = ad.conjugated(&g).ok()?;
        let space = derivation_space(&phi).ok()?;
        if space.is_empty() {
            return None;
        }
        let found = nonsingular_element(&space, &cfg.search).ok()?;
        let d = found.element?;
        let rep = AffineRep::from_pair(l.clone(), phi.ops(), &d).ok()?;
        Some(ThreeStepResult {
            rep,
            alpha: params[0].clone(),
            beta: params[1].clone(),
            gamma: params[2].clone(),
            scaling: g,
            derivation: d,
            points_tried: idx + 1,
            derivation_space_dim: space.len(),
        })
    };
    let indices: Vec<usize> = (0..points.len()).collect();
    let hit = par::find_map_first(&indices, cfg.parallelism, attempt);
    let result = hit.ok_or(Error::GridExhausted { tried: points.len() })?;
    if !is_derivation_for(&LinearRep::new(l.clone(), result.rep.images().iter().map(|y| y.linear_part()).collect())?, &result.derivation) {
        return Err(Error::Internal("three-step derivation failed its recheck".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unit_vector;
    use crate::rep::{find_conjugator, is_crystallographic, precompose};
    use crate::samples::AutomorphismSampler;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn heisenberg_two_step_shape() {
        let rep = two_step_rep(&LieAlgebra::heisenberg(1)).unwrap();
        let m1 = rep.images()[0].linear_part();
        let mut expected = Matrix::zeros(3, 3);
        expected[(2, 1)] = Scalar::ratio(1, 2);
        assert_eq!(m1, expected);
        for i in 0..3 {
            assert_eq!(rep.images()[i].translation_part(), unit_vector(3, i));
        }
        assert_eq!(is_crystallographic(&rep).unwrap().delta, Some(Scalar::one()));
    }

    #[test]
    fn abelian_gives_translations() {
        let rep = two_step_rep(&LieAlgebra::abelian(3)).unwrap();
        assert!(rep.images().iter().all(|y| y.linear_part().is_zero()));
        let rep = derivation_rep(&LieAlgebra::abelian(2), &Matrix::identity(2)).unwrap();
        assert!(rep.images().iter().all(|y| y.linear_part().is_zero()));
    }

    #[test]
    fn free_two_step_is_crystallographic() {
        let v = is_crystallographic(&two_step_rep(&LieAlgebra::free_two_step(3)).unwrap()).unwrap();
        assert!(v.crystallographic);
        assert_eq!(v.delta, Some(Scalar::one()));
    }

    #[test]
    fn class_bounds() {
        assert_eq!(two_step_rep(&LieAlgebra::filiform(4)), Err(Error::ClassTooLarge { class: 3, max: 2 }));
        let cfg = ThreeStepConfig::default();
        assert!(matches!(three_step_rep(&LieAlgebra::filiform(5), &cfg), Err(Error::ClassTooLarge { class: 4, max: 3 })));
    }

    #[test]
    fn derivation_rep_deltas() {
        let n4 = LieAlgebra::filiform(4);
        let d = grading_derivation(&n4, &Grading::new(vec![1, 1, 2, 3])).unwrap();
        let v = is_crystallographic(&derivation_rep(&n4, &d).unwrap()).unwrap();
        assert_eq!(v.delta, Some(Scalar::from_int(6)));
        let h = graded_rep(&LieAlgebra::heisenberg(1), &Grading::new(vec![1, 1, 2])).unwrap();
        assert_eq!(is_crystallographic(&h).unwrap().delta, Some(Scalar::from_int(2)));
        assert_eq!(derivation_rep(&n4, &Matrix::identity(4)), Err(Error::NotDerivation));
        assert_eq!(derivation_rep(&LieAlgebra::abelian(2), &Matrix::zeros(2, 2)), Err(Error::Singular));
    }

    #[test]
    fn graded_rep_fixed_by_scalings() {
        let n4 = LieAlgebra::filiform(4);
        let g = Grading::new(vec![1, 1, 2, 3]);
        let rep = graded_rep(&n4, &g).unwrap();
        for lambda in [Scalar::from_int(2), Scalar::ratio(-1, 3), Scalar::ratio(5, 2)] {
            let phi = g.scaling(&lambda);
            let other = precompose(&rep, &phi).unwrap();
            let found = find_conjugator(&rep, &other, &SearchOptions::default()).unwrap();
            assert!(found.conjugator.is_some());
        }
    }

    #[test]
    fn two_step_invariance_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let l = LieAlgebra::heisenberg(1);
        let rep = two_step_rep(&l).unwrap();
        let phi_rep = LinearRep::scaled_adjoint(&l, &Scalar::ratio(1, 2)).unwrap();
        let sampler = AutomorphismSampler::new(&l);
        for _ in 0..5 {
            let phi = sampler.sample(&mut rng);
            assert!(crate::lie::check_compatible(&phi_rep, &phi).unwrap());
            let found = find_conjugator(&rep, &precompose(&rep, &phi).unwrap(), &SearchOptions::default()).unwrap();
            assert!(found.conjugator.is_some());
        }
    }

    #[test]
    fn three_step_examples() {
        let cfg = ThreeStepConfig::default();
        for l in [
            LieAlgebra::filiform(4),
            LieAlgebra::free_three_step_quotient(),
            LieAlgebra::heisenberg(1),
            LieAlgebra::abelian(2),
        ] {
            let r = three_step_rep(&l, &cfg).unwrap();
            let v = is_crystallographic(&r.rep).unwrap();
            assert!(v.crystallographic);
            assert_eq!(v.delta.unwrap(), r.derivation.det().unwrap());
        }
        let ab = three_step_rep(&LieAlgebra::abelian(2), &cfg).unwrap();
        assert!(ab.rep.images().iter().all(|y| y.linear_part().is_zero()));
    }

    #[test]
    fn three_step_modes_agree() {
        let l = LieAlgebra::filiform(4);
        let seq = three_step_rep(&l, &ThreeStepConfig { parallelism: Parallelism::Sequential, ..Default::default() }).unwrap();
        let par = three_step_rep(&l, &ThreeStepConfig { parallelism: Parallelism::Parallel, ..Default::default() }).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn empty_grid_is_exhausted() {
        let cfg = ThreeStepConfig { grid: vec![], ..Default::default() };
        assert_eq!(three_step_rep(&LieAlgebra::filiform(4), &cfg), Err(Error::GridExhausted { tried: 0 }));
    }
}
