//! Crystallographic actions of free abelian groups: commutative associative
//! nilpotent products, the normalization `t̄ = id`, and canonical forms for
//! conjugacy.

use crate::affine::{AffineLieElement, AffineMap};
use crate::engel::engel_flag;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{unit_vector, Matrix, Vector};
use crate::par::{self, Parallelism};
use crate::rep::{conjugate, find_conjugator, is_crystallographic, precompose, AffineRep};
use crate::scalar::Scalar;
use crate::search::SearchOptions;

/// `eᵢ∘eⱼ = Σ_k d_{ij}^k e_k`, stored for `i ≤ j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CAProduct {
    n: usize,
    upper: Vec<Vector>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

impl CAProduct {
    pub fn zero(n: usize) -> CAProduct {
        CAProduct {
            n,
            upper: vec![vec![Scalar::zero(); n]; n * (n + 1) / 2],
        }
    }

    /// From a full table `table[i][j] = eᵢ∘eⱼ`; must be symmetric, associative
    /// and nilpotent.
    pub fn new(table: Vec<Vec<Vector>>) -> Result<CAProduct> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidProduct(format!("table is not {n}x{n}x{n}")));
        }
        for i in 0..n {
            for j in i + 1..n {
                if table[i][j] != table[j][i] {
                    return Err(Error::InvalidProduct(format!("e{}∘e{} != e{}∘e{}", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        let mut c = CAProduct::zero(n);
        for i in 0..n {
            for j in i..n {
                c.upper[upper_index(n, i, j)] = table[i][j].clone();
            }
        }
        c.validate()?;
        Ok(c)
    }

    /// Builds from `(i, j, coefficients)` entries with `i ≤ j`.
    pub fn from_entries(n: usize, entries: &[(usize, usize, Vector)]) -> Result<CAProduct> {
        let mut c = CAProduct::zero(n);
        for (i, j, v) in entries {
            if *i >= n || *j >= n || v.len() != n {
                return Err(Error::InvalidProduct(format!("entry ({i},{j}) does not fit dimension {n}")));
            }
            c.upper[upper_index(n, *i, *j)] = v.clone();
        }
        c.validate()?;
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &Vector {
        &self.upper[upper_index(self.n, i, j)]
    }

    /// Full table `[i][j] = eᵢ∘eⱼ`.
    pub fn table(&self) -> Vec<Vec<Vector>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.product_basis(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().flatten().all(Scalar::is_zero)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for (o, c) in out.iter_mut().zip(self.product_basis(i, j)) {
                    if !c.is_zero() {
                        *o += &(&f * c);
                    }
                }
            }
        }
        out
    }

    /// `L_{eᵢ}`: column `j` is `eᵢ∘eⱼ`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.n).map(|j| self.product_basis(i, j).clone()).collect();
        Matrix::from_columns(&cols)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_basis(i, j).clone();
                for k in 0..n {
                    let lhs = self.mul(&ij, &unit_vector(n, k));
                    let rhs = self.mul(&unit_vector(n, i), self.product_basis(j, k));
                    if lhs != rhs {
                        return Err(Error::InvalidProduct(format!(
                            "associativity fails on (e{}, e{}, e{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        if n > 0 {
            let ls: Vec<Matrix> = (0..n).map(|i| self.left_mult(i)).collect();
            if engel_flag(&ls).is_none() {
                return Err(Error::InvalidProduct("left multiplications are not nilpotent".into()));
            }
        }
        Ok(())
    }
}

fn require_abelian(rep: &AffineRep) -> Result<()> {
    if rep.algebra().is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

/// Matrix whose columns are the translation parts `wᵢ`.
pub fn tbar(rep: &AffineRep) -> Result<Matrix> {
    require_abelian(rep)?;
    let cols: Vec<Vector> = rep.images().iter().map(AffineLieElement::translation_part).collect();
    Ok(Matrix::from_columns(&cols))
}

/// The representative conjugate to `ρ` with `t̄ = I`: conjugation by `t̄⁻¹`.
///
/// Conjugating by `g` sends `t̄` to a matrix that differs from `g·t̄` by a
/// factor commuting with the product, so the product read off from this
/// representative is a conjugacy invariant.
pub fn normalize_id(rep: &AffineRep) -> Result<AffineRep> {
    let t = tbar(rep)?;
    let ti = t.inverse()?;
    conjugate(rep, &AffineMap::linear(&ti)?)
}

/// The representative `ρ∘t̄` obtained by a change of basis of the group.
///
/// Also satisfies `t̄ = I`, but its product is transported along
/// conjugations, so it only classifies up to the linear action.
pub fn normalize_basis(rep: &AffineRep) -> Result<AffineRep> {
    let t = tbar(rep)?;
    if t.det()?.is_zero() {
        return Err(Error::Singular);
    }
    precompose(rep, &t)
}

/// Images `(L_{eᵢ}, eᵢ)` on the abelian algebra.
pub fn ca_to_rep(c: &CAProduct) -> Result<AffineRep> {
    c.validate()?;
    let n = c.dim();
    let images = (0..n)
        .map(|i| AffineLieElement::new(&c.left_mult(i), &unit_vector(n, i)))
        .collect::<Result<Vec<_>>>()?;
    AffineRep::new(LieAlgebra::abelian(n), images)
}

/// Reads `d_{ij}^k = (Mᵢ)_{kj}` off a normalized representation.
pub fn rep_to_ca(rep: &AffineRep) -> Result<CAProduct> {
    if !tbar(rep)?.is_identity() {
        return Err(Error::NotNormalized);
    }
    let n = rep.dim();
    let table = (0..n)
        .map(|i| {
            let m = rep.images()[i].linear_part();
            (0..n).map(|j| m.column(j)).collect()
        })
        .collect();
    CAProduct::new(table)
}

/// `rep_to_ca(normalize_id(ρ))`.
pub fn canonical_product(rep: &AffineRep) -> Result<CAProduct> {
    rep_to_ca(&normalize_id(rep)?)
}

pub fn are_conjugate(a: &AffineRep, b: &AffineRep) -> Result<bool> {
    for r in [a, b] {
        require_abelian(r)?;
        if !is_crystallographic(r)?.crystallographic {
            return Err(Error::NotCrystallographic);
        }
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(canonical_product(a)? == canonical_product(b)?)
}

/// `x ∘′ y = g(g⁻¹x ∘ g⁻¹y)`.
pub fn apply_linear(c: &CAProduct, g: &Matrix) -> Result<CAProduct> {
    let n = c.dim();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} map on a {n}-dimensional product", g.rows(), g.cols())));
    }
    let gi = g.inverse()?;
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| g.mul_vec(&c.mul(&gi.column(i), &gi.column(j))))
                .collect()
        })
        .collect();
    CAProduct::new(table)
}

/// The 2-dimensional family `x∘y = u(x)·u(y)·(−u₂, u₁)`.
///
/// Every triple product vanishes, so each member is associative and
/// nilpotent; `u = 0` is the zero product.
pub fn grid_family(u1: &Scalar, u2: &Scalar) -> CAProduct {
    let u = [u1.clone(), u2.clone()];
    let ju = [-u2, u1.clone()];
    let mut c = CAProduct::zero(2);
    for i in 0..2 {
        for j in i..2 {
            c.upper[upper_index(2, i, j)] = ju.iter().map(|x| &(&u[i] * &u[j]) * x).collect();
        }
    }
    c
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocusPoint {
    pub u: [Scalar; 2],
    pub fixed: bool,
}

/// Decides, for each `(u₁, u₂)` in `values²`, whether the class of
/// `ca_to_rep(grid_family(u))` is fixed by precomposition with `phi`.
///
/// A point is fixed when a conjugator to the precomposed representation
/// exists. The canonical products are compared as a cross-check.
pub fn fixed_locus_scan(values: &[Scalar], phi: &Matrix, opts: &SearchOptions, mode: Parallelism) -> Result<Vec<LocusPoint>> {
    let points: Vec<[Scalar; 2]> = values
        .iter()
        .flat_map(|a| values.iter().map(move |b| [a.clone(), b.clone()]))
        .collect();
    let run = |u: &[Scalar; 2]| -> Result<LocusPoint> {
        let c = grid_family(&u[0], &u[1]);
        let rep = ca_to_rep(&c)?;
        let moved = precompose(&rep, phi)?;
        let search = find_conjugator(&rep, &moved, opts)?;
        let by_canon = canonical_product(&moved)? == c;
        let fixed = search.conjugator.is_some();
        if fixed != by_canon && search.certified {
            return Err(Error::Internal(format!("fixed-point verdicts disagree at u = ({}, {})", u[0], u[1])));
        }
        Ok(LocusPoint { u: u.clone(), fixed })
    };
    par::map(&points, mode, run).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square() -> CAProduct {
        CAProduct::from_entries(2, &[(0, 0, unit_vector(2, 1))]).unwrap()
    }

    fn translations(n: usize) -> AffineRep {
        ca_to_rep(&CAProduct::zero(n)).unwrap()
    }

    #[test]
    fn indexing_is_a_bijection() {
        for n in 1..6 {
            let mut seen: Vec<usize> = (0..n).flat_map(|i| (i..n).map(move |j| upper_index(n, i, j))).collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..n * (n + 1) / 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tbar_examples() {
        assert!(tbar(&translations(3)).unwrap().is_identity());
        let two = Scalar::from_int(2);
        let images = (0..2)
            .map(|i| AffineLieElement::translation(&unit_vector(2, i)).scale(&two))
            .collect();
        let rep = AffineRep::new(LieAlgebra::abelian(2), images).unwrap();
        assert_eq!(tbar(&rep).unwrap(), Matrix::identity(2).scale(&two));
        assert_eq!(normalize_id(&rep).unwrap(), translations(2));
        assert_eq!(normalize_basis(&rep).unwrap(), translations(2));
        assert_eq!(normalize_id(&translations(2)).unwrap(), translations(2));
        let h = crate::scheuneman::two_step_rep(&LieAlgebra::heisenberg(1)).unwrap();
        assert_eq!(tbar(&h), Err(Error::NotAbelian));
    }

    #[test]
    fn square_product_rep() {
        let rep = ca_to_rep(&square()).unwrap();
        let mut m = Matrix::zeros(2, 2);
        m[(1, 0)] = Scalar::one();
        assert_eq!(rep.images()[0].linear_part(), m);
        assert_eq!(rep.images()[0].translation_part(), unit_vector(2, 0));
        assert!(rep.images()[1].linear_part().is_zero());
        assert_eq!(rep_to_ca(&rep).unwrap(), square());
        assert_eq!(rep_to_ca(&translations(2)).unwrap(), CAProduct::zero(2));
        let v = is_crystallographic(&rep).unwrap();
        assert_eq!(v.delta, Some(Scalar::one()));
    }

    #[test]
    fn invalid_products() {
        // e1∘e1 = e1 is not nilpotent
        assert!(CAProduct::from_entries(1, &[(0, 0, unit_vector(1, 0))]).is_err());
        // e1∘e1 = e2, e1∘e2 = e1 fails associativity and nilpotency
        assert!(CAProduct::from_entries(2, &[(0, 0, unit_vector(2, 1)), (0, 1, unit_vector(2, 0))]).is_err());
        let mut t = CAProduct::zero(2).table();
        t[0][1] = unit_vector(2, 1);
        assert!(CAProduct::new(t).is_err());
    }

    #[test]
    fn apply_linear_examples() {
        let g = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let moved = apply_linear(&square(), &g).unwrap();
        let neg: Vector = unit_vector(2, 1).iter().map(|x| -x).collect();
        assert_eq!(moved.product_basis(0, 0), &neg);
        assert_eq!(apply_linear(&square(), &Matrix::identity(2)).unwrap(), square());
        assert_eq!(apply_linear(&CAProduct::zero(2), &g).unwrap(), CAProduct::zero(2));
    }

    #[test]
    fn distinct_products_not_conjugate() {
        let a = translations(2);
        let b = ca_to_rep(&square()).unwrap();
        assert!(!are_conjugate(&a, &b).unwrap());
        assert!(are_conjugate(&b, &b).unwrap());
        assert!(find_conjugator(&a, &b, &SearchOptions::default()).unwrap().conjugator.is_none());
    }

    #[test]
    fn random_conjugates_normalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let c = samples::random_ca_product(&mut rng, 3);
            let rep = ca_to_rep(&c).unwrap();
            let g = samples::random_affine(&mut rng, 3, 2);
            let conj = conjugate(&rep, &g).unwrap();
            let normalized = normalize_id(&conj).unwrap();
            assert!(tbar(&normalized).unwrap().is_identity());
            assert_eq!(rep_to_ca(&normalized).unwrap(), c);
            // the change-of-basis form transports the product along linear conjugations
            let lin = AffineMap::linear(&g.linear_part()).unwrap();
            let basis_form = rep_to_ca(&normalize_basis(&conjugate(&rep, &lin).unwrap()).unwrap()).unwrap();
            assert_eq!(basis_form, apply_linear(&c, &g.linear_part()).unwrap());
            assert!(are_conjugate(&rep, &conj).unwrap());
        }
    }

    #[test]
    fn group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let c = samples::random_ca_product(&mut rng, 3);
            let g = samples::random_invertible(&mut rng, 3, 2);
            let h = samples::random_invertible(&mut rng, 3, 2);
            let lhs = apply_linear(&apply_linear(&c, &g).unwrap(), &h).unwrap();
            assert_eq!(lhs, apply_linear(&c, &(&h * &g)).unwrap());
        }
    }

    #[test]
    fn grid_family_locus() {
        let values: Vec<Scalar> = (-2..=2).map(Scalar::from_int).collect();
        let phi = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let locus = fixed_locus_scan(&values, &phi, &SearchOptions::default(), Parallelism::default()).unwrap();
        assert_eq!(locus.len(), 25);
        for p in &locus {
            assert_eq!(p.fixed, p.u[0].is_zero(), "u = {:?}", p.u);
        }
    }

    #[test]
    fn grid_family_is_valid() {
        for (a, b) in [(1, 0), (0, 1), (2, -3), (0, 0)] {
            assert!(grid_family(&Scalar::from_int(a), &Scalar::from_int(b)).validate().is_ok());
        }
    }
}
