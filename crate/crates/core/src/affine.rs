//! Affine transformations of an n-dimensional space, as (n+1)×(n+1) block
//! matrices `[[A, v], [0, 1]]`, and the affine Lie algebra elements
//! `[[M, w], [0, 0]]`, together with the exact exponential and logarithm
//! between the nilpotent and unipotent loci.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::Scalar;

/// An element of Aff(V).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    matrix: Matrix,
}

/// An element of 𝔞(V) = 𝔤𝔩(V) ⊕ V.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineLieElement {
    matrix: Matrix,
}

fn check_last_row(m: &Matrix, corner: &Scalar) -> Result<usize> {
    let size = m.ensure_square()?;
    if size == 0 {
        return Err(Error::NotAffine("empty matrix".into()));
    }
    let n = size - 1;
    let ok = (0..n).all(|j| m[(n, j)].is_zero()) && &m[(n, n)] == corner;
    if !ok {
        return Err(Error::NotAffine(format!("last row of {m:?}")));
    }
    Ok(n)
}

fn assemble(linear: &Matrix, translation: &[Scalar], corner: Scalar) -> Result<Matrix> {
    let n = linear.ensure_square()?;
    if translation.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "translation of length {} for a {n}x{n} linear part",
            translation.len()
        )));
    }
    Ok(Matrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => linear[(i, j)].clone(),
        (true, false) => translation[i].clone(),
        (false, true) => Scalar::zero(),
        (false, false) => corner.clone(),
    }))
}

impl AffineMap {
    pub fn from_matrix(matrix: Matrix) -> Result<AffineMap> {
        check_last_row(&matrix, &Scalar::one())?;
        Ok(AffineMap { matrix })
    }

    pub fn new(linear: &Matrix, translation: &[Scalar]) -> Result<AffineMap> {
        Ok(AffineMap {
            matrix: assemble(linear, translation, Scalar::one())?,
        })
    }

    pub fn identity(n: usize) -> AffineMap {
        AffineMap {
            matrix: Matrix::identity(n + 1),
        }
    }

    pub fn translation(v: &[Scalar]) -> AffineMap {
        AffineMap::new(&Matrix::identity(v.len()), v).expect("square identity")
    }

    pub fn linear(a: &Matrix) -> Result<AffineMap> {
        let n = a.ensure_square()?;
        AffineMap::new(a, &vec![Scalar::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn linear_part(&self) -> Matrix {
        let n = self.dim();
        self.matrix.submatrix(0..n, 0..n)
    }

    pub fn translation_part(&self) -> Vector {
        let n = self.dim();
        (0..n).map(|i| self.matrix[(i, n)].clone()).collect()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        let a = self.linear_part();
        a.mul_vec(x)
            .into_iter()
            .zip(self.translation_part())
            .map(|(p, t)| p + t)
            .collect()
    }

    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        Ok(AffineMap {
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn pow(&self, e: u32) -> AffineMap {
        AffineMap {
            matrix: self.matrix.pow(e),
        }
    }

    pub fn is_unipotent(&self) -> bool {
        is_unipotent(&self.matrix)
    }

    /// `g·x·g⁻¹` for a Lie algebra element `x`.
    pub fn conjugate(&self, x: &AffineLieElement) -> Result<AffineLieElement> {
        let inv = self.matrix.inverse()?;
        Ok(AffineLieElement {
            matrix: &(&self.matrix * &x.matrix) * &inv,
        })
    }
}

impl AffineLieElement {
    pub fn from_matrix(matrix: Matrix) -> Result<AffineLieElement> {
        check_last_row(&matrix, &Scalar::zero())?;
        Ok(AffineLieElement { matrix })
    }

    pub fn new(linear: &Matrix, translation: &[Scalar]) -> Result<AffineLieElement> {
        Ok(AffineLieElement {
            matrix: assemble(linear, translation, Scalar::zero())?,
        })
    }

    pub fn zero(n: usize) -> AffineLieElement {
        AffineLieElement {
            matrix: Matrix::zeros(n + 1, n + 1),
        }
    }

    pub fn translation(w: &[Scalar]) -> AffineLieElement {
        AffineLieElement::new(&Matrix::zeros(w.len(), w.len()), w).expect("square")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn linear_part(&self) -> Matrix {
        let n = self.dim();
        self.matrix.submatrix(0..n, 0..n)
    }

    pub fn translation_part(&self) -> Vector {
        let n = self.dim();
        (0..n).map(|i| self.matrix[(i, n)].clone()).collect()
    }

    /// The orbit-map differential at `x`: `(M, w) ↦ M·x + w`.
    pub fn orbit_differential(&self, x: &[Scalar]) -> Vector {
        self.linear_part()
            .mul_vec(x)
            .into_iter()
            .zip(self.translation_part())
            .map(|(p, t)| p + t)
            .collect()
    }

    pub fn bracket(&self, other: &AffineLieElement) -> AffineLieElement {
        AffineLieElement {
            matrix: self.matrix.commutator(&other.matrix),
        }
    }

    pub fn add(&self, other: &AffineLieElement) -> AffineLieElement {
        AffineLieElement {
            matrix: &self.matrix + &other.matrix,
        }
    }

    pub fn scale(&self, s: &Scalar) -> AffineLieElement {
        AffineLieElement {
            matrix: self.matrix.scale(s),
        }
    }

    /// `Σ cᵢ·xᵢ`; all elements must share a dimension.
    pub fn combination(coeffs: &[Scalar], elems: &[AffineLieElement], n: usize) -> AffineLieElement {
        let mut acc = Matrix::zeros(n + 1, n + 1);
        for (c, e) in coeffs.iter().zip(elems) {
            if !c.is_zero() {
                acc = &acc + &e.matrix.scale(c);
            }
        }
        AffineLieElement { matrix: acc }
    }
}

pub fn is_nilpotent(m: &Matrix) -> bool {
    m.is_square() && m.pow(m.rows() as u32).is_zero()
}

pub fn is_unipotent(m: &Matrix) -> bool {
    m.is_square() && is_nilpotent(&(m - &Matrix::identity(m.rows())))
}

/// `Σ_{k≥1} (−1)^{k+1} (g − I)^k / k`, a finite sum on unipotent input.
pub fn log_unipotent_matrix(g: &Matrix) -> Result<Matrix> {
    let size = g.ensure_square()?;
    let n = g - &Matrix::identity(size);
    let mut power = n.clone();
    let mut acc = Matrix::zeros(size, size);
    for k in 1..=size {
        if power.is_zero() {
            return Ok(acc);
        }
        let c = Scalar::ratio(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        acc = &acc + &power.scale(&c);
        power = &power * &n;
    }
    if power.is_zero() {
        Ok(acc)
    } else {
        Err(Error::NotUnipotent)
    }
}

/// `Σ_{k≥0} x^k / k!`, a finite sum on nilpotent input.
pub fn exp_nilpotent_matrix(x: &Matrix) -> Result<Matrix> {
    let size = x.ensure_square()?;
    let mut term = Matrix::identity(size);
    let mut acc = Matrix::identity(size);
    for k in 1..=size {
        term = (&term * x).scale(&Scalar::ratio(1, k as i64));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
    }
    if (&term * x).is_zero() {
        Ok(acc)
    } else {
        Err(Error::NotNilpotent)
    }
}

pub fn log_unipotent(g: &AffineMap) -> Result<AffineLieElement> {
    Ok(AffineLieElement {
        matrix: log_unipotent_matrix(&g.matrix)?,
    })
}

pub fn exp_nilpotent(x: &AffineLieElement) -> Result<AffineMap> {
    Ok(AffineMap {
        matrix: exp_nilpotent_matrix(&x.matrix)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn log_of_shear() {
        let g = AffineMap::from_matrix(Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        let x = log_unipotent(&g).unwrap();
        assert_eq!(x.matrix(), &Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(exp_nilpotent(&x).unwrap(), g);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(log_unipotent(&AffineMap::identity(3)).unwrap(), AffineLieElement::zero(3));
        assert_eq!(exp_nilpotent(&AffineLieElement::zero(3)).unwrap(), AffineMap::identity(3));
    }

    #[test]
    fn rejects_non_unipotent() {
        let g = AffineMap::linear(&Matrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(log_unipotent(&g), Err(Error::NotUnipotent));
        let x = AffineLieElement::from_matrix(Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(exp_nilpotent(&x), Err(Error::NotNilpotent));
    }

    #[test]
    fn last_row_enforced() {
        assert!(AffineMap::from_matrix(Matrix::from_i64(&[&[1, 0], &[1, 1]])).is_err());
        assert!(AffineLieElement::from_matrix(Matrix::from_i64(&[&[0, 1], &[0, 1]])).is_err());
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            for _ in 0..10 {
                let g = samples::random_unipotent_affine(&mut rng, n);
                let x = log_unipotent(&g).unwrap();
                assert_eq!(exp_nilpotent(&x).unwrap(), g);
                let y = samples::random_nilpotent_affine(&mut rng, n);
                assert_eq!(log_unipotent(&exp_nilpotent(&y).unwrap()).unwrap(), y);
            }
        }
    }

    #[test]
    fn affine_action() {
        let g = AffineMap::new(&Matrix::from_i64(&[&[0, -1], &[1, 0]]), &[Scalar::one(), Scalar::zero()]).unwrap();
        let x = vec![Scalar::from_int(2), Scalar::from_int(3)];
        assert_eq!(g.apply(&x), vec![Scalar::from_int(-2), Scalar::from_int(2)]);
        let h = g.inverse().unwrap();
        assert_eq!(h.apply(&g.apply(&x)), x);
    }
}
