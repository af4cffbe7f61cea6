//! Multiplicative Jordan–Chevalley decomposition `g = g_s·g_u`.
//!
//! The semisimple part is the Newton iterate `x ← x − f(x)·f′(x)⁻¹` for the
//! square-free part `f` of the characteristic polynomial, started at `x = g`.
//! Each step is a polynomial in `g`, so the result commutes with `g` and the
//! unipotent part `I + g_s⁻¹(g − g_s)` is a polynomial in `g` as well.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanParts {
    pub semisimple: Matrix,
    pub unipotent: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanClass {
    /// The identity, which is both semisimple and unipotent.
    Identity,
    Semisimple,
    Unipotent,
    Mixed,
}

fn newton_bound(n: usize) -> usize {
    // ⌈log₂(n+1)⌉ steps suffice; one extra guards the exit test
    (usize::BITS - n.leading_zeros()) as usize + 1
}

/// Additive semisimple part of `g` by Newton iteration on matrices.
pub fn semisimple_part(g: &Matrix) -> Result<Matrix> {
    let n = g.ensure_square()?;
    let f = g.char_poly()?.squarefree_part()?;
    let df = f.derivative();
    let mut x = g.clone();
    for _ in 0..=newton_bound(n) {
        let fx = f.eval_matrix(&x);
        if fx.is_zero() {
            return Ok(x);
        }
        let step_inv = df
            .eval_matrix(&x)
            .inverse()
            .map_err(|_| Error::Internal("f'(x) singular during Newton iteration".into()))?;
        x = &x - &(&fx * &step_inv);
    }
    Err(Error::Internal("Newton iteration did not converge".into()))
}

pub fn jordan_decompose(g: &Matrix) -> Result<JordanParts> {
    let n = g.ensure_square()?;
    if g.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let s = semisimple_part(g)?;
    let s_inv = s
        .inverse()
        .map_err(|_| Error::Internal("semisimple part of an invertible matrix is singular".into()))?;
    let u = &Matrix::identity(n) + &(&s_inv * &(g - &s));
    Ok(JordanParts {
        semisimple: s,
        unipotent: u,
    })
}

/// The polynomials `P`, `Q` with `g_s = P(g)` and `g − g_s = Q(g)`.
///
/// They depend only on the characteristic polynomial `chi`: this runs the
/// same Newton iteration in the quotient ring `K[T]/(chi)`, starting at `T`.
pub fn jordan_polynomials(chi: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let deg = chi.degree().ok_or(Error::ZeroPolynomial)?;
    let f = chi.squarefree_part()?;
    let df = f.derivative();
    let t = Polynomial::t();
    let mut x = t.rem(chi);
    for _ in 0..=newton_bound(deg) {
        let fx = compose_mod(&f, &x, chi);
        if fx.is_zero() {
            let q = (&t - &x).rem(chi);
            return Ok((x, q));
        }
        let inv = compose_mod(&df, &x, chi)
            .inverse_mod(chi)
            .ok_or_else(|| Error::Internal("f'(x) not a unit modulo chi".into()))?;
        x = (&x - &(&fx * &inv)).rem(chi);
    }
    Err(Error::Internal("polynomial Newton iteration did not converge".into()))
}

fn compose_mod(p: &Polynomial, x: &Polynomial, m: &Polynomial) -> Polynomial {
    p.coeffs()
        .iter()
        .rev()
        .fold(Polynomial::zero(), |acc, c| {
            (&(&acc * x) + &Polynomial::constant(c.clone())).rem(m)
        })
}

/// Jordan parts through the explicit polynomials: `g_u = I + P(g)⁻¹·Q(g)`.
pub fn jordan_via_polynomials(g: &Matrix) -> Result<JordanParts> {
    let n = g.ensure_square()?;
    if g.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let (p, q) = jordan_polynomials(&g.char_poly()?)?;
    let s = p.eval_matrix(g);
    let s_inv = s
        .inverse()
        .map_err(|_| Error::Internal("P(g) singular".into()))?;
    let u = &Matrix::identity(n) + &(&s_inv * &q.eval_matrix(g));
    Ok(JordanParts {
        semisimple: s,
        unipotent: u,
    })
}

pub fn is_semisimple(g: &Matrix) -> Result<bool> {
    g.ensure_square()?;
    let f = g.char_poly()?.squarefree_part()?;
    Ok(f.eval_matrix(g).is_zero())
}

pub fn classify(g: &Matrix) -> Result<JordanClass> {
    let semisimple = is_semisimple(g)?;
    let unipotent = crate::affine::is_unipotent(g);
    Ok(match (semisimple, unipotent) {
        (true, true) => JordanClass::Identity,
        (true, false) => JordanClass::Semisimple,
        (false, true) => JordanClass::Unipotent,
        (false, false) => JordanClass::Mixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::scalar::Scalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_parts(g: &Matrix, parts: &JordanParts) {
        assert_eq!(&(&parts.semisimple * &parts.unipotent), g);
        assert_eq!(
            &parts.semisimple * &parts.unipotent,
            &parts.unipotent * &parts.semisimple
        );
        assert!(is_semisimple(&parts.semisimple).unwrap());
        assert!(crate::affine::is_unipotent(&parts.unipotent));
    }

    #[test]
    fn two_by_two_block() {
        let g = Matrix::from_i64(&[&[2, 1], &[0, 2]]);
        let parts = jordan_decompose(&g).unwrap();
        assert_eq!(parts.semisimple, Matrix::from_i64(&[&[2, 0], &[0, 2]]));
        assert_eq!(
            parts.unipotent,
            Matrix::from_rows(vec![
                vec![Scalar::one(), Scalar::ratio(1, 2)],
                vec![Scalar::zero(), Scalar::one()]
            ])
        );
        check_parts(&g, &parts);
    }

    #[test]
    fn unipotent_input() {
        let g = Matrix::from_i64(&[&[1, 3, 1], &[0, 1, -2], &[0, 0, 1]]);
        let parts = jordan_decompose(&g).unwrap();
        assert!(parts.semisimple.is_identity());
        assert_eq!(parts.unipotent, g);
    }

    #[test]
    fn sol_generator() {
        let l = Scalar::surd((3, 2), (1, 2), 5);
        let lb = l.conj();
        let c = Matrix::block_diag(&[
            Matrix::diagonal(&[l.clone(), lb.clone()]),
            Matrix::from_i64(&[&[1, 1], &[0, 1]]),
        ]);
        let parts = jordan_decompose(&c).unwrap();
        assert_eq!(parts.semisimple, Matrix::diagonal(&[l, lb, Scalar::one(), Scalar::one()]));
        let mut t = Matrix::identity(4);
        t[(2, 3)] = Scalar::one();
        assert_eq!(parts.unipotent, t);
        check_parts(&c, &parts);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(jordan_decompose(&Matrix::from_i64(&[&[0, 1], &[0, 0]])), Err(Error::Singular));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Matrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap(), JordanClass::Semisimple);
        assert_eq!(classify(&Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap(), JordanClass::Unipotent);
        assert_eq!(classify(&Matrix::from_i64(&[&[2, 1], &[0, 2]])).unwrap(), JordanClass::Mixed);
        assert_eq!(classify(&Matrix::identity(3)).unwrap(), JordanClass::Identity);
        assert!(classify(&Matrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn rotation_blocks_are_semisimple() {
        // irreducible over Q: the semisimple part is not diagonalizable here
        let r = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        let s = Matrix::block_diag(&[r.clone(), r.clone()]);
        let mut u = Matrix::identity(4);
        for i in 0..2 {
            for j in 0..2 {
                u[(i, 2 + j)] = &r[(i, j)] + &Scalar::from_int(if i == j { 2 } else { 0 });
            }
        }
        assert_eq!(&s * &u, &u * &s);
        let g = &s * &u;
        let parts = jordan_decompose(&g).unwrap();
        assert_eq!(parts.semisimple, s);
        assert_eq!(parts.unipotent, u);
    }

    #[test]
    fn polynomial_route_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let quadratic = rand::Rng::gen_bool(&mut rng, 0.5);
            let (g, s, u) = samples::random_jordan_instance(&mut rng, 4, quadratic);
            let a = jordan_decompose(&g).unwrap();
            let b = jordan_via_polynomials(&g).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.semisimple, s);
            assert_eq!(a.unipotent, u);
        }
    }

    #[test]
    fn conjugation_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let g = samples::random_invertible(&mut rng, 3, 3);
            let h = samples::random_invertible(&mut rng, 3, 2);
            let hi = h.inverse().unwrap();
            let pg = jordan_decompose(&g).unwrap();
            let ph = jordan_decompose(&(&(&h * &g) * &hi)).unwrap();
            assert_eq!(ph.semisimple, &(&h * &pg.semisimple) * &hi);
            assert_eq!(ph.unipotent, &(&h * &pg.unipotent) * &hi);
        }
    }
}
