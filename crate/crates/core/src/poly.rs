//! Univariate polynomials with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::new(vec![c])
    }

    /// The indeterminate `T`.
    pub fn t() -> Polynomial {
        Polynomial::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                Polynomial::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `p(m)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let id = Matrix::identity(n);
        self.coeffs.iter().rev().fold(Matrix::zeros(n, n), |acc, c| {
            &(&acc * m) + &id.scale(c)
        })
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = &rem[rem.len() - 1] * &lc_inv;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let t = &f * c;
                rem[k + i] -= &t;
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse modulo `modulus`, if `self` is a unit there.
    pub fn inverse_mod(&self, modulus: &Polynomial) -> Option<Polynomial> {
        // extended Euclid tracking only the coefficient of `self`
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (Polynomial::zero(), Polynomial::constant(Scalar::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.coeffs[0].inv()?;
        Some(s0.scale(&inv).rem(modulus))
    }

    /// `p / gcd(p, p′)`, made monic: the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Scalar::zero();
        Polynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "T")?,
                1 => write!(f, "({c})T")?,
                _ if c.is_one() => write!(f, "T^{k}")?,
                _ => write!(f, "({c})T^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let p = Polynomial::from_i64(&[4, -4, 1]);
        assert_eq!(p.squarefree_part().unwrap(), Polynomial::from_i64(&[-2, 1]));
        let p = Polynomial::from_i64(&[0, 0, 1]);
        assert_eq!(p.squarefree_part().unwrap(), Polynomial::t());
        assert_eq!(Polynomial::zero().squarefree_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_sol_polynomial() {
        // (T² − 3T + 1)(T − 1)² → (T² − 3T + 1)(T − 1); expected value built by hand
        let quad = Polynomial::from_i64(&[1, -3, 1]);
        let lin = Polynomial::from_i64(&[-1, 1]);
        let p = &(&quad * &lin) * &lin;
        let expected = &quad * &lin;
        assert_eq!(expected, Polynomial::from_i64(&[-1, 4, -4, 1]));
        let sf = p.squarefree_part().unwrap();
        assert_eq!(sf, expected);
        assert_eq!(sf.gcd(&sf.derivative()), Polynomial::from_i64(&[1]));
    }

    #[test]
    fn division_identity() {
        let a = Polynomial::from_i64(&[3, 0, -2, 5, 1]);
        let b = Polynomial::from_i64(&[1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn modular_inverse() {
        let m = Polynomial::from_i64(&[1, 0, 1]);
        let a = Polynomial::from_i64(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).rem(&m), Polynomial::from_i64(&[1]));
        assert!(Polynomial::from_i64(&[-1, 1])
            .inverse_mod(&Polynomial::from_i64(&[1, -2, 1]))
            .is_none());
    }

    #[test]
    fn matrix_evaluation() {
        let m = Matrix::from_i64(&[&[2, 1], &[0, 2]]);
        let chi = m.char_poly().unwrap();
        assert!(chi.eval_matrix(&m).is_zero());
    }
}
