//! Exact scalars in ℚ or a real quadratic field ℚ(√d).
//!
//! A [`Scalar`] is `a + b√d` with rational `a`, `b`. Rational values carry
//! `d = 0`, so they combine freely with values from any quadratic field.
//! Two irrational values from different fields never meet in one
//! computation; doing so is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    /// ℚ(√d) with `d > 1` square-free.
    Quadratic(u64),
}

impl Field {
    pub fn quadratic(d: u64) -> Result<Field> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!(
                "discriminant {d} must be a square-free integer greater than 1"
            )));
        }
        Ok(Field::Quadratic(d))
    }

    pub fn discriminant(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Quadratic(d) => Some(d),
        }
    }

    /// Smallest field containing both, or `None` for two distinct quadratic fields.
    pub fn join(self, other: Field) -> Option<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Some(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Some(self),
            _ => None,
        }
    }

    /// `√d` in this field.
    pub fn sqrt_d(self) -> Option<Scalar> {
        self.discriminant()
            .map(|d| Scalar::quadratic(BigRational::zero(), BigRational::one(), d))
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// An exact element `rat + irr·√d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: BigRational,
    irr: BigRational,
    // 0 exactly when `irr` is zero
    d: u64,
}

fn join_d(a: u64, b: u64) -> u64 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        (x, y) if x == y => x,
        (x, y) => panic!("cannot combine elements of Q(sqrt {x}) and Q(sqrt {y})"),
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational `p/q`. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar {
            rat: r,
            irr: BigRational::zero(),
            d: 0,
        }
    }

    /// `a + b√d`; `d` is not validated here, see [`Field::quadratic`].
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Scalar {
        let mut s = Scalar { rat: a, irr: b, d };
        s.normalize();
        s
    }

    /// Convenience constructor `(a_num/a_den) + (b_num/b_den)√d`.
    pub fn surd(a: (i64, i64), b: (i64, i64), d: u64) -> Scalar {
        Scalar::quadratic(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            d,
        )
    }

    fn normalize(&mut self) {
        if self.irr.is_zero() || self.d == 0 {
            self.irr = BigRational::zero();
            self.d = 0;
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.irr
    }

    /// The smallest field containing this value.
    pub fn field(&self) -> Field {
        if self.d == 0 {
            Field::Rational
        } else {
            Field::Quadratic(self.d)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rat)
    }

    /// Galois conjugate `a − b√d`.
    pub fn conj(&self) -> Scalar {
        Scalar {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        &self.rat * &self.rat - d * &self.irr * &self.irr
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Scalar {
            rat: &self.rat / &n,
            irr: -(&self.irr / &n),
            d: self.d,
        })
    }

    /// Sign of the real number `a + b√d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.rat.cmp(&BigRational::zero());
        let sb = self.irr.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let d = BigRational::from_integer(BigInt::from(self.d));
        let a2 = &self.rat * &self.rat;
        let db2 = d * &self.irr * &self.irr;
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Rough magnitude, for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.irr.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `"p"` or `"p/q"`.
    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidField(format!("cannot parse rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::from_rational(BigRational::new(num, den)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if !self.rat.is_zero() {
            write!(f, "{}", self.rat)?;
            if self.irr.is_positive() {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt{}", self.irr, self.d)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -self.rat.clone(),
            irr: -self.irr.clone(),
            d: self.d,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = join_d(self.d, rhs.d);
        let mut s = Scalar {
            rat: &self.rat + &rhs.rat,
            irr: &self.irr + &rhs.irr,
            d,
        };
        s.normalize();
        s
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = join_d(self.d, rhs.d);
        let mut s = Scalar {
            rat: &self.rat - &rhs.rat,
            irr: &self.irr - &rhs.irr,
            d,
        };
        s.normalize();
        s
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = join_d(self.d, rhs.d);
        if d == 0 {
            return Scalar::from_rational(&self.rat * &rhs.rat);
        }
        let dd = BigRational::from_integer(BigInt::from(d));
        let mut s = Scalar {
            rat: &self.rat * &rhs.rat + dd * &self.irr * &rhs.irr,
            irr: &self.rat * &rhs.irr + &self.irr * &rhs.rat,
            d,
        };
        s.normalize();
        s
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden() -> (Scalar, Scalar) {
        // (3 ± √5)/2, roots of T² − 3T + 1
        (Scalar::surd((3, 2), (1, 2), 5), Scalar::surd((3, 2), (-1, 2), 5))
    }

    #[test]
    fn rationals_are_normalized() {
        let a = Scalar::ratio(2, -4);
        assert_eq!(a, Scalar::ratio(-1, 2));
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(Scalar::from_int(3).to_string(), "3");
        assert!(Scalar::quadratic(BigRational::one(), BigRational::zero(), 5).is_rational());
    }

    #[test]
    fn golden_ratio_norm() {
        let (l, lb) = golden();
        assert_eq!(&l * &lb, Scalar::one());
        assert_eq!(&l + &lb, Scalar::from_int(3));
        assert_eq!(l.conj(), lb);
        // λ² − 3λ + 1 = 0
        assert!((&l * &l - Scalar::from_int(3) * &l + Scalar::one()).is_zero());
    }

    #[test]
    fn inverse_and_division() {
        let (l, lb) = golden();
        assert_eq!(l.inv().unwrap(), lb);
        assert_eq!(&Scalar::one() / &l, lb);
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn sign_of_surds() {
        assert_eq!(Scalar::surd((3, 1), (-1, 1), 5).signum(), Ordering::Greater);
        assert_eq!(Scalar::surd((2, 1), (-1, 1), 5).signum(), Ordering::Less);
        assert_eq!(Scalar::surd((-3, 1), (1, 1), 5).signum(), Ordering::Less);
        assert_eq!(Scalar::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!("3/6".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert_eq!(" -7 ".parse::<Scalar>().unwrap(), Scalar::from_int(-7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_validation() {
        assert!(Field::quadratic(5).is_ok());
        assert!(Field::quadratic(8).is_err());
        assert!(Field::quadratic(1).is_err());
        assert_eq!(Field::Rational.join(Field::Quadratic(5)), Some(Field::Quadratic(5)));
        assert_eq!(Field::Quadratic(2).join(Field::Quadratic(5)), None);
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = Scalar::surd((0, 1), (1, 1), 2) + Scalar::surd((0, 1), (1, 1), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn conjugate_product_is_norm(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let x = Scalar::surd((an, ad), (bn, bd), 5);
            let lhs = &x * &x.conj();
            let a = Scalar::ratio(an, ad);
            let b = Scalar::ratio(bn, bd);
            let rhs = &a * &a - Scalar::from_int(5) * &b * &b;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_axioms(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20) {
            let x = Scalar::surd((a, 3), (b, 2), 5);
            let y = Scalar::surd((c, 1), (e, 7), 5);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x);
            }
        }
    }
}
