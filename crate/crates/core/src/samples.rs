//! Random and named instances for tests, benches and examples.
//!
//! Everything here is deterministic given the RNG state.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::affine::{exp_nilpotent_matrix, AffineLieElement, AffineMap};
use crate::lie::{derivation_space, Grading, LieAlgebra, LinearRep};
use crate::matrix::{unit_vector, Matrix, Vector};
use crate::realization::{AutoSpec, ExtensionSpec};
use crate::rep::{conjugate, precompose, AffineRep};
use crate::scalar::{Field, Scalar};
use crate::shadow::PolycyclicRep;
use crate::torus::{apply_linear, ca_to_rep, grid_family, CAProduct};

fn small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Scalar {
    Scalar::from_int(rng.gen_range(-bound..=bound))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small(rng, bound))
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| small(rng, bound)).collect()
}

/// `L·D·U` with unit triangular `L`, `U` and diagonal entries in `{±1, ±2}`.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => small(rng, bound),
        std::cmp::Ordering::Equal => Scalar::one(),
        std::cmp::Ordering::Less => Scalar::zero(),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => small(rng, bound),
        std::cmp::Ordering::Equal => Scalar::one(),
        std::cmp::Ordering::Greater => Scalar::zero(),
    });
    let diag: Vec<Scalar> = (0..n)
        .map(|_| Scalar::from_int(*[1, -1, 2, -2].choose(rng).unwrap()))
        .collect();
    &(&lower * &Matrix::diagonal(&diag)) * &upper
}

pub fn random_affine<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> AffineMap {
    let a = random_invertible(rng, n, bound);
    let v = random_vector(rng, n, bound);
    AffineMap::new(&a, &v).expect("square")
}

fn strictly_upper<R: Rng + ?Sized>(rng: &mut R, size: usize, bound: i64) -> Matrix {
    Matrix::from_fn(size, size, |i, j| if i < j { small(rng, bound) } else { Scalar::zero() })
}

/// `h·N·h⁻¹` for a random strictly upper triangular `N` and affine `h`.
pub fn random_nilpotent_affine<R: Rng + ?Sized>(rng: &mut R, n: usize) -> AffineLieElement {
    let nil = strictly_upper(rng, n + 1, 2);
    let h = random_affine(rng, n, 1);
    let hi = h.inverse().expect("invertible");
    AffineLieElement::from_matrix(&(h.matrix() * &nil) * hi.matrix()).expect("affine shape")
}

/// `h·U·h⁻¹` for a random unit upper triangular `U`, built without `exp`.
pub fn random_unipotent_affine<R: Rng + ?Sized>(rng: &mut R, n: usize) -> AffineMap {
    let u = &Matrix::identity(n + 1) + &strictly_upper(rng, n + 1, 2);
    let h = random_affine(rng, n, 1);
    let hi = h.inverse().expect("invertible");
    AffineMap::from_matrix(&(h.matrix() * &u) * hi.matrix()).expect("affine shape")
}

fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let p = *[1, -1, 2, -2, 3, -3].choose(rng).unwrap();
    let q = *[1, 1, 2, 3].choose(rng).unwrap();
    Scalar::ratio(p, q)
}

fn nonzero_surd<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let a = rng.gen_range(-2..=2);
    let b = *[1, -1, 2].choose(rng).unwrap();
    Scalar::surd((a, *[1, 2].choose(rng).unwrap()), (b, 2), 5)
}

/// `(h·s·u·h⁻¹, h·s·h⁻¹, h·u·h⁻¹)` with commuting semisimple `s` and unipotent `u`.
///
/// `s` is block diagonal with scalar blocks (rational, or in ℚ(√5) when
/// `quadratic` holds) and companion blocks of irreducible quadratics; `u`
/// commutes with each block by construction.
pub fn random_jordan_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, quadratic: bool) -> (Matrix, Matrix, Matrix) {
    let companions = [
        Matrix::from_i64(&[&[0, -1], &[1, 0]]),
        Matrix::from_i64(&[&[0, -1], &[1, 1]]),
        Matrix::from_i64(&[&[1, -2], &[1, 1]]),
    ];
    let mut s_blocks = Vec::new();
    let mut u_blocks = Vec::new();
    let mut left = n;
    let mut first = true;
    while left > 0 {
        let want_companion = left >= 2 && !(first && quadratic) && rng.gen_bool(0.35);
        if want_companion {
            let r = companions.choose(rng).unwrap().clone();
            if left >= 4 && rng.gen_bool(0.5) {
                // [[R, P], [0, R]]·[[I, R⁻¹P], [0, I]] with P a polynomial in R
                let p = &r.scale(&small(rng, 2)) + &Matrix::identity(2).scale(&small(rng, 2));
                let s = Matrix::block_diag(&[r.clone(), r.clone()]);
                let mut u = Matrix::identity(4);
                for i in 0..2 {
                    for j in 0..2 {
                        u[(i, 2 + j)] = p[(i, j)].clone();
                    }
                }
                s_blocks.push(s);
                u_blocks.push(u);
                left -= 4;
            } else {
                s_blocks.push(r);
                u_blocks.push(Matrix::identity(2));
                left -= 2;
            }
        } else {
            let b = rng.gen_range(1..=left.min(3));
            let lambda = if quadratic && (first || rng.gen_bool(0.5)) {
                nonzero_surd(rng)
            } else {
                nonzero_rational(rng)
            };
            s_blocks.push(Matrix::identity(b).scale(&lambda));
            u_blocks.push(&Matrix::identity(b) + &strictly_upper(rng, b, 2));
            left -= b;
        }
        first = false;
    }
    let s = Matrix::block_diag(&s_blocks);
    let u = Matrix::block_diag(&u_blocks);
    let h = random_invertible(rng, n, 2);
    let hi = h.inverse().expect("invertible");
    let conj = |m: &Matrix| &(&h * m) * &hi;
    (conj(&(&s * &u)), conj(&s), conj(&u))
}

/// Samples automorphisms of a nilpotent Lie algebra as products of
/// exponentials of strictly triangular derivations and diagonal scalings.
#[derive(Clone, Debug)]
pub struct AutomorphismSampler {
    n: usize,
    upper: Vec<Matrix>,
    lower: Vec<Matrix>,
    diagonal: Vec<Vec<i64>>,
}

fn restrict(space: &[Matrix], keep: impl Fn(usize, usize) -> bool) -> Vec<Matrix> {
    if space.is_empty() {
        return Vec::new();
    }
    let n = space[0].rows();
    let rows: Vec<Vector> = (0..n)
        .flat_map(|k| (0..n).map(move |j| (k, j)))
        .filter(|&(k, j)| !keep(k, j))
        .map(|(k, j)| space.iter().map(|b| b[(k, j)].clone()).collect())
        .collect();
    let coeffs: Vec<Vector> = if rows.is_empty() {
        (0..space.len()).map(|i| unit_vector(space.len(), i)).collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    coeffs
        .iter()
        .map(|c| {
            space
                .iter()
                .zip(c)
                .fold(Matrix::zeros(n, n), |acc, (b, x)| &acc + &b.scale(x))
        })
        .collect()
}

fn integral(v: &[Scalar]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    let denom = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| {
        let r = x.as_rational().expect("rational derivation");
        num_integer::Integer::lcm(&acc, r.denom())
    });
    v.iter()
        .map(|x| {
            let r = x.as_rational().unwrap() * num_rational::BigRational::from_integer(denom.clone());
            r.to_integer().to_i64().expect("small exponent")
        })
        .collect()
}

impl AutomorphismSampler {
    pub fn new(l: &LieAlgebra) -> AutomorphismSampler {
        AutomorphismSampler::with_mask(l, |_, _| true)
    }

    /// Only automorphisms preserving the grading.
    pub fn graded(l: &LieAlgebra, g: &Grading) -> AutomorphismSampler {
        let w = g.weights.clone();
        AutomorphismSampler::with_mask(l, move |k, j| w[k] == w[j])
    }

    /// Factors are drawn from derivations supported on entries `(k, j)` with `allowed(k, j)`.
    pub fn with_mask(l: &LieAlgebra, allowed: impl Fn(usize, usize) -> bool) -> AutomorphismSampler {
        let der = derivation_space(&LinearRep::adjoint(l)).expect("adjoint is a representation");
        let upper = restrict(&der, |k, j| k < j && allowed(k, j));
        let lower = restrict(&der, |k, j| k > j && allowed(k, j));
        let diagonal = restrict(&der, |k, j| k == j && allowed(k, j))
            .iter()
            .map(|d| integral(&(0..l.dim()).map(|i| d[(i, i)].clone()).collect::<Vec<_>>()))
            .collect();
        AutomorphismSampler {
            n: l.dim(),
            upper,
            lower,
            diagonal,
        }
    }

    fn exp_factor<R: Rng + ?Sized>(&self, rng: &mut R, basis: &[Matrix]) -> Matrix {
        let d = basis
            .iter()
            .fold(Matrix::zeros(self.n, self.n), |acc, b| &acc + &b.scale(&small(rng, 2)));
        exp_nilpotent_matrix(&d).expect("strictly triangular")
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        let mut phi = Matrix::identity(self.n);
        for d in &self.diagonal {
            let lambda = *[(1, 1), (-1, 1), (2, 1), (1, 2), (-2, 1)].choose(rng).unwrap();
            let lambda = Scalar::ratio(lambda.0, lambda.1);
            let entries: Vec<Scalar> = d
                .iter()
                .map(|&e| {
                    let p = lambda.pow(e.unsigned_abs() as u32);
                    if e < 0 {
                        p.inv().expect("nonzero")
                    } else {
                        p
                    }
                })
                .collect();
            phi = &phi * &Matrix::diagonal(&entries);
        }
        for basis in [&self.upper, &self.lower, &self.upper] {
            phi = &phi * &self.exp_factor(rng, basis);
        }
        phi
    }
}

/// A random 2- or 3-dimensional (or larger) commutative associative
/// nilpotent product, transported by a random linear map.
pub fn random_ca_product<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CAProduct {
    let base = if n == 2 && rng.gen_bool(0.5) {
        grid_family(&small(rng, 2), &small(rng, 2))
    } else {
        ca_family(n, rng.gen_range(0..4))
    };
    apply_linear(&base, &random_invertible(rng, n, 2)).expect("invertible")
}

/// Named products: 0 zero; 1 `eᵢ∘eⱼ = e_{i+j}`; 2 `eᵢ∘eᵢ = eₙ` for `i < n`;
/// 3 `e₁∘e₁ = eₙ` only.
pub fn ca_family(n: usize, kind: usize) -> CAProduct {
    let mut entries = Vec::new();
    match kind {
        1 => {
            for i in 0..n {
                for j in i..n {
                    if i + j + 1 < n {
                        entries.push((i, j, unit_vector(n, i + j + 1)));
                    }
                }
            }
        }
        2 => {
            for i in 0..n.saturating_sub(1) {
                entries.push((i, i, unit_vector(n, n - 1)));
            }
        }
        3 if n >= 2 => entries.push((0, 0, unit_vector(n, n - 1))),
        _ => {}
    }
    CAProduct::from_entries(n, &entries).expect("valid family")
}

fn algebras_up_to(max_dim: usize) -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = (1..=max_dim.min(4)).map(LieAlgebra::abelian).collect();
    if max_dim >= 3 {
        out.push(LieAlgebra::heisenberg(1));
    }
    if max_dim >= 4 {
        out.push(LieAlgebra::filiform(4));
    }
    if max_dim >= 5 {
        out.push(LieAlgebra::heisenberg(2));
        out.push(LieAlgebra::free_three_step_quotient());
    }
    out
}

/// A random valid unipotent affine representation of dimension at most `max_dim`.
///
/// Built from a pair `(φ, D)` with `φ` one of `ad`, `½·ad` or the left
/// multiplications of a product, and `D` a random element of the derivation
/// space for `φ` (possibly singular), then conjugated by a random affine map
/// and precomposed with a random automorphism.
pub fn random_rep<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> AffineRep {
    let algebras = algebras_up_to(max_dim);
    let l = algebras.choose(rng).unwrap().clone();
    let n = l.dim();
    let phi = if l.is_abelian() {
        let c = if n <= 3 && rng.gen_bool(0.7) {
            random_ca_product(rng, n)
        } else {
            ca_family(n, rng.gen_range(0..4))
        };
        LinearRep::new(l.clone(), (0..n).map(|i| c.left_mult(i)).collect()).expect("products give representations")
    } else if l.validate().unwrap().class <= 2 && rng.gen_bool(0.5) {
        LinearRep::scaled_adjoint(&l, &Scalar::ratio(1, 2)).unwrap()
    } else {
        LinearRep::adjoint(&l)
    };
    let space = derivation_space(&phi).unwrap();
    let d = space
        .iter()
        .fold(Matrix::zeros(n, n), |acc, b| &acc + &b.scale(&small(rng, 2)));
    let rep = AffineRep::from_pair(l.clone(), phi.ops(), &d).expect("pair gives a representation");
    let rep = conjugate(&rep, &random_affine(rng, n, 1)).unwrap();
    let aut = if l.is_abelian() {
        random_invertible(rng, n, 1)
    } else {
        AutomorphismSampler::new(&l).sample(rng)
    };
    precompose(&rep, &aut).unwrap()
}

/// Random generators: a supplement of one or two maps with nontrivial
/// Jordan parts, then one or two unipotent maps.
pub fn random_polycyclic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PolycyclicRep {
    let quadratic = rng.gen_bool(0.3);
    let s = rng.gen_range(1..=2);
    let f = rng.gen_range(1..=2);
    let mut gens = Vec::new();
    for _ in 0..s {
        let (g, _, _) = random_jordan_instance(rng, n, quadratic);
        gens.push(AffineMap::new(&g, &random_vector(rng, n, 2)).unwrap());
    }
    for _ in 0..f {
        gens.push(random_unipotent_affine(rng, n));
    }
    let field = if quadratic { Field::Quadratic(5) } else { Field::Rational };
    PolycyclicRep::new(n, field, gens, s).expect("valid generators")
}

/// `λ = (3 + √5)/2`.
pub fn golden_square() -> Scalar {
    Scalar::surd((3, 2), (1, 2), 5)
}

/// The Sol lattice in ℚ(√5)³: `c = (diag(λ, λ̄, 1), e₃)` and the translations
/// `(1, 1, 0)`, `(λ, λ̄, 0)`, a lattice preserved by `diag(λ, λ̄)`.
pub fn sol_rep() -> PolycyclicRep {
    let l = golden_square();
    let lb = l.conj();
    let c = AffineMap::new(
        &Matrix::diagonal(&[l.clone(), lb.clone(), Scalar::one()]),
        &unit_vector(3, 2),
    )
    .unwrap();
    let a = AffineMap::translation(&[Scalar::one(), Scalar::one(), Scalar::zero()]);
    let b = AffineMap::translation(&[l, lb, Scalar::zero()]);
    PolycyclicRep::new(3, Field::Quadratic(5), vec![c, a, b], 1).unwrap()
}

fn plane_translations() -> AffineRep {
    ca_to_rep(&CAProduct::zero(2)).unwrap()
}

fn reflection() -> Matrix {
    Matrix::from_i64(&[&[1, 0], &[0, -1]])
}

/// Wallpaper group pm: `q a q⁻¹ a⁻¹`, `q b q⁻¹ b`, `q²`; the lift is found.
pub fn pm_spec() -> ExtensionSpec {
    ExtensionSpec::new(
        plane_translations(),
        vec![AutoSpec {
            phi: reflection(),
            order: 2,
            lift: None,
        }],
        vec![vec![1, 2, -1, -2], vec![1, 3, -1, 3], vec![1, 1]],
    )
    .unwrap()
}

/// Klein bottle group: `q a q⁻¹ a⁻¹`, `q b q⁻¹ b`, `q² a⁻¹`, with the glide
/// reflection `(diag(1, −1), (½, 0))` as lift.
pub fn klein_spec() -> ExtensionSpec {
    let glide = AffineMap::new(&reflection(), &[Scalar::ratio(1, 2), Scalar::zero()]).unwrap();
    ExtensionSpec::new(
        plane_translations(),
        vec![AutoSpec {
            phi: reflection(),
            order: 2,
            lift: Some(glide),
        }],
        vec![vec![1, 2, -1, -2], vec![1, 3, -1, 3], vec![1, 1, -2]],
    )
    .unwrap()
}
