//! Search for a nonsingular element of a linear space of matrices.
//!
//! `det(Σ tᵢ·Bᵢ)` is a polynomial of total degree at most `size` in the
//! `tᵢ`. A nonzero polynomial of that degree cannot vanish on the full grid
//! `{0, …, size}^k`, so for `k ≤ cap` an exhaustive grid scan decides
//! existence. Above the cap, seeded random integer points are sampled and a
//! negative answer is reported as uncertified.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par::{self, Parallelism};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest space dimension scanned exhaustively.
    pub cap: usize,
    /// Seed for the sampling used above the cap.
    pub seed: u64,
    /// Random samples drawn above the cap.
    pub samples: usize,
    pub parallelism: Parallelism,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: 4,
            seed: 0x5eed,
            samples: 64,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonsingularSearch {
    pub element: Option<Matrix>,
    pub coefficients: Option<Vec<Scalar>>,
    /// `true` when the answer is proven; `false` only for a `None` found by sampling.
    pub certified: bool,
    pub points_tried: usize,
    pub exhaustive: bool,
}

fn combine(space: &[Matrix], t: &[Scalar]) -> Matrix {
    let (r, c) = (space[0].rows(), space[0].cols());
    space
        .iter()
        .zip(t)
        .filter(|(_, c)| !c.is_zero())
        .fold(Matrix::zeros(r, c), |acc, (b, c)| &acc + &b.scale(c))
}

/// Grid points of `{0..=max}^k` ordered by coordinate sum, then lexicographically.
pub fn grid_points(k: usize, max: i64) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    pts.sort_by_key(|p| (p.iter().sum::<i64>(), p.clone()));
    pts
}

pub fn nonsingular_element(space: &[Matrix], opts: &SearchOptions) -> Result<NonsingularSearch> {
    let first = space
        .first()
        .ok_or_else(|| Error::Empty("matrix space".into()))?;
    let size = first.ensure_square()?;
    if space.iter().any(|m| m.rows() != size || m.cols() != size) {
        return Err(Error::DimensionMismatch("matrices of different sizes".into()));
    }
    let k = space.len();
    let test = |t: &Vec<i64>| {
        let ts: Vec<Scalar> = t.iter().map(|&x| Scalar::from_int(x)).collect();
        let m = combine(space, &ts);
        match m.det() {
            Ok(d) if !d.is_zero() => Some((m, ts)),
            _ => None,
        }
    };
    let (points, exhaustive) = if k <= opts.cap {
        (grid_points(k, size as i64), true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let bound = 4 * size as i64;
        let mut pts: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        pts.extend((0..opts.samples).map(|_| (0..k).map(|_| rng.gen_range(-bound..=bound)).collect()));
        (pts, false)
    };
    let hit = par::find_map_first(&points, opts.parallelism, test);
    Ok(match hit {
        Some((m, ts)) => NonsingularSearch {
            element: Some(m),
            coefficients: Some(ts),
            certified: true,
            points_tried: points.len(),
            exhaustive,
        },
        None => NonsingularSearch {
            element: None,
            coefficients: None,
            certified: exhaustive,
            points_tried: points.len(),
            exhaustive,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_space() {
        let r = nonsingular_element(&[Matrix::identity(2)], &SearchOptions::default()).unwrap();
        assert_eq!(r.element, Some(Matrix::identity(2)));
    }

    #[test]
    fn nilpotent_line_has_none() {
        let r = nonsingular_element(&[Matrix::from_i64(&[&[0, 1], &[0, 0]])], &SearchOptions::default()).unwrap();
        assert!(r.element.is_none());
        assert!(r.certified);
    }

    #[test]
    fn needs_a_combination() {
        let a = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let b = Matrix::from_i64(&[&[0, 0], &[0, 1]]);
        let r = nonsingular_element(&[a, b], &SearchOptions::default()).unwrap();
        assert!(!r.element.unwrap().det().unwrap().is_zero());
        assert_eq!(r.coefficients.unwrap(), vec![Scalar::one(), Scalar::one()]);
    }

    #[test]
    fn empty_space_is_an_error() {
        assert!(nonsingular_element(&[], &SearchOptions::default()).is_err());
    }

    #[test]
    fn above_cap_is_uncertified() {
        let z = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let opts = SearchOptions { cap: 0, ..SearchOptions::default() };
        let r = nonsingular_element(&[z.clone(), z], &opts).unwrap();
        assert!(r.element.is_none());
        assert!(!r.certified);
    }

    #[test]
    fn grid_order() {
        let g = grid_points(2, 2);
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], vec![0, 0]);
        assert_eq!(g[1], vec![0, 1]);
        assert_eq!(g[2], vec![1, 0]);
    }

    #[test]
    fn modes_agree() {
        let a = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let b = Matrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let c = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 1]]);
        let space = [a, b, c];
        let seq = nonsingular_element(&space, &SearchOptions { parallelism: Parallelism::Sequential, ..Default::default() }).unwrap();
        let par = nonsingular_element(&space, &SearchOptions { parallelism: Parallelism::Parallel, ..Default::default() }).unwrap();
        assert_eq!(seq, par);
    }
}
