//! Simultaneous strict triangularization of a set of matrices.
//!
//! Builds the flag `0 = V₀ ⊂ V₁ ⊂ …` with `V_{j+1} = {v : M·v ∈ V_j for all M}`.
//! The flag reaches the whole space exactly when the Lie algebra generated by
//! the inputs consists of nilpotent matrices.

use crate::matrix::{greedy_extension, Matrix, Vector};

/// A basis (the columns of `basis`) in which every input is strictly upper
/// triangular. `dims[j]` is the dimension of the j-th flag space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngelFlag {
    pub basis: Matrix,
    pub dims: Vec<usize>,
}

impl EngelFlag {
    /// `P⁻¹·m·P` for the flag basis `P`.
    pub fn in_flag_basis(&self, m: &Matrix) -> Matrix {
        let inv = self.basis.inverse().expect("flag basis is invertible");
        &(&inv * m) * &self.basis
    }
}

/// Returns `None` when some element of the generated Lie algebra is not nilpotent.
pub fn engel_flag(ms: &[Matrix]) -> Option<EngelFlag> {
    let size = {
        let m = ms.first()?;
        m.rows()
    };
    assert!(
        ms.iter().all(|m| m.rows() == size && m.cols() == size),
        "engel_flag needs square matrices of one size"
    );
    // rows of `ann` cut out the current flag space
    let mut ann = Matrix::identity(size);
    let mut ordered: Vec<Vector> = Vec::new();
    let mut dims = vec![0];
    while ordered.len() < size {
        let stacked: Vec<Vec<_>> = ms
            .iter()
            .flat_map(|m| (&ann * m).to_rows())
            .collect();
        let next = Matrix::from_rows(stacked).nullspace();
        if next.len() <= ordered.len() {
            return None;
        }
        let fresh = greedy_extension(&ordered, &next);
        ordered.extend(fresh);
        dims.push(ordered.len());
        let span = Matrix::from_columns(&ordered);
        let ann_rows = span.transpose().nullspace();
        ann = if ann_rows.is_empty() {
            Matrix::zeros(1, size)
        } else {
            Matrix::from_rows(ann_rows)
        };
    }
    Some(EngelFlag {
        basis: Matrix::from_columns(&ordered),
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::scheuneman::two_step_rep;

    #[test]
    fn single_nilpotent() {
        let flag = engel_flag(&[Matrix::from_i64(&[&[0, 1], &[0, 0]])]).unwrap();
        assert_eq!(flag.dims, vec![0, 1, 2]);
    }

    #[test]
    fn diagonal_fails() {
        assert!(engel_flag(&[Matrix::from_i64(&[&[1, 0], &[0, -1]])]).is_none());
    }

    #[test]
    fn nilpotent_elements_generating_sl2_fail() {
        // e and f are nilpotent but [e, f] is not
        let e = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let f = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert!(engel_flag(&[e, f]).is_none());
    }

    #[test]
    fn heisenberg_two_step_images() {
        let rep = two_step_rep(&LieAlgebra::heisenberg(1)).unwrap();
        let ms: Vec<Matrix> = rep.images().iter().map(|y| y.matrix().clone()).collect();
        let flag = engel_flag(&ms).unwrap();
        for m in &ms {
            assert!(flag.in_flag_basis(m).is_strictly_upper());
        }
    }

    #[test]
    fn lower_triangular_input() {
        let a = Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[2, 3, 0]]);
        let b = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[5, 0, 0]]);
        let flag = engel_flag(&[a.clone(), b.clone()]).unwrap();
        assert!(flag.in_flag_basis(&a).is_strictly_upper());
        assert!(flag.in_flag_basis(&b).is_strictly_upper());
    }
}
