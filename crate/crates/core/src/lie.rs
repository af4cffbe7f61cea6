//! Nilpotent Lie algebras given by structure constants on a fixed basis
//! `X₁ … Xₙ`, their linear representations, derivations and gradings.
//!
//! Indices are 0-based throughout the library.

use crate::error::{Error, Result};
use crate::matrix::{greedy_extension, in_span, span_basis, unit_vector, Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// Structure constants `[Xᵢ, Xⱼ] = Σ_k c_{ij}^k X_k`, stored for `i < j` only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    n: usize,
    field: Field,
    consts: Vec<Vector>,
}

/// Result of [`LieAlgebra::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieStructure {
    pub class: usize,
    /// `𝔲 ⊇ [𝔲,𝔲] ⊇ …`, each term as an echelon basis, ending with the zero space.
    pub lcs: Vec<Vec<Vector>>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    pub fn abelian(n: usize) -> LieAlgebra {
        LieAlgebra::zero_brackets(n, Field::Rational)
    }

    pub fn zero_brackets(n: usize, field: Field) -> LieAlgebra {
        LieAlgebra {
            n,
            field,
            consts: vec![vec![Scalar::zero(); n]; n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds from `(i, j, [c_{ij}^1 … c_{ij}^n])` triples; `(j, i)` entries are
    /// stored with the sign flipped. Jacobi is not checked here.
    pub fn new(n: usize, field: Field, brackets: &[(usize, usize, Vector)]) -> Result<LieAlgebra> {
        let mut l = LieAlgebra::zero_brackets(n, field);
        for (i, j, c) in brackets {
            l.set_bracket(*i, *j, c.clone())?;
        }
        Ok(l)
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, c: Vector) -> Result<()> {
        let n = self.n;
        if i >= n || j >= n || c.len() != n {
            return Err(Error::InvalidStructure(format!(
                "bracket ({i},{j}) with {} coefficients in dimension {n}",
                c.len()
            )));
        }
        if i == j {
            if c.iter().all(Scalar::is_zero) {
                return Ok(());
            }
            return Err(Error::InvalidStructure(format!("[X{i}, X{i}] must vanish")));
        }
        for x in &c {
            if self.field.join(x.field()) != Some(self.field) {
                return Err(Error::InvalidField(format!("coefficient {x} outside {:?}", self.field)));
            }
        }
        if i < j {
            self.consts[pair_index(n, i, j)] = c;
        } else {
            self.consts[pair_index(n, j, i)] = c.iter().map(|x| -x).collect();
        }
        Ok(())
    }

    /// `[Xᵢ, Xᵢ₊ₖ] = X_{2k+1}` for `i < k`: the Heisenberg algebra of dimension `2k+1`.
    pub fn heisenberg(k: usize) -> LieAlgebra {
        let n = 2 * k + 1;
        let mut l = LieAlgebra::abelian(n);
        for i in 0..k {
            l.set_bracket(i, k + i, unit_vector(n, n - 1)).unwrap();
        }
        l
    }

    /// Standard filiform algebra: `[X₁, Xᵢ] = Xᵢ₊₁` for `2 ≤ i < n`.
    pub fn filiform(n: usize) -> LieAlgebra {
        let mut l = LieAlgebra::abelian(n);
        for i in 1..n.saturating_sub(1) {
            l.set_bracket(0, i, unit_vector(n, i + 1)).unwrap();
        }
        l
    }

    /// Free 2-step nilpotent algebra on `m` generators.
    pub fn free_two_step(m: usize) -> LieAlgebra {
        let n = m + m * (m - 1) / 2;
        let mut l = LieAlgebra::abelian(n);
        let mut k = m;
        for i in 0..m {
            for j in i + 1..m {
                l.set_bracket(i, j, unit_vector(n, k)).unwrap();
                k += 1;
            }
        }
        l
    }

    /// The 5-dimensional class-3 algebra `[X₁,X₂]=X₃, [X₁,X₃]=X₄, [X₂,X₃]=X₅`.
    pub fn free_three_step_quotient() -> LieAlgebra {
        let mut l = LieAlgebra::abelian(5);
        l.set_bracket(0, 1, unit_vector(5, 2)).unwrap();
        l.set_bracket(0, 2, unit_vector(5, 3)).unwrap();
        l.set_bracket(1, 2, unit_vector(5, 4)).unwrap();
        l
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.consts[pair_index(self.n, i, j)].clone(),
            Greater => self.consts[pair_index(self.n, j, i)].iter().map(|x| -x).collect(),
            Equal => vec![Scalar::zero(); self.n],
        }
    }

    /// Nonzero brackets `(i, j, coeffs)` with `i < j`, in index order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let c = &self.consts[pair_index(self.n, i, j)];
                if c.iter().any(|x| !x.is_zero()) {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().flatten().all(Scalar::is_zero)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if i == j || y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for (o, c) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !c.is_zero() {
                        *o += &(&f * &c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_{Xᵢ}`: column `j` holds `[Xᵢ, Xⱼ]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.n).map(|j| self.bracket_basis(i, j)).collect();
        Matrix::from_columns(&cols)
    }

    pub fn ad_of(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.n)
            .map(|j| self.bracket(x, &unit_vector(self.n, j)))
            .collect();
        Matrix::from_columns(&cols)
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit_vector(n, i), unit_vector(n, j), unit_vector(n, k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The lower central series, stopping at zero or where it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Vec<Vector>> {
        let n = self.n;
        let mut series = vec![(0..n).map(|i| unit_vector(n, i)).collect::<Vec<_>>()];
        loop {
            let last = series.last().unwrap();
            if last.is_empty() {
                break;
            }
            let gens: Vec<Vector> = (0..n)
                .flat_map(|i| last.iter().map(move |v| (i, v)))
                .map(|(i, v)| self.bracket(&unit_vector(n, i), v))
                .collect();
            let next = span_basis(&gens, n);
            if next.len() == last.len() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Checks Jacobi and nilpotency; returns the class and the lower central series.
    pub fn validate(&self) -> Result<LieStructure> {
        self.check_jacobi()?;
        let lcs = self.lower_central_series();
        let last = lcs.last().unwrap();
        if !last.is_empty() {
            return Err(Error::NotNilpotentAlgebra(last.len()));
        }
        Ok(LieStructure {
            class: lcs.len() - 1,
            lcs,
        })
    }

    /// Whether `g` satisfies `g[X,Y] = [gX, gY]` and is invertible.
    pub fn is_automorphism(&self, g: &Matrix) -> Result<bool> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("{}x{} map on a {}-dimensional algebra", g.rows(), g.cols(), self.n)));
        }
        if g.det()?.is_zero() {
            return Ok(false);
        }
        Ok(self.preserves_brackets(g))
    }

    fn preserves_brackets(&self, g: &Matrix) -> bool {
        let cols: Vec<Vector> = (0..self.n).map(|i| g.column(i)).collect();
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| {
                g.mul_vec(&self.bracket_basis(i, j)) == self.bracket(&cols[i], &cols[j])
            })
        })
    }

    /// Whether `d` satisfies the Leibniz rule `d[X,Y] = [dX,Y] + [X,dY]`.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        let cols: Vec<Vector> = (0..self.n).map(|i| d.column(i)).collect();
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| {
                let lhs = d.mul_vec(&self.bracket_basis(i, j));
                let a = self.bracket(&cols[i], &unit_vector(self.n, j));
                let b = self.bracket(&unit_vector(self.n, i), &cols[j]);
                lhs.iter().zip(a.iter().zip(&b)).all(|(l, (x, y))| l == &(x + y))
            })
        })
    }

    /// Indices of basis vectors chosen greedily to complement `[𝔲, 𝔲]`; they generate 𝔲.
    pub fn generator_indices(&self) -> Vec<usize> {
        let n = self.n;
        let derived = self.lower_central_series().get(1).cloned().unwrap_or_default();
        let mut current = derived;
        let mut out = Vec::new();
        for i in 0..n {
            let e = unit_vector(n, i);
            if !in_span(&current, &e) {
                current.push(e);
                out.push(i);
            }
        }
        out
    }

    /// The unique endomorphism sending generator `Xᵢ` (for `i` in
    /// `generator_indices`) to `images[i]`, if it is an automorphism.
    pub fn extend_to_automorphism(&self, images: &[Vector]) -> Option<Matrix> {
        let n = self.n;
        let gens = self.generator_indices();
        if images.len() != gens.len() {
            return None;
        }
        let gen_pairs: Vec<(Vector, Vector)> = gens
            .iter()
            .zip(images)
            .map(|(&g, img)| (unit_vector(n, g), img.clone()))
            .collect();
        let mut all = gen_pairs.clone();
        let mut level = gen_pairs.clone();
        for _ in 0..n {
            let next: Vec<(Vector, Vector)> = gen_pairs
                .iter()
                .flat_map(|(g, gi)| {
                    level.iter().map(move |(a, ai)| (self.bracket(g, a), self.bracket(gi, ai)))
                })
                .filter(|(v, _)| v.iter().any(|x| !x.is_zero()))
                .collect();
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        // choose a basis among the words, then solve Φ·B = B′
        let mut chosen: Vec<usize> = Vec::new();
        let mut span: Vec<Vector> = Vec::new();
        for (idx, (v, _)) in all.iter().enumerate() {
            if !in_span(&span, v) {
                span.push(v.clone());
                chosen.push(idx);
            }
        }
        if span.len() != n {
            return None;
        }
        let b = Matrix::from_columns(&span);
        let bp = Matrix::from_columns(&chosen.iter().map(|&i| all[i].1.clone()).collect::<Vec<_>>());
        let phi = &bp * &b.inverse().ok()?;
        let consistent = all.iter().all(|(v, img)| &phi.mul_vec(v) == img);
        (consistent && self.is_automorphism(&phi).ok()?).then_some(phi)
    }
}

/// A positive grading: basis vector `Xᵢ` lies in `V_{weights[i]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading {
    pub weights: Vec<u32>,
}

impl Grading {
    pub fn new(weights: Vec<u32>) -> Grading {
        Grading { weights }
    }

    /// Checks positivity and `c_{ij}^k ≠ 0 ⇒ w_k = w_i + w_j`.
    pub fn check(&self, l: &LieAlgebra) -> Result<()> {
        if self.weights.len() != l.dim() {
            return Err(Error::InvalidGrading(format!(
                "{} weights for dimension {}",
                self.weights.len(),
                l.dim()
            )));
        }
        if let Some(i) = self.weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidGrading(format!("weight of X{} is not positive", i + 1)));
        }
        for (i, j, c) in l.nonzero_brackets() {
            for (k, x) in c.iter().enumerate() {
                if !x.is_zero() && self.weights[k] != self.weights[i] + self.weights[j] {
                    return Err(Error::InvalidGrading(format!(
                        "[X{}, X{}] has an X{} component but weights {} + {} != {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        self.weights[i],
                        self.weights[j],
                        self.weights[k]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The automorphism `v ↦ λ^w v` on `V_w`.
    pub fn scaling(&self, lambda: &Scalar) -> Matrix {
        let entries: Vec<Scalar> = self.weights.iter().map(|&w| lambda.pow(w)).collect();
        Matrix::diagonal(&entries)
    }
}

/// The derivation acting by `w` on `V_w`.
pub fn grading_derivation(l: &LieAlgebra, g: &Grading) -> Result<Matrix> {
    g.check(l)?;
    let entries: Vec<Scalar> = g.weights.iter().map(|&w| Scalar::from_int(i64::from(w))).collect();
    Ok(Matrix::diagonal(&entries))
}

/// A representation `φ: 𝔲 → 𝔤𝔩(V)` given by the images of the basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearRep {
    algebra: LieAlgebra,
    ops: Vec<Matrix>,
}

impl LinearRep {
    /// Checks shapes and the homomorphism identity `φ_{[Xᵢ,Xⱼ]} = [φᵢ, φⱼ]`.
    pub fn new(algebra: LieAlgebra, ops: Vec<Matrix>) -> Result<LinearRep> {
        if ops.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} operators for a {}-dimensional algebra",
                ops.len(),
                algebra.dim()
            )));
        }
        let m = ops.first().map_or(0, Matrix::rows);
        if ops.iter().any(|o| o.rows() != m || o.cols() != m) {
            return Err(Error::DimensionMismatch("operators of different sizes".into()));
        }
        let rep = LinearRep { algebra, ops };
        rep.validate()?;
        Ok(rep)
    }

    pub fn adjoint(l: &LieAlgebra) -> LinearRep {
        LinearRep {
            algebra: l.clone(),
            ops: (0..l.dim()).map(|i| l.ad(i)).collect(),
        }
    }

    /// `c·ad`; a representation for class ≤ 2 when `c ≠ 1`.
    pub fn scaled_adjoint(l: &LieAlgebra, c: &Scalar) -> Result<LinearRep> {
        LinearRep::new(l.clone(), (0..l.dim()).map(|i| l.ad(i).scale(c)).collect())
    }

    /// `X ↦ g·φ_X·g⁻¹`.
    pub fn conjugated(&self, g: &Matrix) -> Result<LinearRep> {
        let gi = g.inverse()?;
        Ok(LinearRep {
            algebra: self.algebra.clone(),
            ops: self.ops.iter().map(|o| &(g * o) * &gi).collect(),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    pub fn target_dim(&self) -> usize {
        self.ops.first().map_or(0, Matrix::rows)
    }

    pub fn op_of(&self, x: &[Scalar]) -> Matrix {
        let m = self.target_dim();
        self.ops
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .fold(Matrix::zeros(m, m), |acc, (o, c)| &acc + &o.scale(c))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.op_of(&self.algebra.bracket_basis(i, j));
                if lhs != self.ops[i].commutator(&self.ops[j]) {
                    return Err(Error::InvalidLinearRep(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Basis of `{D : D[X,Y] = φ_X·DY − φ_Y·DX}` for `D: 𝔲 → V`.
///
/// All basis pairs are stacked into one system in the `m·n` entries of `D`
/// (row-major) and solved with a single nullspace computation.
pub fn derivation_space(phi: &LinearRep) -> Result<Vec<Matrix>> {
    phi.validate()?;
    let l = phi.algebra();
    let n = l.dim();
    let m = phi.target_dim();
    let unknowns = m * n;
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = l.bracket_basis(i, j);
            for r in 0..m {
                let mut row = vec![Scalar::zero(); unknowns];
                // D·[Xi,Xj], row r
                for (col, ck) in c.iter().enumerate() {
                    if !ck.is_zero() {
                        row[r * n + col] += ck;
                    }
                }
                // − φ_i·D·e_j + φ_j·D·e_i, row r
                for s in 0..m {
                    let a = &phi.ops()[i][(r, s)];
                    if !a.is_zero() {
                        row[s * n + j] -= a;
                    }
                    let b = &phi.ops()[j][(r, s)];
                    if !b.is_zero() {
                        row[s * n + i] += b;
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok((0..unknowns)
            .map(|k| Matrix::from_vector(m, n, unit_vector(unknowns, k)))
            .collect());
    }
    let system = Matrix::from_rows(rows);
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_vector(m, n, v))
        .collect())
}

/// Whether `d` is a derivation for `φ`.
pub fn is_derivation_for(phi: &LinearRep, d: &Matrix) -> bool {
    let l = phi.algebra();
    let n = l.dim();
    if d.cols() != n || d.rows() != phi.target_dim() {
        return false;
    }
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = d.mul_vec(&l.bracket_basis(i, j));
            let a = phi.ops()[i].mul_vec(&d.column(j));
            let b = phi.ops()[j].mul_vec(&d.column(i));
            lhs.iter().zip(a.iter().zip(&b)).all(|(x, (p, q))| x == &(p - q))
        })
    })
}

/// `g⁻¹·φ_{gX}·g = φ_X` for every basis vector `X`.
pub fn check_compatible(phi: &LinearRep, g: &Matrix) -> Result<bool> {
    let l = phi.algebra();
    if phi.target_dim() != l.dim() {
        return Err(Error::DimensionMismatch("compatibility needs V = 𝔲".into()));
    }
    if !l.is_automorphism(g)? {
        return Err(Error::NotAutomorphism);
    }
    let gi = g.inverse()?;
    Ok((0..l.dim()).all(|i| {
        let lhs = &(&gi * &phi.op_of(&g.column(i))) * g;
        lhs == phi.ops()[i]
    }))
}

/// Echelon basis of the smallest Lie subalgebra of 𝔤𝔩 containing `ms`.
pub fn lie_closure(ms: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = ms.first() else {
        return Vec::new();
    };
    let (r, c) = (first.rows(), first.cols());
    let dim = r * c;
    let mut basis = span_basis(&ms.iter().map(Matrix::to_vector).collect::<Vec<_>>(), dim);
    loop {
        let mats: Vec<Matrix> = basis
            .iter()
            .map(|v| Matrix::from_vector(r, c, v.clone()))
            .collect();
        let mut new: Vec<Vector> = Vec::new();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let b = mats[i].commutator(&mats[j]).to_vector();
                let known: Vec<Vector> = basis.iter().chain(new.iter()).cloned().collect();
                if !in_span(&known, &b) {
                    new.push(b);
                }
            }
        }
        if new.is_empty() {
            return mats;
        }
        basis.extend(new);
        basis = span_basis(&basis, dim);
    }
}

/// Greedy basis-extension decomposition `𝔲 = V₁ ⊕ V₂ ⊕ …` compatible with the
/// lower central series: `V_last = 𝔲_last`, and each earlier `V_i` extends
/// `𝔲_{i+1}` to `𝔲_i`. Returns one basis per layer.
pub fn central_series_decomposition(l: &LieAlgebra) -> Vec<Vec<Vector>> {
    let lcs = l.lower_central_series();
    let nonzero: Vec<&Vec<Vector>> = lcs.iter().filter(|s| !s.is_empty()).collect();
    let mut layers: Vec<Vec<Vector>> = Vec::new();
    for (k, space) in nonzero.iter().enumerate() {
        let below: Vec<Vector> = nonzero.get(k + 1).map(|s| (*s).clone()).unwrap_or_default();
        let candidates: Vec<Vector> = if k == 0 {
            (0..l.dim()).map(|i| unit_vector(l.dim(), i)).collect()
        } else {
            (*space).clone()
        };
        layers.push(greedy_extension(&below, &candidates));
    }
    layers
}
