//! Lie algebras presented by exact structure constants.
//!
//! [`LieAlgebra`] is the general type: a bracket table validated against
//! antisymmetry and the Jacobi identity, with no nilpotency assumption (data
//! sets use semisimple algebras). [`NilLieAlgebra`] additionally computes the
//! nilpotency step from the lower central series and rejects non-nilpotent
//! input. Everything downstream (center, commutator, corank, the j-maps,
//! curvature) is derived from the constants; subspaces always carry explicit
//! bases in the ambient coordinates.

use crate::form::SymmetricForm;
use crate::matrix::{basis_vec, vec_is_zero, RatMatrix};
use crate::rat::Rat;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("bracket index out of range: ({i}, {j}) -> {k} with dim {dim}")]
    BadIndex { i: usize, j: usize, k: usize, dim: usize },
    #[error("bracket ({i}, {j}) given twice")]
    DuplicateBracket { i: usize, j: usize },
    #[error("brackets ({i}, {j}) and ({j}, {i}) are both given but are not antisymmetric")]
    AntisymmetryContradiction { i: usize, j: usize },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("lower central series does not reach zero: the algebra is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not invertible")]
    SingularBasisChange,
    #[error("commutator of generators does not lie in their span")]
    NotClosedUnderBracket,
}

/// One sparse bracket: `[e_i, e_j] = Σ coeffs[k]·e_k`, 0-based indices.
pub type BracketEntry = (usize, usize, Vec<(usize, Rat)>);

/// A finite-dimensional real Lie algebra over exact rational structure
/// constants: `[e_i, e_j] = Σ_k c_ij^k e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    /// `c[i][j]` = coordinates of `[e_i, e_j]`.
    c: Vec<Vec<Vec<Rat>>>,
}

impl LieAlgebra {
    /// Builds an algebra from a sparse bracket list; the mirror bracket is
    /// filled in by antisymmetry and contradictions are rejected.
    pub fn from_structure_constants(
        dim: usize,
        brackets: &[BracketEntry],
    ) -> Result<Self, AlgebraError> {
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        Self::from_structure_constants_named(dim, names, brackets)
    }

    pub fn from_structure_constants_named(
        dim: usize,
        basis_names: Vec<String>,
        brackets: &[BracketEntry],
    ) -> Result<Self, AlgebraError> {
        assert_eq!(basis_names.len(), dim);
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        let mut explicit = vec![vec![false; dim]; dim];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(AlgebraError::BadIndex { i, j, k: 0, dim });
            }
            if explicit[i][j] {
                return Err(AlgebraError::DuplicateBracket { i, j });
            }
            let mut v = vec![Rat::zero(); dim];
            for (k, coeff) in coeffs {
                if *k >= dim {
                    return Err(AlgebraError::BadIndex { i, j, k: *k, dim });
                }
                v[*k] = coeff.clone();
            }
            if i == j && !vec_is_zero(&v) {
                return Err(AlgebraError::AntisymmetryContradiction { i, j });
            }
            if explicit[j][i] {
                // the mirror was given too: antisymmetry is completed only
                // when absent, a mismatch is a contradiction
                if c[j][i].iter().zip(&v).any(|(m, x)| &-m.clone() != x) {
                    return Err(AlgebraError::AntisymmetryContradiction { i, j });
                }
            } else if i != j {
                c[j][i] = v.iter().map(|x| -x.clone()).collect();
            }
            c[i][j] = v;
            explicit[i][j] = true;
        }
        Self::from_full_constants(dim, basis_names, c)
    }

    /// Builds from a complete table `c[i][j][k]`, which must already be
    /// antisymmetric.
    pub fn from_full_constants(
        dim: usize,
        basis_names: Vec<String>,
        c: Vec<Vec<Vec<Rat>>>,
    ) -> Result<Self, AlgebraError> {
        for i in 0..dim {
            for j in 0..=i {
                for k in 0..dim {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(AlgebraError::AntisymmetryContradiction { i, j });
                    }
                }
            }
        }
        let alg = Self {
            dim,
            basis_names,
            c,
        };
        alg.verify_jacobi()?;
        Ok(alg)
    }

    /// Structure constants of a family of matrices that is closed under the
    /// commutator; the matrices become the basis.
    pub fn from_matrix_basis(mats: &[RatMatrix]) -> Result<Self, AlgebraError> {
        let dim = mats.len();
        let (rows, cols) = mats
            .first()
            .map(|m| (m.rows(), m.cols()))
            .unwrap_or((0, 0));
        // columns of `span` are the vectorized basis matrices
        let span = RatMatrix::from_fn(rows * cols, dim, |r, i| {
            mats[i].at(r / cols, r % cols).clone()
        });
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let comm = crate::matrix::commutator(&mats[i], &mats[j]);
                let vec: Vec<Rat> = (0..rows * cols)
                    .map(|r| comm.at(r / cols, r % cols).clone())
                    .collect();
                c[i][j] = span
                    .solve(&vec)
                    .ok_or(AlgebraError::NotClosedUnderBracket)?;
            }
        }
        let names = (1..=dim).map(|i| format!("x{i}")).collect();
        Self::from_full_constants(dim, names, c)
    }

    fn verify_jacobi(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket_with_basis(&self.c[j][k], i);
                    let b = self.bracket_with_basis(&self.c[k][i], j);
                    let d = self.bracket_with_basis(&self.c[i][j], k);
                    let sum: Vec<Rat> = a
                        .iter()
                        .zip(&b)
                        .zip(&d)
                        .map(|((x, y), z)| x + y + z)
                        .collect();
                    if !vec_is_zero(&sum) {
                        return Err(AlgebraError::JacobiViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[e_i, v]` for a coordinate vector `v`.
    fn bracket_with_basis(&self, v: &[Rat], i: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for k in 0..self.dim {
                if !self.c[i][j][k].is_zero() {
                    out[k] = &out[k] + &(vj * &self.c[i][j][k]);
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Structure constant `c_ij^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    /// Exact bilinear bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim, "bracket operand dimension");
        assert_eq!(y.len(), self.dim, "bracket operand dimension");
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] = &out[k] + &(&f * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(x): y ↦ [x, y]`.
    pub fn ad(&self, x: &[Rat]) -> RatMatrix {
        RatMatrix::from_columns(
            &(0..self.dim)
                .map(|j| self.bracket(x, &basis_vec(self.dim, j)))
                .collect::<Vec<_>>(),
        )
    }

    /// Killing form `K(x, y) = trace(ad x ∘ ad y)`, computed exactly from the
    /// structure constants.
    pub fn killing_form(&self) -> SymmetricForm {
        let ads: Vec<RatMatrix> = (0..self.dim)
            .map(|i| self.ad(&basis_vec(self.dim, i)))
            .collect();
        let gram = RatMatrix::from_fn(self.dim, self.dim, |i, j| {
            let prod = &ads[i] * &ads[j];
            (0..self.dim).fold(Rat::zero(), |acc, k| acc + prod.at(k, k))
        });
        SymmetricForm::new(gram).expect("Killing form is symmetric")
    }

    /// Canonical basis of the center, the exact nullspace of the stacked
    /// adjoint operators.
    pub fn center_basis(&self) -> RatMatrix {
        let mut stacked = RatMatrix::zeros(0, self.dim);
        for j in 0..self.dim {
            // row block: x ↦ [x, e_j]
            let block = RatMatrix::from_fn(self.dim, self.dim, |k, i| self.c[i][j][k].clone());
            stacked = stacked.vstack(&block);
        }
        stacked.nullspace()
    }

    /// Canonical basis of the commutator ideal `[n, n]`.
    pub fn commutator_basis(&self) -> RatMatrix {
        let mut cols = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !vec_is_zero(&self.c[i][j]) {
                    cols.push(self.c[i][j].clone());
                }
            }
        }
        if cols.is_empty() {
            RatMatrix::zeros(self.dim, 0)
        } else {
            RatMatrix::from_columns(&cols).col_space_basis()
        }
    }

    /// Whether `d` satisfies `d[x,y] = [dx,y] + [x,dy]` on all basis pairs.
    pub fn is_derivation(&self, d: &RatMatrix) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = d.mul_vec(&self.c[i][j]);
                let rhs = crate::matrix::vec_add(
                    &self.bracket(&d.col(i), &basis_vec(self.dim, j)),
                    &self.bracket(&basis_vec(self.dim, i), &d.col(j)),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// A nilpotent Lie algebra; construction verifies nilpotency and records the
/// step. Algebras of any step are accepted so that higher-step examples can
/// still be measured; operations needing the 2-step hypothesis check
/// [`is_two_step`](Self::is_two_step).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilLieAlgebra {
    base: LieAlgebra,
    step: usize,
}

/// Center, commutator, corank and step of an algebra.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub center_basis: RatMatrix,
    pub commutator_basis: RatMatrix,
    /// `dim z(n) - dim C(n)`. Nonnegative exactly when the commutator sits
    /// inside the center, i.e. for step at most 2.
    pub corank: isize,
    /// Nilpotency step; 1 means abelian, 2 means 2-step.
    pub step: usize,
}

/// Outcome of the nonsingularity test for `j(x)`, `x` ranging over the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nonsingularity {
    /// Decided exactly (1-dimensional center, or no `v` part at all).
    Nonsingular,
    /// A center direction with singular `j`, as an ambient vector.
    SingularWitness(Vec<Rat>),
    /// No singular direction found among the deterministic samples; exact
    /// real-root emptiness of `det j(Σ t_i z_i)` is not attempted.
    ProbablyNonsingular,
}

impl NilLieAlgebra {
    pub fn from_structure_constants(
        dim: usize,
        brackets: &[BracketEntry],
    ) -> Result<Self, AlgebraError> {
        Self::from_lie_algebra(LieAlgebra::from_structure_constants(dim, brackets)?)
    }

    pub fn from_structure_constants_named(
        dim: usize,
        basis_names: Vec<String>,
        brackets: &[BracketEntry],
    ) -> Result<Self, AlgebraError> {
        Self::from_lie_algebra(LieAlgebra::from_structure_constants_named(
            dim,
            basis_names,
            brackets,
        )?)
    }

    pub fn from_full_constants(
        dim: usize,
        basis_names: Vec<String>,
        c: Vec<Vec<Vec<Rat>>>,
    ) -> Result<Self, AlgebraError> {
        Self::from_lie_algebra(LieAlgebra::from_full_constants(dim, basis_names, c)?)
    }

    pub fn from_lie_algebra(base: LieAlgebra) -> Result<Self, AlgebraError> {
        let step = Self::compute_step(&base)?;
        Ok(Self { base, step })
    }

    fn compute_step(base: &LieAlgebra) -> Result<usize, AlgebraError> {
        // lower central series n ⊇ [n,n] ⊇ [n,[n,n]] ⊇ ...
        let mut current = base.commutator_basis();
        let mut step = 1;
        while current.cols() > 0 {
            step += 1;
            if step > base.dim() + 1 {
                return Err(AlgebraError::NotNilpotent);
            }
            let mut next_cols = Vec::new();
            for i in 0..base.dim() {
                for col in 0..current.cols() {
                    let w = base.bracket(&basis_vec(base.dim(), i), &current.col(col));
                    if !vec_is_zero(&w) {
                        next_cols.push(w);
                    }
                }
            }
            let next = if next_cols.is_empty() {
                RatMatrix::zeros(base.dim(), 0)
            } else {
                RatMatrix::from_columns(&next_cols).col_space_basis()
            };
            if next.cols() == current.cols() {
                return Err(AlgebraError::NotNilpotent);
            }
            if next.cols() == 0 {
                return Ok(step);
            }
            current = next;
        }
        Ok(step)
    }

    pub fn as_lie_algebra(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn basis_names(&self) -> &[String] {
        self.base.basis_names()
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn is_two_step(&self) -> bool {
        self.step <= 2
    }

    pub fn is_abelian(&self) -> bool {
        self.step <= 1
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        self.base.c(i, j, k)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        self.base.bracket_basis(i, j)
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.base.bracket(x, y)
    }

    pub fn ad(&self, x: &[Rat]) -> RatMatrix {
        self.base.ad(x)
    }

    pub fn center_basis(&self) -> RatMatrix {
        self.base.center_basis()
    }

    pub fn commutator_basis(&self) -> RatMatrix {
        self.base.commutator_basis()
    }

    pub fn structure_report(&self) -> StructureReport {
        let center_basis = self.center_basis();
        let commutator_basis = self.commutator_basis();
        let corank = center_basis.cols() as isize - commutator_basis.cols() as isize;
        StructureReport {
            center_basis,
            commutator_basis,
            corank,
            step: self.step,
        }
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        Self::from_structure_constants(dim, &[]).expect("abelian algebra is always valid")
    }

    /// Direct sum `self ⊕ other` (blocks do not bracket).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim() + other.dim();
        let mut names = self.basis_names().to_vec();
        names.extend(other.basis_names().iter().map(|s| format!("{s}'")));
        let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for k in 0..self.dim() {
                    c[i][j][k] = self.c(i, j, k).clone();
                }
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                for k in 0..other.dim() {
                    c[self.dim() + i][self.dim() + j][self.dim() + k] =
                        other.c(i, j, k).clone();
                }
            }
        }
        Self::from_full_constants(n, names, c).expect("direct sum of valid algebras is valid")
    }

    /// Rewrites the algebra in a new basis (columns of `p`, expressed in the
    /// old coordinates). `p` must be invertible.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<Self, AlgebraError> {
        assert_eq!(p.rows(), self.dim());
        assert_eq!(p.cols(), self.dim());
        let p_inv = p.inverse().ok_or(AlgebraError::SingularBasisChange)?;
        let mut c = vec![vec![vec![Rat::zero(); self.dim()]; self.dim()]; self.dim()];
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let w = self.bracket(&p.col(i), &p.col(j));
                c[i][j] = p_inv.mul_vec(&w);
            }
        }
        Self::from_full_constants(self.dim(), self.basis_names().to_vec(), c)
    }
}

/// Decides (or samples) nonsingularity: whether `j(x)` is invertible for all
/// nonzero central `x`. Exact for a 1-dimensional center; for higher center
/// dimension the determinant is a polynomial in several variables, so the
/// test first looks for exact kernel directions of `x ↦ j(x)` and then probes
/// 64 deterministic pseudo-random rational directions (seed `0x5EED`).
pub fn is_nonsingular(splitting: &crate::metgeo::CenterSplitting) -> Nonsingularity {
    use num_traits::One;
    use rand::{Rng, SeedableRng};

    let p = splitting.z_basis.cols();
    if splitting.v_basis.cols() == 0 {
        return Nonsingularity::Nonsingular;
    }
    if p == 1 {
        return if splitting.j_ops[0].det().is_zero() {
            Nonsingularity::SingularWitness(splitting.z_basis.col(0))
        } else {
            Nonsingularity::Nonsingular
        };
    }
    // kernel directions of x ↦ j(x) are singular for free
    if let Some(kernel_dir) = splitting.j_kernel_direction() {
        return Nonsingularity::SingularWitness(kernel_dir);
    }
    let det_of = |coeffs: &[Rat]| -> Rat {
        let mut m = RatMatrix::zeros(splitting.v_basis.cols(), splitting.v_basis.cols());
        for (a, t) in coeffs.iter().enumerate() {
            if !t.is_zero() {
                m = &m + &splitting.j_ops[a].scale(t);
            }
        }
        m.det()
    };
    // basis directions first, then seeded random rational directions
    for a in 0..p {
        let mut coeffs = vec![Rat::zero(); p];
        coeffs[a] = Rat::one();
        if det_of(&coeffs).is_zero() {
            return Nonsingularity::SingularWitness(splitting.z_basis.col(a));
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..64 {
        let coeffs: Vec<Rat> = (0..p)
            .map(|_| crate::rat::ratio(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
            .collect();
        if coeffs.iter().all(|t| t.is_zero()) {
            continue;
        }
        if det_of(&coeffs).is_zero() {
            return Nonsingularity::SingularWitness(splitting.z_basis.mul_vec(&coeffs));
        }
    }
    Nonsingularity::ProbablyNonsingular
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn h3() -> NilLieAlgebra {
        NilLieAlgebra::from_structure_constants(3, &[(0, 1, vec![(2, rat(1))])]).unwrap()
    }

    fn free3step() -> NilLieAlgebra {
        NilLieAlgebra::from_structure_constants(
            5,
            &[
                (0, 1, vec![(2, rat(1))]),
                (0, 2, vec![(3, rat(1))]),
                (1, 2, vec![(4, rat(1))]),
            ],
        )
        .unwrap()
    }

    fn dim6() -> NilLieAlgebra {
        NilLieAlgebra::from_structure_constants(
            6,
            &[
                (3, 4, vec![(0, rat(1))]),
                (3, 5, vec![(1, rat(1))]),
                (4, 5, vec![(2, rat(1))]),
            ],
        )
        .unwrap()
    }

    fn so3() -> LieAlgebra {
        LieAlgebra::from_structure_constants(
            3,
            &[
                (0, 1, vec![(2, rat(1))]),
                (1, 2, vec![(0, rat(1))]),
                (2, 0, vec![(1, rat(1))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn h3_is_two_step_with_center_e3() {
        let a = h3();
        assert_eq!(a.step(), 2);
        let report = a.structure_report();
        let e3 = RatMatrix::from_columns(&[basis_vec(3, 2)]);
        assert!(report.center_basis.span_eq(&e3));
        assert!(report.commutator_basis.span_eq(&e3));
        assert_eq!(report.corank, 0);
    }

    #[test]
    fn free_3_step_is_accepted_and_flagged() {
        let a = free3step();
        assert_eq!(a.step(), 3);
        assert!(!a.is_two_step());
    }

    #[test]
    fn solvable_non_nilpotent_is_rejected() {
        let err = NilLieAlgebra::from_structure_constants(3, &[(0, 1, vec![(0, rat(1))])])
            .unwrap_err();
        assert_eq!(err, AlgebraError::NotNilpotent);
        // while the general type accepts it
        assert!(LieAlgebra::from_structure_constants(3, &[(0, 1, vec![(0, rat(1))])]).is_ok());
    }

    #[test]
    fn so3_is_valid_but_not_nilpotent() {
        let g = so3();
        assert_eq!(g.killing_form().gram(), &RatMatrix::from_i64_rows(&[
            &[-2, 0, 0],
            &[0, -2, 0],
            &[0, 0, -2],
        ]));
        assert!(NilLieAlgebra::from_lie_algebra(g).is_err());
    }

    #[test]
    fn jacobi_violation_reports_witness_triple() {
        let err = NilLieAlgebra::from_structure_constants(
            3,
            &[(0, 1, vec![(2, rat(1))]), (1, 2, vec![(1, rat(1))])],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::JacobiViolation { i: 0, j: 1, k: 2 });
    }

    #[test]
    fn antisymmetry_contradiction_detected() {
        let err = NilLieAlgebra::from_structure_constants(
            3,
            &[(0, 1, vec![(2, rat(1))]), (1, 0, vec![(2, rat(1))])],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::AntisymmetryContradiction { i: 1, j: 0 });
        // consistent mirror entries are fine
        let ok = NilLieAlgebra::from_structure_constants(
            3,
            &[(0, 1, vec![(2, rat(1))]), (1, 0, vec![(2, rat(-1))])],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn bracket_eval_examples() {
        let a = h3();
        assert_eq!(
            a.bracket(&basis_vec(3, 0), &basis_vec(3, 1)),
            basis_vec(3, 2)
        );
        let x = vec![rat(2), rat(-3), rat(5)];
        assert!(vec_is_zero(&a.bracket(&x, &x)));
        let d6 = dim6();
        assert_eq!(
            d6.bracket(&basis_vec(6, 3), &basis_vec(6, 4)),
            basis_vec(6, 0)
        );
    }

    #[test]
    fn dim6_report() {
        let report = dim6().structure_report();
        let z = RatMatrix::from_columns(&[basis_vec(6, 0), basis_vec(6, 1), basis_vec(6, 2)]);
        assert!(report.center_basis.span_eq(&z));
        assert!(report.commutator_basis.span_eq(&z));
        assert_eq!(report.corank, 0);
    }

    #[test]
    fn r_x_h3_has_corank_one() {
        let a = NilLieAlgebra::from_structure_constants(4, &[(0, 1, vec![(2, rat(1))])]).unwrap();
        let report = a.structure_report();
        assert_eq!(report.center_basis.cols(), 2);
        assert_eq!(report.commutator_basis.cols(), 1);
        assert_eq!(report.corank, 1);
    }

    #[test]
    fn corank_additive_under_abelian_factors() {
        for m in 1..4usize {
            let sum = NilLieAlgebra::abelian(m).direct_sum(&h3());
            let base = h3().structure_report().corank;
            assert_eq!(sum.structure_report().corank, m as isize + base);
            let sum6 = NilLieAlgebra::abelian(m).direct_sum(&dim6());
            assert_eq!(sum6.structure_report().corank, m as isize);
        }
    }

    #[test]
    fn two_step_iff_commutator_inside_center() {
        for a in [h3(), dim6(), NilLieAlgebra::abelian(3), free3step()] {
            let report = a.structure_report();
            let mut contained = true;
            for c in 0..report.commutator_basis.cols() {
                contained &=
                    report.center_basis.span_contains(&report.commutator_basis.col(c));
            }
            assert_eq!(a.is_two_step(), contained);
        }
    }

    #[test]
    fn matrix_basis_recovers_so3_constants() {
        let mats = [
            RatMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
            RatMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
            RatMatrix::from_i64_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
        ];
        let g = LieAlgebra::from_matrix_basis(&mats).unwrap();
        assert_eq!(g.bracket_basis(0, 1), &basis_vec(3, 2)[..]);
        assert_eq!(g.bracket_basis(1, 2), &basis_vec(3, 0)[..]);
        assert_eq!(g.bracket_basis(2, 0), &basis_vec(3, 1)[..]);
    }

    #[test]
    fn derivation_check() {
        let g = so3();
        assert!(g.is_derivation(&g.ad(&basis_vec(3, 0))));
        assert!(!g.is_derivation(&RatMatrix::identity(3)));
    }

    #[test]
    fn change_basis_preserves_step() {
        let a = dim6();
        let mut p = RatMatrix::identity(6);
        p.set(0, 3, rat(2));
        let b = a.change_basis(&p).unwrap();
        assert_eq!(b.step(), 2);
    }

    mod nonsingularity {
        use super::*;
        use crate::form::SymmetricForm;
        use crate::metgeo::MetricNilLieAlgebra;

        #[test]
        fn h3_lorentz_1_is_nonsingular() {
            let m = MetricNilLieAlgebra::new(
                h3(),
                SymmetricForm::diagonal(&[rat(1), rat(1), rat(-1)]),
            )
            .unwrap();
            let s = m.center_splitting().unwrap();
            // det j(e3) = 1 for the first Lorentz metric
            assert_eq!(s.j_ops[0].det(), rat(1));
            assert_eq!(is_nonsingular(&s), Nonsingularity::Nonsingular);
        }

        #[test]
        fn r_x_h3_has_the_kernel_direction_as_witness() {
            let alg =
                NilLieAlgebra::from_structure_constants(4, &[(0, 1, vec![(2, rat(1))])]).unwrap();
            let gram = SymmetricForm::from_i64_rows(&[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
            ]);
            let m = MetricNilLieAlgebra::new(alg, gram).unwrap();
            let s = m.center_splitting().unwrap();
            // j(e3) ≡ 0, so e3 is a singular direction
            assert_eq!(
                is_nonsingular(&s),
                Nonsingularity::SingularWitness(basis_vec(4, 2))
            );
        }

        #[test]
        fn abelian_with_empty_v_is_nonsingular_by_convention() {
            let m = MetricNilLieAlgebra::new(
                NilLieAlgebra::abelian(3),
                SymmetricForm::diagonal(&[rat(1), rat(1), rat(-1)]),
            )
            .unwrap();
            let s = m.center_splitting().unwrap();
            assert_eq!(s.v_basis.cols(), 0);
            assert_eq!(is_nonsingular(&s), Nonsingularity::Nonsingular);
        }

        #[test]
        fn quaternionic_pair_is_probably_nonsingular() {
            // j(z1), j(z2) act like quaternionic i, j on R^4:
            // det(a j1 + b j2) = (a² + b²)², never zero on real directions
            let alg = NilLieAlgebra::from_structure_constants(
                6,
                &[
                    (0, 1, vec![(4, rat(1))]),
                    (2, 3, vec![(4, rat(1))]),
                    (0, 2, vec![(5, rat(1))]),
                    (1, 3, vec![(5, rat(-1))]),
                ],
            )
            .unwrap();
            let m =
                MetricNilLieAlgebra::new(alg, SymmetricForm::diagonal(&vec![rat(1); 6])).unwrap();
            let s = m.center_splitting().unwrap();
            assert_eq!(s.z_basis.cols(), 2);
            assert_eq!(is_nonsingular(&s), Nonsingularity::ProbablyNonsingular);
        }

        #[test]
        fn singular_random_direction_is_caught_for_dim2_center() {
            // j(z1) rotates the 12-plane, j(z2) rotates the 34-plane: both
            // are singular on their complements and every combination
            // a j1 + b j2 with ab = 0 is singular; the basis-direction sweep
            // finds one
            let alg = NilLieAlgebra::from_structure_constants(
                6,
                &[(0, 1, vec![(4, rat(1))]), (2, 3, vec![(5, rat(1))])],
            )
            .unwrap();
            let m =
                MetricNilLieAlgebra::new(alg, SymmetricForm::diagonal(&vec![rat(1); 6])).unwrap();
            let s = m.center_splitting().unwrap();
            match is_nonsingular(&s) {
                Nonsingularity::SingularWitness(w) => {
                    let coords = s.z_coords(&w);
                    let j = s.j_of(&coords);
                    assert_eq!(j.det(), rat(0));
                }
                other => panic!("expected a singular witness, got {other:?}"),
            }
        }
    }
}
