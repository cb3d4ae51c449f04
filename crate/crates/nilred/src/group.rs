//! Group-level computations in exponential coordinates.
//!
//! For a simply connected 2-step nilpotent group the exponential map is a
//! global chart and the product truncates to `x · y = x + y + ½[x, y]`, so
//! group arithmetic on rational points is exact. Closure of a diagonal
//! lattice `Γ = D·ℤⁿ` under the product reduces to finitely many integrality
//! checks on the correction terms `½[D e_i, D e_j]`: the linear part of the
//! product is integral automatically and the correction is bilinear, so the
//! generator pairs decide the general case.
//!
//! Left translations are isometries by construction — the metric lives on
//! the Lie algebra and is extended left-invariantly — so there is nothing to
//! test at the group level; the geometry stays in [`crate::metgeo`].

use crate::matrix::{vec_add, vec_neg, vec_scale};
use crate::nilalg::NilLieAlgebra;
use crate::rat::{ratio, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group operations in exponential coordinates need a 2-step algebra (step is {step})")]
    NotTwoStep { step: usize },
    #[error("coordinate vector has wrong length")]
    DimensionMismatch,
    #[error("lattice scaling entries must be positive")]
    NonPositiveScaling,
}

/// A group element in exponential coordinates on the Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint<T> {
    pub coords: Vec<T>,
}

impl<T> GroupPoint<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }
}

/// Diagonal lattice specification: `Γ = {exp(Σ k_i d_i e_i) : k_i ∈ ℤ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub scaling: Vec<Rat>,
}

impl LatticeSpec {
    pub fn new(scaling: Vec<Rat>) -> Result<Self, GroupError> {
        if scaling.iter().any(|d| !d.is_positive()) {
            return Err(GroupError::NonPositiveScaling);
        }
        Ok(Self { scaling })
    }

    /// Exact membership of a rational point in `Γ`.
    pub fn contains(&self, p: &GroupPoint<Rat>) -> bool {
        p.coords.len() == self.scaling.len()
            && p
                .coords
                .iter()
                .zip(&self.scaling)
                .all(|(x, d)| (x / d).denom().is_one())
    }
}

/// Verdict of the lattice closure test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeClosure {
    Closed,
    /// First generator pair `(e_i, e_j)` whose product correction leaves the
    /// lattice.
    NotClosed { i: usize, j: usize },
}

fn require_two_step(alg: &NilLieAlgebra) -> Result<(), GroupError> {
    if alg.is_two_step() {
        Ok(())
    } else {
        Err(GroupError::NotTwoStep { step: alg.step() })
    }
}

/// 2-step Baker-Campbell-Hausdorff product `x · y = x + y + ½[x, y]`.
pub fn group_multiply(
    alg: &NilLieAlgebra,
    x: &GroupPoint<Rat>,
    y: &GroupPoint<Rat>,
) -> Result<GroupPoint<Rat>, GroupError> {
    require_two_step(alg)?;
    if x.coords.len() != alg.dim() || y.coords.len() != alg.dim() {
        return Err(GroupError::DimensionMismatch);
    }
    let correction = vec_scale(&alg.bracket(&x.coords, &y.coords), &ratio(1, 2));
    Ok(GroupPoint::new(vec_add(
        &vec_add(&x.coords, &y.coords),
        &correction,
    )))
}

/// Group inverse: `x⁻¹ = −x` for the 2-step product.
pub fn group_inverse(
    alg: &NilLieAlgebra,
    x: &GroupPoint<Rat>,
) -> Result<GroupPoint<Rat>, GroupError> {
    require_two_step(alg)?;
    if x.coords.len() != alg.dim() {
        return Err(GroupError::DimensionMismatch);
    }
    Ok(GroupPoint::new(vec_neg(&x.coords)))
}

pub fn group_identity(alg: &NilLieAlgebra) -> GroupPoint<Rat> {
    GroupPoint::new(vec![Rat::zero(); alg.dim()])
}

/// Decides whether `Γ = D·ℤⁿ` is closed under the group law.
///
/// Closure holds iff `½[D e_i, D e_j] ∈ D·ℤⁿ` for all `i < j`; the first
/// failing pair is returned as a witness.
pub fn lattice_closure_check(
    alg: &NilLieAlgebra,
    spec: &LatticeSpec,
) -> Result<LatticeClosure, GroupError> {
    require_two_step(alg)?;
    if spec.scaling.len() != alg.dim() {
        return Err(GroupError::DimensionMismatch);
    }
    let n = alg.dim();
    for i in 0..n {
        for j in i + 1..n {
            let br = alg.bracket_basis(i, j);
            let factor = ratio(1, 2) * &spec.scaling[i] * &spec.scaling[j];
            for (k, coeff) in br.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let entry = &factor * coeff / &spec.scaling[k];
                if !entry.denom().is_one() {
                    return Ok(LatticeClosure::NotClosed { i, j });
                }
            }
        }
    }
    Ok(LatticeClosure::Closed)
}
