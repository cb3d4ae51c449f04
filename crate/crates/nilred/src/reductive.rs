//! Decision procedures for reductive structure.
//!
//! * [`is_ad_invariant`]: exact check of `⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0` over all
//!   basis triples.
//! * [`naturally_reductive_check`]: for a 2-step algebra with nondegenerate
//!   center and injective `j`, the metric is naturally reductive iff `j(z)`
//!   is a Lie subalgebra of `so(v, ⟨,⟩_v)` with `[j(x), j(y)] = j(τ_x y)` for
//!   maps `τ_x ∈ so(z, ⟨,⟩_z)`. On success the bilinear map `τ` is returned
//!   as a Lie algebra on the center: `j` then becomes a representation of
//!   `(z, τ)`, which is how the data-set construction is inverted.
//! * [`isotropy_algebra`]: exact nullspace solve of the linear conditions
//!   `(A, B) ∈ so(z) × so(v)`, `[B, j(x)] = j(Ax)` cutting out the Lie
//!   algebra of isometries fixing the identity.
//! * [`corank_decomposition`]: for an ad-invariant metric, the orthogonal
//!   split `n = z̃ ⊥ ñ` into a nondegenerate central factor and a corank-zero
//!   factor, plus the reconstruction of `ñ` as a modified cotangent with an
//!   explicit change of basis.

use crate::construct::{modified_cotangent, ConstructError};
use crate::form::SymmetricForm;
use crate::matrix::{basis_vec, commutator, RatMatrix};
use crate::metgeo::{CenterSplitting, GeometryError, MetricNilLieAlgebra};
use crate::nilalg::{LieAlgebra, NilLieAlgebra};
use crate::rat::{rat, Rat};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductiveError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("metric is not ad-invariant; witness basis triple {witness:?}")]
    NotAdInvariant { witness: (usize, usize, usize) },
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
}

/// Outcome of the exact ad-invariance check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdInvariance {
    Yes,
    /// Basis triple `(i, j, k)` with `⟨[e_i,e_j],e_k⟩ + ⟨e_j,[e_i,e_k]⟩ ≠ 0`.
    No { witness: (usize, usize, usize) },
}

pub fn is_ad_invariant(m: &MetricNilLieAlgebra) -> AdInvariance {
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let value = m.pairing(m.alg().bracket_basis(i, j), &basis_vec(n, k))
                    + m.pairing(&basis_vec(n, j), m.alg().bracket_basis(i, k));
                if !value.is_zero() {
                    return AdInvariance::No { witness: (i, j, k) };
                }
            }
        }
    }
    AdInvariance::Yes
}

/// Why a metric fails the naturally-reductive criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductivityFailure {
    /// `[j(z_i), j(z_j)]` does not lie in `j(z)`.
    NotClosed { i: usize, j: usize },
    /// The solved `τ_x` is not skew-adjoint for the center metric.
    TauNotSkew { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NaturallyReductive,
    Fails(ReductivityFailure),
    /// The criterion does not apply (it assumes `j` injective).
    Inapplicable { reason: String },
}

#[derive(Debug, Clone)]
pub struct ReductivityReport {
    pub j_injective: bool,
    pub closed_under_bracket: bool,
    /// Structure constants of `(z, τ)` in the center basis, present when the
    /// span of the `j`-maps closes under the commutator. Jacobi holds
    /// automatically and is re-verified on construction.
    pub tau: Option<LieAlgebra>,
    pub tau_skew: bool,
    pub verdict: Verdict,
}

/// Stacks `vec(j_1) | ... | vec(j_p)` as columns.
fn stacked_j(s: &CenterSplitting) -> RatMatrix {
    let k = s.v_basis.cols();
    RatMatrix::from_fn(k * k, s.j_ops.len(), |r, a| {
        s.j_ops[a].at(r / k, r % k).clone()
    })
}

/// Decides natural reductivity.
///
/// The verdict is purely algebraic: when it is positive, the group of
/// orthogonal automorphisms `H` acts so that `G = H ⋉ N` is transitive with
/// reductive complement `m = {x + π(x) : x ∈ n}`, where `π(x)` extends
/// `j(x)` by `τ`-action on the center for central `x` and is zero on `v`.
/// Geodesics through the identity are then the curves `exp(t(x + π(x)))·e`.
/// Neither `G` nor `m` is materialized here; the formula is recorded for
/// callers that want the homogeneous realization.
pub fn naturally_reductive_check(
    m: &MetricNilLieAlgebra,
) -> Result<ReductivityReport, ReductiveError> {
    let s = m.center_splitting()?;
    let p = s.z_basis.cols();
    if !s.j_injective {
        return Ok(ReductivityReport {
            j_injective: false,
            closed_under_bracket: false,
            tau: None,
            tau_skew: false,
            verdict: Verdict::Inapplicable {
                reason: "the criterion assumes j is injective, but j has a kernel".into(),
            },
        });
    }
    let jmat = stacked_j(&s);
    let k = s.v_basis.cols();

    // solve [j(z_i), j(z_j)] = j(τ^{ij}) for each pair; injectivity makes the
    // solution unique when it exists
    let mut tau_table = vec![vec![vec![Rat::zero(); p]; p]; p];
    for i in 0..p {
        for j in i + 1..p {
            let comm = commutator(&s.j_ops[i], &s.j_ops[j]);
            let target: Vec<Rat> = (0..k * k).map(|r| comm.at(r / k, r % k).clone()).collect();
            match jmat.solve(&target) {
                Some(coords) => {
                    for (c, v) in coords.iter().enumerate() {
                        tau_table[i][j][c] = v.clone();
                        tau_table[j][i][c] = -v.clone();
                    }
                }
                None => {
                    return Ok(ReductivityReport {
                        j_injective: true,
                        closed_under_bracket: false,
                        tau: None,
                        tau_skew: false,
                        verdict: Verdict::Fails(ReductivityFailure::NotClosed { i, j }),
                    });
                }
            }
        }
    }
    // τ is a Lie bracket on z whenever closure holds; Jacobi is re-verified
    // by the constructor
    let tau = LieAlgebra::from_full_constants(
        p,
        (1..=p).map(|i| format!("z{i}")).collect(),
        tau_table,
    )
    .map_err(|_| ReductiveError::Internal("solved τ violates the Jacobi identity"))?;

    // each τ_x must be skew-adjoint for ⟨,⟩_z; this is also exactly the
    // ad(z)-invariance of the center metric for (z, τ)
    for a in 0..p {
        let tau_a = tau.ad(&basis_vec(p, a));
        let skew = &(s.gram_z.gram() * &tau_a) + &(&tau_a.transpose() * s.gram_z.gram());
        if !skew.is_zero() {
            return Ok(ReductivityReport {
                j_injective: true,
                closed_under_bracket: true,
                tau: Some(tau),
                tau_skew: false,
                verdict: Verdict::Fails(ReductivityFailure::TauNotSkew { index: a }),
            });
        }
    }
    Ok(ReductivityReport {
        j_injective: true,
        closed_under_bracket: true,
        tau: Some(tau),
        tau_skew: true,
        verdict: Verdict::NaturallyReductive,
    })
}

/// The Lie algebra of isometries fixing the identity, as pairs `(A, B)` of
/// matrices acting on `z`- and `v`-coordinates.
#[derive(Debug, Clone)]
pub struct IsotropyAlgebra {
    pub basis: Vec<(RatMatrix, RatMatrix)>,
    pub dim: usize,
}

/// Whether a pair satisfies all the isotropy constraints for the splitting.
pub fn isotropy_constraints_satisfied(
    s: &CenterSplitting,
    a: &RatMatrix,
    b: &RatMatrix,
) -> bool {
    let skew_z = &(s.gram_z.gram() * a) + &(&a.transpose() * s.gram_z.gram());
    if !skew_z.is_zero() {
        return false;
    }
    let skew_v = &(s.gram_v.gram() * b) + &(&b.transpose() * s.gram_v.gram());
    if !skew_v.is_zero() {
        return false;
    }
    for (i, ji) in s.j_ops.iter().enumerate() {
        let lhs = commutator(b, ji);
        let rhs = s.j_of(&a.col(i));
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Solves the linear system `(A, B) ∈ so(z) × so(v)`, `[B, j(x)] = j(Ax)`
/// exactly and returns a nullspace basis.
pub fn isotropy_algebra(m: &MetricNilLieAlgebra) -> Result<IsotropyAlgebra, ReductiveError> {
    let s = m.center_splitting()?;
    let p = s.z_basis.cols();
    let k = s.v_basis.cols();
    let unknowns = p * p + k * k;
    let a_idx = |r: usize, c: usize| r * p + c;
    let b_idx = |r: usize, c: usize| p * p + r * k + c;

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // G_z A + Aᵀ G_z = 0
    for r in 0..p {
        for c in 0..p {
            let mut row = vec![Rat::zero(); unknowns];
            for mm in 0..p {
                row[a_idx(mm, c)] = &row[a_idx(mm, c)] + s.gram_z.gram().at(r, mm);
                row[a_idx(mm, r)] = &row[a_idx(mm, r)] + s.gram_z.gram().at(mm, c);
            }
            rows.push(row);
        }
    }
    // G_v B + Bᵀ G_v = 0
    for r in 0..k {
        for c in 0..k {
            let mut row = vec![Rat::zero(); unknowns];
            for mm in 0..k {
                row[b_idx(mm, c)] = &row[b_idx(mm, c)] + s.gram_v.gram().at(r, mm);
                row[b_idx(mm, r)] = &row[b_idx(mm, r)] + s.gram_v.gram().at(mm, c);
            }
            rows.push(row);
        }
    }
    // B j_a − j_a B − j(A z_a) = 0
    for (a, ja) in s.j_ops.iter().enumerate() {
        for r in 0..k {
            for c in 0..k {
                let mut row = vec![Rat::zero(); unknowns];
                for mm in 0..k {
                    row[b_idx(r, mm)] = &row[b_idx(r, mm)] + ja.at(mm, c);
                    row[b_idx(mm, c)] = &row[b_idx(mm, c)] - ja.at(r, mm);
                }
                for (cc, jc) in s.j_ops.iter().enumerate() {
                    row[a_idx(cc, a)] = &row[a_idx(cc, a)] - jc.at(r, c);
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        RatMatrix::zeros(0, unknowns)
    } else {
        RatMatrix::from_rows(rows)
    };
    let null = system.nullspace();
    let mut basis = Vec::with_capacity(null.cols());
    for col in 0..null.cols() {
        let v = null.col(col);
        let a = RatMatrix::from_fn(p, p, |r, c| v[a_idx(r, c)].clone());
        let b = RatMatrix::from_fn(k, k, |r, c| v[b_idx(r, c)].clone());
        basis.push((a, b));
    }
    // post-verification: each element solves the defining equations, and for
    // injective j the z-part is determined by the v-part
    for (a, b) in &basis {
        if !isotropy_constraints_satisfied(&s, a, b) {
            return Err(ReductiveError::Internal("nullspace element fails constraints"));
        }
        if s.j_injective {
            let jmat = stacked_j(&s);
            for i in 0..p {
                let comm = commutator(b, &s.j_ops[i]);
                let target: Vec<Rat> =
                    (0..k * k).map(|r| comm.at(r / k, r % k).clone()).collect();
                let coords = jmat
                    .solve(&target)
                    .ok_or(ReductiveError::Internal("[B, j(x)] escapes j(z)"))?;
                if coords != a.col(i) {
                    return Err(ReductiveError::Internal(
                        "A is not determined by B through j",
                    ));
                }
            }
        }
    }
    Ok(IsotropyAlgebra {
        dim: basis.len(),
        basis,
    })
}

/// The corank normal form of an ad-invariant metric.
#[derive(Debug, Clone)]
pub struct CorankNormalForm {
    /// `dim z(n) − dim C(n)`.
    pub corank: usize,
    /// Nondegenerate central factor (ambient columns; may be empty).
    pub z_tilde_basis: RatMatrix,
    /// Adapted basis of the corank-zero factor `ñ = z̃^⊥`, ordered as the
    /// commutator part followed by its isotropic partner. Empty iff the
    /// algebra is abelian.
    pub n_tilde_basis: RatMatrix,
    pub factor: Option<CorankZeroFactor>,
}

/// Reconstruction data of the corank-zero factor as a modified cotangent.
#[derive(Debug, Clone)]
pub struct CorankZeroFactor {
    /// The isotropic center `C(ñ)` (ambient columns), Witt-normalized so that
    /// `⟨z_i, v_j⟩ = δ_ij`.
    pub z_basis: RatMatrix,
    /// Isotropic complement (ambient columns).
    pub v_basis: RatMatrix,
    /// Chosen inner product on `v`: the one making the `v`-basis orthonormal.
    pub inner: SymmetricForm,
    /// Recovered `ρ(w_i)` on `v`-coordinates.
    pub rho: Vec<RatMatrix>,
    /// `modified_cotangent(inner, rho)`; equals [`factor_algebra`](Self::factor_algebra)
    /// entry for entry.
    pub rebuilt: MetricNilLieAlgebra,
    /// `ñ` rewritten in the adapted basis `(z | v)`; the change of basis is
    /// [`CorankNormalForm::n_tilde_basis`].
    pub factor_algebra: MetricNilLieAlgebra,
}

pub fn corank_decomposition(
    m: &MetricNilLieAlgebra,
) -> Result<CorankNormalForm, ReductiveError> {
    if let AdInvariance::No { witness } = is_ad_invariant(m) {
        return Err(ReductiveError::NotAdInvariant { witness });
    }
    if !m.alg().is_two_step() {
        return Err(GeometryError::NotTwoStep {
            step: m.alg().step(),
        }
        .into());
    }
    let n = m.dim();
    let report = m.alg().structure_report();
    let center = &report.center_basis;
    let comm = &report.commutator_basis;
    let corank = report.corank as usize;

    // greedy complement of C(n) in z(n), in the center-basis order
    let mut z_tilde_cols: Vec<Vec<Rat>> = Vec::new();
    let mut span = comm.clone();
    for c in 0..center.cols() {
        let cand = center.col(c);
        if !span.span_contains(&cand) {
            span = span.hstack(&RatMatrix::column(&cand));
            z_tilde_cols.push(cand);
        }
    }
    let z_tilde_basis = if z_tilde_cols.is_empty() {
        RatMatrix::zeros(n, 0)
    } else {
        RatMatrix::from_columns(&z_tilde_cols)
    };
    if z_tilde_basis.cols() != corank {
        return Err(ReductiveError::Internal("complement has wrong dimension"));
    }
    if z_tilde_basis.cols() > 0 && !m.metric().restrict(&z_tilde_basis).is_nondegenerate() {
        // the theorem guarantees nondegeneracy on any complement of C in z
        return Err(ReductiveError::Internal(
            "metric degenerate on the central complement",
        ));
    }
    let n_tilde_ambient = m
        .metric()
        .orthogonal_complement(&z_tilde_basis)
        .expect("z_tilde basis is independent");

    if comm.cols() == 0 {
        // abelian: everything sits in the nondegenerate central factor
        return Ok(CorankNormalForm {
            corank,
            z_tilde_basis,
            n_tilde_basis: RatMatrix::zeros(n, 0),
            factor: None,
        });
    }

    // inside ñ the center is C(ñ) = C(n), totally isotropic; the Witt
    // machinery produces the paired isotropic complement
    let restricted = m.metric().restrict(&n_tilde_ambient);
    let comm_in_tilde = {
        let cols: Vec<Vec<Rat>> = (0..comm.cols())
            .map(|c| {
                n_tilde_ambient
                    .solve(&comm.col(c))
                    .expect("commutator lies inside z_tilde^perp")
            })
            .collect();
        RatMatrix::from_columns(&cols)
    };
    let witt = restricted
        .witt_decompose(&comm_in_tilde)
        .expect("commutator basis is independent");
    if witt.z_tilde.cols() != 0 || witt.v_tilde.cols() != 0 || witt.u.cols() != comm.cols() {
        return Err(ReductiveError::Internal(
            "corank-zero factor does not split into paired isotropic halves",
        ));
    }
    let r = witt.u.cols();
    let to_ambient = |cols: &RatMatrix| -> RatMatrix {
        let v: Vec<Vec<Rat>> = (0..cols.cols())
            .map(|c| n_tilde_ambient.mul_vec(&cols.col(c)))
            .collect();
        RatMatrix::from_columns(&v)
    };
    let z_basis = to_ambient(&witt.u);
    let v_basis = to_ambient(&witt.v);

    // recovered ρ via ⟨ρ(w)u, v⟩₊ = ⟨[u,v], w⟩ with ⟨,⟩₊ the inner product
    // making the v-basis orthonormal
    let inner = SymmetricForm::diagonal(&vec![rat(1); r]);
    let mut rho = Vec::with_capacity(r);
    for c in 0..r {
        let wc = v_basis.col(c);
        let mat = RatMatrix::from_fn(r, r, |a, b| {
            m.pairing(&m.alg().bracket(&v_basis.col(b), &v_basis.col(a)), &wc)
        });
        rho.push(mat);
    }
    let rebuilt = modified_cotangent(&inner, &rho).map_err(|e| match e {
        ConstructError::Geometry(g) => ReductiveError::Geometry(g),
        _ => ReductiveError::Internal("recovered ρ violates the modified-cotangent axioms"),
    })?;

    // ñ in the adapted basis (z | v); must coincide with the rebuilt algebra
    let adapted = z_basis.hstack(&v_basis);
    let mut constants = vec![vec![vec![Rat::zero(); 2 * r]; 2 * r]; 2 * r];
    for i in 0..2 * r {
        for j in 0..2 * r {
            let br = m.alg().bracket(&adapted.col(i), &adapted.col(j));
            constants[i][j] = adapted
                .solve(&br)
                .ok_or(ReductiveError::Internal("bracket escapes the factor"))?;
        }
    }
    let factor_alg = NilLieAlgebra::from_full_constants(
        2 * r,
        rebuilt.alg().basis_names().to_vec(),
        constants,
    )
    .map_err(|_| ReductiveError::Internal("factor constants invalid"))?;
    let factor_gram = &(&adapted.transpose() * m.metric().gram()) * &adapted;
    let factor_algebra = MetricNilLieAlgebra::new(
        factor_alg,
        SymmetricForm::new(factor_gram).expect("restricted gram symmetric"),
    )?;
    if factor_algebra != rebuilt {
        return Err(ReductiveError::Internal(
            "modified cotangent does not match the factor through the adapted basis",
        ));
    }
    Ok(CorankNormalForm {
        corank,
        z_tilde_basis,
        n_tilde_basis: adapted,
        factor: Some(CorankZeroFactor {
            z_basis,
            v_basis,
            inner,
            rho,
            rebuilt,
            factor_algebra,
        }),
    })
}
