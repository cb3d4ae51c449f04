//! Builders for metric 2-step nilpotent Lie algebras.
//!
//! The central one is [`from_data_set`]: a Lie algebra `g` with an
//! ad-invariant metric plus a faithful skew-adjoint representation `(π, V)`
//! without trivial subrepresentations determines a 2-step algebra
//! `n = g ⊕ V` with `[g, n] = 0`, the `V`-bracket solved exactly from
//! `⟨[u,v], x⟩_g = ⟨π(x)u, v⟩_V`, and the product metric. Its center and
//! commutator both equal `g` and the recovered `j`-maps are the `π(x)`
//! matrices, which is what makes the construction naturally reductive.
//!
//! The remaining builders produce the other example families: arbitrary
//! nondegenerate-center metrics on Heisenberg algebras from a skew map `t`,
//! the sign flip of the metric on the center, the cotangent double
//! `T*n = n ⋉ n*` with its neutral ad-invariant metric, and the modified
//! cotangent `v* ⊕ v` built from `ρ: v → so(v)` with `ρ(u)u = 0`.

use crate::form::SymmetricForm;
use crate::matrix::{basis_vec, vec_is_zero, RatMatrix};
use crate::metgeo::{GeometryError, MetricNilLieAlgebra};
use crate::nilalg::{LieAlgebra, NilLieAlgebra};
use crate::rat::{rat, Rat};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("data set violates {} invariant(s): {0:?}", .0.len())]
    InvalidDataSet(Vec<DataSetViolation>),
    #[error("t is not skew-adjoint for B")]
    NotSkewAdjoint,
    #[error("t is singular")]
    SingularT,
    #[error("the central metric coefficient λ must be nonzero")]
    ZeroLambda,
    #[error("the inner product must be positive definite")]
    InnerNotPositiveDefinite,
    #[error("ρ(w_{index}) is not skew-adjoint for the inner product")]
    RhoNotSkew { index: usize },
    #[error("ρ is not injective as a linear map")]
    RhoNotInjective,
    #[error("ρ(u)u ≠ 0 for u with coordinates {witness:?}")]
    RhoUUNonzero { witness: Vec<Rat> },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A single violated data-set invariant; validation reports all of them, not
/// just the first, since non-faithful representations and trivial
/// subrepresentations are the diagnostic cases users actually hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSetViolation {
    MetricGDegenerate,
    MetricVDegenerate,
    /// `⟨[x_i,x_j],x_k⟩ + ⟨x_j,[x_i,x_k]⟩ ≠ 0`.
    AdInvariance { i: usize, j: usize, k: usize },
    /// `[π(x_i), π(x_j)] ≠ π([x_i, x_j])`.
    NotHomomorphism { i: usize, j: usize },
    /// Nonzero `x` (in `g`-coordinates) with `π(x) = 0`.
    NotFaithful { witness: Vec<Rat> },
    /// Nonzero `u` (in `V`-coordinates) killed by every `π(x)`.
    TrivialSubrep { witness: Vec<Rat> },
    /// `π(x_i)` is not skew-adjoint for the metric on `V`.
    NotSkewAdjoint { index: usize },
    RepShapeMismatch,
}

/// Input to the data-set construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataSet {
    pub g: LieAlgebra,
    pub metric_g: SymmetricForm,
    /// `π(x_i)` acting on `V`, one matrix per basis vector of `g`.
    pub rep: Vec<RatMatrix>,
    pub metric_v: SymmetricForm,
}

impl DataSet {
    /// Validates every invariant; on failure all violations are reported.
    pub fn new(
        g: LieAlgebra,
        metric_g: SymmetricForm,
        rep: Vec<RatMatrix>,
        metric_v: SymmetricForm,
    ) -> Result<Self, ConstructError> {
        let ds = Self {
            g,
            metric_g,
            rep,
            metric_v,
        };
        let violations = ds.validate();
        if violations.is_empty() {
            Ok(ds)
        } else {
            Err(ConstructError::InvalidDataSet(violations))
        }
    }

    pub fn dim_v(&self) -> usize {
        self.metric_v.dim()
    }

    /// `π(x)` for `x` in `g`-coordinates.
    pub fn pi_of(&self, x: &[Rat]) -> RatMatrix {
        let k = self.dim_v();
        let mut m = RatMatrix::zeros(k, k);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.rep[i].scale(c);
            }
        }
        m
    }

    pub fn validate(&self) -> Vec<DataSetViolation> {
        let mut out = Vec::new();
        let p = self.g.dim();
        let k = self.dim_v();
        if self.metric_g.dim() != p
            || self.rep.len() != p
            || self
                .rep
                .iter()
                .any(|m| m.rows() != k || m.cols() != k)
        {
            out.push(DataSetViolation::RepShapeMismatch);
            return out;
        }
        if !self.metric_g.is_nondegenerate() {
            out.push(DataSetViolation::MetricGDegenerate);
        }
        if !self.metric_v.is_nondegenerate() {
            out.push(DataSetViolation::MetricVDegenerate);
        }
        for i in 0..p {
            for j in 0..p {
                for kk in 0..p {
                    let lhs = self.metric_g.pairing(
                        &self.g.bracket(&basis_vec(p, i), &basis_vec(p, j)),
                        &basis_vec(p, kk),
                    ) + self.metric_g.pairing(
                        &basis_vec(p, j),
                        &self.g.bracket(&basis_vec(p, i), &basis_vec(p, kk)),
                    );
                    if !lhs.is_zero() {
                        out.push(DataSetViolation::AdInvariance { i, j, k: kk });
                    }
                }
            }
        }
        for i in 0..p {
            for j in 0..p {
                let comm = crate::matrix::commutator(&self.rep[i], &self.rep[j]);
                if comm != self.pi_of(self.g.bracket_basis(i, j)) {
                    out.push(DataSetViolation::NotHomomorphism { i, j });
                }
            }
        }
        // faithfulness: kernel of x ↦ π(x)
        let stacked = RatMatrix::from_fn(k * k, p, |r, i| self.rep[i].at(r / k, r % k).clone());
        let ker = stacked.nullspace();
        if ker.cols() > 0 {
            out.push(DataSetViolation::NotFaithful {
                witness: ker.col(0),
            });
        }
        // no trivial subrepresentation: ∩ ker π(x_i)
        let mut vstacked = RatMatrix::zeros(0, k);
        for m in &self.rep {
            vstacked = vstacked.vstack(m);
        }
        let common = vstacked.nullspace();
        if common.cols() > 0 {
            out.push(DataSetViolation::TrivialSubrep {
                witness: common.col(0),
            });
        }
        for (i, m) in self.rep.iter().enumerate() {
            let skew = &(self.metric_v.gram() * m) + &(&m.transpose() * self.metric_v.gram());
            if !skew.is_zero() {
                out.push(DataSetViolation::NotSkewAdjoint { index: i });
            }
        }
        out
    }
}

/// Builds the 2-step metric algebra `n = g ⊕ V` of a data set.
///
/// Basis order is the `g` basis followed by the `V` basis; the metric is the
/// product metric. The `V × V` bracket is the exact solution of
/// `⟨[u,v], x⟩_g = ⟨π(x)u, v⟩_V`. The center and commutator of the result
/// both equal `g`, and the `j`-maps of the splitting recover `π` entrywise.
pub fn from_data_set(ds: &DataSet) -> Result<MetricNilLieAlgebra, ConstructError> {
    let violations = ds.validate();
    if !violations.is_empty() {
        return Err(ConstructError::InvalidDataSet(violations));
    }
    let p = ds.g.dim();
    let k = ds.dim_v();
    let n = p + k;
    let g_inv = ds
        .metric_g
        .gram()
        .inverse()
        .expect("validated metric is nondegenerate");
    let mut brackets = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let rhs: Vec<Rat> = (0..p)
                .map(|i| {
                    ds.metric_v
                        .pairing(&ds.rep[i].col(a), &basis_vec(k, b))
                })
                .collect();
            let coeffs = g_inv.mul_vec(&rhs);
            let entries: Vec<(usize, Rat)> = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !entries.is_empty() {
                brackets.push((p + a, p + b, entries));
            }
        }
    }
    let mut names: Vec<String> = ds.g.basis_names().to_vec();
    names.extend((1..=k).map(|i| format!("v{i}")));
    let alg = NilLieAlgebra::from_structure_constants_named(n, names, &brackets)
        .expect("data-set bracket is 2-step nilpotent");
    let gram = RatMatrix::from_fn(n, n, |r, c| {
        if r < p && c < p {
            ds.metric_g.gram().at(r, c).clone()
        } else if r >= p && c >= p {
            ds.metric_v.gram().at(r - p, c - p).clone()
        } else {
            Rat::zero()
        }
    });
    let m = MetricNilLieAlgebra::new(alg, SymmetricForm::new(gram).expect("block metric"))?;
    debug_assert!(m.alg().is_two_step());
    debug_assert_eq!(m.alg().center_basis().cols(), p);
    debug_assert_eq!(m.alg().commutator_basis().cols(), p);
    Ok(m)
}

/// A Heisenberg-type algebra `ℝ^{2n} ⊕ ℝz` from a nonsingular
/// `t ∈ so(ℝ^{2n}, B)` and a central coefficient `λ ≠ 0`.
///
/// The bracket is `[u, v] = B(tu, v)·z` on the first `2n` basis vectors and
/// the metric is `B ⊥ λ`, so the splitting recovers `j(z) = λ·t`. With the
/// rotation `t` and `λ = −1` this is exactly the first Lorentz metric on
/// `h_3`; with `B = diag(−1, 1)`, `t = [[0,1],[1,0]]` and `λ = 1` the
/// second.
pub fn heisenberg(
    n: usize,
    b: &SymmetricForm,
    t: &RatMatrix,
    lambda: &Rat,
) -> Result<MetricNilLieAlgebra, ConstructError> {
    let k = 2 * n;
    assert_eq!(b.dim(), k, "B must live on R^(2n)");
    assert_eq!((t.rows(), t.cols()), (k, k), "t must act on R^(2n)");
    if lambda.is_zero() {
        return Err(ConstructError::ZeroLambda);
    }
    let skew = &(b.gram() * t) + &(&t.transpose() * b.gram());
    if !skew.is_zero() {
        return Err(ConstructError::NotSkewAdjoint);
    }
    if t.det().is_zero() {
        return Err(ConstructError::SingularT);
    }
    let mut brackets = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            let coeff = b.pairing(&t.col(u), &basis_vec(k, v));
            if !coeff.is_zero() {
                brackets.push((u, v, vec![(k, coeff)]));
            }
        }
    }
    let alg = NilLieAlgebra::from_structure_constants(k + 1, &brackets)
        .expect("heisenberg bracket is 2-step");
    let gram = RatMatrix::from_fn(k + 1, k + 1, |r, c| {
        if r < k && c < k {
            b.gram().at(r, c).clone()
        } else if r == k && c == k {
            lambda.clone()
        } else {
            Rat::zero()
        }
    });
    let m = MetricNilLieAlgebra::new(alg, SymmetricForm::new(gram).expect("block metric"))?;
    debug_assert_eq!(m.alg().center_basis().cols(), 1);
    debug_assert_eq!(m.alg().commutator_basis().cols(), 1);
    Ok(m)
}

/// Negates the metric on the center, keeping it on `v = z^⊥`. The new
/// `j`-maps are the negatives of the old ones.
pub fn flip_center_sign(m: &MetricNilLieAlgebra) -> Result<MetricNilLieAlgebra, GeometryError> {
    let s = m.center_splitting()?;
    let p = s.z_basis.cols();
    let k = s.v_basis.cols();
    let n = m.dim();
    // adapted Gram diag(−G_z, G_v), pulled back through the adapted basis
    let adapted = RatMatrix::from_fn(n, n, |r, c| {
        if r < p && c < p {
            -s.gram_z.gram().at(r, c).clone()
        } else if r >= p && c >= p {
            s.gram_v.gram().at(r - p, c - p).clone()
        } else {
            Rat::zero()
        }
    });
    let basis = s.z_basis.hstack(&s.v_basis);
    let basis_inv = basis.inverse().expect("z ⊕ v is a basis");
    let gram = &(&basis_inv.transpose() * &adapted) * &basis_inv;
    MetricNilLieAlgebra::new(
        m.alg().clone(),
        SymmetricForm::new(gram).expect("congruence keeps symmetry"),
    )
    .map(|flipped| {
        debug_assert_eq!(k, flipped.center_splitting().map(|t| t.v_basis.cols()).unwrap_or(k));
        flipped
    })
}

/// Cotangent double `T*n = n ⋉ n*` with the canonical neutral metric
/// `⟨(x,φ), (y,ψ)⟩ = φ(y) + ψ(x)`.
///
/// Basis order: the dual basis first, the original basis second. The
/// coadjoint brackets are `[e_i, e^j] = −Σ_k c_ik^j e^k`, and the metric is
/// ad-invariant of signature `(dim n, dim n)` whatever the input.
pub fn cotangent_double(alg: &NilLieAlgebra) -> MetricNilLieAlgebra {
    let n = alg.dim();
    let mut brackets: Vec<crate::nilalg::BracketEntry> = Vec::new();
    // original × original, shifted into the second block
    for i in 0..n {
        for j in i + 1..n {
            let entries: Vec<(usize, Rat)> = alg
                .bracket_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (n + k, c.clone()))
                .collect();
            if !entries.is_empty() {
                brackets.push((n + i, n + j, entries));
            }
        }
    }
    // coadjoint action: [e_i, e^j] = −Σ_k c_ik^j e^k
    for i in 0..n {
        for j in 0..n {
            let entries: Vec<(usize, Rat)> = (0..n)
                .filter(|&k| !alg.c(i, k, j).is_zero())
                .map(|k| (k, -alg.c(i, k, j).clone()))
                .collect();
            if !entries.is_empty() {
                brackets.push((n + i, j, entries));
            }
        }
    }
    let mut names: Vec<String> = alg.basis_names().iter().map(|s| format!("{s}*")).collect();
    names.extend(alg.basis_names().iter().cloned());
    let double = NilLieAlgebra::from_structure_constants_named(2 * n, names, &brackets)
        .expect("cotangent double of a nilpotent algebra is nilpotent");
    let gram = RatMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if (r < n && c == n + r) || (c < n && r == n + c) {
            rat(1)
        } else {
            Rat::zero()
        }
    });
    MetricNilLieAlgebra::new(double, SymmetricForm::new(gram).expect("neutral metric"))
        .expect("neutral metric is nondegenerate")
}

/// Modified cotangent `n = v* ⊕ v` from an inner product on `v` and an
/// injective `ρ: v → so(v, ⟨,⟩₊)` with `ρ(u)u = 0`.
///
/// Basis order: duals first, `v` second; the neutral metric pairs them. The
/// output carries an ad-invariant metric, has corank zero, and its center
/// and commutator both equal `v*`.
pub fn modified_cotangent(
    inner: &SymmetricForm,
    rho: &[RatMatrix],
) -> Result<MetricNilLieAlgebra, ConstructError> {
    let k = inner.dim();
    assert_eq!(rho.len(), k, "one ρ(w_i) per basis vector of v");
    assert!(
        rho.iter().all(|m| m.rows() == k && m.cols() == k),
        "ρ matrices must act on v"
    );
    let (pos, _, zero) = inner.signature();
    if pos != k || zero != 0 {
        return Err(ConstructError::InnerNotPositiveDefinite);
    }
    for (i, m) in rho.iter().enumerate() {
        let skew = &(inner.gram() * m) + &(&m.transpose() * inner.gram());
        if !skew.is_zero() {
            return Err(ConstructError::RhoNotSkew { index: i });
        }
    }
    let stacked = RatMatrix::from_fn(k * k, k, |r, i| rho[i].at(r / k, r % k).clone());
    if stacked.nullspace().cols() > 0 {
        return Err(ConstructError::RhoNotInjective);
    }
    // ρ(u)u = 0 on the basis plus polarization ρ(u)w + ρ(w)u = 0
    for i in 0..k {
        if !vec_is_zero(&rho[i].mul_vec(&basis_vec(k, i))) {
            return Err(ConstructError::RhoUUNonzero {
                witness: basis_vec(k, i),
            });
        }
        for j in i + 1..k {
            let mixed = crate::matrix::vec_add(
                &rho[i].mul_vec(&basis_vec(k, j)),
                &rho[j].mul_vec(&basis_vec(k, i)),
            );
            if !vec_is_zero(&mixed) {
                let mut witness = vec![Rat::zero(); k];
                witness[i] = rat(1);
                witness[j] = rat(1);
                return Err(ConstructError::RhoUUNonzero { witness });
            }
        }
    }
    // ⟨[v_a, v_b], w_c⟩ = ⟨ρ(w_c) v_a, v_b⟩₊ reads off the dual coordinates
    let mut brackets = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let entries: Vec<(usize, Rat)> = (0..k)
                .map(|c| inner.pairing(&rho[c].col(a), &basis_vec(k, b)))
                .enumerate()
                .filter(|(_, coeff)| !coeff.is_zero())
                .collect();
            if !entries.is_empty() {
                brackets.push((k + a, k + b, entries));
            }
        }
    }
    let mut names: Vec<String> = (1..=k).map(|i| format!("w{i}*")).collect();
    names.extend((1..=k).map(|i| format!("w{i}")));
    let alg = NilLieAlgebra::from_structure_constants_named(2 * k, names, &brackets)
        .expect("modified cotangent bracket is 2-step");
    let gram = RatMatrix::from_fn(2 * k, 2 * k, |r, c| {
        if (r < k && c == k + r) || (c < k && r == k + c) {
            rat(1)
        } else {
            Rat::zero()
        }
    });
    let m = MetricNilLieAlgebra::new(alg, SymmetricForm::new(gram).expect("neutral metric"))?;
    debug_assert_eq!(m.alg().structure_report().corank, 0);
    Ok(m)
}

/// Basis of `so(p, q)`: the skew-adjoint maps of `⟨,⟩_{p,q}` on `ℝ^{p+q}`,
/// returned as `(algebra, matrix basis, η)`. The matrices are `η·(E_kl −
/// E_lk)` for `k < l`, and the abstract structure constants are recovered
/// from them exactly.
pub fn so_pq(p: usize, q: usize) -> (LieAlgebra, Vec<RatMatrix>, SymmetricForm) {
    let n = p + q;
    let eta = SymmetricForm::diagonal(
        &(0..n)
            .map(|i| if i < p { rat(1) } else { rat(-1) })
            .collect::<Vec<_>>(),
    );
    let mut mats = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            let mut m = RatMatrix::zeros(n, n);
            m.set(k, l, rat(1));
            m.set(l, k, rat(-1));
            mats.push(&*eta.gram() * &m);
        }
    }
    let g = LieAlgebra::from_matrix_basis(&mats).expect("so(p,q) closes under commutator");
    (g, mats, eta)
}
