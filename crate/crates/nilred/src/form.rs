//! Symmetric bilinear forms over the rationals.
//!
//! A metric in this crate is a nondegenerate symmetric bilinear form of any
//! signature. The form machinery never touches eigenvalues: signatures come
//! from exact symmetric congruence diagonalization (Sylvester's law), and
//! orthogonal complements and Witt decompositions are exact nullspace
//! computations.

use crate::matrix::{ExactLinError, RatMatrix};
use crate::rat::{sign, sqrt_of_abs, Rat};
use num_traits::{One, Zero};

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    dim: usize,
    gram: RatMatrix,
}

/// Output of [`SymmetricForm::witt_decompose`]: bases (as columns, in ambient
/// coordinates) of the four summands
///
/// ```text
/// n = (u ⊕ v) ⊕ (z̃ ⊕ ṽ)
/// ```
///
/// where `u` is the null subspace of the form restricted to the given center,
/// `v` is an isotropic partner pairing nondegenerately with `u`, `z̃` is the
/// part of the center orthogonal to `u ⊕ v`, and `ṽ` is the orthogonal rest.
#[derive(Debug, Clone)]
pub struct WittParts {
    pub u: RatMatrix,
    pub v: RatMatrix,
    pub z_tilde: RatMatrix,
    pub v_tilde: RatMatrix,
}

impl SymmetricForm {
    pub fn new(gram: RatMatrix) -> Result<Self, ExactLinError> {
        if !gram.is_square() {
            return Err(ExactLinError::InvalidShape(
                "gram matrix must be square".into(),
            ));
        }
        if !gram.is_symmetric() {
            return Err(ExactLinError::InvalidShape(
                "gram matrix must be symmetric".into(),
            ));
        }
        Ok(Self {
            dim: gram.rows(),
            gram,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::new(RatMatrix::from_i64_rows(rows)).expect("literal gram must be symmetric")
    }

    /// Diagonal form with the given entries.
    pub fn diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        let mut gram = RatMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            gram.set(i, i, e.clone());
        }
        Self { dim: n, gram }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Evaluates `⟨x, y⟩`.
    pub fn pairing(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(&gy)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Restriction to the span of the given columns: Gram matrix `BᵀGB`.
    pub fn restrict(&self, basis: &RatMatrix) -> SymmetricForm {
        let g = &(&basis.transpose() * &self.gram) * basis;
        SymmetricForm {
            dim: basis.cols(),
            gram: g,
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim
    }

    /// Exact congruence diagonalization: returns `(c, d)` with `cᵀ G c = d`
    /// diagonal and `c` invertible. Symmetric Gaussian elimination; when no
    /// nonzero diagonal pivot exists, a hyperbolic pair is broken with the
    /// substitution `e_k ← e_k + t e_l`.
    pub fn congruence_diagonalize(&self) -> (RatMatrix, RatMatrix) {
        self.diagonalize_inner(false)
    }

    fn diagonalize_inner(&self, unit_hyperbolic: bool) -> (RatMatrix, RatMatrix) {
        let n = self.dim;
        let mut m = self.gram.clone();
        let mut c = RatMatrix::identity(n);

        // basis change e_k ← e_k + t e_l, updating both m and c
        let add_col = |m: &mut RatMatrix, c: &mut RatMatrix, k: usize, l: usize, t: &Rat| {
            for r in 0..n {
                let v = m.at(r, k) + t * m.at(r, l);
                m.set(r, k, v);
            }
            for cc in 0..n {
                let v = m.at(k, cc) + t * m.at(l, cc);
                m.set(k, cc, v);
            }
            for r in 0..n {
                let v = c.at(r, k) + t * c.at(r, l);
                c.set(r, k, v);
            }
        };
        let swap_cols = |m: &mut RatMatrix, c: &mut RatMatrix, k: usize, l: usize| {
            for r in 0..n {
                let a = m.at(r, k).clone();
                let b = m.at(r, l).clone();
                m.set(r, k, b);
                m.set(r, l, a);
            }
            for cc in 0..n {
                let a = m.at(k, cc).clone();
                let b = m.at(l, cc).clone();
                m.set(k, cc, b);
                m.set(l, cc, a);
            }
            for r in 0..n {
                let a = c.at(r, k).clone();
                let b = c.at(r, l).clone();
                c.set(r, k, b);
                c.set(r, l, a);
            }
        };

        for k in 0..n {
            if m.at(k, k).is_zero() {
                if let Some(l) = (k + 1..n).find(|&l| !m.at(l, l).is_zero()) {
                    swap_cols(&mut m, &mut c, k, l);
                } else if let Some(l) = (k + 1..n).find(|&l| !m.at(k, l).is_zero()) {
                    // hyperbolic pair: with t = 1/(2⟨e_k,e_l⟩) the new norm is 1
                    let t = if unit_hyperbolic {
                        Rat::one() / (Rat::from_integer(2.into()) * m.at(k, l))
                    } else {
                        Rat::one()
                    };
                    add_col(&mut m, &mut c, k, l, &t);
                } else {
                    continue; // radical direction, diagonal entry stays 0
                }
            }
            let pivot = m.at(k, k).clone();
            for l in k + 1..n {
                if !m.at(l, k).is_zero() {
                    let t = -(m.at(l, k) / &pivot);
                    add_col(&mut m, &mut c, l, k, &t);
                }
            }
        }
        let d = RatMatrix::from_fn(n, n, |r, cc| {
            if r == cc {
                m.at(r, r).clone()
            } else {
                Rat::zero()
            }
        });
        (c, d)
    }

    /// Sylvester signature `(p, q, r)`: counts of positive, negative and zero
    /// entries in any congruence diagonalization. `r > 0` means degenerate.
    pub fn signature(&self) -> (usize, usize, usize) {
        let (_, d) = self.congruence_diagonalize();
        let (mut p, mut q, mut r) = (0, 0, 0);
        for i in 0..self.dim {
            match sign(d.at(i, i)) {
                1 => p += 1,
                -1 => q += 1,
                _ => r += 1,
            }
        }
        (p, q, r)
    }

    /// Basis of `{x : ⟨x, s⟩ = 0 for every column s of subspace}`.
    pub fn orthogonal_complement(
        &self,
        subspace: &RatMatrix,
    ) -> Result<RatMatrix, ExactLinError> {
        if subspace.rows() != self.dim {
            return Err(ExactLinError::InvalidShape(
                "subspace lives in a different dimension".into(),
            ));
        }
        if subspace.rank() != subspace.cols() {
            return Err(ExactLinError::InvalidBasis);
        }
        Ok((&subspace.transpose() * &self.gram).nullspace())
    }

    /// Witt decomposition relative to a distinguished subspace (the center of
    /// a metric Lie algebra). The isotropic partner `v` is chosen by greedy
    /// pairing against `u` in the ambient basis order, which fixes the
    /// non-canonical choice deterministically.
    pub fn witt_decompose(&self, center: &RatMatrix) -> Result<WittParts, ExactLinError> {
        if center.rank() != center.cols() {
            return Err(ExactLinError::InvalidBasis);
        }
        let n = self.dim;
        let restricted = self.restrict(center);
        let u_coords = restricted.gram.nullspace();
        let mut u_cols: Vec<Vec<Rat>> = (0..u_coords.cols())
            .map(|c| center.mul_vec(&u_coords.col(c)))
            .collect();
        let r = u_cols.len();

        if r == 0 {
            return Ok(WittParts {
                u: RatMatrix::zeros(n, 0),
                v: RatMatrix::zeros(n, 0),
                z_tilde: center.clone(),
                v_tilde: self.orthogonal_complement(center)?,
            });
        }

        // Hyperbolic completion: for each u_i pick the first ambient basis
        // vector that still pairs with it after projecting off the pairs
        // already built, normalize ⟨u_i, v_i⟩ = 1, isotropize v_i, and correct
        // the remaining u_k so that ⟨u_k, v_i⟩ = 0.
        let mut v_cols: Vec<Vec<Rat>> = Vec::with_capacity(r);
        for i in 0..r {
            let ui = u_cols[i].clone();
            let mut w = None;
            for e in 0..n {
                let mut cand = crate::matrix::basis_vec(n, e);
                for j in 0..v_cols.len() {
                    let a = self.pairing(&cand, &v_cols[j]);
                    let b = self.pairing(&cand, &u_cols[j]);
                    for (t, (uj, vj)) in cand
                        .iter_mut()
                        .zip(u_cols[j].iter().zip(v_cols[j].iter()))
                    {
                        *t = &*t - &a * uj - &b * vj;
                    }
                }
                if !self.pairing(&ui, &cand).is_zero() {
                    w = Some(cand);
                    break;
                }
            }
            let mut w = w.expect("nondegenerate form must provide a Witt partner");
            let s = self.pairing(&ui, &w);
            let inv = Rat::one() / s;
            for t in w.iter_mut() {
                *t = &*t * &inv;
            }
            let half_norm = self.pairing(&w, &w) / Rat::from_integer(2.into());
            for (t, uu) in w.iter_mut().zip(ui.iter()) {
                *t = &*t - &half_norm * uu;
            }
            for k in i + 1..r {
                let a = self.pairing(&u_cols[k], &w);
                if !a.is_zero() {
                    for (t, uu) in u_cols[k].iter_mut().zip(ui.iter()) {
                        *t = &*t - &a * uu;
                    }
                }
            }
            v_cols.push(w);
        }
        let u = RatMatrix::from_columns(&u_cols);
        let v = RatMatrix::from_columns(&v_cols);

        // z̃ = portion of the center orthogonal to v (it is automatically
        // orthogonal to u), then ṽ = (u ⊕ v ⊕ z̃)^⊥
        let pair_vc = &(&v.transpose() * &self.gram) * center;
        let z_tilde = if center.cols() > 0 {
            let coords = pair_vc.nullspace();
            // the u-coordinates also solve this; quotient them out by taking a
            // complement of u inside the solution space
            let sol: Vec<Vec<Rat>> = (0..coords.cols())
                .map(|c| center.mul_vec(&coords.col(c)))
                .collect();
            let mut kept: Vec<Vec<Rat>> = Vec::new();
            let mut span = u.clone();
            for s in sol {
                if !span.span_contains(&s) {
                    span = span.hstack(&RatMatrix::column(&s));
                    kept.push(s);
                }
            }
            if kept.is_empty() {
                RatMatrix::zeros(n, 0)
            } else {
                RatMatrix::from_columns(&kept)
            }
        } else {
            RatMatrix::zeros(n, 0)
        };
        let uvz = u.hstack(&v).hstack(&z_tilde);
        let v_tilde = self.orthogonal_complement(&uvz)?;
        Ok(WittParts {
            u,
            v,
            z_tilde,
            v_tilde,
        })
    }

    /// Tries to produce an exact orthonormal basis: columns `b_i` with
    /// `⟨b_i, b_j⟩ = ±δ_ij`. Exists over ℚ iff every pivot produced by the
    /// exact Gram-Schmidt sweep has square-rational absolute value; hyperbolic
    /// pairs always normalize. Returns the basis and the signs.
    pub fn rational_orthonormal_basis(&self) -> Option<(RatMatrix, Vec<i8>)> {
        let (c, d) = self.diagonalize_inner(true);
        let mut cols = Vec::with_capacity(self.dim);
        let mut signs = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let dk = d.at(k, k);
            if dk.is_zero() {
                return None;
            }
            let root = sqrt_of_abs(dk)?;
            let inv = Rat::one() / root;
            cols.push(
                c.col(k)
                    .into_iter()
                    .map(|x| x * &inv)
                    .collect::<Vec<Rat>>(),
            );
            signs.push(sign(dk));
        }
        // positive directions first, for predictable output
        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by_key(|&i| (signs[i] < 0) as u8);
        let basis = RatMatrix::from_columns(&order.iter().map(|&i| cols[i].clone()).collect::<Vec<_>>());
        let signs = order.iter().map(|&i| signs[i]).collect();
        Some((basis, signs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::basis_vec;
    use crate::rat::rat;

    fn dim6_gram() -> SymmetricForm {
        // ⟨e1,e6⟩ = ⟨e3,e4⟩ = 1, ⟨e2,e5⟩ = -1 (the ad-invariant neutral
        // metric on the six-dimensional double of h3)
        SymmetricForm::from_i64_rows(&[
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, -1, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, -1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
        ])
    }

    /// All-plus sign variant of the dim-6 pairing (not ad-invariant as a
    /// metric on the algebra, but the same quadratic form).
    fn dim6_gram_plus() -> SymmetricForm {
        SymmetricForm::from_i64_rows(&[
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
        ])
    }

    #[test]
    fn signature_of_diagonal_form() {
        let f = SymmetricForm::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        assert_eq!(f.signature(), (2, 1, 0));
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let f = SymmetricForm::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(f.signature(), (1, 1, 0));
    }

    #[test]
    fn signature_of_dim6_neutral_metric() {
        // three hyperbolic planes, independent of the sign of the pairings
        assert_eq!(dim6_gram().signature(), (3, 3, 0));
        assert_eq!(dim6_gram_plus().signature(), (3, 3, 0));
    }

    #[test]
    fn congruence_certificate() {
        for f in [
            dim6_gram(),
            SymmetricForm::from_i64_rows(&[&[2, 1, 0], &[1, 0, 3], &[0, 3, -5]]),
            SymmetricForm::from_i64_rows(&[&[0, 0], &[0, 0]]),
        ] {
            let (c, d) = f.congruence_diagonalize();
            let lhs = &(&c.transpose() * f.gram()) * &c;
            assert_eq!(lhs, d);
            for r in 0..f.dim() {
                for cc in 0..f.dim() {
                    if r != cc {
                        assert!(d.at(r, cc).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn signature_invariant_under_unimodular_congruence() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
        let f = dim6_gram();
        let base = f.signature();
        for _ in 0..10 {
            // random product of elementary column operations is unimodular
            let mut c = RatMatrix::identity(6);
            for _ in 0..8 {
                let i = rng.gen_range(0..6);
                let mut j = rng.gen_range(0..6);
                if i == j {
                    j = (j + 1) % 6;
                }
                let t = rat(rng.gen_range(-3..=3));
                for r in 0..6 {
                    let v = c.at(r, i) + &t * c.at(r, j);
                    c.set(r, i, v);
                }
            }
            let g = SymmetricForm::new(&(&c.transpose() * f.gram()) * &c).unwrap();
            assert_eq!(g.signature(), base);
        }
    }

    #[test]
    fn complement_in_euclidean_space() {
        let f = SymmetricForm::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let sub = RatMatrix::from_columns(&[basis_vec(3, 0)]);
        let comp = f.orthogonal_complement(&sub).unwrap();
        let expected = RatMatrix::from_columns(&[basis_vec(3, 1), basis_vec(3, 2)]);
        assert!(comp.span_eq(&expected));
    }

    #[test]
    fn complement_of_isotropic_center_is_itself_plus_nothing() {
        let f = dim6_gram();
        let sub = RatMatrix::from_columns(&[basis_vec(6, 0), basis_vec(6, 1), basis_vec(6, 2)]);
        let comp = f.orthogonal_complement(&sub).unwrap();
        assert!(comp.span_eq(&sub));
    }

    #[test]
    fn complement_for_h3_lorentz_1() {
        let f = SymmetricForm::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let sub = RatMatrix::from_columns(&[basis_vec(3, 2)]);
        let comp = f.orthogonal_complement(&sub).unwrap();
        let expected = RatMatrix::from_columns(&[basis_vec(3, 0), basis_vec(3, 1)]);
        assert!(comp.span_eq(&expected));
    }

    #[test]
    fn complement_rejects_dependent_basis() {
        let f = SymmetricForm::from_i64_rows(&[&[1, 0], &[0, 1]]);
        let sub = RatMatrix::from_columns(&[basis_vec(2, 0), basis_vec(2, 0)]);
        assert_eq!(
            f.orthogonal_complement(&sub),
            Err(ExactLinError::InvalidBasis)
        );
    }

    fn check_witt_invariants(f: &SymmetricForm, center: &RatMatrix, w: &WittParts) {
        let n = f.dim();
        // form vanishes on u and on v
        for a in 0..w.u.cols() {
            for b in 0..w.u.cols() {
                assert!(f.pairing(&w.u.col(a), &w.u.col(b)).is_zero());
            }
        }
        for a in 0..w.v.cols() {
            for b in 0..w.v.cols() {
                assert!(f.pairing(&w.v.col(a), &w.v.col(b)).is_zero());
            }
        }
        // u × v pairing nondegenerate
        assert_eq!(w.u.cols(), w.v.cols());
        if w.u.cols() > 0 {
            let p = &(&w.u.transpose() * f.gram()) * &w.v;
            assert_eq!(p.rank(), w.u.cols());
        }
        // z̃ ⊥ ṽ and both ⊥ (u ⊕ v)
        let uv = w.u.hstack(&w.v);
        for a in 0..w.z_tilde.cols() {
            for b in 0..w.v_tilde.cols() {
                assert!(f
                    .pairing(&w.z_tilde.col(a), &w.v_tilde.col(b))
                    .is_zero());
            }
            for b in 0..uv.cols() {
                assert!(f.pairing(&w.z_tilde.col(a), &uv.col(b)).is_zero());
            }
        }
        for a in 0..w.v_tilde.cols() {
            for b in 0..uv.cols() {
                assert!(f.pairing(&w.v_tilde.col(a), &uv.col(b)).is_zero());
            }
        }
        // restricted forms nondegenerate
        assert!(f.restrict(&w.z_tilde).is_nondegenerate());
        assert!(f.restrict(&w.v_tilde).is_nondegenerate());
        // direct sum of the four parts is everything
        let all = uv.hstack(&w.z_tilde).hstack(&w.v_tilde);
        assert_eq!(all.cols(), n);
        assert_eq!(all.rank(), n);
        // z̃ sits inside the center
        for a in 0..w.z_tilde.cols() {
            assert!(center.span_contains(&w.z_tilde.col(a)));
        }
    }

    #[test]
    fn witt_with_nondegenerate_center_is_trivial() {
        // h3 with the Lorentz metric (1): center span{e3} nondegenerate
        let f = SymmetricForm::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let center = RatMatrix::from_columns(&[basis_vec(3, 2)]);
        let w = f.witt_decompose(&center).unwrap();
        assert_eq!(w.u.cols(), 0);
        assert_eq!(w.v.cols(), 0);
        assert!(w.z_tilde.span_eq(&center));
        check_witt_invariants(&f, &center, &w);
    }

    #[test]
    fn witt_with_fully_isotropic_center() {
        let f = dim6_gram();
        let center = RatMatrix::from_columns(&[basis_vec(6, 0), basis_vec(6, 1), basis_vec(6, 2)]);
        let w = f.witt_decompose(&center).unwrap();
        assert_eq!(w.u.cols(), 3);
        assert_eq!(w.v.cols(), 3);
        assert_eq!(w.z_tilde.cols(), 0);
        assert_eq!(w.v_tilde.cols(), 0);
        assert!(w.u.span_eq(&center));
        check_witt_invariants(&f, &center, &w);
    }

    #[test]
    fn witt_for_r_x_h3_center() {
        // metric of the ℝ×h3 example restricted to its center span{e3,e4}
        // has Gram [[0,1],[1,0]]: nondegenerate, so u = 0
        let f = SymmetricForm::from_i64_rows(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
        ]);
        let center = RatMatrix::from_columns(&[basis_vec(4, 2), basis_vec(4, 3)]);
        assert_eq!(f.restrict(&center).signature(), (1, 1, 0));
        let w = f.witt_decompose(&center).unwrap();
        assert_eq!(w.u.cols(), 0);
        check_witt_invariants(&f, &center, &w);
    }

    #[test]
    fn witt_mixed_degeneracy() {
        // center span{e1, e4} in a 5-dim space where e1 is null against the
        // center but pairs with e2 outside it
        let f = SymmetricForm::from_i64_rows(&[
            &[0, 1, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, -1],
        ]);
        let center = RatMatrix::from_columns(&[basis_vec(5, 0), basis_vec(5, 3)]);
        let w = f.witt_decompose(&center).unwrap();
        assert_eq!(w.u.cols(), 1);
        assert_eq!(w.z_tilde.cols(), 1);
        assert_eq!(w.v_tilde.cols(), 2);
        check_witt_invariants(&f, &center, &w);
    }

    #[test]
    fn orthonormal_basis_for_hyperbolic_pairs() {
        let f = dim6_gram();
        let (b, signs) = f.rational_orthonormal_basis().unwrap();
        assert_eq!(signs.iter().filter(|&&s| s > 0).count(), 3);
        let g = f.restrict(&b);
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { rat(signs[i] as i64) } else { rat(0) };
                assert_eq!(*g.gram().at(i, j), expect);
            }
        }
    }

    #[test]
    fn orthonormal_basis_fails_on_non_square_norms() {
        let f = SymmetricForm::from_i64_rows(&[&[2]]);
        assert!(f.rational_orthonormal_basis().is_none());
        let f = SymmetricForm::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert!(f.rational_orthonormal_basis().is_none());
    }
}
