//! Shared test oracles, independent of the implementation paths they check.

use nilred::matrix::RatMatrix;
use nilred::metgeo::{CenterSplitting, MetricNilLieAlgebra};
use nilred::rat::rat_to_f64;

pub fn fmat(m: &RatMatrix) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| rat_to_f64(m.at(r, c))).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// One state of the Euler-Arnold oracle.
#[derive(Debug, Clone)]
pub struct OracleSample {
    pub t: f64,
    /// Left-trivialized velocity, ambient coordinates.
    pub velocity: Vec<f64>,
    /// Position in exponential coordinates, ambient.
    pub position: Vec<f64>,
}

/// Integrates the left-invariant geodesic system with classical RK4:
///
/// ```text
/// u' = ad(u)* u                     (Euler-Arnold, ambient velocity)
/// v' = v-part of u
/// z' = z-part of u − ½ [v-part of u, v]
/// ```
///
/// This never touches the matrix-exponential machinery, so it cross-checks
/// the whole geodesic path construction.
pub struct EulerArnoldOracle {
    ad: Vec<Vec<Vec<f64>>>,
    gram: Vec<Vec<f64>>,
    gram_inv: Vec<Vec<f64>>,
    /// Inverse of the adapted basis `[z | v]`, for splitting ambient vectors.
    adapted_inv: Vec<Vec<f64>>,
    z_basis: Vec<Vec<f64>>,
    v_basis: Vec<Vec<f64>>,
    /// z-coordinates of `[v_a, v_b]`.
    bracket_z: Vec<Vec<Vec<f64>>>,
    p: usize,
    k: usize,
    n: usize,
}

impl EulerArnoldOracle {
    pub fn new(m: &MetricNilLieAlgebra, s: &CenterSplitting) -> Self {
        let n = m.dim();
        let p = s.z_basis.cols();
        let k = s.v_basis.cols();
        let ad = (0..n)
            .map(|i| fmat(&m.alg().ad(&nilred::matrix::basis_vec(n, i))))
            .collect();
        let gram = fmat(m.metric().gram());
        let gram_inv = fmat(&m.metric().gram().inverse().expect("nondegenerate"));
        let adapted = s.z_basis.hstack(&s.v_basis);
        let adapted_inv = fmat(&adapted.inverse().expect("z ⊕ v basis"));
        let mut bracket_z = vec![vec![vec![0.0; k]; k]; p];
        for a in 0..k {
            for b in 0..k {
                let br = m.alg().bracket(&s.v_basis.col(a), &s.v_basis.col(b));
                let coords = s.z_coords(&br);
                for (alpha, c) in coords.iter().enumerate() {
                    bracket_z[alpha][a][b] = rat_to_f64(c);
                }
            }
        }
        Self {
            ad,
            gram,
            gram_inv,
            adapted_inv,
            z_basis: fmat(&s.z_basis),
            v_basis: fmat(&s.v_basis),
            bracket_z,
            p,
            k,
            n,
        }
    }

    /// `ad(u)* u` with the metric adjoint computed in floats.
    fn ad_star_u_u(&self, u: &[f64]) -> Vec<f64> {
        let n = self.n;
        // ad(u) = Σ u_i ad_i
        let mut ad_u = vec![vec![0.0; n]; n];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0.0 {
                continue;
            }
            for r in 0..n {
                for c in 0..n {
                    ad_u[r][c] += ui * self.ad[i][r][c];
                }
            }
        }
        // ad* = G⁻¹ ad(u)ᵀ G applied to u
        let gu = mat_vec(&self.gram, u);
        let adt_gu: Vec<f64> = (0..n)
            .map(|r| (0..n).map(|c| ad_u[c][r] * gu[c]).sum())
            .collect();
        mat_vec(&self.gram_inv, &adt_gu)
    }

    fn derivative(&self, state: &[f64]) -> Vec<f64> {
        let n = self.n;
        let (u, rest) = state.split_at(n);
        let (zc, vc) = rest.split_at(self.p);
        let du = self.ad_star_u_u(u);
        let coords = mat_vec(&self.adapted_inv, u);
        let (u_z, u_v) = coords.split_at(self.p);
        let _ = zc;
        let mut dz = u_z.to_vec();
        for alpha in 0..self.p {
            let mut corr = 0.0;
            for a in 0..self.k {
                for b in 0..self.k {
                    corr += self.bracket_z[alpha][a][b] * u_v[a] * vc[b];
                }
            }
            dz[alpha] -= 0.5 * corr;
        }
        let mut out = du;
        out.extend(dz);
        out.extend(u_v.to_vec());
        out
    }

    /// Runs RK4 from `t = 0` with initial velocity `z0 + v0` (splitting
    /// coordinates) and reports states at the grid times. `h` is the maximum
    /// step; grid points are hit exactly.
    pub fn run(&self, z0: &[f64], v0: &[f64], grid: &[f64], h: f64) -> Vec<OracleSample> {
        let n = self.n;
        let mut u0 = vec![0.0; n];
        for (a, &c) in z0.iter().enumerate() {
            for r in 0..n {
                u0[r] += c * self.z_basis[r][a];
            }
        }
        for (a, &c) in v0.iter().enumerate() {
            for r in 0..n {
                u0[r] += c * self.v_basis[r][a];
            }
        }
        let mut state: Vec<f64> = u0;
        state.extend(vec![0.0; self.p + self.k]);
        let mut t = 0.0;
        let mut out = Vec::with_capacity(grid.len());
        for &target in grid {
            assert!(target >= t, "oracle grid must be increasing from 0");
            while t < target - 1e-15 {
                let step = h.min(target - t);
                state = self.rk4_step(&state, step);
                t += step;
            }
            let (u, rest) = state.split_at(n);
            let (zc, vc) = rest.split_at(self.p);
            let mut position = vec![0.0; n];
            for (a, &c) in zc.iter().enumerate() {
                for r in 0..n {
                    position[r] += c * self.z_basis[r][a];
                }
            }
            for (a, &c) in vc.iter().enumerate() {
                for r in 0..n {
                    position[r] += c * self.v_basis[r][a];
                }
            }
            out.push(OracleSample {
                t: target,
                velocity: u.to_vec(),
                position,
            });
        }
        out
    }

    fn rk4_step(&self, state: &[f64], h: f64) -> Vec<f64> {
        let add = |a: &[f64], b: &[f64], s: f64| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| x + s * y).collect()
        };
        let k1 = self.derivative(state);
        let k2 = self.derivative(&add(state, &k1, h / 2.0));
        let k3 = self.derivative(&add(state, &k2, h / 2.0));
        let k4 = self.derivative(&add(state, &k3, h));
        state
            .iter()
            .enumerate()
            .map(|(i, x)| x + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect()
    }
}
