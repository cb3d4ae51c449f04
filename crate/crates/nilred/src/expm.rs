//! Floating-point matrix exponentials for the geodesic machinery.
//!
//! Everything algebraic in this crate is exact; the only place floats appear
//! is integrating geodesics, which needs `e^{tJ}` and its running integral
//! `Φ(t) = ∫₀ᵗ e^{sJ} ds`. The exponential is a degree-13 Padé approximant
//! with scaling and squaring (Higham 2005); `Φ` comes from the same machinery
//! applied to the block matrix `[[M, I], [0, 0]]`, whose exponential carries
//! `Φ` in its top-right block.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExpmError {
    #[error("matrix exponential needs a square matrix, got {rows}x{cols}")]
    InvalidShape { rows: usize, cols: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
}

/// Minimal dense `f64` matrix. Row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FMat {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<f64>,
}

impl FMat {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![0.0; n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == n_cols));
        Self {
            n_rows,
            n_cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.n_cols, v.len());
        (0..self.n_rows)
            .map(|r| (0..self.n_cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.n_cols)
            .map(|c| (0..self.n_rows).map(|r| self[(r, c)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    pub fn block(&self, r0: usize, c0: usize, n_rows: usize, n_cols: usize) -> Self {
        let mut out = Self::zeros(n_rows, n_cols);
        for r in 0..n_rows {
            for c in 0..n_cols {
                out[(r, c)] = self[(r0 + r, c0 + c)];
            }
        }
        out
    }

    /// Solves `self * X = B` by LU with partial pivoting.
    pub fn lu_solve(&self, b: &FMat) -> Option<FMat> {
        assert_eq!(self.n_rows, self.n_cols);
        assert_eq!(self.n_rows, b.n_rows);
        let n = self.n_rows;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|r| (r, lu[(r, k)].abs()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax == 0.0 || !pmax.is_finite() {
                return None;
            }
            if p != k {
                for c in 0..n {
                    lu.data.swap(p * n + c, k * n + c);
                }
                perm.swap(p, k);
            }
            for r in k + 1..n {
                let f = lu[(r, k)] / lu[(k, k)];
                lu[(r, k)] = f;
                for c in k + 1..n {
                    lu[(r, c)] -= f * lu[(k, c)];
                }
            }
        }
        let mut x = FMat::zeros(n, b.n_cols);
        for col in 0..b.n_cols {
            let mut y = vec![0.0; n];
            for r in 0..n {
                let mut s = b[(perm[r], col)];
                for c in 0..r {
                    s -= lu[(r, c)] * y[c];
                }
                y[r] = s;
            }
            for r in (0..n).rev() {
                let mut s = y[r];
                for c in r + 1..n {
                    s -= lu[(r, c)] * x[(c, col)];
                }
                x[(r, col)] = s / lu[(r, r)];
            }
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for FMat {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.n_cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.n_cols + c]
    }
}

impl Mul for &FMat {
    type Output = FMat;
    fn mul(self, rhs: &FMat) -> FMat {
        assert_eq!(self.n_cols, rhs.n_rows);
        let mut out = FMat::zeros(self.n_rows, rhs.n_cols);
        for r in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(r, k)];
                if a == 0.0 {
                    continue;
                }
                for c in 0..rhs.n_cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

impl Add for &FMat {
    type Output = FMat;
    fn add(self, rhs: &FMat) -> FMat {
        assert_eq!((self.n_rows, self.n_cols), (rhs.n_rows, rhs.n_cols));
        FMat {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FMat {
    type Output = FMat;
    fn sub(self, rhs: &FMat) -> FMat {
        assert_eq!((self.n_rows, self.n_cols), (rhs.n_rows, rhs.n_cols));
        FMat {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

// Padé coefficients for the degree-13 diagonal approximant (Higham 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// `e^A` by scaling and squaring with the degree-13 Padé approximant.
pub fn expm(a: &FMat) -> Result<FMat, ExpmError> {
    if a.n_rows != a.n_cols {
        return Err(ExpmError::InvalidShape {
            rows: a.n_rows,
            cols: a.n_cols,
        });
    }
    if a.data.iter().any(|x| !x.is_finite()) {
        return Err(ExpmError::NonFinite);
    }
    let n = a.n_rows;
    if n == 0 {
        return Ok(FMat::zeros(0, 0));
    }
    let norm = a.norm_1();
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let a = a.scale(0.5f64.powi(s as i32));
    let id = FMat::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let b = &PADE13;
    let w1 = &(&a6.scale(b[13]) + &a4.scale(b[11])) + &a2.scale(b[9]);
    let w2 = &(&(&a6.scale(b[7]) + &a4.scale(b[5])) + &a2.scale(b[3])) + &id.scale(b[1]);
    let u = &a * &(&(&a6 * &w1) + &w2);
    let z1 = &(&a6.scale(b[12]) + &a4.scale(b[10])) + &a2.scale(b[8]);
    let v = &(&(&a6 * &z1) + &(&a6.scale(b[6]) + &a4.scale(b[4]))) + &(&a2.scale(b[2]) + &id.scale(b[0]));
    let mut r = (&v - &u)
        .lu_solve(&(&v + &u))
        .ok_or(ExpmError::NonFinite)?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

/// Returns `(E, Φ)` with `E = e^{tM}` and `Φ = ∫₀ᵗ e^{sM} ds`.
///
/// `Φ` is read off the exponential of the augmented matrix
/// `[[tM, tI], [0, 0]]`: its top-right block is exactly the integral, so `Φ`
/// inherits the accuracy of the Padé machinery instead of a quadrature error.
pub fn mat_exp_phi(m: &FMat, t: f64) -> Result<(FMat, FMat), ExpmError> {
    if m.n_rows != m.n_cols {
        return Err(ExpmError::InvalidShape {
            rows: m.n_rows,
            cols: m.n_cols,
        });
    }
    if !t.is_finite() || m.data.iter().any(|x| !x.is_finite()) {
        return Err(ExpmError::NonFinite);
    }
    let n = m.n_rows;
    let mut block = FMat::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            block[(r, c)] = t * m[(r, c)];
        }
        block[(r, n + r)] = t;
    }
    let e_block = expm(&block)?;
    let e = e_block.block(0, 0, n, n);
    let phi = e_block.block(0, n, n, n);
    Ok((e, phi))
}
