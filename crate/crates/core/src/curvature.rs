//! Algebraic curvature tensors in dimension four and their block
//! decomposition on `Λ² = Λ⁺ ⊕ Λ⁻`.
//!
//! Sign convention: `R[i][j][i][j]` is the sectional curvature of the
//! coordinate plane `e_i ^ e_j`, so the round sphere of radius one has
//! `R_ijkl = δ_ik δ_jl − δ_il δ_jk`. The curvature operator is the symmetric
//! matrix on wedge coefficients with entry `R_ijkl` at `(e_i^e_j, e_k^e_l)`;
//! for a unit decomposable form `P`, `⟨ℛ(P), P⟩` is the sectional curvature.
//!
//! Written in the basis `(H1, H2, H3, K1, K2, K3)` of [`crate::forms`], the
//! operator takes the block shape
//!
//! ```text
//!     ⎡ W⁺ + s/12   B        ⎤
//! ℛ = ⎢                      ⎥ ,   B : Λ⁻ → Λ⁺ the traceless Ricci block.
//!     ⎣ Bᵀ          W⁻ + s/12⎦
//! ```
//!
//! No extra factor is attached to `B`: it is whatever makes the blocks
//! reassemble to `ℛ`. Its Frobenius norm then satisfies
//! `‖B‖² = |R̊ic|²/4`, with `|R̊ic|²` the full tensor norm `Σ R̊ic_ij²`, so
//! `‖Z‖² = 2‖B‖² = |R̊ic|²/2`.

use nalgebra::{Matrix3, Matrix4, Matrix6, SymmetricEigen, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{block_basis, Frame4, BASIS_PAIRS};
use crate::tol;

type Components = [[[[f64; 4]; 4]; 4]; 4];

/// Pointwise curvature tensor, full `4⁴` component array (zero-based indices).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RiemannTensor {
    pub components: Components,
}

/// Largest residual of each symmetry class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    /// `R_ijkl + R_jikl`
    pub antisym_first: f64,
    /// `R_ijkl + R_ijlk`
    pub antisym_second: f64,
    /// `R_ijkl − R_klij`
    pub pair: f64,
    /// `R_ijkl + R_iklj + R_iljk`
    pub bianchi: f64,
}

impl SymmetryReport {
    pub fn max_residual(&self) -> f64 {
        self.antisym_first
            .max(self.antisym_second)
            .max(self.pair)
            .max(self.bianchi)
    }

    pub fn is_valid(&self) -> bool {
        self.max_residual() <= tol::SYMMETRY
    }
}

impl RiemannTensor {
    pub fn zero() -> Self {
        Self {
            components: [[[[0.0; 4]; 4]; 4]; 4],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize, usize, usize) -> f64>(mut f: F) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        out.components[i][j][k][l] = f(i, j, k, l);
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.components[i][j][k][l]
    }

    /// Constant sectional curvature `k`.
    pub fn constant_curvature(k: f64) -> Self {
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        Self::from_fn(|i, j, k2, l| k * (d(i, k2) * d(j, l) - d(i, l) * d(j, k2)))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_fn(|i, j, k, l| factor * self.get(i, j, k, l))
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::from_fn(|i, j, k, l| self.get(i, j, k, l) + other.get(i, j, k, l))
    }

    pub fn validate_symmetries(&self) -> SymmetryReport {
        let mut rep = SymmetryReport {
            antisym_first: 0.0,
            antisym_second: 0.0,
            pair: 0.0,
            bianchi: 0.0,
        };
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let r = self.get(i, j, k, l);
                        rep.antisym_first = rep.antisym_first.max((r + self.get(j, i, k, l)).abs());
                        rep.antisym_second =
                            rep.antisym_second.max((r + self.get(i, j, l, k)).abs());
                        rep.pair = rep.pair.max((r - self.get(k, l, i, j)).abs());
                        let b = r + self.get(i, k, l, j) + self.get(i, l, j, k);
                        rep.bianchi = rep.bianchi.max(b.abs());
                    }
                }
            }
        }
        rep
    }

    fn require_valid(&self) -> Result<()> {
        let rep = self.validate_symmetries();
        if rep.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSymmetry(rep.max_residual()))
        }
    }

    /// Orthogonal projection of an arbitrary 4-tensor onto algebraic
    /// curvature tensors: antisymmetrise each pair, symmetrise the pairs, then
    /// remove the totally antisymmetric part.
    pub fn project_algebraic(raw: &Components) -> Self {
        let t = |i: usize, j: usize, k: usize, l: usize| raw[i][j][k][l];
        let anti = Self::from_fn(|i, j, k, l| {
            0.25 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k))
        });
        let sym = Self::from_fn(|i, j, k, l| 0.5 * (anti.get(i, j, k, l) + anti.get(k, l, i, j)));
        Self::from_fn(|i, j, k, l| {
            let b = sym.get(i, j, k, l) + sym.get(i, k, l, j) + sym.get(i, l, j, k);
            sym.get(i, j, k, l) - b / 3.0
        })
    }

    /// Components in a rotated frame: `R'(e'_a, e'_b, e'_c, e'_d)`.
    pub fn rotated(&self, frame: &Frame4) -> Self {
        let g = frame.matrix();
        // Contract one index at a time.
        let mut cur = self.components;
        for slot in 0..4 {
            let mut next = [[[[0.0; 4]; 4]; 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let idx = [a, b, c, d];
                            let mut acc = 0.0;
                            for m in 0..4 {
                                let mut src = idx;
                                src[slot] = m;
                                acc += g[(m, idx[slot])] * cur[src[0]][src[1]][src[2]][src[3]];
                            }
                            next[a][b][c][d] = acc;
                        }
                    }
                }
            }
            cur = next;
        }
        Self { components: cur }
    }

    /// Ricci contraction `Ric_ik = Σ_j R_ijkj`.
    pub fn ricci(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, k| (0..4).map(|j| self.get(i, j, k, j)).sum())
    }

    pub fn scalar(&self) -> f64 {
        self.ricci().trace()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(text).map_err(|e| {
            let line = e.line();
            let context = text
                .lines()
                .nth(line.saturating_sub(1))
                .unwrap_or("")
                .chars()
                .take(120)
                .collect();
            Error::MalformedJson {
                line,
                column: e.column(),
                message: e.to_string(),
                context,
            }
        })?;
        t.require_valid()?;
        Ok(t)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("tensor serialisation cannot fail")
    }
}

/// Deterministic random algebraic curvature tensor with entries of order
/// `scale`.
pub fn random_algebraic_tensor(seed: u64, scale: f64) -> RiemannTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = [[[[0.0; 4]; 4]; 4]; 4];
    for a in raw.iter_mut() {
        for b in a.iter_mut() {
            for c in b.iter_mut() {
                for d in c.iter_mut() {
                    *d = StandardNormal.sample(&mut rng);
                }
            }
        }
    }
    RiemannTensor::project_algebraic(&raw).scaled(scale)
}

/// The curvature tensor as a symmetric operator on `Λ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureOperator {
    pub matrix: Matrix6<f64>,
}

impl CurvatureOperator {
    pub fn from_tensor(r: &RiemannTensor) -> Result<Self> {
        r.require_valid()?;
        Ok(Self::from_tensor_unchecked(r))
    }

    pub(crate) fn from_tensor_unchecked(r: &RiemannTensor) -> Self {
        let matrix = Matrix6::from_fn(|a, b| {
            let (i, j) = BASIS_PAIRS[a];
            let (k, l) = BASIS_PAIRS[b];
            r.get(i, j, k, l)
        });
        Self { matrix }
    }

    /// Inverse of [`Self::from_tensor`].
    pub fn to_tensor(&self) -> RiemannTensor {
        let mut out = RiemannTensor::zero();
        for (a, &(i, j)) in BASIS_PAIRS.iter().enumerate() {
            for (b, &(k, l)) in BASIS_PAIRS.iter().enumerate() {
                let v = self.matrix[(a, b)];
                out.components[i][j][k][l] = v;
                out.components[j][i][k][l] = -v;
                out.components[i][j][l][k] = -v;
                out.components[j][i][l][k] = v;
            }
        }
        out
    }

    pub fn apply(&self, w: &crate::forms::Form2) -> crate::forms::Form2 {
        crate::forms::Form2::from_vector(&(self.matrix * w.to_vector()))
    }

    /// `⟨ℛ(ω), ω⟩`.
    pub fn quadratic(&self, w: &crate::forms::Form2) -> f64 {
        let v = w.to_vector();
        v.dot(&(self.matrix * v))
    }

    pub fn bilinear(&self, a: &crate::forms::Form2, b: &crate::forms::Form2) -> f64 {
        b.to_vector().dot(&(self.matrix * a.to_vector()))
    }

    /// `(A, B, C)` with `ℛ = [[A, B], [Bᵀ, C]]` in the `(H, K)` block basis.
    pub fn blocks(&self) -> (Matrix3<f64>, Matrix3<f64>, Matrix3<f64>) {
        let q = block_basis();
        let m = q * self.matrix * q.transpose();
        let a = m.fixed_view::<3, 3>(0, 0).into_owned();
        let b = m.fixed_view::<3, 3>(0, 3).into_owned();
        let c = m.fixed_view::<3, 3>(3, 3).into_owned();
        ((a + a.transpose()) * 0.5, b, (c + c.transpose()) * 0.5)
    }

    pub fn from_blocks(a: &Matrix3<f64>, b: &Matrix3<f64>, c: &Matrix3<f64>) -> Self {
        let mut m = Matrix6::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(a);
        m.fixed_view_mut::<3, 3>(0, 3).copy_from(b);
        m.fixed_view_mut::<3, 3>(3, 0).copy_from(&b.transpose());
        m.fixed_view_mut::<3, 3>(3, 3).copy_from(c);
        let q = block_basis();
        Self {
            matrix: q.transpose() * m * q,
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.matrix.norm()
    }
}

/// Ascending eigen-decomposition of a symmetric 3x3 matrix; column `i` of the
/// returned matrix is the unit eigenvector for eigenvalue `i`.
pub fn sorted_eigen3(m: &Matrix3<f64>) -> ([f64; 3], Matrix3<f64>) {
    let eig = SymmetricEigen::new(*m);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.map(|i| eig.eigenvalues[i]);
    let vectors = Matrix3::from_columns(&order.map(|i| eig.eigenvectors.column(i).into_owned()));
    (values, vectors)
}

/// `ℛ = U + W⁺ + W⁻ + Z` together with the Ricci data.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureDecomposition {
    pub s: f64,
    pub u: f64,
    pub ric: Matrix4<f64>,
    pub ric0: Matrix4<f64>,
    pub wplus: Matrix3<f64>,
    pub wminus: Matrix3<f64>,
    /// Traceless Ricci as a map `Λ⁻ → Λ⁺` (rows `H`, columns `K`).
    pub z_block: Matrix3<f64>,
    pub wp_eigs: [f64; 3],
    pub wm_eigs: [f64; 3],
    /// Eigenvectors of `W⁺` in `H`-coordinates, columns matching `wp_eigs`.
    pub wp_vectors: Matrix3<f64>,
    pub wm_vectors: Matrix3<f64>,
}

impl CurvatureDecomposition {
    pub fn new(r: &RiemannTensor) -> Result<Self> {
        let op = CurvatureOperator::from_tensor(r)?;
        let ric = r.ricci();
        let ric = (ric + ric.transpose()) * 0.5;
        let s = 2.0 * op.matrix.trace();
        let u = s / 12.0;
        let ric0 = ric - Matrix4::identity() * (s / 4.0);
        let (a, b, c) = op.blocks();
        let wplus = a - Matrix3::identity() * u;
        let wminus = c - Matrix3::identity() * u;
        let (wp_eigs, wp_vectors) = sorted_eigen3(&wplus);
        let (wm_eigs, wm_vectors) = sorted_eigen3(&wminus);
        Ok(Self {
            s,
            u,
            ric,
            ric0,
            wplus,
            wminus,
            z_block: b,
            wp_eigs,
            wm_eigs,
            wp_vectors,
            wm_vectors,
        })
    }

    pub fn reassemble(&self) -> CurvatureOperator {
        let id = Matrix3::identity() * self.u;
        CurvatureOperator::from_blocks(&(self.wplus + id), &self.z_block, &(self.wminus + id))
    }

    pub fn wplus_norm2(&self) -> f64 {
        self.wp_eigs.iter().map(|w| w * w).sum()
    }

    pub fn wminus_norm2(&self) -> f64 {
        self.wm_eigs.iter().map(|w| w * w).sum()
    }

    /// `|R̊ic|² = Σ R̊ic_ij²`.
    pub fn ric0_norm2(&self) -> f64 {
        self.ric0.norm_squared()
    }

    /// `‖Z‖² = ‖R̊ic‖² + ‖R̊ic*‖² = 2‖B‖²`.
    pub fn z_norm2(&self) -> f64 {
        2.0 * self.z_block.norm_squared()
    }

    /// The same curvature seen with the opposite orientation: `Λ⁺` and `Λ⁻`
    /// trade places.
    pub fn reversed_orientation(&self) -> Self {
        Self {
            wplus: self.wminus,
            wminus: self.wplus,
            z_block: self.z_block.transpose(),
            wp_eigs: self.wm_eigs,
            wm_eigs: self.wp_eigs,
            wp_vectors: self.wm_vectors,
            wm_vectors: self.wp_vectors,
            ..self.clone()
        }
    }

    /// Eigen-data of `W⁺` for use by callers that need the basis.
    pub fn wplus_eigenbasis(&self) -> [Vector3<f64>; 3] {
        [0, 1, 2].map(|i| self.wp_vectors.column(i).into_owned())
    }
}

pub fn decompose(r: &RiemannTensor) -> Result<CurvatureDecomposition> {
    CurvatureDecomposition::new(r)
}
