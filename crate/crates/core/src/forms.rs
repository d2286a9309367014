//! Two-forms on an oriented Euclidean four-space.
//!
//! Coefficients are stored in the ordered orthonormal basis
//! `(e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4)` and the orientation is the one
//! making `e1^e2^e3^e4` positive. With these conventions the Hodge star is the
//! signed permutation `(a1, .., a6) -> (a6, -a5, a4, a3, -a2, a1)`.
//!
//! The self-dual and anti-self-dual subspaces get the orthonormal bases
//!
//! ```text
//! H1 = (e12 + e34)/√2   H2 = (e13 - e24)/√2   H3 = (e14 + e23)/√2
//! K1 = (e12 - e34)/√2   K2 = (e13 + e24)/√2   K3 = (e14 - e23)/√2
//! ```
//!
//! which every block matrix elsewhere in the crate is written in.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Matrix6, Vector3, Vector4, Vector6};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;
pub const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Zero-based index pairs `(i, j)`, `i < j`, in basis order.
pub const BASIS_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Position of `e_i ^ e_j` in the basis together with the sign picked up by
/// reordering; `None` when `i == j`.
pub fn pair_index(i: usize, j: usize) -> Option<(usize, f64)> {
    let (a, b, sign) = match i.cmp(&j) {
        std::cmp::Ordering::Less => (i, j, 1.0),
        std::cmp::Ordering::Greater => (j, i, -1.0),
        std::cmp::Ordering::Equal => return None,
    };
    BASIS_PAIRS
        .iter()
        .position(|&p| p == (a, b))
        .map(|idx| (idx, sign))
}

/// A 2-form at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Form2 {
    pub coeffs: [f64; 6],
}

impl Form2 {
    pub const fn new(coeffs: [f64; 6]) -> Self {
        Self { coeffs }
    }

    pub const fn zero() -> Self {
        Self { coeffs: [0.0; 6] }
    }

    /// The basis form at position `idx` (0..6).
    pub fn basis(idx: usize) -> Self {
        let mut coeffs = [0.0; 6];
        coeffs[idx] = 1.0;
        Self { coeffs }
    }

    /// `e_i ^ e_j` for zero-based `i`, `j`.
    pub fn e(i: usize, j: usize) -> Self {
        match pair_index(i, j) {
            Some((idx, sign)) => Self::basis(idx) * sign,
            None => Self::zero(),
        }
    }

    /// `x ^ y`.
    pub fn wedge(x: &Vector4<f64>, y: &Vector4<f64>) -> Self {
        let mut coeffs = [0.0; 6];
        for (c, &(i, j)) in coeffs.iter_mut().zip(BASIS_PAIRS.iter()) {
            *c = x[i] * y[j] - x[j] * y[i];
        }
        Self { coeffs }
    }

    pub fn from_vector(v: &Vector6<f64>) -> Self {
        Self {
            coeffs: [v[0], v[1], v[2], v[3], v[4], v[5]],
        }
    }

    pub fn to_vector(&self) -> Vector6<f64> {
        Vector6::from_column_slice(&self.coeffs)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn star(&self) -> Self {
        let a = &self.coeffs;
        Self {
            coeffs: [a[5], -a[4], a[3], a[2], -a[1], a[0]],
        }
    }

    /// `(ω₊, ω₋) = ((ω + ★ω)/2, (ω − ★ω)/2)`.
    pub fn split(&self) -> (Self, Self) {
        let s = self.star();
        ((*self + s) * 0.5, (*self - s) * 0.5)
    }

    /// `⟨ω, ★ω⟩`, the coefficient of `ω ^ ω` on the volume form. Zero exactly
    /// for decomposable forms.
    pub fn plucker(&self) -> f64 {
        self.dot(&self.star())
    }

    /// Coordinates of the self-dual part in the basis `H1, H2, H3`.
    pub fn sd_coords(&self) -> Vector3<f64> {
        let a = &self.coeffs;
        Vector3::new(a[0] + a[5], a[1] - a[4], a[2] + a[3]) * FRAC_1_SQRT_2
    }

    /// Coordinates of the anti-self-dual part in the basis `K1, K2, K3`.
    pub fn asd_coords(&self) -> Vector3<f64> {
        let a = &self.coeffs;
        Vector3::new(a[0] - a[5], a[1] + a[4], a[2] - a[3]) * FRAC_1_SQRT_2
    }

    /// Self-dual form with the given coordinates in `H1, H2, H3`.
    pub fn from_sd_coords(h: &Vector3<f64>) -> Self {
        let c = FRAC_1_SQRT_2;
        Self {
            coeffs: [c * h[0], c * h[1], c * h[2], c * h[2], -c * h[1], c * h[0]],
        }
    }

    /// Anti-self-dual form with the given coordinates in `K1, K2, K3`.
    pub fn from_asd_coords(k: &Vector3<f64>) -> Self {
        let c = FRAC_1_SQRT_2;
        Self {
            coeffs: [c * k[0], c * k[1], c * k[2], -c * k[2], c * k[1], -c * k[0]],
        }
    }

    /// The form as an antisymmetric 4x4 matrix.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for (c, &(i, j)) in self.coeffs.iter().zip(BASIS_PAIRS.iter()) {
            m[(i, j)] = *c;
            m[(j, i)] = -*c;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut coeffs = [0.0; 6];
        for c in coeffs.iter_mut() {
            *c = rng.sample(StandardNormal);
        }
        Self { coeffs }
    }
}

impl Add for Form2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut coeffs = self.coeffs;
        for (c, r) in coeffs.iter_mut().zip(rhs.coeffs) {
            *c += r;
        }
        Self { coeffs }
    }
}

impl Sub for Form2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Form2 {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for Form2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| c * rhs),
        }
    }
}

/// Orthogonal change of basis from the wedge basis to `(H1, H2, H3, K1, K2, K3)`:
/// row `a` holds the wedge coefficients of the `a`-th block basis vector.
pub fn block_basis() -> Matrix6<f64> {
    let mut q = Matrix6::zeros();
    for a in 0..3 {
        let mut unit = Vector3::zeros();
        unit[a] = 1.0;
        let h = Form2::from_sd_coords(&unit);
        let k = Form2::from_asd_coords(&unit);
        for c in 0..6 {
            q[(a, c)] = h.coeffs[c];
            q[(a + 3, c)] = k.coeffs[c];
        }
    }
    q
}

/// The Hodge star as a 6x6 matrix on wedge coefficients.
pub fn star_matrix() -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    for idx in 0..6 {
        let col = Form2::basis(idx).star();
        for r in 0..6 {
            m[(r, idx)] = col.coeffs[r];
        }
    }
    m
}

/// An oriented orthonormal frame; column `i` is the vector `e_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame4 {
    columns: Matrix4<f64>,
}

impl Frame4 {
    pub fn identity() -> Self {
        Self {
            columns: Matrix4::identity(),
        }
    }

    pub fn new(columns: Matrix4<f64>, tol: f64) -> Result<Self> {
        let defect = (columns.transpose() * columns - Matrix4::identity()).abs().max();
        if defect > tol {
            return Err(Error::NonOrthonormalInput {
                norm_defect: defect,
                inner: defect,
            });
        }
        let det = columns.determinant();
        if det < 0.0 {
            return Err(Error::InconsistentInputs(format!(
                "frame has determinant {det:.6}, expected +1"
            )));
        }
        Ok(Self { columns })
    }

    /// Haar-distributed random element of SO(4).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let g = Matrix4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let qr = g.qr();
        let (mut q, r) = (qr.q(), qr.r());
        for i in 0..4 {
            if r[(i, i)] < 0.0 {
                q.column_mut(i).neg_mut();
            }
        }
        if q.determinant() < 0.0 {
            q.column_mut(3).neg_mut();
        }
        Self { columns: q }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.columns
    }

    pub fn vector(&self, i: usize) -> Vector4<f64> {
        self.columns.column(i).into_owned()
    }

    /// `e_i ^ e_j` of this frame, expressed in the standard wedge basis.
    pub fn form(&self, i: usize, j: usize) -> Form2 {
        Form2::wedge(&self.vector(i), &self.vector(j))
    }

    /// Coefficients of `ω` in the wedge basis built from this frame.
    pub fn coords_of(&self, omega: &Form2) -> Form2 {
        let mut coeffs = [0.0; 6];
        for (c, &(i, j)) in coeffs.iter_mut().zip(BASIS_PAIRS.iter()) {
            *c = omega.dot(&self.form(i, j));
        }
        Form2 { coeffs }
    }
}

/// An oriented 2-plane, stored as its unit decomposable form together with
/// the unit self-dual and anti-self-dual forms `H`, `K` with `form = (H+K)/√2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane2 {
    pub form: Form2,
    pub sd_unit: Form2,
    pub asd_unit: Form2,
}

impl Plane2 {
    pub fn from_vectors(x: &Vector4<f64>, y: &Vector4<f64>, tol: f64) -> Result<Self> {
        let norm_defect = (x.norm() - 1.0).abs().max((y.norm() - 1.0).abs());
        let inner = x.dot(y);
        if norm_defect > tol || inner.abs() > tol {
            return Err(Error::NonOrthonormalInput { norm_defect, inner });
        }
        let form = Form2::wedge(x, y);
        let (plus, minus) = form.split();
        Ok(Self {
            form,
            sd_unit: plus * SQRT_2,
            asd_unit: minus * SQRT_2,
        })
    }

    pub fn from_sd_asd(h: &Form2, k: &Form2, tol: f64) -> Result<Self> {
        let (h_norm, k_norm) = (h.norm(), k.norm());
        if (h_norm - 1.0).abs() > tol || (k_norm - 1.0).abs() > tol {
            return Err(Error::NonUnitInput { h_norm, k_norm });
        }
        let h_res = (h.star() - *h).norm();
        if h_res > tol {
            return Err(Error::WrongDuality("H", h_res));
        }
        let k_res = (k.star() + *k).norm();
        if k_res > tol {
            return Err(Error::WrongDuality("K", k_res));
        }
        Ok(Self {
            form: (*h + *k) * FRAC_1_SQRT_2,
            sd_unit: *h,
            asd_unit: *k,
        })
    }

    /// Plane from (not necessarily normalised) coordinates on the unit spheres
    /// of the self-dual and anti-self-dual blocks.
    pub fn from_block_coords(h: &Vector3<f64>, k: &Vector3<f64>) -> Self {
        let hu = Form2::from_sd_coords(&h.normalize());
        let ku = Form2::from_asd_coords(&k.normalize());
        Self {
            form: (hu + ku) * FRAC_1_SQRT_2,
            sd_unit: hu,
            asd_unit: ku,
        }
    }

    /// The orthogonal complement `(H - K)/√2`.
    pub fn complement(&self) -> Self {
        Self {
            form: (self.sd_unit - self.asd_unit) * FRAC_1_SQRT_2,
            sd_unit: self.sd_unit,
            asd_unit: -self.asd_unit,
        }
    }

    /// An oriented orthonormal pair `(x, y)` with `x ^ y = form`.
    pub fn spanning_vectors(&self) -> (Vector4<f64>, Vector4<f64>) {
        let p = self.form.to_matrix();
        // For P = x yᵀ − y xᵀ, every column lies in the plane and P acts on it
        // as a quarter turn: P x = −y.
        let (best, _) = (0..4)
            .map(|j| (j, p.column(j).norm()))
            .fold((0, -1.0), |acc, c| if c.1 > acc.1 { c } else { acc });
        let x = p.column(best).normalize();
        let y = -(p * x);
        (x, y.normalize())
    }

    /// An oriented frame whose first two vectors span the plane.
    pub fn adapted_frame(&self) -> Frame4 {
        let (x, y) = self.spanning_vectors();
        let mut basis = vec![x, y];
        for i in 0..4 {
            if basis.len() == 4 {
                break;
            }
            let mut v = Vector4::zeros();
            v[i] = 1.0;
            for b in &basis {
                v -= b * b.dot(&v);
            }
            // Second pass keeps the result orthogonal to working precision.
            for b in &basis {
                v -= b * b.dot(&v);
            }
            if v.norm() > 0.3 {
                basis.push(v.normalize());
            }
        }
        let mut columns = Matrix4::from_columns(&basis);
        if columns.determinant() < 0.0 {
            columns.column_mut(3).neg_mut();
        }
        Frame4 { columns }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Levi-Civita symbol by counting inversions.
    fn levi_civita(p: [usize; 4]) -> f64 {
        for a in 0..4 {
            for b in (a + 1)..4 {
                if p[a] == p[b] {
                    return 0.0;
                }
            }
        }
        let mut inversions = 0;
        for a in 0..4 {
            for b in (a + 1)..4 {
                if p[a] > p[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// ★(e_i ^ e_j) = Σ_{k<l} ε_{ijkl} e_k ^ e_l.
    fn star_oracle(omega: &Form2) -> Form2 {
        let mut out = Form2::zero();
        for (idx, &(i, j)) in BASIS_PAIRS.iter().enumerate() {
            for &(k, l) in BASIS_PAIRS.iter() {
                out = out + Form2::e(k, l) * (omega.coeffs[idx] * levi_civita([i, j, k, l]));
            }
        }
        out
    }

    fn close(a: &Form2, b: &Form2, tol: f64) -> bool {
        (*a - *b).norm() <= tol
    }

    #[test]
    fn star_on_basis_forms() {
        assert_eq!(Form2::e(0, 1).star(), Form2::e(2, 3));
        assert_eq!(Form2::e(0, 2).star(), -Form2::e(1, 3));
        for idx in 0..6 {
            let b = Form2::basis(idx);
            assert!(close(&b.star(), &star_oracle(&b), 0.0));
        }
    }

    #[test]
    fn star_matches_levi_civita_on_random_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let w = Form2::random(&mut rng);
            assert!(close(&w.star(), &star_oracle(&w), 1e-14));
        }
    }

    #[test]
    fn star_is_isometric_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let w = Form2::random(&mut rng);
            assert!((w.star().norm() - w.norm()).abs() <= 1e-12);
            assert!(close(&w.star().star(), &w, 1e-12));
        }
    }

    #[test]
    fn split_of_basis_form() {
        let (p, m) = Form2::e(0, 1).split();
        assert_eq!(p, Form2::new([0.5, 0.0, 0.0, 0.0, 0.0, 0.5]));
        assert_eq!(m, Form2::new([0.5, 0.0, 0.0, 0.0, 0.0, -0.5]));
    }

    #[test]
    fn split_of_self_dual_form() {
        let h = Form2::from_sd_coords(&Vector3::new(0.3, -1.2, 2.0));
        let (p, m) = h.split();
        assert!(close(&p, &h, 1e-15));
        assert!(m.norm() <= 1e-15);
    }

    #[test]
    fn split_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let w = Form2::random(&mut rng);
            let (p, m) = w.split();
            assert!(close(&(p + m), &w, 1e-15));
            assert!((p.norm_squared() + m.norm_squared() - w.norm_squared()).abs() <= 1e-12);
            assert!(close(&p.star(), &p, 1e-15));
            assert!(close(&m.star(), &(-m), 1e-15));
        }
    }

    #[test]
    fn block_coordinates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let q = block_basis();
        assert!((q * q.transpose() - Matrix6::identity()).abs().max() < 1e-15);
        for _ in 0..100 {
            let w = Form2::random(&mut rng);
            let back = Form2::from_sd_coords(&w.sd_coords()) + Form2::from_asd_coords(&w.asd_coords());
            assert!(close(&back, &w, 1e-14));
        }
        let star = star_matrix();
        let d = q * star * q.transpose();
        let expected = Matrix6::from_diagonal(&Vector6::new(1.0, 1.0, 1.0, -1.0, -1.0, -1.0));
        assert!((d - expected).abs().max() < 1e-15);
    }

    #[test]
    fn coordinate_planes() {
        let e = |i: usize| {
            let mut v = Vector4::zeros();
            v[i] = 1.0;
            v
        };
        let p = Plane2::from_vectors(&e(0), &e(1), 1e-9).unwrap();
        assert_eq!(p.form, Form2::e(0, 1));
        let h = (Form2::e(0, 1) + Form2::e(2, 3)) * FRAC_1_SQRT_2;
        let k = (Form2::e(0, 1) - Form2::e(2, 3)) * FRAC_1_SQRT_2;
        assert!(close(&p.sd_unit, &h, 1e-15));
        assert!(close(&p.asd_unit, &k, 1e-15));

        let q = Plane2::from_vectors(&e(0), &e(2), 1e-9).unwrap();
        assert_eq!(q.form, Form2::e(0, 2));

        let back = Plane2::from_sd_asd(&h, &k, 1e-9).unwrap();
        assert!(close(&back.form, &Form2::e(0, 1), 1e-15));
        let comp = Plane2::from_sd_asd(&h, &(-k), 1e-9).unwrap();
        assert!(close(&comp.form, &Form2::e(2, 3), 1e-15));
        assert!(close(&back.complement().form, &comp.form, 1e-15));
    }

    #[test]
    fn plane_errors() {
        let x = Vector4::new(1.0, 0.0, 0.0, 0.0);
        let y = Vector4::new(0.1, 1.0, 0.0, 0.0);
        assert!(matches!(
            Plane2::from_vectors(&x, &y, 1e-9),
            Err(Error::NonOrthonormalInput { .. })
        ));
        let h = Form2::from_sd_coords(&Vector3::new(1.0, 0.0, 0.0));
        let k = Form2::from_asd_coords(&Vector3::new(0.0, 1.0, 0.0));
        assert!(matches!(
            Plane2::from_sd_asd(&(h * 2.0), &k, 1e-9),
            Err(Error::NonUnitInput { .. })
        ));
        assert!(matches!(
            Plane2::from_sd_asd(&k, &h, 1e-9),
            Err(Error::WrongDuality("H", _))
        ));
        assert!(matches!(
            Plane2::from_sd_asd(&h, &h, 1e-9),
            Err(Error::WrongDuality("K", _))
        ));
    }

    #[test]
    fn random_planes_are_decomposable_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let f = Frame4::random(&mut rng);
            let p = Plane2::from_vectors(&f.vector(0), &f.vector(1), 1e-9).unwrap();
            assert!(p.form.plucker().abs() <= 1e-10);
            let (plus, minus) = p.form.split();
            assert!((plus.norm() - FRAC_1_SQRT_2).abs() <= 1e-12);
            assert!((minus.norm() - FRAC_1_SQRT_2).abs() <= 1e-12);

            let q = Plane2::from_sd_asd(&p.sd_unit, &p.asd_unit, 1e-9).unwrap();
            assert!(close(&q.form, &p.form, 1e-10) || close(&q.form, &(-p.form), 1e-10));

            let (x, y) = q.spanning_vectors();
            assert!(close(&Form2::wedge(&x, &y), &q.form, 1e-10));
        }
    }

    #[test]
    fn any_unit_pair_gives_a_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let h = Vector3::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
            let k = Vector3::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
            let p = Plane2::from_block_coords(&h, &k);
            assert!((p.form.norm() - 1.0).abs() <= 1e-12);
            assert!(p.form.plucker().abs() <= 1e-10);
            assert!(p.form.dot(&p.complement().form).abs() <= 1e-12);
        }
    }

    #[test]
    fn decomposability_criterion_both_directions() {
        // decomposable
        let w = Form2::wedge(&Vector4::new(1.0, 2.0, 0.0, -1.0), &Vector4::new(0.0, 1.0, 3.0, 1.0));
        assert!(w.plucker().abs() < 1e-12);
        // e12 + e34 is not decomposable
        let v = Form2::e(0, 1) + Form2::e(2, 3);
        assert!((v.plucker() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adapted_frame_is_oriented_and_spans_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = Frame4::random(&mut rng);
            let p = Plane2::from_vectors(&f.vector(1), &f.vector(3), 1e-9).unwrap();
            let g = p.adapted_frame();
            assert!(Frame4::new(*g.matrix(), 1e-12).is_ok());
            assert!(close(&g.form(0, 1), &p.form, 1e-10));
            assert!(close(&g.form(2, 3), &p.form.star(), 1e-10));
        }
    }
}
