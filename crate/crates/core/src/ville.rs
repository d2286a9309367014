//! Estimates for `δ`-pinched curvature (`δ ≤ K ≤ 1`):
//!
//! 1. `δ ≤ ⟨(U + W)P, P⟩ ≤ 1` for every plane `P`, and
//!    `δ ≤ u + ½⟨W⁺H, H⟩ ≤ 1` for every unit self-dual `H`;
//! 2. `‖Z‖² ≤ 2 Σ A_i²`;
//! 3. the lower bound for `ℱ(g)` in terms of `v_i`, `λ_i⁻` and `α`.
//!
//! With `H_i` an eigenbasis of `W⁺`, `K_i = R̊ic*(H_i)/‖R̊ic*(H_i)‖`,
//! `z_i = ⟨R̊ic*(H_i), K_i⟩`, `λ_i⁻ = ⟨W⁻K_i, K_i⟩` and `v_i = u + ½w_i⁺`,
//! testing the planes `(H_i ± K_i)/√2` gives
//!
//! ```text
//! |z_i| ≤ A_i = min{1 − v_i − ½λ_i⁻, v_i + ½λ_i⁻ − δ}.
//! ```
//!
//! An alternative `A_i` with `+½λ_i⁻` in the first slot is available as
//! [`AVersion::Alternate`] for comparison. It is not implied by pinching.

use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::curvature::{CurvatureDecomposition, RiemannTensor};
use crate::error::Result;
use crate::forms::{Frame4, Plane2};
use crate::scan::{Budget, PinchingCertificate};
use crate::topology::fg_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum AVersion {
    /// `min{1 − v − ½λ, v + ½λ − δ}`, derived from the plane test.
    #[default]
    Derived,
    /// `min{1 − v + ½λ, v + ½λ − δ}`.
    Alternate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VilleData {
    pub delta: f64,
    pub u: f64,
    /// Orthonormal eigenbasis of `W⁺` in `H`-coordinates.
    pub h_basis: [Vector3<f64>; 3],
    /// `K_i` in `K`-coordinates; `None` where `R̊ic*(H_i) = 0`.
    pub k_units: [Option<Vector3<f64>>; 3],
    pub z: [f64; 3],
    pub lambda_minus: [f64; 3],
    pub v: [f64; 3],
    pub alpha: f64,
}

impl VilleData {
    pub fn a(&self, version: AVersion) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, a) in out.iter_mut().enumerate() {
            let (v, l) = (self.v[i], self.lambda_minus[i]);
            let upper = match version {
                AVersion::Derived => 1.0 - v - 0.5 * l,
                AVersion::Alternate => 1.0 - v + 0.5 * l,
            };
            *a = upper.min(v + 0.5 * l - self.delta);
        }
        out
    }

    /// `2 Σ z_i²`.
    pub fn z_norm2(&self) -> f64 {
        2.0 * self.z.iter().map(|z| z * z).sum::<f64>()
    }

    pub fn all_k_defined(&self) -> bool {
        self.k_units.iter().all(Option::is_some)
    }
}

pub fn ville_data(dec: &CurvatureDecomposition, delta: f64) -> VilleData {
    let h_basis = dec.wplus_eigenbasis();
    let scale = dec.s.abs().max(dec.z_block.norm()).max(1.0);
    let mut k_units = [None; 3];
    let mut z = [0.0; 3];
    let mut lambda_minus = [0.0; 3];
    for i in 0..3 {
        let image = dec.z_block.transpose() * h_basis[i];
        let n = image.norm();
        if n > 1e-13 * scale {
            let k = image / n;
            z[i] = image.dot(&k);
            lambda_minus[i] = k.dot(&(dec.wminus * k));
            k_units[i] = Some(k);
        }
    }
    let v = [0, 1, 2].map(|i| dec.u + 0.5 * dec.wp_eigs[i]);
    let alpha = lambda_minus.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    VilleData {
        delta,
        u: dec.u,
        h_basis,
        k_units,
        z,
        lambda_minus,
        v,
        alpha,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorBounds {
    /// `δ ≤ ⟨(U+W)P, P⟩ ≤ 1` on random planes.
    pub planes: CheckReport,
    /// `δ ≤ u + ½⟨W⁺H, H⟩ ≤ 1` on random unit self-dual forms.
    pub self_dual: CheckReport,
}

pub fn operator_bound_check(r: &RiemannTensor, delta: f64, n_planes: usize, seed: u64) -> Result<OperatorBounds> {
    let cert = PinchingCertificate::verify(r, delta, &Budget::default())?;
    let dec = CurvatureDecomposition::new(r)?;
    operator_bounds_certified(&dec, &cert, n_planes, seed)
}

pub fn operator_bounds_certified(
    dec: &CurvatureDecomposition,
    cert: &PinchingCertificate,
    n_planes: usize,
    seed: u64,
) -> Result<OperatorBounds> {
    cert.ensure_matches(dec)?;
    let delta = cert.delta();
    let tol = cert.report().accuracy();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planes = CheckReport::new("delta <= <(U+W)P,P> <= 1", tol);
    let mut self_dual = CheckReport::new("delta <= u + <W+ H,H>/2 <= 1", tol);
    for _ in 0..n_planes {
        let g = Frame4::random(&mut rng);
        let p = Plane2::from_vectors(&g.vector(0), &g.vector(1), 1e-9)?;
        let (h, k) = (p.sd_unit.sd_coords(), p.asd_unit.asd_coords());
        let val = dec.u + 0.5 * (h.dot(&(dec.wplus * h)) + k.dot(&(dec.wminus * k)));
        planes.record((val - delta).min(1.0 - val));

        let h = Vector3::from_fn(|_, _| StandardNormal.sample(&mut rng)).normalize();
        let val = dec.u + 0.5 * h.dot(&(dec.wplus * h));
        self_dual.record((val - delta).min(1.0 - val));
    }
    Ok(OperatorBounds { planes, self_dual })
}

/// `‖Z‖² ≤ 2 Σ A_i²` together with the per-index bounds `|z_i| ≤ A_i`.
pub fn znorm_bound_check(
    dec: &CurvatureDecomposition,
    cert: &PinchingCertificate,
    version: AVersion,
) -> Result<CheckReport> {
    cert.ensure_matches(dec)?;
    let data = ville_data(dec, cert.delta());
    let a = data.a(version);
    let tol = cert.report().accuracy();
    let name = match version {
        AVersion::Derived => "|Z|^2 <= 2 sum A_i^2",
        AVersion::Alternate => "|Z|^2 <= 2 sum A_i^2 (alternate A_i)",
    };
    let mut rep = CheckReport::new(name, tol);
    let lhs = dec.z_norm2();
    let rhs = 2.0 * a.iter().map(|x| x * x).sum::<f64>();
    rep.record(rhs - lhs);
    if rhs > 0.0 {
        rep.record_ratio(lhs / rhs);
    }
    if data.all_k_defined() && (lhs - data.z_norm2()).abs() > 1e-10 * lhs.max(1.0) {
        rep.note(format!("block norm {lhs:.12} differs from 2 sum z_i^2 = {:.12}", data.z_norm2()));
    }
    for i in 0..3 {
        if a[i] < -tol {
            rep.note(format!("A_{} = {:.3e} is negative: pinching and delta disagree", i + 1, a[i]));
        }
        if data.z[i].abs() > a[i] + tol {
            rep.note(format!("|z_{}| = {:.6e} exceeds A_{} = {:.6e}", i + 1, data.z[i].abs(), i + 1, a[i]));
        }
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegBound {
    pub fg: f64,
    pub bound: f64,
}

impl DegBound {
    pub fn slack(&self) -> f64 {
        self.fg - self.bound
    }
}

/// `ℱ(g) ≥ (10/9)(Σv)² − (4/3)Σv² + (7/2)α² − 2Σ min{(1−v−λ/2)², (v+λ/2−δ)²}`.
pub fn deg_lower_bound(dec: &CurvatureDecomposition, cert: &PinchingCertificate) -> Result<DegBound> {
    cert.ensure_matches(dec)?;
    Ok(deg_bound_unchecked(dec, cert.delta()))
}

pub(crate) fn deg_bound_unchecked(dec: &CurvatureDecomposition, delta: f64) -> DegBound {
    let data = ville_data(dec, delta);
    let sum: f64 = data.v.iter().sum();
    let sum_sq: f64 = data.v.iter().map(|v| v * v).sum();
    let mins: f64 = (0..3)
        .map(|i| {
            let (v, l) = (data.v[i], data.lambda_minus[i]);
            (1.0 - v - 0.5 * l).powi(2).min((v + 0.5 * l - delta).powi(2))
        })
        .sum();
    DegBound {
        fg: fg_value(dec),
        bound: 10.0 / 9.0 * sum * sum - 4.0 / 3.0 * sum_sq + 3.5 * data.alpha * data.alpha - 2.0 * mins,
    }
}
