//! Built-in model spaces and random pinched samples.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Matrix4, Matrix6, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curvature::{random_algebraic_tensor, CurvatureOperator, RiemannTensor};
use crate::error::{Error, Result};
use crate::scan::{scan_operator, Budget};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelName {
    S4,
    Cp2,
    S2xS2,
    FlatT4,
}

impl ModelName {
    pub const ALL: [ModelName; 4] = [ModelName::S4, ModelName::Cp2, ModelName::S2xS2, ModelName::FlatT4];
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelName::S4 => "S4",
            ModelName::Cp2 => "CP2",
            ModelName::S2xS2 => "S2xS2",
            ModelName::FlatT4 => "FlatT4",
        })
    }
}

impl FromStr for ModelName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModelName::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

/// Scale parameters; each model reads the ones it needs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Radius of `S4`.
    pub r: f64,
    /// Holomorphic sectional curvature of `CP2`.
    pub c: f64,
    /// Radii of the `S2xS2` factors.
    pub a: f64,
    pub b: f64,
    /// Side of the flat torus.
    pub l: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            r: 1.0,
            c: 4.0,
            a: 1.0,
            b: 1.0,
            l: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpace {
    pub name: String,
    pub params: Vec<(&'static str, f64)>,
    pub tensor: RiemannTensor,
    pub volume: f64,
    pub lambda1: Option<f64>,
    /// Where the `lambda1` value comes from.
    pub lambda1_source: &'static str,
    pub expected_chi: i32,
    pub expected_tau: i32,
    pub homogeneous: bool,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveParam { name, value })
    }
}

/// Kähler curvature of constant holomorphic sectional curvature `c` for the
/// complex structure `J e1 = e2`, `J e3 = e4`:
///
/// `R(x,y,z,w) = c/4 (⟨x,z⟩⟨y,w⟩ − ⟨x,w⟩⟨y,z⟩ + ⟨Jx,z⟩⟨Jy,w⟩ − ⟨Jx,w⟩⟨Jy,z⟩ + 2⟨Jx,y⟩⟨Jz,w⟩)`.
pub fn kahler_constant_holomorphic(c: f64) -> RiemannTensor {
    let mut j = Matrix4::zeros();
    j[(1, 0)] = 1.0;
    j[(0, 1)] = -1.0;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    let e = |i: usize| {
        let mut v = Vector4::zeros();
        v[i] = 1.0;
        v
    };
    RiemannTensor::from_fn(|a, b, cc, d| {
        let (x, y, z, w) = (e(a), e(b), e(cc), e(d));
        let (jx, jy, jz) = (j * x, j * y, j * z);
        c / 4.0
            * (x.dot(&z) * y.dot(&w) - x.dot(&w) * y.dot(&z) + jx.dot(&z) * jy.dot(&w) - jx.dot(&w) * jy.dot(&z)
                + 2.0 * jx.dot(&y) * jz.dot(&w))
    })
}

/// Product of round spheres of radii `a` on `span(e1, e2)` and `b` on
/// `span(e3, e4)`.
pub fn sphere_product(a: f64, b: f64) -> RiemannTensor {
    let mut m = Matrix6::zeros();
    m[(0, 0)] = 1.0 / (a * a);
    m[(5, 5)] = 1.0 / (b * b);
    CurvatureOperator { matrix: m }.to_tensor()
}

pub fn model(name: ModelName, p: &ModelParams) -> Result<ModelSpace> {
    Ok(match name {
        ModelName::S4 => {
            let r = positive("r", p.r)?;
            ModelSpace {
                name: name.to_string(),
                params: vec![("r", r)],
                tensor: RiemannTensor::constant_curvature(1.0 / (r * r)),
                volume: 8.0 * PI * PI * r.powi(4) / 3.0,
                lambda1: Some(4.0 / (r * r)),
                lambda1_source: "n/r^2 for the round n-sphere",
                expected_chi: 2,
                expected_tau: 0,
                homogeneous: true,
            }
        }
        ModelName::Cp2 => {
            let c = positive("c", p.c)?;
            ModelSpace {
                name: name.to_string(),
                params: vec![("c", c)],
                tensor: kahler_constant_holomorphic(c),
                volume: 8.0 * PI * PI / (c * c),
                lambda1: Some(3.0 * c),
                lambda1_source: "Fubini-Study spectrum (12 at c = 4), literature value",
                expected_chi: 3,
                expected_tau: 1,
                homogeneous: true,
            }
        }
        ModelName::S2xS2 => {
            let (a, b) = (positive("a", p.a)?, positive("b", p.b)?);
            ModelSpace {
                name: name.to_string(),
                params: vec![("a", a), ("b", b)],
                tensor: sphere_product(a, b),
                volume: 16.0 * PI * PI * a * a * b * b,
                lambda1: Some((2.0 / (a * a)).min(2.0 / (b * b))),
                lambda1_source: "smaller first eigenvalue 2/r^2 of the round factors",
                expected_chi: 4,
                expected_tau: 0,
                homogeneous: true,
            }
        }
        ModelName::FlatT4 => {
            let l = positive("L", p.l)?;
            ModelSpace {
                name: name.to_string(),
                params: vec![("L", l)],
                tensor: RiemannTensor::zero(),
                volume: l.powi(4),
                lambda1: Some(4.0 * PI * PI / (l * l)),
                lambda1_source: "(2 pi / L)^2 for the cubic flat torus",
                expected_chi: 0,
                expected_tau: 0,
                homogeneous: true,
            }
        }
    })
}

/// Kind of perturbation added to the round sphere by [`pinched_sample`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Perturbation {
    /// Any algebraic curvature tensor.
    #[default]
    Generic,
    /// Only the self-dual Weyl block; the result has `W⁻ = 0` and is Einstein.
    SelfDualWeyl,
}

pub const SAMPLE_ATTEMPTS: usize = 1000;

fn unit_perturbation(rng: &mut ChaCha8Rng, kind: Perturbation) -> CurvatureOperator {
    let op = match kind {
        Perturbation::Generic => {
            let t = random_algebraic_tensor(rng.random(), 1.0);
            CurvatureOperator::from_tensor(&t).expect("projected tensor is algebraic")
        }
        Perturbation::SelfDualWeyl => {
            let mut w = Matrix3::from_fn(|_, _| rng.random::<f64>() - 0.5);
            w = (w + w.transpose()) * 0.5;
            w -= Matrix3::identity() * (w.trace() / 3.0);
            CurvatureOperator::from_blocks(&w, &Matrix3::zeros(), &Matrix3::zeros())
        }
    };
    let n = op.frobenius();
    CurvatureOperator {
        matrix: op.matrix / if n > 0.0 { n } else { 1.0 },
    }
}

/// Round `S⁴` plus a random perturbation of Frobenius size `scale`,
/// rescaled so that `K ≤ 1` and accepted once the scan shows `K ≥ δ_target`.
pub fn pinched_sample(seed: u64, delta_target: f64, scale: f64, kind: Perturbation) -> Result<RiemannTensor> {
    if !(delta_target > 0.0 && delta_target <= 1.0) {
        return Err(Error::InconsistentInputs(format!("target pinching {delta_target} outside (0, 1]")));
    }
    if scale == 0.0 {
        return Ok(RiemannTensor::constant_curvature(1.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = Budget::default();
    for _ in 0..SAMPLE_ATTEMPTS {
        let pert = unit_perturbation(&mut rng, kind);
        let op = CurvatureOperator {
            matrix: Matrix6::identity() + pert.matrix * scale,
        };
        let rep = scan_operator(&op, &budget)?;
        if rep.k_max <= 0.0 {
            continue;
        }
        // Leave room for the scan accuracy so the true maximum stays below 1.
        let factor = 1.0 / (rep.k_max * (1.0 + 2.0 * tol::SCAN_ACCURACY));
        if rep.k_min * factor >= delta_target {
            let out = CurvatureOperator {
                matrix: op.matrix * factor,
            };
            return Ok(out.to_tensor());
        }
    }
    Err(Error::SamplingExhausted(SAMPLE_ATTEMPTS))
}
