//! The curvature term `𝒩` of the Weitzenböck formula on 2-forms and the
//! lower bound
//!
//! ```text
//! ⟨𝒩ω, ω⟩ ≥ 4K₁⊥|ω|² − ⅓(s − 12K₁⊥)·| |ω₊|² − |ω₋|² |
//! ```
//!
//! `𝒩` is evaluated from its defining bilinear expression
//!
//! ```text
//! ⟨𝒩(v₁∧v₂), w₁∧w₂⟩ = Ric(v₁,w₁)⟨v₂,w₂⟩ + Ric(v₂,w₂)⟨v₁,w₁⟩
//!                    − Ric(v₁,w₂)⟨v₂,w₁⟩ − Ric(v₂,w₁)⟨v₁,w₂⟩ + 2⟨R(v₁,v₂)w₁,w₂⟩
//! ```
//!
//! where `⟨R(x,y)z,w⟩ = −R(x,y,z,w)` in this crate's sign convention. That
//! choice is pinned by the round sphere, on which `𝒩 = 4·Id`.
//! The Laplacian convention `Δf = div ∇f` does not enter: only the algebraic
//! curvature term is computed here.

use nalgebra::{Matrix4, Matrix6, Vector4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::CheckReport;
use crate::curvature::{CurvatureDecomposition, CurvatureOperator, RiemannTensor};
use crate::error::{Error, Result};
use crate::forms::{Form2, Frame4, Plane2, BASIS_PAIRS, FRAC_1_SQRT_2};
use crate::scan::{k1perp_closed_form, k3perp_closed_form};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeitzenbockOperator {
    pub matrix: Matrix6<f64>,
}

fn tensor_eval(r: &RiemannTensor, x: &Vector4<f64>, y: &Vector4<f64>, z: &Vector4<f64>, w: &Vector4<f64>) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let xy = x[i] * y[j];
            if xy == 0.0 {
                continue;
            }
            for k in 0..4 {
                for l in 0..4 {
                    acc += xy * z[k] * w[l] * r.get(i, j, k, l);
                }
            }
        }
    }
    acc
}

/// `⟨𝒩(v₁∧v₂), w₁∧w₂⟩` for arbitrary vectors.
pub fn weitzenbock_bilinear(
    r: &RiemannTensor,
    ric: &Matrix4<f64>,
    v1: &Vector4<f64>,
    v2: &Vector4<f64>,
    w1: &Vector4<f64>,
    w2: &Vector4<f64>,
) -> f64 {
    let ricf = |a: &Vector4<f64>, b: &Vector4<f64>| a.dot(&(ric * b));
    ricf(v1, w1) * v2.dot(w2) + ricf(v2, w2) * v1.dot(w1)
        - ricf(v1, w2) * v2.dot(w1)
        - ricf(v2, w1) * v1.dot(w2)
        - 2.0 * tensor_eval(r, v1, v2, w1, w2)
}

impl WeitzenbockOperator {
    pub fn new(r: &RiemannTensor) -> Result<Self> {
        CurvatureOperator::from_tensor(r)?;
        let ric = r.ricci();
        let e = |i: usize| {
            let mut v = Vector4::zeros();
            v[i] = 1.0;
            v
        };
        let matrix = Matrix6::from_fn(|a, b| {
            let (i, j) = BASIS_PAIRS[a];
            let (k, l) = BASIS_PAIRS[b];
            weitzenbock_bilinear(r, &ric, &e(i), &e(j), &e(k), &e(l))
        });
        Ok(Self { matrix })
    }

    pub fn quadratic(&self, w: &Form2) -> f64 {
        let v = w.to_vector();
        v.dot(&(self.matrix * v))
    }

    pub fn bilinear(&self, a: &Form2, b: &Form2) -> f64 {
        b.to_vector().dot(&(self.matrix * a.to_vector()))
    }
}

pub fn weitzenbock_operator(r: &RiemannTensor) -> Result<WeitzenbockOperator> {
    WeitzenbockOperator::new(r)
}

/// Both sides of the lower bound for one form, plus the intermediate bound
/// obtained before the `K₃⊥ ≤ s/4 − 2K₁⊥` step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Sides {
    pub lhs: f64,
    /// `4K₁⊥|ω|² − (4/3)(K₃⊥ − K₁⊥)·| |ω₊|² − |ω₋|² |`
    pub intermediate: f64,
    pub rhs: f64,
}

/// Precomputed data for evaluating the lower bound on many forms.
#[derive(Clone, Debug)]
pub struct Lemma1 {
    pub operator: WeitzenbockOperator,
    pub s: f64,
    pub k1perp: f64,
    pub k3perp: f64,
}

impl Lemma1 {
    pub fn new(r: &RiemannTensor) -> Result<Self> {
        let operator = WeitzenbockOperator::new(r)?;
        let dec = CurvatureDecomposition::new(r)?;
        Ok(Self {
            operator,
            s: dec.s,
            k1perp: k1perp_closed_form(&dec),
            k3perp: k3perp_closed_form(&dec),
        })
    }

    pub fn sides(&self, w: &Form2) -> Lemma1Sides {
        let (plus, minus) = w.split();
        let gap = (plus.norm_squared() - minus.norm_squared()).abs();
        let n2 = w.norm_squared();
        Lemma1Sides {
            lhs: self.operator.quadratic(w),
            intermediate: 4.0 * self.k1perp * n2 - 4.0 / 3.0 * (self.k3perp - self.k1perp) * gap,
            rhs: 4.0 * self.k1perp * n2 - (self.s - 12.0 * self.k1perp) / 3.0 * gap,
        }
    }
}

pub fn lemma1_check(r: &RiemannTensor, w: &Form2) -> Result<Lemma1Sides> {
    Ok(Lemma1::new(r)?.sides(w))
}

/// The lower bound on `n_forms` random forms; returns the final bound and the
/// intermediate step as two reports.
pub fn lemma1_suite(r: &RiemannTensor, n_forms: usize, seed: u64) -> Result<(CheckReport, CheckReport)> {
    let lemma = Lemma1::new(r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fin = CheckReport::new("weitzenbock lower bound", tol::INEQUALITY);
    let mut mid = CheckReport::new("weitzenbock bound via seaman estimate", tol::INEQUALITY);
    for _ in 0..n_forms {
        let w = Form2::random(&mut rng);
        let sides = lemma.sides(&w);
        fin.record(sides.lhs - sides.rhs);
        mid.record(sides.lhs - sides.intermediate);
    }
    Ok((fin, mid))
}

/// `K₃⊥ ≤ s/4 − 2K₁⊥`.
pub fn k3_bound_check(dec: &CurvatureDecomposition) -> CheckReport {
    let scale = dec.s.abs().max(1.0);
    let mut rep = CheckReport::new("K3perp <= s/4 - 2 K1perp", 1e-12 * scale);
    let (k1, k3) = (k1perp_closed_form(dec), k3perp_closed_form(dec));
    rep.record(dec.s / 4.0 - 2.0 * k1 - k3);
    rep
}

/// Oriented frame `{e₁..e₄}` in which
/// `ω = (|ω₊|+|ω₋|)/√2 · e₁∧e₂ + (|ω₊|−|ω₋|)/√2 · e₃∧e₄`.
pub fn adapted_frame(w: &Form2) -> Result<Frame4> {
    let (plus, minus) = w.split();
    let (a, b) = (plus.norm(), minus.norm());
    let tiny = 1e-300;
    if a <= tiny && b <= tiny {
        return Err(Error::DegenerateForm);
    }
    let h = if a > tiny { plus * (1.0 / a) } else { (Form2::e(0, 1) + Form2::e(2, 3)) * FRAC_1_SQRT_2 };
    let k = if b > tiny { minus * (1.0 / b) } else { (Form2::e(0, 1) - Form2::e(2, 3)) * FRAC_1_SQRT_2 };
    Ok(Plane2::from_sd_asd(&h, &k, 1e-8)?.adapted_frame())
}

/// The expansion of `⟨𝒩ω, ω⟩` in an adapted frame versus the direct value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub lhs: f64,
    /// `|ω|²(K₁₃+K₁₄+K₂₃+K₂₄) − 2R₁₂₃₄(|ω₊|²−|ω₋|²)`
    pub rhs: f64,
    /// `2|ω|²(K⊥₁₃+K⊥₁₄) − 2R₁₂₃₄(|ω₊|²−|ω₋|²)`
    pub rhs_biorthogonal: f64,
    pub r1234: f64,
    pub frame: Frame4,
}

impl IdentityCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs().max((self.lhs - self.rhs_biorthogonal).abs())
    }
}

pub fn intermediate_identity_check(r: &RiemannTensor, w: &Form2) -> Result<IdentityCheck> {
    let op = CurvatureOperator::from_tensor(r)?;
    let n = WeitzenbockOperator::new(r)?;
    let frame = adapted_frame(w)?;

    let (plus, minus) = w.split();
    let (a, b) = (plus.norm(), minus.norm());
    let coords = frame.coords_of(w);
    let expected = [(a + b) * FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0, (a - b) * FRAC_1_SQRT_2];
    let off = coords
        .coeffs
        .iter()
        .zip(expected.iter())
        .map(|(c, e)| (c - e).abs())
        .fold(0.0, f64::max);
    if off > 1e-8 * w.norm().max(1.0) {
        return Err(Error::InconsistentInputs(format!("frame not adapted to the form (defect {off:.3e})")));
    }

    let k = |i: usize, j: usize| op.quadratic(&frame.form(i, j));
    let r1234 = op.bilinear(&frame.form(0, 1), &frame.form(2, 3));
    let n2 = w.norm_squared();
    let gap = plus.norm_squared() - minus.norm_squared();
    let rhs = n2 * (k(0, 2) + k(0, 3) + k(1, 2) + k(1, 3)) - 2.0 * r1234 * gap;
    let perp13 = 0.5 * (k(0, 2) + k(1, 3));
    let perp14 = 0.5 * (k(0, 3) + k(1, 2));
    let rhs_biorthogonal = 2.0 * n2 * (perp13 + perp14) - 2.0 * r1234 * gap;
    Ok(IdentityCheck {
        lhs: n.quadratic(w),
        rhs,
        rhs_biorthogonal,
        r1234,
        frame,
    })
}
