//! Characteristic-number integrands.
//!
//! ```text
//! χ = 1/(8π²) ∫ (s²/24 + |W⁺|² + |W⁻|² − ½|R̊ic|²)
//! τ = 1/(12π²) ∫ (|W⁺|² − |W⁻|²)
//! χ − 2τ = 1/(8π²) ∫ ℱ(g),   ℱ(g) = s²/24 − ⅓|W⁺|² + (7/3)|W⁻|² − ½|R̊ic|²
//! ```
//!
//! Norms: `|W±|² = Σ (w_i±)²` (operator norm on `Λ±`) and `|R̊ic|² = Σ R̊ic_ij²`.
//! These are the normalisations under which the round `S⁴` gives `χ = 2`,
//! Fubini–Study `CP²` gives `(χ, τ) = (3, 1)` and `S²(a) × S²(b)` gives
//! `χ = 4` for every `a`, `b` (the last fixes the Ricci term, since the product
//! is Einstein only when `a = b`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curvature::CurvatureDecomposition;
use crate::error::{Error, Result};
use crate::models::ModelSpace;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrandValues {
    pub gbc: f64,
    pub sig: f64,
    pub fg: f64,
    pub chi_minus_2tau_density: f64,
}

pub fn gbc_integrand(dec: &CurvatureDecomposition) -> f64 {
    (dec.s * dec.s / 24.0 + dec.wplus_norm2() + dec.wminus_norm2() - 0.5 * dec.ric0_norm2()) / (8.0 * PI * PI)
}

pub fn signature_integrand(dec: &CurvatureDecomposition) -> f64 {
    (dec.wplus_norm2() - dec.wminus_norm2()) / (12.0 * PI * PI)
}

pub fn fg_value(dec: &CurvatureDecomposition) -> f64 {
    dec.s * dec.s / 24.0 - dec.wplus_norm2() / 3.0 + 7.0 / 3.0 * dec.wminus_norm2() - 0.5 * dec.ric0_norm2()
}

pub fn integrands(dec: &CurvatureDecomposition) -> IntegrandValues {
    let fg = fg_value(dec);
    IntegrandValues {
        gbc: gbc_integrand(dec),
        sig: signature_integrand(dec),
        fg,
        chi_minus_2tau_density: fg / (8.0 * PI * PI),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub chi: f64,
    pub tau: f64,
    pub chi_minus_2tau: f64,
}

/// Integrand times volume; valid only for homogeneous models.
pub fn homogeneous_invariants(model: &ModelSpace) -> Result<Invariants> {
    if !model.homogeneous {
        return Err(Error::NotHomogeneous(model.name.clone()));
    }
    let dec = CurvatureDecomposition::new(&model.tensor)?;
    let v = integrands(&dec);
    Ok(Invariants {
        chi: v.gbc * model.volume,
        tau: v.sig * model.volume,
        chi_minus_2tau: v.chi_minus_2tau_density * model.volume,
    })
}
