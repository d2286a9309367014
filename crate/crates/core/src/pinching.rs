//! The pinching constant and the two definiteness criteria.
//!
//! For `δ ∈ [0, 1]` and `x ∈ E = [δ, 1]³` put `m(x) = min{1 − x, x − δ}` and
//!
//! ```text
//! f(x₁, x₂, x₃) = (5/9)(Σxᵢ)² − (2/3)Σxᵢ² − Σ m(xᵢ)².
//! ```
//!
//! The corner reduction evaluates `f` at `(δ,δ,δ)`, `(δ,δ,1)`, `(δ,1,1)` and
//! `(1,1,1)`; the smallest `δ` for which all four are nonnegative is the root
//! `(3√3 − 5)/4` of `8δ² + 20δ − 1`.
//!
//! `f` is concave on each of the eight boxes into which the midpoint
//! `(1 + δ)/2` cuts `E`, but `m²` has a convex kink at the midpoint, so the
//! minimum over all of `E` is attained at a vertex of one of these boxes and
//! can lie below the corner minimum. [`cell_vertex_min`] computes it and
//! [`cellwise_critical_delta`] the resulting constant.

use std::fmt;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::curvature::CurvatureDecomposition;
use crate::error::{Error, Result};
use crate::scan::{k1perp_closed_form, k3perp_closed_form, PinchingReport};
use crate::tol;
use crate::topology::fg_value;
use crate::ville::ville_data;

pub fn m(x: f64, delta: f64) -> f64 {
    (1.0 - x).min(x - delta)
}

pub fn f_eval(x1: f64, x2: f64, x3: f64, delta: f64) -> f64 {
    let sum = x1 + x2 + x3;
    let sum_sq = x1 * x1 + x2 * x2 + x3 * x3;
    let mm = m(x1, delta).powi(2) + m(x2, delta).powi(2) + m(x3, delta).powi(2);
    5.0 / 9.0 * sum * sum - 2.0 / 3.0 * sum_sq - mm
}

/// Values of `f` at the four corners of `E` up to symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerValues {
    pub delta: f64,
    pub at_ddd: f64,
    pub at_dd1: f64,
    pub at_d11: f64,
    pub at_111: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Vertex {
    Ddd,
    Dd1,
    D11,
    One11,
}

impl Vertex {
    pub fn point(self, delta: f64) -> [f64; 3] {
        let d = delta;
        match self {
            Vertex::Ddd => [d, d, d],
            Vertex::Dd1 => [d, d, 1.0],
            Vertex::D11 => [d, 1.0, 1.0],
            Vertex::One11 => [1.0, 1.0, 1.0],
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vertex::Ddd => "(δ,δ,δ)",
            Vertex::Dd1 => "(δ,δ,1)",
            Vertex::D11 => "(δ,1,1)",
            Vertex::One11 => "(1,1,1)",
        })
    }
}

impl CornerValues {
    /// Direct evaluation of `f`.
    pub fn evaluate(delta: f64) -> Self {
        let at = |v: Vertex| {
            let [a, b, c] = v.point(delta);
            f_eval(a, b, c, delta)
        };
        Self {
            delta,
            at_ddd: at(Vertex::Ddd),
            at_dd1: at(Vertex::Dd1),
            at_d11: at(Vertex::D11),
            at_111: at(Vertex::One11),
        }
    }

    /// The closed forms `3δ²`, `(8δ²+20δ−1)/9`, `(−δ²+20δ+8)/9`, `3`.
    pub fn closed_form(delta: f64) -> Self {
        let d = delta;
        Self {
            delta,
            at_ddd: 3.0 * d * d,
            at_dd1: (8.0 * d * d + 20.0 * d - 1.0) / 9.0,
            at_d11: (-d * d + 20.0 * d + 8.0) / 9.0,
            at_111: 3.0,
        }
    }

    pub fn min(&self) -> (f64, Vertex) {
        [
            (self.at_ddd, Vertex::Ddd),
            (self.at_dd1, Vertex::Dd1),
            (self.at_d11, Vertex::D11),
            (self.at_111, Vertex::One11),
        ]
        .into_iter()
        .fold((f64::INFINITY, Vertex::Ddd), |best, c| if c.0 < best.0 { c } else { best })
    }
}

/// The Hessian of `f` inside a cell, divided by `10/9`.
pub fn inner_hessian() -> Matrix3<f64> {
    Matrix3::new(-2.0, 1.0, 1.0, 1.0, -2.0, 1.0, 1.0, 1.0, -2.0)
}

pub fn hessian_inner_eigs() -> [f64; 3] {
    let mut e: Vec<f64> = inner_hessian().symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(f64::total_cmp);
    [e[0], e[1], e[2]]
}

/// Corner minimum of `f` over `E`.
pub fn min_over_e(delta: f64) -> (f64, Vertex) {
    CornerValues::evaluate(delta).min()
}

/// Minimum over the grid with `n` points per axis (`n ≥ 2`), using the
/// symmetry of `f` to visit only `x₁ ≤ x₂ ≤ x₃`.
pub fn grid_min_over_e(delta: f64, n: usize) -> (f64, [f64; 3]) {
    let n = n.max(2);
    let h = (1.0 - delta) / (n - 1) as f64;
    let x = |i: usize| if i + 1 == n { 1.0 } else { delta + i as f64 * h };
    let mut best = (f64::INFINITY, [delta; 3]);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = f_eval(x(i), x(j), x(k), delta);
                if v < best.0 {
                    best = (v, [x(i), x(j), x(k)]);
                }
            }
        }
    }
    best
}

/// Exact minimum of `f` over `E`: the smallest value at a vertex of the
/// eight concavity cells, whose coordinates lie in `{δ, (1+δ)/2, 1}`.
pub fn cell_vertex_min(delta: f64) -> (f64, [f64; 3]) {
    let pts = [delta, 0.5 * (1.0 + delta), 1.0];
    let mut best = (f64::INFINITY, [delta; 3]);
    for i in 0..3 {
        for j in i..3 {
            for k in j..3 {
                let v = f_eval(pts[i], pts[j], pts[k], delta);
                if v < best.0 {
                    best = (v, [pts[i], pts[j], pts[k]]);
                }
            }
        }
    }
    best
}

/// `(3√3 − 5)/4`, the positive root of `8δ² + 20δ − 1`.
pub fn critical_delta_closed_form() -> f64 {
    (3.0 * 3f64.sqrt() - 5.0) / 4.0
}

/// Smallest `δ` in `[lo, hi]` with `g(δ) ≥ 0`, assuming `g(lo) < 0 ≤ g(hi)`
/// and a single sign change. Bisects until the bracket cannot shrink any
/// further, which is well below `1e-12`.
fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Smallest `δ ∈ [0, 1]` whose corner minimum is nonnegative, by bisection.
pub fn critical_delta() -> f64 {
    bisect(|d| min_over_e(d).0, 0.0, 1.0)
}

/// Smallest `δ ∈ [0, 1]` for which `f ≥ 0` on all of `E`, by bisection on
/// [`cell_vertex_min`].
pub fn cellwise_critical_delta() -> f64 {
    bisect(|d| cell_vertex_min(d).0, 0.0, 1.0)
}

/// `(3√39 − 14)/31`, the positive root of `31δ² + 28δ − 5` (the value of
/// `18 f(δ, δ, (1+δ)/2)`).
pub fn cellwise_critical_delta_closed_form() -> f64 {
    (3.0 * 39f64.sqrt() - 14.0) / 31.0
}

/// Both computations of the pinching constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaStar {
    pub bisection: f64,
    pub closed_form: f64,
    pub cellwise_bisection: f64,
    pub cellwise_closed_form: f64,
}

pub fn delta_star() -> DeltaStar {
    DeltaStar {
        bisection: critical_delta(),
        closed_form: critical_delta_closed_form(),
        cellwise_bisection: cellwise_critical_delta(),
        cellwise_closed_form: cellwise_critical_delta_closed_form(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    One,
    Two,
}

/// `ℱ(g)/2 ≥ f(v₁, v₂, v₃) ≥ 0` at the point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointwiseCheck {
    pub delta: f64,
    pub v: [f64; 3],
    pub fg_half: f64,
    pub f_at_v: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: Theorem,
    pub hypotheses_hold: bool,
    pub computed_threshold: f64,
    pub margin: f64,
    /// Empty unless the hypotheses hold.
    pub claim_text: String,
    pub orientation_flipped: bool,
    pub pointwise: Option<PointwiseCheck>,
    pub notes: Vec<String>,
}

pub const THEOREM1_CLAIM: &str = "topologically S⁴ or CP²";
pub const THEOREM2_CLAIM: &str = "intersection form definite; homeomorphic to #b₂ CP² or S⁴";

fn ensure_same_tensor(dec: &CurvatureDecomposition, scan: &PinchingReport) -> Result<()> {
    let tol = 10.0 * scan.accuracy();
    let (k1, k3) = (k1perp_closed_form(dec), k3perp_closed_form(dec));
    if (scan.k1perp - k1).abs() > tol || (scan.k3perp - k3).abs() > tol {
        return Err(Error::InconsistentInputs(format!(
            "scan (K1perp {}, K3perp {}) does not match the decomposition ({k1}, {k3})",
            scan.k1perp, scan.k3perp
        )));
    }
    Ok(())
}

/// Half-conformal flatness plus `(3√3−5)/4 ≤ K ≤ 1`.
pub fn theorem1_verdict(dec: &CurvatureDecomposition, scan: &PinchingReport) -> Result<TheoremVerdict> {
    ensure_same_tensor(dec, scan)?;
    let mut notes = Vec::new();
    let size = dec.reassemble().frobenius().max(1.0);
    let half_flat_tol = tol::HALF_FLAT * size;
    let (wm_zero, wp_zero) = (dec.wminus.norm() <= half_flat_tol, dec.wplus.norm() <= half_flat_tol);
    let mut flipped = false;
    let oriented = if wm_zero {
        dec.clone()
    } else if wp_zero {
        flipped = true;
        notes.push("W+ = 0: orientation reversed so that W- = 0 (signature changes sign)".into());
        dec.reversed_orientation()
    } else {
        notes.push(format!(
            "not half-conformally flat: |W+| = {:.3e}, |W-| = {:.3e}",
            dec.wplus.norm(),
            dec.wminus.norm()
        ));
        dec.clone()
    };
    let half_flat = wm_zero || wp_zero;

    let threshold = critical_delta_closed_form();
    let acc = scan.accuracy();
    let upper_ok = scan.k_max <= 1.0 + acc;
    let lower_ok = scan.k_min >= threshold - acc;
    if !upper_ok {
        notes.push(format!("sectional curvature exceeds 1 (max {:.9})", scan.k_max));
    }
    if !lower_ok {
        notes.push(format!("sectional curvature below {threshold:.9} (min {:.9})", scan.k_min));
    }
    let hold = half_flat && upper_ok && lower_ok;

    let pointwise = hold.then(|| {
        let delta = (scan.k_min - acc).clamp(0.0, 1.0);
        let data = ville_data(&oriented, delta);
        let f_at_v = f_eval(data.v[0], data.v[1], data.v[2], delta);
        let fg_half = 0.5 * fg_value(&oriented);
        let slack = tol::INEQUALITY * size * size;
        PointwiseCheck {
            delta,
            v: data.v,
            fg_half,
            f_at_v,
            holds: fg_half >= f_at_v - slack && f_at_v >= -slack,
        }
    });
    if let Some(p) = &pointwise {
        if !p.holds {
            notes.push(format!("pointwise inequality fails: F/2 = {}, f(v) = {}", p.fg_half, p.f_at_v));
        }
    }

    Ok(TheoremVerdict {
        theorem: Theorem::One,
        hypotheses_hold: hold,
        computed_threshold: threshold,
        margin: scan.k_min - threshold,
        claim_text: if hold { THEOREM1_CLAIM.into() } else { String::new() },
        orientation_flipped: flipped,
        pointwise,
        notes,
    })
}

/// `s² / (24(3λ₁ + s))`.
pub fn theorem2_threshold(s: f64, lambda1: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::NonPositiveInput { name: "s", value: s });
    }
    if !(lambda1 > 0.0) {
        return Err(Error::NonPositiveInput {
            name: "lambda1",
            value: lambda1,
        });
    }
    Ok(s * s / (24.0 * (3.0 * lambda1 + s)))
}

/// `(4/9)|ω₊||ω₋|(−72λ₁K₁⊥ + s² − 24K₁⊥s)`.
pub fn discriminant(lambda1: f64, s: f64, k1perp: f64, a: f64, b: f64) -> f64 {
    4.0 / 9.0 * a * b * (-72.0 * lambda1 * k1perp + s * s - 24.0 * k1perp * s)
}

/// `A`: `|ω₊| ≥ t²|ω₋|`; `B`: `|ω₊| < t²|ω₋|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    A,
    B,
}

impl Regime {
    pub fn of(t: f64, a: f64, b: f64) -> Self {
        if a >= t * t * b {
            Regime::A
        } else {
            Regime::B
        }
    }
}

/// The quadratic in `t` for the given regime, with `a = |ω₊|`, `b = |ω₋|`.
pub fn p_quadratic(t: f64, regime: Regime, lambda1: f64, s: f64, k1perp: f64, a: f64, b: f64) -> f64 {
    let base = lambda1 + 4.0 * k1perp;
    let corr = (s - 12.0 * k1perp) / 3.0;
    let (c0, c2) = match regime {
        Regime::A => (base - corr, base + corr),
        Regime::B => (base + corr, base - corr),
    };
    c0 * a - 2.0 * lambda1 * (a * b).sqrt() * t + c2 * b * t * t
}

/// `𝒫(t)` before splitting into regimes:
/// `λ₁(a − 2t√(ab) + t²b) + 4K₁⊥(a + t²b) − ⅓(s − 12K₁⊥)|a − t²b|`.
pub fn p_definition(t: f64, lambda1: f64, s: f64, k1perp: f64, a: f64, b: f64) -> f64 {
    lambda1 * (a - 2.0 * t * (a * b).sqrt() + t * t * b) + 4.0 * k1perp * (a + t * t * b)
        - (s - 12.0 * k1perp) / 3.0 * (a - t * t * b).abs()
}

/// `K₁⊥ ≥ s²/(24(3λ₁ + s))`, evaluated pointwise with the supplied `λ₁`.
pub fn theorem2_verdict(dec: &CurvatureDecomposition, scan: &PinchingReport, lambda1: f64) -> Result<TheoremVerdict> {
    if !(dec.s > 0.0) {
        return Err(Error::NonPositiveScalarCurvature(dec.s));
    }
    ensure_same_tensor(dec, scan)?;
    let threshold = theorem2_threshold(dec.s, lambda1)?;
    let margin = scan.k1perp - threshold;
    let hold = margin >= -scan.accuracy();
    let mut notes = vec![format!(
        "evaluated at a single point with lambda1 = {lambda1} supplied by the caller"
    )];
    if !hold {
        notes.push(format!("K1perp = {:.9} < {threshold:.9}", scan.k1perp));
    }
    Ok(TheoremVerdict {
        theorem: Theorem::Two,
        hypotheses_hold: hold,
        computed_threshold: threshold,
        margin,
        claim_text: if hold { THEOREM2_CLAIM.into() } else { String::new() },
        orientation_flipped: false,
        pointwise: None,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{decompose, CurvatureOperator, RiemannTensor};
    use crate::scan::{scan_extremes, Budget};
    use nalgebra::Matrix6;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f_examples() {
        assert!((f_eval(1.0, 1.0, 1.0, 0.3) - 3.0).abs() < 1e-14);
        assert!((f_eval(0.3, 0.3, 0.3, 0.3) - 0.27).abs() < 1e-14);
        assert!(f_eval(0.5, 0.5, 0.5, 0.0).abs() < 1e-14);
    }

    #[test]
    fn corners_match_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let d: f64 = rng.random();
            let (e, c) = (CornerValues::evaluate(d), CornerValues::closed_form(d));
            for (x, y) in [(e.at_ddd, c.at_ddd), (e.at_dd1, c.at_dd1), (e.at_d11, c.at_d11), (e.at_111, c.at_111)] {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hessian() {
        let e = hessian_inner_eigs();
        for (x, y) in e.iter().zip([-3.0, -3.0, 0.0]) {
            assert!((x - y).abs() < 1e-12);
        }
        let h = inner_hessian();
        for i in 0..3 {
            assert_eq!(h.row(i).sum(), 0.0);
        }
        assert!((e.iter().sum::<f64>() - h.trace()).abs() < 1e-12);
    }

    #[test]
    fn hessian_matches_finite_differences() {
        // inside the cell x_i < (1+δ)/2 where m(x) = x − δ
        let (d, x) = (0.2, [0.3, 0.35, 0.4]);
        let eps = 1e-4;
        let g = |p: [f64; 3]| f_eval(p[0], p[1], p[2], d);
        for i in 0..3 {
            for j in 0..3 {
                let mut pp = x;
                let mut pm = x;
                let mut mp = x;
                let mut mm = x;
                pp[i] += eps;
                pp[j] += eps;
                pm[i] += eps;
                pm[j] -= eps;
                mp[i] -= eps;
                mp[j] += eps;
                mm[i] -= eps;
                mm[j] -= eps;
                let fd = (g(pp) - g(pm) - g(mp) + g(mm)) / (4.0 * eps * eps);
                assert!((fd - 10.0 / 9.0 * inner_hessian()[(i, j)]).abs() < 1e-6, "{i}{j}: {fd}");
            }
        }
    }

    #[test]
    fn corner_minimum_examples() {
        let (v, at) = min_over_e(0.2);
        assert_eq!(at, Vertex::Ddd);
        assert!((v - 0.12).abs() < 1e-14);
        assert!(min_over_e(0.0).0 < 0.0);
        let (v, at) = min_over_e(critical_delta_closed_form());
        assert_eq!(at, Vertex::Dd1);
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn critical_delta_two_ways() {
        let d = critical_delta();
        assert!((d - 0.049_038_105_676_658_0).abs() < 1e-10);
        assert!((d - critical_delta_closed_form()).abs() < 1e-11);
        assert!(min_over_e(d - 1e-6).0 < 0.0);
        assert!(min_over_e(d + 1e-6).0 > 0.0);
        let c = critical_delta_closed_form();
        assert!(((8.0 * c * c + 20.0 * c - 1.0) / 9.0).abs() <= 1e-12);
    }

    #[test]
    fn cell_vertices_bound_the_grid() {
        for k in 0..=20 {
            let d = k as f64 / 20.0;
            let (exact, _) = cell_vertex_min(d);
            let (grid, _) = grid_min_over_e(d, 41);
            assert!(exact <= grid + 1e-12, "δ = {d}");
            // 41 points per axis contain the midpoint, so they hit the exact minimum
            assert!((exact - grid).abs() < 1e-12, "δ = {d}");
        }
    }

    #[test]
    fn midpoint_vertex_formula() {
        for k in 0..=10 {
            let d = k as f64 / 10.0;
            let mid = 0.5 * (1.0 + d);
            let expected = (31.0 * d * d + 28.0 * d - 5.0) / 18.0;
            assert!((f_eval(d, d, mid, d) - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn corner_reduction_fails_below_five_twentythirds() {
        // at δ*, the corner minimum is 0 but f(δ,δ,mid) < 0
        let d = critical_delta_closed_form();
        assert!(cell_vertex_min(d).0 < -0.19);
        for k in 0..=100 {
            let d = k as f64 / 100.0;
            let agree = (cell_vertex_min(d).0 - min_over_e(d).0).abs() < 1e-12;
            assert_eq!(agree, d >= 5.0 / 23.0 - 1e-12, "δ = {d}");
        }
    }

    #[test]
    fn cellwise_constant() {
        let d = cellwise_critical_delta();
        assert!((d - cellwise_critical_delta_closed_form()).abs() < 1e-11);
        assert!((d - 0.152_74).abs() < 1e-4);
    }

    #[test]
    fn concave_inside_cells() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10_000 {
            let d: f64 = rng.random::<f64>() * 0.9;
            let mid = 0.5 * (1.0 + d);
            let cell: [bool; 3] = [rng.random(), rng.random(), rng.random()];
            let pick = |rng: &mut ChaCha8Rng, hi: bool| {
                let (lo, up) = if hi { (mid, 1.0) } else { (d, mid) };
                lo + (up - lo) * rng.random::<f64>()
            };
            let p = cell.map(|c| pick(&mut rng, c));
            let q = cell.map(|c| pick(&mut rng, c));
            let mp = [0, 1, 2].map(|i| 0.5 * (p[i] + q[i]));
            let avg = 0.5 * (f_eval(p[0], p[1], p[2], d) + f_eval(q[0], q[1], q[2], d));
            assert!(f_eval(mp[0], mp[1], mp[2], d) >= avg - 1e-12);
        }
    }

    #[test]
    fn thresholds() {
        assert!((theorem2_threshold(12.0, 4.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((theorem2_threshold(4.0, 2.0).unwrap() - 1.0 / 15.0).abs() < 1e-15);
        assert!((theorem2_threshold(24.0, 12.0).unwrap() - 0.4).abs() < 1e-15);
        assert!(theorem2_threshold(1e-9, 1.0).unwrap() < 1e-17);
        assert!(matches!(theorem2_threshold(0.0, 1.0), Err(Error::NonPositiveInput { name: "s", .. })));
        assert!(theorem2_threshold(1.0, -1.0).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert!((discriminant(4.0, 12.0, 1.0, 1.0, 1.0) + 192.0).abs() < 1e-12);
        assert_eq!(discriminant(4.0, 12.0, 1.0, 0.0, 3.0), 0.0);
        let t = theorem2_threshold(10.0, 3.0).unwrap();
        assert!(discriminant(3.0, 10.0, t, 2.0, 0.5).abs() < 1e-12);
    }

    #[test]
    fn quadratic_is_the_definition_in_its_regime() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..2000 {
            let (l, s, k) = (rng.random::<f64>() * 5.0 + 0.1, rng.random::<f64>() * 20.0, rng.random::<f64>());
            let (a, b) = (rng.random::<f64>() * 3.0, rng.random::<f64>() * 3.0);
            let t = rng.random::<f64>() * 6.0 - 3.0;
            let q = p_quadratic(t, Regime::of(t, a, b), l, s, k, a, b);
            assert!((q - p_definition(t, l, s, k, a, b)).abs() < 1e-10);
        }
    }

    #[test]
    fn quadratic_on_the_round_sphere() {
        for t in [-2.0, 0.0, 0.7, 3.0] {
            for (a, b) in [(1.0f64, 1.0f64), (2.0, 0.5)] {
                let expected = 4.0 * (a.sqrt() - t * b.sqrt()).powi(2) + 4.0 * (a + t * t * b);
                for r in [Regime::A, Regime::B] {
                    assert!((p_quadratic(t, r, 4.0, 12.0, 1.0, a, b) - expected).abs() < 1e-12);
                }
            }
        }
        assert_eq!(p_quadratic(0.0, Regime::A, 4.0, 12.0, 0.5, 2.0, 1.0), (4.0 + 2.0 - 2.0) * 2.0);
    }

    fn verdicts(r: &RiemannTensor, lambda1: f64) -> (TheoremVerdict, TheoremVerdict) {
        let d = decompose(r).unwrap();
        let scan = scan_extremes(r, &Budget::default()).unwrap();
        (theorem1_verdict(&d, &scan).unwrap(), theorem2_verdict(&d, &scan, lambda1).unwrap())
    }

    #[test]
    fn round_sphere_verdicts() {
        let (t1, t2) = verdicts(&RiemannTensor::constant_curvature(1.0), 4.0);
        assert!(t1.hypotheses_hold && t1.claim_text == THEOREM1_CLAIM);
        let p = t1.pointwise.unwrap();
        assert!(p.holds && (p.fg_half - 3.0).abs() < 1e-9 && (p.f_at_v - 3.0).abs() < 1e-5);
        assert!(t2.hypotheses_hold && (t2.computed_threshold - 0.25).abs() < 1e-15);
        assert!((t2.margin - 0.75).abs() < 1e-6);
    }

    fn cp2(c: f64) -> RiemannTensor {
        crate::models::kahler_constant_holomorphic(c)
    }

    #[test]
    fn cp2_verdicts() {
        let (t1, _) = verdicts(&cp2(1.0), 3.0);
        assert!(t1.hypotheses_hold && !t1.orientation_flipped);
        assert!(t1.pointwise.unwrap().holds);
        let (_, t2) = verdicts(&cp2(4.0), 12.0);
        assert!((t2.computed_threshold - 0.4).abs() < 1e-15);
        assert!((t2.margin - 0.6).abs() < 1e-6 && t2.hypotheses_hold);
    }

    #[test]
    fn reflected_cp2_is_flipped() {
        // e4 -> -e4 reverses orientation and moves W⁺ to W⁻
        let base = cp2(1.0);
        let r = RiemannTensor::from_fn(|a, b, c, d| {
            let flips = [a, b, c, d].iter().filter(|&&i| i == 3).count();
            let sign = if flips % 2 == 0 { 1.0 } else { -1.0 };
            sign * base.get(a, b, c, d)
        });
        let d = decompose(&r).unwrap();
        assert!(d.wplus.norm() < 1e-12 && d.wminus.norm() > 1.0);
        let (t1, _) = verdicts(&r, 3.0);
        assert!(t1.hypotheses_hold && t1.orientation_flipped);
        assert!(t1.pointwise.unwrap().holds);
    }

    #[test]
    fn anti_self_dual_weyl_flips_orientation() {
        let w = Matrix3::from_diagonal(&nalgebra::Vector3::new(-0.1, -0.1, 0.2));
        let op = CurvatureOperator::from_blocks(&Matrix3::identity(), &Matrix3::zeros(), &(Matrix3::identity() + w));
        let r = CurvatureOperator {
            matrix: op.matrix / 1.2,
        }
        .to_tensor();
        let (t1, _) = verdicts(&r, 4.0);
        assert!(t1.orientation_flipped && t1.hypotheses_hold, "{t1:?}");
    }

    #[test]
    fn product_verdicts() {
        let mut m = Matrix6::zeros();
        m[(0, 0)] = 1.0;
        m[(5, 5)] = 1.0;
        let r = CurvatureOperator { matrix: m }.to_tensor();
        let (t1, t2) = verdicts(&r, 2.0);
        assert!(!t1.hypotheses_hold && t1.claim_text.is_empty() && t1.pointwise.is_none());
        assert!(!t2.hypotheses_hold && t2.claim_text.is_empty());
        assert!((t2.computed_threshold - 1.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_scan_is_rejected() {
        let d = decompose(&RiemannTensor::constant_curvature(1.0)).unwrap();
        let scan = scan_extremes(&cp2(4.0), &Budget::default()).unwrap();
        assert!(matches!(theorem1_verdict(&d, &scan), Err(Error::InconsistentInputs(_))));
    }

    #[test]
    fn thm2_needs_positive_scalar() {
        let r = RiemannTensor::constant_curvature(-1.0);
        let d = decompose(&r).unwrap();
        let scan = scan_extremes(&r, &Budget::default()).unwrap();
        assert!(matches!(
            theorem2_verdict(&d, &scan, 1.0),
            Err(Error::NonPositiveScalarCurvature(_))
        ));
    }
}
