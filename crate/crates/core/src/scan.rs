//! Extremes of sectional and biorthogonal curvature over the Grassmannian.
//!
//! Planes are parametrised by the double cover `S²(Λ⁺) × S²(Λ⁻)`,
//! `(H, K) ↦ (H + K)/√2`. In block coordinates the two objectives are
//!
//! ```text
//! K(P)  = ½(hᵀAh + kᵀCk) + hᵀBk
//! K⊥(P) = ½(hᵀAh + kᵀCk)
//! ```
//!
//! so the biorthogonal extremes have the closed forms
//! `K₁⊥ = (w₁⁺ + w₁⁻)/2 + s/12` and `K₃⊥ = (w₃⁺ + w₃⁻)/2 + s/12`, which serve as the
//! oracle for the numerical scan.
//!
//! The scan evaluates a Fibonacci grid on each sphere, keeps the best cells
//! of each objective and polishes them with Nelder–Mead in a local chart.

use nalgebra::{Matrix3, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::curvature::{CurvatureDecomposition, CurvatureOperator, RiemannTensor};
use crate::error::{Error, Result};
use crate::forms::{Frame4, Plane2};
use crate::nelder_mead;
use crate::tol;

/// Smallest accepted grid, refinement cell count and refinement iterations.
pub const BUDGET_FLOOR: Budget = Budget {
    grid: 16,
    refine_cells: 2,
    refine_steps: 40,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Fibonacci points on each of the two spheres (the coarse grid is `grid²`).
    pub grid: usize,
    /// Number of best coarse cells refined per objective.
    pub refine_cells: usize,
    /// Nelder–Mead iterations per refinement pass (two passes per cell).
    pub refine_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            grid: 64,
            refine_cells: 16,
            refine_steps: 200,
        }
    }
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        let f = BUDGET_FLOOR;
        if self.grid < f.grid || self.refine_cells < f.refine_cells || self.refine_steps < f.refine_steps {
            return Err(Error::BudgetTooSmall(format!(
                "grid {} / cells {} / steps {} (floor {} / {} / {})",
                self.grid, self.refine_cells, self.refine_steps, f.grid, f.refine_cells, f.refine_steps
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchingReport {
    pub k_min: f64,
    pub k_max: f64,
    pub k1perp: f64,
    pub k3perp: f64,
    /// `k_min / k_max`, only when `k_max > 0`.
    pub delta: Option<f64>,
    pub argmin: Plane2,
    pub argmax: Plane2,
    pub argmin_perp: Plane2,
    pub argmax_perp: Plane2,
    pub budget: Budget,
}

impl PinchingReport {
    /// Curvature scale used to turn the relative scan accuracy into an
    /// absolute one.
    pub fn scale(&self) -> f64 {
        self.k_min.abs().max(self.k_max.abs()).max(1.0)
    }

    pub fn accuracy(&self) -> f64 {
        tol::SCAN_ACCURACY * self.scale()
    }
}

pub fn sectional(op: &CurvatureOperator, p: &Plane2) -> f64 {
    op.quadratic(&p.form)
}

pub fn biorthogonal(op: &CurvatureOperator, p: &Plane2) -> f64 {
    0.5 * (sectional(op, p) + sectional(op, &p.complement()))
}

pub fn k1perp_closed_form(dec: &CurvatureDecomposition) -> f64 {
    0.5 * (dec.wp_eigs[0] + dec.wm_eigs[0]) + dec.s / 12.0
}

pub fn k3perp_closed_form(dec: &CurvatureDecomposition) -> f64 {
    0.5 * (dec.wp_eigs[2] + dec.wm_eigs[2]) + dec.s / 12.0
}

fn fibonacci_sphere(n: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            Vector3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

fn tangent_basis(v: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let axis = if v.x.abs() <= v.y.abs() && v.x.abs() <= v.z.abs() {
        Vector3::x()
    } else if v.y.abs() <= v.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let t1 = v.cross(&axis).normalize();
    let t2 = v.cross(&t1);
    (t1, t2)
}

#[derive(Clone, Copy)]
enum Objective {
    Sectional,
    Biorthogonal,
}

struct Blocks {
    a: Matrix3<f64>,
    b: Matrix3<f64>,
    c: Matrix3<f64>,
}

impl Blocks {
    fn eval(&self, obj: Objective, h: &Vector3<f64>, k: &Vector3<f64>) -> f64 {
        let perp = 0.5 * (h.dot(&(self.a * h)) + k.dot(&(self.c * k)));
        match obj {
            Objective::Biorthogonal => perp,
            Objective::Sectional => perp + h.dot(&(self.b * k)),
        }
    }
}

/// Polishes a grid cell; `sign = 1` minimises, `sign = -1` maximises.
fn refine(
    blocks: &Blocks,
    obj: Objective,
    sign: f64,
    h0: Vector3<f64>,
    k0: Vector3<f64>,
    step: f64,
    steps: usize,
) -> (f64, Vector3<f64>, Vector3<f64>) {
    let (mut h, mut k) = (h0, k0);
    let mut step = step;
    for _pass in 0..2 {
        let (th1, th2) = tangent_basis(&h);
        let (tk1, tk2) = tangent_basis(&k);
        let chart = |x: &[f64; 4]| {
            let hh = (h + th1 * x[0] + th2 * x[1]).normalize();
            let kk = (k + tk1 * x[2] + tk2 * x[3]).normalize();
            (hh, kk)
        };
        let f = |x: &[f64; 4]| {
            let (hh, kk) = chart(x);
            sign * blocks.eval(obj, &hh, &kk)
        };
        let (x, _) = nelder_mead::minimize(f, [0.0; 4], step, steps, 1e-18);
        let (hh, kk) = chart(&x);
        h = hh;
        k = kk;
        step *= 0.05;
    }
    (blocks.eval(obj, &h, &k), h, k)
}

fn extreme(
    blocks: &Blocks,
    grid: &[Vector3<f64>],
    obj: Objective,
    sign: f64,
    budget: &Budget,
) -> (f64, Plane2) {
    let n = grid.len();
    let mut cells: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, h) in grid.iter().enumerate() {
        for (j, k) in grid.iter().enumerate() {
            cells.push((sign * blocks.eval(obj, h, k), i, j));
        }
    }
    // Ties are broken by index so the selection is order independent.
    cells.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let step = 0.5 * (4.0 * std::f64::consts::PI / n as f64).sqrt();
    let mut best: Option<(f64, Vector3<f64>, Vector3<f64>)> = None;
    for &(_, i, j) in cells.iter().take(budget.refine_cells) {
        let (v, h, k) = refine(blocks, obj, sign, grid[i], grid[j], step, budget.refine_steps);
        if best.as_ref().is_none_or(|b| sign * v < sign * b.0) {
            best = Some((v, h, k));
        }
    }
    let (v, h, k) = best.expect("budget has at least one refinement cell");
    (v, Plane2::from_block_coords(&h, &k))
}

/// Scans an operator; symmetries are assumed to hold.
pub fn scan_operator(op: &CurvatureOperator, budget: &Budget) -> Result<PinchingReport> {
    budget.validate()?;
    let (a, b, c) = op.blocks();
    let blocks = Blocks { a, b, c };
    let grid = fibonacci_sphere(budget.grid);
    let (k_min, argmin) = extreme(&blocks, &grid, Objective::Sectional, 1.0, budget);
    let (k_max, argmax) = extreme(&blocks, &grid, Objective::Sectional, -1.0, budget);
    let (k1perp, argmin_perp) = extreme(&blocks, &grid, Objective::Biorthogonal, 1.0, budget);
    let (k3perp, argmax_perp) = extreme(&blocks, &grid, Objective::Biorthogonal, -1.0, budget);
    Ok(PinchingReport {
        k_min,
        k_max,
        k1perp,
        k3perp,
        delta: (k_max > 0.0).then(|| k_min / k_max),
        argmin,
        argmax,
        argmin_perp,
        argmax_perp,
        budget: *budget,
    })
}

pub fn scan_extremes(r: &RiemannTensor, budget: &Budget) -> Result<PinchingReport> {
    let op = CurvatureOperator::from_tensor(r)?;
    scan_operator(&op, budget)
}

/// Proof that a curvature operator is `δ`-pinched (`δ ≤ K ≤ 1`) up to scan
/// accuracy. Checks conditional on pinching take this as input.
#[derive(Clone, Debug)]
pub struct PinchingCertificate {
    delta: f64,
    report: PinchingReport,
    operator: CurvatureOperator,
}

impl PinchingCertificate {
    pub fn verify(r: &RiemannTensor, delta: f64, budget: &Budget) -> Result<Self> {
        let op = CurvatureOperator::from_tensor(r)?;
        let report = scan_operator(&op, budget)?;
        Self::from_report(op, report, delta)
    }

    pub fn from_report(operator: CurvatureOperator, report: PinchingReport, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InconsistentInputs(format!("pinching constant {delta} outside [0, 1]")));
        }
        let acc = report.accuracy();
        if report.k_min < delta - acc || report.k_max > 1.0 + acc {
            return Err(Error::PinchingNotVerified {
                delta,
                k_min: report.k_min,
                k_max: report.k_max,
            });
        }
        Ok(Self { delta, report, operator })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn report(&self) -> &PinchingReport {
        &self.report
    }

    pub fn operator(&self) -> &CurvatureOperator {
        &self.operator
    }

    /// Fails when `dec` does not describe the certified operator.
    pub fn ensure_matches(&self, dec: &CurvatureDecomposition) -> Result<()> {
        let diff = (dec.reassemble().matrix - self.operator.matrix).abs().max();
        if diff > tol::IDENTITY * self.report.scale() {
            return Err(Error::InconsistentInputs(format!(
                "decomposition differs from the certified operator by {diff:.3e}"
            )));
        }
        Ok(())
    }
}

/// `|R_1234|`-type components in random oriented frames against
/// `(2/3)(K₃⊥ − K₁⊥)`.
pub fn seaman_check(r: &RiemannTensor, n_frames: usize, seed: u64) -> Result<CheckReport> {
    let op = CurvatureOperator::from_tensor(r)?;
    let dec = CurvatureDecomposition::new(r)?;
    let bound = 2.0 / 3.0 * (k3perp_closed_form(&dec) - k1perp_closed_form(&dec));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::new("seaman |R_1234| <= (2/3)(K3perp - K1perp)", tol::INEQUALITY);
    for _ in 0..n_frames {
        let g = Frame4::random(&mut rng);
        let mixed = op.bilinear(&g.form(0, 1), &g.form(2, 3)).abs();
        rep.record(bound - mixed);
        rep.record_ratio(if bound > 0.0 { mixed / bound } else { 0.0 });
    }
    Ok(rep)
}
