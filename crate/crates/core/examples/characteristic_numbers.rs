//! Euler characteristic and signature of homogeneous models from the
//! pointwise curvature integrands.

use pinch4::models::{model, ModelName, ModelParams};
use pinch4::topology::homogeneous_invariants;

fn main() -> pinch4::Result<()> {
    println!("{:<8} {:>10} {:>10} {:>12}  expected", "model", "chi", "tau", "chi - 2 tau");
    for name in ModelName::ALL {
        let m = model(name, &ModelParams::default())?;
        let inv = homogeneous_invariants(&m)?;
        println!(
            "{:<8} {:>10.6} {:>10.6} {:>12.6}  ({}, {})",
            m.name, inv.chi, inv.tau, inv.chi_minus_2tau, m.expected_chi, m.expected_tau
        );
    }
    // The answer does not depend on the radii.
    let m = model(ModelName::S2xS2, &ModelParams { a: 0.5, b: 3.0, ..Default::default() })?;
    println!("S2(0.5) x S2(3): chi = {:.9}", homogeneous_invariants(&m)?.chi);
    Ok(())
}
