//! Sectional and biorthogonal curvature extremes over the Grassmannian,
//! compared with the closed forms for the biorthogonal extremes.

use pinch4::curvature::random_algebraic_tensor;
use pinch4::models::{model, ModelName, ModelParams};
use pinch4::scan::{k1perp_closed_form, k3perp_closed_form, scan_extremes, Budget};
use pinch4::{decompose, RiemannTensor};

fn report(label: &str, r: &RiemannTensor) -> pinch4::Result<()> {
    let scan = scan_extremes(r, &Budget::default())?;
    let d = decompose(r)?;
    println!("{label}");
    println!("  K in [{:.8}, {:.8}]", scan.k_min, scan.k_max);
    println!("  K1perp scan {:.8}  closed form {:.8}", scan.k1perp, k1perp_closed_form(&d));
    println!("  K3perp scan {:.8}  closed form {:.8}", scan.k3perp, k3perp_closed_form(&d));
    println!("  minimising plane {:?}", scan.argmin.form.coeffs.map(|c| (c * 1e6).round() / 1e6));
    Ok(())
}

fn main() -> pinch4::Result<()> {
    for name in [ModelName::S4, ModelName::Cp2, ModelName::S2xS2] {
        report(&name.to_string(), &model(name, &ModelParams::default())?.tensor)?;
    }
    report("random tensor (seed 7)", &random_algebraic_tensor(7, 1.0))?;
    Ok(())
}
