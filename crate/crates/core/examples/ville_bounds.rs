//! Estimates that hold under pinching, on a random pinched sample.

use pinch4::models::{pinched_sample, Perturbation};
use pinch4::scan::{Budget, PinchingCertificate};
use pinch4::ville::{deg_lower_bound, operator_bounds_certified, ville_data, znorm_bound_check, AVersion};
use pinch4::decompose;

fn main() -> pinch4::Result<()> {
    let r = pinched_sample(42, 0.4, 0.5, Perturbation::Generic)?;
    let d = decompose(&r)?;
    let cert = PinchingCertificate::verify(&r, 0.4, &Budget::default())?;
    println!("sample: K in [{:.6}, {:.6}]", cert.report().k_min, cert.report().k_max);

    let b = operator_bounds_certified(&d, &cert, 5000, 3)?;
    println!("{}\n{}", b.planes, b.self_dual);

    let data = ville_data(&d, cert.delta());
    println!("v = {:?}", data.v);
    println!("z = {:?}", data.z);
    println!("A = {:?}", data.a(AVersion::Derived));
    println!("{}", znorm_bound_check(&d, &cert, AVersion::Derived)?);

    let deg = deg_lower_bound(&d, &cert)?;
    println!("F(g) = {:.6} >= {:.6} (slack {:.3e})", deg.fg, deg.bound, deg.slack());
    Ok(())
}
