//! Two-forms in dimension four: the Hodge star, the self-dual/anti-self-dual
//! splitting and planes as pairs of unit forms.

use nalgebra::Vector4;
use pinch4::forms::{Form2, Plane2};

fn main() -> pinch4::Result<()> {
    let w = Form2::new([1.0, 2.0, 0.0, -1.0, 0.5, 3.0]);
    let (plus, minus) = w.split();
    println!("omega      = {:?}", w.coeffs);
    println!("*omega     = {:?}", w.star().coeffs);
    println!("omega+     = {:?}  |omega+| = {:.6}", plus.coeffs, plus.norm());
    println!("omega-     = {:?}  |omega-| = {:.6}", minus.coeffs, minus.norm());
    println!("<omega+, omega-> = {:.3e}", plus.dot(&minus));
    println!("omega ^ omega / vol = {:.6}", 2.0 * w.plucker());

    let x = Vector4::new(1.0, 1.0, 0.0, 0.0).normalize();
    let y = Vector4::new(0.0, 0.0, 1.0, -1.0).normalize();
    let p = Plane2::from_vectors(&x, &y, 1e-12)?;
    println!("\nplane spanned by {:?} and {:?}", x.as_slice(), y.as_slice());
    println!("  form       = {:?}", p.form.coeffs);
    println!("  H (sd)     = {:?}", p.sd_unit.sd_coords().as_slice());
    println!("  K (asd)    = {:?}", p.asd_unit.asd_coords().as_slice());
    println!("  complement = {:?}", p.complement().form.coeffs);
    Ok(())
}
