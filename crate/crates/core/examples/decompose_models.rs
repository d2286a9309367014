//! Block decomposition of the built-in model spaces.

use pinch4::models::{model, ModelName, ModelParams};
use pinch4::decompose;

fn main() -> pinch4::Result<()> {
    for name in ModelName::ALL {
        let m = model(name, &ModelParams::default())?;
        let d = decompose(&m.tensor)?;
        println!("{name} {:?}", m.params);
        println!("  s = {:.6}", d.s);
        println!("  W+ eigenvalues = {:?}", d.wp_eigs.map(|x| (x * 1e9).round() / 1e9));
        println!("  W- eigenvalues = {:?}", d.wm_eigs.map(|x| (x * 1e9).round() / 1e9));
        println!("  |W+|^2 = {:.6}, |W-|^2 = {:.6}, |Ric0|^2 = {:.6}", d.wplus_norm2(), d.wminus_norm2(), d.ric0_norm2());
    }

    let uneven = model(ModelName::S2xS2, &ModelParams { a: 1.0, b: 2.0, ..Default::default() })?;
    let d = decompose(&uneven.tensor)?;
    println!("S2(1) x S2(2): traceless Ricci block norm^2 = {:.6}", d.z_norm2());
    Ok(())
}
