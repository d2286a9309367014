//! Both definiteness criteria on the model spaces.

use pinch4::models::{model, ModelName, ModelParams};
use pinch4::pinching::{theorem1_verdict, theorem2_verdict};
use pinch4::scan::{scan_extremes, Budget};
use pinch4::decompose;

fn main() -> pinch4::Result<()> {
    let cases = [
        (ModelName::S4, ModelParams::default()),
        (ModelName::Cp2, ModelParams { c: 1.0, ..Default::default() }),
        (ModelName::Cp2, ModelParams::default()),
        (ModelName::S2xS2, ModelParams::default()),
    ];
    for (name, params) in cases {
        let m = model(name, &params)?;
        let d = decompose(&m.tensor)?;
        let scan = scan_extremes(&m.tensor, &Budget::default())?;
        let t1 = theorem1_verdict(&d, &scan)?;
        let t2 = theorem2_verdict(&d, &scan, m.lambda1.expect("models carry lambda1"))?;
        println!("{} {:?}", m.name, m.params);
        println!("  half-flat pinching: hold = {:<5} margin {:+.6}  {}", t1.hypotheses_hold, t1.margin, t1.claim_text);
        println!(
            "  K1perp bound:       hold = {:<5} margin {:+.6}  threshold {:.6}  {}",
            t2.hypotheses_hold, t2.margin, t2.computed_threshold, t2.claim_text
        );
    }
    Ok(())
}
