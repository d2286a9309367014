//! The Weitzenböck curvature term on 2-forms and its lower bound in terms
//! of the smallest biorthogonal curvature.

use pinch4::curvature::random_algebraic_tensor;
use pinch4::forms::Form2;
use pinch4::weitzenbock::{intermediate_identity_check, lemma1_suite, Lemma1};
use pinch4::RiemannTensor;

fn main() -> pinch4::Result<()> {
    let sphere = RiemannTensor::constant_curvature(1.0);
    let lemma = Lemma1::new(&sphere)?;
    let w = Form2::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.3]);
    let sides = lemma.sides(&w);
    println!("round sphere, omega = {:?}", w.coeffs);
    println!("  <N omega, omega> = {:.9}, lower bound = {:.9}", sides.lhs, sides.rhs);

    let r = random_algebraic_tensor(11, 1.0);
    let (fin, mid) = lemma1_suite(&r, 10_000, 1)?;
    println!("\nrandom tensor:\n  {fin}\n  {mid}");

    let id = intermediate_identity_check(&r, &w)?;
    println!("\nadapted-frame expansion: lhs {:.9}, rhs {:.9}, residual {:.2e}", id.lhs, id.rhs, id.residual());
    Ok(())
}
