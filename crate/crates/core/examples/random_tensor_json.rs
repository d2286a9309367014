//! Random algebraic curvature tensors: symmetry projection, JSON round trip
//! and rejection of malformed input.

use pinch4::curvature::random_algebraic_tensor;
use pinch4::RiemannTensor;

fn main() -> pinch4::Result<()> {
    let r = random_algebraic_tensor(2024, 0.5);
    println!("symmetry residuals: {:?}", r.validate_symmetries());
    println!("scalar curvature: {:.9}", r.scalar());

    let text = r.to_json_string();
    let back = RiemannTensor::from_json_str(&text)?;
    println!("JSON round trip exact: {}", back == r);

    let mut broken = r.clone();
    broken.components[0][1][0][1] += 0.1;
    match RiemannTensor::from_json_str(&broken.to_json_string()) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    match RiemannTensor::from_json_str("{\"components\": [[[1.0,]]]}") {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
