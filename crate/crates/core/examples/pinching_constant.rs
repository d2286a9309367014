//! The pinching constant from the values of f at the corners of E, and the
//! minimum of f over all of E for comparison.

use pinch4::pinching::{
    cell_vertex_min, critical_delta, critical_delta_closed_form, delta_star, grid_min_over_e, hessian_inner_eigs,
    min_over_e, CornerValues,
};

fn main() {
    let d = critical_delta();
    println!("bisection   delta* = {d:.16}");
    println!("(3 sqrt 3 - 5)/4   = {:.16}", critical_delta_closed_form());
    println!("Hessian eigenvalues (x 10/9): {:?}", hessian_inner_eigs());

    let c = CornerValues::closed_form(d);
    println!("corners at delta*: {:.3e} {:.3e} {:.6} {:.1}", c.at_ddd, c.at_dd1, c.at_d11, c.at_111);

    println!("\n{:>6} {:>12} {:>12} {:>12}", "delta", "corners", "cell verts", "grid 101");
    for k in 0..=10 {
        let delta = k as f64 / 10.0;
        let (corner, _) = min_over_e(delta);
        let (exact, _) = cell_vertex_min(delta);
        let (grid, _) = grid_min_over_e(delta, 101);
        println!("{delta:>6.2} {corner:>12.6} {exact:>12.6} {grid:>12.6}");
    }
    let s = delta_star();
    println!("\nf >= 0 on all of E from delta = {:.12} ((3 sqrt 39 - 14)/31 = {:.12})", s.cellwise_bisection, s.cellwise_closed_form);
}
