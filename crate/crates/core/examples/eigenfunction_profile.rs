//! Piecewise eigenfunctions of a beaded string, printed as a rough
//! terminal plot with the slope jumps at the beads.
//!
//!     cargo run --example eigenfunction_profile

use dirac_sturm::{
    build_basis, eigenfunction, solve_spectrum, DiracWeight, Method, Potential, Tolerances,
};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();
    let q = Potential::piecewise_constant(vec![0.0, 0.5, 1.0], vec![-20.0, 10.0])?;
    let basis = build_basis(&q, &tol)?;
    let w = DiracWeight::new(vec![0.25, 0.5, 0.75], vec![1.0, 1.0, 1.0])?;
    let r = solve_spectrum(&basis, &w, &tol, Method::Auto)?;

    for &lambda in r.spectrum.eigenvalues().unwrap_or(&[]) {
        let e = eigenfunction(&basis, &w, lambda, &tol)?;
        let samples = e.sample(41)?;
        let sup = samples.iter().fold(0.0f64, |m, (_, y)| m.max(y.abs()));
        println!(
            "λ = {lambda:.6}  E(1) = {:.1e}  jump defect {:.1e}",
            e.boundary_values()?.1,
            e.jump_defect()?
        );
        for (x, y) in samples.iter().step_by(2) {
            let col = (20.0 + 18.0 * y / sup).round() as usize;
            println!("  {x:4.2} |{}*", " ".repeat(col));
        }
    }
    Ok(())
}
