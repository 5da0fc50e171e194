//! Eigenvalues located by shooting alone, compared with the algebraic
//! classifier on a step potential.
//!
//!     cargo run --example shooting_oracle

use dirac_sturm::{
    build_basis, default_window, solve_spectrum, DiracWeight, Method, MissFunction, Potential,
    Tolerances,
};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();
    let q = Potential::piecewise_constant(vec![0.0, 0.3, 0.6, 1.0], vec![12.0, -25.0, 4.0])?;
    let w = DiracWeight::new(vec![0.1, 0.35, 0.5, 0.9], vec![0.4, 2.0, 1.0, 0.7])?;

    let shooter = MissFunction::new(&q, &w, &tol);
    let (lo, hi) = default_window(&w);
    println!("scanning [{lo:.1}, {hi:.1}]");
    for l in [lo, 0.0, hi] {
        println!("  y(1; {l:.1}) = {:.6e}", shooter.eval(l)?);
    }
    let roots = shooter.scan(lo, hi, 2000, &tol)?;

    let basis = build_basis(&q, &tol)?;
    let algebraic = solve_spectrum(&basis, &w, &tol, Method::Auto)?;
    println!("shooting   {roots:?}");
    println!(
        "algebraic  {:?}",
        algebraic.spectrum.eigenvalues().unwrap_or(&[])
    );
    Ok(())
}
