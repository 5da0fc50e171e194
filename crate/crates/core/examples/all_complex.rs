//! A mass at a common zero of both basis functions: every complex number
//! is an eigenvalue. The hypothesis report shows why.
//!
//!     cargo run --example all_complex

use std::f64::consts::PI;

use dirac_sturm::{
    build_basis, check_hypotheses, solve_spectrum, DiracWeight, Method, Potential, Tolerances,
};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();
    let basis = build_basis(&Potential::constant(-4.0 * PI * PI)?, &tol)?;
    println!("basis case {:?}, ω = {}", basis.case(), basis.omega());

    for t in [0.5, 0.4] {
        let w = DiracWeight::single(t, 1.0)?;
        let h = check_hypotheses(&basis, &w, &tol)?;
        println!(
            "node {t}: D(t,0) = {:?}, D(1,t) = {:?}",
            h.from_left, h.to_right
        );
        let r = solve_spectrum(&basis, &w, &tol, Method::CharPoly)?;
        println!("  h1 = {}, spectrum {:?}", h.h1, r.spectrum);
        println!("  raw polynomial {:?}", r.polynomial.raw.coeffs());
    }
    Ok(())
}
