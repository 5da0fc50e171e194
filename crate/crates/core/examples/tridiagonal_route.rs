//! The symmetric tridiagonal matrix whose eigenvalues are the spectrum,
//! next to the characteristic polynomial it is proportional to.
//!
//!     cargo run --example tridiagonal_route

use dirac_sturm::tridiag::{eigenvalues, sturm_count};
use dirac_sturm::{
    build_basis, characteristic_polynomial, tridiagonal_system, DiracWeight, Potential, Tolerances,
};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();
    let basis = build_basis(&Potential::Zero, &tol)?;
    let w = DiracWeight::new(vec![0.2, 0.45, 0.7, 0.85], vec![1.0, 0.5, 2.0, 1.5])?;

    let sys = tridiagonal_system(&basis, &w, &tol)?;
    println!("diagonal     {:?}", sys.sym.diag());
    println!("off-diagonal {:?}", sys.sym.offdiag());

    let ev = eigenvalues(&sys.sym, &tol);
    println!("eigenvalues  {ev:?}");
    for mu in [0.0, 10.0, 50.0, 200.0] {
        println!("  {} eigenvalues below {mu}", sturm_count(&sys.sym, mu));
    }

    // p(λ) = K det(X - λI)
    let p = characteristic_polynomial(&basis, &w, &tol)?;
    let k = sys.proportionality_constant();
    for l in [-1.0, 3.0, 12.5] {
        println!(
            "  λ = {l:>5}: p = {:+.6e}, K det = {:+.6e}",
            p.raw.eval(l),
            k * sys.sym.char_poly_at(l).0
        );
    }
    Ok(())
}
