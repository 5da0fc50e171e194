//! Spectra of a few two-mass and one-mass strings in constant wells,
//! including the degenerate cases where zero is an eigenvalue or the
//! problem has no finite spectrum at all.
//!
//!     cargo run --example worked_spectra

use std::f64::consts::PI;

use dirac_sturm::{
    build_basis, solve_spectrum, DiracWeight, Method, Potential, Spectrum, Tolerances,
};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();
    let cases: [(&str, f64, &[f64]); 6] = [
        (
            "well -9π²/4, nodes 1/3 2/3",
            -9.0 * PI * PI / 4.0,
            &[1.0 / 3.0, 2.0 / 3.0],
        ),
        (
            "well -9π²/4, nodes 1/4 1/3",
            -9.0 * PI * PI / 4.0,
            &[0.25, 1.0 / 3.0],
        ),
        ("well -9π²/4, node 2/3", -9.0 * PI * PI / 4.0, &[2.0 / 3.0]),
        ("well -π², node 1/2", -PI * PI, &[0.5]),
        ("well -π², nodes 1/4 1/2", -PI * PI, &[0.25, 0.5]),
        ("well -4π², node 1/2", -4.0 * PI * PI, &[0.5]),
    ];

    for (label, c, nodes) in cases {
        let basis = build_basis(&Potential::constant(c)?, &tol)?;
        let w = DiracWeight::new(nodes.to_vec(), vec![1.0; nodes.len()])?;
        let r = solve_spectrum(&basis, &w, &tol, Method::Auto)?;
        let h = &r.report;
        let spec = match &r.spectrum {
            Spectrum::AllComplex => "all of C".to_string(),
            Spectrum::Finite(v) if v.is_empty() => "empty".to_string(),
            Spectrum::Finite(v) => format!("{v:.10?}"),
        };
        println!(
            "{label:<28} h0={:<5} h={:<5} h1={:<5} via {:?}: {spec}",
            h.h0, h.h, h.h1, r.method
        );
    }
    Ok(())
}
