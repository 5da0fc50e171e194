//! Tuning a uniform restoring force so that a bead at a given position
//! vibrates at a target eigenvalue, by bisection on the forward map.
//!
//!     cargo run --example string_tuning

use dirac_sturm::{forward_lambda, Potential, Tolerances};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();
    let (xi, target) = (0.3, 25.0);
    let lam = |c: f64| forward_lambda(&Potential::constant(c)?, xi, &tol);

    // λ grows with c; bracket, then bisect
    let (mut lo, mut hi) = (-5.0, 5.0);
    while lam(lo)? > target {
        lo *= 2.0;
    }
    while lam(hi)? < target {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if lam(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    let c = 0.5 * (lo + hi);
    println!(
        "bead at {xi}: q = {c:.10} gives λ = {:.10} (target {target})",
        lam(c)?
    );
    Ok(())
}
