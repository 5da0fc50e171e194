//! Recovering a potential from the single-bead eigenvalue curve, first
//! from a closed form and then from samples of the forward map.
//!
//!     cargo run --example inverse_recovery

use dirac_sturm::{
    forward_curve, forward_lambda, recover_potential, Potential, SpectrumLikeFunction, Tolerances,
};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();

    // closed form: a perturbed free-string curve
    let f = |t: f64| (1.0 + 0.5 * (std::f64::consts::PI * t).sin().powi(2)) / (t * (1.0 - t));
    let closed = SpectrumLikeFunction::closed(f);
    let grid: Vec<f64> = (1..2000).map(|k| k as f64 / 2000.0).collect();
    let q = recover_potential(&closed, &grid, false)?;
    for x in [0.1, 0.3, 0.5] {
        let i = grid.iter().position(|g| (g - x).abs() < 1e-12).unwrap();
        println!("Q({x}) = {:.6}", q.qs[i]);
    }
    let pot = q.into_potential()?;
    for t in [0.25, 0.5] {
        println!(
            "  forward map of Q at {t}: {:.6} (target {:.6})",
            forward_lambda(&pot, t, &tol)?,
            f(t)
        );
    }

    // sampled: forward map of q = 5, then back
    for h in [0.02f64, 0.01, 0.005] {
        let n = (1.0 / h).round() as usize;
        let ts: Vec<f64> = (1..n).map(|k| k as f64 * h).collect();
        let (ts, ls): (Vec<f64>, Vec<f64>) = forward_curve(&Potential::constant(5.0)?, &ts, &tol)?
            .into_iter()
            .unzip();
        let data = SpectrumLikeFunction::sampled(ts.clone(), ls)?;
        let r = recover_potential(&data, &ts, true)?;
        let err =
            r.xs.iter()
                .zip(&r.qs)
                .filter(|(x, _)| (0.1..=0.9).contains(*x))
                .fold(0.0f64, |m, (_, q)| m.max((q - 5.0).abs()));
        println!("h = {h}: max |Q - 5| on [0.1, 0.9] = {err:.3e}");
    }
    Ok(())
}
