//! Eigenvalue of a single unit bead as a function of its position, for
//! a few constant potentials. The free string gives 1/(t(1-t)).
//!
//!     cargo run --example forward_map

use dirac_sturm::{forward_curve, Potential, Tolerances};

fn main() -> dirac_sturm::Result<()> {
    let tol = Tolerances::default();
    let ts: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
    print!("{:>5}", "t");
    let qs = [0.0, 5.0, 40.0, -5.0];
    for c in qs {
        print!("{:>14}", format!("q = {c}"));
    }
    println!("{:>14}", "1/(t(1-t))");

    let curves = qs
        .iter()
        .map(|&c| forward_curve(&Potential::constant(c)?, &ts, &tol))
        .collect::<dirac_sturm::Result<Vec<_>>>()?;
    for (i, t) in ts.iter().enumerate() {
        print!("{t:>5.1}");
        for c in &curves {
            print!("{:>14.6}", c[i].1);
        }
        println!("{:>14.6}", 1.0 / (t * (1.0 - t)));
    }
    Ok(())
}
