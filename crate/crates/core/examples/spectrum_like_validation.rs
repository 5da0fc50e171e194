//! Which candidate curves can be the single-bead eigenvalue curve of some
//! potential.
//!
//!     cargo run --example spectrum_like_validation

use dirac_sturm::{validate_spectrum_like, ProbeSpec, SpectrumLikeFunction};

fn main() {
    let candidates: Vec<(&str, SpectrumLikeFunction)> = vec![
        (
            "1/(t(1-t))",
            SpectrumLikeFunction::closed(|t| 1.0 / (t * (1.0 - t))),
        ),
        (
            "2/(t(1-t))",
            SpectrumLikeFunction::closed(|t| 2.0 / (t * (1.0 - t))),
        ),
        (
            "1/t + 1/(1-t) + 3",
            SpectrumLikeFunction::closed(|t| 1.0 / t + 1.0 / (1.0 - t) + 3.0),
        ),
        ("constant 4", SpectrumLikeFunction::closed(|_| 4.0)),
        (
            "1/(t(1-t))^2",
            SpectrumLikeFunction::closed(|t| (t * (1.0 - t)).powi(-2)),
        ),
    ];
    for (label, f) in &candidates {
        let r = validate_spectrum_like(f, &ProbeSpec::for_function(f));
        if r.passed {
            println!("{label:<20} ok (sup |f'/f²| = {:.3})", r.ratio_bound.sup);
        } else {
            println!("{label:<20} rejected: {}", r.failures().join(", "));
        }
    }
}
