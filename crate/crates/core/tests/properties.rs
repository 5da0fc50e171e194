//! Randomized invariants of the forward and inverse machinery.

mod common;

use std::f64::consts::PI;

use dirac_sturm::assembly::discriminant;
use dirac_sturm::inverse::central_difference;
use dirac_sturm::io::parse_two_column_csv;
use dirac_sturm::{
    build_basis, characteristic_polynomial, closed_form_coefficients, coefficient_chain,
    eigenfunction, emit_csv, forward_lambda, parse_problem, propagate_state, reconstruct_basis,
    recover_potential, solve_spectrum, tridiagonal_system, validate_spectrum_like, BasisCase,
    DiracWeight, Method, Potential, ProbeSpec, ProblemFile, SpectrumLikeFunction, State,
    Tolerances,
};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn potential() -> impl Strategy<Value = Potential> {
    prop_oneof![
        Just(Potential::Zero),
        (-30.0..30.0f64).prop_map(Potential::Constant),
        (
            prop::collection::vec(0.05..0.95f64, 1..4),
            prop::collection::vec(-30.0..30.0f64, 4)
        )
            .prop_filter_map("distinct breakpoints", |(mut inner, vals)| {
                inner.sort_by(f64::total_cmp);
                if inner.windows(2).any(|w| w[1] - w[0] < 1e-3) {
                    return None;
                }
                let mut b = vec![0.0];
                b.extend(inner);
                b.push(1.0);
                let v = vals[..b.len() - 1].to_vec();
                Potential::piecewise_constant(b, v).ok()
            }),
    ]
}

fn weight(max_n: usize) -> impl Strategy<Value = DiracWeight> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.02..0.98f64, n),
                prop::collection::vec(0.05..3.0f64, n),
            )
        })
        .prop_filter_map("separated nodes", |(mut t, m)| {
            t.sort_by(f64::total_cmp);
            if t.windows(2).any(|w| w[1] - w[0] < 0.02) {
                return None;
            }
            DiracWeight::new(t, m).ok()
        })
}

fn rel_close(a: f64, b: f64, rel: f64, scale: f64) -> bool {
    (a - b).abs() <= rel * (scale + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discriminant_is_antisymmetric_in_its_arguments(q in potential(), x in 0.0..1.0f64, y in 0.0..1.0f64) {
        prop_assume!((x - y).abs() > 1e-6);
        let b = build_basis(&q, &tol()).unwrap();
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let d = discriminant(&b, lo, hi).unwrap();
        let (p_lo, s_lo) = (b.phi(lo).unwrap().y, b.psi(lo).unwrap().y);
        let (p_hi, s_hi) = (b.phi(hi).unwrap().y, b.psi(hi).unwrap().y);
        let direct = p_hi * s_lo - p_lo * s_hi;
        prop_assert!(rel_close(d, direct, 1e-12, 1.0));
        prop_assert!(discriminant(&b, hi, lo).is_err());
    }

    #[test]
    fn closed_form_coefficients_match_the_chain(q in potential(), w in weight(5)) {
        let b = build_basis(&q, &tol()).unwrap();
        let chain = coefficient_chain(&b, &w).unwrap();
        for k in 0..=w.len() {
            let (a, bb) = closed_form_coefficients(&b, &w, k).unwrap();
            for d in 0..=k {
                let sa = chain.alpha[k].coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
                let sb = chain.beta[k].coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
                prop_assert!((a.coeff(d) - chain.alpha[k].coeff(d)).abs() <= 1e-8 * (sa + 1e-300));
                prop_assert!((bb.coeff(d) - chain.beta[k].coeff(d)).abs() <= 1e-8 * (sb + 1e-300));
            }
        }
    }

    #[test]
    fn final_coefficients_never_vanish_together(q in potential(), w in weight(6), lambda in -200.0..200.0f64) {
        let b = build_basis(&q, &tol()).unwrap();
        let (a, bb) = *coefficient_chain(&b, &w).unwrap().at(lambda).last().unwrap();
        prop_assert!(a != 0.0 || bb != 0.0);
    }

    #[test]
    fn tridiagonal_determinant_is_proportional_to_the_polynomial(q in potential(), w in weight(5)) {
        let b = build_basis(&q, &tol()).unwrap();
        let Ok(sys) = tridiagonal_system(&b, &w, &tol()) else {
            return Ok(());
        };
        let p = characteristic_polynomial(&b, &w, &tol()).unwrap();
        let probes = [-7.3, 0.4, 5.1, 19.0];
        if b.case() == BasisCase::CaseI {
            let k = sys.proportionality_constant();
            for &l in &probes {
                let det = sys.sym.char_poly_at(l).0;
                prop_assert!(rel_close(p.raw.eval(l), k * det, 1e-7, 1e-7 * p.raw.eval_abs(l)),
                    "p({l}) = {} vs {}", p.raw.eval(l), k * det);
            }
        } else {
            let ratios: Vec<f64> = probes.iter().map(|&l| p.raw.eval(l) / sys.sym.char_poly_at(l).0).collect();
            for r in &ratios[1..] {
                prop_assert!(rel_close(*r, ratios[0], 1e-6, 0.0));
            }
        }
    }

    #[test]
    fn propagation_is_linear_and_reversible(
        q in potential(),
        x0 in 0.0..1.0f64,
        x1 in 0.0..1.0f64,
        (y1, d1, y2, d2) in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64),
        (a, c) in (-3.0..3.0f64, -3.0..3.0f64),
    ) {
        let go = |y: f64, dy: f64| propagate_state(&q, State::new(x0, y, dy), x1, &tol()).unwrap();
        let (s1, s2, s) = (go(y1, d1), go(y2, d2), go(a * y1 + c * y2, a * d1 + c * d2));
        let scale = 1.0 + s1.y.abs() + s2.y.abs() + s1.dy.abs() + s2.dy.abs();
        prop_assert!((s.y - (a * s1.y + c * s2.y)).abs() <= 1e-9 * scale * (a.abs() + c.abs() + 1.0));
        prop_assert!((s.dy - (a * s1.dy + c * s2.dy)).abs() <= 1e-9 * scale * (a.abs() + c.abs() + 1.0));
        let back = propagate_state(&q, s1, x0, &tol()).unwrap();
        prop_assert!((back.y - y1).abs() <= 1e-9 * scale);
        prop_assert!((back.dy - d1).abs() <= 1e-9 * scale);
    }

    #[test]
    fn eigenfunctions_satisfy_the_jump_problem(q in potential(), w in weight(4)) {
        let b = build_basis(&q, &tol()).unwrap();
        let c = solve_spectrum(&b, &w, &tol(), Method::CharPoly).unwrap();
        let Some(ev) = c.spectrum.eigenvalues() else {
            return Ok(());
        };
        for &l in ev {
            let e = eigenfunction(&b, &w, l, &tol()).unwrap();
            let sup = e.sample(101).unwrap().iter().fold(0.0f64, |m, (_, y)| m.max(y.abs()));
            let (e0, e1) = e.boundary_values().unwrap();
            prop_assert!(e0.abs() <= 1e-12 * sup);
            prop_assert!(e1.abs() <= 1e-6 * sup, "E(1) = {e1} at λ = {l}, sup {sup}");
            prop_assert!(e.continuity_defect().unwrap() <= 1e-9 * (1.0 + sup));
            prop_assert!(e.jump_defect().unwrap() <= 1e-8 * (1.0 + sup * (1.0 + l.abs())));
        }
    }

    #[test]
    fn problem_files_round_trip(q in potential(), w in weight(6)) {
        let p = ProblemFile { potential: q, weight: w, tolerances: None };
        prop_assert_eq!(parse_problem(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn curve_csv_round_trips(rows in prop::collection::vec((any::<f64>(), any::<f64>()), 0..20)) {
        prop_assume!(rows.iter().all(|(a, b)| a.is_finite() && b.is_finite()));
        let table: Vec<Vec<f64>> = rows.iter().map(|&(a, b)| vec![a, b]).collect();
        let back = parse_two_column_csv(&emit_csv(&table, "t,lambda"), ["t", "lambda"]).unwrap();
        prop_assert_eq!(back, rows);
    }

    #[test]
    fn central_differences_are_second_order(k in 0.5..4.0f64, t in 0.2..0.8f64) {
        let f = move |x: f64| (k * x).sin() + (0.5 * k * x).exp();
        let d1 = k * (k * t).cos() + 0.5 * k * (0.5 * k * t).exp();
        let d2 = -k * k * (k * t).sin() + 0.25 * k * k * (0.5 * k * t).exp();
        // Taylor remainders: |err'| <= h² M3 / 6, |err''| <= h² M4 / 12
        let e = (0.5 * k * (t + 0.05)).exp();
        let m3 = k.powi(3) + (0.5 * k).powi(3) * e;
        let m4 = k.powi(4) + (0.5 * k).powi(4) * e;
        for h in [0.02, 0.01, 0.005] {
            let (a1, a2) = central_difference(&f, t, h);
            prop_assert!((a1 - d1).abs() <= h * h * m3 / 6.0 + 1e-12, "f' error at h = {h}");
            prop_assert!((a2 - d2).abs() <= h * h * m4 / 12.0 + 1e-8, "f'' error at h = {h}");
        }
    }

    #[test]
    fn nonnegative_potentials_give_positive_curves(c in 0.0..60.0f64, t in 0.01..0.99f64) {
        let l = forward_lambda(&Potential::Constant(c), t, &tol()).unwrap();
        prop_assert!(l > 0.0);
        let free = 1.0 / (t * (1.0 - t));
        prop_assert!(l >= free * (1.0 - 1e-12));
    }

    #[test]
    fn single_mass_eigenvalue_matches_the_curve(q in potential(), t in 0.05..0.95f64, m in 0.1..3.0f64) {
        let b = build_basis(&q, &tol()).unwrap();
        prop_assume!(b.case() == BasisCase::CaseI);
        let Ok(l) = forward_lambda(&q, t, &tol()) else {
            return Ok(());
        };
        let w = DiracWeight::single(t, m).unwrap();
        let s = solve_spectrum(&b, &w, &tol(), Method::CharPoly).unwrap();
        let ev = s.spectrum.eigenvalues().unwrap();
        prop_assert_eq!(ev.len(), 1);
        prop_assert!(rel_close(ev[0] * m, l, 1e-9, 0.0), "{} vs {l}", ev[0] * m);
    }
}

#[test]
fn free_string_ratio_never_exceeds_one() {
    let f = SpectrumLikeFunction::closed(|t| 1.0 / (t * (1.0 - t)));
    let r = validate_spectrum_like(&f, &ProbeSpec::for_function(&f));
    assert!(r.passed, "{:?}", r.failures());
    assert!(r.ratio_bound.sup <= 1.0 + 1e-6, "sup {}", r.ratio_bound.sup);
    for k in 1..100 {
        let t = k as f64 / 100.0;
        let [v, d, _] = f.jet(t).unwrap();
        assert!((d / (v * v)).abs() <= (2.0 * t - 1.0).abs() + 1e-6);
    }
}

#[test]
fn reconstructed_basis_reproduces_the_curve() {
    let (f, df, d2f) = common::trigonometric_curve(2.0);
    let g = SpectrumLikeFunction::closed_with_derivatives(f, df, d2f);
    let grid: Vec<f64> = (1..40).map(|k| k as f64 / 40.0).collect();
    let prof = reconstruct_basis(&g, 0.5, &grid).unwrap();
    for ((p, s), &x) in prof.phi.iter().zip(&prof.psi).zip(&grid) {
        let v = g.value(x).unwrap();
        assert!(
            (p.y * s.y * v - 1.0).abs() < 1e-12,
            "φψf = {} at {x}",
            p.y * s.y * v
        );
    }
    for w in prof.wronskians() {
        assert!((w + 1.0).abs() < 1e-12, "wronskian {w}");
    }
}

/// A curve that is not the forward map of any constant potential goes to
/// `Q` and back.
#[test]
fn nonconstant_round_trip() {
    let f = |t: f64| (1.0 + 0.5 * (PI * t).sin().powi(2)) / (t * (1.0 - t));
    let g = SpectrumLikeFunction::closed(f);
    let r = validate_spectrum_like(&g, &ProbeSpec::for_function(&g));
    assert!(r.passed, "{:?}", r.failures());
    let grid: Vec<f64> = (1..4000).map(|k| k as f64 / 4000.0).collect();
    let q = recover_potential(&g, &grid, false).unwrap();
    assert!(q.qs.iter().all(|v| v.is_finite()));
    let q = q.into_potential().unwrap();
    for t in [0.2, 0.5, 0.8] {
        let l = forward_lambda(&q, t, &tol()).unwrap();
        assert!((l - f(t)).abs() <= 1e-4 * f(t), "λ({t}) = {l} vs {}", f(t));
    }
}
