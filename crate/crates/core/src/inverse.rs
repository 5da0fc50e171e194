//! Single-mass problems: the eigenvalue curve `t ↦ λ(t, q)` and recovery
//! of `q` from it.
//!
//! With one unit mass at `t` the only eigenvalue is `λ(t) = -ω / (φ(t)ψ(t))`.
//! Conversely a curve `f` determines
//! `Q = -½ f''/f + ¾ (f'/f)² + ¼ f²`, and the profiles
//! `φ = f^{-1/2} e^{½∫_a^x f}`, `ψ = f^{-1/2} e^{-½∫_a^x f}` solve
//! `-y'' + Q y = 0` with Wronskian `-1`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::assembly::{DiracWeight, NodeValues};
use crate::fundamental::{build_basis, BasisCase, FundamentalBasis, State};
use crate::potential::interval_index;
use crate::quadrature::adaptive_simpson;
use crate::{Error, Potential, Result, Tolerances};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Candidate eigenvalue curve on `(0, 1)`.
#[derive(Clone)]
pub enum SpectrumLikeFunction {
    /// Evaluators for `f` and optionally `f'`, `f''`; missing derivatives
    /// are taken by five-point central differences.
    Closed {
        f: RealFn,
        df: Option<RealFn>,
        d2f: Option<RealFn>,
    },
    /// Samples on a strictly increasing grid inside `(0, 1)`, linearly
    /// interpolated; derivatives by second-order finite differences.
    Sampled(SampledCurve),
}

impl fmt::Debug for SpectrumLikeFunction {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumLikeFunction::Closed { df, d2f, .. } => fm
                .debug_struct("Closed")
                .field("analytic_df", &df.is_some())
                .field("analytic_d2f", &d2f.is_some())
                .finish(),
            SpectrumLikeFunction::Sampled(s) => fm.debug_tuple("Sampled").field(s).finish(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    ts: Vec<f64>,
    values: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl SampledCurve {
    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Finite-difference `f'` at the sample points.
    pub fn first_derivative(&self) -> &[f64] {
        &self.d1
    }

    /// Finite-difference `f''` at the sample points.
    pub fn second_derivative(&self) -> &[f64] {
        &self.d2
    }

    fn interp(&self, ys: &[f64], t: f64) -> f64 {
        let i = interval_index(&self.ts, t);
        let (t0, t1) = (self.ts[i], self.ts[i + 1]);
        let s = (t - t0) / (t1 - t0);
        ys[i] + s * (ys[i + 1] - ys[i])
    }

    /// Exact integral of the linear interpolant over `[a, b]`.
    fn integral(&self, a: f64, b: f64) -> f64 {
        if b < a {
            return -self.integral(b, a);
        }
        let mut x = a;
        let mut total = 0.0;
        let mut i = interval_index(&self.ts, a);
        while x < b {
            let to = self.ts[i + 1].min(b);
            total +=
                0.5 * (to - x) * (self.interp(&self.values, x) + self.interp(&self.values, to));
            x = to;
            i += 1;
        }
        total
    }
}

/// Finite-difference weights for derivatives `0..=m` at `z` (Fornberg).
fn fd_weights(z: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c
}

/// Three-point central differences `(f', f'')` with step `h`.
pub fn central_difference(f: &dyn Fn(f64) -> f64, t: f64, h: f64) -> (f64, f64) {
    let (fp, f0, fm) = (f(t + h), f(t), f(t - h));
    ((fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h))
}

fn five_point(f: &dyn Fn(f64) -> f64, t: f64, h: f64) -> (f64, f64) {
    let (f2, f1, f0, g1, g2) = (f(t + 2.0 * h), f(t + h), f(t), f(t - h), f(t - 2.0 * h));
    (
        (-f2 + 8.0 * f1 - 8.0 * g1 + g2) / (12.0 * h),
        (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * g1 - g2) / (12.0 * h * h),
    )
}

impl SpectrumLikeFunction {
    pub fn closed(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SpectrumLikeFunction::Closed {
            f: Arc::new(f),
            df: None,
            d2f: None,
        }
    }

    pub fn closed_with_derivatives(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SpectrumLikeFunction::Closed {
            f: Arc::new(f),
            df: Some(Arc::new(df)),
            d2f: Some(Arc::new(d2f)),
        }
    }

    /// `ts` strictly increasing inside `(0, 1)`, at least four samples.
    pub fn sampled(ts: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if ts.len() != values.len() {
            return Err(Error::validation(
                "data",
                "t and lambda columns differ in length",
            ));
        }
        if ts.len() < 4 {
            return Err(Error::validation("data.t", "needs at least four samples"));
        }
        if ts.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::validation("data", "values must be finite"));
        }
        if ts.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
            return Err(Error::validation("data.t", "samples must lie in (0, 1)"));
        }
        if ts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::validation("data.t", "must be strictly increasing"));
        }
        let n = ts.len();
        let mut d1 = vec![0.0; n];
        let mut d2 = vec![0.0; n];
        for i in 0..n {
            // central three points inside, four one-sided points at the ends
            let range = if i == 0 {
                0..4
            } else if i == n - 1 {
                n - 4..n
            } else {
                i - 1..i + 2
            };
            let w = fd_weights(ts[i], &ts[range.clone()], 2);
            for (k, j) in range.enumerate() {
                d1[i] += w[k][1] * values[j];
                d2[i] += w[k][2] * values[j];
            }
        }
        Ok(SpectrumLikeFunction::Sampled(SampledCurve {
            ts,
            values,
            d1,
            d2,
        }))
    }

    /// Interval on which the function may be evaluated.
    pub fn support(&self) -> (f64, f64) {
        match self {
            SpectrumLikeFunction::Closed { .. } => (0.0, 1.0),
            SpectrumLikeFunction::Sampled(s) => (s.ts[0], s.ts[s.ts.len() - 1]),
        }
    }

    fn check_inside(&self, t: f64) -> Result<()> {
        let inside = match self {
            SpectrumLikeFunction::Closed { .. } => t > 0.0 && t < 1.0,
            SpectrumLikeFunction::Sampled(s) => t >= s.ts[0] && t <= s.ts[s.ts.len() - 1],
        };
        if inside {
            Ok(())
        } else {
            let (lo, hi) = self.support();
            Err(Error::Domain(format!(
                "t = {t} outside the support ({lo}, {hi})"
            )))
        }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.check_inside(t)?;
        Ok(match self {
            SpectrumLikeFunction::Closed { f, .. } => f(t),
            SpectrumLikeFunction::Sampled(s) => s.interp(&s.values, t),
        })
    }

    /// `[f, f', f'']` at `t`.
    pub fn jet(&self, t: f64) -> Result<[f64; 3]> {
        self.check_inside(t)?;
        Ok(match self {
            SpectrumLikeFunction::Closed { f, df, d2f } => {
                let v = f(t);
                let (fd1, fd2) = match (df, d2f) {
                    (Some(a), Some(b)) => (a(t), b(t)),
                    _ => {
                        let h = 2e-3 * t.min(1.0 - t);
                        let (a, b) = five_point(f.as_ref(), t, h);
                        (
                            df.as_ref().map_or(a, |g| g(t)),
                            d2f.as_ref().map_or(b, |g| g(t)),
                        )
                    }
                };
                [v, fd1, fd2]
            }
            SpectrumLikeFunction::Sampled(s) => [
                s.interp(&s.values, t),
                s.interp(&s.d1, t),
                s.interp(&s.d2, t),
            ],
        })
    }

    /// `∫_a^b f`; adaptive Simpson at `10⁻¹⁰` for closed forms.
    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        self.check_inside(a)?;
        self.check_inside(b)?;
        match self {
            SpectrumLikeFunction::Closed { f, .. } => adaptive_simpson(f.as_ref(), a, b, 1e-10),
            SpectrumLikeFunction::Sampled(s) => Ok(s.integral(a, b)),
        }
    }

    fn near_zero_probes(&self) -> Vec<f64> {
        match self {
            SpectrumLikeFunction::Closed { .. } => vec![1e-2, 1e-3, 1e-4],
            SpectrumLikeFunction::Sampled(s) => vec![s.ts[2], s.ts[1], s.ts[0]],
        }
    }

    fn near_one_probes(&self) -> Vec<f64> {
        match self {
            SpectrumLikeFunction::Closed { .. } => vec![1.0 - 1e-2, 1.0 - 1e-3, 1.0 - 1e-4],
            SpectrumLikeFunction::Sampled(s) => {
                let n = s.ts.len();
                vec![s.ts[n - 3], s.ts[n - 2], s.ts[n - 1]]
            }
        }
    }
}

/// `Q = -½ f''/f + ¾ (f'/f)² + ¼ f²` from a jet `[f, f', f'']`.
pub fn q_from_jet(j: [f64; 3]) -> f64 {
    let [f, d1, d2] = j;
    -0.5 * d2 / f + 0.75 * (d1 / f).powi(2) + 0.25 * f * f
}

fn q_scale(j: [f64; 3]) -> f64 {
    let [f, d1, d2] = j;
    (0.5 * d2 / f).abs() + 0.75 * (d1 / f).powi(2) + 0.25 * f * f
}

/// `λ(t, q)` for one unit mass at `t`.
pub fn forward_lambda(q: &Potential, t: f64, tol: &Tolerances) -> Result<f64> {
    forward_lambda_with(&build_basis(q, tol)?, t, tol)
}

/// Like [`forward_lambda`] with a prebuilt basis.
pub fn forward_lambda_with(basis: &FundamentalBasis, t: f64, tol: &Tolerances) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("node t = {t} must lie in (0, 1)")));
    }
    if basis.case() == BasisCase::CaseII {
        return Err(Error::ZeroEigenvalueRegime);
    }
    let nv = NodeValues::new(basis, &DiracWeight::single(t, 1.0)?)?;
    let (phi, psi) = (nv.phi[1], nv.psi[1]);
    if nv.disc(0, 1).is_zero(tol) || nv.disc(1, 2).is_zero(tol) {
        return Err(Error::EmptySpectrum {
            t,
            product: phi * psi,
        });
    }
    Ok(-basis.omega() / (phi * psi))
}

/// `(t, λ(t, q))` for every `t` in `ts`.
pub fn forward_curve(q: &Potential, ts: &[f64], tol: &Tolerances) -> Result<Vec<(f64, f64)>> {
    let basis = build_basis(q, tol)?;
    ts.iter()
        .map(|&t| forward_lambda_with(&basis, t, tol).map(|l| (t, l)))
        .collect()
}

/// A potential known on a grid inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveredPotential {
    pub xs: Vec<f64>,
    pub qs: Vec<f64>,
}

impl RecoveredPotential {
    /// Sampled potential on `[0, 1]`, held constant beyond the grid ends.
    pub fn into_potential(self) -> Result<Potential> {
        let (mut xs, mut qs) = (self.xs, self.qs);
        if xs.is_empty() {
            return Err(Error::Domain("empty recovered potential".into()));
        }
        if xs[0] > 0.0 {
            xs.insert(0, 0.0);
            qs.insert(0, qs[0]);
        }
        if xs[xs.len() - 1] < 1.0 {
            xs.push(1.0);
            qs.push(qs[qs.len() - 1]);
        }
        Potential::sampled(xs, qs)
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain("empty recovery grid".into()));
    }
    if grid.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(Error::Domain("recovery grid must lie in (0, 1)".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "recovery grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `Q` on `grid`. Without `force`, `f` must first pass
/// [`validate_spectrum_like`] with default probes.
pub fn recover_potential(
    f: &SpectrumLikeFunction,
    grid: &[f64],
    force: bool,
) -> Result<RecoveredPotential> {
    check_grid(grid)?;
    if !force {
        let report = validate_spectrum_like(f, &ProbeSpec::for_function(f));
        if !report.passed {
            return Err(Error::Domain(format!(
                "data is not spectrum-like ({}); use force to recover anyway",
                report.failures().join(", ")
            )));
        }
    }
    let mut qs = Vec::with_capacity(grid.len());
    for &x in grid {
        let j = f.jet(x)?;
        if !(j[0] > 0.0) {
            return Err(Error::Domain(format!("f({x}) = {} is not positive", j[0])));
        }
        qs.push(q_from_jet(j));
    }
    if let SpectrumLikeFunction::Closed { .. } = f {
        let gap = anchor_discrepancy(f, grid, 0.5, 0.25)?;
        if gap > ANCHOR_TOL {
            return Err(Error::NumericalFailure(format!(
                "recovered potential depends on the anchor point (scaled gap {gap:e})"
            )));
        }
    }
    Ok(RecoveredPotential {
        xs: grid.to_vec(),
        qs,
    })
}

const ANCHOR_TOL: f64 = 1e-8;

/// Reconstructed `φ`, `ψ` (value and derivative) on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisProfiles {
    pub anchor: f64,
    pub phi: Vec<State>,
    pub psi: Vec<State>,
}

impl BasisProfiles {
    /// `φψ' - φ'ψ` at every grid point.
    pub fn wronskians(&self) -> Vec<f64> {
        self.phi
            .iter()
            .zip(&self.psi)
            .map(|(p, s)| p.y * s.dy - p.dy * s.y)
            .collect()
    }
}

/// `φ = f^{-1/2} E`, `ψ = f^{-1/2} / E` with `E = e^{½∫_a^x f}`, derivatives
/// analytic in `f, f'`.
pub fn reconstruct_basis(f: &SpectrumLikeFunction, a: f64, grid: &[f64]) -> Result<BasisProfiles> {
    check_grid(grid)?;
    f.check_inside(a)?;
    let mut phi = Vec::with_capacity(grid.len());
    let mut psi = Vec::with_capacity(grid.len());
    for &x in grid {
        let [v, d1, _] = f.jet(x)?;
        if !(v > 0.0) {
            return Err(Error::Domain(format!("f({x}) = {v} is not positive")));
        }
        let e = (0.5 * f.integral(a, x)?).exp();
        let r = v.sqrt();
        let common = -0.5 * d1 / (v * r);
        phi.push(State::new(x, e / r, (common + 0.5 * r) * e));
        psi.push(State::new(x, 1.0 / (r * e), (common - 0.5 * r) / e));
    }
    Ok(BasisProfiles {
        anchor: a,
        phi,
        psi,
    })
}

/// Largest scaled difference between `φ''/φ` computed from the profiles
/// anchored at `a1` and at `a2`.
pub fn anchor_discrepancy(f: &SpectrumLikeFunction, grid: &[f64], a1: f64, a2: f64) -> Result<f64> {
    let route = |a: f64| -> Result<Vec<f64>> {
        grid.iter()
            .map(|&x| {
                let [v, d1, d2] = f.jet(x)?;
                let e = (0.5 * f.integral(a, x)?).exp();
                let phi = e / v.sqrt();
                let phi2 = e
                    * (-0.5 * d2 * v.powf(-1.5)
                        + 0.75 * d1 * d1 * v.powf(-2.5)
                        + 0.25 * v.powf(1.5));
                Ok(phi2 / phi)
            })
            .collect()
    };
    let (q1, q2) = (route(a1)?, route(a2)?);
    let mut worst: f64 = 0.0;
    for (k, &x) in grid.iter().enumerate() {
        let scale = 1.0 + q_scale(f.jet(x)?);
        worst = worst.max((q1[k] - q2[k]).abs() / scale);
    }
    Ok(worst)
}

/// Where and how strictly [`validate_spectrum_like`] probes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeSpec {
    /// Decreasing toward 0.
    pub near_zero: Vec<f64>,
    /// Increasing toward 1.
    pub near_one: Vec<f64>,
    pub anchor: f64,
    /// Required `f(probe closest to the end) / f(anchor)`.
    pub divergence_factor: f64,
    /// Upper bound accepted for `sup |f'/f²|`.
    pub ratio_bound: f64,
    /// Largest accepted relative change between successive limit-band values.
    pub max_drift: f64,
}

impl ProbeSpec {
    /// Probes at `10⁻²`, `10⁻³`, `10⁻⁴` (mirrored at 1) for closed forms;
    /// the three outermost samples for sampled data.
    pub fn for_function(f: &SpectrumLikeFunction) -> Self {
        let sampled = matches!(f, SpectrumLikeFunction::Sampled(_));
        let (lo, hi) = f.support();
        Self {
            near_zero: f.near_zero_probes(),
            near_one: f.near_one_probes(),
            anchor: if sampled { 0.5 * (lo + hi) } else { 0.5 },
            divergence_factor: if sampled { 10.0 } else { 100.0 },
            ratio_bound: 1e3,
            max_drift: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub pass: bool,
    /// First probe point that failed, if any.
    pub witness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioCheck {
    pub pass: bool,
    pub sup: f64,
    pub bound: f64,
}

/// Endpoint behaviour of `g₀ = f e^{-∫_t^a f}` and `g₁ = f e^{-∫_a^t f}`.
/// The verdict is a stabilization heuristic on finitely many probes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitBands {
    pub near_zero: Vec<(f64, f64)>,
    pub near_one: Vec<(f64, f64)>,
    pub stable_at_0: bool,
    pub stable_at_1: bool,
    pub heuristic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub differentiability: Check,
    pub positivity: Check,
    pub divergence_at_0: bool,
    pub divergence_at_1: bool,
    pub ratio_bound: RatioCheck,
    pub limit_bands: LimitBands,
    pub passed: bool,
}

impl ValidationReport {
    /// Names of the failed sub-checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = vec![];
        if !self.differentiability.pass {
            out.push("differentiability");
        }
        if !self.positivity.pass {
            out.push("positivity");
        }
        if !self.divergence_at_0 {
            out.push("divergence at 0");
        }
        if !self.divergence_at_1 {
            out.push("divergence at 1");
        }
        if !self.ratio_bound.pass {
            out.push("f'/f^2 bound");
        }
        if !self.limit_bands.stable_at_0 {
            out.push("limit band at 0");
        }
        if !self.limit_bands.stable_at_1 {
            out.push("limit band at 1");
        }
        out
    }
}

fn band(values: &[(f64, f64)], max_drift: f64) -> bool {
    values.iter().all(|&(_, g)| g.is_finite() && g > 0.0)
        && values
            .windows(2)
            .all(|w| (w[1].1 - w[0].1).abs() <= max_drift * w[0].1.abs())
}

/// Finite-probe check of the four spectrum-like conditions. Never fails;
/// evaluation errors count as failed checks.
pub fn validate_spectrum_like(f: &SpectrumLikeFunction, probe: &ProbeSpec) -> ValidationReport {
    let (lo, hi) = f.support();
    let interior: Vec<f64> = (1..20).map(|k| lo + (hi - lo) * k as f64 / 20.0).collect();
    let mut points: Vec<f64> = probe
        .near_zero
        .iter()
        .chain(&interior)
        .chain(&probe.near_one)
        .copied()
        .collect();
    points.sort_by(f64::total_cmp);

    let jets: Vec<Option<[f64; 3]>> = points.iter().map(|&t| f.jet(t).ok()).collect();
    let bad_jet = points
        .iter()
        .zip(&jets)
        .find(|(_, j)| !j.is_some_and(|j| j.iter().all(|v| v.is_finite())))
        .map(|(&t, _)| t);
    let differentiability = Check {
        pass: bad_jet.is_none(),
        witness: bad_jet,
    };
    let nonpositive = points
        .iter()
        .zip(&jets)
        .find(|(_, j)| !j.is_some_and(|j| j[0] > 0.0))
        .map(|(&t, _)| t);
    let positivity = Check {
        pass: nonpositive.is_none(),
        witness: nonpositive,
    };

    let centre = f.value(probe.anchor).unwrap_or(f64::NAN);
    let diverges = |probes: &[f64]| -> bool {
        let vals: Option<Vec<f64>> = probes.iter().map(|&t| f.value(t).ok()).collect();
        match vals {
            Some(v) if !v.is_empty() => {
                v.windows(2).all(|w| w[1] > w[0])
                    && centre > 0.0
                    && v[v.len() - 1] >= probe.divergence_factor * centre
            }
            _ => false,
        }
    };
    let divergence_at_0 = diverges(&probe.near_zero);
    let divergence_at_1 = diverges(&probe.near_one);

    let sup = jets
        .iter()
        .map(|j| match j {
            Some([v, d1, _]) => (d1 / (v * v)).abs(),
            None => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    let ratio_bound = RatioCheck {
        pass: sup.is_finite() && sup <= probe.ratio_bound,
        sup,
        bound: probe.ratio_bound,
    };

    let g = |t: f64, sign: f64| -> f64 {
        match (f.value(t), f.integral(probe.anchor, t)) {
            (Ok(v), Ok(i)) => v * (-sign * i).exp(),
            _ => f64::NAN,
        }
    };
    // g₀ = f e^{-∫_t^a f} = f e^{∫_a^t f}; g₁ = f e^{-∫_a^t f}
    let near_zero: Vec<(f64, f64)> = probe.near_zero.iter().map(|&t| (t, g(t, -1.0))).collect();
    let near_one: Vec<(f64, f64)> = probe.near_one.iter().map(|&t| (t, g(t, 1.0))).collect();
    let limit_bands = LimitBands {
        stable_at_0: positivity.pass && band(&near_zero, probe.max_drift),
        stable_at_1: positivity.pass && band(&near_one, probe.max_drift),
        near_zero,
        near_one,
        heuristic: true,
    };

    let passed = differentiability.pass
        && positivity.pass
        && divergence_at_0
        && divergence_at_1
        && ratio_bound.pass
        && limit_bands.stable_at_0
        && limit_bands.stable_at_1;
    ValidationReport {
        differentiability,
        positivity,
        divergence_at_0,
        divergence_at_1,
        ratio_bound,
        limit_bands,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn free() -> SpectrumLikeFunction {
        SpectrumLikeFunction::closed_with_derivatives(
            |t| 1.0 / (t * (1.0 - t)),
            |t| (2.0 * t - 1.0) / (t * (1.0 - t)).powi(2),
            |t| {
                let s = t * (1.0 - t);
                2.0 / s.powi(2) + 2.0 * (1.0 - 2.0 * t).powi(2) / s.powi(3)
            },
        )
    }

    #[test]
    fn forward_map_of_simple_potentials() {
        assert!((forward_lambda(&Potential::Zero, 0.5, &tol()).unwrap() - 4.0).abs() < 1e-14);
        let l = forward_lambda(&Potential::Zero, 0.25, &tol()).unwrap();
        assert!((l - 16.0 / 3.0).abs() < 1e-13);
        let q = Potential::constant(1.0).unwrap();
        let l = forward_lambda(&q, 0.5, &tol()).unwrap();
        assert!((l - 1f64.sinh() / 0.5f64.sinh().powi(2)).abs() < 1e-12);
        let q = Potential::constant(-std::f64::consts::PI.powi(2)).unwrap();
        assert!(matches!(
            forward_lambda(&q, 0.5, &tol()),
            Err(Error::ZeroEigenvalueRegime)
        ));
        let q = Potential::constant(-9.0 * std::f64::consts::PI.powi(2) / 4.0).unwrap();
        assert!(matches!(
            forward_lambda(&q, 2.0 / 3.0, &tol()),
            Err(Error::EmptySpectrum { .. })
        ));
    }

    #[test]
    fn free_curve_recovers_zero() {
        let grid: Vec<f64> = (1..20).map(|k| k as f64 / 20.0).collect();
        let r = recover_potential(&free(), &grid, false).unwrap();
        assert!(r.qs.iter().all(|q| q.abs() < 1e-8), "{:?}", r.qs);
        let fd = SpectrumLikeFunction::closed(|t| 1.0 / (t * (1.0 - t)));
        let r = recover_potential(&fd, &grid, false).unwrap();
        assert!(r.qs.iter().all(|q| q.abs() < 1e-6), "{:?}", r.qs);
    }

    #[test]
    fn validation_verdicts() {
        let rep = validate_spectrum_like(&free(), &ProbeSpec::for_function(&free()));
        assert!(rep.passed, "{rep:?}");
        let one = SpectrumLikeFunction::closed(|_| 1.0);
        let rep = validate_spectrum_like(&one, &ProbeSpec::for_function(&one));
        assert!(!rep.passed && rep.positivity.pass && !rep.divergence_at_0);
        assert!(recover_potential(&one, &[0.5], false).is_err());
        assert!(recover_potential(&one, &[0.5], true).is_ok());
        let neg = SpectrumLikeFunction::closed(|t| -1.0 / (t * (1.0 - t)));
        let rep = validate_spectrum_like(&neg, &ProbeSpec::for_function(&neg));
        assert!(!rep.positivity.pass && !rep.passed);
        assert!(recover_potential(&neg, &[0.5], true).is_err());
    }

    #[test]
    fn reconstructed_profiles_of_free_curve() {
        let grid: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
        let b = reconstruct_basis(&free(), 0.5, &grid).unwrap();
        for (k, &x) in grid.iter().enumerate() {
            assert!((b.phi[k].y - x).abs() < 1e-9);
            assert!((b.psi[k].y - (1.0 - x)).abs() < 1e-9);
            assert!((b.phi[k].dy - 1.0).abs() < 1e-9);
        }
        assert!(b.wronskians().iter().all(|w| (w + 1.0).abs() < 1e-12));
    }

    #[test]
    fn sampled_derivatives_are_exact_on_quadratics() {
        let ts = vec![0.1, 0.15, 0.3, 0.32, 0.6, 0.9];
        let vs = ts.iter().map(|t| 3.0 * t * t - t + 2.0).collect();
        let f = SpectrumLikeFunction::sampled(ts.clone(), vs).unwrap();
        let SpectrumLikeFunction::Sampled(s) = &f else {
            unreachable!()
        };
        for (i, t) in ts.iter().enumerate() {
            assert!((s.first_derivative()[i] - (6.0 * t - 1.0)).abs() < 1e-11);
            assert!((s.second_derivative()[i] - 6.0).abs() < 1e-9);
        }
        assert!((f.integral(0.1, 0.9).unwrap() + f.integral(0.9, 0.1).unwrap()).abs() < 1e-15);
        assert!(SpectrumLikeFunction::sampled(vec![0.1, 0.2, 0.2, 0.3], vec![1.0; 4]).is_err());
        assert!(SpectrumLikeFunction::sampled(vec![0.0, 0.2, 0.25, 0.3], vec![1.0; 4]).is_err());
    }

    #[test]
    fn recovered_potential_extends_to_unit_interval() {
        let r = RecoveredPotential {
            xs: vec![0.25, 0.75],
            qs: vec![1.0, 3.0],
        };
        let p = r.into_potential().unwrap();
        assert_eq!(p.evaluate(0.0).unwrap(), 1.0);
        assert_eq!(p.evaluate(0.5).unwrap(), 2.0);
        assert_eq!(p.evaluate(1.0).unwrap(), 3.0);
    }
}
