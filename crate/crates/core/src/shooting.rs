//! Direct shooting on the jump problem, independent of the basis algebra.
//!
//! `y(0) = 0`, `y'(0) = 1`; across each node `y'(t⁺) = y'(t⁻) - λ m y(t)`.
//! The terminal value `y(1; λ)` vanishes exactly at the eigenvalues.

use crate::assembly::DiracWeight;
use crate::fundamental::{FundamentalBasis, Propagator, State};
use crate::polynomial::dedup_sorted;
use crate::{Error, Potential, Result, Tolerances};

/// `λ ↦ y(1; λ)` for a fixed potential and weight.
#[derive(Debug, Clone)]
pub struct MissFunction {
    propagator: Propagator,
    weight: DiracWeight,
}

/// Terminal value of one shot and the largest `|y|` seen on the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shot {
    pub terminal: f64,
    pub max_abs: f64,
}

impl Shot {
    /// `|y(1)| / max|y|`.
    pub fn relative_miss(&self) -> f64 {
        if self.max_abs == 0.0 {
            0.0
        } else {
            self.terminal.abs() / self.max_abs
        }
    }
}

const PROBES: usize = 64;

impl MissFunction {
    pub fn new(q: &Potential, w: &DiracWeight, tol: &Tolerances) -> Self {
        Self {
            propagator: Propagator::new(q, tol),
            weight: w.clone(),
        }
    }

    /// Reuses the propagator already built for a basis.
    pub fn from_basis(basis: &FundamentalBasis, w: &DiracWeight) -> Self {
        Self {
            propagator: basis.propagator().clone(),
            weight: w.clone(),
        }
    }

    fn run(&self, lambda: f64, probes: usize) -> Result<Shot> {
        let mut stops: Vec<(f64, Option<f64>)> = self
            .weight
            .nodes()
            .iter()
            .zip(self.weight.masses())
            .map(|(&t, &m)| (t, Some(m)))
            .collect();
        stops.extend((1..probes).map(|k| (k as f64 / probes as f64, None)));
        stops.push((1.0, None));
        stops.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut s = State::new(0.0, 0.0, 1.0);
        let mut max_abs: f64 = 0.0;
        for (x, mass) in stops {
            s = self.propagator.advance(s, x)?;
            max_abs = max_abs.max(s.y.abs());
            if let Some(m) = mass {
                s.dy -= lambda * m * s.y;
            }
        }
        Ok(Shot {
            terminal: s.y,
            max_abs,
        })
    }

    /// `y(1; λ)`.
    pub fn eval(&self, lambda: f64) -> Result<f64> {
        self.run(lambda, 0).map(|s| s.terminal)
    }

    /// Like [`eval`](Self::eval) but also tracks `max|y|` on a probe grid.
    pub fn shoot(&self, lambda: f64) -> Result<Shot> {
        self.run(lambda, PROBES)
    }

    /// Sign-change roots of the miss function in `[lo, hi]`, bisected to
    /// relative width `tol.root`. Roots of even multiplicity are missed.
    pub fn scan(&self, lo: f64, hi: f64, samples: usize, tol: &Tolerances) -> Result<Vec<f64>> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Domain(format!("invalid scan window [{lo}, {hi}]")));
        }
        if samples < 2 {
            return Err(Error::Domain("scan needs at least two samples".into()));
        }
        let grid: Vec<f64> = (0..samples)
            .map(|k| lo + (hi - lo) * k as f64 / (samples - 1) as f64)
            .collect();
        let values = grid
            .iter()
            .map(|&l| self.eval(l))
            .collect::<Result<Vec<_>>>()?;
        let mut roots = Vec::new();
        for k in 0..samples {
            if values[k] == 0.0 {
                roots.push(grid[k]);
            }
            if k + 1 < samples && values[k] * values[k + 1] < 0.0 {
                roots.push(self.bisect(grid[k], grid[k + 1], values[k], tol)?);
            }
        }
        Ok(dedup_sorted(roots, tol.dedup))
    }

    fn bisect(&self, mut a: f64, mut b: f64, fa: f64, tol: &Tolerances) -> Result<f64> {
        let sa = fa.signum();
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if b - a <= tol.root * m.abs().max(1.0) || m == a || m == b {
                break;
            }
            let fm = self.eval(m)?;
            if fm == 0.0 {
                return Ok(m);
            }
            if fm.signum() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }
}

/// `y(1; λ)` for the jump problem.
pub fn miss(q: &Potential, w: &DiracWeight, lambda: f64, tol: &Tolerances) -> Result<f64> {
    MissFunction::new(q, w, tol).eval(lambda)
}

/// Sign-change roots of [`miss`] in `[lo, hi]` from `samples` grid points.
pub fn scan_spectrum(
    q: &Potential,
    w: &DiracWeight,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    MissFunction::new(q, w, tol).scan(lo, hi, samples, tol)
}

/// Heuristic window `[-10, 10] · max(1, n² / (min gap · Σm))`, where the
/// gaps include the distances to the endpoints.
pub fn default_window(w: &DiracWeight) -> (f64, f64) {
    if w.is_empty() {
        return (-10.0, 10.0);
    }
    let t = w.extended_nodes();
    let gap = t
        .windows(2)
        .map(|p| p[1] - p[0])
        .fold(f64::INFINITY, f64::min);
    let total: f64 = w.masses().iter().sum();
    let n = w.len() as f64;
    let s = (n * n / (gap * total)).max(1.0);
    (-10.0 * s, 10.0 * s)
}
