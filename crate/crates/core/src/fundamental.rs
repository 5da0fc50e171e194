//! Fundamental solutions of `-y'' + q y = 0` on `[0, 1]`.
//!
//! Constant pieces use exact trigonometric/hyperbolic propagators. Linear
//! pieces (sampled potentials) use an embedded Dormand-Prince 5(4) stepper.

use serde::Serialize;

use crate::potential::{interval_index, Potential, Segment, SegmentShape};
use crate::{Error, Result, Tolerances};

/// A point on a solution curve: position, value and derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub x: f64,
    pub y: f64,
    pub dy: f64,
}

impl State {
    pub fn new(x: f64, y: f64, dy: f64) -> Self {
        Self { x, y, dy }
    }
}

/// Which normalization the basis follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisCase {
    /// `phi(1) != 0`: `psi(1) = 0`, `psi'(1) = -1`, `omega = -phi(1)`.
    CaseI,
    /// `phi(1) = 0`: `psi(1) = 1`, `psi'(1) = 0`, `omega = -phi'(1)`.
    CaseII,
}

/// Exact propagation of `y'' = c y` over a step `h` (either sign).
fn constant_step(c: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
    if c == 0.0 {
        (y + dy * h, dy)
    } else if c < 0.0 {
        let k = (-c).sqrt();
        let (s, co) = (k * h).sin_cos();
        (y * co + dy * s / k, -y * k * s + dy * co)
    } else {
        let k = c.sqrt();
        let (s, co) = ((k * h).sinh(), (k * h).cosh());
        (y * co + dy * s / k, y * k * s + dy * co)
    }
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MAX_STEPS: usize = 1_000_000;

/// Integrates `y'' = q(x) y` from `x0` to `x1` with an adaptive DP5(4) method.
fn adaptive_step<Q: Fn(f64) -> f64>(
    q: Q,
    x0: f64,
    x1: f64,
    y0: [f64; 2],
    tol: &Tolerances,
) -> Result<[f64; 2]> {
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let rhs = |x: f64, u: [f64; 2]| [u[1], q(x) * u[0]];

    let mut x = x0;
    let mut u = y0;
    let mut h = dir * span.abs().min(0.05);
    let mut k = [[0.0; 2]; 7];
    k[0] = rhs(x, u);
    for _ in 0..MAX_STEPS {
        if (x1 - x) * dir <= 0.0 {
            return Ok(u);
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        for s in 1..7 {
            let mut stage = u;
            for (j, kj) in k.iter().enumerate().take(s) {
                stage[0] += h * A[s][j] * kj[0];
                stage[1] += h * A[s][j] * kj[1];
            }
            k[s] = rhs(x + C[s] * h, stage);
        }
        let mut next = u;
        let mut err = 0.0_f64;
        for c in 0..2 {
            let mut hi = 0.0;
            let mut lo = 0.0;
            for s in 0..7 {
                hi += B5[s] * k[s][c];
                lo += B4[s] * k[s][c];
            }
            next[c] = u[c] + h * hi;
            let scale = tol.ode_abs + tol.ode_rel * u[c].abs().max(next[c].abs());
            err = err.max((h * (hi - lo)).abs() / scale);
        }
        if !err.is_finite() || !next.iter().all(|v| v.is_finite()) {
            return Err(Error::NumericalFailure(format!(
                "non-finite state while integrating near x = {x}"
            )));
        }
        if err <= 1.0 {
            x = if (x + h - x1) * dir >= 0.0 { x1 } else { x + h };
            u = next;
            // first-same-as-last
            k[0] = k[6];
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h.abs() < 1e-14 * (1.0 + x.abs()) {
            return Err(Error::NumericalFailure(format!(
                "step size underflow near x = {x}"
            )));
        }
    }
    Err(Error::NumericalFailure("step budget exhausted".into()))
}

/// Reusable propagator for one potential.
#[derive(Debug, Clone)]
pub struct Propagator {
    segments: Vec<Segment>,
    grid: Vec<f64>,
    tol: Tolerances,
}

impl Propagator {
    pub fn new(q: &Potential, tol: &Tolerances) -> Self {
        Self {
            segments: q.segments(),
            grid: q.breakpoints(),
            tol: *tol,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.grid
    }

    fn step_within(&self, seg: &Segment, x0: f64, x1: f64, y: f64, dy: f64) -> Result<(f64, f64)> {
        match seg.shape {
            SegmentShape::Constant(c) => Ok(constant_step(c, y, dy, x1 - x0)),
            SegmentShape::Linear { q0, q1 } => {
                let (a, b) = (seg.x0, seg.x1);
                let slope = (q1 - q0) / (b - a);
                let u = adaptive_step(|x| q0 + slope * (x - a), x0, x1, [y, dy], &self.tol)?;
                Ok((u[0], u[1]))
            }
        }
    }

    /// Solution through `s0` evaluated at `x_target`, forward or backward.
    pub fn advance(&self, s0: State, x_target: f64) -> Result<State> {
        for (name, x) in [("start", s0.x), ("target", x_target)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::Domain(format!("{name} x = {x} lies outside [0, 1]")));
            }
        }
        let (mut x, mut y, mut dy) = (s0.x, s0.y, s0.dy);
        if x_target > x {
            let mut i = interval_index(&self.grid, x);
            while x < x_target {
                let seg = &self.segments[i];
                let to = seg.x1.min(x_target);
                (y, dy) = self.step_within(seg, x, to, y, dy)?;
                x = to;
                i += 1;
            }
        } else if x_target < x {
            // index of the segment whose left end is strictly below x
            let mut i = self.grid.partition_point(|&g| g < x).saturating_sub(1);
            while x > x_target {
                let seg = &self.segments[i];
                let to = seg.x0.max(x_target);
                (y, dy) = self.step_within(seg, x, to, y, dy)?;
                x = to;
                i = i.saturating_sub(1);
            }
        }
        if !(y.is_finite() && dy.is_finite()) {
            return Err(Error::NumericalFailure(format!(
                "non-finite state at x = {x_target}"
            )));
        }
        Ok(State::new(x_target, y, dy))
    }
}

/// Solution of `-y'' + q y = 0` through `s0`, evaluated at `x_target`.
pub fn propagate_state(q: &Potential, s0: State, x_target: f64, tol: &Tolerances) -> Result<State> {
    Propagator::new(q, tol).advance(s0, x_target)
}

/// The pair `(phi, psi)` with `phi(0) = 0`, `phi'(0) = 1`, and their
/// Wronskian `omega = phi psi' - phi' psi`.
///
/// States of both solutions are memoized at every breakpoint of the
/// potential; evaluation propagates from the nearest checkpoint.
#[derive(Debug, Clone)]
pub struct FundamentalBasis {
    propagator: Propagator,
    phi_checkpoints: Vec<State>,
    psi_checkpoints: Vec<State>,
    omega: f64,
    case: BasisCase,
    phi_sup: f64,
    psi_sup: f64,
    h0_margin: f64,
}

impl FundamentalBasis {
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn case(&self) -> BasisCase {
        self.case
    }

    pub fn propagator(&self) -> &Propagator {
        &self.propagator
    }

    /// Observed `sup |phi|` over the breakpoints and a uniform probe grid.
    pub fn phi_sup(&self) -> f64 {
        self.phi_sup
    }

    pub fn psi_sup(&self) -> f64 {
        self.psi_sup
    }

    /// `|phi(1)| / max(1, sup |phi|)`: the statistic compared against
    /// `zero_det` when deciding between the two cases.
    pub fn h0_margin(&self) -> f64 {
        self.h0_margin
    }

    fn eval_from(&self, checkpoints: &[State], x: f64, from_right: bool) -> Result<State> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x = {x} lies outside [0, 1]")));
        }
        let grid = self.propagator.breakpoints();
        let i = interval_index(grid, x);
        let start = if from_right {
            checkpoints[i + 1]
        } else {
            checkpoints[i]
        };
        self.propagator.advance(start, x)
    }

    /// `phi(x)` as a state `(x, phi, phi')`.
    pub fn phi(&self, x: f64) -> Result<State> {
        self.eval_from(&self.phi_checkpoints, x, false)
    }

    /// `psi(x)` as a state `(x, psi, psi')`.
    pub fn psi(&self, x: f64) -> Result<State> {
        self.eval_from(&self.psi_checkpoints, x, true)
    }

    /// `W[phi, psi](x)` evaluated pointwise.
    pub fn wronskian_at(&self, x: f64) -> Result<f64> {
        let p = self.phi(x)?;
        let s = self.psi(x)?;
        Ok(p.y * s.dy - p.dy * s.y)
    }
}

const SUP_PROBES: usize = 256;

fn checkpoints(prop: &Propagator, start: State, backward: bool) -> Result<Vec<State>> {
    let grid = prop.breakpoints().to_vec();
    let mut out = vec![start; grid.len()];
    if backward {
        let mut s = start;
        for (i, &g) in grid.iter().enumerate().rev() {
            s = prop.advance(s, g)?;
            out[i] = s;
        }
    } else {
        let mut s = start;
        for (i, &g) in grid.iter().enumerate() {
            s = prop.advance(s, g)?;
            out[i] = s;
        }
    }
    Ok(out)
}

fn sup_abs(prop: &Propagator, cps: &[State], from_right: bool) -> Result<f64> {
    let grid = prop.breakpoints();
    let mut sup = cps.iter().fold(0.0_f64, |m, s| m.max(s.y.abs()));
    for k in 0..=SUP_PROBES {
        let x = k as f64 / SUP_PROBES as f64;
        let i = interval_index(grid, x);
        let start = if from_right { cps[i + 1] } else { cps[i] };
        sup = sup.max(prop.advance(start, x)?.y.abs());
    }
    Ok(sup)
}

/// Builds the Case-I basis when `phi(1)` is non-negligible, Case-II otherwise.
pub fn build_basis(q: &Potential, tol: &Tolerances) -> Result<FundamentalBasis> {
    let propagator = Propagator::new(q, tol);
    let phi_checkpoints = checkpoints(&propagator, State::new(0.0, 0.0, 1.0), false)?;
    let phi_sup = sup_abs(&propagator, &phi_checkpoints, false)?;
    let phi1 = *phi_checkpoints.last().expect("grid has two points");

    let h0_margin = phi1.y.abs() / phi_sup.max(1.0);
    let case = if h0_margin <= tol.zero_det {
        BasisCase::CaseII
    } else {
        BasisCase::CaseI
    };
    let psi_end = match case {
        BasisCase::CaseI => State::new(1.0, 0.0, -1.0),
        BasisCase::CaseII => State::new(1.0, 1.0, 0.0),
    };
    let psi_checkpoints = checkpoints(&propagator, psi_end, true)?;
    let psi_sup = sup_abs(&propagator, &psi_checkpoints, true)?;
    let omega = phi1.y * psi_end.dy - phi1.dy * psi_end.y;
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "degenerate Wronskian {omega} for the fundamental pair"
        )));
    }
    Ok(FundamentalBasis {
        propagator,
        phi_checkpoints,
        psi_checkpoints,
        omega,
        case,
        phi_sup,
        psi_sup,
        h0_margin,
    })
}
