//! Integrable potentials on `[0, 1]`.
//!
//! Four concrete representations are supported. Piecewise-constant pieces
//! admit closed-form propagators; sampled potentials are interpolated
//! linearly and integrated numerically.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PotentialRepr", into = "PotentialRepr")]
pub enum Potential {
    Zero,
    Constant(f64),
    PiecewiseConstant(PiecewiseConstant),
    Sampled(SampledPotential),
}

/// Step function; right-continuous at interior breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstant {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

/// Piecewise-linear interpolant of samples `(xs[i], qs[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPotential {
    xs: Vec<f64>,
    qs: Vec<f64>,
}

/// One piece of a potential on which it has a single analytic form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Segment {
    pub x0: f64,
    pub x1: f64,
    pub shape: SegmentShape,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum SegmentShape {
    Constant(f64),
    /// Linear from `q0` at `x0` to `q1` at `x1`.
    Linear {
        q0: f64,
        q1: f64,
    },
}

fn check_grid(field: &str, xs: &[f64]) -> Result<()> {
    if xs.len() < 2 {
        return Err(Error::validation(field, "needs at least two points"));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::validation(field, "values must be finite"));
    }
    if xs[0] != 0.0 || xs[xs.len() - 1] != 1.0 {
        return Err(Error::validation(field, "must start at 0 and end at 1"));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::validation(field, "must be strictly increasing"));
    }
    Ok(())
}

impl PiecewiseConstant {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_grid("potential.breakpoints", &breakpoints)?;
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::validation(
                "potential.values",
                format!(
                    "expected {} values for {} breakpoints, got {}",
                    breakpoints.len() - 1,
                    breakpoints.len(),
                    values.len()
                ),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation(
                "potential.values",
                "values must be finite",
            ));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl SampledPotential {
    pub fn new(xs: Vec<f64>, qs: Vec<f64>) -> Result<Self> {
        check_grid("potential.xs", &xs)?;
        if qs.len() != xs.len() {
            return Err(Error::validation(
                "potential.qs",
                format!("expected {} samples, got {}", xs.len(), qs.len()),
            ));
        }
        if qs.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("potential.qs", "values must be finite"));
        }
        Ok(Self { xs, qs })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn qs(&self) -> &[f64] {
        &self.qs
    }
}

/// Index `i` with `grid[i] <= x < grid[i + 1]`, clamped to the last interval.
pub(crate) fn interval_index(grid: &[f64], x: f64) -> usize {
    let last = grid.len() - 2;
    grid.partition_point(|&g| g <= x)
        .saturating_sub(1)
        .min(last)
}

impl Potential {
    pub fn constant(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::validation("potential.value", "value must be finite"));
        }
        Ok(Potential::Constant(c))
    }

    pub fn piecewise_constant(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        PiecewiseConstant::new(breakpoints, values).map(Potential::PiecewiseConstant)
    }

    pub fn sampled(xs: Vec<f64>, qs: Vec<f64>) -> Result<Self> {
        SampledPotential::new(xs, qs).map(Potential::Sampled)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x = {x} lies outside [0, 1]")));
        }
        Ok(match self {
            Potential::Zero => 0.0,
            Potential::Constant(c) => *c,
            Potential::PiecewiseConstant(pc) => pc.values[interval_index(&pc.breakpoints, x)],
            Potential::Sampled(s) => {
                let i = interval_index(&s.xs, x);
                let (x0, x1) = (s.xs[i], s.xs[i + 1]);
                let w = (x - x0) / (x1 - x0);
                s.qs[i] * (1.0 - w) + s.qs[i + 1] * w
            }
        })
    }

    /// `∫₀¹ |q|`: exact for step functions, trapezoid of `|q|` for samples.
    pub fn l1_norm(&self) -> f64 {
        match self {
            Potential::Zero => 0.0,
            Potential::Constant(c) => c.abs(),
            Potential::PiecewiseConstant(pc) => pc
                .breakpoints
                .windows(2)
                .zip(&pc.values)
                .map(|(w, v)| (w[1] - w[0]) * v.abs())
                .sum(),
            Potential::Sampled(s) => {
                s.xs.windows(2)
                    .zip(s.qs.windows(2))
                    .map(|(x, q)| 0.5 * (x[1] - x[0]) * (q[0].abs() + q[1].abs()))
                    .sum()
            }
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Potential::Zero | Potential::Constant(_) => vec![0.0, 1.0],
            Potential::PiecewiseConstant(pc) => pc.breakpoints.clone(),
            Potential::Sampled(s) => s.xs.clone(),
        }
    }

    pub(crate) fn segments(&self) -> Vec<Segment> {
        let constant = |x0, x1, c| Segment {
            x0,
            x1,
            shape: SegmentShape::Constant(c),
        };
        match self {
            Potential::Zero => vec![constant(0.0, 1.0, 0.0)],
            Potential::Constant(c) => vec![constant(0.0, 1.0, *c)],
            Potential::PiecewiseConstant(pc) => pc
                .breakpoints
                .windows(2)
                .zip(&pc.values)
                .map(|(w, &v)| constant(w[0], w[1], v))
                .collect(),
            Potential::Sampled(s) => {
                s.xs.windows(2)
                    .zip(s.qs.windows(2))
                    .map(|(x, q)| {
                        if q[0] == q[1] {
                            constant(x[0], x[1], q[0])
                        } else {
                            Segment {
                                x0: x[0],
                                x1: x[1],
                                shape: SegmentShape::Linear { q0: q[0], q1: q[1] },
                            }
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Wire form of [`Potential`] inside problem files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum PotentialRepr {
    Zero {},
    Constant {
        value: f64,
    },
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    Sampled {
        xs: Vec<f64>,
        qs: Vec<f64>,
    },
}

impl TryFrom<PotentialRepr> for Potential {
    type Error = Error;

    fn try_from(repr: PotentialRepr) -> Result<Self> {
        match repr {
            PotentialRepr::Zero {} => Ok(Potential::Zero),
            PotentialRepr::Constant { value } => Potential::constant(value),
            PotentialRepr::PiecewiseConstant {
                breakpoints,
                values,
            } => Potential::piecewise_constant(breakpoints, values),
            PotentialRepr::Sampled { xs, qs } => Potential::sampled(xs, qs),
        }
    }
}

impl From<Potential> for PotentialRepr {
    fn from(p: Potential) -> Self {
        match p {
            Potential::Zero => PotentialRepr::Zero {},
            Potential::Constant(value) => PotentialRepr::Constant { value },
            Potential::PiecewiseConstant(pc) => PotentialRepr::PiecewiseConstant {
                breakpoints: pc.breakpoints,
                values: pc.values,
            },
            Potential::Sampled(s) => PotentialRepr::Sampled { xs: s.xs, qs: s.qs },
        }
    }
}
