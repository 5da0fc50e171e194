use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every stage of the solver.
///
/// All fields are optional in problem files; missing ones take the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative cutoff below which a discriminant (or `phi(1)`) counts as zero.
    pub zero_det: f64,
    /// Relative bracket width for bisection-based root finding.
    pub root: f64,
    /// Relative spacing below which two roots are merged.
    pub dedup: f64,
    /// Relative tolerance of the adaptive integrator.
    pub ode_rel: f64,
    /// Absolute tolerance of the adaptive integrator.
    pub ode_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero_det: 1e-9,
            root: 1e-12,
            dedup: 1e-7,
            ode_rel: 1e-10,
            ode_abs: 1e-12,
        }
    }
}

impl Tolerances {
    /// Scale-aware zero test: `|value| <= zero_det * (scale + 1)`.
    pub fn negligible(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.zero_det * (scale + 1.0)
    }

    pub(crate) fn validate(&self) -> crate::Result<()> {
        for (name, v) in [
            ("tolerances.zero_det", self.zero_det),
            ("tolerances.root", self.root),
            ("tolerances.dedup", self.dedup),
            ("tolerances.ode_rel", self.ode_rel),
            ("tolerances.ode_abs", self.ode_abs),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(crate::Error::validation(
                    name,
                    "must be a positive finite number",
                ));
            }
        }
        Ok(())
    }
}
