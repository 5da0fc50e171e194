//! Sturm-sequence bisection for symmetric tridiagonal matrices.

use crate::{Error, Result, Tolerances};

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Domain("empty tridiagonal matrix".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "off-diagonal has length {}, expected {}",
                offdiag.len(),
                diag.len() - 1
            )));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::Domain("tridiagonal entries must be finite".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Union of the Gershgorin discs as one interval `[lo, hi]`.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// `det(T - mu I)` and its derivative in `mu` by the three-term recurrence.
    pub fn char_poly_at(&self, mu: f64) -> (f64, f64) {
        let (mut p_prev, mut p) = (1.0, self.diag[0] - mu);
        let (mut d_prev, mut d) = (0.0, -1.0);
        for i in 1..self.len() {
            let e2 = self.offdiag[i - 1] * self.offdiag[i - 1];
            let a = self.diag[i] - mu;
            let p_next = a * p - e2 * p_prev;
            let d_next = a * d - p - e2 * d_prev;
            (p_prev, p) = (p, p_next);
            (d_prev, d) = (d, d_next);
        }
        (p, d)
    }
}

/// Number of eigenvalues of `t` strictly less than `mu`.
///
/// Counts negative pivots of the LDLᵀ factorization of `T - mu I`. Pivots
/// smaller than `2⁻⁵² · scale` are replaced by that value with their sign
/// (zero counts as positive).
pub fn sturm_count(t: &SymTridiag, mu: f64) -> usize {
    let guard = f64::EPSILON * t.scale();
    let safe = |q: f64| {
        if q.abs() < guard {
            if q < 0.0 {
                -guard
            } else {
                guard
            }
        } else {
            q
        }
    };
    let mut count = 0;
    let mut q = safe(t.diag[0] - mu);
    if q < 0.0 {
        count += 1;
    }
    for i in 1..t.len() {
        let e = t.offdiag[i - 1];
        q = safe(t.diag[i] - mu - e * e / q);
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues in ascending order, with multiplicity.
pub fn eigenvalues(t: &SymTridiag, tol: &Tolerances) -> Vec<f64> {
    let n = t.len();
    let (glo, ghi) = t.gershgorin();
    let scale = t.scale();
    let width = tol.root * scale;
    let (lo, hi) = (
        glo - width - f64::EPSILON * scale,
        ghi + width + f64::EPSILON * scale,
    );

    (0..n)
        .map(|k| {
            // smallest mu with count(mu) > k brackets eigenvalue k
            let (mut a, mut b) = (lo, hi);
            while b - a > width {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if sturm_count(t, m) > k {
                    b = m;
                } else {
                    a = m;
                }
            }
            let m = 0.5 * (a + b);
            let (p, dp) = t.char_poly_at(m);
            if dp != 0.0 && p.is_finite() && dp.is_finite() {
                let polished = m - p / dp;
                if polished >= a && polished <= b {
                    return polished;
                }
            }
            m
        })
        .collect()
}
