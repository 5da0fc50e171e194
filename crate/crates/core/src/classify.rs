//! Hypothesis checks, spectrum classification and eigenfunction assembly.

use serde::Serialize;

use crate::assembly::{
    characteristic_polynomial, structural_support, tridiagonal_system, CharacteristicPolynomial,
    DiracWeight, NodeValues,
};
use crate::fundamental::{BasisCase, FundamentalBasis, State};
use crate::polynomial::dedup_sorted;
use crate::shooting::{default_window, MissFunction};
use crate::tridiag;
use crate::{Error, Result, Tolerances};

/// Outcome of the three hypothesis tests, with the numbers they were
/// decided on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisReport {
    /// The basis is in Case I (`φ(1)` non-negligible).
    pub h0: bool,
    /// `|φ(1)| / max(1, sup|φ|)`.
    pub h0_margin: f64,
    /// Every consecutive discriminant `D_{t_{k+1}, t_k}` is non-negligible.
    pub h: bool,
    /// Smallest scaled `|D_{t_{k+1}, t_k}|`.
    pub h_margin: f64,
    /// Not `h0`, and `D_{1,t_i}` and `D_{t_i,0}` vanish for every node
    /// (for an empty weight: `D_{1,0}` vanishes).
    pub h1: bool,
    /// Largest scaled `|D_{1,t_i}|` or `|D_{t_i,0}|` (or `|D_{1,0}|`).
    pub h1_margin: f64,
    /// `D_{t_{k+1}, t_k}` for `k = 0..=n`.
    pub consecutive: Vec<f64>,
    /// `D_{1, t_i}` for `i = 0..=n`.
    pub to_right: Vec<f64>,
    /// `D_{t_i, 0}` for `i = 1..=n+1`.
    pub from_left: Vec<f64>,
}

impl HypothesisReport {
    /// Smallest distance of any deciding statistic from its threshold,
    /// as a ratio (values near 1 mean the decision is fragile).
    pub fn fragility(&self, tol: &Tolerances) -> f64 {
        let ratio = |m: f64| {
            if m == 0.0 {
                f64::INFINITY
            } else {
                (m / tol.zero_det).max(tol.zero_det / m)
            }
        };
        ratio(self.h0_margin)
            .min(ratio(self.h_margin))
            .min(if self.h1 {
                ratio(self.h1_margin)
            } else {
                f64::INFINITY
            })
    }
}

pub(crate) fn report_from_nodes(
    basis: &FundamentalBasis,
    nv: &NodeValues,
    tol: &Tolerances,
) -> HypothesisReport {
    let last = nv.t.len() - 1;
    let n = last - 1;
    let consecutive: Vec<_> = (0..last).map(|k| nv.disc(k, k + 1)).collect();
    let to_right: Vec<_> = (0..last).map(|i| nv.disc(i, last)).collect();
    let from_left: Vec<_> = (1..=last).map(|i| nv.disc(0, i)).collect();

    let h0 = basis.case() == BasisCase::CaseI;
    let h = consecutive.iter().all(|d| !d.is_zero(tol));
    let h_margin = consecutive
        .iter()
        .map(|d| d.margin())
        .fold(f64::INFINITY, f64::min);

    let boundary: Vec<_> = if n == 0 {
        vec![to_right[0]]
    } else {
        to_right[1..]
            .iter()
            .chain(&from_left[..n])
            .copied()
            .collect()
    };
    let h1 = !h0 && boundary.iter().all(|d| d.is_zero(tol));
    let h1_margin = boundary.iter().map(|d| d.margin()).fold(0.0, f64::max);

    HypothesisReport {
        h0,
        h0_margin: basis.h0_margin(),
        h,
        h_margin,
        h1,
        h1_margin,
        consecutive: consecutive.iter().map(|d| d.value).collect(),
        to_right: to_right.iter().map(|d| d.value).collect(),
        from_left: from_left.iter().map(|d| d.value).collect(),
    }
}

pub fn check_hypotheses(
    basis: &FundamentalBasis,
    w: &DiracWeight,
    tol: &Tolerances,
) -> Result<HypothesisReport> {
    let nv = NodeValues::new(basis, w)?;
    Ok(report_from_nodes(basis, &nv, tol))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Spectrum {
    /// Sorted, distinct real eigenvalues; possibly empty.
    Finite(Vec<f64>),
    /// Every complex number is an eigenvalue.
    AllComplex,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> Option<&[f64]> {
        match self {
            Spectrum::Finite(v) => Some(v),
            Spectrum::AllComplex => None,
        }
    }

    pub fn is_all_complex(&self) -> bool {
        matches!(self, Spectrum::AllComplex)
    }
}

/// Which computation produces the reported eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Tridiagonal when (H) holds, polynomial otherwise.
    Auto,
    #[serde(rename = "charpoly")]
    CharPoly,
    Tridiag,
    /// Sign-change scan of the shooting miss function.
    Oracle,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub report: HypothesisReport,
    pub spectrum: Spectrum,
    /// The method actually used; never `Auto`.
    pub method: Method,
    pub polynomial: CharacteristicPolynomial,
}

fn matches_within(a: &[f64], b: &[f64], rel: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= rel * (1.0 + x.abs().max(y.abs())))
}

const CROSS_CHECK_REL: f64 = 1e-6;

/// Classifies the spectrum, using the tridiagonal route when (H) holds.
pub fn classify_spectrum(
    basis: &FundamentalBasis,
    w: &DiracWeight,
    tol: &Tolerances,
) -> Result<(HypothesisReport, Spectrum)> {
    let c = solve_spectrum(basis, w, tol, Method::Auto)?;
    Ok((c.report, c.spectrum))
}

/// Classifies the spectrum with an explicit eigenvalue method.
///
/// Whatever the method, the hypothesis outcome and the structure of the
/// characteristic polynomial must agree; otherwise the thresholds are
/// inadequate for this instance and an inconsistency error is returned.
pub fn solve_spectrum(
    basis: &FundamentalBasis,
    w: &DiracWeight,
    tol: &Tolerances,
    method: Method,
) -> Result<Classification> {
    let n = w.len();
    let nv = NodeValues::new(basis, w)?;
    let report = report_from_nodes(basis, &nv, tol);
    let polynomial = characteristic_polynomial(basis, w, tol)?;
    debug_assert_eq!(polynomial.support, structural_support(&nv, tol));
    let used = match method {
        Method::Auto if report.h && n > 0 => Method::Tridiag,
        Method::Auto => Method::CharPoly,
        m => m,
    };

    if report.h1 {
        if !polynomial.reduced.is_zero() {
            return Err(Error::Inconsistency(format!(
                "(H1) holds (margin {:e}) but the characteristic polynomial has surviving \
                 coefficients {:?}",
                report.h1_margin,
                polynomial.reduced.coeffs()
            )));
        }
        return Ok(Classification {
            report,
            spectrum: Spectrum::AllComplex,
            method: used,
            polynomial,
        });
    }
    if polynomial.reduced.is_zero() {
        return Err(Error::Inconsistency(format!(
            "characteristic polynomial vanishes but (H1) fails (h0 margin {:e}, h1 margin {:e})",
            report.h0_margin, report.h1_margin
        )));
    }

    let roots = polynomial.reduced.real_roots(tol)?;
    let exact_zero_root = polynomial.reduced.coeff(0) == 0.0;

    let eigenvalues = if report.h && n > 0 {
        if roots.len() != n {
            return Err(Error::Inconsistency(format!(
                "(H) holds but the polynomial has {} real roots, expected {n}",
                roots.len()
            )));
        }
        let sys = tridiagonal_system(basis, w, tol)?;
        let scale = {
            let (lo, hi) = sys.sym.gershgorin();
            lo.abs().max(hi.abs()).max(1.0)
        };
        let mut ev = dedup_sorted(tridiag::eigenvalues(&sys.sym, tol), tol.dedup);
        if exact_zero_root {
            for x in ev.iter_mut() {
                if x.abs() <= 1e-9 * scale {
                    *x = 0.0;
                }
            }
        }
        if !matches_within(&ev, &roots, CROSS_CHECK_REL) {
            return Err(Error::Inconsistency(format!(
                "tridiagonal eigenvalues {ev:?} disagree with polynomial roots {roots:?}"
            )));
        }
        match used {
            Method::Tridiag => ev,
            _ => roots,
        }
    } else {
        if n > 0 && roots.len() >= n {
            return Err(Error::Inconsistency(format!(
                "(H) fails but the polynomial has {} real roots for {n} nodes",
                roots.len()
            )));
        }
        if used == Method::Tridiag {
            let sys = tridiagonal_system(basis, w, tol);
            return Err(sys.err().unwrap_or_else(|| {
                Error::Domain("the characteristic matrix needs at least one node".into())
            }));
        }
        roots
    };

    let eigenvalues = if used == Method::Oracle {
        let shooter = MissFunction::from_basis(basis, w);
        let (lo, hi) = default_window(w);
        let lo = eigenvalues
            .iter()
            .fold(lo, |m, &x| m.min(x - 1.0 - 0.1 * x.abs()));
        let hi = eigenvalues
            .iter()
            .fold(hi, |m, &x| m.max(x + 1.0 + 0.1 * x.abs()));
        shooter.scan(lo, hi, ORACLE_SAMPLES.max(40 * n), tol)?
    } else {
        eigenvalues
    };

    Ok(Classification {
        report,
        spectrum: Spectrum::Finite(eigenvalues),
        method: used,
        polynomial,
    })
}

const ORACLE_SAMPLES: usize = 400;

/// An eigenfunction `E(x, λ) = α_i φ(x) + β_i ψ(x)` on `[t_i, t_{i+1}]`.
#[derive(Debug, Clone)]
pub struct Eigenfunction<'a> {
    pub lambda: f64,
    /// `(α_i, β_i)` evaluated at `λ`, `i = 0..=n`.
    pub pieces: Vec<(f64, f64)>,
    nodes: Vec<f64>,
    masses: Vec<f64>,
    basis: &'a FundamentalBasis,
}

impl Eigenfunction<'_> {
    fn piece_index(&self, x: f64) -> usize {
        // interior nodes t_1..t_n split [0,1] into n+1 pieces
        self.nodes[1..self.nodes.len() - 1].partition_point(|&t| t <= x)
    }

    fn state_on(&self, i: usize, x: f64) -> Result<State> {
        let (a, b) = self.pieces[i];
        let p = self.basis.phi(x)?;
        let s = self.basis.psi(x)?;
        Ok(State::new(x, a * p.y + b * s.y, a * p.dy + b * s.dy))
    }

    /// `(E, E')` at `x`; at a node the right-hand piece is used.
    pub fn state(&self, x: f64) -> Result<State> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x = {x} lies outside [0, 1]")));
        }
        self.state_on(self.piece_index(x), x)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.state(x).map(|s| s.y)
    }

    /// Largest `|E(t_j⁻) - E(t_j⁺)|` over the nodes.
    pub fn continuity_defect(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in 1..self.nodes.len() - 1 {
            let t = self.nodes[j];
            let left = self.state_on(j - 1, t)?;
            let right = self.state_on(j, t)?;
            worst = worst.max((left.y - right.y).abs());
        }
        Ok(worst)
    }

    /// Largest `|E'(t_j⁻) - E'(t_j⁺) - λ m_j E(t_j)|` over the nodes.
    pub fn jump_defect(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in 1..self.nodes.len() - 1 {
            let t = self.nodes[j];
            let left = self.state_on(j - 1, t)?;
            let right = self.state_on(j, t)?;
            let defect = left.dy - right.dy - self.lambda * self.masses[j - 1] * left.y;
            worst = worst.max(defect.abs());
        }
        Ok(worst)
    }

    /// `(|E(0)|, |E(1)|)`.
    pub fn boundary_values(&self) -> Result<(f64, f64)> {
        Ok((self.eval(0.0)?.abs(), self.eval(1.0)?.abs()))
    }

    /// `n` equally spaced samples `(x, E(x))` including both ends.
    pub fn sample(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        if n < 2 {
            return Err(Error::Domain("need at least two samples".into()));
        }
        (0..n)
            .map(|k| {
                let x = k as f64 / (n - 1) as f64;
                self.eval(x).map(|y| (x, y))
            })
            .collect()
    }
}

const EIGEN_RESIDUAL_REL: f64 = 1e-8;

/// Assembles the eigenfunction for `lambda` with leading piece `φ`.
pub fn eigenfunction<'a>(
    basis: &'a FundamentalBasis,
    w: &DiracWeight,
    lambda: f64,
    tol: &Tolerances,
) -> Result<Eigenfunction<'a>> {
    let nv = NodeValues::new(basis, w)?;
    let p = characteristic_polynomial(basis, w, tol)?;
    let residual = p.reduced.eval(lambda).abs();
    if residual > EIGEN_RESIDUAL_REL * p.reduced.eval_abs(lambda) {
        return Err(Error::NotAnEigenvalue { lambda, residual });
    }
    let omega = basis.omega();
    let mut pieces = vec![(1.0, 0.0)];
    for (i, &m) in w.masses().iter().enumerate() {
        let (a, b) = pieces[i];
        let (phi, psi) = (nv.phi[i + 1], nv.psi[i + 1]);
        let s = lambda * m / omega;
        pieces.push((
            a + s * (phi * psi * a + psi * psi * b),
            b - s * (phi * phi * a + phi * psi * b),
        ));
    }
    Ok(Eigenfunction {
        lambda,
        pieces,
        nodes: nv.t,
        masses: w.masses().to_vec(),
        basis,
    })
}
