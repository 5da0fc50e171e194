//! Dense real polynomials in the spectral parameter.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Complex, DMatrix};

use crate::{Error, Result, Tolerances};

type Complex64 = Complex<f64>;

/// Coefficients in ascending degree. Trailing zeros are kept unless the
/// polynomial is explicitly trimmed, so `len() - 1` is the *formal* degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `a + b λ`.
    pub fn linear(a: f64, b: f64) -> Self {
        Self { coeffs: vec![a, b] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Degree after dropping exact trailing zeros; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn trimmed(&self) -> Self {
        let n = self.degree().map_or(0, |d| d + 1);
        Self {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |c_k| |x|^k`, the natural scale of `|p(x)|` under rounding.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        }
    }

    /// Complex roots as eigenvalues of the companion matrix.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let p = self.trimmed();
        let Some(deg) = p.degree() else {
            return vec![];
        };
        if deg == 0 {
            return vec![];
        }
        let lead = p.coeffs[deg];
        let mut companion = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            companion[(i, deg - 1)] = -p.coeffs[i] / lead;
        }
        companion.complex_eigenvalues().iter().copied().collect()
    }

    /// Sorted distinct real roots.
    ///
    /// Roots are isolated on intervals where the polynomial is monotone
    /// (between consecutive real critical points, found recursively),
    /// bisected to `tol.root` relative width and polished by one Newton
    /// step. Candidates are accepted only if
    /// `|p(λ)| <= 1e-9 · Σ|c_k||λ|^k`.
    pub fn real_roots(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        let p = self.trimmed();
        if p.is_zero() {
            return Err(Error::Domain(
                "the zero polynomial has every number as a root".into(),
            ));
        }
        let mut roots = Vec::new();
        // factor out λ^k exactly
        let lowest = p.coeffs.iter().position(|&c| c != 0.0).unwrap();
        if lowest > 0 {
            roots.push(0.0);
        }
        let deflated = RealPolynomial::new(p.coeffs[lowest..].to_vec());
        roots.extend(monotone_roots(&deflated, tol));
        Ok(dedup_sorted(roots, tol.dedup))
    }
}

const RESIDUAL_REL: f64 = 1e-9;

fn cauchy_bound(p: &RealPolynomial) -> f64 {
    let d = p.degree().unwrap();
    let lead = p.coeffs[d].abs();
    1.0 + p.coeffs[..d]
        .iter()
        .map(|c| c.abs() / lead)
        .fold(0.0, f64::max)
}

fn monotone_roots(p: &RealPolynomial, tol: &Tolerances) -> Vec<f64> {
    let Some(deg) = p.degree() else {
        return vec![];
    };
    if deg == 0 {
        return vec![];
    }
    if deg == 1 {
        return vec![-p.coeffs[0] / p.coeffs[1]];
    }
    let bound = cauchy_bound(p);
    let mut knots = vec![-bound];
    knots.extend(
        monotone_roots(&p.derivative(), tol)
            .into_iter()
            .filter(|c| c.abs() < bound),
    );
    knots.push(bound);
    knots.sort_by(f64::total_cmp);

    let mut out = Vec::new();
    for &c in &knots[1..knots.len() - 1] {
        // even-multiplicity roots sit at critical points
        if p.eval(c).abs() <= RESIDUAL_REL * p.eval_abs(c) {
            out.push(c);
        }
    }
    let dp = p.derivative();
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (p.eval(a), p.eval(b));
        if fa == 0.0 || fb == 0.0 || fa.signum() == fb.signum() {
            continue;
        }
        let r = bisect_monotone(p, &dp, a, b, fa, tol);
        if p.eval(r).abs() <= RESIDUAL_REL * p.eval_abs(r) {
            out.push(r);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

fn bisect_monotone(
    p: &RealPolynomial,
    dp: &RealPolynomial,
    mut a: f64,
    mut b: f64,
    fa: f64,
    tol: &Tolerances,
) -> f64 {
    let sa = fa.signum();
    for _ in 0..2000 {
        let m = 0.5 * (a + b);
        if (b - a) <= tol.root * m.abs().max(1.0) || m == a || m == b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    let m = 0.5 * (a + b);
    let d = dp.eval(m);
    if d != 0.0 {
        let polished = m - p.eval(m) / d;
        if polished >= a && polished <= b && p.eval(polished).abs() <= p.eval(m).abs() {
            return polished;
        }
    }
    m
}

/// Sorts and merges values closer than `rel · (1 + |x|)`.
pub fn dedup_sorted(mut xs: Vec<f64>, rel: f64) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(xs.len());
    for x in xs {
        match out.last() {
            Some(&prev) if (x - prev).abs() <= rel * (1.0 + prev.abs().max(x.abs())) => {}
            _ => out.push(x),
        }
    }
    out
}

impl Add for &RealPolynomial {
    type Output = RealPolynomial;
    fn add(self, rhs: Self) -> RealPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;
    fn sub(self, rhs: Self) -> RealPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RealPolynomial {
    type Output = RealPolynomial;
    fn mul(self, rhs: Self) -> RealPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return RealPolynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }
}

impl Neg for &RealPolynomial {
    type Output = RealPolynomial;
    fn neg(self) -> RealPolynomial {
        self.scale(-1.0)
    }
}
