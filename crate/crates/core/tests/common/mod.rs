//! Independent oracles and instance generators for the integration tests.
//!
//! Nothing here calls into the library's propagation or assembly code.

#![allow(dead_code)]

use dirac_sturm::{DiracWeight, Potential};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Exact solution step of `y'' = c y` over `h`.
fn step(c: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
    if c == 0.0 {
        return (y + h * dy, dy);
    }
    let k = c.abs().sqrt();
    if c < 0.0 {
        let (s, co) = (k * h).sin_cos();
        (y * co + dy * s / k, -y * k * s + dy * co)
    } else {
        let (s, co) = ((k * h).sinh(), (k * h).cosh());
        (y * co + dy * s / k, y * k * s + dy * co)
    }
}

/// A step potential and point masses, kept as plain numbers.
#[derive(Debug, Clone)]
pub struct Instance {
    pub breaks: Vec<f64>,
    pub values: Vec<f64>,
    pub nodes: Vec<f64>,
    pub masses: Vec<f64>,
}

impl Instance {
    pub fn potential(&self) -> Potential {
        Potential::piecewise_constant(self.breaks.clone(), self.values.clone()).unwrap()
    }

    pub fn weight(&self) -> DiracWeight {
        DiracWeight::new(self.nodes.clone(), self.masses.clone()).unwrap()
    }

    fn q_at(&self, x: f64) -> f64 {
        let i = self.breaks[1..self.breaks.len() - 1].partition_point(|&b| b <= x);
        self.values[i]
    }

    /// `y(1; λ)` of the jump problem, by exact stepping between events.
    pub fn miss(&self, lambda: f64) -> f64 {
        let mut events: Vec<(f64, Option<f64>)> = self.breaks[1..]
            .iter()
            .map(|&b| (b, None))
            .chain(
                self.nodes
                    .iter()
                    .zip(&self.masses)
                    .map(|(&t, &m)| (t, Some(m))),
            )
            .collect();
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (mut x, mut y, mut dy) = (0.0, 0.0, 1.0);
        for (e, mass) in events {
            if e > x {
                let c = self.q_at(0.5 * (x + e));
                (y, dy) = step(c, y, dy, e - x);
                x = e;
            }
            if let Some(m) = mass {
                dy -= lambda * m * y;
            }
        }
        y
    }
}

/// Random step potential with values in `[-30, 30]`, up to six nodes at
/// least `0.02` apart and from the ends, masses in `(0, 3]`.
pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let pieces = rng.gen_range(1..=4);
    let mut inner: Vec<f64> = (1..pieces).map(|_| rng.gen_range(0.05..0.95)).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    let mut breaks = vec![0.0];
    breaks.extend(inner);
    breaks.push(1.0);
    let values = (0..breaks.len() - 1)
        .map(|_| rng.gen_range(-30.0..30.0))
        .collect();

    let n = rng.gen_range(1..=6);
    let nodes = loop {
        let mut t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.02..0.98)).collect();
        t.sort_by(f64::total_cmp);
        if t.windows(2).all(|w| w[1] - w[0] > 0.02) {
            break t;
        }
    };
    let masses = (0..n).map(|_| 3.0 - rng.gen_range(0.0..2.95)).collect();
    Instance {
        breaks,
        values,
        nodes,
        masses,
    }
}

/// Real roots of `a + b λ + c λ²`, ascending.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let s = disc.sqrt();
    // the cancellation-free pair
    let qq = -0.5 * (b + b.signum() * s);
    let mut r = vec![qq / c, a / qq];
    r.sort_by(f64::total_cmp);
    r
}

/// Eigenvalue curve of the constant potential `c > 0` with one unit mass:
/// `f = A / g`, `g = ½(cosh k - cosh k(2t-1))`, `A = k sinh k`, `k = √c`.
pub fn hyperbolic_curve(
    c: f64,
) -> (
    impl Fn(f64) -> f64,
    impl Fn(f64) -> f64,
    impl Fn(f64) -> f64,
) {
    let k = c.sqrt();
    let a = k * k.sinh();
    let g = move |t: f64| 0.5 * (k.cosh() - (k * (2.0 * t - 1.0)).cosh());
    let g1 = move |t: f64| -k * (k * (2.0 * t - 1.0)).sinh();
    let g2 = move |t: f64| -2.0 * k * k * (k * (2.0 * t - 1.0)).cosh();
    (
        move |t| a / g(t),
        move |t| -a * g1(t) / g(t).powi(2),
        move |t| a * (2.0 * g1(t).powi(2) / g(t).powi(3) - g2(t) / g(t).powi(2)),
    )
}

/// Same for `c = -k²` with `k < π`: `g = ½(cos k(2t-1) - cos k)`, `A = k sin k`.
pub fn trigonometric_curve(
    k: f64,
) -> (
    impl Fn(f64) -> f64,
    impl Fn(f64) -> f64,
    impl Fn(f64) -> f64,
) {
    let a = k * k.sin();
    let g = move |t: f64| 0.5 * ((k * (2.0 * t - 1.0)).cos() - k.cos());
    let g1 = move |t: f64| -k * (k * (2.0 * t - 1.0)).sin();
    let g2 = move |t: f64| -2.0 * k * k * (k * (2.0 * t - 1.0)).cos();
    (
        move |t| a / g(t),
        move |t| -a * g1(t) / g(t).powi(2),
        move |t| a * (2.0 * g1(t).powi(2) / g(t).powi(3) - g2(t) / g(t).powi(2)),
    )
}
