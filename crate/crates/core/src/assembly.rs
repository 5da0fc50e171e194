//! Algebra of the Dirac-weighted problem: discriminants, node transfer
//! matrices, the coefficient chain `(α_i, β_i)`, the characteristic
//! polynomial and the symmetric tridiagonal characteristic matrix.
//!
//! An eigenfunction restricted to `[t_i, t_{i+1}]` is `α_i φ + β_i ψ`.
//! Continuity and the derivative jump `y'(t⁻) - y'(t⁺) = λ m y(t)` at each
//! node give `(α_i, β_i)ᵀ = M_i(λ) (α_{i-1}, β_{i-1})ᵀ` with
//! `M_i = I + (λ/ω) m_i N_i` and `N_i = (ψ, -φ)ᵀ(φ, ψ)` at `t_i`.

use serde::{Deserialize, Serialize};

use crate::fundamental::{BasisCase, FundamentalBasis};
use crate::polynomial::RealPolynomial;
use crate::tridiag::SymTridiag;
use crate::{Error, Result, Tolerances};

/// Point masses `m_i > 0` at nodes `0 < t_1 < ... < t_n < 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightRepr", into = "WeightRepr")]
pub struct DiracWeight {
    nodes: Vec<f64>,
    masses: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightRepr {
    nodes: Vec<f64>,
    masses: Vec<f64>,
}

impl TryFrom<WeightRepr> for DiracWeight {
    type Error = Error;
    fn try_from(r: WeightRepr) -> Result<Self> {
        DiracWeight::new(r.nodes, r.masses)
    }
}

impl From<DiracWeight> for WeightRepr {
    fn from(w: DiracWeight) -> Self {
        WeightRepr {
            nodes: w.nodes,
            masses: w.masses,
        }
    }
}

impl DiracWeight {
    pub fn new(nodes: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if nodes.len() != masses.len() {
            return Err(Error::validation(
                "weight.masses",
                format!("expected {} masses, got {}", nodes.len(), masses.len()),
            ));
        }
        if nodes.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
            return Err(Error::validation(
                "weight.nodes",
                "nodes must lie in the open interval (0, 1)",
            ));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::validation(
                "weight.nodes",
                "nodes must be strictly increasing",
            ));
        }
        if masses.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
            return Err(Error::validation(
                "weight.masses",
                "masses must be positive",
            ));
        }
        Ok(Self { nodes, masses })
    }

    pub fn empty() -> Self {
        Self {
            nodes: vec![],
            masses: vec![],
        }
    }

    pub fn single(t: f64, m: f64) -> Result<Self> {
        Self::new(vec![t], vec![m])
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Same nodes, every mass multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.nodes.clone(),
            self.masses.iter().map(|m| m * c).collect(),
        )
    }

    /// Nodes with the sentinels: `[0, t_1, ..., t_n, 1]`.
    pub fn extended_nodes(&self) -> Vec<f64> {
        let mut t = Vec::with_capacity(self.len() + 2);
        t.push(0.0);
        t.extend_from_slice(&self.nodes);
        t.push(1.0);
        t
    }
}

/// A discriminant value together with the magnitude of the two products
/// it is the difference of; the latter sets the scale for zero tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discriminant {
    pub value: f64,
    pub scale: f64,
}

impl Discriminant {
    /// `|D| / (scale + 1)`, compared against `zero_det`.
    pub fn margin(&self) -> f64 {
        self.value.abs() / (self.scale + 1.0)
    }

    pub fn is_zero(&self, tol: &Tolerances) -> bool {
        tol.negligible(self.value, self.scale)
    }
}

fn discriminant_from(phi_eta: f64, psi_eta: f64, phi_xi: f64, psi_xi: f64) -> Discriminant {
    let a = phi_eta * psi_xi;
    let b = phi_xi * psi_eta;
    Discriminant {
        value: a - b,
        scale: a.abs() + b.abs(),
    }
}

/// `D_{η,ξ} = φ(η)ψ(ξ) - φ(ξ)ψ(η)` with its zero-test scale.
pub fn discriminant_detail(basis: &FundamentalBasis, xi: f64, eta: f64) -> Result<Discriminant> {
    if !(0.0 <= xi && xi < eta && eta <= 1.0) {
        return Err(Error::Domain(format!(
            "discriminant needs 0 <= xi < eta <= 1, got xi = {xi}, eta = {eta}"
        )));
    }
    let (pe, se) = (basis.phi(eta)?, basis.psi(eta)?);
    let (px, sx) = (basis.phi(xi)?, basis.psi(xi)?);
    Ok(discriminant_from(pe.y, se.y, px.y, sx.y))
}

/// `D_{η,ξ} = φ(η)ψ(ξ) - φ(ξ)ψ(η)`.
pub fn discriminant(basis: &FundamentalBasis, xi: f64, eta: f64) -> Result<f64> {
    discriminant_detail(basis, xi, eta).map(|d| d.value)
}

/// Values of `φ` and `ψ` at `0, t_1, ..., t_n, 1`.
#[derive(Debug, Clone)]
pub(crate) struct NodeValues {
    pub t: Vec<f64>,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
}

impl NodeValues {
    pub fn new(basis: &FundamentalBasis, w: &DiracWeight) -> Result<Self> {
        let t = w.extended_nodes();
        let phi = t
            .iter()
            .map(|&x| basis.phi(x).map(|s| s.y))
            .collect::<Result<Vec<_>>>()?;
        let psi = t
            .iter()
            .map(|&x| basis.psi(x).map(|s| s.y))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { t, phi, psi })
    }

    /// `D_{t_j, t_i}` for extended indices `i < j`.
    pub fn disc(&self, i: usize, j: usize) -> Discriminant {
        discriminant_from(self.phi[j], self.psi[j], self.phi[i], self.psi[i])
    }
}

/// 2×2 matrix of polynomials in λ.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    pub entries: [[RealPolynomial; 2]; 2],
}

impl TransferMatrix {
    fn at_node(phi: f64, psi: f64, m: f64, omega: f64) -> Self {
        let s = m / omega;
        Self {
            entries: [
                [
                    RealPolynomial::linear(1.0, s * phi * psi),
                    RealPolynomial::linear(0.0, s * psi * psi),
                ],
                [
                    RealPolynomial::linear(0.0, -s * phi * phi),
                    RealPolynomial::linear(1.0, -s * phi * psi),
                ],
            ],
        }
    }

    pub fn determinant(&self) -> RealPolynomial {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    /// Numeric matrix at a given λ.
    pub fn at(&self, lambda: f64) -> [[f64; 2]; 2] {
        let e = &self.entries;
        [
            [e[0][0].eval(lambda), e[0][1].eval(lambda)],
            [e[1][0].eval(lambda), e[1][1].eval(lambda)],
        ]
    }

    fn apply(&self, v: &[RealPolynomial; 2]) -> [RealPolynomial; 2] {
        let e = &self.entries;
        [
            &(&e[0][0] * &v[0]) + &(&e[0][1] * &v[1]),
            &(&e[1][0] * &v[0]) + &(&e[1][1] * &v[1]),
        ]
    }
}

/// `M(λ) = I + (λ/ω) m N` for a node at `t` with mass `m`.
pub fn transfer_matrix(basis: &FundamentalBasis, t: f64, m: f64) -> Result<TransferMatrix> {
    if !(t > 0.0 && t < 1.0) || !(m > 0.0) {
        return Err(Error::Domain(format!(
            "transfer matrix needs an interior node and positive mass, got t = {t}, m = {m}"
        )));
    }
    let phi = basis.phi(t)?.y;
    let psi = basis.psi(t)?.y;
    Ok(TransferMatrix::at_node(phi, psi, m, basis.omega()))
}

/// `(α_i(λ), β_i(λ))` for `i = 0..=n`, starting from `(1, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientChain {
    pub alpha: Vec<RealPolynomial>,
    pub beta: Vec<RealPolynomial>,
}

impl CoefficientChain {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// Coefficient pairs evaluated at a given λ.
    pub fn at(&self, lambda: f64) -> Vec<(f64, f64)> {
        self.alpha
            .iter()
            .zip(&self.beta)
            .map(|(a, b)| (a.eval(lambda), b.eval(lambda)))
            .collect()
    }
}

fn chain_from_nodes(nv: &NodeValues, w: &DiracWeight, omega: f64) -> CoefficientChain {
    let mut alpha = vec![RealPolynomial::constant(1.0)];
    let mut beta = vec![RealPolynomial::constant(0.0)];
    for (i, &m) in w.masses().iter().enumerate() {
        let mat = TransferMatrix::at_node(nv.phi[i + 1], nv.psi[i + 1], m, omega);
        let [a, b] = mat.apply(&[alpha[i].clone(), beta[i].clone()]);
        alpha.push(a);
        beta.push(b);
    }
    CoefficientChain { alpha, beta }
}

/// Left-multiplies the node transfer matrices onto `(1, 0)ᵀ`.
pub fn coefficient_chain(basis: &FundamentalBasis, w: &DiracWeight) -> Result<CoefficientChain> {
    let nv = NodeValues::new(basis, w)?;
    Ok(chain_from_nodes(&nv, w, basis.omega()))
}

/// `(α_K, β_K)` from the explicit subset sums over node index sets,
/// using discriminants between consecutive chosen nodes.
///
/// This is the validation route for [`coefficient_chain`]; it enumerates
/// all `2^K` subsets and is only meant for small `K`.
pub fn closed_form_coefficients(
    basis: &FundamentalBasis,
    w: &DiracWeight,
    k: usize,
) -> Result<(RealPolynomial, RealPolynomial)> {
    if k > w.len() {
        return Err(Error::Domain(format!(
            "K = {k} exceeds the number of nodes {}",
            w.len()
        )));
    }
    if k > 24 {
        return Err(Error::Domain("closed form limited to K <= 24".into()));
    }
    let nv = NodeValues::new(basis, w)?;
    let inv_omega = 1.0 / basis.omega();
    let mut alpha = vec![0.0; k + 1];
    let mut beta = vec![0.0; k + 1];
    alpha[0] = 1.0;
    for mask in 1u32..(1u32 << k) {
        // chosen node indices i_1 < ... < i_l, 1-based in the extended list
        let idx: Vec<usize> = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect();
        let l = idx.len();
        let mut prod = inv_omega.powi(l as i32);
        for &i in &idx {
            prod *= w.masses()[i - 1];
        }
        for pair in idx.windows(2) {
            prod *= nv.disc(pair[0], pair[1]).value;
        }
        let (first, last) = (idx[0], idx[l - 1]);
        alpha[l] += prod * nv.psi[last] * nv.phi[first];
        beta[l] -= prod * nv.phi[last] * nv.phi[first];
    }
    Ok((RealPolynomial::new(alpha), RealPolynomial::new(beta)))
}

/// The characteristic polynomial `p(λ) = E(1, λ)` in raw and reduced form.
///
/// The `λ^l` coefficient of `p` equals `ω^{-l} ψ(0)^{-1}` times a sum over
/// chains `0 < t_{j_1} < ... < t_{j_l} < 1` of products of masses and the
/// discriminants between consecutive chain points. A coefficient is
/// *structurally zero* when every such chain crosses a negligible
/// discriminant; `reduced` zeroes exactly those coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicPolynomial {
    pub raw: RealPolynomial,
    pub reduced: RealPolynomial,
    pub support: Vec<bool>,
    pub case: BasisCase,
}

impl CharacteristicPolynomial {
    /// True when some nonzero raw coefficient was removed.
    pub fn was_reduced(&self) -> bool {
        self.raw
            .coeffs()
            .iter()
            .zip(&self.support)
            .any(|(&c, &s)| !s && c != 0.0)
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        self.reduced.eval(lambda)
    }
}

/// Which powers of λ can be nonzero given the discriminant zero pattern.
pub(crate) fn structural_support(nv: &NodeValues, tol: &Tolerances) -> Vec<bool> {
    let last = nv.t.len() - 1; // index of t_{n+1} = 1
    let n = last - 1;
    let nonzero = |i: usize, j: usize| !nv.disc(i, j).is_zero(tol);
    // reach[l][j]: some chain 0 -> ... -> j through l masses (j counted) has
    // no vanishing discriminant
    let mut reach = vec![vec![false; last + 1]; n + 1];
    reach[0][0] = true;
    for l in 1..=n {
        for j in l..=n {
            reach[l][j] = (l - 1..j).any(|i| reach[l - 1][i] && nonzero(i, j));
        }
    }
    (0..=n)
        .map(|l| (l..=n).any(|j| (j == 0 || j >= l) && reach[l][j] && nonzero(j, last)))
        .collect()
}

pub fn characteristic_polynomial(
    basis: &FundamentalBasis,
    w: &DiracWeight,
    tol: &Tolerances,
) -> Result<CharacteristicPolynomial> {
    let nv = NodeValues::new(basis, w)?;
    let chain = chain_from_nodes(&nv, w, basis.omega());
    let n = w.len();
    let raw = match basis.case() {
        BasisCase::CaseI => chain.alpha[n].scale(nv.phi[n + 1]),
        BasisCase::CaseII => chain.beta[n].clone(),
    };
    let support = structural_support(&nv, tol);
    let reduced = RealPolynomial::new(
        (0..=n)
            .map(|k| if support[k] { raw.coeff(k) } else { 0.0 })
            .collect(),
    )
    .trimmed();
    Ok(CharacteristicPolynomial {
        raw,
        reduced,
        support,
        case: basis.case(),
    })
}

/// The symmetric characteristic matrix `X = M̃^{-1/2} (-ω A) M̃^{-1/2}`
/// together with the tridiagonal `A` (or `B` in Case II) it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    /// `a_kk = D_{t_{k+1},t_{k-1}} / (D_{t_{k+1},t_k} D_{t_k,t_{k-1}})`.
    pub diag: Vec<f64>,
    /// `a_{k,k+1} = -1 / D_{t_{k+1},t_k}`.
    pub offdiag: Vec<f64>,
    pub mass_diag: Vec<f64>,
    pub sym: SymTridiag,
    pub omega: f64,
    /// `Π_{k=1}^{n+1} D_{t_k, t_{k-1}}`.
    pub boundary_product: f64,
    pub case: BasisCase,
}

impl TridiagonalSystem {
    /// `(-1)^{n+1} ω^{-(n+1)} Π m_i Π D_{t_k,t_{k-1}}`, the factor relating
    /// `det(X - λI)` to the characteristic polynomial.
    pub fn proportionality_constant(&self) -> f64 {
        let n = self.diag.len() as i32;
        let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.omega.powi(-(n + 1))
            * self.mass_diag.iter().product::<f64>()
            * self.boundary_product
    }
}

pub fn tridiagonal_system(
    basis: &FundamentalBasis,
    w: &DiracWeight,
    tol: &Tolerances,
) -> Result<TridiagonalSystem> {
    let n = w.len();
    if n == 0 {
        return Err(Error::Domain(
            "the characteristic matrix needs at least one node".into(),
        ));
    }
    let nv = NodeValues::new(basis, w)?;
    let consecutive: Vec<Discriminant> = (0..=n).map(|k| nv.disc(k, k + 1)).collect();
    if let Some((k, d)) = consecutive.iter().enumerate().find(|(_, d)| d.is_zero(tol)) {
        return Err(Error::TridiagonalUnavailable {
            index_lo: k,
            index_hi: k + 1,
            margin: d.margin(),
        });
    }
    let omega = basis.omega();
    let masses = w.masses();
    let diag: Vec<f64> = (1..=n)
        .map(|k| nv.disc(k - 1, k + 1).value / (consecutive[k].value * consecutive[k - 1].value))
        .collect();
    let offdiag: Vec<f64> = (1..n).map(|k| -1.0 / consecutive[k].value).collect();
    let sym_diag = diag
        .iter()
        .zip(masses)
        .map(|(a, m)| -omega * a / m)
        .collect();
    let sym_off = offdiag
        .iter()
        .enumerate()
        .map(|(k, a)| -omega * a / (masses[k] * masses[k + 1]).sqrt())
        .collect();
    Ok(TridiagonalSystem {
        diag,
        offdiag,
        mass_diag: masses.to_vec(),
        sym: SymTridiag::new(sym_diag, sym_off)?,
        omega,
        boundary_product: consecutive.iter().map(|d| d.value).product(),
        case: basis.case(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fundamental::build_basis;
    use crate::Potential;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn basis(c: f64) -> FundamentalBasis {
        let q = if c == 0.0 {
            Potential::Zero
        } else {
            Potential::constant(c).unwrap()
        };
        build_basis(&q, &tol()).unwrap()
    }

    fn weight(nodes: &[f64]) -> DiracWeight {
        DiracWeight::new(nodes.to_vec(), vec![1.0; nodes.len()]).unwrap()
    }

    #[test]
    fn weight_validation() {
        assert!(DiracWeight::new(vec![0.5, 0.25], vec![1.0, 1.0]).is_err());
        assert!(DiracWeight::new(vec![0.0], vec![1.0]).is_err());
        assert!(DiracWeight::new(vec![0.5], vec![0.0]).is_err());
        assert!(DiracWeight::new(vec![0.5], vec![1.0, 2.0]).is_err());
        assert!(DiracWeight::empty().is_empty());
    }

    #[test]
    fn discriminants_of_well_bases() {
        let b0 = basis(0.0);
        assert!((discriminant(&b0, 0.25, 0.75).unwrap() - 0.5).abs() < 1e-15);
        let b = basis(-9.0 * PI * PI / 4.0);
        assert!((discriminant(&b, 0.0, 1.0).unwrap() - 4.0 / (9.0 * PI * PI)).abs() < 1e-15);
        assert!(discriminant(&b, 1.0 / 3.0, 1.0).unwrap().abs() < 1e-15);
        assert!(discriminant(&b, 0.0, 2.0 / 3.0).unwrap().abs() < 1e-15);
        let d = -4.0 / (9.0 * PI * PI);
        assert!((discriminant(&b, 2.0 / 3.0, 1.0).unwrap() - d).abs() < 1e-15);
        assert!((discriminant(&b, 1.0 / 3.0, 2.0 / 3.0).unwrap() - d).abs() < 1e-15);
        assert!(matches!(discriminant(&b, 0.5, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn transfer_matrix_of_zero_potential() {
        let m = transfer_matrix(&basis(0.0), 0.5, 1.0).unwrap();
        let e = &m.entries;
        assert_eq!(e[0][0].coeffs(), &[1.0, -0.25]);
        assert_eq!(e[0][1].coeffs(), &[0.0, -0.25]);
        assert_eq!(e[1][0].coeffs(), &[0.0, 0.25]);
        assert_eq!(e[1][1].coeffs(), &[1.0, 0.25]);
        assert_eq!(m.at(0.0), [[1.0, 0.0], [0.0, 1.0]]);
        let det = m.determinant();
        assert_eq!(det.coeff(0), 1.0);
        assert!(det.coeffs()[1..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn chain_for_single_node() {
        let chain = coefficient_chain(&basis(0.0), &weight(&[0.5])).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain.alpha[0].coeffs(), &[1.0]);
        assert_eq!(chain.beta[0].coeffs(), &[0.0]);
        assert_eq!(chain.alpha[1].coeffs(), &[1.0, -0.25]);
        assert_eq!(chain.beta[1].coeffs(), &[0.0, 0.25]);
        let empty = coefficient_chain(&basis(0.0), &DiracWeight::empty()).unwrap();
        assert_eq!(empty.len(), 1);
    }

    #[test]
    fn charpoly_examples() {
        let b = basis(-9.0 * PI * PI / 4.0);
        let c = -2.0 / (3.0 * PI);
        let p = characteristic_polynomial(&b, &weight(&[1.0 / 3.0, 2.0 / 3.0]), &tol()).unwrap();
        let r = &p.reduced;
        assert_eq!(r.coeffs().len(), 3);
        assert!((r.coeff(0) - c).abs() < 1e-14);
        assert!(r.coeff(1).abs() < 1e-14);
        assert!((r.coeff(2) + c * 4.0 / (9.0 * PI * PI)).abs() < 1e-14);

        let p = characteristic_polynomial(&b, &weight(&[0.25, 1.0 / 3.0]), &tol()).unwrap();
        assert!(p.was_reduced());
        assert_eq!(p.reduced.coeffs().len(), 2);
        assert!((p.reduced.coeff(0) - c).abs() < 1e-14);
        assert!((p.reduced.coeff(1) + c / (3.0 * 2f64.sqrt() * PI)).abs() < 1e-14);

        let p = characteristic_polynomial(&b, &weight(&[2.0 / 3.0]), &tol()).unwrap();
        assert_eq!(p.reduced.coeffs().len(), 1);
        assert!((p.reduced.coeff(0) - c).abs() < 1e-14);

        let p = characteristic_polynomial(&basis(-PI * PI), &weight(&[0.5]), &tol()).unwrap();
        assert_eq!(p.case, BasisCase::CaseII);
        assert_eq!(p.reduced.coeff(0), 0.0);
        assert!((p.reduced.coeff(1) + 1.0 / (PI * PI)).abs() < 1e-14);

        let p = characteristic_polynomial(&basis(-4.0 * PI * PI), &weight(&[0.5]), &tol()).unwrap();
        assert!(p.reduced.is_zero());
        assert!(p.raw.coeffs().iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn tridiagonal_examples() {
        let sys =
            tridiagonal_system(&basis(0.0), &weight(&[1.0 / 3.0, 2.0 / 3.0]), &tol()).unwrap();
        assert!((sys.sym.diag()[0] - 6.0).abs() < 1e-13);
        assert!((sys.sym.diag()[1] - 6.0).abs() < 1e-13);
        assert!((sys.sym.offdiag()[0] + 3.0).abs() < 1e-13);

        let sys = tridiagonal_system(&basis(-PI * PI), &weight(&[0.25, 0.5]), &tol()).unwrap();
        assert!((sys.sym.diag()[0] - 2.0 * PI).abs() < 1e-12);
        assert!((sys.sym.diag()[1] - PI).abs() < 1e-12);
        assert!((sys.sym.offdiag()[0] + 2f64.sqrt() * PI).abs() < 1e-12);

        // single node: X = -ω / (m φ(t) ψ(t))
        let b = basis(3.0);
        let t = 0.3;
        let w = DiracWeight::single(t, 2.0).unwrap();
        let sys = tridiagonal_system(&b, &w, &tol()).unwrap();
        let expect = -b.omega() / (2.0 * b.phi(t).unwrap().y * b.psi(t).unwrap().y);
        assert!((sys.sym.diag()[0] - expect).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn tridiagonal_route_refuses_when_consecutive_discriminant_vanishes() {
        let b = basis(-9.0 * PI * PI / 4.0);
        let err = tridiagonal_system(&b, &weight(&[2.0 / 3.0]), &tol()).unwrap_err();
        assert!(matches!(
            err,
            Error::TridiagonalUnavailable { index_lo: 0, .. }
        ));
        assert!(tridiagonal_system(&b, &DiracWeight::empty(), &tol()).is_err());
    }

    #[test]
    fn closed_form_small_k_agrees_with_chain() {
        let b = basis(-5.0);
        let w = DiracWeight::new(vec![0.2, 0.45, 0.8], vec![0.7, 1.3, 2.0]).unwrap();
        let chain = coefficient_chain(&b, &w).unwrap();
        for k in 0..=3 {
            let (a, bb) = closed_form_coefficients(&b, &w, k).unwrap();
            for d in 0..=k {
                assert!((a.coeff(d) - chain.alpha[k].coeff(d)).abs() < 1e-12);
                assert!((bb.coeff(d) - chain.beta[k].coeff(d)).abs() < 1e-12);
            }
        }
    }
}
