//! Poisson, Helgason–Fourier and Radon transforms of spinor sections, the
//! p-functions and their intertwiner, spectral projections and the averaged
//! ball norms.
//!
//! Boundary sections are `V_sigma`-valued, stored as vectors of `V_tau` in the
//! range of `P_sigma`, one value per node of a descended [`KGrid`]. The
//! Poisson transform carries the prefactor `sqrt(d)`, so that
//! `P p^{g,v}(x) = Phi(g^{-1} x) v / sqrt(d)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::clifford::CliffordGroupElement;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, CVector};
use crate::quadrature::{composite_legendre, BallGrid, KGrid};
use crate::special::plancherel_density;
use crate::spherical::{spherical_at, weyl_sigma, SphericalSpec};
use crate::spin::{Sigma, SpinRepresentation};
use crate::vahlen::{cartan_radius, geodesic_a, iwasawa_height, VahlenElement};

/// Values of a boundary section at the nodes of a descended K-grid.
#[derive(Clone, Debug)]
pub struct BoundarySection {
    pub sigma: Sigma,
    pub values: Vec<CVector>,
}

impl BoundarySection {
    pub fn zero(sigma: Sigma, len: usize, dim: usize) -> Self {
        Self {
            sigma,
            values: vec![CVector::zeros(dim); len],
        }
    }

    /// `<F, G>_{L^2(K)}`, linear in `self`.
    pub fn inner(&self, other: &Self, grid: &KGrid) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .zip(&grid.weights)
            .map(|((a, b), w)| b.dotc(a) * *w)
            .sum()
    }

    pub fn norm_sqr(&self, grid: &KGrid) -> f64 {
        self.inner(self, grid).re
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            sigma: self.sigma,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            sigma: self.sigma,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }
}

/// `p^{g,v}_{sigma,lambda}(k) = e^{(i lambda - rho) H(g^{-1}k)} P_sigma tau(kappa(g^{-1}k))^{-1} v`.
pub fn p_function(spec: &SphericalSpec, g_inv: &VahlenElement, v: &CVector, k: &CliffordGroupElement) -> Result<CVector> {
    let h = g_inv.mul(&VahlenElement::make_k(k));
    let weight = ((Complex64::i() * spec.lambda - spec.rho()) * iwasawa_height(&h)).exp();
    let t = spec.rep().evaluate_inverse(&h.kappa())?;
    Ok(spec.p_sigma() * (t * v) * weight)
}

#[derive(Clone, Debug)]
pub struct PTerm {
    pub g: VahlenElement,
    pub v: CVector,
    pub coeff: Complex64,
}

/// Finite combination `sum coeff p^{g,v}_{sigma,lambda}`.
#[derive(Clone, Debug)]
pub struct PFunctionCombo {
    pub sigma: Sigma,
    pub lambda: Complex64,
    pub terms: Vec<PTerm>,
}

impl PFunctionCombo {
    pub fn spec(&self, rep: &SpinRepresentation) -> Result<SphericalSpec> {
        SphericalSpec::with_rep(rep.clone(), self.sigma, self.lambda)
    }

    pub fn evaluate(&self, spec: &SphericalSpec, k: &CliffordGroupElement) -> Result<CVector> {
        let mut acc = CVector::zeros(spec.rep().dim());
        for term in &self.terms {
            acc += p_function(spec, &term.g.inverse(), &term.v, k)? * term.coeff;
        }
        Ok(acc)
    }

    pub fn sample(&self, rep: &SpinRepresentation, grid: &KGrid) -> Result<BoundarySection> {
        let spec = self.spec(rep)?;
        let values: Result<Vec<CVector>> = grid.rotors.par_iter().map(|k| self.evaluate(&spec, k)).collect();
        Ok(BoundarySection {
            sigma: self.sigma,
            values: values?,
        })
    }

    /// `P_{sigma,lambda}` of the combination through the closed form of Phi.
    pub fn poisson(&self, rep: &SpinRepresentation, x: &VahlenElement) -> Result<CVector> {
        let spec = self.spec(rep)?;
        let mut acc = CVector::zeros(rep.dim());
        for term in &self.terms {
            let phi = spherical_at(&spec, &term.g.inverse().mul(x))?;
            acc += phi * &term.v * term.coeff;
        }
        Ok(acc / c(spec.d().sqrt(), 0.0))
    }
}

/// Elements of the Weyl group `{1, w}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylElement {
    Identity,
    W,
}

/// `U_{s,lambda}` on p-combinations: relabel `(sigma, lambda)` to `(s sigma, s lambda)`.
pub fn intertwiner_u(combo: &PFunctionCombo, n: usize, s: WeylElement) -> PFunctionCombo {
    match s {
        WeylElement::Identity => combo.clone(),
        WeylElement::W => PFunctionCombo {
            sigma: weyl_sigma(n, combo.sigma),
            lambda: -combo.lambda,
            terms: combo.terms.clone(),
        },
    }
}

/// Quadrature Poisson transform `sqrt(d) int_K e^{-(i lambda + rho) H(g^{-1}k)} tau(kappa(g^{-1}k)) F(k) dk`.
pub fn poisson_transform(spec: &SphericalSpec, f: &BoundarySection, grid: &KGrid, g: &VahlenElement) -> Result<CVector> {
    let g_inv = g.inverse();
    let il = Complex64::i() * spec.lambda;
    let mut acc = CVector::zeros(spec.rep().dim());
    for ((k, w), fk) in grid.rotors.iter().zip(&grid.weights).zip(&f.values) {
        let h = g_inv.mul(&VahlenElement::make_k(k));
        let weight = (-(il + spec.rho()) * iwasawa_height(&h)).exp() * *w;
        acc += spec.rep().evaluate(&h.kappa())? * fk * weight;
    }
    Ok(acc * c(spec.d().sqrt(), 0.0))
}

/// Section of the spinor bundle, `f(g k) = tau(k)^{-1} f(g)`.
pub trait BundleSection: Sync {
    fn value(&self, g: &VahlenElement) -> Result<CVector>;
    fn support_radius(&self) -> Option<f64>;
}

/// `f(g) = chi(d(o, g)) tau(kappa(g^{-1} y)) w` with the smooth bump
/// `chi(r) = exp(1 - 1/(1 - (r/R0)^2))` on `r < R0`.
#[derive(Clone, Debug)]
pub struct BumpSection {
    pub rep: SpinRepresentation,
    pub radius: f64,
    pub center: VahlenElement,
    pub w: CVector,
}

pub fn bump(r: f64, radius: f64) -> f64 {
    let x = r / radius;
    if x >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - x * x)).exp()
    }
}

impl BundleSection for BumpSection {
    fn value(&self, g: &VahlenElement) -> Result<CVector> {
        let chi = bump(cartan_radius(g), self.radius);
        if chi == 0.0 {
            return Ok(CVector::zeros(self.rep.dim()));
        }
        let kappa = g.inverse().mul(&self.center).kappa();
        Ok(self.rep.evaluate(&kappa)? * &self.w * c(chi, 0.0))
    }

    fn support_radius(&self) -> Option<f64> {
        Some(self.radius)
    }
}

/// A bundle section sampled at the nodes `k a_s` of a ball grid.
#[derive(Clone, Debug)]
pub struct SampledSection {
    pub points: Vec<VahlenElement>,
    pub weights: Vec<f64>,
    pub values: Vec<CVector>,
}

impl SampledSection {
    pub fn new(f: &dyn BundleSection, ball: &BallGrid) -> Result<Self> {
        let m = ball.n - 1;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (s, ws) in ball.radial.nodes.iter().zip(&ball.radial.weights) {
            let a = geodesic_a(m, *s);
            for (k, wk) in ball.k.rotors.iter().zip(&ball.k.weights) {
                points.push(VahlenElement::make_k(k).mul(&a));
                weights.push(ws * wk);
            }
        }
        let values: Result<Vec<CVector>> = points.par_iter().map(|g| f.value(g)).collect();
        Ok(Self {
            points,
            weights,
            values: values?,
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().zip(&self.weights).map(|(v, w)| v.norm_squared() * w).sum()
    }
}

fn check_support(f: &dyn BundleSection, ball: &BallGrid) -> Result<()> {
    match f.support_radius() {
        Some(r) if r <= ball.radius => Ok(()),
        Some(r) => Err(Error::Range(format!("support radius {r} exceeds ball radius {}", ball.radius))),
        None => Err(Error::Range("Fourier transform needs compact support".into())),
    }
}

/// `sqrt(d) P_sigma int_G e^{(i lambda - rho) H(g^{-1}k)} tau(kappa(g^{-1}k))^{-1} f(g) dg`
/// at one `k`, for every lambda in the list.
fn fourier_at(
    rep: &SpinRepresentation,
    p_sigma: &CMatrix,
    scale: f64,
    rho: f64,
    f: &SampledSection,
    k: &CliffordGroupElement,
    lambdas: &[f64],
) -> Result<Vec<CVector>> {
    let kk = VahlenElement::make_k(k);
    let mut acc = vec![CVector::zeros(rep.dim()); lambdas.len()];
    for ((g, w), fg) in f.points.iter().zip(&f.weights).zip(&f.values) {
        if fg.norm_squared() == 0.0 {
            continue;
        }
        let h = g.inverse().mul(&kk);
        let hh = iwasawa_height(&h);
        let v = rep.evaluate_inverse(&h.kappa())? * fg * c(w * (-rho * hh).exp(), 0.0);
        for (a, l) in acc.iter_mut().zip(lambdas) {
            *a += &v * Complex64::from_polar(1.0, l * hh);
        }
    }
    Ok(acc.into_iter().map(|a| p_sigma * a * c(scale, 0.0)).collect())
}

/// Partial Helgason–Fourier transform for several real lambda in one pass.
pub fn helgason_fourier_multi(
    rep: &SpinRepresentation,
    sigma: Sigma,
    f: &SampledSection,
    out: &KGrid,
    lambdas: &[f64],
) -> Result<Vec<BoundarySection>> {
    let spec = SphericalSpec::with_rep(rep.clone(), sigma, c(1.0, 0.0))?;
    let scale = spec.d().sqrt();
    let rows: Result<Vec<Vec<CVector>>> = out
        .rotors
        .par_iter()
        .map(|k| fourier_at(rep, spec.p_sigma(), scale, spec.rho(), f, k, lambdas))
        .collect();
    let rows = rows?;
    Ok((0..lambdas.len())
        .map(|j| BoundarySection {
            sigma,
            values: rows.iter().map(|r| r[j].clone()).collect(),
        })
        .collect())
}

pub fn helgason_fourier(
    spec: &SphericalSpec,
    f: &dyn BundleSection,
    ball: &BallGrid,
    out: &KGrid,
) -> Result<BoundarySection> {
    if spec.lambda.im != 0.0 {
        return Err(Error::Range("Fourier transform sampled for real lambda only".into()));
    }
    check_support(f, ball)?;
    let sampled = SampledSection::new(f, ball)?;
    Ok(helgason_fourier_multi(spec.rep(), spec.sigma, &sampled, out, &[spec.lambda.re])?.remove(0))
}

/// Normalization of Lebesgue measure on N = R^{n-1} (coordinates of
/// `make_n`) that gives `dg = C dt dx dk` for `g = k a_t n_x`.
pub fn n_measure_constant(n: usize) -> f64 {
    let m = n as f64 - 1.0;
    let sphere_area = 2.0 * PI.powf(0.5 * n as f64) / crate::special::gamma(c(0.5 * n as f64, 0.0)).map(|g| g.re).unwrap_or(f64::NAN);
    4f64.powf(m) / sphere_area
}

/// Largest `|x|` with `d(o, a_t n_x) <= r`, or None when `|t| > r`.
fn horocycle_reach(m: usize, t: f64, r: f64) -> Option<f64> {
    if t.abs() >= r {
        return None;
    }
    let a = geodesic_a(m, t);
    let dist = |x: f64| {
        let mut v = vec![0.0; m];
        v[0] = x;
        cartan_radius(&a.mul(&VahlenElement::make_n(&v)))
    };
    let mut hi = 1.0;
    while dist(hi) < r {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if dist(mid) < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// `sqrt(d) P_sigma e^{rho t} int_N f(k a_t n) dn` for n in {2, 3}.
pub fn radon_transform(
    spec: &SphericalSpec,
    f: &dyn BundleSection,
    t: f64,
    k: &CliffordGroupElement,
    panels: usize,
    order: usize,
) -> Result<CVector> {
    let n = spec.n;
    let m = n - 1;
    let r0 = f
        .support_radius()
        .ok_or_else(|| Error::Range("Radon transform needs compact support".into()))?;
    let dim = spec.rep().dim();
    let Some(reach) = horocycle_reach(m, t, r0) else {
        return Ok(CVector::zeros(dim));
    };
    let ka = VahlenElement::make_k(k).mul(&geodesic_a(m, t));
    let mut acc = CVector::zeros(dim);
    match n {
        2 => {
            let rule = composite_legendre(-reach, reach, panels, order)?;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                acc += f.value(&ka.mul(&VahlenElement::make_n(&[*x])))? * c(*w, 0.0);
            }
        }
        3 => {
            let radial = composite_legendre(0.0, reach, panels, order)?;
            let angles = 4 * order;
            for (r, w) in radial.nodes.iter().zip(&radial.weights) {
                for j in 0..angles {
                    let th = 2.0 * PI * (j as f64 + 0.5) / angles as f64;
                    let x = [r * th.cos(), r * th.sin()];
                    let wt = w * r * 2.0 * PI / angles as f64;
                    acc += f.value(&ka.mul(&VahlenElement::make_n(&x)))? * c(wt, 0.0);
                }
            }
        }
        _ => return Err(Error::Range(format!("Radon transform implemented for n in {{2, 3}}, got {n}"))),
    }
    let scale = spec.d().sqrt() * (spec.rho() * t).exp() * n_measure_constant(n);
    Ok(spec.p_sigma() * acc * c(scale, 0.0))
}

/// `Q_{sigma,lambda} f(g) = nu(lambda) P_{sigma,lambda}(F_{sigma,lambda} f)(g)`.
pub fn spectral_projection(
    spec: &SphericalSpec,
    fourier: &BoundarySection,
    grid: &KGrid,
    g: &VahlenElement,
) -> Result<CVector> {
    let nu = plancherel_density(spec.lambda.re, spec.n)?;
    Ok(poisson_transform(spec, fourier, grid, g)? * c(nu, 0.0))
}

/// `sum_sigma int Q_{sigma,lambda} f(g) d lambda` over a lambda rule, with
/// the Fourier data given per sigma and per lambda node.
pub fn inversion_at(
    rep: &SpinRepresentation,
    fourier: &[(Sigma, Vec<BoundarySection>)],
    lambdas: &[f64],
    lambda_weights: &[f64],
    grid: &KGrid,
    g: &VahlenElement,
) -> Result<CVector> {
    let n = rep.n();
    let rho = 0.5 * (n as f64 - 1.0);
    let d = rep.d_tau_sigma() as f64;
    let g_inv = g.inverse();
    let nus: Result<Vec<f64>> = lambdas.iter().map(|l| plancherel_density(*l, n)).collect();
    let nus = nus?;
    let mut acc = CVector::zeros(rep.dim());
    for (j, (k, wk)) in grid.rotors.iter().zip(&grid.weights).enumerate() {
        let h = g_inv.mul(&VahlenElement::make_k(k));
        let hh = iwasawa_height(&h);
        let tk = rep.evaluate(&h.kappa())?;
        let mut inner = CVector::zeros(rep.dim());
        for (_, sections) in fourier {
            for (i, l) in lambdas.iter().enumerate() {
                let phase = Complex64::from_polar(lambda_weights[i] * nus[i], -l * hh);
                inner += &sections[i].values[j] * phase;
            }
        }
        acc += tk * inner * c(wk * (-rho * hh).exp(), 0.0);
    }
    Ok(acc * c(d.sqrt(), 0.0))
}

/// The scattering profile `tau(k2)^{-1} sum_s e^{(i s lambda - rho) A+(x)} factor c(s lambda) (U_s F)(k1)`
/// of a p-combination, with `d c(s lambda, tau)` replaced by `factor * c(s lambda)`.
pub fn scattering_profile(
    rep: &SpinRepresentation,
    combo: &PFunctionCombo,
    x: &VahlenElement,
    factor: f64,
) -> Result<CVector> {
    let n = rep.n();
    let f = x.cartan()?;
    let t = 2.0 * f.t;
    let k1 = f.k1.k_value();
    let mut acc = CVector::zeros(rep.dim());
    for s in [WeylElement::Identity, WeylElement::W] {
        let u = intertwiner_u(combo, n, s);
        let spec = u.spec(rep)?;
        let il = Complex64::i() * u.lambda;
        let coef = crate::special::hc_c_function(u.lambda, n)? * ((il - spec.rho()) * t).exp() * factor;
        acc += u.evaluate(&spec, &k1)? * coef;
    }
    Ok(rep.evaluate_inverse(&f.k2.k_value())? * acc)
}

/// Cumulative energies `int_{B(R)} |h|^2` at the panel edges of a radial rule.
#[derive(Clone, Debug)]
pub struct EnergyProfile {
    pub edges: Vec<f64>,
    pub cumulative: Vec<f64>,
}

impl EnergyProfile {
    /// `(1/R) int_{B(R)} |h|^2` at an edge radius.
    pub fn mean_energy(&self, r: f64) -> Result<f64> {
        let i = self
            .edges
            .iter()
            .position(|e| (e - r).abs() < 1e-9 * r.max(1.0))
            .ok_or_else(|| Error::Range(format!("R = {r} is not a panel edge")))?;
        Ok(self.cumulative[i] / r)
    }
}

/// Energy of `h` on balls of radius `edges` (panel width `rmax/panels`).
pub fn energy_profile<H>(h: H, n: usize, grid: &KGrid, rmax: f64, panels: usize, order: usize) -> Result<EnergyProfile>
where
    H: Fn(&VahlenElement) -> Result<CVector> + Sync,
{
    let m = n - 1;
    let rule = composite_legendre(0.0, rmax, panels, order)?;
    let shells: Result<Vec<f64>> = rule
        .nodes
        .par_iter()
        .map(|s| {
            let a = geodesic_a(m, *s);
            let mut e = 0.0;
            for (k, w) in grid.rotors.iter().zip(&grid.weights) {
                e += h(&VahlenElement::make_k(k).mul(&a))?.norm_squared() * w;
            }
            Ok(e * (2.0 * s.sinh()).powi(m as i32))
        })
        .collect();
    let shells = shells?;
    let width = rmax / panels as f64;
    let mut edges = vec![0.0];
    let mut cumulative = vec![0.0];
    let mut acc = 0.0;
    for p in 0..panels {
        for j in 0..order {
            let i = p * order + j;
            acc += shells[i] * rule.weights[i];
        }
        edges.push(width * (p + 1) as f64);
        cumulative.push(acc);
    }
    Ok(EnergyProfile { edges, cumulative })
}

/// `sup_{R in rset} (1/R) int_{B(R)} |h|^2`.
pub fn star_norm_sqr(profile: &EnergyProfile, rset: &[f64]) -> Result<f64> {
    let mut best: f64 = 0.0;
    for r in rset {
        best = best.max(profile.mean_energy(*r)?);
    }
    Ok(best)
}

/// `sup_{R in rset} int d lambda (1/R) int_{B(R)} |psi(lambda)|^2` over a lambda rule.
pub fn plus_norm_sqr(profiles: &[EnergyProfile], lambda_weights: &[f64], rset: &[f64]) -> Result<f64> {
    let mut best: f64 = 0.0;
    for r in rset {
        let mut total = 0.0;
        for (p, w) in profiles.iter().zip(lambda_weights) {
            total += p.mean_energy(*r)? * w;
        }
        best = best.max(total);
    }
    Ok(best)
}

/// One Richardson step removing a `C/R` tail from `E(R) = L + C/R`.
pub fn richardson_limit(r1: f64, e1: f64, r2: f64, e2: f64) -> f64 {
    (r1 * e1 - r2 * e2) / (r1 - r2)
}

/// `nu(lambda) |F_{sigma,lambda} f|^2 / (R |f|^2)` over a lambda list.
pub fn restriction_ratios(
    rep: &SpinRepresentation,
    sigma: Sigma,
    f: &SampledSection,
    radius: f64,
    out: &KGrid,
    lambdas: &[f64],
) -> Result<Vec<f64>> {
    let norm = f.norm_sqr();
    if norm == 0.0 {
        return Ok(vec![0.0; lambdas.len()]);
    }
    let sections = helgason_fourier_multi(rep, sigma, f, out, lambdas)?;
    lambdas
        .iter()
        .zip(&sections)
        .map(|(l, s)| Ok(plancherel_density(*l, rep.n())? * s.norm_sqr(out) / (radius * norm)))
        .collect()
}
