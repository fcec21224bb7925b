//! Quadrature on spheres, on K = Spin(n) and on geodesic balls of H^n.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::clifford::{CliffordElement, CliffordGroupElement, Paravector};
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::special::log_gamma;
use crate::vahlen::{section_rotor, VahlenElement};

/// Nodes and weights of a 1-D rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss–Jacobi rule for the weight `(1-x)^a (1+x)^b` (Golub–Welsch).
pub fn gauss_jacobi(order: usize, a: f64, b: f64) -> Result<Rule1d> {
    if order == 0 || a <= -1.0 || b <= -1.0 {
        return Err(Error::Range(format!("gauss_jacobi({order}, {a}, {b})")));
    }
    let mut jm = DMatrix::<f64>::zeros(order, order);
    for k in 0..order {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        jm[(k, k)] = if s.abs() < 1e-300 || (s + 2.0).abs() < 1e-300 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        if k + 1 < order {
            let k1 = kf + 1.0;
            let s1 = 2.0 * k1 + a + b;
            let num = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
            let den = s1 * s1 * (s1 + 1.0) * (s1 - 1.0);
            let off = (num / den).sqrt();
            jm[(k, k + 1)] = off;
            jm[(k + 1, k)] = off;
        }
    }
    let mu0 = ((a + b + 1.0) * 2f64.ln() + lg(a + 1.0)? + lg(b + 1.0)? - lg(a + b + 2.0)?).exp();
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(Rule1d {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

fn lg(x: f64) -> Result<f64> {
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

pub fn gauss_legendre(order: usize) -> Result<Rule1d> {
    gauss_jacobi(order, 0.0, 0.0)
}

/// Composite Gauss–Legendre rule on `[lo, hi]` with equal panels.
pub fn composite_legendre(lo: f64, hi: f64, panels: usize, order: usize) -> Result<Rule1d> {
    let base = gauss_legendre(order)?;
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    Ok(Rule1d { nodes, weights })
}

/// Normalized quadrature on the unit sphere S^dim of R^{dim+1}.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

/// Product grid: `order` Gauss–Jacobi nodes in the first coordinate
/// recursively down to `2 * order` uniform angles on the circle (offset by
/// half a step); for dim 1 `order` is the number of angles.
pub fn sphere_grid(dim: usize, order: usize) -> Result<SphereGrid> {
    if !(1..=4).contains(&dim) || order == 0 {
        return Err(Error::Range(format!("sphere_grid({dim}, {order})")));
    }
    if dim == 1 {
        let nodes = (0..order)
            .map(|j| {
                let th = 2.0 * PI * (j as f64 + 0.5) / order as f64;
                vec![th.cos(), th.sin()]
            })
            .collect();
        return Ok(SphereGrid {
            dim,
            nodes,
            weights: vec![1.0 / order as f64; order],
        });
    }
    let sub_order = if dim == 2 { 2 * order } else { order };
    let sub = sphere_grid(dim - 1, sub_order)?;
    let e = 0.5 * (dim as f64 - 2.0);
    let polar = gauss_jacobi(order, e, e)?;
    let total: f64 = polar.weights.iter().sum();
    let mut nodes = Vec::with_capacity(order * sub.nodes.len());
    let mut weights: Vec<f64> = Vec::with_capacity(order * sub.nodes.len());
    for (x, w) in polar.nodes.iter().zip(&polar.weights) {
        let r = (1.0 - x * x).max(0.0).sqrt();
        for (y, v) in sub.nodes.iter().zip(&sub.weights) {
            let mut p = Vec::with_capacity(dim + 1);
            p.push(*x);
            p.extend(y.iter().map(|yi| r * yi));
            nodes.push(p);
            weights.push(w / total * v);
        }
    }
    let sum: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= sum);
    Ok(SphereGrid { dim, nodes, weights })
}

/// `k(xi) = diag(u, u')` with `u 1 (u')^{-1} = xi`; `k(1)` is the identity.
pub fn k_section(xi: &Paravector) -> VahlenElement {
    VahlenElement::make_k(&section_rotor(xi))
}

/// Weighted rotors covering K (full grid) or a section of K -> K/M.
#[derive(Clone, Debug)]
pub struct KGrid {
    pub n: usize,
    pub rotors: Vec<CliffordGroupElement>,
    pub weights: Vec<f64>,
    pub descended: bool,
}

impl KGrid {
    /// Section over a grid of S^{n-1} = K/M; valid for M-invariant integrands.
    pub fn descended(n: usize, order: usize) -> Result<Self> {
        let sphere = sphere_grid(n - 1, order)?;
        let rotors = sphere
            .nodes
            .iter()
            .map(|p| section_rotor(&Paravector::from_coords(p)))
            .collect();
        Ok(Self {
            n,
            rotors,
            weights: sphere.weights,
            descended: true,
        })
    }

    /// Grid on all of K for n = 2 (circle) and n = 3 (unit quaternions).
    pub fn full(n: usize, order: usize) -> Result<Self> {
        let (masks, dim): (&[usize], usize) = match n {
            2 => (&[0, 1], 1),
            3 => (&[0, 1, 2, 3], 3),
            _ => return Err(Error::Range(format!("full K grid needs n in {{2, 3}}, got {n}"))),
        };
        let sphere = sphere_grid(dim, order)?;
        let rotors = sphere
            .nodes
            .iter()
            .map(|p| {
                let mut u = CliffordElement::zero(n - 1);
                for (mask, v) in masks.iter().zip(p) {
                    u.set_coeff(*mask, *v);
                }
                CliffordGroupElement::new_unchecked(u).normalized()
            })
            .collect();
        Ok(Self {
            n,
            rotors,
            weights: sphere.weights,
            descended: false,
        })
    }

    pub fn len(&self) -> usize {
        self.rotors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotors.is_empty()
    }
}

/// Matrix-valued integral over K. For a descended grid, `m_samples` are used
/// to confirm `f(k m) = f(k)` on a few nodes before integrating.
pub fn integrate_k<F>(f: F, grid: &KGrid, m_samples: &[CliffordGroupElement]) -> Result<CMatrix>
where
    F: Fn(&CliffordGroupElement) -> Result<CMatrix> + Sync,
{
    if grid.descended {
        if m_samples.is_empty() {
            return Err(Error::Invariant("descended grid needs M samples".into()));
        }
        let step = (grid.len() / 4).max(1);
        for (j, m) in m_samples.iter().enumerate() {
            let k = &grid.rotors[(j * step) % grid.len()];
            let a = f(k)?;
            let b = f(&k.mul(m))?;
            let scale = a.norm().max(1.0);
            let diff = (a - b).norm() / scale;
            if diff > 1e-8 {
                return Err(Error::Invariant(format!(
                    "integrand is not M-invariant (defect {diff:.3e})"
                )));
            }
        }
    }
    let values: Vec<Result<CMatrix>> = grid.rotors.par_iter().map(&f).collect();
    let mut acc: Option<CMatrix> = None;
    for (v, w) in values.into_iter().zip(&grid.weights) {
        let v = v? * c(*w, 0.0);
        match &mut acc {
            None => acc = Some(v),
            Some(a) => *a += v,
        }
    }
    acc.ok_or_else(|| Error::Range("empty grid".into()))
}

/// Scalar integral over K; same M-invariance contract as [`integrate_k`].
pub fn integrate_k_scalar<F>(f: F, grid: &KGrid, m_samples: &[CliffordGroupElement]) -> Result<Complex64>
where
    F: Fn(&CliffordGroupElement) -> Result<Complex64> + Sync,
{
    let m = integrate_k(
        |k| Ok(CMatrix::from_element(1, 1, f(k)?)),
        grid,
        m_samples,
    )?;
    Ok(m[(0, 0)])
}

/// Geodesic ball B(R) in Cartan coordinates `k a_s`, measure `(2 sinh s)^{n-1} ds dk`.
#[derive(Clone, Debug)]
pub struct BallGrid {
    pub n: usize,
    pub radius: f64,
    pub radial: Rule1d,
    pub k: KGrid,
}

impl BallGrid {
    pub fn new(n: usize, radius: f64, panels: usize, order: usize, k: KGrid) -> Result<Self> {
        if radius <= 0.0 || k.n != n {
            return Err(Error::Range(format!("ball grid R = {radius}, n = {n}")));
        }
        let mut radial = composite_legendre(0.0, radius, panels, order)?;
        for (s, w) in radial.nodes.iter().zip(radial.weights.iter_mut()) {
            *w *= (2.0 * s.sinh()).powi(n as i32 - 1);
        }
        Ok(Self { n, radius, radial, k })
    }

    pub fn total_weight(&self) -> f64 {
        self.radial.weights.iter().sum::<f64>() * self.k.weights.iter().sum::<f64>()
    }
}

/// `int_0^R (2 sinh s)^{n-1} ds` in closed form for n = 2, 3.
pub fn ball_volume(n: usize, r: f64) -> Option<f64> {
    match n {
        2 => Some(2.0 * (r.cosh() - 1.0)),
        3 => Some((2.0 * r).sinh() - 2.0 * r),
        _ => None,
    }
}
