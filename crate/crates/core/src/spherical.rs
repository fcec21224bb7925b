//! tau-spherical functions of the spinor bundle: closed form on A through
//! Jacobi functions, the Eisenstein integral over K, and their asymptotics.
//! All radial variables are geodesic.

use num_complex::Complex64;

use crate::clifford::CliffordGroupElement;
use crate::error::{Error, Result};
use crate::linalg::{c, identity, op_norm, CMatrix};
use crate::quadrature::{integrate_k, KGrid};
use crate::special::{hc_c_function, jacobi_phi, JacobiParams};
use crate::spin::{Sigma, SpinRepresentation, Variant};
use crate::vahlen::{geodesic_a, iwasawa_height, VahlenElement};

/// The data `(n, tau, sigma, lambda)` of a spherical function, with the
/// representation and projectors it needs.
#[derive(Clone, Debug)]
pub struct SphericalSpec {
    pub n: usize,
    pub sigma: Sigma,
    pub lambda: Complex64,
    rep: SpinRepresentation,
    p_sigma: CMatrix,
    p_weyl: CMatrix,
}

impl SphericalSpec {
    /// `variant` picks tau (Plus/Minus for n even, Full for n odd); `sigma`
    /// must lie in the branching set of tau.
    pub fn new(n: usize, variant: Variant, sigma: Sigma, lambda: Complex64) -> Result<Self> {
        let rep = SpinRepresentation::build(n, variant)?;
        Self::with_rep(rep, sigma, lambda)
    }

    pub fn with_rep(rep: SpinRepresentation, sigma: Sigma, lambda: Complex64) -> Result<Self> {
        let n = rep.n();
        let p_sigma = rep.isotypic_projector(sigma)?.matrix;
        let p_weyl = rep.isotypic_projector(weyl_sigma(n, sigma))?.matrix;
        Ok(Self {
            n,
            sigma,
            lambda,
            rep,
            p_sigma,
            p_weyl,
        })
    }

    /// Same representation and sigma at another spectral parameter.
    pub fn at(&self, lambda: Complex64) -> Self {
        Self {
            lambda,
            ..self.clone()
        }
    }

    pub fn rep(&self) -> &SpinRepresentation {
        &self.rep
    }

    pub fn p_sigma(&self) -> &CMatrix {
        &self.p_sigma
    }

    /// Projector on the Weyl-conjugate type `w sigma`.
    pub fn p_weyl(&self) -> &CMatrix {
        &self.p_weyl
    }

    pub fn rho(&self) -> f64 {
        0.5 * (self.n as f64 - 1.0)
    }

    pub fn d(&self) -> f64 {
        self.rep.d_tau_sigma() as f64
    }
}

/// w sigma: trivial for n even, swaps the grading blocks for n odd.
pub fn weyl_sigma(n: usize, sigma: Sigma) -> Sigma {
    if n % 2 == 0 {
        sigma
    } else {
        sigma.weyl()
    }
}

/// Scalar components on A: `[phi]` for n even, `[phi^+_sigma, phi^-_sigma]`
/// (coefficients of `P_+` and `P_-`) for n odd.
pub fn scalar_components(spec: &SphericalSpec, t: f64) -> Result<Vec<Complex64>> {
    let n = spec.n;
    let (p1, p2) = JacobiParams::spinor_pairs(n);
    let l2 = spec.lambda * 2.0;
    let u = 0.5 * t.abs();
    let even = jacobi_phi(p1, l2, u)? * u.cosh();
    if n % 2 == 0 {
        return Ok(vec![even]);
    }
    let odd = Complex64::i() * (l2 / n as f64) * u.sinh() * jacobi_phi(p2, l2, u)?;
    let s = if spec.sigma == Sigma::Plus { 1.0 } else { -1.0 };
    Ok(vec![even + odd * s, even - odd * s])
}

/// `Phi(a_t)` from the closed form.
pub fn spherical_matrix(spec: &SphericalSpec, t: f64) -> Result<CMatrix> {
    let comps = scalar_components(spec, t)?;
    let d = spec.rep.dim();
    if spec.n % 2 == 0 {
        return Ok(identity(d) * comps[0]);
    }
    let pp = spec.rep.isotypic_projector(Sigma::Plus)?.matrix;
    let pm = spec.rep.isotypic_projector(Sigma::Minus)?.matrix;
    Ok(pp * comps[0] + pm * comps[1])
}

/// `Phi(g) = tau(k2)^{-1} Phi(a_t) tau(k1)^{-1}` for `g = k1 a_t k2`.
pub fn spherical_at(spec: &SphericalSpec, g: &VahlenElement) -> Result<CMatrix> {
    let f = g.cartan()?;
    let phi = spherical_matrix(spec, 2.0 * f.t)?;
    let t1 = spec.rep.evaluate_inverse(&f.k1.k_value())?;
    let t2 = spec.rep.evaluate_inverse(&f.k2.k_value())?;
    Ok(t2 * phi * t1)
}

/// `exp(-(i lambda + rho) H(g^{-1} k)) tau(kappa(g^{-1} k)) P_sigma tau(k)^{-1}`.
pub fn eisenstein_integrand(
    spec: &SphericalSpec,
    g_inv: &VahlenElement,
    k: &CliffordGroupElement,
) -> Result<CMatrix> {
    let h = g_inv.mul(&VahlenElement::make_k(k));
    let weight = (-(Complex64::i() * spec.lambda + spec.rho()) * iwasawa_height(&h)).exp();
    let tk = spec.rep.evaluate(&h.kappa())?;
    let tinv = spec.rep.evaluate_inverse(k)?;
    Ok(tk * &spec.p_sigma * tinv * weight)
}

/// `d_{tau,sigma} int_K` of [`eisenstein_integrand`].
pub fn eisenstein_integral(
    spec: &SphericalSpec,
    g: &VahlenElement,
    grid: &KGrid,
    m_samples: &[CliffordGroupElement],
) -> Result<CMatrix> {
    let g_inv = g.inverse();
    let v = integrate_k(|k| eisenstein_integrand(spec, &g_inv, k), grid, m_samples)?;
    Ok(v * c(spec.d(), 0.0))
}

/// `sum_s exp((i s lambda - rho) t) c(s lambda) P_{s sigma}`, the leading term
/// of `Phi(a_t)`, scaled by `factor`.
pub fn leading_term(spec: &SphericalSpec, t: f64, factor: f64) -> Result<CMatrix> {
    let il = Complex64::i() * spec.lambda;
    let rho = spec.rho();
    let plus = hc_c_function(spec.lambda, spec.n)? * ((il - rho) * t).exp();
    let minus = hc_c_function(-spec.lambda, spec.n)? * ((-il - rho) * t).exp();
    Ok((&spec.p_sigma * plus + &spec.p_weyl * minus) * c(factor, 0.0))
}

/// Operator norm of `Phi(a_t)` minus the leading term with the given factor.
pub fn asymptotic_defect_with(spec: &SphericalSpec, t: f64, factor: f64) -> Result<f64> {
    if spec.lambda == c(0.0, 0.0) {
        return Err(Error::Pole("asymptotic defect at lambda = 0".into()));
    }
    let phi = spherical_matrix(spec, t)?;
    Ok(op_norm(&(phi - leading_term(spec, t, factor)?)))
}

/// [`asymptotic_defect_with`] using the constant `c(lambda)` itself.
pub fn asymptotic_defect(spec: &SphericalSpec, t: f64) -> Result<f64> {
    asymptotic_defect_with(spec, t, 1.0)
}

/// The factor multiplying `c(s lambda)` in the true leading term of `Phi(a_t)`:
/// 1 for n odd and 1/2 for n even (only the cosh part survives there).
pub fn true_leading_factor(n: usize) -> f64 {
    if n % 2 == 0 {
        0.5
    } else {
        1.0
    }
}

/// `exp((rho - i lambda) t) Phi(a_t) - c(lambda) P_sigma`, for `Re(i lambda) > 0`.
pub fn fatou_limit_check(spec: &SphericalSpec, t: f64) -> Result<CMatrix> {
    let il = Complex64::i() * spec.lambda;
    if il.re <= 0.0 {
        return Err(Error::Range(format!("Fatou limit needs Re(i lambda) > 0, got {}", il.re)));
    }
    let phi = spherical_matrix(spec, t)?;
    let scaled = phi * ((spec.rho() - il) * t).exp();
    let limit = &spec.p_sigma * (hc_c_function(spec.lambda, spec.n)? * true_leading_factor(spec.n));
    Ok(scaled - limit)
}

/// `geodesic_a` shortcut for the group of a spec.
pub fn a_t(spec: &SphericalSpec, t: f64) -> VahlenElement {
    geodesic_a(spec.n - 1, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_m_element, random_unit_group_element, Stream};

    fn spec(n: usize, sigma: Sigma, l: Complex64) -> SphericalSpec {
        let variant = if n % 2 == 0 { Variant::Plus } else { Variant::Full };
        SphericalSpec::new(n, variant, sigma, l).unwrap()
    }

    fn sigma_for(n: usize) -> Sigma {
        if n % 2 == 0 {
            Sigma::Full
        } else {
            Sigma::Plus
        }
    }

    fn m_samples(n: usize, rng: &mut Stream) -> Vec<CliffordGroupElement> {
        (0..3).map(|_| random_m_element(n - 1, rng)).collect()
    }

    #[test]
    fn components_at_origin_and_weyl_symmetry() {
        let s = spec(3, Sigma::Plus, c(1.1, 0.0));
        for v in scalar_components(&s, 0.0).unwrap() {
            assert!((v - 1.0).norm() < 1e-15);
        }
        let a = scalar_components(&spec(3, Sigma::Plus, c(-1.1, 0.0)), 0.8).unwrap();
        let b = scalar_components(&spec(3, Sigma::Minus, c(1.1, 0.0)), 0.8).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-12);
        }
        // the odd parts cancel in the sum
        let (p1, _) = JacobiParams::spinor_pairs(3);
        let comps = scalar_components(&s, 1.3).unwrap();
        let sum = 2.0 * (0.65f64).cosh() * jacobi_phi(p1, c(2.2, 0.0), 0.65).unwrap();
        assert!((comps[0] + comps[1] - sum).norm() < 1e-12);
    }

    #[test]
    fn matrix_is_identity_at_origin_and_commutes_with_m() {
        let mut rng = Stream::new(7, 0);
        for n in 2..=5 {
            let s = spec(n, sigma_for(n), c(0.9, 0.0));
            let id = spherical_matrix(&s, 0.0).unwrap();
            assert!((id - identity(s.rep().dim())).norm() < 1e-14);
            let phi = spherical_matrix(&s, 1.7).unwrap();
            for _ in 0..5 {
                let tm = s.rep().evaluate(&random_m_element(n - 1, &mut rng)).unwrap();
                assert!((&tm * &phi - &phi * &tm).norm() < 1e-12);
            }
        }
        let s = spec(3, Sigma::Plus, c(1.0, 0.0));
        let comps = scalar_components(&s, 1.0).unwrap();
        let tr = spherical_matrix(&s, 1.0).unwrap().trace();
        assert!((tr - (comps[0] + comps[1])).norm() < 1e-13);
    }

    #[test]
    fn eisenstein_at_identity_is_identity() {
        let mut rng = Stream::new(8, 0);
        for n in 2..=4 {
            let s = spec(n, sigma_for(n), c(1.3, 0.0));
            let grid = KGrid::descended(n, 16).unwrap();
            let ms = m_samples(n, &mut rng);
            let v = eisenstein_integral(&s, &VahlenElement::identity(n - 1), &grid, &ms).unwrap();
            assert!((v - identity(s.rep().dim())).norm() < 1e-8);
        }
    }

    #[test]
    fn eisenstein_matches_closed_form() {
        let mut rng = Stream::new(9, 0);
        for (n, order) in [(2, 256), (3, 64)] {
            let ms = m_samples(n, &mut rng);
            let grid = KGrid::descended(n, order).unwrap();
            for sigma in if n == 2 { vec![Sigma::Full] } else { vec![Sigma::Plus, Sigma::Minus] } {
                let s = spec(n, sigma, c(1.0, 0.0));
                for t in [0.3, 1.5] {
                    let quad = eisenstein_integral(&s, &a_t(&s, t), &grid, &ms).unwrap();
                    let closed = spherical_matrix(&s, t).unwrap();
                    let err = op_norm(&(quad - &closed)) / op_norm(&closed);
                    assert!(err < 1e-6, "n={n} sigma={sigma} t={t} err={err:e}");
                }
            }
        }
    }

    #[test]
    fn radiality_of_eisenstein_integral() {
        let mut rng = Stream::new(10, 0);
        let n = 3;
        let s = spec(n, Sigma::Minus, c(0.7, 0.0));
        let grid = KGrid::descended(n, 48).unwrap();
        let ms = m_samples(n, &mut rng);
        let g = VahlenElement::make_k(&random_unit_group_element(2, &mut rng))
            .mul(&a_t(&s, 0.8))
            .mul(&VahlenElement::make_n(&[0.3, -0.2]));
        let k1 = random_unit_group_element(2, &mut rng);
        let k2 = random_unit_group_element(2, &mut rng);
        let moved = VahlenElement::make_k(&k1).mul(&g).mul(&VahlenElement::make_k(&k2));
        let lhs = eisenstein_integral(&s, &moved, &grid, &ms).unwrap();
        let base = eisenstein_integral(&s, &g, &grid, &ms).unwrap();
        let rhs = s.rep().evaluate_inverse(&k2).unwrap() * base * s.rep().evaluate_inverse(&k1).unwrap();
        assert!((lhs - &rhs).norm() < 1e-7);
        // and the closed form through the Cartan decomposition agrees
        let closed = spherical_at(&s, &moved).unwrap();
        assert!((closed - rhs).norm() < 1e-7);
    }

    #[test]
    fn fatou_limit_block_structure() {
        let s = spec(3, Sigma::Plus, c(1.0, -1.0));
        let d8 = fatou_limit_check(&s, 8.0).unwrap();
        assert!(op_norm(&d8) < 1e-3);
        let d9 = fatou_limit_check(&s, 9.0).unwrap();
        assert!(op_norm(&d9) < op_norm(&d8));
        assert!(fatou_limit_check(&spec(3, Sigma::Plus, c(1.0, 0.0)), 8.0).is_err());
    }
}
