//! Complex log-Gamma, Gauss hypergeometric series, Jacobi functions with their
//! Harish-Chandra expansions, the c-function and the Plancherel density.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const SERIES_REL_TOL: f64 = 1e-16;
const SERIES_MAX_TERMS: usize = 100_000;
/// Jacobi functions switch from the hypergeometric series to the
/// Harish-Chandra expansion above this `t`.
pub const JACOBI_SWITCH_T: f64 = 1.5;

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Bernoulli-number coefficients `B_{2k} / (2k (2k-1))` of the Stirling series.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Principal branch of log Gamma.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(format!("log_gamma({})", z.re)));
    }
    // shift right so the Stirling series is accurate, then undo with the
    // recurrence; principal logs keep the principal branch
    let shift = if z.re < 15.0 { (15.0 - z.re).ceil() as usize } else { 0 };
    let mut w = z;
    let mut acc = cx(0.0);
    for _ in 0..shift {
        acc += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = cx(0.0);
    let mut pow = inv;
    for coef in STIRLING {
        series += pow * coef;
        pow *= inv2;
    }
    let stirling = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series;
    Ok(stirling - acc)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Direct power series of 2F1 for |z| < 1.
pub fn gauss_2f1_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    check_c(c)?;
    if z.abs() >= 1.0 {
        return Err(Error::Range(format!("series needs |z| < 1, got {z}")));
    }
    Ok(series_tail(a, b, c, z)? + 1.0)
}

/// `2F1(a,b;c;z) - 1` summed directly.
fn series_tail(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let mut term = cx(1.0);
    let mut sum = cx(0.0);
    let mut small = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == cx(0.0) {
            return Ok(sum);
        }
        if term.norm() < SERIES_REL_TOL * (1.0 + sum).norm() {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence(format!(
        "2F1({a}, {b}; {c}; {z}) after {SERIES_MAX_TERMS} terms"
    )))
}

/// Pfaff-transformed evaluation `(1-z)^{-a} 2F1(a, c-b; c; z/(z-1))` for z <= 0.
pub fn gauss_2f1_pfaff(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    check_c(c)?;
    if z > 0.0 {
        return Err(Error::Range(format!("Pfaff route expects z <= 0, got {z}")));
    }
    let w = z / (z - 1.0);
    let f = gauss_2f1_series(a, c - b, c, w)?;
    Ok((-a * (1.0 - z).ln()).exp() * f)
}

/// Gauss hypergeometric function for real `z <= 0`: direct series on
/// `(-1/2, 0]`, Pfaff transform below, so the summed argument stays within `[0, 1)` and away from 1 near z = -1.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if z > 0.0 {
        return Err(Error::Range(format!("z = {z} > 0")));
    }
    if z > -0.5 {
        gauss_2f1_series(a, b, c, z)
    } else {
        gauss_2f1_pfaff(a, b, c, z)
    }
}

fn check_c(c: Complex64) -> Result<()> {
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() {
        return Err(Error::Pole(format!("2F1 with c = {}", c.re)));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha <= -1.0 && alpha == alpha.round() {
            return Err(Error::Range(format!("alpha = {alpha} is a negative integer")));
        }
        Ok(Self { alpha, beta })
    }

    /// `alpha + beta + 1`.
    pub fn rho(&self) -> f64 {
        self.alpha + self.beta + 1.0
    }

    /// The two pairs `(n/2-1, n/2)` and `(n/2, n/2-1)`.
    pub fn spinor_pairs(n: usize) -> (Self, Self) {
        let h = n as f64 / 2.0;
        (
            Self {
                alpha: h - 1.0,
                beta: h,
            },
            Self {
                alpha: h,
                beta: h - 1.0,
            },
        )
    }
}

/// Jacobi function through its defining hypergeometric series at `-sinh^2 t`.
pub fn jacobi_phi_series(p: JacobiParams, lambda: Complex64, t: f64) -> Result<Complex64> {
    let il = Complex64::i() * lambda;
    let rho = p.rho();
    let a = (il + rho) * 0.5;
    let b = (-il + rho) * 0.5;
    gauss_2f1(a, b, cx(p.alpha + 1.0), -t.sinh().powi(2))
}

/// Jacobi function `phi_lambda^{(alpha,beta)}(t)`; the series is used for
/// `t <= JACOBI_SWITCH_T` and the expansion `c Psi_lambda + c(-l) Psi_{-l}` above.
pub fn jacobi_phi(p: JacobiParams, lambda: Complex64, t: f64) -> Result<Complex64> {
    let t = t.abs();
    if t <= JACOBI_SWITCH_T {
        jacobi_phi_series(p, lambda, t)
    } else {
        jacobi_phi_expansion(p, lambda, t)
    }
}

/// `c(lambda) Psi_lambda(t) + c(-lambda) Psi_{-lambda}(t)`.
pub fn jacobi_phi_expansion(p: JacobiParams, lambda: Complex64, t: f64) -> Result<Complex64> {
    Ok(c_small(p, lambda)? * psi_branch(p, lambda, t)?
        + c_small(p, -lambda)? * psi_branch(p, -lambda, t)?)
}

/// Jacobi c-function `c_{alpha,beta}(lambda)`.
pub fn c_small(p: JacobiParams, lambda: Complex64) -> Result<Complex64> {
    let il = Complex64::i() * lambda;
    let rho = p.rho();
    let log = (rho * 2f64.ln()) - il * 2f64.ln() + log_gamma(cx(p.alpha + 1.0))? + log_gamma(il)?
        - log_gamma((il + rho) * 0.5)?
        - log_gamma((il + p.alpha - p.beta + 1.0) * 0.5)?;
    Ok(log.exp())
}

fn psi_hypergeometric_tail(p: JacobiParams, lambda: Complex64, t: f64) -> Result<Complex64> {
    let il = Complex64::i() * lambda;
    let rho = p.rho();
    let a = (-il + rho) * 0.5;
    let b = (-il - p.alpha + p.beta + 1.0) * 0.5;
    let c = 1.0 - il;
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() {
        return Err(Error::Pole(format!("Psi at lambda = {lambda}")));
    }
    series_tail(a, b, c, -1.0 / t.sinh().powi(2))
}

/// Second-kind solution `Psi_lambda(t)`, valid for `sinh t > 1`.
pub fn psi_branch(p: JacobiParams, lambda: Complex64, t: f64) -> Result<Complex64> {
    if t.sinh() <= 1.0 {
        return Err(Error::Range(format!("Psi series needs sinh t > 1, got t = {t}")));
    }
    let il = Complex64::i() * lambda;
    let prefactor = ((il - p.rho()) * (2.0 * t.sinh()).ln()).exp();
    Ok(prefactor * (psi_hypergeometric_tail(p, lambda, t)? + 1.0))
}

/// `Theta(lambda, t) = (Psi_lambda(t) e^{-(i lambda - rho) t} - 1) e^{2t}`,
/// evaluated without cancellation.
pub fn theta_remainder(p: JacobiParams, lambda: Complex64, t: f64) -> Result<Complex64> {
    let il = Complex64::i() * lambda;
    let mu = il - p.rho();
    // Psi e^{-mu t} = (1 - e^{-2t})^mu F
    let tail = psi_hypergeometric_tail(p, lambda, t)?;
    let log1m = (-(-2.0 * t).exp()).ln_1p();
    let pow_minus_one = expm1_complex(mu * log1m);
    Ok((pow_minus_one * (tail + 1.0) + tail) * (2.0 * t).exp())
}

fn expm1_complex(z: Complex64) -> Complex64 {
    if z.norm() < 1e-5 {
        z + z * z / 2.0 + z * z * z / 6.0
    } else {
        z.exp() - 1.0
    }
}

/// Harish-Chandra c-function of the spinor bundle.
pub fn hc_c_function(lambda: Complex64, n: usize) -> Result<Complex64> {
    let il = Complex64::i() * lambda;
    let h = n as f64 / 2.0;
    let log = (n as f64) * 2f64.ln() - 2.0 * il * 2f64.ln() + log_gamma(cx(h))? + log_gamma(2.0 * il)?
        - log_gamma(il + h)?
        - log_gamma(il)?;
    Ok(log.exp())
}

/// `nu(lambda) = (2/pi) |c|^{-2}` for n even, `(1/pi) |c|^{-2}` for n odd.
pub fn plancherel_density(lambda: f64, n: usize) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::Pole("plancherel density at lambda = 0".into()));
    }
    let c = hc_c_function(cx(lambda), n)?;
    let k = if n % 2 == 0 { 2.0 / PI } else { 1.0 / PI };
    Ok(k / c.norm_sqr())
}

pub fn gamma0(n: usize) -> f64 {
    if n % 2 == 0 {
        4.0 / PI
    } else {
        2.0 / PI
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// The closed polynomial form of the density as printed in the literature,
/// with the even-case bracket read as a factorial. Used only as a
/// cross-check against [`plancherel_density`].
pub fn printed_density(lambda: f64, n: usize) -> f64 {
    if n % 2 == 0 {
        let h = n / 2;
        let poly: f64 = (1..h).map(|j| lambda * lambda + (j * j) as f64).product();
        2f64.powi(3 - 2 * n as i32) / factorial(h - 1).powi(2) * lambda / (PI * lambda).tanh() * poly
    } else {
        let q = (n - 1) as f64 / 2.0;
        let bracket = q * (q + 1.0) * (n as f64 - 2.0);
        let poly: f64 = (1..=(n - 1) / 2)
            .map(|j| lambda * lambda + (j as f64 - 0.5).powi(2))
            .product();
        0.25 / PI / bracket.powi(2) * poly
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Stream;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_classical_values() {
        assert!(log_gamma(cx(1.0)).unwrap().norm() < 1e-15);
        assert!((log_gamma(cx(0.5)).unwrap() - cx(PI.sqrt().ln())).norm() < 1e-14);
        assert!(log_gamma(cx(0.0)).is_err());
        assert!(log_gamma(cx(-3.0)).is_err());
        // Gamma(i) from |Gamma(iy)|^2 = pi/(y sinh(pi y))
        let g = gamma(c(0.0, 1.0)).unwrap();
        assert!((g.norm_sqr() / (PI / PI.sinh()) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_matches_real_oracle() {
        for k in 1..200 {
            let x = 0.05 + 0.25 * k as f64;
            let ours = log_gamma(cx(x)).unwrap();
            let oracle = statrs::function::gamma::ln_gamma(x);
            assert!((ours.re - oracle).abs() < 1e-12 * (1.0 + oracle.abs()), "x={x}");
            assert!(ours.im.abs() < 1e-14);
        }
    }

    #[test]
    fn log_gamma_reflection() {
        let mut rng = Stream::new(1, 0);
        for _ in 0..1000 {
            let z = c(rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0));
            let lhs = log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap() + (PI * z).sin().ln() - PI.ln();
            let r = lhs.exp();
            assert!((r - 1.0).norm() < 1e-12, "z={z} r={r}");
        }
    }

    #[test]
    fn log_gamma_recurrence_and_conjugation() {
        let mut rng = Stream::new(2, 0);
        for _ in 0..1000 {
            let z = c(rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0));
            let g = gamma(z).unwrap();
            let g1 = gamma(z + 1.0).unwrap();
            assert!((g1 / (z * g) - 1.0).norm() < 1e-12);
            assert!((log_gamma(z.conj()).unwrap() - log_gamma(z).unwrap().conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn hypergeometric_examples() {
        assert_eq!(gauss_2f1(c(0.3, 1.0), cx(2.0), cx(1.5), 0.0).unwrap(), cx(1.0));
        let v = gauss_2f1(cx(1.0), cx(1.0), cx(2.0), -1.0).unwrap();
        assert!((v - cx(2f64.ln())).norm() < 1e-14);
        // -log(1-z)/z at other points
        for z in [-0.3, -0.9, -3.0, -40.0] {
            let v = gauss_2f1(cx(1.0), cx(1.0), cx(2.0), z).unwrap();
            let exact = -(1.0 - z).ln() / z;
            assert!((v - cx(exact)).norm() < 1e-13 * exact.abs(), "z={z}");
        }
        let (a, b, cc) = (c(0.7, 0.4), c(1.2, -0.4), cx(1.5));
        let direct = gauss_2f1_series(a, b, cc, -0.5).unwrap();
        let pfaff = gauss_2f1_pfaff(a, b, cc, -0.5).unwrap();
        assert!((direct - pfaff).norm() < 1e-12);
        assert!(gauss_2f1(a, b, cx(-2.0), -0.2).is_err());
    }

    #[test]
    fn jacobi_examples() {
        let p = JacobiParams::new(1.0, 2.0).unwrap();
        assert_eq!(jacobi_phi(p, cx(1.3), 0.0).unwrap(), cx(1.0));
        let a = jacobi_phi(p, cx(1.3), 0.7).unwrap();
        let b = jacobi_phi(p, cx(-1.3), 0.7).unwrap();
        assert!((a - b).norm() < 1e-12);
        let series = jacobi_phi_series(p, cx(0.9), 2.0).unwrap();
        let expansion = jacobi_phi_expansion(p, cx(0.9), 2.0).unwrap();
        assert!((series - expansion).norm() < 1e-8 * series.norm());
    }

    #[test]
    fn scalar_jacobi_reduces_to_legendre_type_closed_form() {
        // alpha = beta = -1/2: phi_lambda(t) = cos(lambda t)
        let p = JacobiParams::new(-0.5, -0.5).unwrap();
        for t in [0.2, 0.9, 1.4] {
            let v = jacobi_phi_series(p, cx(1.7), t).unwrap();
            assert!((v - cx((1.7 * t).cos())).norm() < 1e-12);
        }
        // alpha = 1/2, beta = -1/2: phi_lambda(t) = sin(lambda t)/(lambda sinh t)
        let p = JacobiParams::new(0.5, -0.5).unwrap();
        for t in [0.3, 1.0, 2.5, 6.0] {
            let v = jacobi_phi(p, cx(1.7), t).unwrap();
            let exact = (1.7 * t).sin() / (1.7 * t.sinh());
            assert!((v - cx(exact)).norm() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn psi_leading_behaviour() {
        let p = JacobiParams::new(1.0, 2.0).unwrap();
        let lambda = cx(1.1);
        let t = 10.0;
        let psi = psi_branch(p, lambda, t).unwrap();
        let lead = (-(Complex64::i() * lambda - p.rho()) * t).exp();
        assert!((psi * lead - 1.0).norm() < 1e-6);
        assert!(psi_branch(p, lambda, 0.5).is_err());
        assert!(psi_branch(p, c(0.0, -1.0), 2.0).is_err());
    }

    #[test]
    fn theta_matches_direct_difference() {
        let p = JacobiParams::new(0.5, 1.5).unwrap();
        let lambda = cx(0.8);
        let t = 2.0;
        let psi = psi_branch(p, lambda, t).unwrap();
        let direct = (psi * (-(Complex64::i() * lambda - p.rho()) * t).exp() - 1.0) * (2.0 * t).exp();
        let theta = theta_remainder(p, lambda, t).unwrap();
        assert!((direct - theta).norm() < 1e-12 * theta.norm().max(1.0));
    }

    #[test]
    fn c_function_duplication_oracle() {
        // n = 2: c(l) = 2 Gamma(il + 1/2) / (sqrt(pi) Gamma(il + 1))
        for l in [0.3, 1.0, 2.5] {
            let il = c(0.0, l);
            let oracle = 2.0 * gamma(il + 0.5).unwrap() / (PI.sqrt() * gamma(il + 1.0).unwrap());
            let v = hc_c_function(cx(l), 2).unwrap();
            assert!((v - oracle).norm() < 1e-13 * oracle.norm());
            // |c|^2 = 4 tanh(pi l)/(pi l)
            assert!((v.norm_sqr() - 4.0 * (PI * l).tanh() / (PI * l)).abs() < 1e-13);
        }
    }

    #[test]
    fn c_function_symmetry_and_identity() {
        for n in 2..=5 {
            for l in [0.5, 1.0, 3.0] {
                let a = hc_c_function(cx(l), n).unwrap().norm();
                let b = hc_c_function(cx(-l), n).unwrap().norm();
                assert!((a - b).abs() < 1e-13 * a);
                let c2 = hc_c_function(cx(l), n).unwrap().norm_sqr();
                let r = 2.0 * c2 * plancherel_density(l, n).unwrap() / gamma0(n);
                assert!((r - 1.0).abs() < 1e-12);
            }
        }
        assert!(plancherel_density(0.0, 3).is_err());
    }

    #[test]
    fn c_function_equals_jacobi_c_at_doubled_argument() {
        for n in 2..=5 {
            let (p, _) = JacobiParams::spinor_pairs(n);
            for l in [0.5, 1.0, 2.0, 4.0] {
                let big = hc_c_function(cx(l), n).unwrap();
                let small = c_small(p, cx(2.0 * l)).unwrap();
                assert!((big / small - 1.0).norm() < 1e-12);
            }
        }
    }
}
