use hyperspinor_core::linalg::c;
use hyperspinor_core::special::*;

fn pairs() -> Vec<JacobiParams> {
    (2..=5)
        .flat_map(|n| {
            let (a, b) = JacobiParams::spinor_pairs(n);
            [a, b]
        })
        .collect()
}

#[test]
fn connection_identity_on_grid() {
    let mut worst: f64 = 0.0;
    for p in pairs() {
        for l in [0.7, 1.0, 2.3] {
            for i in 0..21 {
                let t = 1.2 + 2.8 * i as f64 / 20.0;
                let series = jacobi_phi_series(p, c(l, 0.0), t).unwrap();
                let expansion = jacobi_phi_expansion(p, c(l, 0.0), t).unwrap();
                worst = worst.max((series - expansion).norm() / series.norm());
            }
        }
    }
    assert!(worst < 1e-8, "worst relative error {worst:e}");
}

#[test]
fn jacobi_ode_residual() {
    let h = 1e-3;
    for p in pairs() {
        for l in [0.7, 2.3] {
            let phi = |t: f64| jacobi_phi(p, c(l, 0.0), t).unwrap();
            for i in 0..20 {
                let t = 0.2 + 0.19 * i as f64;
                if (t - JACOBI_SWITCH_T).abs() < 3.0 * h {
                    continue;
                }
                let f = [phi(t - 2.0 * h), phi(t - h), phi(t), phi(t + h), phi(t + 2.0 * h)];
                let d1 = (f[0] - f[1] * 8.0 + f[3] * 8.0 - f[4]) / (12.0 * h);
                let d2 = (-f[0] + f[1] * 16.0 - f[2] * 30.0 + f[3] * 16.0 - f[4]) / (12.0 * h * h);
                let coef = (2.0 * p.alpha + 1.0) / t.tanh() + (2.0 * p.beta + 1.0) * t.tanh();
                let r = d2 + d1 * coef + f[2] * (l * l + p.rho() * p.rho());
                assert!(r.norm() < 1e-7, "alpha={} beta={} l={l} t={t} residual={}", p.alpha, p.beta, r.norm());
            }
        }
    }
}

#[test]
fn theta_remainder_is_bounded() {
    let mut worst: f64 = 0.0;
    for p in pairs() {
        for i in 0..=15 {
            let l = 0.25 * 16f64.powf(i as f64 / 15.0);
            for j in 0..=18 {
                let t = 1.0 + 0.5 * j as f64;
                worst = worst.max(theta_remainder(p, c(l, 0.0), t).unwrap().norm());
            }
        }
    }
    assert!(worst <= 50.0, "sup |Theta| = {worst}");
}

#[test]
fn plancherel_density_growth_window() {
    for n in 2..=5 {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..=200 {
            let l = 0.1 * 1000f64.powf(i as f64 / 200.0);
            let r = plancherel_density(l, n).unwrap() / (1.0 + l).powi(n as i32 - 1);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        assert!(lo > 0.0 && hi / lo < 50.0, "n={n} [{lo}, {hi}]");
    }
}

#[test]
fn printed_density_ratio_is_constant_in_lambda() {
    for n in 2..=5 {
        let r: Vec<f64> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|l| printed_density(*l, n) / plancherel_density(*l, n).unwrap())
            .collect();
        for x in &r {
            assert!((x / r[0] - 1.0).abs() < 1e-10, "n={n} ratios {r:?}");
        }
    }
}
