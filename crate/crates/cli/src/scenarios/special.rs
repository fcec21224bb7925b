use hyperspinor_core::linalg::c;
use hyperspinor_core::special::{
    c_small, gamma0, hc_c_function, jacobi_phi, jacobi_phi_expansion, jacobi_phi_series, plancherel_density,
    printed_density, JacobiParams, JACOBI_SWITCH_T,
};

use super::{geomspace, linspace};
use crate::config::Settings;
use crate::error::CliResult;
use crate::report::Report;

pub fn connection_defaults() -> Settings {
    Settings {
        n: vec![2, 3, 4, 5],
        lambda: vec![0.7, 1.0, 2.3],
        t: linspace(1.2, 4.0, 21),
        ..Settings::default()
    }
}

fn pair_label(p: JacobiParams) -> String {
    format!("alpha={} beta={}", p.alpha, p.beta)
}

/// Hypergeometric series against the c-function expansion on the t grid,
/// then the Jacobi ODE by 5-point differences (h = 1e-3, 20 points).
pub fn connection(s: &Settings, r: &mut Report) -> CliResult<()> {
    let mut worst: f64 = 0.0;
    let mut residual: f64 = 0.0;
    let h = 1e-3;
    for &n in &s.n {
        let (p1, p2) = JacobiParams::spinor_pairs(n);
        for p in [p1, p2] {
            let route = pair_label(p);
            for &l in &s.lambda {
                let lc = c(l, 0.0);
                for &t in &s.t {
                    let series = jacobi_phi_series(p, lc, t)?;
                    let expansion = jacobi_phi_expansion(p, lc, t)?;
                    worst = worst.max(r.push(n, "-", l, t, expansion, series, &format!("connection {route}")));
                }
                let phi = |t: f64| jacobi_phi(p, lc, t);
                for i in 0..20 {
                    let t = 0.2 + 0.19 * i as f64;
                    if (t - JACOBI_SWITCH_T).abs() < 3.0 * h {
                        continue;
                    }
                    let f = [phi(t - 2.0 * h)?, phi(t - h)?, phi(t)?, phi(t + h)?, phi(t + 2.0 * h)?];
                    let d1 = (f[0] - f[1] * 8.0 + f[3] * 8.0 - f[4]) / (12.0 * h);
                    let d2 = (-f[0] + f[1] * 16.0 - f[2] * 30.0 + f[3] * 16.0 - f[4]) / (12.0 * h * h);
                    let coef = (2.0 * p.alpha + 1.0) / t.tanh() + (2.0 * p.beta + 1.0) * t.tanh();
                    let res = (d2 + d1 * coef + f[2] * (l * l + p.rho() * p.rho())).norm();
                    residual = residual.max(res);
                    r.push_raw(n, "-", l, t, c(res, 0.0), c(0.0, 0.0), res, res, &format!("ode-residual {route}"));
                }
            }
        }
    }
    r.summarize("max_connection_rel_err", worst);
    r.summarize("max_ode_residual", residual);
    r.require(worst < 1e-8, format!("connection rel err {worst:e}"));
    r.require(residual < 1e-7, format!("ODE residual {residual:e}"));
    Ok(())
}

pub fn c_function_defaults() -> Settings {
    Settings {
        n: vec![2, 3, 4, 5],
        lambda: geomspace(0.1, 100.0, 61),
        ..Settings::default()
    }
}

pub fn c_function(s: &Settings, r: &mut Report) -> CliResult<()> {
    let mut worst: f64 = 0.0;
    let mut ratio_spread: f64 = 0.0;
    for &n in &s.n {
        let (p1, _) = JacobiParams::spinor_pairs(n);
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        let mut printed = Vec::new();
        for &l in &s.lambda {
            let lc = c(l, 0.0);
            let cc = hc_c_function(lc, n)?;
            let nu = plancherel_density(l, n)?;
            let lhs = 2.0 * cc.norm_sqr();
            worst = worst.max(r.push(n, "-", l, 0.0, c(lhs, 0.0), c(gamma0(n) / nu, 0.0), "algebraic"));
            let ratio = cc / c_small(p1, lc * 2.0)?;
            ratio_spread = ratio_spread.max((ratio - 1.0).norm());
            let w = nu / (1.0 + l).powi(n as i32 - 1);
            lo = lo.min(w);
            hi = hi.max(w);
            printed.push(printed_density(l, n) / nu);
        }
        r.summarize(&format!("window_lo_n{n}"), lo);
        r.summarize(&format!("window_hi_n{n}"), hi);
        r.require(lo > 0.0 && hi.is_finite(), format!("n={n}: growth window [{lo:e}, {hi:e}]"));
        if let (Some(first), Some(last)) = (printed.first(), printed.last()) {
            r.summarize(&format!("printed_density_ratio_n{n}"), *first);
            r.summarize(&format!("printed_density_ratio_spread_n{n}"), (last / first - 1.0).abs());
        }
    }
    r.summarize("max_rel_err", worst);
    r.summarize("c_over_c_small_max_dev", ratio_spread);
    r.notes.push("printed-density ratios are informational".into());
    r.require(worst < 1e-12, format!("2|c|^2 vs gamma0/nu rel err {worst:e}"));
    Ok(())
}
