use hyperspinor_core::clifford::CliffordGroupElement;
use hyperspinor_core::linalg::{c, identity, op_norm};
use hyperspinor_core::quadrature::KGrid;
use hyperspinor_core::sampling::random_m_element;
use hyperspinor_core::special::hc_c_function;
use hyperspinor_core::spherical::{
    a_t, eisenstein_integral, leading_term, spherical_matrix, true_leading_factor, SphericalSpec,
};
use hyperspinor_core::transforms::{intertwiner_u, poisson_transform, WeylElement};
use num_complex::Complex64;
use rayon::prelude::*;

use super::{fit_slope, geomspace, linspace, moderate_point, random_combo, rep_for, stream};
use crate::config::Settings;
use crate::error::CliResult;
use crate::report::Report;

fn spec_for(n: usize, label: hyperspinor_core::spin::Sigma, lambda: Complex64) -> CliResult<SphericalSpec> {
    let (rep, sigma) = rep_for(n, label)?;
    Ok(SphericalSpec::with_rep(rep, sigma, lambda)?)
}

/// Sphere-grid order used when the settings leave it open.
fn default_order(n: usize) -> usize {
    match n {
        2 => 256,
        3 => 64,
        _ => 16,
    }
}

pub fn eisenstein_defaults() -> Settings {
    Settings {
        n: vec![2, 3],
        lambda: vec![0.7, 1.0, 2.0],
        t: vec![0.3, 1.0, 2.0],
        ..Settings::default()
    }
}

pub fn eisenstein(s: &Settings, r: &mut Report) -> CliResult<()> {
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let mut rng = stream(s, 500 + idx as u64);
        let ms: Vec<CliffordGroupElement> = (0..3).map(|_| random_m_element(n - 1, &mut rng)).collect();
        let grid = KGrid::descended(n, s.grid.unwrap_or(default_order(n)))?;
        let base = spec_for(n, label, c(1.0, 0.0))?;
        let points: Vec<(f64, f64)> = s.lambda.iter().flat_map(|&l| s.t.iter().map(move |&t| (l, t))).collect();
        let results: CliResult<Vec<_>> = points
            .par_iter()
            .map(|&(l, t)| {
                let spec = base.at(c(l, 0.0));
                let quad = eisenstein_integral(&spec, &a_t(&spec, t), &grid, &ms)?;
                Ok((quad, spherical_matrix(&spec, t)?))
            })
            .collect();
        for ((l, t), (quad, closed)) in points.iter().zip(results?) {
            let err = r.push_matrix(n, label.label(), *l, *t, &quad, &closed, "quadrature vs closed-form");
            r.require(err < 1e-6, format!("n={n} sigma={label} lambda={l} t={t}: rel err {err:e}"));
        }
    }
    r.summarize("max_rel_err", r.max_rel_err());
    Ok(())
}

pub fn asymptotics_defaults() -> Settings {
    Settings {
        n: vec![2, 3],
        lambda: geomspace(0.25, 4.0, 9),
        t: linspace(1.0, 10.0, 19),
        ..Settings::default()
    }
}

/// Literal leading term with `c(lambda)`; the scaled sup and the decay slope
/// at the lambda closest to 1 decide the outcome. The same statistics with
/// the factor measured for n even are reported alongside.
pub fn asymptotics(s: &Settings, r: &mut Report) -> CliResult<()> {
    let slope_lambda = s
        .lambda
        .iter()
        .copied()
        .min_by(|a, b| (a - 1.0).abs().total_cmp(&(b - 1.0).abs()))
        .unwrap_or(1.0);
    for (n, label) in s.types() {
        let base = spec_for(n, label, c(1.0, 0.0))?;
        let rho = base.rho();
        let key = format!("n{n}_{}", label.label());
        for factor in [1.0, true_leading_factor(n)] {
            let literal = factor == 1.0;
            if !literal && true_leading_factor(n) == 1.0 {
                continue;
            }
            let mut sup: f64 = 0.0;
            let mut slope_logs = Vec::new();
            for &l in &s.lambda {
                let spec = base.at(c(l, 0.0));
                let cl = hc_c_function(spec.lambda, n)?.norm();
                for &t in &s.t {
                    let phi = spherical_matrix(&spec, t)?;
                    let lead = leading_term(&spec, t, factor)?;
                    let defect = op_norm(&(&phi - &lead));
                    if literal {
                        r.push_matrix(n, label.label(), l, t, &phi, &lead, "closed-form vs leading term");
                    }
                    sup = sup.max(defect * ((rho + 1.0) * t).exp() / cl);
                    if l == slope_lambda {
                        slope_logs.push(defect.ln());
                    }
                }
            }
            let slope = if s.t.len() >= 2 { fit_slope(&s.t, &slope_logs) } else { f64::NAN };
            if literal {
                r.summarize(&format!("scaled_defect_sup_{key}"), sup);
                r.summarize(&format!("decay_slope_{key}"), slope);
                r.require(sup < 100.0, format!("{key}: scaled defect sup {sup:.4e} >= 100"));
                r.require(
                    (slope + rho + 1.0).abs() <= 0.1,
                    format!("{key}: decay slope {slope:.4}, expected {:.2} +- 0.1", -(rho + 1.0)),
                );
            } else {
                r.summarize(&format!("scaled_defect_sup_{key}_factor_{factor}"), sup);
                r.summarize(&format!("decay_slope_{key}_factor_{factor}"), slope);
            }
        }
    }
    Ok(())
}

pub fn fatou_defaults() -> Settings {
    Settings {
        n: vec![3],
        lambda: vec![1.0],
        t: vec![8.0],
        ..Settings::default()
    }
}

/// Spectral parameter `lambda - i` for each listed lambda.
pub fn fatou(s: &Settings, r: &mut Report) -> CliResult<()> {
    for (n, label) in s.types() {
        for &l in &s.lambda {
            let lambda = c(l, -1.0);
            let spec = spec_for(n, label, lambda)?;
            let il = Complex64::i() * lambda;
            let target = spec.p_sigma() * hc_c_function(lambda, n)?;
            let p = spec.p_sigma();
            let q = identity(p.nrows()) - p;
            let mut off_logs = Vec::new();
            for &t in &s.t {
                let scaled = spherical_matrix(&spec, t)? * ((spec.rho() - il) * t).exp();
                r.push_matrix(n, label.label(), l, t, &scaled, &target, "closed-form limit");
                let defect = op_norm(&(&scaled - &target));
                let off = op_norm(&(&q * &scaled)).max(op_norm(&(&scaled * &q)));
                r.push_raw(n, label.label(), l, t, c(off, 0.0), c(0.0, 0.0), off, off, "off-block");
                off_logs.push(off.ln());
                r.require(defect < 1e-3, format!("n={n} sigma={label} t={t}: defect {defect:e}"));
                r.require(off < 1e-6, format!("n={n} sigma={label} t={t}: off-block {off:e}"));
            }
            if s.t.len() >= 2 {
                r.summarize(&format!("off_block_slope_n{n}_{}_lambda{l}", label.label()), fit_slope(&s.t, &off_logs));
            }
        }
    }
    Ok(())
}

pub fn intertwiner_defaults() -> Settings {
    Settings {
        n: vec![2, 3],
        lambda: vec![1.3],
        samples: 5,
        ..Settings::default()
    }
}

/// Four-term p-combinations; `samples` evaluation points for the Poisson side.
pub fn intertwiner(s: &Settings, r: &mut Report) -> CliResult<()> {
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, sigma) = rep_for(n, label)?;
        let grid = KGrid::descended(n, s.grid.unwrap_or(default_order(n)))?;
        let mut rng = stream(s, 600 + idx as u64);
        for &l in &s.lambda {
            let combo = random_combo(n, rep.dim(), sigma, l, 4, &mut rng);
            let flipped = intertwiner_u(&combo, n, WeylElement::W);
            let fa = combo.sample(&rep, &grid)?;
            let fb = flipped.sample(&rep, &grid)?;
            let (na, nb) = (fa.norm_sqr(&grid), fb.norm_sqr(&grid));
            let gram = r.push(n, label.label(), l, 0.0, c(nb, 0.0), c(na, 0.0), "gram");
            r.require(gram < 1e-8, format!("n={n} sigma={label}: Gram rel err {gram:e}"));
            for (gi, a) in combo.terms.iter().enumerate() {
                for (gj, b) in combo.terms.iter().enumerate() {
                    let pa = single(&combo, a);
                    let pb = single(&combo, b);
                    let ua = intertwiner_u(&pa, n, WeylElement::W);
                    let ub = intertwiner_u(&pb, n, WeylElement::W);
                    let lhs = ua.sample(&rep, &grid)?.inner(&ub.sample(&rep, &grid)?, &grid);
                    let rhs = pa.sample(&rep, &grid)?.inner(&pb.sample(&rep, &grid)?, &grid);
                    let err = r.push(n, label.label(), l, (gi * 4 + gj) as f64, lhs, rhs, "gram-entry");
                    r.require(err < 1e-8, format!("n={n} sigma={label}: Gram entry rel err {err:e}"));
                }
            }
            let sa = combo.spec(&rep)?;
            let sb = flipped.spec(&rep)?;
            for _ in 0..s.samples {
                let x = moderate_point(n - 1, &mut rng);
                let pa = poisson_transform(&sa, &fa, &grid, &x)?;
                let pb = poisson_transform(&sb, &fb, &grid, &x)?;
                let err = (&pb - &pa).norm() / pa.norm();
                let t = 2.0 * x.cartan()?.t;
                r.push_raw(n, label.label(), l, t, pb[0], pa[0], (&pb - &pa).norm(), err, "poisson");
                r.require(err < 1e-6, format!("n={n} sigma={label}: Poisson rel err {err:e}"));
            }
        }
    }
    r.summarize("max_rel_err", r.max_rel_err());
    Ok(())
}

fn single(
    combo: &hyperspinor_core::transforms::PFunctionCombo,
    term: &hyperspinor_core::transforms::PTerm,
) -> hyperspinor_core::transforms::PFunctionCombo {
    hyperspinor_core::transforms::PFunctionCombo {
        terms: vec![hyperspinor_core::transforms::PTerm {
            coeff: c(1.0, 0.0),
            ..term.clone()
        }],
        ..combo.clone()
    }
}
