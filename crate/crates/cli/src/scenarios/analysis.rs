use std::f64::consts::PI;

use hyperspinor_core::linalg::{c, CVector};
use hyperspinor_core::quadrature::{composite_legendre, BallGrid, KGrid};
use hyperspinor_core::sampling::random_unit_group_element;
use hyperspinor_core::special::{gamma0, plancherel_density};
use hyperspinor_core::spherical::true_leading_factor;
use hyperspinor_core::transforms::{
    energy_profile, helgason_fourier_multi, inversion_at, restriction_ratios, richardson_limit, star_norm_sqr,
    BumpSection, BundleSection, SampledSection,
};
use hyperspinor_core::vahlen::{geodesic_a, VahlenElement};

use super::{linspace, moderate_point, random_combo, random_vector, rep_for, stream};
use crate::config::Settings;
use crate::error::CliResult;
use crate::report::Report;

/// Radial Gauss–Legendre order per panel of the energy integrals.
const RADIAL_ORDER: usize = 12;

fn boundary_order(n: usize, settings: &Settings) -> usize {
    settings.grid.unwrap_or(if n == 2 { 64 } else { 16 })
}

pub fn strichartz_defaults() -> Settings {
    Settings {
        n: vec![2],
        lambda: vec![1.0],
        rmax: 60.0,
        samples: 3,
        ..Settings::default()
    }
}

/// Energy of `P F` for a random p-combination `F` on balls up to `rmax`
/// (panel width 1/4), against `gamma0 nu^{-1} |F|^2`. The second Richardson
/// radius lies a whole number of half-periods `pi/lambda` below `rmax`.
pub fn strichartz(s: &Settings, r: &mut Report) -> CliResult<()> {
    let panels = (4.0 * s.rmax).ceil() as usize;
    let rmax = panels as f64 / 4.0;
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, sigma) = rep_for(n, label)?;
        let grid = KGrid::descended(n, boundary_order(n, s))?;
        let mut rng = stream(s, 700 + idx as u64);
        for &l in &s.lambda {
            let combo = random_combo(n, rep.dim(), sigma, l, s.samples, &mut rng);
            let f2 = combo.sample(&rep, &grid)?.norm_sqr(&grid);
            let target = gamma0(n) / plancherel_density(l, n)? * f2;
            let profile = energy_profile(|g| combo.poisson(&rep, g), n, &grid, rmax, panels, RADIAL_ORDER)?;
            let mut radius = 5.0;
            while radius < rmax {
                r.push(n, label.label(), l, radius, c(profile.mean_energy(radius)?, 0.0), c(target, 0.0), "quadrature");
                radius += 5.0;
            }
            let raw = profile.mean_energy(rmax)?;
            r.push(n, label.label(), l, rmax, c(raw, 0.0), c(target, 0.0), "quadrature");
            let k = ((rmax * l) / (3.0 * PI)).round().max(1.0);
            let r2 = ((rmax - k * PI / l) * 4.0).round() / 4.0;
            let rich = richardson_limit(rmax, raw, r2, profile.mean_energy(r2)?);
            r.push(n, label.label(), l, rmax, c(rich, 0.0), c(target, 0.0), "richardson");
            let key = format!("n{n}_{}_lambda{l}", label.label());
            r.summarize(&format!("raw_ratio_{key}"), raw / target);
            r.summarize(&format!("richardson_ratio_{key}"), rich / target);
            r.summarize(&format!("richardson_radius2_{key}"), r2);
            // leading factor squared over d_{tau,sigma}; 1/4 for n even, 1/2 for n odd
            let measured = true_leading_factor(n).powi(2) / rep.d_tau_sigma() as f64;
            r.summarize(&format!("richardson_ratio_{key}_gamma0_{}", gamma0(n) * measured), rich / (target * measured));
            r.require(
                (rich / target - 1.0).abs() <= 0.05,
                format!("{key}: Richardson ratio {:.4} outside 1 +- 0.05", rich / target),
            );
            r.require(
                (raw / target - 1.0).abs() <= 0.15,
                format!("{key}: raw ratio {:.4} outside 1 +- 0.15", raw / target),
            );
        }
    }
    Ok(())
}

pub fn poisson_bound_defaults() -> Settings {
    Settings {
        n: vec![2, 3],
        lambda: vec![0.25, 0.5, 1.0, 2.0, 4.0],
        rmax: 16.0,
        samples: 3,
        ..Settings::default()
    }
}

/// `nu(lambda) |P F|_*^2 / |F|^2` with the sup over the ladder 1, 2, 4, ... <= rmax.
pub fn poisson_bound(s: &Settings, r: &mut Report) -> CliResult<()> {
    let mut ladder = vec![1.0];
    while ladder.last().copied().unwrap_or(0.0) * 2.0 <= s.rmax {
        ladder.push(ladder.last().copied().unwrap_or(1.0) * 2.0);
    }
    let rmax = *ladder.last().unwrap_or(&1.0);
    let panels = (4.0 * rmax) as usize;
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, sigma) = rep_for(n, label)?;
        let grid = KGrid::descended(n, boundary_order(n, s))?;
        let base = {
            let mut rng = stream(s, 800 + idx as u64);
            random_combo(n, rep.dim(), sigma, 1.0, s.samples, &mut rng)
        };
        for &l in &s.lambda {
            let combo = hyperspinor_core::transforms::PFunctionCombo {
                lambda: c(l, 0.0),
                ..base.clone()
            };
            let f2 = combo.sample(&rep, &grid)?.norm_sqr(&grid);
            let profile = energy_profile(|g| combo.poisson(&rep, g), n, &grid, rmax, panels, 8)?;
            let ratio = plancherel_density(l, n)? * star_norm_sqr(&profile, &ladder)? / f2;
            r.push_raw(n, label.label(), l, rmax, c(ratio, 0.0), c(0.0, 0.0), 0.0, 0.0, "bound-ratio");
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    r.summarize("ratio_min", lo);
    r.summarize("ratio_max", hi);
    r.require(hi / lo < 4.0, format!("ratio varies by {:.3}x", hi / lo));
    Ok(())
}

pub fn restriction_defaults() -> Settings {
    Settings {
        n: vec![2],
        lambda: linspace(0.1, 8.0, 24),
        t: vec![1.0, 2.0, 4.0, 8.0],
        samples: 5,
        ..Settings::default()
    }
}

/// For each of `samples` bump sections supported in B(R), R from the t list,
/// the sup over the lambda list of `nu |F f|^2 / (R |f|^2)`.
pub fn restriction(s: &Settings, r: &mut Report) -> CliResult<()> {
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, sigma) = rep_for(n, label)?;
        let angular = s.grid.unwrap_or(if n == 2 { 512 } else { 48 });
        let ball_k = KGrid::descended(n, angular)?;
        let out = KGrid::descended(n, if n == 2 { 64 } else { 16 })?;
        let mut rng = stream(s, 900 + idx as u64);
        for j in 0..s.samples {
            let center = moderate_point(n - 1, &mut rng);
            let w = random_vector(rep.dim(), &mut rng);
            let mut sups = Vec::new();
            for &radius in &s.t {
                let f = BumpSection {
                    rep: rep.clone(),
                    radius,
                    center,
                    w: w.clone(),
                };
                let ball = BallGrid::new(n, radius, (2.0 * radius).ceil() as usize, RADIAL_ORDER, ball_k.clone())?;
                let sampled = SampledSection::new(&f, &ball)?;
                let ratios = restriction_ratios(&rep, sigma, &sampled, radius, &out, &s.lambda)?;
                let (arg, sup) = ratios
                    .iter()
                    .enumerate()
                    .fold((0, 0.0f64), |acc, (i, v)| if *v > acc.1 { (i, *v) } else { acc });
                r.push_raw(n, label.label(), s.lambda[arg], radius, c(sup, 0.0), c(0.0, 0.0), 0.0, 0.0, &format!("bump {j}"));
                sups.push(sup);
            }
            for pair in sups.windows(2) {
                let change = (pair[1] / pair[0]).max(pair[0] / pair[1]);
                r.require(change < 2.0, format!("bump {j}: sup changes {change:.3}x under R doubling"));
            }
            let spread = sups.iter().cloned().fold(0.0, f64::max) / sups.iter().cloned().fold(f64::INFINITY, f64::min);
            r.summarize(&format!("bump{j}_max_over_min"), spread);
        }
    }
    Ok(())
}

pub fn plancherel_defaults() -> Settings {
    Settings {
        n: vec![2],
        lambda: vec![0.05, 12.0],
        grid: Some(240),
        samples: 40,
        ..Settings::default()
    }
}

/// Bump of radius 1.5 near the origin. `lambda = lo,hi` bounds the spectral
/// range, `grid` is the number of Gauss–Legendre nodes on it (multiple of 20)
/// and `samples` the number of inversion points.
pub fn plancherel(s: &Settings, r: &mut Report) -> CliResult<()> {
    let (lo, hi) = match s.lambda.as_slice() {
        [lo, hi] if lo < hi => (*lo, *hi),
        _ => return Err(crate::error::CliError::Usage("plancherel needs lambda = lo,hi".into())),
    };
    let nodes = s.grid.unwrap_or(240);
    let rule = composite_legendre(lo, hi, (nodes / 20).max(1), 20)?;
    let radius = 1.5;
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, sigma) = rep_for(n, label)?;
        let mut rng = stream(s, 1000 + idx as u64);
        let center = VahlenElement::make_k(&random_unit_group_element(n - 1, &mut rng)).mul(&geodesic_a(n - 1, 0.5));
        let f = BumpSection {
            rep: rep.clone(),
            radius,
            center,
            w: random_vector(rep.dim(), &mut rng),
        };
        let kg = KGrid::descended(n, if n == 2 { 128 } else { 24 })?;
        let ball = BallGrid::new(n, radius, 6, RADIAL_ORDER, kg.clone())?;
        let sampled = SampledSection::new(&f, &ball)?;
        let norm = sampled.norm_sqr();
        let sections = helgason_fourier_multi(&rep, sigma, &sampled, &kg, &rule.nodes)?;
        let mut energy = 0.0;
        for ((l, w), sec) in rule.nodes.iter().zip(&rule.weights).zip(&sections) {
            energy += w * plancherel_density(*l, n)? * sec.norm_sqr(&kg);
        }
        let ratio = energy / norm;
        r.push(n, label.label(), hi, radius, c(ratio, 0.0), c(1.0, 0.0), "plancherel-energy");
        r.require((0.9..=1.1).contains(&ratio), format!("energy ratio {ratio:.4} outside [0.9, 1.1]"));

        let fourier = vec![(sigma, sections)];
        let (mut num, mut den) = (0.0, 0.0);
        for _ in 0..s.samples {
            let g = VahlenElement::make_k(&random_unit_group_element(n - 1, &mut rng))
                .mul(&geodesic_a(n - 1, rng.uniform(0.0, radius)));
            let exact: CVector = f.value(&g)?;
            let approx = inversion_at(&rep, &fourier, &rule.nodes, &rule.weights, &kg, &g)?;
            num += (&approx - &exact).norm_squared();
            den += exact.norm_squared();
            r.push(n, label.label(), hi, 2.0 * g.cartan()?.t, approx[0], exact[0], "inversion");
        }
        let l2 = (num / den).sqrt();
        r.summarize("energy_ratio", ratio);
        r.summarize("inversion_l2_error", l2);
        r.require(l2 < 0.1, format!("inversion L2 error {l2:.4}"));
    }
    Ok(())
}
