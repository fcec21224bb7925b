use hyperspinor_core::clifford::CliffordElement;
use hyperspinor_core::linalg::{c, commutant_dimension, identity, max_abs, op_norm, CMatrix};
use hyperspinor_core::sampling::{random_group_element, random_m_element, random_unit_group_element};
use hyperspinor_core::vahlen::{self, cartan_limit_defect, cartan_radius, geodesic_a, VahlenElement};

use super::{fit_slope, linspace, rep_for, stream};
use crate::config::Settings;
use crate::error::CliResult;
use crate::report::Report;

pub fn axioms_defaults() -> Settings {
    Settings {
        n: vec![2, 3, 4, 5],
        ..Settings::default()
    }
}

/// `e_{w_1} ... e_{w_k}` reduced to `sign * e_mask` by adjacent swaps and `e_i e_i = -1`.
fn reduce_word(word: &[usize]) -> (i64, usize) {
    let mut w = word.to_vec();
    let mut sign = 1i64;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if w[i] == w[i + 1] {
                w.drain(i..i + 2);
                sign = -sign;
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    (sign, w.iter().fold(0, |acc, i| acc | (1 << i)))
}

fn indices(mask: usize, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask & (1 << i) != 0).collect()
}

fn blade(m: usize, mask: usize) -> CliffordElement {
    CliffordElement::blade(m, mask, 1.0)
}

pub fn axioms(s: &Settings, r: &mut Report) -> CliResult<()> {
    for &n in &s.n {
        let m = n - 1;
        let size = 1usize << m;
        let mut relation = 0usize;
        for i in 0..m {
            for j in 0..m {
                let (ei, ej) = (blade(m, 1 << i), blade(m, 1 << j));
                let lhs = (ei * ej) + (ej * ei);
                let rhs = CliffordElement::scalar(m, if i == j { -2.0 } else { 0.0 });
                relation += usize::from(lhs != rhs);
            }
        }
        let mut pairs = 0usize;
        for a in 0..size {
            for b in 0..size {
                let mut word = indices(a, m);
                word.extend(indices(b, m));
                let (sign, mask) = reduce_word(&word);
                let expected = CliffordElement::blade(m, mask, sign as f64);
                pairs += usize::from(blade(m, a).geometric_product(&blade(m, b))? != expected);
            }
        }
        let mut triples = 0usize;
        for a in 0..size {
            for b in 0..size {
                for d in 0..size {
                    let (x, y, z) = (blade(m, a), blade(m, b), blade(m, d));
                    triples += usize::from((x * y) * z != x * (y * z));
                }
            }
        }
        let zero = c(0.0, 0.0);
        for (count, route) in [(relation, "generator-relation"), (pairs, "blade-pairs"), (triples, "blade-triples")] {
            r.push(n, "-", 0.0, m as f64, c(count as f64, 0.0), zero, route);
            r.require(count == 0, format!("m={m}: {count} mismatches in {route}"));
        }
    }
    Ok(())
}

pub fn spin_defaults() -> Settings {
    Settings {
        n: vec![2, 3, 4, 5],
        samples: 1000,
        ..Settings::default()
    }
}

pub fn spin_integrity(s: &Settings, r: &mut Report) -> CliResult<()> {
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, _) = rep_for(n, label)?;
        let m = n - 1;
        let d = rep.dim();
        let gens = rep.generator_images();
        let mut anti: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                let target = identity(d) * c(if i == j { -2.0 } else { 0.0 }, 0.0);
                anti = anti.max(max_abs(&(&gens[i] * &gens[j] + &gens[j] * &gens[i] - target)));
            }
        }
        let mut rng = stream(s, 100 + idx as u64);
        let mut hom: f64 = 0.0;
        let mut unit: f64 = 0.0;
        for _ in 0..s.samples {
            let u = random_unit_group_element(m, &mut rng);
            let v = random_unit_group_element(m, &mut rng);
            let (ru, rv) = (rep.evaluate(&u)?, rep.evaluate(&v)?);
            hom = hom.max(op_norm(&(rep.evaluate(&u.mul(&v))? - &ru * &rv)));
            unit = unit.max(op_norm(&(&ru * ru.adjoint() - identity(d))));
        }
        let m_images: CliResult<Vec<CMatrix>> = (0..8)
            .map(|_| Ok(rep.evaluate(&random_m_element(m, &mut rng))?))
            .collect();
        let dim = commutant_dimension(&m_images?, 1e-8);
        let expected = if n % 2 == 0 { 1 } else { 2 };
        let sg = label.label();
        let zero = c(0.0, 0.0);
        r.push(n, sg, 0.0, 0.0, c(anti, 0.0), zero, "gamma-anticommutation");
        r.push(n, sg, 0.0, 0.0, c(hom, 0.0), zero, "homomorphism");
        r.push(n, sg, 0.0, 0.0, c(unit, 0.0), zero, "unitarity");
        r.push(n, sg, 0.0, 0.0, c(dim as f64, 0.0), c(expected as f64, 0.0), "m-commutant-dimension");
        r.require(anti == 0.0, format!("n={n}: anticommutation defect {anti:e}"));
        r.require(hom < 1e-8, format!("n={n}: homomorphism error {hom:e}"));
        r.require(unit < 1e-8, format!("n={n}: unitarity error {unit:e}"));
        r.require(dim == expected, format!("n={n}: commutant dimension {dim}, expected {expected}"));
    }
    Ok(())
}

pub fn decomposition_defaults() -> Settings {
    Settings {
        n: vec![2, 3, 4],
        samples: 10_000,
        ..Settings::default()
    }
}

pub fn decompositions(s: &Settings, r: &mut Report) -> CliResult<()> {
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, sigma) = rep_for(n, label)?;
        let p = rep.isotypic_projector(sigma)?.matrix;
        let m = n - 1;
        let mut rng = stream(s, 200 + idx as u64);
        let (mut iw, mut ca, mut gauge): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for _ in 0..s.samples {
            let g = random_group_element(m, &mut rng);
            iw = iw.max(g.iwasawa()?.compose().max_abs_diff(&g) / g.scale());
            let f = g.cartan()?;
            ca = ca.max(f.compose().max_abs_diff(&g) / g.scale());
            let mm = VahlenElement::make_k(&random_m_element(m, &mut rng));
            let k1 = f.k1.mul(&mm);
            let k2 = mm.inverse().mul(&f.k2);
            let lhs = rep.evaluate_inverse(&f.k2.k_value())? * &p * rep.evaluate_inverse(&f.k1.k_value())?;
            let rhs = rep.evaluate_inverse(&k2.k_value())? * &p * rep.evaluate_inverse(&k1.k_value())?;
            gauge = gauge.max(op_norm(&(lhs - rhs)));
        }
        let sg = label.label();
        let zero = c(0.0, 0.0);
        r.push(n, sg, 0.0, 0.0, c(iw, 0.0), zero, "iwasawa-reconstruction");
        r.push(n, sg, 0.0, 0.0, c(ca, 0.0), zero, "cartan-reconstruction");
        r.push(n, sg, 0.0, 0.0, c(gauge, 0.0), zero, "m-gauge");
        r.require(iw < 1e-9, format!("n={n}: Iwasawa error {iw:e}"));
        r.require(ca < 1e-9, format!("n={n}: Cartan error {ca:e}"));
        r.require(gauge < 1e-9, format!("n={n} sigma={sg}: gauge error {gauge:e}"));
    }
    Ok(())
}

pub fn e_function_defaults() -> Settings {
    Settings {
        n: vec![2, 3, 4],
        samples: 10_000,
        t: linspace(4.0, 12.0, 9),
        ..Settings::default()
    }
}

/// Bounds on random pairs, then the decay along `x = k a_s` (geodesic s).
pub fn e_function(s: &Settings, r: &mut Report) -> CliResult<()> {
    for &n in &s.n {
        let m = n - 1;
        let mut rng = stream(s, 300 + n as u64);
        let mut lowest = f64::INFINITY;
        let mut excess = f64::NEG_INFINITY;
        for _ in 0..s.samples {
            let g = random_group_element(m, &mut rng);
            let x = random_group_element(m, &mut rng);
            let e = vahlen::e_function(&g, &x)?;
            let bound = (2.0 * (cartan_radius(&g) - cartan_radius(&x))).exp();
            lowest = lowest.min(e);
            excess = excess.max(e - bound);
        }
        r.push_raw(n, "-", 0.0, 0.0, c(lowest, 0.0), c(0.0, 0.0), (-lowest).max(0.0), (-lowest).max(0.0), "min-E");
        r.push_raw(n, "-", 0.0, 0.0, c(excess, 0.0), c(0.0, 0.0), excess.max(0.0), excess.max(0.0), "max-E-minus-bound");
        r.require(lowest >= -1e-12, format!("n={n}: E = {lowest:e} < 0"));
        r.require(excess <= 1e-12, format!("n={n}: E exceeds the bound by {excess:e}"));

        let g = random_group_element(m, &mut rng);
        let k = VahlenElement::make_k(&random_unit_group_element(m, &mut rng));
        let mut logs = Vec::new();
        for &t in &s.t {
            let e = vahlen::e_function(&g, &k.mul(&geodesic_a(m, t)))?;
            let bound = (2.0 * (cartan_radius(&g) - t)).exp();
            // rel_err carries the ratio E / bound here
            r.push_raw(n, "-", 0.0, t, c(e, 0.0), c(bound, 0.0), (e - bound).max(0.0), e / bound, "decay-vs-bound");
            logs.push(e.ln());
        }
        if s.t.len() >= 2 {
            let slope = fit_slope(&s.t, &logs);
            r.summarize(&format!("decay_slope_n{n}"), slope);
            // the same decay against the matrix parameter t = s/2
            r.summarize(&format!("decay_slope_matrix_parameter_n{n}"), 2.0 * slope);
            r.require((slope + 2.0).abs() <= 0.1, format!("n={n}: decay slope {slope:.4}, expected -2 +- 0.1"));
        }
    }
    Ok(())
}

pub fn cartan_limit_defaults() -> Settings {
    Settings {
        n: vec![3],
        samples: 100,
        rmax: 8.0,
        ..Settings::default()
    }
}

pub fn cartan_limit(s: &Settings, r: &mut Report) -> CliResult<()> {
    for (idx, (n, label)) in s.types().into_iter().enumerate() {
        let (rep, sigma) = rep_for(n, label)?;
        let p = rep.isotypic_projector(sigma)?.matrix;
        let m = n - 1;
        let mut rng = stream(s, 400 + idx as u64);
        let mut worst: f64 = 0.0;
        let mut slopes = Vec::new();
        for i in 0..s.samples {
            let g = random_group_element(m, &mut rng);
            let d0 = cartan_limit_defect(&g, 0.0, &rep, &p)?;
            let dr = cartan_limit_defect(&g, s.rmax, &rep, &p)?;
            let ratio = dr / d0;
            r.push_raw(n, label.label(), 0.0, s.rmax, c(dr, 0.0), c(d0, 0.0), dr, ratio, "defect-ratio");
            worst = worst.max(ratio);
            if i < 10 {
                let rs = linspace(0.5 * s.rmax, s.rmax, 5);
                let logs: CliResult<Vec<f64>> = rs
                    .iter()
                    .map(|&x| Ok(cartan_limit_defect(&g, x, &rep, &p)?.ln()))
                    .collect();
                slopes.push(fit_slope(&rs, &logs?));
            }
        }
        r.summarize(&format!("worst_ratio_n{n}_{}", label.label()), worst);
        slopes.sort_by(f64::total_cmp);
        if !slopes.is_empty() {
            r.summarize(&format!("median_decay_slope_n{n}_{}", label.label()), slopes[slopes.len() / 2]);
        }
        r.require(worst < 1e-3, format!("n={n} sigma={}: defect ratio {worst:e}", label.label()));
    }
    Ok(())
}
