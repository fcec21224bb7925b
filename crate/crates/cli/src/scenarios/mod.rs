//! One scenario per acceptance criterion.

use std::time::Instant;

use hyperspinor_core::linalg::{c, CVector};
use hyperspinor_core::sampling::{random_unit_group_element, Stream};
use hyperspinor_core::spin::{types_for, Sigma, SpinRepresentation};
use hyperspinor_core::transforms::{PFunctionCombo, PTerm};
use hyperspinor_core::vahlen::{geodesic_a, VahlenElement};

use crate::config::Settings;
use crate::error::CliResult;
use crate::report::Report;

mod algebra;
mod analysis;
mod special;
mod spherical;

pub struct Scenario {
    pub name: &'static str,
    pub criterion: u32,
    pub text: &'static str,
    pub allowed_n: &'static [usize],
    defaults: fn() -> Settings,
    body: fn(&Settings, &mut Report) -> CliResult<()>,
}

impl Scenario {
    pub fn defaults(&self) -> Settings {
        (self.defaults)()
    }

    pub fn run(&self, settings: &Settings) -> CliResult<Report> {
        settings.validate(self.allowed_n)?;
        let mut report = Report::new(self.name, self.criterion, self.text);
        report.parameters = settings.describe();
        let start = Instant::now();
        (self.body)(settings, &mut report)?;
        report.wall_time_s = start.elapsed().as_secs_f64();
        Ok(report)
    }
}

pub fn all() -> &'static [Scenario] {
    SCENARIOS
}

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

static SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "clifford-axioms",
        criterion: 1,
        text: "blade products of Cl(0,m), m <= 4, agree exactly with word reduction under xy + yx = -2<x,y>",
        allowed_n: &[2, 3, 4, 5],
        defaults: algebra::axioms_defaults,
        body: algebra::axioms,
    },
    Scenario {
        name: "spin-integrity",
        criterion: 2,
        text: "gamma anticommutation exact, homomorphism and unitarity < 1e-8, M-commutant dimension 1 (n even) / 2 (n odd)",
        allowed_n: &[2, 3, 4, 5],
        defaults: algebra::spin_defaults,
        body: algebra::spin_integrity,
    },
    Scenario {
        name: "decompositions",
        criterion: 3,
        text: "Iwasawa and Cartan reconstruction < 1e-9 and M-gauge invariance of tau(k2)^-1 P tau(k1)^-1 < 1e-9",
        allowed_n: &[2, 3, 4, 5],
        defaults: algebra::decomposition_defaults,
        body: algebra::decompositions,
    },
    Scenario {
        name: "jacobi-connection",
        criterion: 4,
        text: "Jacobi connection identity rel err < 1e-8 and Jacobi ODE residual < 1e-7",
        allowed_n: &[2, 3, 4, 5, 6],
        defaults: special::connection_defaults,
        body: special::connection,
    },
    Scenario {
        name: "c-function",
        criterion: 5,
        text: "2|c|^2 = gamma0/nu to 1e-12, nu/(1+lambda)^(n-1) in a positive window on [0.1,100], printed-density ratio reported",
        allowed_n: &[2, 3, 4, 5, 6],
        defaults: special::c_function_defaults,
        body: special::c_function,
    },
    Scenario {
        name: "eisenstein",
        criterion: 6,
        text: "Eisenstein integral by quadrature vs closed form rel err < 1e-6",
        allowed_n: &[2, 3, 4],
        defaults: spherical::eisenstein_defaults,
        body: spherical::eisenstein,
    },
    Scenario {
        name: "spherical-asymptotics",
        criterion: 7,
        text: "defect e^((rho+1)t)/|c| < 100 on lambda in [0.25,4], t in [1,10]; decay slope -(rho+1) +- 0.1",
        allowed_n: &[2, 3, 4, 5],
        defaults: spherical::asymptotics_defaults,
        body: spherical::asymptotics,
    },
    Scenario {
        name: "fatou-limit",
        criterion: 8,
        text: "e^((rho - i lambda)t) Phi(a_t) -> c(lambda) P_sigma at lambda = 1 - i: defect < 1e-3 at t = 8, off-block < 1e-6",
        allowed_n: &[2, 3, 4, 5],
        defaults: spherical::fatou_defaults,
        body: spherical::fatou,
    },
    Scenario {
        name: "e-function",
        criterion: 9,
        text: "0 <= E(g,x) <= e^(2(A+(g) - A+(x))) + 1e-12 on random pairs; decay exponent -2 +- 0.1",
        allowed_n: &[2, 3, 4, 5],
        defaults: algebra::e_function_defaults,
        body: algebra::e_function,
    },
    Scenario {
        name: "cartan-limit",
        criterion: 10,
        text: "Cartan-limit defect at R = 8 below 1e-3 of its R = 0 value",
        allowed_n: &[2, 3, 4, 5],
        defaults: algebra::cartan_limit_defaults,
        body: algebra::cartan_limit,
    },
    Scenario {
        name: "intertwiner",
        criterion: 11,
        text: "intertwiner preserves Gram data < 1e-8 and Poisson transforms < 1e-6",
        allowed_n: &[2, 3],
        defaults: spherical::intertwiner_defaults,
        body: spherical::intertwiner,
    },
    Scenario {
        name: "strichartz-limit",
        criterion: 12,
        text: "ball-averaged energy of a Poisson transform vs gamma0 nu^-1 |F|^2: Richardson within 5%, raw within 15% at R_max",
        allowed_n: &[2, 3],
        defaults: analysis::strichartz_defaults,
        body: analysis::strichartz,
    },
    Scenario {
        name: "poisson-bound",
        criterion: 13,
        text: "nu(lambda) |P F|_*^2 / |F|^2 varies less than 4x over the lambda list",
        allowed_n: &[2, 3],
        defaults: analysis::poisson_bound_defaults,
        body: analysis::poisson_bound,
    },
    Scenario {
        name: "restriction",
        criterion: 14,
        text: "sup_lambda nu |F f|^2 / (R |f|^2) changes less than 2x under R doubling",
        allowed_n: &[2, 3],
        defaults: analysis::restriction_defaults,
        body: analysis::restriction,
    },
    Scenario {
        name: "plancherel",
        criterion: 15,
        text: "Plancherel energy ratio in [0.9, 1.1] and inversion L2 error < 10% on a truncated lambda grid",
        allowed_n: &[2],
        defaults: analysis::plancherel_defaults,
        body: analysis::plancherel,
    },
];

/// Independent random stream per purpose.
pub(crate) fn stream(settings: &Settings, tag: u64) -> Stream {
    Stream::new(settings.seed, tag)
}

pub(crate) fn rep_for(n: usize, label: Sigma) -> CliResult<(SpinRepresentation, Sigma)> {
    let (variant, sigma) = types_for(n, label)?;
    Ok((SpinRepresentation::build(n, variant)?, sigma))
}

/// Points at moderate distance from the origin; far points make the Poisson
/// kernel too peaked for the boundary grids.
pub(crate) fn moderate_point(m: usize, rng: &mut Stream) -> VahlenElement {
    let k = VahlenElement::make_k(&random_unit_group_element(m, rng));
    let x: Vec<f64> = (0..m).map(|_| 0.2 * rng.normal()).collect();
    k.mul(&geodesic_a(m, rng.uniform(0.0, 1.0))).mul(&VahlenElement::make_n(&x))
}

pub(crate) fn random_vector(dim: usize, rng: &mut Stream) -> CVector {
    CVector::from_iterator(dim, (0..dim).map(|_| c(rng.normal(), rng.normal())))
}

pub(crate) fn random_combo(n: usize, dim: usize, sigma: Sigma, lambda: f64, terms: usize, rng: &mut Stream) -> PFunctionCombo {
    PFunctionCombo {
        sigma,
        lambda: c(lambda, 0.0),
        terms: (0..terms)
            .map(|_| PTerm {
                g: moderate_point(n - 1, rng),
                v: random_vector(dim, rng),
                coeff: c(rng.normal(), rng.normal()),
            })
            .collect(),
    }
}

/// Least-squares slope of `ys` against `xs`.
pub(crate) fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub(crate) fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}

pub(crate) fn geomspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64)).collect()
}
