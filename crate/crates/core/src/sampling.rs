//! Seeded random sampling of algebra and group elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::clifford::{CliffordElement, CliffordGroupElement, Paravector};
use crate::vahlen::VahlenElement;

/// Seeded generator; independent streams share one seed.
#[derive(Clone, Debug)]
pub struct Stream {
    rng: ChaCha12Rng,
}

impl Stream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }
}

pub fn random_unit_coords(dim: usize, rng: &mut Stream) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.normal()).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-6 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

pub fn random_unit_paravector(m: usize, rng: &mut Stream) -> Paravector {
    Paravector::from_coords(&random_unit_coords(m + 1, rng))
}

/// Unit vector of R^m as a grade-one element.
pub fn random_unit_vector(m: usize, rng: &mut Stream) -> CliffordElement {
    let v = random_unit_coords(m, rng);
    let mut x = CliffordElement::zero(m);
    for (i, vi) in v.iter().enumerate() {
        x.set_coeff(1 << i, *vi);
    }
    x
}

/// Product of three random unit paravectors.
pub fn random_unit_group_element(m: usize, rng: &mut Stream) -> CliffordGroupElement {
    let mut u = CliffordGroupElement::one(m);
    for _ in 0..3 {
        let p = random_unit_paravector(m, rng).to_element();
        u = u.mul(&CliffordGroupElement::new_unchecked(p));
    }
    u.normalized()
}

/// `k a_t n_x` with k random, `t ~ U[0, 3]` in the matrix parameter and x standard normal.
pub fn random_group_element(m: usize, rng: &mut Stream) -> VahlenElement {
    let k = VahlenElement::make_k(&random_unit_group_element(m, rng));
    let t = rng.uniform(0.0, 3.0);
    let x: Vec<f64> = (0..m).map(|_| rng.normal()).collect();
    k.mul(&VahlenElement::make_a(m, t)).mul(&VahlenElement::make_n(&x))
}

/// Random element of M = Spin(m): an even product of unit vectors of R^m.
pub fn random_m_element(m: usize, rng: &mut Stream) -> CliffordGroupElement {
    let mut u = CliffordElement::one(m);
    for _ in 0..4 {
        u = u * random_unit_vector(m, rng);
    }
    CliffordGroupElement::new_unchecked(u).normalized()
}
