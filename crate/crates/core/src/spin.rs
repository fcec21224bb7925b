//! Matrix models of the spin representation of K = Spin(n) realized through
//! an irreducible module of Cl(0, n-1), with the M-isotypic projectors and the
//! grading map.

use std::fmt;
use std::str::FromStr;

use crate::clifford::{grade, CliffordElement, CliffordGroupElement};
use crate::error::{Error, Result};
use crate::linalg::{c, identity, kron, CMatrix, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    Plus,
    Minus,
}

/// M-type inside V_tau: the whole space for n even, a grading block for n odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sigma {
    Full,
    Plus,
    Minus,
}

impl Sigma {
    /// Image under the nontrivial Weyl element.
    pub fn weyl(self) -> Sigma {
        match self {
            Sigma::Full => Sigma::Full,
            Sigma::Plus => Sigma::Minus,
            Sigma::Minus => Sigma::Plus,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sigma::Full => "full",
            Sigma::Plus => "plus",
            Sigma::Minus => "minus",
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Sigma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Sigma::Full),
            "plus" => Ok(Sigma::Plus),
            "minus" => Ok(Sigma::Minus),
            other => Err(Error::Range(format!("unknown sigma '{other}'"))),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "plus" => Ok(Variant::Plus),
            "minus" => Ok(Variant::Minus),
            other => Err(Error::Range(format!("unknown variant '{other}'"))),
        }
    }
}

/// The default (tau, sigma) pairing for a given n and requested sigma label.
/// For n even the label selects the half-spin variant and sigma is the full
/// space; for n odd tau is full and the label selects the block.
pub fn types_for(n: usize, label: Sigma) -> Result<(Variant, Sigma)> {
    match (n % 2, label) {
        (0, Sigma::Plus) | (0, Sigma::Full) => Ok((Variant::Plus, Sigma::Full)),
        (0, Sigma::Minus) => Ok((Variant::Minus, Sigma::Full)),
        (1, Sigma::Plus) => Ok((Variant::Full, Sigma::Plus)),
        (1, Sigma::Minus) => Ok((Variant::Full, Sigma::Minus)),
        _ => Err(Error::Range(format!("sigma '{label}' needs n even"))),
    }
}

fn pauli() -> [CMatrix; 3] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        CMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// Jordan-Wigner images of 2q anticommuting generators squaring to -Id.
fn even_generators(q: usize) -> Vec<CMatrix> {
    let [x, y, z] = pauli();
    let id2 = identity(2);
    let mut gens = Vec::with_capacity(2 * q);
    for j in 0..q {
        for core in [&x, &y] {
            let mut acc = identity(1);
            for slot in 0..q {
                let factor = if slot < j {
                    z.clone()
                } else if slot == j {
                    core * I
                } else {
                    id2.clone()
                };
                acc = kron(&acc, &factor);
            }
            gens.push(acc);
        }
    }
    gens
}

/// First unit phase among {1, i, -1, -i} making `(phase * w)^2 = target * Id`.
fn phase_for_square(w: &CMatrix, target: f64) -> Result<nalgebra::Complex<f64>> {
    let sq = w * w;
    let d = w.nrows();
    for phase in [c(1.0, 0.0), I, c(-1.0, 0.0), -I] {
        let diff = &sq * (phase * phase) - identity(d) * c(target, 0.0);
        if diff.norm() < 1e-12 {
            return Ok(phase);
        }
    }
    Err(Error::Invariant("no normalizing phase".into()))
}

#[derive(Clone, Debug)]
pub struct SpinRepresentation {
    n: usize,
    variant: Variant,
    dim: usize,
    generator_images: Vec<CMatrix>,
    blade_images: Vec<CMatrix>,
}

impl SpinRepresentation {
    pub fn build(n: usize, variant: Variant) -> Result<Self> {
        if !(2..=5).contains(&n) {
            return Err(Error::Range(format!("n = {n} outside 2..=5")));
        }
        let k = n - 1;
        let parity_ok = match variant {
            Variant::Full => n % 2 == 1,
            Variant::Plus | Variant::Minus => n % 2 == 0,
        };
        if !parity_ok {
            return Err(Error::Range(format!("variant {variant:?} needs the other parity of n = {n}")));
        }
        let gens = if k % 2 == 0 {
            even_generators(k / 2)
        } else {
            let mut gens = even_generators((k - 1) / 2);
            let d = 1 << ((k - 1) / 2);
            let w = gens.iter().fold(identity(d), |acc, g| acc * g);
            let phase = phase_for_square(&w, -1.0)?;
            let mut last = w * phase;
            // chirality: normalized volume element acts as +1 on the plus variant
            let vol = gens.iter().fold(identity(d), |acc, g| acc * g) * &last;
            let vol_phase = phase_for_square(&vol, 1.0)?;
            let chirality = (vol * vol_phase)[(0, 0)].re;
            let wanted = if variant == Variant::Plus { 1.0 } else { -1.0 };
            if chirality * wanted < 0.0 {
                last = -last;
            }
            gens.push(last);
            gens
        };
        let dim = gens[0].nrows();
        let blade_images = (0..(1usize << k))
            .map(|mask| {
                (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .fold(identity(dim), |acc, i| acc * &gens[i])
            })
            .collect();
        Ok(Self {
            n,
            variant,
            dim,
            generator_images: gens,
            blade_images,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_images(&self) -> &[CMatrix] {
        &self.generator_images
    }

    /// Algebra map Cl(0, n-1) -> End(V_tau).
    pub fn algebra_map(&self, x: &CliffordElement) -> CMatrix {
        assert_eq!(x.generators(), self.n - 1);
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (mask, img) in self.blade_images.iter().enumerate() {
            let coef = x.coeff(mask);
            if coef != 0.0 {
                out += img * c(coef, 0.0);
            }
        }
        out
    }

    /// tau(u) for a unit Clifford group element.
    pub fn evaluate(&self, u: &CliffordGroupElement) -> Result<CMatrix> {
        if (u.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::Invariant(format!("norm {} is not 1", u.norm())));
        }
        Ok(self.algebra_map(u.value()))
    }

    /// tau(u)^{-1} = tau(u)^* for unit u.
    pub fn evaluate_inverse(&self, u: &CliffordGroupElement) -> Result<CMatrix> {
        Ok(self.evaluate(u)?.adjoint())
    }

    /// Grading map `c * tau(e_1 ... e_{n-1})` with `c` the first of
    /// {1, i, -1, -i} making it an involution.
    pub fn grading_map(&self) -> Result<GradingMap> {
        if self.n % 2 == 0 {
            return Err(Error::Range("grading map exists for n odd only".into()));
        }
        let vol = self.blade_images.last().unwrap();
        let phase = phase_for_square(vol, 1.0)?;
        Ok(GradingMap {
            matrix: vol * phase,
        })
    }

    pub fn isotypic_projector(&self, sigma: Sigma) -> Result<IsotypicProjector> {
        let matrix = match (self.n % 2, sigma) {
            (0, Sigma::Full) => identity(self.dim),
            (1, Sigma::Plus) | (1, Sigma::Minus) => {
                let gamma = self.grading_map()?.matrix;
                let s = if sigma == Sigma::Plus { 1.0 } else { -1.0 };
                let p = (identity(self.dim) + gamma * c(s, 0.0)) * c(0.5, 0.0);
                // symmetrize to remove roundoff asymmetry
                (&p + p.adjoint()) * c(0.5, 0.0)
            }
            _ => {
                return Err(Error::Range(format!(
                    "sigma {sigma} does not occur for n = {}",
                    self.n
                )))
            }
        };
        Ok(IsotypicProjector { sigma, matrix })
    }

    /// dim tau / dim sigma.
    pub fn d_tau_sigma(&self) -> usize {
        if self.n % 2 == 0 {
            1
        } else {
            2
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicProjector {
    pub sigma: Sigma,
    pub matrix: CMatrix,
}

impl IsotypicProjector {
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

#[derive(Clone, Debug)]
pub struct GradingMap {
    pub matrix: CMatrix,
}

/// True when every blade in `x` has even grade (within `tol`).
pub fn is_even_element(x: &CliffordElement, tol: f64) -> bool {
    (0..x.dim())
        .filter(|&mask| grade(mask) % 2 == 1)
        .all(|mask| x.coeff(mask).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutant_dimension, max_abs};
    use crate::sampling::{random_m_element, random_unit_group_element, Stream};

    fn reps() -> Vec<SpinRepresentation> {
        vec![
            SpinRepresentation::build(2, Variant::Plus).unwrap(),
            SpinRepresentation::build(2, Variant::Minus).unwrap(),
            SpinRepresentation::build(3, Variant::Full).unwrap(),
            SpinRepresentation::build(4, Variant::Plus).unwrap(),
            SpinRepresentation::build(4, Variant::Minus).unwrap(),
            SpinRepresentation::build(5, Variant::Full).unwrap(),
        ]
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = reps().iter().map(|r| r.dim()).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 4]);
        assert!(SpinRepresentation::build(3, Variant::Plus).is_err());
        assert!(SpinRepresentation::build(6, Variant::Plus).is_err());
    }

    #[test]
    fn anticommutation_is_exact() {
        for rep in reps() {
            let g = rep.generator_images();
            for i in 0..g.len() {
                for j in 0..g.len() {
                    let ac = &g[i] * &g[j] + &g[j] * &g[i];
                    let target = if i == j {
                        identity(rep.dim()) * c(-2.0, 0.0)
                    } else {
                        CMatrix::zeros(rep.dim(), rep.dim())
                    };
                    assert_eq!(ac, target, "n={} i={i} j={j}", rep.n());
                }
            }
        }
    }

    #[test]
    fn variants_are_inequivalent() {
        let p = SpinRepresentation::build(4, Variant::Plus).unwrap();
        let m = SpinRepresentation::build(4, Variant::Minus).unwrap();
        let vol = CliffordElement::blade(3, 0b111, 1.0);
        let tp = p.algebra_map(&vol).trace();
        let tm = m.algebra_map(&vol).trace();
        assert!((tp + tm).norm() < 1e-12 && tp.norm() > 1.0);
    }

    #[test]
    fn homomorphism_and_unitarity() {
        let mut rng = Stream::new(11, 0);
        for rep in reps() {
            let k = rep.n() - 1;
            for _ in 0..50 {
                let u = random_unit_group_element(k, &mut rng);
                let v = random_unit_group_element(k, &mut rng);
                let tu = rep.evaluate(&u).unwrap();
                let tv = rep.evaluate(&v).unwrap();
                let tuv = rep.evaluate(&u.mul(&v).normalized()).unwrap();
                assert!(max_abs(&(&tu * &tv - tuv)) < 1e-12);
                assert!(max_abs(&(&tu * tu.adjoint() - identity(rep.dim()))) < 1e-12);
                let back = rep.evaluate(&u.inverse()).unwrap();
                assert!(max_abs(&(&tu * back - identity(rep.dim()))) < 1e-12);
            }
            let one = CliffordGroupElement::one(k);
            assert_eq!(rep.evaluate(&one).unwrap(), identity(rep.dim()));
        }
    }

    #[test]
    fn projectors() {
        let r4 = SpinRepresentation::build(4, Variant::Plus).unwrap();
        assert_eq!(r4.isotypic_projector(Sigma::Full).unwrap().matrix, identity(2));
        assert!(r4.isotypic_projector(Sigma::Plus).is_err());
        let r3 = SpinRepresentation::build(3, Variant::Full).unwrap();
        let p = r3.isotypic_projector(Sigma::Plus).unwrap();
        assert!((p.trace() - 1.0).abs() < 1e-14);
        let r5 = SpinRepresentation::build(5, Variant::Full).unwrap();
        let pp = r5.isotypic_projector(Sigma::Plus).unwrap();
        let pm = r5.isotypic_projector(Sigma::Minus).unwrap();
        assert!((pp.trace() - 2.0).abs() < 1e-14);
        assert!(max_abs(&(&pp.matrix * &pp.matrix - &pp.matrix)) < 1e-14);
        assert!(max_abs(&(&pp.matrix + &pm.matrix - identity(4))) < 1e-14);
        assert!(max_abs(&(&pp.matrix * &pm.matrix)) < 1e-14);
    }

    #[test]
    fn grading_commutes_with_m_and_anticommutes_with_odd() {
        let mut rng = Stream::new(5, 1);
        for n in [3, 5] {
            let rep = SpinRepresentation::build(n, Variant::Full).unwrap();
            let gamma = rep.grading_map().unwrap().matrix;
            assert_eq!(&gamma * &gamma, identity(rep.dim()));
            for _ in 0..100 {
                let m = random_m_element(n - 1, &mut rng);
                let tm = rep.evaluate(&m).unwrap();
                assert!(max_abs(&(&gamma * &tm - &tm * &gamma)) < 1e-10);
            }
            for _ in 0..20 {
                // a single unit paravector with nonzero vector part is odd in the twisted sense
                let v = crate::sampling::random_unit_vector(n - 1, &mut rng);
                let tv = rep.algebra_map(&v);
                assert!(max_abs(&(&gamma * &tv + &tv * &gamma)) < 1e-10);
            }
        }
        assert!(SpinRepresentation::build(4, Variant::Plus)
            .unwrap()
            .grading_map()
            .is_err());
    }

    #[test]
    fn branching_multiplicity() {
        let mut rng = Stream::new(3, 2);
        for rep in reps() {
            let samples: Vec<CMatrix> = (0..12)
                .map(|_| rep.evaluate(&random_m_element(rep.n() - 1, &mut rng)).unwrap())
                .collect();
            let expected = if rep.n() % 2 == 0 { 1 } else { 2 };
            assert_eq!(commutant_dimension(&samples, 1e-9), expected, "n={}", rep.n());
        }
    }
}
