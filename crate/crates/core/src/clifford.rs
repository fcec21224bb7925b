//! Dense arithmetic in the Clifford algebra Cl(0,m), m <= 4.
//!
//! Blades are indexed by bitmask: bit `i` set means `e_{i+1}` is a factor, and
//! the stored coefficient belongs to the ascending product. Generators square
//! to `-1`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 4;
const MAX_BLADES: usize = 1 << MAX_GENERATORS;

/// Structural tolerance used by membership checks.
pub const STRUCT_TOL: f64 = 1e-10;

fn sign_table() -> &'static [[f64; MAX_BLADES]; MAX_BLADES] {
    static TABLE: OnceLock<[[f64; MAX_BLADES]; MAX_BLADES]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[0.0; MAX_BLADES]; MAX_BLADES];
        for (a, row) in t.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                *entry = blade_sign(a as u32, b as u32);
            }
        }
        t
    })
}

/// Sign of `e_A e_B = sign * e_{A xor B}` in Cl(0,m).
pub fn blade_sign(a: u32, b: u32) -> f64 {
    // reorder: every factor of `a` must pass the smaller factors of `b`
    let mut swaps = 0;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    // each shared generator contracts to e_i^2 = -1
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn grade(mask: usize) -> u32 {
    mask.count_ones()
}

/// Multivector of Cl(0,m) stored densely over the 2^m blades.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CliffordElement {
    m: usize,
    c: [f64; MAX_BLADES],
}

impl CliffordElement {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_GENERATORS, "Cl(0,{m}) not supported");
        Self {
            m,
            c: [0.0; MAX_BLADES],
        }
    }

    pub fn scalar(m: usize, s: f64) -> Self {
        let mut x = Self::zero(m);
        x.c[0] = s;
        x
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, 1.0)
    }

    /// Generator `e_{i+1}` (zero-based index `i`).
    pub fn generator(m: usize, i: usize) -> Self {
        assert!(i < m);
        Self::blade(m, 1 << i, 1.0)
    }

    pub fn blade(m: usize, mask: usize, coef: f64) -> Self {
        let mut x = Self::zero(m);
        assert!(mask < (1 << m));
        x.c[mask] = coef;
        x
    }

    pub fn from_coeffs(m: usize, coeffs: &[f64]) -> Result<Self> {
        if m > MAX_GENERATORS {
            return Err(Error::Range(format!("m = {m} exceeds {MAX_GENERATORS}")));
        }
        if coeffs.len() != 1 << m {
            return Err(Error::Dimension(coeffs.len(), 1 << m));
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invariant("non-finite coefficient".into()));
        }
        let mut x = Self::zero(m);
        x.c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(x)
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..self.dim()]
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.c[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, v: f64) {
        assert!(mask < self.dim());
        self.c[mask] = v;
    }

    pub fn scalar_part(&self) -> f64 {
        self.c[0]
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::Dimension(self.m, other.m));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let table = sign_table();
        let d = self.dim();
        let mut out = Self::zero(self.m);
        for a in 0..d {
            let x = self.c[a];
            if x == 0.0 {
                continue;
            }
            for b in 0..d {
                let y = other.c[b];
                if y != 0.0 {
                    out.c[a ^ b] += table[a][b] * x * y;
                }
            }
        }
        out
    }

    fn graded_sign(&self, sign: impl Fn(u32) -> f64) -> Self {
        let mut out = *self;
        for mask in 0..self.dim() {
            out.c[mask] *= sign(grade(mask));
        }
        out
    }

    /// Clifford conjugation: anti-automorphism with `conj(x) = -x` on vectors.
    pub fn conjugate(&self) -> Self {
        self.graded_sign(|k| if (k * (k + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Main involution: automorphism with `x' = -x` on vectors.
    pub fn main_involution(&self) -> Self {
        self.graded_sign(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Reversion `a* = conj(a')`: anti-automorphism fixing vectors.
    pub fn reversion(&self) -> Self {
        self.graded_sign(|k| if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs().iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for v in out.c.iter_mut() {
            *v *= s;
        }
        out
    }

    /// Largest coefficient of grade >= 2.
    pub fn higher_grade_size(&self) -> f64 {
        (0..self.dim())
            .filter(|&mask| grade(mask) >= 2)
            .map(|mask| self.c[mask].abs())
            .fold(0.0, f64::max)
    }

    pub fn is_paravector(&self, tol: f64) -> bool {
        self.higher_grade_size() <= tol
    }

    pub fn is_even(&self, tol: f64) -> bool {
        (0..self.dim())
            .filter(|&mask| grade(mask) % 2 == 1)
            .all(|mask| self.c[mask].abs() <= tol)
    }

    /// Size of the non-scalar part.
    pub fn nonscalar_size(&self) -> f64 {
        self.coeffs()[1..].iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for CliffordElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.m, rhs.m);
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        self
    }
}

impl Sub for CliffordElement {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        assert_eq!(self.m, rhs.m);
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        self
    }
}

impl Neg for CliffordElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for CliffordElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.m, rhs.m, "Clifford dimension mismatch");
        self.mul_unchecked(&rhs)
    }
}

impl Mul<f64> for CliffordElement {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// Element of `R + R^m` inside Cl(0,m); `coords[0]` is the scalar part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Paravector {
    m: usize,
    coords: [f64; MAX_GENERATORS + 1],
}

impl Paravector {
    pub fn new(scalar: f64, vector: &[f64]) -> Self {
        assert!(vector.len() <= MAX_GENERATORS);
        let mut coords = [0.0; MAX_GENERATORS + 1];
        coords[0] = scalar;
        coords[1..=vector.len()].copy_from_slice(vector);
        Self {
            m: vector.len(),
            coords,
        }
    }

    pub fn from_coords(coords: &[f64]) -> Self {
        Self::new(coords[0], &coords[1..])
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn scalar(&self) -> f64 {
        self.coords[0]
    }

    pub fn vector(&self) -> &[f64] {
        &self.coords[1..=self.m]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..=self.m]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords().iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn to_element(&self) -> CliffordElement {
        let mut x = CliffordElement::scalar(self.m, self.coords[0]);
        for i in 0..self.m {
            x.c[1 << i] = self.coords[i + 1];
        }
        x
    }

    /// Projects onto the paravector part, failing if higher grades exceed `tol`.
    pub fn from_element(x: &CliffordElement, tol: f64) -> Result<Self> {
        if !x.is_paravector(tol) {
            return Err(Error::Invariant(format!(
                "not a paravector (higher grades {:.3e})",
                x.higher_grade_size()
            )));
        }
        let v: Vec<f64> = (0..x.m).map(|i| x.c[1 << i]).collect();
        Ok(Self::new(x.c[0], &v))
    }
}

/// Lipschitz condition: `u x (u')^{-1}` is a paravector for every basis
/// paravector `x`, and `u conj(u)` is a nonzero scalar.
pub fn lipschitz_check(u: &CliffordElement) -> bool {
    let n2 = (*u * u.conjugate()).scalar_part();
    let scale = u.norm_sqr();
    if scale == 0.0 || n2 <= 0.0 {
        return false;
    }
    let prod = *u * u.conjugate();
    if prod.nonscalar_size() > STRUCT_TOL * scale {
        return false;
    }
    let up = u.main_involution();
    let up_inv = up.conjugate().scale(1.0 / n2);
    let m = u.generators();
    (0..=m).all(|i| {
        let x = if i == 0 {
            CliffordElement::one(m)
        } else {
            CliffordElement::generator(m, i - 1)
        };
        (*u * x * up_inv).is_paravector(STRUCT_TOL)
    })
}

/// Validated element of the Clifford group generated by nonzero paravectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CliffordGroupElement {
    value: CliffordElement,
    norm: f64,
}

impl CliffordGroupElement {
    pub fn new(value: CliffordElement) -> Result<Self> {
        let norm = value.norm();
        if norm == 0.0 {
            return Err(Error::Invariant("zero element".into()));
        }
        let prod = value * value.conjugate();
        let n2 = norm * norm;
        if (prod.scalar_part() - n2).abs() > STRUCT_TOL * n2 || prod.nonscalar_size() > STRUCT_TOL * n2
        {
            return Err(Error::Invariant("u conj(u) is not |u|^2".into()));
        }
        if !lipschitz_check(&value.scale(1.0 / norm)) {
            return Err(Error::Invariant("Lipschitz condition fails".into()));
        }
        Ok(Self { value, norm })
    }

    /// Wraps a value already known to lie in the group (products of
    /// validated elements); only the norm is recomputed.
    pub fn new_unchecked(value: CliffordElement) -> Self {
        Self {
            value,
            norm: value.norm(),
        }
    }

    pub fn from_paravector(p: &Paravector) -> Result<Self> {
        Self::new(p.to_element())
    }

    pub fn one(m: usize) -> Self {
        Self::new_unchecked(CliffordElement::one(m))
    }

    pub fn value(&self) -> &CliffordElement {
        &self.value
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.value.conjugate().scale(1.0 / (self.norm * self.norm)))
    }

    pub fn normalized(&self) -> Self {
        Self::new_unchecked(self.value.scale(1.0 / self.norm))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new_unchecked(self.value * other.value)
    }

    pub fn main_involution(&self) -> Self {
        Self::new_unchecked(self.value.main_involution())
    }

    /// Twisted conjugation `x -> u x (u')^{-1}` on paravectors.
    pub fn twisted_action(&self, x: &Paravector) -> Paravector {
        let up_inv = self.main_involution().inverse();
        let y = self.value * x.to_element() * *up_inv.value();
        let v: Vec<f64> = (0..x.generators()).map(|i| y.coeff(1 << i)).collect();
        Paravector::new(y.scalar_part(), &v)
    }
}

pub fn invert_group(u: &CliffordGroupElement) -> Result<CliffordGroupElement> {
    if u.norm == 0.0 {
        return Err(Error::Invariant("zero norm".into()));
    }
    Ok(u.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(m: usize, i: usize) -> CliffordElement {
        CliffordElement::generator(m, i)
    }

    #[test]
    fn generator_squares() {
        for m in 1..=4 {
            for i in 0..m {
                assert_eq!(e(m, i) * e(m, i), CliffordElement::scalar(m, -1.0));
            }
        }
    }

    #[test]
    fn small_products() {
        let m = 2;
        let one = CliffordElement::one(m);
        let a = CliffordElement::from_coeffs(m, &[0.5, -1.0, 2.0, 3.0]).unwrap();
        assert_eq!(one * a, a);
        let lhs = (e(m, 0) + e(m, 1)) * (e(m, 0) - e(m, 1));
        assert_eq!(lhs, CliffordElement::blade(m, 0b11, -2.0));
    }

    #[test]
    fn involutions_on_small_elements() {
        let m = 2;
        assert_eq!(e(m, 0).conjugate(), -e(m, 0));
        assert_eq!(CliffordElement::one(m).conjugate(), CliffordElement::one(m));
        let e12 = CliffordElement::blade(m, 0b11, 1.0);
        assert_eq!(e12.reversion(), e(m, 1) * e(m, 0));
        assert_eq!(e12.reversion(), -e12);
    }

    #[test]
    fn involution_signs_match_vector_definitions() {
        // build every blade as an ordered product of generators and apply the
        // vector-level rules factor by factor
        for m in 1..=4 {
            for mask in 0..(1usize << m) {
                let factors: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
                let mut blade = CliffordElement::one(m);
                let mut conj = CliffordElement::one(m);
                let mut main = CliffordElement::one(m);
                for &i in &factors {
                    blade = blade * e(m, i);
                    conj = (-e(m, i)) * conj;
                    main = main * (-e(m, i));
                }
                let rev = factors
                    .iter()
                    .rev()
                    .fold(CliffordElement::one(m), |acc, &i| acc * e(m, i));
                assert_eq!(blade.conjugate(), conj);
                assert_eq!(blade.main_involution(), main);
                assert_eq!(blade.reversion(), rev);
                assert_eq!(blade.reversion(), blade.main_involution().conjugate());
            }
        }
    }

    #[test]
    fn norms() {
        assert_eq!(e(3, 1).norm(), 1.0);
        let x = CliffordElement::one(2) + e(2, 0);
        assert!((x.norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn inverses() {
        let u = CliffordGroupElement::new(e(2, 0)).unwrap();
        assert_eq!(*invert_group(&u).unwrap().value(), -e(2, 0));
        let p = Paravector::new(0.6, &[0.0, 0.8, 0.0]);
        let pu = CliffordGroupElement::from_paravector(&p).unwrap();
        assert!(pu.inverse().value().max_abs_diff(&p.to_element().conjugate()) < 1e-15);
    }

    #[test]
    fn lipschitz_examples() {
        assert!(lipschitz_check(&e(2, 0)));
        let rotor = CliffordElement::one(2) + CliffordElement::blade(2, 0b11, 1.0);
        assert!(lipschitz_check(&rotor));
        // in Cl(0,2) every invertible element is a product of paravectors,
        // so the failing generic element lives in Cl(0,3)
        let mut generic = CliffordElement::one(3) + e(3, 0) + CliffordElement::blade(3, 0b011, 1.0);
        generic.set_coeff(0b100, 0.3);
        assert!(!lipschitz_check(&generic));
    }

    #[test]
    fn mismatched_dimensions() {
        assert_eq!(
            e(2, 0).geometric_product(&e(3, 0)),
            Err(Error::Dimension(2, 3))
        );
    }
}
