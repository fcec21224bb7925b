//! Small complex matrix helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Operator 2-norm (largest singular value).
pub fn op_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if a.nrows() == 1 || a.ncols() == 1 {
        return a.norm();
    }
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Dimension of the joint commutant `{X : X A = A X for all A}`, from the
/// null space of the stacked commutation system.
pub fn commutant_dimension(samples: &[CMatrix], tol: f64) -> usize {
    let d = samples[0].nrows();
    let unknowns = d * d;
    let mut system = CMatrix::zeros(samples.len() * unknowns, unknowns);
    for (j, a) in samples.iter().enumerate() {
        for col in 0..unknowns {
            let mut e = CMatrix::zeros(d, d);
            e[(col / d, col % d)] = c(1.0, 0.0);
            let r = &e * a - a * &e;
            for row in 0..unknowns {
                system[(j * unknowns + row, col)] = r[(row / d, row % d)];
            }
        }
    }
    let sv = system.svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    let rank = sv.iter().filter(|&&s| s > tol * smax).count();
    unknowns - rank
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
