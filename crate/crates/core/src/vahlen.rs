//! G = Spin_0(1,n) as Vahlen matrices `(a b; b' a')` over Cl(0, n-1).
//!
//! Two parametrizations of A appear. [`VahlenElement::make_a`] uses the matrix
//! parameter, `a_t = (cosh t, sinh t; sinh t, cosh t)`, and [`VahlenElement::iwasawa`] /
//! [`VahlenElement::cartan`] report `log|a+b|` and `log(|a|+|b|)` in that unit.
//! The analysis layer works with the geodesic parameter `s = 2t`, for which
//! `a_s` moves the origin of the unit ball by hyperbolic distance `s`, the
//! Poisson kernel is `exp(-2 rho H)` and the invariant measure is
//! `(2 sinh s)^{n-1} ds dk`; see [`geodesic_a`], [`iwasawa_height`] and
//! [`cartan_radius`].

use crate::clifford::{CliffordElement, CliffordGroupElement, Paravector, STRUCT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{op_norm, CMatrix};
use crate::spin::SpinRepresentation;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VahlenElement {
    a: CliffordElement,
    b: CliffordElement,
}

#[derive(Clone, Debug)]
pub struct IwasawaFactors {
    pub k: VahlenElement,
    pub t: f64,
    pub x: Vec<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct CartanFactors {
    pub k1: VahlenElement,
    pub t: f64,
    pub k2: VahlenElement,
}

impl VahlenElement {
    pub fn new(a: CliffordElement, b: CliffordElement) -> Result<Self> {
        let g = Self::new_unchecked(a, b);
        g.validate(STRUCT_TOL)?;
        Ok(g)
    }

    pub fn new_unchecked(a: CliffordElement, b: CliffordElement) -> Self {
        assert_eq!(a.generators(), b.generators());
        Self { a, b }
    }

    pub fn identity(m: usize) -> Self {
        Self::new_unchecked(CliffordElement::one(m), CliffordElement::zero(m))
    }

    /// `(cosh t, sinh t; sinh t, cosh t)`.
    pub fn make_a(m: usize, t: f64) -> Self {
        Self::new_unchecked(
            CliffordElement::scalar(m, t.cosh()),
            CliffordElement::scalar(m, t.sinh()),
        )
    }

    /// `(1-x, x; -x, 1+x)` for a vector `x` of R^m.
    pub fn make_n(x: &[f64]) -> Self {
        let m = x.len();
        let xv = vector_element(x);
        Self::new_unchecked(CliffordElement::one(m) - xv, xv)
    }

    /// `diag(u, u')` for a unit Clifford group element.
    pub fn make_k(u: &CliffordGroupElement) -> Self {
        let m = u.value().generators();
        Self::new_unchecked(*u.value(), CliffordElement::zero(m))
    }

    pub fn a(&self) -> &CliffordElement {
        &self.a
    }

    pub fn b(&self) -> &CliffordElement {
        &self.b
    }

    /// Number of Clifford generators, n - 1.
    pub fn generators(&self) -> usize {
        self.a.generators()
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let na = self.a.norm_sqr();
        let nb = self.b.norm_sqr();
        let scale = na + nb;
        if ((na - nb) - 1.0).abs() > tol * scale {
            return Err(Error::Invariant(format!("|a|^2 - |b|^2 = {}", na - nb)));
        }
        let bas = self.b * self.a.reversion();
        if bas.higher_grade_size() > tol * scale {
            return Err(Error::Invariant("b a* is not a paravector".into()));
        }
        for (name, x) in [("a", &self.a), ("b", &self.b)] {
            let n2 = x.norm_sqr();
            if n2 > 0.0 {
                let prod = *x * x.conjugate();
                if prod.nonscalar_size() > tol * n2 {
                    return Err(Error::Invariant(format!("{name} is not in the Clifford group")));
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, h: &Self) -> Self {
        let hb_p = h.b.main_involution();
        let ha_p = h.a.main_involution();
        Self::new_unchecked(self.a * h.a + self.b * hb_p, self.a * h.b + self.b * ha_p)
    }

    /// Product with validation of the result.
    pub fn multiply(&self, h: &Self) -> Result<Self> {
        let g = self.mul(h);
        g.validate(STRUCT_TOL)?;
        Ok(g)
    }

    /// `(conj(a), -b*)`, the pseudo-determinant being 1.
    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.a.conjugate(), -self.b.reversion())
    }

    /// Rescale so that `|a|^2 - |b|^2 = 1` holds exactly.
    pub fn renormalized(&self) -> Self {
        let det = self.a.norm_sqr() - self.b.norm_sqr();
        let s = 1.0 / det.sqrt();
        Self::new_unchecked(self.a.scale(s), self.b.scale(s))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.a.max_abs_diff(&other.a).max(self.b.max_abs_diff(&other.b))
    }

    /// Size used for relative comparisons.
    pub fn scale(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr()).sqrt()
    }

    pub fn is_in_k(&self, tol: f64) -> bool {
        self.b.norm() <= tol && ((self.a.norm() - 1.0).abs() <= tol)
    }

    /// The `u` of a diagonal element `diag(u, u')`.
    pub fn k_value(&self) -> CliffordGroupElement {
        CliffordGroupElement::new_unchecked(self.a)
    }

    /// `log|a+b|` in the matrix parameter.
    pub fn iwasawa_t(&self) -> f64 {
        (self.a + self.b).norm().ln()
    }

    /// `(a+b)/|a+b|`.
    pub fn kappa(&self) -> CliffordGroupElement {
        CliffordGroupElement::new_unchecked(self.a + self.b).normalized()
    }

    /// `log(|a|+|b|)` in the matrix parameter.
    pub fn cartan_t(&self) -> f64 {
        (self.a.norm() + self.b.norm()).ln()
    }

    pub fn iwasawa(&self) -> Result<IwasawaFactors> {
        let m = self.generators();
        let t = self.iwasawa_t();
        let kappa = self.kappa();
        let k = Self::make_k(&kappa);
        // g = k a_t n_x gives u^{-1} b = sinh t + e^t x
        let ub = *kappa.inverse().value() * self.b;
        let x: Vec<f64> = (0..m).map(|i| ub.coeff(1 << i) * (-t).exp()).collect();
        let f = IwasawaFactors { k, t, x };
        let rebuilt = f.compose();
        let err = rebuilt.max_abs_diff(self) / self.scale();
        if err > 1e-9 {
            return Err(Error::Invariant(format!("Iwasawa reconstruction error {err:.3e}")));
        }
        Ok(f)
    }

    pub fn cartan(&self) -> Result<CartanFactors> {
        let m = self.generators();
        let na = self.a.norm();
        let nb = self.b.norm();
        if nb <= 1e-15 * na {
            return Ok(CartanFactors {
                k1: Self::make_k(&CliffordGroupElement::new_unchecked(self.a).normalized()),
                t: 0.0,
                k2: Self::identity(m),
            });
        }
        let t = (na + nb).ln();
        let a_p = self.a.main_involution();
        let a_p_inv = a_p.conjugate().scale(1.0 / (na * na));
        let xi = Paravector::from_element(&(self.b * a_p_inv).scale(na / nb), 1e-8)?;
        let u1 = section_rotor(&xi);
        let u2 = u1.inverse().mul(&CliffordGroupElement::new_unchecked(self.a.scale(1.0 / na)));
        let f = CartanFactors {
            k1: Self::make_k(&u1),
            t,
            k2: Self::make_k(&u2),
        };
        let rebuilt = f.compose();
        let err = rebuilt.max_abs_diff(self) / self.scale();
        if err > 1e-9 {
            return Err(Error::Invariant(format!("Cartan reconstruction error {err:.3e}")));
        }
        Ok(f)
    }

    /// Moebius action `(a x + b)(b' x + a')^{-1}` on paravectors.
    pub fn ball_action(&self, p: &Paravector) -> Result<Paravector> {
        let x = p.to_element();
        let num = self.a * x + self.b;
        let den = self.b.main_involution() * x + self.a.main_involution();
        let d2 = den.norm_sqr();
        if d2 == 0.0 {
            return Err(Error::Invariant("point mapped to infinity".into()));
        }
        let y = num * den.conjugate().scale(1.0 / d2);
        Paravector::from_element(&y, 1e-9 * (1.0 + y.norm()))
    }
}

impl IwasawaFactors {
    pub fn compose(&self) -> VahlenElement {
        let m = self.x.len();
        self.k
            .mul(&VahlenElement::make_a(m, self.t))
            .mul(&VahlenElement::make_n(&self.x))
    }
}

impl CartanFactors {
    pub fn compose(&self) -> VahlenElement {
        let m = self.k1.generators();
        self.k1.mul(&VahlenElement::make_a(m, self.t)).mul(&self.k2)
    }
}

fn vector_element(x: &[f64]) -> CliffordElement {
    let mut v = CliffordElement::zero(x.len());
    for (i, xi) in x.iter().enumerate() {
        v.set_coeff(1 << i, *xi);
    }
    v
}

/// Unit rotor `u` with `u 1 (u')^{-1} = xi` for a unit paravector `xi`.
///
/// Main chart `(1 + xi)/|1 + xi|`; near `xi = -1` the chart `u(-xi) e_1` is used.
pub fn section_rotor(xi: &Paravector) -> CliffordGroupElement {
    let m = xi.generators();
    if xi.scalar() > -0.5 {
        let w = CliffordElement::one(m) + xi.to_element();
        CliffordGroupElement::new_unchecked(w).normalized()
    } else {
        let neg: Vec<f64> = xi.coords().iter().map(|v| -v).collect();
        let u = section_rotor(&Paravector::from_coords(&neg));
        u.mul(&CliffordGroupElement::new_unchecked(CliffordElement::generator(m, 0)))
    }
}

/// `distance(g, h) = A+(g^{-1} h)` in the matrix parameter.
pub fn distance(g: &VahlenElement, h: &VahlenElement) -> f64 {
    g.inverse().mul(h).cartan_t()
}

/// `a_s` in the geodesic parameter, `make_a(s/2)`.
pub fn geodesic_a(m: usize, s: f64) -> VahlenElement {
    VahlenElement::make_a(m, 0.5 * s)
}

/// Iwasawa projection H(g) in the geodesic parameter, `2 log|a+b|`.
pub fn iwasawa_height(g: &VahlenElement) -> f64 {
    2.0 * g.iwasawa_t()
}

/// Cartan projection A+(g) in the geodesic parameter, `2 log(|a|+|b|)`.
pub fn cartan_radius(g: &VahlenElement) -> f64 {
    2.0 * g.cartan_t()
}

/// `E(g,x) = A+(gx) - A+(x) - H(g k1(x))` in the geodesic parameter.
pub fn e_function(g: &VahlenElement, x: &VahlenElement) -> Result<f64> {
    let k1 = x.cartan()?.k1;
    Ok(cartan_radius(&g.mul(x)) - cartan_radius(x) - iwasawa_height(&g.mul(&k1)))
}

/// Operator-norm distance between `tau(k2(g a_R))^{-1} P tau(k1(g a_R))^{-1}`
/// and `P tau(kappa(g))^{-1}`, with `a_R = make_a(R)` (matrix parameter).
pub fn cartan_limit_defect(
    g: &VahlenElement,
    r: f64,
    rep: &SpinRepresentation,
    p_sigma: &CMatrix,
) -> Result<f64> {
    let m = g.generators();
    let h = g.mul(&VahlenElement::make_a(m, r));
    let f = h.cartan()?;
    let t1 = rep.evaluate_inverse(&f.k1.k_value())?;
    let t2 = rep.evaluate_inverse(&f.k2.k_value())?;
    let lhs = t2 * p_sigma * t1;
    let rhs = p_sigma * rep.evaluate_inverse(&g.kappa())?;
    Ok(op_norm(&(lhs - rhs)))
}
