use hyperspinor_core::clifford::{CliffordElement, CliffordGroupElement, Paravector};
use hyperspinor_core::linalg::c;
use hyperspinor_core::special::{gamma, jacobi_phi, log_gamma, JacobiParams};
use hyperspinor_core::vahlen::VahlenElement;
use proptest::prelude::*;

fn element(m: usize) -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec(-3.0..3.0f64, 1 << m).prop_map(move |v| CliffordElement::from_coeffs(m, &v).unwrap())
}

fn paravector(m: usize) -> impl Strategy<Value = Paravector> {
    prop::collection::vec(-2.0..2.0f64, m + 1)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| Paravector::from_coords(&v))
}

fn group_element(m: usize) -> impl Strategy<Value = VahlenElement> {
    (prop::collection::vec(paravector(m), 3), 0.0..3.0f64, prop::collection::vec(-2.0..2.0f64, m)).prop_map(
        move |(ps, t, x)| {
            let u = ps
                .iter()
                .fold(CliffordGroupElement::one(m), |acc, p| {
                    acc.mul(&CliffordGroupElement::from_paravector(p).unwrap())
                })
                .normalized();
            VahlenElement::make_k(&u)
                .mul(&VahlenElement::make_a(m, t))
                .mul(&VahlenElement::make_n(&x))
        },
    )
}

proptest! {
    #[test]
    fn product_is_associative(a in element(3), b in element(3), d in element(3)) {
        let l = (a * b) * d;
        let r = a * (b * d);
        prop_assert!(l.max_abs_diff(&r) < 1e-11);
    }

    #[test]
    fn involutions_are_anti_or_automorphisms(a in element(4), b in element(4)) {
        prop_assert!((a * b).reversion().max_abs_diff(&(b.reversion() * a.reversion())) < 1e-11);
        prop_assert!((a * b).conjugate().max_abs_diff(&(b.conjugate() * a.conjugate())) < 1e-11);
        prop_assert!((a * b).main_involution().max_abs_diff(&(a.main_involution() * b.main_involution())) < 1e-11);
    }

    #[test]
    fn clifford_group_norm_is_multiplicative(p in paravector(3), q in paravector(3)) {
        let u = CliffordGroupElement::from_paravector(&p).unwrap();
        let v = CliffordGroupElement::from_paravector(&q).unwrap();
        let uv = CliffordGroupElement::new(u.value().geometric_product(v.value()).unwrap()).unwrap();
        prop_assert!((uv.norm() - u.norm() * v.norm()).abs() < 1e-12 * uv.norm());
    }

    #[test]
    fn vahlen_group_laws(g in group_element(2), h in group_element(2)) {
        prop_assert!(g.mul(&h).validate(1e-9).is_ok());
        let e = g.mul(&g.inverse());
        prop_assert!(e.max_abs_diff(&VahlenElement::identity(2)) < 1e-9 * g.scale().powi(2));
    }

    #[test]
    fn decompositions_round_trip(g in group_element(3)) {
        let iw = g.iwasawa().unwrap();
        prop_assert!(iw.compose().max_abs_diff(&g) < 1e-9 * g.scale());
        let ca = g.cartan().unwrap();
        prop_assert!(ca.t >= 0.0);
        prop_assert!(ca.compose().max_abs_diff(&g) < 1e-9 * g.scale());
    }

    #[test]
    fn log_gamma_recurrence(re in -20.0..20.0f64, im in 0.1..20.0f64) {
        let z = c(re, im);
        let r = gamma(z + 1.0).unwrap() / (z * gamma(z).unwrap());
        prop_assert!((r - 1.0).norm() < 1e-11);
        prop_assert!((log_gamma(z.conj()).unwrap() - log_gamma(z).unwrap().conj()).norm() < 1e-11);
    }

    #[test]
    fn jacobi_even_in_lambda(l in 0.05..6.0f64, t in 0.0..6.0f64, n in 2usize..=5) {
        let (p, q) = JacobiParams::spinor_pairs(n);
        for pp in [p, q] {
            let a = jacobi_phi(pp, c(l, 0.0), t).unwrap();
            let b = jacobi_phi(pp, c(-l, 0.0), t).unwrap();
            prop_assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
        }
    }
}
