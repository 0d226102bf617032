use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qdilog_core::qdilog::{faddeev_phi, qpochhammer, theta_q, theta_q_series, PochIndex, Representation};
use qdilog_core::transforms::{ramanujan_1psi1, tropical_weil_phi, weil_forward};
use qdilog_core::weights::{tropical_irf_m, MRep, WeightEvaluator};
use qdilog_core::{DilogSpec, GroupElement, GroupId, NumericsSpec, SubgroupB};

fn polar(r: f64, t: f64) -> C64 {
    C64::from_polar(r, t)
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

fn group_strategy() -> impl Strategy<Value = GroupId> {
    prop_oneof![
        Just(GroupId::RealLine),
        (0u32..3).prop_map(|k| GroupId::RealTimesCyclic(2 * k + 1)),
        Just(GroupId::CircleTimesIntegers),
    ]
}

fn element(g: GroupId, re: f64, im: f64, m: i64) -> GroupElement {
    match g {
        GroupId::CircleTimesIntegers => GroupElement::CircleInt(polar((im * 0.3).exp(), re), m),
        _ => g.element(C64::new(re, im), m),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_and_kernel(g in group_strategy(), a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64,
                            ai in -0.3..0.3f64, bi in -0.3..0.3f64, m in -5i64..5, n in -5i64..5, k in -5i64..5) {
        let x = element(g, a, ai, m);
        let y = element(g, b, bi, n);
        let z = element(g, c, 0.0, k);
        let s = g.add(&x, &y).unwrap();
        prop_assert!(close(g.gaussian(&s).unwrap(), g.gaussian(&x).unwrap() * g.gaussian(&y).unwrap() * g.fourier_kernel(&x, &y).unwrap(), 1e-11));
        prop_assert!(close(g.fourier_kernel(&s, &z).unwrap(), g.fourier_kernel(&x, &z).unwrap() * g.fourier_kernel(&y, &z).unwrap(), 1e-11));
        let chi = g.bicharacter(&x, &y).unwrap() * g.bicharacter(&y, &x).unwrap();
        prop_assert!(close(chi, g.fourier_kernel(&x, &y).unwrap(), 1e-11));
        let back = g.sub(&s, &y).unwrap();
        prop_assert!(close(back.coord(), x.coord(), 1e-12));
    }

    #[test]
    fn inversion_relation(t in 0.0..TAU, m in -6i64..6, q in 0.0..0.7f64, x in -2.5..2.5f64) {
        let spec = NumericsSpec::default();
        let g = GroupId::CircleTimesIntegers;
        for d in [DilogSpec::Tropical, DilogSpec::Dgg { q }] {
            let e = GroupElement::CircleInt(polar(1.0, t), m);
            let lhs = d.eval(&e, &spec).unwrap() * d.eval(&g.neg(&e).unwrap(), &spec).unwrap();
            let p0 = d.at_identity(&spec).unwrap();
            prop_assert!(close(lhs, p0 * p0 * g.gaussian(&e).unwrap(), 1e-12));
        }
        let d = DilogSpec::Faddeev { b: polar(1.0, 0.6) };
        let e = GroupElement::real(x);
        let lhs = d.eval(&e, &spec).unwrap() * d.eval(&GroupElement::real(-x), &spec).unwrap();
        let p0 = d.at_identity(&spec).unwrap();
        prop_assert!(close(lhs, p0 * p0 * GroupId::RealLine.gaussian(&e).unwrap(), 1e-9));
    }

    #[test]
    fn faddeev_difference_equation(x in -1.0..1.0f64) {
        let b = polar(1.0, std::f64::consts::PI / 5.0);
        let spec = NumericsSpec::default();
        let h = C64::new(0.0, 0.5) * b;
        let xc = C64::new(x, 0.0);
        for rep in [Representation::Product, Representation::FaddeevIntegral] {
            let lo = faddeev_phi(b, xc - h, rep, &spec).unwrap();
            let hi = faddeev_phi(b, xc + h, rep, &spec).unwrap();
            let factor = C64::new(1.0, 0.0) + (2.0 * std::f64::consts::PI * b * xc).exp();
            prop_assert!(close(lo, factor * hi, 1e-8));
        }
    }

    #[test]
    fn theta_identities(qr in 0.05..0.7f64, qt in -1.0..1.0f64, xr in 0.3..3.0f64, xt in 0.0..TAU) {
        let q = polar(qr, qt);
        let x = polar(xr, xt);
        let p = theta_q(q, x).unwrap();
        prop_assert!(close(p, theta_q_series(q, x).unwrap(), 1e-11));
        prop_assert!(close(p, theta_q(q, x.inv()).unwrap(), 1e-11));
        prop_assert!(close(theta_q(q, q * q * x).unwrap() * q * x, p, 1e-11));
    }

    #[test]
    fn qpoch_shift(ar in 0.0..2.0f64, at in 0.0..TAU, qr in 0.0..0.8f64, qt in 0.0..TAU) {
        let (a, q) = (polar(ar, at), polar(qr, qt));
        let one = C64::new(1.0, 0.0);
        let full = qpochhammer(a, q, PochIndex::Infinite).unwrap();
        let tail = qpochhammer(a * q, q, PochIndex::Infinite).unwrap();
        prop_assert!(close(full, (one - a) * tail, 1e-12));
    }

    #[test]
    fn psi_summation(seed in 0u64..10_000) {
        let spec = NumericsSpec::default().with_tol(1e-14);
        for [a, b, z, q] in qdilog_core::verify::psi_samples(seed, 1) {
            let (l, r) = ramanujan_1psi1(a, b, z, q, &spec).unwrap();
            prop_assert!(close(l, r, 1e-10));
        }
    }

    #[test]
    fn tropical_weil_series(vr in 1.1..3.0f64, vt in 0.0..TAU, s in 0.05..0.9f64, ut in 0.0..TAU, m in -3i64..3, n in -3i64..3) {
        let v = polar(vr, vt);
        let u = polar(s / vr, ut);
        let spec = NumericsSpec::default().with_tol(1e-14);
        let sub = SubgroupB::of(GroupId::CircleTimesIntegers);
        let d = DilogSpec::Tropical;
        let r = weil_forward(&sub, &|p| d.eval(p, &spec), &GroupElement::CircleInt(u, m), &GroupElement::CircleInt(v, n), &spec).unwrap();
        let cf = tropical_weil_phi(u, m, v, n).unwrap();
        prop_assert!(close(r.value, cf, 1e-11));
        prop_assert!(close(tropical_weil_phi(u, m + 1, v, n).unwrap() * v, cf, 1e-14));
    }

    #[test]
    fn tropical_m_forms(seed in 0u64..10_000) {
        let spec = NumericsSpec::default().with_tol(1e-14);
        for (x, y, z, m) in qdilog_core::verify::tropical_m_samples(seed, 1) {
            let a = tropical_irf_m(x, 0, y, 0, z, m, MRep::Contour, &spec).unwrap().value;
            let b = tropical_irf_m(x, 0, y, 0, z, m, MRep::Sum, &spec).unwrap().value;
            let r = tropical_irf_m(x, 0, y, 0, z, m, MRep::Residue, &spec).unwrap().value;
            prop_assert!(close(a, b, 1e-11) && close(a, r, 1e-11), "{} {} {}", a, b, r);
        }
    }

    #[test]
    fn weight_symmetry(zr in 1.2..3.0f64, zt in 0.0..TAU, m in -3i64..3, wt in 0.0..TAU, n in -6i64..6, q in 0.0..0.6f64) {
        for d in [DilogSpec::Tropical, DilogSpec::Dgg { q }] {
            let e = WeightEvaluator::new(d, NumericsSpec::default()).unwrap();
            let lam = GroupElement::CircleInt(polar(zr, zt), m);
            let x = GroupElement::CircleInt(polar(1.0, wt), n);
            let a = e.fv_weight(&lam, &x).unwrap();
            let b = e.fv_weight(&lam, &e.group().neg(&x).unwrap()).unwrap();
            let r = e.fv_weight_ratio(&lam, &x).unwrap();
            prop_assert!(close(a, b, 1e-11) && close(a, r, 1e-11));
        }
    }
}
