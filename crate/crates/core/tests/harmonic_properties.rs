use harnack_core::harmonic::{
    chen_gradient_bound, heinz_bound, interval_gradient_bound, kv_gradient_bound, random_bounded, schwarz_center_bound, DiskSpec,
    HarmonicDiskFunction, IntervalRange, IntervalVariant, TrigPolynomial, DEFAULT_NODES,
};
use harnack_core::sampling::stream;
use proptest::prelude::*;

proptest! {
    #[test]
    fn chen_never_exceeds_kv(u in -0.999..0.999f64, r in 0.0..0.999f64) {
        let chen = chen_gradient_bound(u, r).unwrap();
        let kv = kv_gradient_bound(u, r).unwrap();
        prop_assert!(chen <= kv + 1e-12 * kv, "{chen} > {kv}");
    }

    #[test]
    fn interval_bounds_reduce_affinely(a in -5.0..5.0f64, w in 0.1..5.0f64, t in -0.99..0.99f64, r in 0.0..0.99f64) {
        let range = IntervalRange::new(a, a + w).unwrap();
        let u = range.midpoint() + 0.5 * w * t;
        let n = range.normalize(u);
        prop_assert!((n - t).abs() <= 1e-12 * (1.0 + a.abs() / w));
        let cos = interval_gradient_bound(&range, u, r, IntervalVariant::Cosine).unwrap();
        let quad = interval_gradient_bound(&range, u, r, IntervalVariant::Quadratic).unwrap();
        prop_assert!((cos - 0.5 * w * chen_gradient_bound(n, r).unwrap()).abs() <= 1e-11 * (1.0 + cos));
        prop_assert!((quad - 0.5 * w * kv_gradient_bound(n, r).unwrap()).abs() <= 1e-11 * (1.0 + quad));
    }

    #[test]
    fn pointwise_bounds_grow_towards_the_circle(r in 0.0..0.98f64, dr in 0.001..0.01f64) {
        let d = DiskSpec::unit();
        prop_assert!(schwarz_center_bound(&d, r + dr).unwrap() > schwarz_center_bound(&d, r).unwrap());
        let hb = heinz_bound(r).unwrap();
        prop_assert!(hb < 1.0 && heinz_bound(r + dr).unwrap() > hb);
    }

    #[test]
    fn trig_extension_matches_poisson_engine(seed in any::<u64>(), r in 0.0..0.9f64, t in 0.0..6.3f64) {
        let p = TrigPolynomial::random(&mut stream(seed, 0), 5, 1.0, false);
        let u = p.harmonic(DiskSpec::unit(), DEFAULT_NODES).unwrap();
        let w = [r * t.cos(), r * t.sin()];
        let e = u.eval(w).unwrap();
        prop_assert!((e.value - p.extension(w)).abs() <= 1e-10);
        let g = u.gradient(w).unwrap().value;
        let ge = p.extension_gradient(w);
        prop_assert!((g[0] - ge[0]).hypot(g[1] - ge[1]) <= 1e-9);
        prop_assert!((u.mean_value().value - p.mean()).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn maximum_principle(seed in any::<u64>(), r in 0.0..0.95f64, t in 0.0..6.3f64) {
        let d = DiskSpec::new([0.5, -1.0], 2.0, 3.0).unwrap();
        let u = random_bounded(d, 6, seed).unwrap();
        let v = u.eval([0.5 + 2.0 * r * t.cos(), -1.0 + 2.0 * r * t.sin()]).unwrap().value;
        prop_assert!(v.abs() <= u.boundary_sup() + 1e-9);
        prop_assert!(u.boundary_sup() <= 3.0);
    }
}

#[test]
fn extremal_u0_attains_the_schwarz_bound_on_the_imaginary_axis() {
    let d = DiskSpec::unit();
    let u0 = HarmonicDiskFunction::extremal_u0(d);
    for i in 1..10 {
        let r = i as f64 / 10.0;
        let v = u0.eval([0.0, r]).unwrap().value.abs();
        assert!((v - schwarz_center_bound(&d, r).unwrap()).abs() < 1e-12);
    }
}
