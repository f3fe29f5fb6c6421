use std::f64::consts::TAU;

use annulus_core::hopf::default_grid;
use annulus_core::*;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn map_strategy() -> impl Strategy<Value = HarmonicMap> {
    (0.3..0.8f64, 1..=6usize)
        .prop_flat_map(|(rho, order)| {
            (Just(rho), Just(order), coeff(), coeff(), prop::collection::vec((coeff(), coeff(), coeff(), coeff()), order))
        })
        .prop_map(|(rho, order, a0, b0, terms)| {
            let mut m = HarmonicMap::new(AnnulusSource::new(rho).unwrap(), order);
            m.set_a0(a0);
            m.set_b0(b0);
            for (i, (ap, am, bp, bm)) in terms.into_iter().enumerate() {
                let k = i as i32 + 1;
                let s = 1.0 / (1.0 + k as f64);
                m.set_a(k, ap * s);
                m.set_a(-k, am * s);
                m.set_b(k, bp * s);
                m.set_b(-k, bm * s);
            }
            m
        })
}

fn interior_point(map: &HarmonicMap, u: f64, t: f64) -> Complex64 {
    let rho = map.rho();
    Complex64::from_polar(rho + (1.0 - rho) * (0.1 + 0.8 * u), t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maps_are_harmonic(map in map_strategy(), u in 0.0..1.0f64, t in 0.0..TAU) {
        let z = interior_point(&map, u, t);
        let h = 1e-3;
        let f = |w: Complex64| map.evaluate(w).unwrap();
        let lap = (f(z + h) + f(z - h) + f(z + Complex64::i() * h) + f(z - Complex64::i() * h) - f(z) * 4.0) / (h * h);
        // Five-point truncation error is at most h²/6 · sup|∂⁴f| near z.
        let r = z.norm() - 2.0 * h;
        let fourth: f64 = map.a0().norm() * 6.0 / r.powi(4)
            + map.terms().map(|(k, a, b)| {
                let k = k as f64;
                (a.norm() + b.norm()) * (k * (k - 1.0) * (k - 2.0) * (k - 3.0)).abs() * r.powf(k - 4.0).max((r + 4.0 * h).powf(k - 4.0))
            }).sum::<f64>();
        let roundoff = 1e-14 * f(z).norm().max(1.0) / (h * h);
        prop_assert!(lap.norm() < h * h / 6.0 * fourth * 2.0 + roundoff, "{lap}");
    }

    #[test]
    fn jacobian_matches_finite_differences(map in map_strategy(), u in 0.0..1.0f64, t in 0.0..TAU) {
        let z = interior_point(&map, u, t);
        let h = 1e-6;
        let f = |w: Complex64| map.evaluate(w).unwrap();
        let fx = (f(z + h) - f(z - h)) / (2.0 * h);
        let fy = (f(z + Complex64::i() * h) - f(z - Complex64::i() * h)) / (2.0 * h);
        let det = fx.re * fy.im - fx.im * fy.re;
        let scale = fx.norm_sqr() + fy.norm_sqr();
        prop_assert!((map.jacobian(z).unwrap() - det).abs() < 1e-6 * (1.0 + scale));
        let (fz, fzb) = map.wirtinger(z).unwrap();
        prop_assert!((fz - (fx - Complex64::i() * fy) * 0.5).norm() < 1e-6 * (1.0 + scale.sqrt()));
        prop_assert!((fzb - (fx + Complex64::i() * fy) * 0.5).norm() < 1e-6 * (1.0 + scale.sqrt()));
    }

    #[test]
    fn extension_round_trips(map in map_strategy(), extra in 0..40usize) {
        let n = 2 * map.order() + 1 + extra;
        let back = extend_from_boundary(&map.restrict(1.0, n), &map.restrict(map.rho(), n), map.source(), map.order()).unwrap();
        let scale = map.coefficient_norm();
        prop_assert!((back.a0() - map.a0()).norm() < 1e-10 * scale);
        for (k, a, b) in map.terms() {
            prop_assert!((back.a(k) - a).norm() < 1e-10 * scale);
            prop_assert!((back.b(k) - b).norm() < 1e-10 * scale);
        }
    }

    #[test]
    fn energy_is_nonnegative_and_quadratic(map in map_strategy(), s in -3.0..3.0f64) {
        let e = map.dirichlet_energy();
        prop_assert!(e >= 0.0);
        let mut scaled = map.clone();
        scaled.set_a0(map.a0() * s);
        for (k, a, b) in map.terms() {
            scaled.set_a(k, a * s);
            scaled.set_b(k, b * s);
        }
        prop_assert!((scaled.dirichlet_energy() - s * s * e).abs() <= 1e-12 * (1.0 + e) * (1.0 + s * s));
    }

    #[test]
    fn map_json_round_trips(map in map_strategy()) {
        let json = serde_json::to_string(&map).unwrap();
        let back: HarmonicMap = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, map);
    }

    #[test]
    fn null_sum_tracks_hopf_defect(eps in -0.05..0.05f64, k in 2..5i32) {
        let pair = AnnulusPair::new(0.5, 2.0 / 3.0).unwrap();
        let mut m = nitsche_minimizer(pair);
        m.set_b(k, Complex64::new(eps, 0.0));
        let grid = PolarGrid::uniform(0.5, 9, 64);
        let data = weierstrass(&m, nitsche_c(pair), &grid).unwrap();
        let fit = fit_hopf_constant(&m, &grid);
        let hopf_defect = grid.points().map(|z| {
            let (fz, fzb) = m.wirtinger(z).unwrap();
            (z * z * fz * fzb.conj() - nitsche_c(pair)).norm()
        }).fold(0.0, f64::max);
        let nr = null_residual(&data);
        // |Σk²| = 4|z²φ − c|/|z|², and 1+λ is bounded on the grid.
        prop_assert!(nr <= 4.0 * hopf_defect / 0.25 + 1e-14);
        if eps.abs() > 1e-3 {
            prop_assert!(nr > 0.0 && fit.residual_max > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn reference_map_invariants(r in 0.1..0.9f64, big_r in 0.1..0.9f64) {
        let pair = AnnulusPair::new(r, big_r).unwrap();
        let m = nitsche_minimizer(pair);
        let fit = fit_hopf_constant(&m, &default_grid(r));
        prop_assert!((fit.c_fit - nitsche_c(pair)).abs() < 1e-12, "{} {}", fit.c_fit, nitsche_c(pair));
        prop_assert!((m.dirichlet_energy() - nitsche_energy(pair)).abs() < 1e-12 * nitsche_energy(pair));
        for j in 0..32 {
            let t = TAU * j as f64 / 32.0;
            prop_assert!((m.evaluate(Complex64::from_polar(1.0, t)).unwrap().norm() - 1.0).abs() < 1e-12);
            prop_assert!((m.evaluate(Complex64::from_polar(r, t)).unwrap().norm() - big_r).abs() < 1e-12);
        }
        if (r - big_r).abs() > 1e-3 {
            let c = nitsche_c(pair);
            let cls = classify_sign(c, 1.0 / r, 1.0 / big_r, 1e-12);
            prop_assert!(cls.consistent);
            prop_assert_eq!(c < 0.0, big_r > r);
        }
    }

    #[test]
    fn chord_arc_constant_is_similarity_invariant(
        a in 1.0..2.0f64, b in 0.5..1.0f64, scale in 0.2..5.0f64, angle in 0.0..TAU, sx in -3.0..3.0f64
    ) {
        let curve = JordanCurve::ellipse(Complex64::new(0.0, 0.0), a, b).unwrap();
        let base = chord_arc_constant(&curve, 256).unwrap();
        let moved = curve.transformed(Complex64::from_polar(scale, angle), Complex64::new(sx, -sx)).unwrap();
        let other = chord_arc_constant(&moved, 256).unwrap();
        prop_assert!((base - other).abs() < 1e-9 * base);
        prop_assert!(base >= std::f64::consts::FRAC_PI_2 - 1e-9);
    }

    #[test]
    fn curve_fit_recovers_coefficients(c1 in 0.8..1.2f64, c2 in coeff(), cm in coeff()) {
        let modes = [(1, Complex64::new(c1, 0.0)), (2, c2 * 0.1), (-1, cm * 0.1)];
        let curve = JordanCurve::from_modes(&modes).unwrap();
        let fit = curve_from_points(&curve.sample(64), 4).unwrap();
        for m in -4..=4 {
            prop_assert!((fit.coeff(m) - curve.coeff(m)).norm() < 1e-12);
        }
    }

    #[test]
    fn reparam_positions_are_increasing(psi in prop::collection::vec(-0.5..0.5f64, 7), offset in -2.0..2.0f64) {
        let reparam = BoundaryReparam { psi, offset };
        let pos = reparam.arc_positions(TAU, 128);
        prop_assert!((pos[0] - offset).abs() < 1e-12);
        prop_assert!(pos.windows(2).all(|w| w[1] > w[0]));
        prop_assert!(pos[127] < offset + TAU);
    }
}

#[test]
fn modulus_matches_reference_pairs() {
    for (r, big_r) in [(0.5, 2.0 / 3.0), (2.0 / 3.0, 0.5), (0.3, 0.7)] {
        let outer = JordanCurve::circle(Complex64::new(0.0, 0.0), 1.0).unwrap();
        let inner = JordanCurve::circle(Complex64::new(0.0, 0.0), big_r).unwrap();
        let est = compute_modulus(&outer, &inner, 64, 128).unwrap();
        assert!((est.modulus - 1.0 / big_r).abs() < 1e-9);
        let target = TargetDomain::from_map(&nitsche_minimizer(AnnulusPair::new(r, big_r).unwrap())).unwrap();
        assert!((target.modulus - 1.0 / big_r).abs() < 1e-8);
        assert!((target.area - AnnulusPair::new(r, big_r).unwrap().target_area()).abs() < 1e-10);
    }
}
