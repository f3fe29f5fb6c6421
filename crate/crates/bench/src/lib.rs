//! Fixtures shared by the kernel benchmarks.

use annulus_core::{AnnulusSource, Complex64, HarmonicMap, JordanCurve, MinimizationProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Map with coefficients uniform in the unit square, damped like `1/(1+|k|)`.
pub fn random_map(rho: f64, order: usize, seed: u64) -> HarmonicMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |s: f64| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * s;
    let mut map = HarmonicMap::new(AnnulusSource::new(rho).expect("rho in (0, 1)"), order);
    map.set_a0(draw(1.0));
    map.set_b0(draw(1.0));
    for k in 1..=order as i32 {
        let s = 1.0 / (1.0 + k as f64);
        map.set_a(k, draw(s));
        map.set_a(-k, draw(s));
        map.set_b(k, draw(s));
        map.set_b(-k, draw(s));
    }
    map
}

/// Ellipse with semi-axes 1.25 and 0.9 around a circle of radius 0.45, from `A_{1/2}`.
pub fn ellipse_problem(num_modes: usize, reparam_degree: usize) -> MinimizationProblem {
    let outer = JordanCurve::ellipse(Complex64::new(0.0, 0.0), 1.25, 0.9).expect("valid ellipse");
    let inner = JordanCurve::circle(Complex64::new(0.0, 0.0), 0.45).expect("valid circle");
    let mut p = MinimizationProblem::new(AnnulusSource::new(0.5).expect("valid rho"), outer, inner);
    p.num_modes = num_modes;
    p.reparam_degree = reparam_degree;
    p
}
