use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

/// Tensor grid of radii × angles on the annulus `{ρ ≤ |z| ≤ 1}`.
#[derive(Debug, Clone)]
pub struct PolarGrid {
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
}

impl PolarGrid {
    /// Radii equispaced from `rho` to 1 inclusive; angles `2πj/n`.
    pub fn uniform(rho: f64, radial: usize, angular: usize) -> Self {
        let radial = radial.max(2);
        let radii = (0..radial)
            .map(|i| rho + (1.0 - rho) * i as f64 / (radial - 1) as f64)
            .collect();
        PolarGrid { radii, angles: uniform_angles(angular) }
    }

    /// Chebyshev–Lobatto radii, clustered toward both boundary circles.
    pub fn chebyshev(rho: f64, radial: usize, angular: usize) -> Self {
        let radial = radial.max(2);
        let radii = (0..radial)
            .map(|i| {
                let x = 0.5 * (1.0 - (PI * i as f64 / (radial - 1) as f64).cos());
                rho + (1.0 - rho) * x
            })
            .collect();
        PolarGrid { radii, angles: uniform_angles(angular) }
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points, radius-major.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| self.angles.iter().map(move |&t| Complex64::from_polar(r, t)))
    }

    /// Points on the innermost and outermost rings.
    pub fn boundary_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let inner = self.radii[0];
        let outer = *self.radii.last().unwrap();
        [inner, outer]
            .into_iter()
            .flat_map(move |r| self.angles.iter().map(move |&t| Complex64::from_polar(r, t)))
    }
}

pub(crate) fn uniform_angles(n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..n).map(|j| TAU * j as f64 / n as f64).collect()
}
