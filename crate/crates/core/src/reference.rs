//! Closed-form minimizers between round annuli.
//!
//! For `A_r = {r < |z| < 1}` onto `A_R = {R < |w| < 1}` with outer circle to
//! outer circle, the energy minimizer is
//! `f(z) = (1−rR)/(1−r²)·z + r(R−r)/((1−r²) z̄)`, a diffeomorphism up to the
//! boundary while `R < 2r/(1+r²)`. Its energy follows from integrating
//! `|f_z|² + |f_z̄|²` over the annulus; the cross terms vanish by angular
//! orthogonality.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{AnnulusSource, HarmonicMap};

/// Source inner radius `r` and target inner radius `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusPair {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

impl AnnulusPair {
    pub fn new(r: f64, big_r: f64) -> Result<Self> {
        for (name, v) in [("r", r), ("R", big_r)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidInput(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(AnnulusPair { r, big_r })
    }

    /// Moduli `(1/r, 1/R)` of source and target.
    pub fn moduli(&self) -> (f64, f64) {
        (1.0 / self.r, 1.0 / self.big_r)
    }

    /// Area `π(1 − R²)` of the target annulus.
    pub fn target_area(&self) -> f64 {
        std::f64::consts::PI * (1.0 - self.big_r * self.big_r)
    }
}

pub fn nitsche_minimizer(pair: AnnulusPair) -> HarmonicMap {
    let AnnulusPair { r, big_r } = pair;
    let mut map = HarmonicMap::new(AnnulusSource::new(r).expect("validated pair"), 1);
    map.set_a(1, Complex64::new((1.0 - r * big_r) / (1.0 - r * r), 0.0));
    map.set_b(-1, Complex64::new(r * (big_r - r) / (1.0 - r * r), 0.0));
    map
}

/// Hopf constant `c = −r(R−r)(1−rR)/(1−r²)²` of the minimizer.
pub fn nitsche_c(pair: AnnulusPair) -> f64 {
    let AnnulusPair { r, big_r } = pair;
    -r * (big_r - r) * (1.0 - r * big_r) / (1.0 - r * r).powi(2)
}

/// `E = 2π((1−rR)² + (R−r)²)/(1−r²)`.
pub fn nitsche_energy(pair: AnnulusPair) -> f64 {
    let AnnulusPair { r, big_r } = pair;
    TAU * ((1.0 - r * big_r).powi(2) + (big_r - r).powi(2)) / (1.0 - r * r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NitscheBound {
    pub diffeomorphic_minimizer_exists: bool,
    pub critical: bool,
}

/// Whether `R ≤ 2r/(1+r²)`, and whether the pair sits exactly on the bound.
pub fn nitsche_bound(pair: AnnulusPair) -> NitscheBound {
    let threshold = 2.0 * pair.r / (1.0 + pair.r * pair.r);
    let critical = (pair.big_r - threshold).abs() <= 1e-12;
    NitscheBound {
        diffeomorphic_minimizer_exists: critical || pair.big_r <= threshold,
        critical,
    }
}

/// `w(z) = (r² + |z|²)/(z̄(1+r²))`, the minimizer onto `A(2r/(1+r²), 1)`.
pub fn critical_map(r: f64) -> Result<HarmonicMap> {
    let mut map = HarmonicMap::new(AnnulusSource::new(r)?, 1);
    map.set_a(1, Complex64::new(1.0 / (1.0 + r * r), 0.0));
    map.set_b(-1, Complex64::new(r * r / (1.0 + r * r), 0.0));
    Ok(map)
}
