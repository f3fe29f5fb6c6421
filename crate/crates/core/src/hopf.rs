//! Hopf differential diagnostics.
//!
//! For a stationary harmonic map on an annulus the Hopf differential
//! `φ = f_z·conj(f_z̄)` equals `c/z²` with a real constant `c`, whose sign
//! compares the moduli of source and target. These routines fit `c`, measure
//! how far a map is from that form, and audit the quasiconformality and
//! energy inequalities that follow from it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curves::{curve_from_points, enclosed_area};
use crate::defaults;
use crate::error::Result;
use crate::grid::PolarGrid;
use crate::harmonic::HarmonicMap;
use crate::modulus::compute_modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Negative,
    Zero,
    Positive,
}

impl SignClass {
    pub fn of(value: f64, zero_tol: f64) -> Self {
        if value.abs() < zero_tol {
            SignClass::Zero
        } else if value > 0.0 {
            SignClass::Positive
        } else {
            SignClass::Negative
        }
    }
}

/// Default zero band `1e-4·(1+|c|)`.
pub fn default_zero_tol(c: f64) -> f64 {
    defaults::ZERO_TOL_REL * (1.0 + c.abs())
}

pub fn hopf_field(map: &HarmonicMap, z: Complex64) -> Result<Complex64> {
    let (fz, fzb) = map.wirtinger(z)?;
    Ok(fz * fzb.conj())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfFit {
    pub c_fit: f64,
    /// Mean of `Im(z²φ)`; zero for a true stationary map.
    pub c_imag: f64,
    /// `max |z²φ − c_fit|` over the grid.
    pub residual_max: f64,
    /// `max |Im(z²φ)|` over both boundary circles.
    pub boundary_reality_max: f64,
}

/// Default grid: 64 Chebyshev radii × 256 angles.
pub fn default_grid(rho: f64) -> PolarGrid {
    PolarGrid::chebyshev(rho, defaults::HOPF_RADII, defaults::HOPF_ANGLES)
}

pub fn fit_hopf_constant(map: &HarmonicMap, grid: &PolarGrid) -> HopfFit {
    let values: Vec<Complex64> = grid.points().map(|z| z * z * hopf_unchecked(map, z)).collect();
    let mean = Complex64::new(compensated_sum(values.iter().map(|v| v.re)), compensated_sum(values.iter().map(|v| v.im)))
        / values.len() as f64;
    let c_fit = mean.re;
    let residual_max = values.iter().map(|v| (v - c_fit).norm()).fold(0.0, f64::max);
    let boundary_reality_max = grid
        .boundary_points()
        .map(|z| (z * z * hopf_unchecked(map, z)).im.abs())
        .fold(0.0, f64::max);
    HopfFit { c_fit, c_imag: mean.im, residual_max, boundary_reality_max }
}

/// Neumaier summation; the fitted constant is a mean over many nearly equal
/// samples, where naive accumulation loses several digits.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        carry += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
    }
    sum + carry
}

fn hopf_unchecked(map: &HarmonicMap, z: Complex64) -> Complex64 {
    let (fz, fzb) = map.wirtinger_unchecked(z);
    fz * fzb.conj()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignClassification {
    pub class: SignClass,
    /// Sign predicted from the moduli: positive when the source modulus is
    /// smaller than the target's.
    pub expected: SignClass,
    pub consistent: bool,
}

/// Moduli count as equal when their logarithms differ by less than
/// `zero_tol`.
pub fn classify_sign(c_fit: f64, mod_source: f64, mod_target: f64, zero_tol: f64) -> SignClassification {
    let class = SignClass::of(c_fit, zero_tol);
    let expected = SignClass::of((mod_target / mod_source).ln(), zero_tol);
    SignClassification { class, expected, consistent: class == expected }
}

/// `K' = 2|c|/ρ²` for `K = 1`.
pub fn kkprime_bound(c: f64, rho: f64) -> f64 {
    2.0 * c.abs() / (rho * rho)
}

/// Minimum over the grid of `2J + K' − ‖Df‖²` with `K' = 2|c|/ρ²`.
pub fn kkprime_audit(map: &HarmonicMap, c: f64, grid: &PolarGrid) -> f64 {
    kkprime_audit_with(map, kkprime_bound(c, map.rho()), 1.0, grid)
}

/// Minimum over the grid of `2KJ + K' − ‖Df‖²`.
pub fn kkprime_audit_with(map: &HarmonicMap, k_prime: f64, k: f64, grid: &PolarGrid) -> f64 {
    grid.points()
        .map(|z| {
            let (fz, fzb) = map.wirtinger_unchecked(z);
            let jac = fz.norm_sqr() - fzb.norm_sqr();
            let dnorm = 2.0 * (fz.norm_sqr() + fzb.norm_sqr());
            2.0 * k * jac + k_prime - dnorm
        })
        .fold(f64::INFINITY, f64::min)
}

/// `E − 2|Ω|`; nonnegative for any orientation-preserving map onto `Ω`.
pub fn energy_bound_check(map: &HarmonicMap, target_area: f64) -> f64 {
    map.dirichlet_energy() - 2.0 * target_area
}

/// Area and modulus of the domain bounded by a map's boundary images.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetDomain {
    pub area: f64,
    pub modulus: f64,
}

impl TargetDomain {
    /// Fits the images of `|z| = 1` and `|z| = ρ` as curves and measures the
    /// domain between them. Either circle may go to the outer boundary.
    pub fn from_map(map: &HarmonicMap) -> Result<Self> {
        let modes = map.order().max(1);
        let samples = (4 * modes + 4).max(64);
        let mut outer = curve_from_points(&map.restrict(1.0, samples), modes)?;
        let mut inner = curve_from_points(&map.restrict(map.rho(), samples), modes)?;
        if enclosed_area(&inner) > enclosed_area(&outer) {
            std::mem::swap(&mut outer, &mut inner);
        }
        let est = compute_modulus(
            &outer,
            &inner,
            defaults::CHARGES_PER_CURVE,
            defaults::COLLOCATION_PER_CURVE,
        )?;
        Ok(TargetDomain { area: enclosed_area(&outer) - enclosed_area(&inner), modulus: est.modulus })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfReport {
    pub c_fit: f64,
    pub c_imag: f64,
    pub residual_max: f64,
    pub boundary_reality_max: f64,
    pub sign_class: SignClass,
    pub sign_consistent: bool,
    pub mod_source: f64,
    pub mod_target: f64,
    pub kkprime_slack_min: f64,
    pub energy_bound_slack: f64,
    /// Set when `|c_imag|` exceeds the zero band.
    pub imag_flagged: bool,
}

impl HopfReport {
    pub fn build(map: &HarmonicMap, target: TargetDomain, grid: &PolarGrid) -> Self {
        let fit = fit_hopf_constant(map, grid);
        let zero_tol = default_zero_tol(fit.c_fit);
        let mod_source = map.source().modulus();
        let sign = classify_sign(fit.c_fit, mod_source, target.modulus, zero_tol);
        HopfReport {
            c_fit: fit.c_fit,
            c_imag: fit.c_imag,
            residual_max: fit.residual_max,
            boundary_reality_max: fit.boundary_reality_max,
            sign_class: sign.class,
            sign_consistent: sign.consistent,
            mod_source,
            mod_target: target.modulus,
            kkprime_slack_min: kkprime_audit(map, fit.c_fit, grid),
            energy_bound_slack: energy_bound_check(map, target.area),
            imag_flagged: fit.c_imag.abs() > zero_tol,
        }
    }

    /// Full report, measuring the target from the map's boundary images.
    pub fn analyze(map: &HarmonicMap) -> Result<Self> {
        let target = TargetDomain::from_map(map)?;
        Ok(Self::build(map, target, &default_grid(map.rho())))
    }
}
