//! Numerical probes of boundary regularity.
//!
//! None of these certify anything: they sample a map near its boundary and
//! report quantities that must stay bounded (Lipschitz constant), fit a
//! Hölder exponent to the boundary derivative, and check the length-area
//! inequality `∫₀^r l_τ²/τ dτ ≤ πK·A(r) + (π/2)K'r²` on cross-arcs.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::hopf::{fit_hopf_constant, default_grid, kkprime_bound, TargetDomain};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzProbe {
    /// Supremum of `‖Df‖` over all rings.
    pub sup: f64,
    /// Running supremum after each refinement level.
    pub history: Vec<f64>,
    /// Change of the running supremum at the last level.
    pub final_increment: f64,
}

/// `‖Df‖ = (2(|f_z|²+|f_z̄|²))^{1/2}` sampled on rings at distance
/// `(1−ρ)/2·2^{−k}` from each boundary circle, `k < rings`.
pub fn lipschitz_probe(map: &HarmonicMap, rings: usize) -> LipschitzProbe {
    let rho = map.rho();
    let half = 0.5 * (1.0 - rho);
    let angular = defaults::HOPF_ANGLES;
    let ring_sup = |r: f64| -> f64 {
        (0..angular)
            .map(|j| {
                let (fz, fzb) = map.wirtinger_unchecked(Complex64::from_polar(r, TAU * j as f64 / angular as f64));
                (2.0 * (fz.norm_sqr() + fzb.norm_sqr())).sqrt()
            })
            .fold(0.0, f64::max)
    };
    let levels: Vec<f64> = (0..rings.max(1))
        .into_par_iter()
        .map(|k| {
            let d = half * 0.5f64.powi(k as i32);
            ring_sup(rho + d).max(ring_sup(1.0 - d))
        })
        .collect();
    let mut history = Vec::with_capacity(levels.len());
    let mut running: f64 = 0.0;
    for v in levels {
        running = running.max(v);
        history.push(running);
    }
    let final_increment = match history.len() {
        0 | 1 => 0.0,
        n => history[n - 1] - history[n - 2],
    };
    LipschitzProbe { sup: running, history, final_increment }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCircle {
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderFit {
    pub exponent: f64,
    pub constant: f64,
    pub r_squared: f64,
    /// Share of derivative energy at frequencies above `samples/2`.
    pub tail_fraction: f64,
    /// Set when `tail_fraction` exceeds 1%.
    pub underresolved: bool,
}

/// Fits `ω(d) ≈ C·d^β` to the modulus of continuity of `∂_θ f` on a boundary
/// circle, over separations `2π/samples ≤ d ≤ 0.1`.
pub fn boundary_holder_fit(map: &HarmonicMap, which: BoundaryCircle, samples: usize) -> Result<HolderFit> {
    if samples < 64 {
        return Err(Error::TooFewSamples { required: 64, got: samples });
    }
    let radius = match which {
        BoundaryCircle::Outer => 1.0,
        BoundaryCircle::Inner => map.rho(),
    };
    let n = map.order() as i64;
    let coeffs = map.circle_coefficients(radius);
    let deriv: Vec<(i64, Complex64)> =
        (-n..=n).map(|k| (k, coeffs[(k + n) as usize] * Complex64::new(0.0, k as f64))).collect();
    let total: f64 = deriv.iter().map(|(_, c)| c.norm_sqr()).sum();
    let tail: f64 = deriv.iter().filter(|(k, _)| k.unsigned_abs() as usize > samples / 2).map(|(_, c)| c.norm_sqr()).sum();
    let tail_fraction = if total > 0.0 { tail / total } else { 0.0 };

    let values: Vec<Complex64> = (0..samples)
        .into_par_iter()
        .map(|j| {
            let t = TAU * j as f64 / samples as f64;
            deriv.iter().map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * t)).sum()
        })
        .collect();

    let step = TAU / samples as f64;
    let max_sep = ((0.1 / step).floor() as usize).max(2);
    let omega: Vec<(f64, f64)> = (1..=max_sep)
        .map(|m| {
            let w = (0..samples)
                .map(|j| (values[(j + m) % samples] - values[j]).norm())
                .fold(0.0, f64::max);
            (m as f64 * step, w)
        })
        .collect();

    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if omega.iter().all(|&(_, w)| w <= 1e-14 * (1.0 + scale)) {
        // Constant derivative: Lipschitz with zero constant.
        return Ok(HolderFit { exponent: 1.0, constant: 0.0, r_squared: 1.0, tail_fraction, underresolved: tail_fraction > 0.01 });
    }
    let pts: Vec<(f64, f64)> = omega
        .iter()
        .filter(|&&(_, w)| w > 0.0)
        .map(|&(d, w)| (d.ln(), w.ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(HolderFit {
        exponent: slope,
        constant: intercept.exp(),
        r_squared,
        tail_fraction,
        underresolved: tail_fraction > 0.01,
    })
}

/// Minimum over `r ∈ (0, r_max]` of `πK·A(r) + (π/2)K'r² − F(r)` around a
/// boundary point `z0`.
///
/// `Δ_r` is the part of the disk `|z − z0| < r` inside the annulus and `k_τ`
/// the arc of `|z − z0| = τ` within it. Points on the inner circle are
/// handled by composing with the inversion `ζ ↦ ρ/ζ`, which preserves the
/// annulus and the Hopf constant and turns them into outer boundary points.
pub fn length_area_check(
    map: &HarmonicMap,
    z0: Complex64,
    r_max: f64,
    steps: usize,
    k: f64,
    k_prime: f64,
) -> Result<f64> {
    let rho = map.rho();
    let radius = z0.norm();
    let inverted = if (radius - 1.0).abs() <= 1e-9 {
        false
    } else if (radius - rho).abs() <= 1e-9 * rho {
        true
    } else {
        return Err(Error::InvalidInput(format!("{z0} is not on a boundary circle of the annulus")));
    };
    if !(r_max > 0.0 && r_max < 1.0 - rho) {
        return Err(Error::InvalidInput(format!("r_max must lie in (0, {}), got {r_max}", 1.0 - rho)));
    }
    if steps == 0 {
        return Err(Error::InvalidInput("steps must be positive".into()));
    }
    let w0 = if inverted { Complex64::from_polar(1.0, -z0.arg()) } else { Complex64::from_polar(1.0, z0.arg()) };
    let alpha = w0.arg();

    // (f_ζ, f_ζ̄) of the map seen from the outer side.
    let derivs = |zeta: Complex64| -> (Complex64, Complex64) {
        if inverted {
            let w = rho / zeta;
            let dw = -rho / (zeta * zeta);
            let (fz, fzb) = map.wirtinger_unchecked(w);
            (fz * dw, fzb * dw.conj())
        } else {
            map.wirtinger_unchecked(zeta)
        }
    };

    let arc_points = defaults::ARC_POINTS;
    let h = r_max / steps as f64;
    // Per radius: (l_τ²/τ, τ·∫_arc J dt).
    let rows: Vec<(f64, f64)> = (1..=steps)
        .into_par_iter()
        .map(|i| {
            let tau = h * i as f64;
            let start = (-tau / 2.0).acos();
            let width = TAU - 2.0 * start;
            let dt = width / arc_points as f64;
            let mut len = 0.0;
            let mut jac = 0.0;
            for m in 0..arc_points {
                let t = alpha + start + (m as f64 + 0.5) * dt;
                let e = Complex64::from_polar(1.0, t);
                let (fz, fzb) = derivs(w0 + e * tau);
                let tangent = Complex64::i() * e * tau;
                len += (fz * tangent + fzb * tangent.conj()).norm() * dt;
                jac += (fz.norm_sqr() - fzb.norm_sqr()) * dt;
            }
            (len * len / tau, tau * jac)
        })
        .collect();

    let mut f_acc = 0.0;
    let mut a_acc = 0.0;
    let mut prev = (0.0, 0.0);
    let mut slack_min = f64::INFINITY;
    for (i, row) in rows.into_iter().enumerate() {
        f_acc += 0.5 * h * (prev.0 + row.0);
        a_acc += 0.5 * h * (prev.1 + row.1);
        prev = row;
        let r = h * (i + 1) as f64;
        slack_min = slack_min.min(PI * k * a_acc + 0.5 * PI * k_prime * r * r - f_acc);
    }
    Ok(slack_min)
}

/// Exponent guaranteed for the boundary extension: `α` when the source
/// modulus is at least the target's, `α/(2+α)` otherwise.
pub fn kellogg_prediction(alpha: f64, mod_source: f64, mod_target: f64) -> f64 {
    if mod_source >= mod_target {
        alpha
    } else {
        alpha / (2.0 + alpha)
    }
}

/// `slack_min` over `points` equispaced boundary points on each circle, with
/// `K = 1` and `K' = 2|c|/ρ²`.
pub fn length_area_sweep(map: &HarmonicMap, c: f64, points: usize) -> Result<f64> {
    let rho = map.rho();
    let k_prime = kkprime_bound(c, rho);
    let r_max = 0.99 * (1.0 - rho);
    let mut worst = f64::INFINITY;
    for radius in [1.0, rho] {
        for j in 0..points {
            let z0 = Complex64::from_polar(radius, TAU * j as f64 / points as f64);
            worst = worst.min(length_area_check(map, z0, r_max, defaults::LENGTH_AREA_STEPS, 1.0, k_prime)?);
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub lipschitz_sup: f64,
    pub lipschitz_final_increment: f64,
    /// Smaller of the outer and inner fits.
    pub holder_exponent_fit: f64,
    pub holder_constant: f64,
    pub holder_r_squared: f64,
    pub holder_underresolved: bool,
    pub predicted_exponent: f64,
    pub alpha: f64,
    pub mod_source: f64,
    pub mod_target: f64,
    pub c: f64,
    pub length_area_slack_min: f64,
}

/// Runs all probes; `c` defaults to the fitted Hopf constant.
pub fn assess(map: &HarmonicMap, target: &TargetDomain, c: Option<f64>, alpha: f64) -> Result<RegularityReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let c = c.unwrap_or_else(|| fit_hopf_constant(map, &default_grid(map.rho())).c_fit);
    let lip = lipschitz_probe(map, defaults::LIPSCHITZ_RINGS);
    let outer = boundary_holder_fit(map, BoundaryCircle::Outer, defaults::HOLDER_SAMPLES)?;
    let inner = boundary_holder_fit(map, BoundaryCircle::Inner, defaults::HOLDER_SAMPLES)?;
    let fit = if outer.exponent <= inner.exponent { outer } else { inner };
    let mod_source = map.source().modulus();
    Ok(RegularityReport {
        lipschitz_sup: lip.sup,
        lipschitz_final_increment: lip.final_increment,
        holder_exponent_fit: fit.exponent,
        holder_constant: fit.constant,
        holder_r_squared: fit.r_squared,
        holder_underresolved: outer.underresolved || inner.underresolved,
        predicted_exponent: kellogg_prediction(alpha, mod_source, target.modulus),
        alpha,
        mod_source,
        mod_target: target.modulus,
        c,
        length_area_slack_min: length_area_sweep(map, c, 8)?,
    })
}
