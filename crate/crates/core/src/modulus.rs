//! Conformal modulus of a doubly connected domain by the method of
//! fundamental solutions.
//!
//! The harmonic measure `u` (0 on the inner curve, 1 on the outer) is fitted
//! as `u = q₀ + Σ q_j log|z − ζ_j|` with sources `ζ_j` scaled inside the inner
//! curve and outside the outer curve. Only the interior sources carry flux
//! through the inner curve, so with `A = Σ_{interior} q_j` the annulus
//! `A(r, R)` equivalent to the domain has `R/r = exp(1/A)`.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curves::{check_nested, JordanCurve};
use crate::defaults;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct ModulusOptions {
    /// Interior sources sit on the inner curve scaled by this factor about
    /// its centroid.
    pub inner_scale: f64,
    /// Exterior sources sit on the outer curve scaled by this factor.
    pub outer_scale: f64,
    /// Relative singular-value cutoff of the truncated pseudo-inverse.
    pub svd_cutoff: f64,
    /// Boundary residual above which the estimate is flagged.
    pub residual_tol: f64,
}

impl Default for ModulusOptions {
    fn default() -> Self {
        ModulusOptions {
            inner_scale: defaults::INNER_SOURCE_SCALE,
            outer_scale: defaults::OUTER_SOURCE_SCALE,
            svd_cutoff: defaults::SVD_CUTOFF,
            residual_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusEstimate {
    /// `R/r` of the conformally equivalent round annulus.
    pub modulus: f64,
    /// Flux of the harmonic measure through the inner curve, `2πA`.
    pub flux: f64,
    pub boundary_residual_max: f64,
    pub charge_count: usize,
    /// Singular values kept by the truncated solve.
    pub rank: usize,
    /// Set when the boundary residual exceeds the tolerance.
    pub flagged: bool,
}

pub fn compute_modulus(
    outer: &JordanCurve,
    inner: &JordanCurve,
    charges_per_curve: usize,
    collocation_per_curve: usize,
) -> Result<ModulusEstimate> {
    compute_modulus_with(outer, inner, charges_per_curve, collocation_per_curve, &ModulusOptions::default())
}

pub fn compute_modulus_with(
    outer: &JordanCurve,
    inner: &JordanCurve,
    charges_per_curve: usize,
    collocation_per_curve: usize,
    opts: &ModulusOptions,
) -> Result<ModulusEstimate> {
    if charges_per_curve < 4 {
        return Err(Error::InvalidInput("need at least 4 charges per curve".into()));
    }
    if collocation_per_curve < charges_per_curve {
        return Err(Error::InvalidInput(format!(
            "collocation points per curve ({collocation_per_curve}) must be at least the charge count ({charges_per_curve})"
        )));
    }
    check_nested(outer, inner)?;

    let sources = place_sources(outer, inner, charges_per_curve, opts)?;
    let colloc = |curve: &JordanCurve, shift: f64, n: usize| -> Vec<Complex64> {
        (0..n).map(|j| curve.point(TAU * (j as f64 + shift) / n as f64)).collect()
    };
    let inner_pts = colloc(inner, 0.0, collocation_per_curve);
    let outer_pts = colloc(outer, 0.0, collocation_per_curve);

    let rows: Vec<(Complex64, f64)> = inner_pts
        .iter()
        .map(|&z| (z, 0.0))
        .chain(outer_pts.iter().map(|&z| (z, 1.0)))
        .collect();
    let cols = 1 + sources.len();
    let matrix = DMatrix::from_fn(rows.len(), cols, |i, j| basis(rows[i].0, &sources, j));
    let rhs = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));

    let svd = matrix.svd(true, true);
    let sigma_max = svd.singular_values.max();
    if !(sigma_max.is_finite() && sigma_max > 0.0) {
        return Err(Error::IllConditioned(
            "collocation matrix is degenerate; move the charges away from the boundary".into(),
        ));
    }
    let eps = opts.svd_cutoff * sigma_max;
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    if rank < cols.min(8) {
        return Err(Error::IllConditioned(format!(
            "only {rank} of {cols} singular values survive the cutoff; use more or better-placed charges"
        )));
    }
    let coeffs = svd
        .solve(&rhs, eps)
        .map_err(|e| Error::IllConditioned(e.to_string()))?;

    let strength: f64 = coeffs.iter().skip(1).take(charges_per_curve).sum();
    if !(strength > 0.0) || !strength.is_finite() {
        return Err(Error::IllConditioned(format!(
            "interior charge strength {strength} is not positive; check source placement"
        )));
    }

    let potential = |z: Complex64| -> f64 { (0..cols).map(|j| coeffs[j] * basis(z, &sources, j)).sum() };
    let mut residual: f64 = 0.0;
    for (curve, target) in [(inner, 0.0), (outer, 1.0)] {
        for z in colloc(curve, 0.5, collocation_per_curve) {
            residual = residual.max((potential(z) - target).abs());
        }
    }

    Ok(ModulusEstimate {
        modulus: (1.0 / strength).exp(),
        flux: TAU * strength,
        boundary_residual_max: residual,
        charge_count: sources.len(),
        rank,
        flagged: residual > opts.residual_tol,
    })
}

fn basis(z: Complex64, sources: &[Complex64], j: usize) -> f64 {
    if j == 0 {
        1.0
    } else {
        (z - sources[j - 1]).norm().ln()
    }
}

/// Interior sources first, then exterior ones.
fn place_sources(
    outer: &JordanCurve,
    inner: &JordanCurve,
    n: usize,
    opts: &ModulusOptions,
) -> Result<Vec<Complex64>> {
    let ci = inner.centroid();
    let co = outer.centroid();
    let mut sources = Vec::with_capacity(2 * n);
    for j in 0..n {
        let t = TAU * j as f64 / n as f64;
        let s = ci + (inner.point(t) - ci) * opts.inner_scale;
        if !inner.contains(s) {
            return Err(Error::IllConditioned(format!(
                "interior source {s} falls outside the inner curve; reduce the inner scale"
            )));
        }
        sources.push(s);
    }
    for j in 0..n {
        let t = TAU * j as f64 / n as f64;
        let s = co + (outer.point(t) - co) * opts.outer_scale;
        if outer.contains(s) {
            return Err(Error::IllConditioned(format!(
                "exterior source {s} falls inside the outer curve; increase the outer scale"
            )));
        }
        sources.push(s);
    }
    Ok(sources)
}
