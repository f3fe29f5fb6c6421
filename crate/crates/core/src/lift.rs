//! Minimal-surface lifts of stationary harmonic maps.
//!
//! Writing `f = g + conj(h)` with `g' = f_z` and `h' = conj(f_z̄)`, the Hopf
//! identity `g'h' = c/z²` makes `(Re f, Im f, X₃)` an isothermal minimal
//! immersion, where `X₃ = 2√(−c)·log(1/|z|)` for `c < 0` (a catenoidal piece)
//! and `X₃ = 2√c·Arg z` for `c > 0` (one sheet of a helicoid).

use std::f64::consts::TAU;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::grid::PolarGrid;
use crate::harmonic::HarmonicMap;
use crate::hopf::{default_zero_tol, fit_hopf_constant, SignClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftKind {
    Catenoidal,
    Helicoidal,
    Planar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedSurface {
    /// Radius-major grid of `(Re f, Im f, X₃)`.
    pub vertices: Vec<[f64; 3]>,
    /// Zero-based, counterclockwise in the `(r, θ)` parameter plane.
    pub faces: Vec<[usize; 3]>,
    pub per_vertex_null_residual: Vec<f64>,
    pub kind: LiftKind,
    pub c: f64,
    /// Angle of the branch cut of `Arg z` for helicoidal lifts.
    pub seam: Option<f64>,
    pub radial_res: usize,
    pub angular_res: usize,
}

impl LiftedSurface {
    /// Number of vertex columns per ring (one extra on the seam).
    pub fn columns(&self) -> usize {
        match self.kind {
            LiftKind::Helicoidal => self.angular_res + 1,
            _ => self.angular_res,
        }
    }

    pub fn vertex(&self, ring: usize, column: usize) -> [f64; 3] {
        self.vertices[ring * self.columns() + column]
    }

    /// `(min, max)` of the height coordinate.
    pub fn height_range(&self) -> (f64, f64) {
        self.vertices
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v[2]), hi.max(v[2])))
    }
}

/// Kind chosen for a Hopf constant `c` on a map of energy `energy`.
pub fn lift_kind(c: f64, energy: f64) -> LiftKind {
    if c.abs() < defaults::LIFT_ZERO_REL * (1.0 + energy) {
        LiftKind::Planar
    } else if c < 0.0 {
        LiftKind::Catenoidal
    } else {
        LiftKind::Helicoidal
    }
}

/// Builds the lifted mesh on `radial_res` equispaced radii from `ρ` to 1.
///
/// Fails when `c` and a coarse Hopf fit of `map` fall in different sign
/// classes.
pub fn lift(map: &HarmonicMap, c: f64, radial_res: usize, angular_res: usize) -> Result<LiftedSurface> {
    if radial_res < 2 || angular_res < 2 {
        return Err(Error::InvalidInput(format!(
            "lift resolution must be at least 2x2, got {radial_res}x{angular_res}"
        )));
    }
    if !c.is_finite() {
        return Err(Error::InvalidInput(format!("Hopf constant must be finite, got {c}")));
    }
    let fitted = fit_hopf_constant(map, &PolarGrid::chebyshev(map.rho(), 16, 64)).c_fit;
    if SignClass::of(c, default_zero_tol(c)) != SignClass::of(fitted, default_zero_tol(fitted)) {
        return Err(Error::InconsistentHopfSign { given: c, fitted });
    }

    let kind = lift_kind(c, map.dirichlet_energy());
    let rho = map.rho();
    let columns = if kind == LiftKind::Helicoidal { angular_res + 1 } else { angular_res };
    let amplitude = 2.0 * c.abs().sqrt();
    let k3 = closed_form_k3(c);

    let samples: Vec<([f64; 3], f64)> = (0..radial_res * columns)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / columns, idx % columns);
            let r = rho + (1.0 - rho) * i as f64 / (radial_res - 1) as f64;
            let theta = TAU * j as f64 / angular_res as f64;
            let z = Complex64::from_polar(r, theta);
            let w = map.value_unchecked(z);
            let height = match kind {
                LiftKind::Planar => 0.0,
                LiftKind::Catenoidal => amplitude * (1.0 / r).ln(),
                LiftKind::Helicoidal => amplitude * theta,
            };
            let (fz, fzb) = map.wirtinger_unchecked(z);
            let (gp, hp) = (fz, fzb.conj());
            let k3v = if kind == LiftKind::Planar { Complex64::new(0.0, 0.0) } else { k3(z) };
            let null = ((gp + hp).powi(2) + (Complex64::i() * (hp - gp)).powi(2) + k3v * k3v).norm();
            ([w.re, w.im, height], null)
        })
        .collect();

    let wrap = kind != LiftKind::Helicoidal;
    let mut faces = Vec::with_capacity(2 * (radial_res - 1) * angular_res);
    for i in 0..radial_res - 1 {
        for j in 0..angular_res {
            let jn = if wrap { (j + 1) % columns } else { j + 1 };
            let v00 = i * columns + j;
            let v10 = (i + 1) * columns + j;
            let v11 = (i + 1) * columns + jn;
            let v01 = i * columns + jn;
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
        }
    }

    let (vertices, per_vertex_null_residual) = samples.into_iter().unzip();
    Ok(LiftedSurface {
        vertices,
        faces,
        per_vertex_null_residual,
        kind,
        c,
        seam: (kind == LiftKind::Helicoidal).then_some(0.0),
        radial_res,
        angular_res,
    })
}

/// Writes `v` and `f` records with one-based indices.
pub fn write_obj<W: Write>(surface: &LiftedSurface, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# {:?} lift, c = {}", surface.kind, surface.c)?;
    for v in &surface.vertices {
        writeln!(out, "v {} {} {}", v[0], v[1], v[2])?;
    }
    for f in &surface.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    out.flush()
}

pub fn export_obj(surface: &LiftedSurface, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    write_obj(surface, BufWriter::new(file))?;
    Ok(())
}

/// Closed-form `k₃`: `2i√c/z` for `c > 0`, `−2√(−c)/z` for `c < 0`.
pub fn closed_form_k3(c: f64) -> impl Fn(Complex64) -> Complex64 + Send + Sync {
    let numer = if c > 0.0 {
        Complex64::new(0.0, 2.0 * c.sqrt())
    } else {
        Complex64::new(-2.0 * (-c).sqrt(), 0.0)
    };
    move |z| numer / z
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassData {
    pub points: Vec<Complex64>,
    pub k1: Vec<Complex64>,
    pub k2: Vec<Complex64>,
    pub k3: Vec<Complex64>,
    pub lambda: Vec<f64>,
}

/// Coordinate differentials `k₁ = g'+h'`, `k₂ = i(h'−g')` and the closed-form
/// `k₃` for constant `c`, together with `λ = (|g'|+|h'|)²`.
pub fn weierstrass(map: &HarmonicMap, c: f64, grid: &PolarGrid) -> Result<WeierstrassData> {
    let scale = 1e-14 * (1.0 + map.coefficient_norm());
    let k3 = closed_form_k3(c);
    let mut data = WeierstrassData {
        points: Vec::with_capacity(grid.len()),
        k1: Vec::with_capacity(grid.len()),
        k2: Vec::with_capacity(grid.len()),
        k3: Vec::with_capacity(grid.len()),
        lambda: Vec::with_capacity(grid.len()),
    };
    for (index, z) in grid.points().enumerate() {
        let (fz, fzb) = map.wirtinger_unchecked(z);
        let (gp, hp) = (fz, fzb.conj());
        if gp.norm() <= scale {
            return Err(Error::DegenerateWeierstrass { index, z });
        }
        data.points.push(z);
        data.k1.push(gp + hp);
        data.k2.push(Complex64::i() * (hp - gp));
        data.k3.push(if c == 0.0 { Complex64::new(0.0, 0.0) } else { k3(z) });
        data.lambda.push((gp.norm() + hp.norm()).powi(2));
    }
    Ok(data)
}

/// `k₃ = 2i√(h'g')` with the square root continued along each radial ray of
/// `grid`, starting from the principal branch at the innermost radius.
///
/// This always satisfies the null identity pointwise; it is meant for
/// comparing perturbed maps against the closed form.
pub fn k3_general(map: &HarmonicMap, grid: &PolarGrid) -> Vec<Complex64> {
    let nr = grid.radii.len();
    let na = grid.angles.len();
    let mut out = vec![Complex64::new(0.0, 0.0); nr * na];
    for (j, &t) in grid.angles.iter().enumerate() {
        let mut prev: Option<Complex64> = None;
        for (i, &r) in grid.radii.iter().enumerate() {
            let (fz, fzb) = map.wirtinger_unchecked(Complex64::from_polar(r, t));
            let mut v = Complex64::new(0.0, 2.0) * (fz * fzb.conj()).sqrt();
            if let Some(p) = prev {
                if (v * p.conj()).re < 0.0 {
                    v = -v;
                }
            }
            prev = Some(v);
            out[i * na + j] = v;
        }
    }
    out
}

/// `max |k₁²+k₂²+k₃²| / (1+λ)`.
pub fn null_residual(data: &WeierstrassData) -> f64 {
    (0..data.k1.len())
        .map(|i| {
            let s = data.k1[i].powi(2) + data.k2[i].powi(2) + data.k3[i].powi(2);
            s.norm() / (1.0 + data.lambda[i])
        })
        .fold(0.0, f64::max)
}
