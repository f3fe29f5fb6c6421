//! Dirichlet-energy minimization over monotone boundary correspondences.
//!
//! The unknowns are two monotone degree-one maps from the boundary circles of
//! `A_ρ` onto the target curves, each written as an arc-length position
//! `s(θ) = s₀ + L·∫₀^θ e^ψ / ∫₀^{2π} e^ψ` with a trigonometric density
//! exponent `ψ`. Each trial pair is extended harmonically and scored by its
//! closed-form energy; a BFGS iteration with finite-difference gradients and
//! an Armijo line search drives the energy down.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::curves::{arc_length, check_nested, ArcLengthTable, JordanCurve};
use crate::defaults;
use crate::error::{Error, Result};
use crate::grid::PolarGrid;
use crate::harmonic::{extend_with_planner, AnnulusSource, HarmonicMap};

/// Monotone boundary correspondence.
///
/// `psi` holds `[ψ₀, cos 1, sin 1, …, cos M, sin M]`; `offset` is the
/// arc-length position of `θ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReparam {
    pub psi: Vec<f64>,
    pub offset: f64,
}

impl BoundaryReparam {
    pub fn uniform(degree: usize) -> Self {
        BoundaryReparam { psi: vec![0.0; 2 * degree + 1], offset: 0.0 }
    }

    pub fn degree(&self) -> usize {
        self.psi.len().saturating_sub(1) / 2
    }

    pub fn density_exponent(&self, theta: f64) -> f64 {
        let mut acc = self.psi.first().copied().unwrap_or(0.0);
        for k in 1..=self.degree() {
            let kt = k as f64 * theta;
            acc += self.psi[2 * k - 1] * kt.cos() + self.psi[2 * k] * kt.sin();
        }
        acc
    }

    /// Arc-length positions `s(2πj/n)` for `j < n`.
    ///
    /// The primitive of `e^ψ` is taken spectrally on an oversampled grid, so
    /// positions are accurate to roundoff for moderate `ψ`.
    pub fn arc_positions(&self, total_length: f64, n: usize) -> Vec<f64> {
        let mut planner = FftPlanner::new();
        self.arc_positions_with(total_length, n, &mut planner)
    }

    fn arc_positions_with(&self, total_length: f64, n: usize, planner: &mut FftPlanner<f64>) -> Vec<f64> {
        let over = (64 * (self.degree() + 1)).div_ceil(n).max(4);
        let p = n * over;
        let mut spectrum: Vec<Complex64> = (0..p)
            .map(|j| Complex64::new(self.density_exponent(TAU * j as f64 / p as f64).exp(), 0.0))
            .collect();
        planner.plan_fft_forward(p).process(&mut spectrum);
        let scale = 1.0 / p as f64;
        let mean = spectrum[0].re * scale;
        let half = p / 2;
        spectrum[0] = Complex64::new(0.0, 0.0);
        for (idx, v) in spectrum.iter_mut().enumerate().skip(1) {
            let k = if idx < half { idx as i64 } else { idx as i64 - p as i64 };
            if idx == half && p.is_multiple_of(2) {
                *v = Complex64::new(0.0, 0.0);
            } else {
                *v = *v * scale / Complex64::new(0.0, k as f64);
            }
        }
        planner.plan_fft_inverse(p).process(&mut spectrum);
        let p0 = spectrum[0].re;
        (0..n)
            .map(|j| {
                let theta = TAU * j as f64 / n as f64;
                let primitive = mean * theta + spectrum[j * over].re - p0;
                self.offset + total_length * primitive / (TAU * mean)
            })
            .collect()
    }
}

/// Samples `γ(s(θ_j))` of the reparameterized curve.
pub fn boundary_values(reparam: &BoundaryReparam, curve: &JordanCurve, samples: usize) -> Result<Vec<Complex64>> {
    let table = arc_length(curve, defaults::ARC_TABLE_SIZE)?;
    Ok(boundary_values_on(reparam, &table, samples))
}

pub fn boundary_values_on(reparam: &BoundaryReparam, table: &ArcLengthTable, samples: usize) -> Vec<Complex64> {
    let mut planner = FftPlanner::new();
    values_with(reparam, table, samples, &mut planner)
}

fn values_with(
    reparam: &BoundaryReparam,
    table: &ArcLengthTable,
    samples: usize,
    planner: &mut FftPlanner<f64>,
) -> Vec<Complex64> {
    reparam
        .arc_positions_with(table.total_length(), samples, planner)
        .into_iter()
        .map(|s| table.point_at_length(s))
        .collect()
}

fn default_num_modes() -> usize {
    defaults::NUM_MODES
}
fn default_reparam_degree() -> usize {
    defaults::REPARAM_DEGREE
}
fn default_tol() -> f64 {
    defaults::TOLERANCE
}
fn default_max_iter() -> usize {
    defaults::MAX_ITER
}
fn default_fd_step() -> f64 {
    defaults::FD_STEP
}
fn default_window() -> usize {
    defaults::CONVERGENCE_WINDOW
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizerSettings {
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_fd_step")]
    pub fd_step: f64,
    /// Iterations over which the relative energy decrease is measured.
    #[serde(default = "default_window")]
    pub window: usize,
    /// Arc-length position pinned to `θ = 0` on the outer circle.
    #[serde(default)]
    pub outer_offset: f64,
    /// Boundary samples per circle; defaults to `4·num_modes`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Starting point `[ψ_out, ψ_in, inner offset]`; uniform speed if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<f64>>,
    /// Extra randomly perturbed starts.
    #[serde(default)]
    pub multistart: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for MinimizerSettings {
    fn default() -> Self {
        MinimizerSettings {
            tol: defaults::TOLERANCE,
            max_iter: defaults::MAX_ITER,
            fd_step: defaults::FD_STEP,
            window: defaults::CONVERGENCE_WINDOW,
            outer_offset: 0.0,
            samples: None,
            initial: None,
            multistart: 0,
            seed: 0,
        }
    }
}

/// Problem JSON: `rho`, `outer`, `inner` curve descriptors, `num_modes`,
/// `reparam_degree`, and the optimizer settings at top level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizationProblem {
    #[serde(flatten)]
    pub source: AnnulusSource,
    pub outer: JordanCurve,
    pub inner: JordanCurve,
    #[serde(default = "default_num_modes")]
    pub num_modes: usize,
    #[serde(default = "default_reparam_degree")]
    pub reparam_degree: usize,
    #[serde(flatten)]
    pub settings: MinimizerSettings,
}

impl MinimizationProblem {
    pub fn new(source: AnnulusSource, outer: JordanCurve, inner: JordanCurve) -> Self {
        MinimizationProblem {
            source,
            outer,
            inner,
            num_modes: defaults::NUM_MODES,
            reparam_degree: defaults::REPARAM_DEGREE,
            settings: MinimizerSettings::default(),
        }
    }

    pub fn samples(&self) -> usize {
        self.settings.samples.unwrap_or(4 * self.num_modes).max(2 * self.num_modes + 1)
    }

    pub fn parameter_count(&self) -> usize {
        2 * (2 * self.reparam_degree + 1) + 1
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.settings;
        if self.num_modes == 0 {
            return Err(Error::InvalidInput("num_modes must be positive".into()));
        }
        if !(s.tol > 0.0) || !(s.fd_step > 0.0) || s.max_iter == 0 || s.window == 0 {
            return Err(Error::InvalidInput("tol, fd_step, max_iter and window must be positive".into()));
        }
        if let Some(n) = s.samples {
            if n < 2 * self.num_modes + 1 {
                return Err(Error::TooFewSamples { required: 2 * self.num_modes + 1, got: n });
            }
        }
        if let Some(init) = &s.initial {
            if init.len() != self.parameter_count() {
                return Err(Error::InvalidInput(format!(
                    "initial point has {} entries, expected {}",
                    init.len(),
                    self.parameter_count()
                )));
            }
        }
        check_nested(&self.outer, &self.inner)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizationResult {
    pub map: HarmonicMap,
    pub energy: f64,
    pub energy_history: Vec<f64>,
    pub outer_reparam: BoundaryReparam,
    pub inner_reparam: BoundaryReparam,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub jacobian_min: f64,
}

struct Objective<'a> {
    problem: &'a MinimizationProblem,
    outer_table: ArcLengthTable,
    inner_table: ArcLengthTable,
    block: usize,
    samples: usize,
}

impl<'a> Objective<'a> {
    fn new(problem: &'a MinimizationProblem) -> Result<Self> {
        Ok(Objective {
            problem,
            outer_table: arc_length(&problem.outer, defaults::ARC_TABLE_SIZE)?,
            inner_table: arc_length(&problem.inner, defaults::ARC_TABLE_SIZE)?,
            block: 2 * problem.reparam_degree + 1,
            samples: problem.samples(),
        })
    }

    fn reparams(&self, x: &[f64]) -> (BoundaryReparam, BoundaryReparam) {
        let b = self.block;
        (
            BoundaryReparam { psi: x[..b].to_vec(), offset: self.problem.settings.outer_offset },
            BoundaryReparam { psi: x[b..2 * b].to_vec(), offset: x[2 * b] },
        )
    }

    fn outer_values(&self, x: &[f64], planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
        let (out, _) = self.reparams(x);
        values_with(&out, &self.outer_table, self.samples, planner)
    }

    fn inner_values(&self, x: &[f64], planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
        let (_, inn) = self.reparams(x);
        values_with(&inn, &self.inner_table, self.samples, planner)
    }

    fn extend(&self, outer: &[Complex64], inner: &[Complex64], planner: &mut FftPlanner<f64>) -> Result<HarmonicMap> {
        extend_with_planner(outer, inner, self.problem.source, self.problem.num_modes, planner)
    }

    fn energy(&self, x: &[f64]) -> Result<f64> {
        let mut planner = FftPlanner::new();
        let outer = self.outer_values(x, &mut planner);
        let inner = self.inner_values(x, &mut planner);
        Ok(self.extend(&outer, &inner, &mut planner)?.dirichlet_energy())
    }

    /// Central differences; probes on one boundary reuse the other's samples.
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let h = self.problem.settings.fd_step;
        let mut planner = FftPlanner::new();
        let base_outer = self.outer_values(x, &mut planner);
        let base_inner = self.inner_values(x, &mut planner);
        (0..x.len())
            .into_par_iter()
            .map(|i| {
                let mut planner = FftPlanner::new();
                let mut probe = |delta: f64| -> Result<f64> {
                    let mut y = x.to_vec();
                    y[i] += delta;
                    let map = if i < self.block {
                        let outer = self.outer_values(&y, &mut planner);
                        self.extend(&outer, &base_inner, &mut planner)?
                    } else {
                        let inner = self.inner_values(&y, &mut planner);
                        self.extend(&base_outer, &inner, &mut planner)?
                    };
                    Ok(map.dirichlet_energy())
                };
                Ok((probe(h)? - probe(-h)?) / (2.0 * h))
            })
            .collect()
    }
}

struct Run {
    x: Vec<f64>,
    energy: f64,
    history: Vec<f64>,
    converged: bool,
    iterations: usize,
    gradient_norm: f64,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn non_finite(iteration: usize, what: &str, value: f64) -> Error {
    Error::NonFiniteEnergy { iteration, detail: format!("{what} evaluated to {value}; check the curve data") }
}

fn bfgs(obj: &Objective<'_>, x0: Vec<f64>) -> Result<Run> {
    let settings = &obj.problem.settings;
    let dim = x0.len();
    let mut x = DVector::from_vec(x0);
    let mut f = obj.energy(x.as_slice())?;
    if !f.is_finite() {
        return Err(non_finite(0, "initial energy", f));
    }
    let mut g = DVector::from_vec(obj.gradient(x.as_slice())?);
    if g.iter().any(|v| !v.is_finite()) {
        return Err(non_finite(0, "gradient", f64::NAN));
    }
    let mut hinv = DMatrix::<f64>::identity(dim, dim);
    let mut history = vec![f];
    let gtol = 1e-8 * (1.0 + f.abs());
    let mut converged = false;
    let mut iterations = 0;

    while iterations < settings.max_iter {
        if inf_norm(g.as_slice()) < gtol {
            converged = true;
            break;
        }
        let mut dir = -(&hinv * &g);
        let mut slope = g.dot(&dir);
        if !(slope < 0.0) {
            hinv = DMatrix::identity(dim, dim);
            dir = -g.clone();
            slope = g.dot(&dir);
        }
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..50 {
            let trial = &x + &dir * step;
            let ft = obj.energy(trial.as_slice())?;
            if ft.is_finite() && ft <= f + defaults::ARMIJO * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        iterations += 1;
        let Some((x_new, f_new)) = accepted else {
            // No sufficient decrease: the gradient is at finite-difference noise level.
            converged = inf_norm(g.as_slice()) < 1e-5 * (1.0 + f.abs());
            break;
        };
        let g_new = DVector::from_vec(obj.gradient(x_new.as_slice())?);
        if g_new.iter().any(|v| !v.is_finite()) {
            return Err(non_finite(iterations, "gradient", f64::NAN));
        }
        let s = &x_new - &x;
        let y = &g_new - &g;
        let sy = s.dot(&y);
        if sy > 1e-12 * s.norm() * y.norm() {
            if iterations == 1 {
                hinv *= sy / y.dot(&y);
            }
            let rho = 1.0 / sy;
            let hy = &hinv * &y;
            let yhy = y.dot(&hy);
            hinv += (&s * s.transpose()) * (rho * rho * yhy + rho) - (&hy * s.transpose() + &s * hy.transpose()) * rho;
        }
        x = x_new;
        f = f_new;
        g = g_new;
        history.push(f);

        let w = settings.window;
        if history.len() > w {
            let old = history[history.len() - 1 - w];
            if (old - f) / f.abs().max(f64::MIN_POSITIVE) < settings.tol {
                converged = true;
                break;
            }
        }
    }
    Ok(Run {
        x: x.as_slice().to_vec(),
        energy: f,
        history,
        converged,
        iterations,
        gradient_norm: inf_norm(g.as_slice()),
    })
}

/// Minimizes the Dirichlet energy of harmonic extensions of boundary
/// correspondences, with the unit circle sent to `outer` and the `ρ` circle
/// to `inner`.
pub fn minimize(problem: &MinimizationProblem) -> Result<MinimizationResult> {
    problem.validate()?;
    let obj = Objective::new(problem)?;
    let x0 = problem.settings.initial.clone().unwrap_or_else(|| vec![0.0; problem.parameter_count()]);

    let mut best = bfgs(&obj, x0.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(problem.settings.seed);
    for _ in 0..problem.settings.multistart {
        let start: Vec<f64> = x0.iter().map(|v| v + rng.gen_range(-0.1..0.1)).collect();
        let run = bfgs(&obj, start)?;
        if run.energy < best.energy {
            best = run;
        }
    }

    let (outer_reparam, inner_reparam) = obj.reparams(&best.x);
    let mut planner = FftPlanner::new();
    let outer = obj.outer_values(&best.x, &mut planner);
    let inner = obj.inner_values(&best.x, &mut planner);
    let map = obj.extend(&outer, &inner, &mut planner)?;
    let energy = map.dirichlet_energy();
    let jacobian_min = jacobian_scan(&map, 64, 256);
    Ok(MinimizationResult {
        map,
        energy,
        energy_history: best.history,
        outer_reparam,
        inner_reparam,
        converged: best.converged,
        iterations: best.iterations,
        gradient_norm: best.gradient_norm,
        jacobian_min,
    })
}

/// Minimum Jacobian over a uniform polar grid that includes both boundary
/// circles.
pub fn jacobian_scan(map: &HarmonicMap, radial: usize, angular: usize) -> f64 {
    PolarGrid::uniform(map.rho(), radial, angular)
        .points()
        .map(|z| {
            let (fz, fzb) = map.wirtinger_unchecked(z);
            fz.norm_sqr() - fzb.norm_sqr()
        })
        .fold(f64::INFINITY, f64::min)
}
