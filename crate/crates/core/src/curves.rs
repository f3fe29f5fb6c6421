//! Smooth Jordan curves stored as trigonometric polynomials.
//!
//! A curve is `γ(t) = Σ c_m e^{imt}` for `m ∈ [-M, M]`, `t ∈ [0, 2π)`. All
//! representable curves are analytic, so every derivative exists everywhere
//! and the boundary-smoothness hypotheses of the regularity results hold
//! automatically. Curves are always stored positively oriented; the
//! orientation of the input is remembered in [`JordanCurve::input_orientation`].

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eight-point Gauss–Legendre rule on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Speeds below this fraction of the maximum speed count as singular.
const REGULARITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

/// JSON form of a curve: `{ "modes": [[m, re, im], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub modes: Vec<(i32, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveDescriptor", into = "CurveDescriptor")]
pub struct JordanCurve {
    max_mode: usize,
    /// `coeffs[m + max_mode] = c_m`.
    coeffs: Vec<Complex64>,
    input_orientation: Orientation,
}

impl TryFrom<CurveDescriptor> for JordanCurve {
    type Error = Error;

    fn try_from(desc: CurveDescriptor) -> Result<Self> {
        let modes: Vec<(i32, Complex64)> = desc
            .modes
            .iter()
            .map(|&(m, re, im)| (m, Complex64::new(re, im)))
            .collect();
        JordanCurve::from_modes(&modes)
    }
}

impl From<JordanCurve> for CurveDescriptor {
    fn from(curve: JordanCurve) -> Self {
        CurveDescriptor {
            modes: curve
                .modes()
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .map(|(m, c)| (m, c.re, c.im))
                .collect(),
        }
    }
}

impl JordanCurve {
    /// Builds a curve from `(m, c_m)` pairs. Repeated modes are summed.
    ///
    /// The curve is checked for regularity and simplicity, and reversed if it
    /// is negatively oriented.
    pub fn from_modes(modes: &[(i32, Complex64)]) -> Result<Self> {
        if modes.iter().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("curve coefficients must be finite".into()));
        }
        let max_mode = modes.iter().map(|(m, _)| m.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * max_mode + 1];
        for &(m, c) in modes {
            coeffs[(m + max_mode as i32) as usize] += c;
        }
        Self::from_dense(max_mode, coeffs)
    }

    fn from_dense(max_mode: usize, mut coeffs: Vec<Complex64>) -> Result<Self> {
        let signed = signed_area_of(max_mode, &coeffs);
        let spread: f64 = coeffs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != max_mode)
            .map(|(i, c)| (i as f64 - max_mode as f64).abs() * c.norm_sqr())
            .sum::<f64>()
            * PI;
        if !signed.is_finite() || spread <= 1e-24 * coeffs[max_mode].norm_sqr() || signed.abs() <= 1e-12 * spread {
            return Err(Error::DegenerateFit("curve encloses no area".into()));
        }
        let input_orientation = if signed > 0.0 {
            Orientation::Positive
        } else {
            // γ(-t) has coefficients c_{-m}.
            coeffs.reverse();
            Orientation::Negative
        };
        let curve = JordanCurve { max_mode, coeffs, input_orientation };
        curve.check_regular()?;
        curve.check_simple()?;
        Ok(curve)
    }

    /// Circle `center + radius·e^{it}`.
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        Self::from_modes(&[(0, center), (1, Complex64::new(radius, 0.0))])
    }

    /// Axis-aligned ellipse `center + a cos t + i b sin t`.
    pub fn ellipse(center: Complex64, a: f64, b: f64) -> Result<Self> {
        Self::from_modes(&[
            (0, center),
            (1, Complex64::new((a + b) / 2.0, 0.0)),
            (-1, Complex64::new((a - b) / 2.0, 0.0)),
        ])
    }

    pub fn max_mode(&self) -> usize {
        self.max_mode
    }

    pub fn input_orientation(&self) -> Orientation {
        self.input_orientation
    }

    /// Coefficient `c_m`, zero outside the stored band.
    pub fn coeff(&self, m: i32) -> Complex64 {
        let idx = m + self.max_mode as i32;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Iterates `(m, c_m)` for `m = -M..=M`.
    pub fn modes(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        let offset = self.max_mode as i32;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i32 - offset, c))
    }

    fn eval_series(&self, t: f64, order: u32) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.modes() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let factor = match order {
                0 => Complex64::new(1.0, 0.0),
                _ => Complex64::new(0.0, m as f64).powu(order),
            };
            acc += c * factor * Complex64::from_polar(1.0, m as f64 * t);
        }
        acc
    }

    pub fn point(&self, t: f64) -> Complex64 {
        self.eval_series(t, 0)
    }

    pub fn derivative(&self, t: f64) -> Complex64 {
        self.eval_series(t, 1)
    }

    pub fn second_derivative(&self, t: f64) -> Complex64 {
        self.eval_series(t, 2)
    }

    pub fn speed(&self, t: f64) -> f64 {
        self.derivative(t).norm()
    }

    /// Uniform samples `γ(2πj/n)`.
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        (0..n).map(|j| self.point(TAU * j as f64 / n as f64)).collect()
    }

    /// Applies `z ↦ scale·z + shift` to the curve.
    pub fn transformed(&self, scale: Complex64, shift: Complex64) -> Result<Self> {
        let mut modes: Vec<(i32, Complex64)> = self.modes().map(|(m, c)| (m, c * scale)).collect();
        modes.push((0, shift));
        Self::from_modes(&modes)
    }

    /// Signed area `π Σ m |c_m|²`; positive after construction.
    pub fn signed_area(&self) -> f64 {
        signed_area_of(self.max_mode, &self.coeffs)
    }

    /// Area centroid, from a fine polygonal approximation.
    pub fn centroid(&self) -> Complex64 {
        let pts = self.sample(2048);
        let mut area = 0.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..pts.len() {
            let p = pts[i];
            let q = pts[(i + 1) % pts.len()];
            let cross = p.re * q.im - q.re * p.im;
            area += cross;
            acc += (p + q) * cross;
        }
        acc / (3.0 * area)
    }

    /// Winding number of the curve about `p`, from `n` samples.
    pub fn winding_number(&self, p: Complex64, n: usize) -> i64 {
        let pts = self.sample(n.max(16));
        let mut total = 0.0;
        for i in 0..pts.len() {
            let a = pts[i] - p;
            let b = pts[(i + 1) % pts.len()] - p;
            total += (b / a).arg();
        }
        (total / TAU).round() as i64
    }

    pub fn contains(&self, p: Complex64) -> bool {
        self.winding_number(p, 1024) != 0
    }

    fn check_regular(&self) -> Result<()> {
        let n = (32 * (2 * self.max_mode + 1)).max(1024);
        let speeds: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                (t, self.speed(t))
            })
            .collect();
        let max_speed = speeds.iter().map(|s| s.1).fold(0.0, f64::max);
        for &(t, speed) in &speeds {
            if speed <= REGULARITY_TOL * max_speed || !speed.is_finite() {
                return Err(Error::IrregularCurve { t, speed });
            }
        }
        Ok(())
    }

    fn check_simple(&self) -> Result<()> {
        let n = (16 * (2 * self.max_mode + 1)).clamp(256, 1024);
        let pts = self.sample(n);
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (pts[j], pts[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    return Err(Error::SelfIntersecting {
                        t1: TAU * i as f64 / n as f64,
                        t2: TAU * j as f64 / n as f64,
                    });
                }
            }
        }
        Ok(())
    }
}

fn signed_area_of(max_mode: usize, coeffs: &[Complex64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (i as f64 - max_mode as f64) * c.norm_sqr())
        .sum::<f64>()
        * PI
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let u = b - a;
    let v = c - a;
    u.re * v.im - u.im * v.re
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    (d1 * d2 < 0.0) && (d3 * d4 < 0.0)
}

/// Checks that `inner` lies strictly inside `outer` without touching it.
pub fn check_nested(outer: &JordanCurve, inner: &JordanCurve) -> Result<()> {
    let n = 512;
    let outer_pts = outer.sample(n);
    let inner_pts = inner.sample(n);
    if let Some(p) = inner_pts.iter().find(|&&p| !outer.contains(p)) {
        return Err(Error::InvalidDomain(format!("inner curve point {p} lies outside the outer curve")));
    }
    for i in 0..n {
        let (a, b) = (inner_pts[i], inner_pts[(i + 1) % n]);
        for j in 0..n {
            let (c, d) = (outer_pts[j], outer_pts[(j + 1) % n]);
            if segments_cross(a, b, c, d) {
                return Err(Error::InvalidDomain("inner and outer curves intersect".into()));
            }
        }
    }
    Ok(())
}

/// Least-squares trigonometric fit of closed, uniformly parameterized
/// samples: sample `j` is taken to lie at `t_j = 2πj/n`.
pub fn curve_from_points(samples: &[Complex64], num_modes: usize) -> Result<JordanCurve> {
    let n = samples.len();
    let width = 2 * num_modes + 1;
    if n < width {
        return Err(Error::TooFewSamples { required: width, got: n });
    }
    let design = DMatrix::from_fn(n, width, |j, col| {
        let m = col as f64 - num_modes as f64;
        Complex64::from_polar(1.0, m * TAU * j as f64 / n as f64)
    });
    let rhs = DVector::from_column_slice(samples);
    let normal = design.adjoint() * &design;
    let moment = design.adjoint() * rhs;
    let chol = normal
        .cholesky()
        .ok_or_else(|| Error::DegenerateFit("normal equations are singular".into()))?;
    let solution = chol.solve(&moment);
    if solution.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::DegenerateFit("fit produced non-finite coefficients".into()));
    }
    let modes: Vec<(i32, Complex64)> = solution
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as i32 - num_modes as i32, c))
        .collect();
    JordanCurve::from_modes(&modes)
}

/// Cumulative arc length on a uniform parameter grid.
#[derive(Debug, Clone)]
pub struct ArcLengthTable {
    curve: JordanCurve,
    knots: Vec<f64>,
    lengths: Vec<f64>,
}

/// Builds the arc-length table of `curve` on `grid_size` uniform intervals.
pub fn arc_length(curve: &JordanCurve, grid_size: usize) -> Result<ArcLengthTable> {
    if grid_size == 0 {
        return Err(Error::InvalidInput("arc-length grid must be non-empty".into()));
    }
    curve.check_regular()?;
    let h = TAU / grid_size as f64;
    let knots: Vec<f64> = (0..=grid_size).map(|i| i as f64 * h).collect();
    let mut lengths = Vec::with_capacity(grid_size + 1);
    lengths.push(0.0);
    let mut acc = 0.0;
    for w in knots.windows(2) {
        acc += gauss_speed(curve, w[0], w[1]);
        lengths.push(acc);
    }
    Ok(ArcLengthTable { curve: curve.clone(), knots, lengths })
}

fn gauss_speed(curve: &JordanCurve, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL_NODES
        .iter()
        .zip(GL_WEIGHTS.iter())
        .map(|(x, w)| w * curve.speed(mid + half * x))
        .sum::<f64>()
        * half
}

impl ArcLengthTable {
    pub fn curve(&self) -> &JordanCurve {
        &self.curve
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.lengths
    }

    pub fn total_length(&self) -> f64 {
        *self.lengths.last().unwrap()
    }

    fn interval_of(&self, t: f64) -> usize {
        let h = TAU / (self.knots.len() - 1) as f64;
        ((t / h).floor() as usize).min(self.knots.len() - 2)
    }

    /// Arc length from `γ(0)` to `γ(t)`, `t ∈ [0, 2π]`.
    pub fn length_at(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, TAU);
        let i = self.interval_of(t);
        self.lengths[i] + gauss_speed(&self.curve, self.knots[i], t)
    }

    /// Inverse of [`length_at`](Self::length_at); `s` is reduced modulo the
    /// total length and the returned parameter carries the matching multiple
    /// of 2π.
    pub fn param_at(&self, s: f64) -> f64 {
        let total = self.total_length();
        let turns = (s / total).floor();
        let s_red = s - turns * total;
        let i = match self.lengths.binary_search_by(|v| v.partial_cmp(&s_red).unwrap()) {
            Ok(i) => i.min(self.knots.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.knots.len() - 2),
        };
        let (t0, t1) = (self.knots[i], self.knots[i + 1]);
        let (s0, s1) = (self.lengths[i], self.lengths[i + 1]);
        let mut t = t0 + (t1 - t0) * (s_red - s0) / (s1 - s0);
        for _ in 0..20 {
            let resid = self.lengths[i] + gauss_speed(&self.curve, t0, t) - s_red;
            let step = resid / self.curve.speed(t);
            t = (t - step).clamp(t0, t1);
            if step.abs() < 1e-15 {
                break;
            }
        }
        t + turns * TAU
    }

    pub fn point_at_length(&self, s: f64) -> Complex64 {
        self.curve.point(self.param_at(s))
    }
}

pub fn enclosed_area(curve: &JordanCurve) -> f64 {
    curve.signed_area()
}

/// Largest ratio of arc distance to chord over `pair_grid` points spaced
/// uniformly in arc length.
pub fn chord_arc_constant(curve: &JordanCurve, pair_grid: usize) -> Result<f64> {
    let table = arc_length(curve, crate::defaults::ARC_TABLE_SIZE.max(pair_grid))?;
    let total = table.total_length();
    let n = pair_grid.max(2);
    let arcs: Vec<f64> = (0..n).map(|j| total * j as f64 / n as f64).collect();
    let pts: Vec<Complex64> = arcs.iter().map(|&s| table.point_at_length(s)).collect();
    let mut best: f64 = 1.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let chord = (pts[i] - pts[j]).norm();
            if chord <= 1e-14 * total {
                continue;
            }
            let gap = (arcs[j] - arcs[i]).abs();
            let along = gap.min(total - gap);
            best = best.max(along / chord);
        }
    }
    Ok(best)
}

/// Boundary Hölder exponent `1/(K(1+2B)²)` for `(K, K')`-quasiconformal maps
/// onto domains with a `B`-chord-arc boundary.
///
/// A derivation via the ODE comparison argument yields `2/(K(1+2B)²)` before
/// the final `√2` rescaling of the radius; the smaller value is returned.
pub fn holder_exponent_beta(k: f64, b: f64) -> Result<f64> {
    if !(k >= 1.0) || !(b >= 1.0) {
        return Err(Error::InvalidInput(format!("need K >= 1 and B >= 1, got K = {k}, B = {b}")));
    }
    Ok(1.0 / (k * (1.0 + 2.0 * b).powi(2)))
}
