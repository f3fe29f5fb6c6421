//! Harmonic maps on the annulus `A_ρ = {ρ < |z| < 1}`.
//!
//! Every such map has the form
//!
//! ```text
//! f(z) = a₀ log|z| + b₀ + Σ_{k≠0} (a_k z^k + conj(b_k) z̄^k)
//! ```
//!
//! and is stored by its coefficients. Evaluation, Wirtinger derivatives and
//! the Dirichlet energy are all closed-form in the coefficients.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Relative slack allowed when testing membership in the closed annulus.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SourceDocument")]
pub struct AnnulusSource {
    rho: f64,
}

#[derive(Deserialize)]
struct SourceDocument {
    rho: f64,
}

impl TryFrom<SourceDocument> for AnnulusSource {
    type Error = Error;
    fn try_from(doc: SourceDocument) -> Result<Self> {
        AnnulusSource::new(doc.rho)
    }
}

impl AnnulusSource {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InvalidInput(format!("inner radius must lie in (0, 1), got {rho}")));
        }
        Ok(AnnulusSource { rho })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Conformal modulus `1/ρ`.
    pub fn modulus(&self) -> f64 {
        1.0 / self.rho
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        r >= self.rho * (1.0 - RANGE_SLACK) && r <= 1.0 + RANGE_SLACK
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapDocument", into = "MapDocument")]
pub struct HarmonicMap {
    source: AnnulusSource,
    a0: Complex64,
    b0: Complex64,
    order: usize,
    /// `a[k + order] = a_k`; the `k = 0` slot stays zero.
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl HarmonicMap {
    /// The zero map with room for `|k| ≤ order`.
    pub fn new(source: AnnulusSource, order: usize) -> Self {
        HarmonicMap {
            source,
            a0: ZERO,
            b0: ZERO,
            order,
            a: vec![ZERO; 2 * order + 1],
            b: vec![ZERO; 2 * order + 1],
        }
    }

    pub fn identity(source: AnnulusSource) -> Self {
        let mut map = Self::new(source, 1);
        map.set_a(1, Complex64::new(1.0, 0.0));
        map
    }

    pub fn source(&self) -> AnnulusSource {
        self.source
    }

    pub fn rho(&self) -> f64 {
        self.source.rho
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    pub fn b0(&self) -> Complex64 {
        self.b0
    }

    pub fn set_a0(&mut self, v: Complex64) {
        self.a0 = v;
    }

    pub fn set_b0(&mut self, v: Complex64) {
        self.b0 = v;
    }

    pub fn a(&self, k: i32) -> Complex64 {
        lookup(&self.a, self.order, k)
    }

    pub fn b(&self, k: i32) -> Complex64 {
        lookup(&self.b, self.order, k)
    }

    /// Sets `a_k`, `k ≠ 0`, growing the truncation order if needed.
    pub fn set_a(&mut self, k: i32, v: Complex64) {
        assert!(k != 0, "a_0 is the log coefficient; use set_a0");
        self.grow(k.unsigned_abs() as usize);
        self.a[(k + self.order as i32) as usize] = v;
    }

    pub fn set_b(&mut self, k: i32, v: Complex64) {
        assert!(k != 0, "b_0 is the constant term; use set_b0");
        self.grow(k.unsigned_abs() as usize);
        self.b[(k + self.order as i32) as usize] = v;
    }

    fn grow(&mut self, order: usize) {
        if order <= self.order {
            return;
        }
        let pad = order - self.order;
        for v in [&mut self.a, &mut self.b] {
            let mut grown = vec![ZERO; pad];
            grown.extend_from_slice(v);
            grown.extend(std::iter::repeat_n(ZERO, pad));
            *v = grown;
        }
        self.order = order;
    }

    /// Iterates `(k, a_k, b_k)` over `k ∈ [-N, N] \ {0}`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Complex64, Complex64)> + '_ {
        let n = self.order as i32;
        (-n..=n).filter(|&k| k != 0).map(move |k| (k, self.a(k), self.b(k)))
    }

    /// Euclidean norm of the full coefficient vector.
    pub fn coefficient_norm(&self) -> f64 {
        let tail: f64 = self.terms().map(|(_, a, b)| a.norm_sqr() + b.norm_sqr()).sum();
        (self.a0.norm_sqr() + self.b0.norm_sqr() + tail).sqrt()
    }

    fn check(&self, z: Complex64) -> Result<()> {
        if self.source.contains(z) {
            Ok(())
        } else {
            Err(Error::OutsideAnnulus { z, rho: self.source.rho })
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        self.check(z)?;
        Ok(self.value_unchecked(z))
    }

    /// `(f_z, f_z̄)` at `z`.
    pub fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        self.check(z)?;
        Ok(self.wirtinger_unchecked(z))
    }

    /// Powers `z^k` for `k ∈ [-N, N]`, indexed by `k + N`.
    fn powers(&self, z: Complex64) -> Vec<Complex64> {
        let n = self.order;
        let mut p = vec![Complex64::new(1.0, 0.0); 2 * n + 1];
        let inv = z.inv();
        for k in 1..=n {
            p[n + k] = p[n + k - 1] * z;
            p[n - k] = p[n - k + 1] * inv;
        }
        p
    }

    pub(crate) fn value_unchecked(&self, z: Complex64) -> Complex64 {
        let p = self.powers(z);
        let mut acc = self.a0 * z.norm().ln() + self.b0;
        for (i, pk) in p.iter().enumerate() {
            if i == self.order {
                continue;
            }
            acc += self.a[i] * pk + (self.b[i] * pk).conj();
        }
        acc
    }

    pub(crate) fn wirtinger_unchecked(&self, z: Complex64) -> (Complex64, Complex64) {
        let p = self.powers(z);
        let mut sa = ZERO;
        let mut sb = ZERO;
        for (i, pk) in p.iter().enumerate() {
            if i == self.order {
                continue;
            }
            let k = i as f64 - self.order as f64;
            sa += self.a[i] * pk * k;
            sb += self.b[i] * pk * k;
        }
        let inv = z.inv();
        let fz = self.a0 * inv * 0.5 + sa * inv;
        let fzbar = self.a0 * inv.conj() * 0.5 + (sb * inv).conj();
        (fz, fzbar)
    }

    /// `J = |f_z|² − |f_z̄|²`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        let (fz, fzb) = self.wirtinger(z)?;
        Ok(fz.norm_sqr() - fzb.norm_sqr())
    }

    /// Closed-form Dirichlet energy
    /// `2π|a₀|² log(1/ρ) + 2π Σ k(1−ρ^{2k})(|a_k|²+|b_k|²)`.
    pub fn dirichlet_energy(&self) -> f64 {
        let rho = self.source.rho;
        let log_term = self.a0.norm_sqr() * (1.0 / rho).ln();
        let series: f64 = self
            .terms()
            .map(|(k, a, b)| k as f64 * (1.0 - rho.powi(2 * k)) * (a.norm_sqr() + b.norm_sqr()))
            .sum();
        TAU * (log_term + series)
    }

    /// Fourier coefficients of `θ ↦ f(t e^{iθ})`, indexed by `k + N`.
    pub fn circle_coefficients(&self, t: f64) -> Vec<Complex64> {
        let n = self.order;
        let mut out = vec![ZERO; 2 * n + 1];
        out[n] = self.a0 * t.ln() + self.b0;
        for k in 1..=n as i32 {
            let up = t.powi(k);
            let down = t.powi(-k);
            out[n + k as usize] = self.a(k) * up + self.b(-k).conj() * down;
            out[n - k as usize] = self.a(-k) * down + self.b(k).conj() * up;
        }
        out
    }

    /// `z ↦ f(ρ/z)`. The inversion is a conformal automorphism of `A_ρ` that
    /// swaps the two boundary circles, so energy and Hopf constant are kept.
    pub fn inverted(&self) -> Self {
        let rho = self.rho();
        let mut out = Self::new(self.source, self.order);
        out.a0 = -self.a0;
        out.b0 = self.b0 + self.a0 * rho.ln();
        for (k, a, b) in self.terms() {
            let s = rho.powi(k);
            out.set_a(-k, a * s);
            out.set_b(-k, b * s);
        }
        out
    }

    /// Uniform samples of `f` on the circle `|z| = t`.
    pub fn restrict(&self, t: f64, samples: usize) -> Vec<Complex64> {
        (0..samples)
            .map(|j| self.value_unchecked(Complex64::from_polar(t, TAU * j as f64 / samples as f64)))
            .collect()
    }
}

fn lookup(v: &[Complex64], order: usize, k: i32) -> Complex64 {
    if k == 0 || k.unsigned_abs() as usize > order {
        ZERO
    } else {
        v[(k + order as i32) as usize]
    }
}

/// Harmonic extension of band-limited boundary data.
///
/// `outer[j]` and `inner[j]` are values at angle `2πj/n` on `|z| = 1` and
/// `|z| = ρ`. Frequencies `|k| ≤ num_modes` are matched exactly.
pub fn extend_from_boundary(
    outer: &[Complex64],
    inner: &[Complex64],
    source: AnnulusSource,
    num_modes: usize,
) -> Result<HarmonicMap> {
    let mut planner = FftPlanner::new();
    extend_with_planner(outer, inner, source, num_modes, &mut planner)
}

pub(crate) fn extend_with_planner(
    outer: &[Complex64],
    inner: &[Complex64],
    source: AnnulusSource,
    num_modes: usize,
    planner: &mut FftPlanner<f64>,
) -> Result<HarmonicMap> {
    if outer.len() != inner.len() {
        return Err(Error::SampleMismatch { outer: outer.len(), inner: inner.len() });
    }
    let n = outer.len();
    if n < 2 * num_modes + 1 {
        return Err(Error::TooFewSamples { required: 2 * num_modes + 1, got: n });
    }
    let fft = planner.plan_fft_forward(n);
    let mut out_hat = outer.to_vec();
    let mut in_hat = inner.to_vec();
    fft.process(&mut out_hat);
    fft.process(&mut in_hat);
    let scale = 1.0 / n as f64;
    let coef = |spectrum: &[Complex64], k: i32| spectrum[k.rem_euclid(n as i32) as usize] * scale;

    let rho = source.rho();
    let mut map = HarmonicMap::new(source, num_modes);
    let c0_out = coef(&out_hat, 0);
    let c0_in = coef(&in_hat, 0);
    map.b0 = c0_out;
    map.a0 = (c0_in - c0_out) / rho.ln();
    for k in (-(num_modes as i32)..=num_modes as i32).filter(|&k| k != 0) {
        let c_out = coef(&out_hat, k);
        let c_in = coef(&in_hat, k);
        let up = rho.powi(k);
        let down = rho.powi(-k);
        // a_k + β = c_out, a_k ρ^k + β ρ^{-k} = c_in with β = conj(b_{-k}).
        let beta = (c_in - c_out * up) / (down - up);
        let ak = c_out - beta;
        map.a[(k + num_modes as i32) as usize] = ak;
        map.b[(-k + num_modes as i32) as usize] = beta.conj();
    }
    Ok(map)
}

/// JSON form: `{ "rho", "a0": [re, im], "b0": [re, im], "a": [[k, re, im]...], "b": [...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDocument {
    pub rho: f64,
    pub a0: [f64; 2],
    pub b0: [f64; 2],
    pub a: Vec<(i32, f64, f64)>,
    pub b: Vec<(i32, f64, f64)>,
}

impl From<HarmonicMap> for MapDocument {
    fn from(map: HarmonicMap) -> Self {
        let list = |get: &dyn Fn(i32) -> Complex64| {
            let n = map.order as i32;
            (-n..=n)
                .filter(|&k| k != 0)
                .map(|k| {
                    let v = get(k);
                    (k, v.re, v.im)
                })
                .collect()
        };
        MapDocument {
            rho: map.rho(),
            a0: [map.a0.re, map.a0.im],
            b0: [map.b0.re, map.b0.im],
            a: list(&|k| map.a(k)),
            b: list(&|k| map.b(k)),
        }
    }
}

impl TryFrom<MapDocument> for HarmonicMap {
    type Error = Error;

    fn try_from(doc: MapDocument) -> Result<Self> {
        let source = AnnulusSource::new(doc.rho)?;
        let mut map = HarmonicMap::new(source, 0);
        map.a0 = Complex64::new(doc.a0[0], doc.a0[1]);
        map.b0 = Complex64::new(doc.b0[0], doc.b0[1]);
        for &(k, re, im) in &doc.a {
            if k == 0 {
                return Err(Error::InvalidInput("a list may not contain k = 0".into()));
            }
            map.set_a(k, Complex64::new(re, im));
        }
        for &(k, re, im) in &doc.b {
            if k == 0 {
                return Err(Error::InvalidInput("b list may not contain k = 0".into()));
            }
            map.set_b(k, Complex64::new(re, im));
        }
        let finite = |c: Complex64| c.re.is_finite() && c.im.is_finite();
        if !finite(map.a0) || !finite(map.b0) || map.terms().any(|(_, a, b)| !finite(a) || !finite(b)) {
            return Err(Error::InvalidInput("map coefficients must be finite".into()));
        }
        Ok(map)
    }
}
