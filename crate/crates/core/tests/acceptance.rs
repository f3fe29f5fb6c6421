//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p annulus-core --test acceptance`. The process exits
//! nonzero if any gated criterion fails; lines marked INFO are diagnostics
//! that do not gate.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use annulus_core::hopf::{default_grid, default_zero_tol};
use annulus_core::regularity::length_area_sweep;
use annulus_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Line {
    id: &'static str,
    name: &'static str,
    pass: bool,
    detail: String,
}

struct Run {
    label: &'static str,
    rho: f64,
    target_inner: f64,
    result: MinimizationResult,
    seconds: f64,
}

fn circle(r: f64) -> JordanCurve {
    JordanCurve::circle(Complex64::new(0.0, 0.0), r).unwrap()
}

fn benchmark(label: &'static str, rho: f64, target_inner: f64, initial: Option<Vec<f64>>) -> Run {
    let mut problem = MinimizationProblem::new(AnnulusSource::new(rho).unwrap(), circle(1.0), circle(target_inner));
    problem.num_modes = 64;
    problem.reparam_degree = 8;
    problem.settings.initial = initial;
    let t = Instant::now();
    let result = minimize(&problem).expect("benchmark minimization");
    Run { label, rho, target_inner, result, seconds: t.elapsed().as_secs_f64() }
}

fn perturbed_start(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(-0.1..0.1)).collect()
}

fn pair(r: f64, big_r: f64) -> AnnulusPair {
    AnnulusPair::new(r, big_r).unwrap()
}

fn exact_maps() -> Vec<(&'static str, AnnulusPair)> {
    vec![("fig1", pair(0.5, 2.0 / 3.0)), ("fig2", pair(2.0 / 3.0, 0.5)), ("identity", pair(0.5, 0.5))]
}

fn target_area(run: &Run) -> f64 {
    enclosed_area(&circle(1.0)) - enclosed_area(&circle(run.target_inner))
}

fn fitted_c(map: &HarmonicMap) -> HopfFit {
    fit_hopf_constant(map, &default_grid(map.rho()))
}

fn random_map(rng: &mut ChaCha8Rng) -> HarmonicMap {
    let rho = rng.gen_range(0.3..0.8);
    let order = rng.gen_range(1..=8usize);
    let mut m = HarmonicMap::new(AnnulusSource::new(rho).unwrap(), order);
    let mut draw = |scale: f64| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
    m.set_a0(draw(1.0));
    m.set_b0(draw(1.0));
    for k in 1..=order as i32 {
        let s = 1.0 / (1.0 + k as f64);
        m.set_a(k, draw(s));
        m.set_a(-k, draw(s));
        m.set_b(k, draw(s));
        m.set_b(-k, draw(s));
    }
    m
}

/// Energy by Simpson's rule in `r` and the trapezoid rule in `θ`, with
/// `‖Df‖² = |∂_r f|² + |∂_θ f|²/r²` from central differences of the series
/// summed term by term (it extends harmonically past both circles).
fn quadrature_energy(map: &HarmonicMap) -> f64 {
    let rho = map.rho();
    let nr = 2000;
    let nt = 4 * map.order() + 8;
    let h = 1e-5;
    let hr = (1.0 - rho) / nr as f64;
    let value = |r: f64, t: f64| series_value(map, Complex64::from_polar(r, t));
    let ring = |r: f64| -> f64 {
        (0..nt)
            .map(|j| {
                let t = TAU * j as f64 / nt as f64;
                let fr = (value(r + h, t) - value(r - h, t)) / (2.0 * h);
                let ft = (value(r, t + h) - value(r, t - h)) / (2.0 * h);
                (fr.norm_sqr() + ft.norm_sqr() / (r * r)) * r
            })
            .sum::<f64>()
            * TAU
            / nt as f64
    };
    let mut sum = ring(rho) + ring(1.0);
    for i in 1..nr {
        sum += ring(rho + hr * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * hr / 3.0
}

fn series_value(map: &HarmonicMap, z: Complex64) -> Complex64 {
    let mut acc = map.a0() * z.norm().ln() + map.b0();
    for (k, a, b) in map.terms() {
        acc += a * z.powi(k) + (b * z.powi(k)).conj();
    }
    acc
}

fn main() {
    let mut lines: Vec<Line> = Vec::new();
    let mut info: Vec<String> = Vec::new();
    let exact = exact_maps();

    // Benchmark runs with the documented configuration.
    let fig1 = benchmark("fig1-annulus", 0.5, 2.0 / 3.0, None);
    let fig2 = benchmark("fig2-annulus", 2.0 / 3.0, 0.5, None);
    let equal = benchmark("equal-moduli", 0.5, 0.5, None);
    let runs = [&fig1, &fig2, &equal];

    // 1. Closed-form recovery.
    {
        let m = &fig1.result.map;
        let target = 34.0 * PI / 27.0;
        let de = (fig1.result.energy - target).abs();
        let dc = (m.a(1) - 8.0 / 9.0).norm() + (m.b(-1) - 1.0 / 9.0).norm();
        let others = m
            .terms()
            .map(|(k, a, b)| {
                let a = if k == 1 { 0.0 } else { a.norm() };
                let b = if k == -1 { 0.0 } else { b.norm() };
                a.max(b)
            })
            .fold(m.a0().norm().max(m.b0().norm()), f64::max);
        lines.push(Line {
            id: "1",
            name: "closed-form recovery (fig1)",
            pass: fig1.result.converged && de < 1e-3 && dc < 1e-3 && others < 1e-3 && fig1.seconds < 120.0,
            detail: format!(
                "converged={} |E-34pi/27|={de:.2e} coeff_err={dc:.2e} max_other={others:.2e} t={:.2}s",
                fig1.result.converged, fig1.seconds
            ),
        });
    }

    // 2. Hopf identity.
    {
        let fit = fitted_c(&fig1.result.map);
        let exact_res = exact
            .iter()
            .map(|(_, p)| fitted_c(&nitsche_minimizer(*p)).residual_max)
            .fold(0.0, f64::max);
        let dc = (fit.c_fit + 8.0 / 81.0).abs();
        lines.push(Line {
            id: "2",
            name: "Hopf identity",
            pass: dc < 1e-3 && fit.residual_max < 1e-3 && exact_res < 1e-12,
            detail: format!(
                "|c+8/81|={dc:.2e} residual(run)={:.2e} residual(exact)={exact_res:.2e}",
                fit.residual_max
            ),
        });
    }

    // 3. Sign trichotomy against the modulus solver.
    {
        let expected = [SignClass::Negative, SignClass::Positive, SignClass::Zero];
        let moduli = [(2.0, 1.5), (1.5, 2.0), (2.0, 2.0)];
        let mut ok = true;
        let mut parts = Vec::new();
        for ((run, want), (ms, mt)) in runs.iter().zip(expected).zip(moduli) {
            let src = compute_modulus(&circle(1.0), &circle(run.rho), 64, 128).unwrap().modulus;
            let tgt = compute_modulus(&circle(1.0), &circle(run.target_inner), 64, 128).unwrap().modulus;
            let c = fitted_c(&run.result.map).c_fit;
            let cls = classify_sign(c, src, tgt, default_zero_tol(c));
            ok &= cls.class == want && cls.consistent && (src - ms).abs() < 1e-4 && (tgt - mt).abs() < 1e-4;
            parts.push(format!("{}: c={c:+.6} {:?} mods {src:.6}/{tgt:.6}", run.label, cls.class));
        }
        lines.push(Line { id: "3", name: "sign trichotomy", pass: ok, detail: parts.join("; ") });
    }

    // 4. Modulus solver.
    {
        let mut ok = true;
        let mut parts = Vec::new();
        for (inner, want, tol) in [(circle(0.5), 2.0, 1e-6), (circle(2.0 / 3.0), 1.5, 1e-6)] {
            let t = Instant::now();
            let m = compute_modulus(&circle(1.0), &inner, 64, 128).unwrap().modulus;
            let s = t.elapsed().as_secs_f64();
            ok &= (m - want).abs() < tol && s < 5.0;
            parts.push(format!("{want}: err={:.1e} t={s:.3}s", (m - want).abs()));
        }
        let t = Instant::now();
        let ecc = JordanCurve::circle(Complex64::new(0.2, 0.0), 0.3).unwrap();
        let m = compute_modulus(&circle(1.0), &ecc, 64, 128).unwrap().modulus;
        let s = t.elapsed().as_secs_f64();
        let err = (m - 3.186_140_661_634_51).abs();
        ok &= err < 1e-4 && s < 5.0;
        parts.push(format!("eccentric: err={err:.1e} t={s:.3}s"));
        lines.push(Line { id: "4", name: "modulus solver", pass: ok, detail: parts.join("; ") });
    }

    // 5. (K, K') audit.
    {
        let mut worst = f64::INFINITY;
        let mut parts = Vec::new();
        for (label, p) in &exact {
            let s = kkprime_audit(&nitsche_minimizer(*p), nitsche_c(*p), &default_grid(p.r));
            worst = worst.min(s);
            parts.push(format!("{label}={s:.1e}"));
        }
        for run in runs {
            let c = fitted_c(&run.result.map).c_fit;
            let s = kkprime_audit(&run.result.map, c, &default_grid(run.rho));
            worst = worst.min(s);
            parts.push(format!("{}={s:.1e}", run.label));
        }
        lines.push(Line {
            id: "5",
            name: "quasiconformality bound",
            pass: worst >= -1e-8,
            detail: format!("slack_min={worst:.2e} ({})", parts.join(" ")),
        });
    }

    // 6. Energy lower bound.
    {
        let mut ok = true;
        let mut parts = Vec::new();
        for run in runs {
            let s = energy_bound_check(&run.result.map, target_area(run));
            ok &= s >= -1e-8;
            parts.push(format!("{}={s:.3e}", run.label));
        }
        let eq = energy_bound_check(&equal.result.map, target_area(&equal));
        let p = pair(0.5, 2.0 / 3.0);
        let ex = energy_bound_check(&nitsche_minimizer(p), p.target_area());
        ok &= eq.abs() < 1e-4 && (ex - 4.0 * PI / 27.0).abs() < 1e-6;
        parts.push(format!("exact fig1 - 4pi/27 = {:.1e}", ex - 4.0 * PI / 27.0));
        lines.push(Line { id: "6", name: "energy lower bound", pass: ok, detail: parts.join("; ") });
    }

    // 7. Null identity.
    {
        let grid = |rho: f64| PolarGrid::uniform(rho, 33, 256);
        let exact_worst = exact
            .iter()
            .map(|(_, p)| null_residual(&weierstrass(&nitsche_minimizer(*p), nitsche_c(*p), &grid(p.r)).unwrap()))
            .fold(0.0, f64::max);
        let run_worst = runs
            .iter()
            .map(|run| {
                let c = fitted_c(&run.result.map).c_fit;
                null_residual(&weierstrass(&run.result.map, c, &grid(run.rho)).unwrap())
            })
            .fold(0.0, f64::max);
        let p = pair(0.5, 2.0 / 3.0);
        let mut perturbed = nitsche_minimizer(p);
        perturbed.set_b(2, perturbed.b(2) + 0.05);
        let pert = null_residual(&weierstrass(&perturbed, nitsche_c(p), &grid(0.5)).unwrap());
        lines.push(Line {
            id: "7",
            name: "null identity",
            pass: exact_worst < 1e-12 && run_worst < 1e-3 && pert > 1e-3,
            detail: format!("exact={exact_worst:.1e} runs={run_worst:.1e} perturbed={pert:.3e}"),
        });
    }

    // 8. Lift geometry.
    {
        let p1 = pair(0.5, 2.0 / 3.0);
        let cat = lift(&nitsche_minimizer(p1), nitsche_c(p1), 64, 256).unwrap();
        let (lo, hi) = cat.height_range();
        let want = 4.0 * 2f64.sqrt() / 9.0 * 2f64.ln();
        let range_err = lo.abs().max((hi - want).abs());
        let plane_err = (0..cat.angular_res)
            .map(|j| cat.vertex(0, j)[2] - hi)
            .chain((0..cat.angular_res).map(|j| cat.vertex(cat.radial_res - 1, j)[2]))
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let p2 = pair(2.0 / 3.0, 0.5);
        let hel = lift(&nitsche_minimizer(p2), nitsche_c(p2), 64, 256).unwrap();
        let amp = (1..=hel.angular_res)
            .map(|j| (hel.vertex(10, j)[2] / (TAU * j as f64 / hel.angular_res as f64) - 2.0 * 6f64.sqrt() / 5.0).abs())
            .fold(0.0, f64::max);
        lines.push(Line {
            id: "8",
            name: "lift geometry",
            pass: cat.kind == LiftKind::Catenoidal
                && hel.kind == LiftKind::Helicoidal
                && range_err < 1e-10
                && plane_err < 1e-10
                && amp < 1e-10,
            detail: format!("X3 range err={range_err:.1e} planarity={plane_err:.1e} helicoid amp err={amp:.1e}"),
        });
    }

    // 9. Nitsche-critical degeneracy.
    {
        let w = critical_map(0.5).unwrap();
        let dev = (0..256)
            .map(|j| {
                let (wz, wzb) = w.wirtinger(Complex64::from_polar(0.5, TAU * j as f64 / 256.0)).unwrap();
                (wz.norm() - 0.8).abs().max((wzb.norm() - 0.8).abs())
            })
            .fold(0.0, f64::max);
        let jmin = jacobian_scan(&w, 64, 256);
        let at = nitsche_bound(pair(0.5, 0.8));
        let below = nitsche_bound(pair(0.5, 0.8 - 1e-9));
        let above = nitsche_bound(pair(0.5, 0.8 + 1e-9));
        lines.push(Line {
            id: "9",
            name: "Nitsche-critical degeneracy",
            pass: dev < 1e-12
                && jmin.abs() < 1e-10
                && at.critical
                && at.diffeomorphic_minimizer_exists
                && !below.critical
                && !above.critical
                && !above.diffeomorphic_minimizer_exists,
            detail: format!("| |w_z|-4/5 |={dev:.1e} jacobian_min={jmin:.1e} critical_at_4/5={}", at.critical),
        });
    }

    // 10. Length-area principle.
    {
        let mut worst = f64::INFINITY;
        let mut parts = Vec::new();
        for (label, p) in &exact {
            let s = length_area_sweep(&nitsche_minimizer(*p), nitsche_c(*p), 8).unwrap();
            worst = worst.min(s);
            parts.push(format!("{label}={s:.2e}"));
        }
        lines.push(Line {
            id: "10",
            name: "length-area principle",
            pass: worst >= -1e-6,
            detail: format!("slack_min={worst:.2e} ({})", parts.join(" ")),
        });
    }

    // 11. Regularity properties.
    {
        let mut ok = true;
        let mut worst_margin = f64::INFINITY;
        let mut worst_inc: f64 = 0.0;
        let mut maps: Vec<(HarmonicMap, f64, f64)> =
            exact.iter().map(|(_, p)| (nitsche_minimizer(*p), 1.0 / p.r, 1.0 / p.big_r)).collect();
        for run in runs {
            maps.push((run.result.map.clone(), 1.0 / run.rho, 1.0 / run.target_inner));
        }
        for (map, ms, mt) in &maps {
            for which in [BoundaryCircle::Outer, BoundaryCircle::Inner] {
                let fit = boundary_holder_fit(map, which, 1024).unwrap();
                for alpha in [0.25, 0.5, 0.75] {
                    let margin = fit.exponent - kellogg_prediction(alpha, *ms, *mt);
                    worst_margin = worst_margin.min(margin);
                    ok &= margin >= 0.0 && fit.exponent <= 1.05;
                }
            }
            let lip = lipschitz_probe(map, 24);
            worst_inc = worst_inc.max(lip.final_increment.abs());
            ok &= lip.final_increment.abs() < 1e-4;
        }
        lines.push(Line {
            id: "11",
            name: "regularity property suites",
            pass: ok,
            detail: format!("min(exponent - prediction)={worst_margin:.3} max lipschitz increment={worst_inc:.1e}"),
        });
    }

    // 12. Oracle equivalence.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut worst_energy: f64 = 0.0;
        let mut worst_round: f64 = 0.0;
        for _ in 0..50 {
            let map = random_map(&mut rng);
            let e = map.dirichlet_energy();
            worst_energy = worst_energy.max((e - quadrature_energy(&map)).abs() / e.abs());
        }
        for _ in 0..50 {
            let map = random_map(&mut rng);
            let n = 64;
            let back = extend_from_boundary(&map.restrict(1.0, n), &map.restrict(map.rho(), n), map.source(), map.order())
                .unwrap();
            let mut err = (back.a0() - map.a0()).norm().max((back.b0() - map.b0()).norm());
            for (k, a, b) in map.terms() {
                err = err.max((back.a(k) - a).norm()).max((back.b(k) - b).norm());
            }
            worst_round = worst_round.max(err / map.coefficient_norm());
        }
        lines.push(Line {
            id: "12",
            name: "oracle equivalence",
            pass: worst_energy < 1e-6 && worst_round < 1e-10,
            detail: format!("energy rel err={worst_energy:.1e} round-trip rel err={worst_round:.1e}"),
        });
    }

    // Diagnostics: the same benchmarks from a perturbed start.
    {
        let count = 2 * (2 * 8 + 1) + 1;
        for (label, rho, inner, seed) in [("fig1-annulus", 0.5, 2.0 / 3.0, 1), ("fig2-annulus", 2.0 / 3.0, 0.5, 2)] {
            let run = benchmark(label, rho, inner, Some(perturbed_start(count, seed)));
            let fit = fitted_c(&run.result.map);
            let kk = kkprime_audit(&run.result.map, fit.c_fit, &default_grid(rho));
            info.push(format!(
                "perturbed start {label}: converged={} iterations={} E={:.10} c={:+.8} hopf_residual={:.1e} kk_slack={kk:.1e} t={:.1}s",
                run.result.converged, run.result.iterations, run.result.energy, fit.c_fit, fit.residual_max, run.seconds
            ));
        }
    }

    let mut failed = 0;
    for l in &lines {
        println!("{} [{:>2}] {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.name, l.detail);
        if !l.pass {
            failed += 1;
        }
    }
    for i in &info {
        println!("INFO      {i}");
    }
    println!("{} of {} criteria pass", lines.len() - failed, lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
