//! The acceptance criteria as runnable checks.
//!
//! Each criterion returns a pass/fail verdict with a one-line detail string;
//! the integration suite asserts every verdict and the CLI self-test runs the
//! same checks on reduced grids. Tolerances are pinned here, next to the
//! checks that use them.

use num_complex::Complex64;

use crate::certifier::{
    certify_space, growth_type_check, rectangle_grid, CertifyConfig,
};
use crate::complexgrp::{
    phi_complex_nonregular, phi_complex_regular, rho_vector, weyl_denominator_both,
    ComplexGroupPoint,
};
use crate::error::Result;
use crate::euclid::{verify_delta_bound, verify_delta_bound_scaled};
use crate::hcseries::{c_function, find_m, gamma_coeffs, lower_bound_check, phi_hc, phi_hc_limit};
use crate::oracle::{integral_i, QuadratureSpec};
use crate::rankone::{build_bessel_series, cal_i_recurrence, i_even_series, koornwinder_phi};
use crate::rootdata::{build_rank_one, space_by_name, weyl_group_a};
use crate::routes::{build_route, RouteConfig};

/// Grid scale: the full acceptance grids or the reduced self-test grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Full,
    Reduced,
}

/// Verdict of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| lo * (hi / lo).powf(j as f64 / (n - 1) as f64))
        .collect()
}

fn slope_fit(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// A tiny deterministic generator for the randomised criteria.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed)
    }
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }
    /// uniform in [0, 1)
    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
    fn below(&mut self, n: usize) -> usize {
        (self.unit() * n as f64) as usize % n
    }
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

fn crit1_base_cases(scale: Scale) -> Result<String> {
    let lams: Vec<f64> = match scale {
        Scale::Full => log_grid(0.1, 50.0, 25),
        Scale::Reduced => vec![0.1, 0.7, 3.0, 12.0, 50.0],
    };
    let mut worst = 0.0f64;
    for &t in &[0.5, 1.0, 2.0] {
        for &lam in &lams {
            let z = c64(lam, 0.0);
            let i0 = cal_i_recurrence(0, t, z)?;
            let want0 = 2.0 * (lam * t).sin() / lam;
            worst = worst.max((i0.re - want0).abs() / want0.abs().max(1e-300));

            let i1 = cal_i_recurrence(1, t, z)?;
            let want1 = -2.0 * t.sinh() * (lam * t).cos() / (lam * lam + 1.0)
                + 2.0 * t.cosh() / (lam * lam + 1.0) * (lam * t).sin() / lam;
            worst = worst.max((i1.re - want1).abs() / want1.abs().max(1e-12));
        }
    }
    if worst < 1e-12 {
        Ok(format!("worst relative deviation {worst:.2e}"))
    } else {
        Err(crate::Error::invalid(format!(
            "base cases off by {worst:.2e} (tolerance 1e-12)"
        )))
    }
}

fn crit2_route_agreement(scale: Scale) -> Result<String> {
    let tol = 1e-7;
    let t = 1.0;
    let quad = QuadratureSpec {
        abs_tol: 1e-11,
        ..QuadratureSpec::default()
    };
    let mut worst = 0.0f64;

    // odd dimensions: recurrence against the oracle, complex λ included
    let res: Vec<f64> = match scale {
        Scale::Full => vec![0.5, 3.0, 7.3, 15.0, 40.0],
        Scale::Reduced => vec![0.5, 7.3, 40.0],
    };
    let ims: Vec<f64> = match scale {
        Scale::Full => vec![0.0, 1.0, 2.0, -2.0],
        Scale::Reduced => vec![0.0, 2.0],
    };
    for name in ["H3", "H5"] {
        let space = space_by_name(name)?;
        let ell = space.ell_odd()?;
        for &re in &res {
            for &im in &ims {
                let z = c64(re, im);
                let rec = cal_i_recurrence(ell, t, z)? * 0.5;
                let orc = integral_i(&space, t, z, &quad)?;
                worst = worst.max((rec - orc).norm() / (1.0 + orc.norm()));
            }
        }
    }

    // even dimensions: the N = 6 series against the oracle for |λ| ≥ 20
    let lams: Vec<f64> = match scale {
        Scale::Full => vec![20.0, 28.0, 45.0, 80.0, 150.0],
        Scale::Reduced => vec![20.0, 60.0],
    };
    for name in ["H2", "H4", "CH2"] {
        let space = space_by_name(name)?;
        let data = build_bessel_series(&space, t, 6)?;
        for &lam in &lams {
            let z = c64(lam, 0.0);
            let (ser, _) = i_even_series(&data, z)?;
            let orc = integral_i(&space, t, z, &quad)?;
            worst = worst.max((ser - orc).norm() / (1.0 + orc.norm()));
        }
    }

    if worst < tol {
        Ok(format!("worst route deviation {worst:.2e}"))
    } else {
        Err(crate::Error::invalid(format!(
            "route disagreement {worst:.2e} (tolerance {tol:.0e})"
        )))
    }
}

fn crit3_h3_closed_form(scale: Scale) -> Result<String> {
    let h3 = build_rank_one(2, 0)?;
    let lams: Vec<f64> = match scale {
        Scale::Full => log_grid(0.3, 20.0, 15),
        Scale::Reduced => vec![0.3, 2.0, 20.0],
    };
    let mut worst = 0.0f64;
    for &t in &[0.5, 1.0, 2.0] {
        for &lam in &lams {
            let z = c64(lam, 0.0);
            let phi = koornwinder_phi(&h3, t, z)?;
            let want = (lam * t).sin() / (lam * t.sinh());
            worst = worst.max((phi - c64(want, 0.0)).norm());

            let cfg = RouteConfig::default();
            let complex_route = build_route("complex", &h3, t, &cfg)?;
            let vc = complex_route.phi(z)?.value;
            worst = worst.max((vc - c64(want, 0.0)).norm());
        }
    }
    if worst < 1e-10 {
        Ok(format!("worst deviation {worst:.2e}"))
    } else {
        Err(crate::Error::invalid(format!(
            "closed-form deviation {worst:.2e} (tolerance 1e-10)"
        )))
    }
}

fn crit4_remainder_decay(scale: Scale) -> Result<String> {
    let truth_spec = QuadratureSpec {
        abs_tol: 1e-13,
        nodes_per_panel: 24,
        ..QuadratureSpec::default()
    };
    let n_pts = match scale {
        Scale::Full => 25,
        Scale::Reduced => 9,
    };
    let t = 1.0;
    let mut lines = Vec::new();
    for name in ["H2", "CH2"] {
        let space = space_by_name(name)?;
        for n_trunc in [3usize, 5] {
            let data = build_bessel_series(&space, t, n_trunc)?;
            let mut pts = Vec::new();
            for &lam in &log_grid(20.0, 200.0, n_pts) {
                let z = c64(lam, 0.0);
                let (ser, _) = i_even_series(&data, z)?;
                let orc = integral_i(&space, t, z, &truth_spec)?;
                let diff = (ser - orc).norm().max(1e-300);
                pts.push((lam.ln(), diff.ln()));
            }
            let slope = slope_fit(&pts);
            let bound = -((n_trunc as f64) - 1.0);
            lines.push(format!("{name} N={n_trunc}: slope {slope:.2}"));
            if slope > bound {
                return Err(crate::Error::invalid(format!(
                    "{name} N={n_trunc}: remainder slope {slope:.2} above {bound:.1}"
                )));
            }
        }
    }
    Ok(lines.join("; "))
}

fn crit5_c_function_asymptotics(scale: Scale) -> Result<String> {
    let eta = 0.1;
    let n_pts = match scale {
        Scale::Full => 60,
        Scale::Reduced => 20,
    };
    let mut lines = Vec::new();
    for name in ["H2", "H3", "H4", "CH2"] {
        let space = space_by_name(name)?;
        let w = (space.p + space.q) as f64 / 2.0;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for &xi in &log_grid(1.0, 1000.0, n_pts) {
            for s in [1.0, -1.0] {
                let lam = c64(xi, -eta) * s;
                let c = c_function(&space, lam)?;
                let r = c.norm() * (1.0 + xi).powf(w);
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
        lines.push(format!("{name}: [{lo:.3}, {hi:.3}]"));
        if !(lo > 0.0 && hi / lo <= 50.0) {
            return Err(crate::Error::invalid(format!(
                "{name}: c-ratio interval [{lo:.3}, {hi:.3}] too wide"
            )));
        }
    }
    Ok(lines.join("; "))
}

fn crit6_hc_vs_koornwinder(scale: Scale) -> Result<String> {
    let k_trunc = 60;
    let lams: Vec<f64> = match scale {
        Scale::Full => (0..40).map(|j| 0.5 + j as f64 * 0.5).collect(),
        Scale::Reduced => vec![0.5, 2.0, 8.0, 20.0],
    };
    let mut worst = 0.0f64;
    for name in ["H2", "H3", "H4", "CH2"] {
        let space = space_by_name(name)?;
        for &t in &[1.0, 2.0] {
            for &lam in &lams {
                let z = c64(lam, 0.0);
                let hc = phi_hc(&space, t, z, k_trunc)?;
                let ko = koornwinder_phi(&space, t, z)?;
                worst = worst.max((hc - ko).norm());
            }
        }
        // the Γ/A cross identity is enforced inside gamma_coeffs at 1e-10;
        // run it explicitly at K = 60 for a non-real λ
        gamma_coeffs(&space, c64(0.83, 0.21), k_trunc)?;
    }
    if worst < 1e-6 {
        Ok(format!("worst |hc − koornwinder| = {worst:.2e}"))
    } else {
        Err(crate::Error::invalid(format!(
            "hc/koornwinder deviation {worst:.2e} (tolerance 1e-6)"
        )))
    }
}

fn crit7_h3_gamma_pattern(_scale: Scale) -> Result<String> {
    let h3 = build_rank_one(2, 0)?;
    let mut worst = 0.0f64;
    for &lam in &[0.37, 1.7, 9.3] {
        let data = gamma_coeffs(&h3, c64(lam, 0.0), 40)?;
        for (k, g) in data.gamma.iter().enumerate() {
            let want = if k % 2 == 0 { 1.0 } else { 0.0 };
            worst = worst.max((g - c64(want, 0.0)).norm());
        }
    }
    if worst < 1e-10 {
        Ok(format!(
            "geometric-series pattern holds to {worst:.2e} for k ≤ 40"
        ))
    } else {
        Err(crate::Error::invalid(format!(
            "Γ pattern deviation {worst:.2e} (tolerance 1e-10)"
        )))
    }
}

fn crit8_certify_spaces(scale: Scale) -> Result<String> {
    let config = match scale {
        Scale::Full => CertifyConfig::default(),
        Scale::Reduced => CertifyConfig {
            xi_max: 110.0,
            grid_points: 24,
            growth_re_max: 120.0,
            ..CertifyConfig::default()
        },
    };
    let mut lines = Vec::new();
    for name in ["H2", "H3", "H4", "CH2"] {
        let space = space_by_name(name)?;
        for &t in &[0.5, 1.0, 2.0] {
            let rep = certify_space(&space, t, &config)?;
            let d = rep.slow_decrease.fitted_d;
            if !rep.pass {
                return Err(crate::Error::invalid(format!(
                    "{name} t={t}: certification failed"
                )));
            }
            if space.is_even() {
                let want = space.ell_even()? as f64 + 0.5;
                if (d - want).abs() > 0.25 {
                    return Err(crate::Error::invalid(format!(
                        "{name} t={t}: fitted D = {d:.3}, want within 0.25 of {want}"
                    )));
                }
            } else if name == "H3" && d > 1.2 {
                return Err(crate::Error::invalid(format!(
                    "H3 t={t}: fitted D = {d:.3} above 1.2"
                )));
            }
            lines.push(format!("{name} t={t}: D={d:.2}"));
        }
    }
    Ok(lines.join("; "))
}

fn crit9_growth_type(scale: Scale) -> Result<String> {
    let (re_max, nx) = match scale {
        Scale::Full => (200.0, 51),
        Scale::Reduced => (200.0, 26),
    };
    let cfg = RouteConfig::default();
    for name in ["H2", "H3", "H4", "CH2"] {
        let space = space_by_name(name)?;
        for &t in &[0.5, 1.0, 2.0] {
            let route = build_route("auto", &space, t, &cfg)?;
            let u = |z: Complex64| route.kernel(z).map(|o| o.value);
            let grid = rectangle_grid(re_max, 3.0, nx, 7);
            let rep = growth_type_check(&u, t, 0, &grid)?;
            if !rep.pass {
                return Err(crate::Error::invalid(format!(
                    "{name} t={t}: growth check failed (a_in={:.3e}, a_out={:.3e})",
                    rep.a_inner, rep.a_outer
                )));
            }
        }
    }
    // the synthetic super-exponential function must fail
    let gauss = |z: Complex64| Ok((z * z).exp());
    let grid = rectangle_grid(re_max, 3.0, nx, 7);
    let rep = growth_type_check(&gauss, 1.0, 0, &grid)?;
    if rep.pass {
        return Err(crate::Error::invalid(
            "e^{ζ²} passed the growth check".to_string(),
        ));
    }
    Ok("all kernels within type; synthetic Gaussian rejected".to_string())
}

fn crit10_euclid_bounds(scale: Scale) -> Result<String> {
    // the two-point configuration
    let pts = vec![vec![0.0], vec![1.0]];
    let w = vec![c64(1.0, 0.0), c64(1.0, 0.0)];
    let grid: Vec<Vec<f64>> = (0..=100).map(|k| vec![k as f64]).collect();
    let rep = verify_delta_bound(&pts, &w, &grid)?;
    if !rep.pass {
        return Err(crate::Error::invalid(format!(
            "two-point bound failed (margin {:.3})",
            rep.min_margin
        )));
    }
    let inverted = verify_delta_bound_scaled(&pts, &w, &grid, 1.5)?;
    if inverted.pass {
        return Err(crate::Error::invalid(
            "sanity-inverted exponent passed".to_string(),
        ));
    }

    // random configurations in dimensions 1..=3
    let trials = match scale {
        Scale::Full => 100,
        Scale::Reduced => 20,
    };
    let mut rng = Lcg::new(0x5EED_1234);
    let mut done = 0usize;
    while done < trials {
        let dim = 1 + rng.below(3);
        let n = 2 + rng.below(4); // N ≤ 5
        let mut points: Vec<Vec<f64>> = Vec::new();
        while points.len() < n {
            let cand: Vec<f64> = (0..dim).map(|_| rng.range(-2.0, 2.0)).collect();
            let ok = points.iter().all(|p| {
                p.iter()
                    .zip(&cand)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
                    > 0.1
            });
            if ok {
                points.push(cand);
            }
        }
        let weights = vec![c64(1.0, 0.0); n];
        // skip near-degenerate dominant-gap configurations the reduction
        // itself rejects
        let data = match crate::euclid::deltafcn_constant_a(&points, &weights) {
            Ok(d) => d,
            Err(_) => continue,
        };
        // grid along a handful of directions
        let mut grid: Vec<Vec<f64>> = Vec::new();
        for k in 0..=20 {
            let r = k as f64 * 5.0;
            for axis in 0..dim {
                let mut v = vec![0.0; dim];
                v[axis] = r;
                grid.push(v.clone());
                v[axis] = -r;
                grid.push(v);
            }
        }
        let rep = verify_delta_bound(&points, &weights, &grid)?;
        if !rep.pass {
            return Err(crate::Error::invalid(format!(
                "random configuration failed: points {points:?}, margin {:.3e}, A = {:.3}",
                rep.min_margin, data.a
            )));
        }
        done += 1;
    }
    Ok(format!("{trials} random configurations verified"))
}

fn crit11_weyl_denominator(scale: Scale) -> Result<String> {
    let trials = match scale {
        Scale::Full => 100,
        Scale::Reduced => 25,
    };
    let mut rng = Lcg::new(0xABCD_EF01);
    for l in [2usize, 3] {
        let w = weyl_group_a(l)?;
        for _ in 0..trials {
            let mut h: Vec<f64> = (0..=l).map(|_| rng.range(-1.5, 1.5)).collect();
            let mean = h.iter().sum::<f64>() / h.len() as f64;
            h.iter_mut().for_each(|v| *v -= mean);
            let (s, p) = weyl_denominator_both(&w, &h)?;
            if (s - p).abs() > 1e-12 * p.abs().max(1e-12) {
                return Err(crate::Error::invalid(format!(
                    "denominator routes disagree at l={l}, H={h:?}: {s} vs {p}"
                )));
            }
        }
    }

    // wall continuity on A₂
    let w = weyl_group_a(2)?;
    let hw = vec![0.5, 0.5, -1.0];
    let lam = vec![c64(1.3, 0.0), c64(-0.2, 0.0), c64(-1.1, 0.0)];
    let cpw = ComplexGroupPoint::new(w.clone(), hw.clone(), lam.clone())?;
    let wall = phi_complex_nonregular(&cpw)?.value;
    let f = |delta: f64| -> Result<Complex64> {
        let h = vec![0.5 + delta, 0.5 - delta, -1.0];
        let cp = ComplexGroupPoint::new(w.clone(), h, lam.clone())?;
        Ok(phi_complex_regular(&cp)?.value)
    };
    let d = 0.02;
    let limit = f(d)? * (1.0 / 3.0) - f(d / 2.0)? * 2.0 + f(d / 4.0)? * (8.0 / 3.0);
    let dev = (wall - limit).norm();
    if dev > 1e-7 {
        return Err(crate::Error::invalid(format!(
            "wall continuity deviation {dev:.2e} (tolerance 1e-7)"
        )));
    }
    Ok(format!(
        "routes agree on {trials} samples; wall-continuity deviation {dev:.2e}"
    ))
}

fn crit12_find_m(_scale: Scale) -> Result<String> {
    let h3 = build_rank_one(2, 0)?;
    let rep = find_m(&h3, 0.1, 0.5, 60)?;
    for w in rep.curve.windows(2) {
        if w[1].1 < w[0].1 - 1e-12 {
            return Err(crate::Error::invalid("C_M curve not monotone".to_string()));
        }
    }
    let grid: Vec<f64> = (0..40).map(|i| (i as f64 * 0.177).exp() - 1.0).collect();
    let check = lower_bound_check(&h3, 0.1, rep.m_star + 1.0, &grid, &rep)?;
    if !check.pass {
        return Err(crate::Error::invalid(format!(
            "lower bound failed at ξ = {} (margin {:.3})",
            check.worst_xi, check.min_margin
        )));
    }
    Ok(format!(
        "M* = {} with C = {:.3e}; lower bound margin {:.2}",
        rep.m_star, rep.c_at_m_star, check.min_margin
    ))
}

fn crit13_phi_normalisation(_scale: Scale) -> Result<String> {
    let tol = 1e-9;
    let mut worst = 0.0f64;
    for name in ["H2", "H3", "H4", "CH2"] {
        let space = space_by_name(name)?;
        let z = c64(0.0, -space.rho());
        let ko = koornwinder_phi(&space, 1.0, z)?;
        worst = worst.max((ko - c64(1.0, 0.0)).norm());
        let hc = phi_hc_limit(&space, 1.0, z, 60)?;
        worst = worst.max((hc - c64(1.0, 0.0)).norm());
    }
    for l in [1usize, 2] {
        let w = weyl_group_a(l)?;
        let rho = rho_vector(&w);
        let lam: Vec<Complex64> = rho.iter().map(|&v| c64(0.0, -v)).collect();
        let base: Vec<f64> = (0..=l).map(|j| 1.1 - 0.63 * j as f64).collect();
        let mean = base.iter().sum::<f64>() / base.len() as f64;
        let h: Vec<f64> = base.into_iter().map(|v| v - mean).collect();
        let cp = ComplexGroupPoint::new(w, h, lam)?;
        let v = phi_complex_regular(&cp)?.value;
        worst = worst.max((v - c64(1.0, 0.0)).norm());
    }
    if worst < tol {
        Ok(format!("worst |φ_(-iρ) − 1| = {worst:.2e}"))
    } else {
        Err(crate::Error::invalid(format!(
            "normalisation deviation {worst:.2e} (tolerance {tol:.0e})"
        )))
    }
}

// ---------------------------------------------------------------------------

type Criterion = (u32, &'static str, fn(Scale) -> Result<String>);

const CRITERIA: &[Criterion] = &[
    (1, "closed-form base cases of the recurrence", crit1_base_cases),
    (2, "route agreement against the quadrature oracle", crit2_route_agreement),
    (3, "H3 closed form across evaluators", crit3_h3_closed_form),
    (4, "Bessel-series remainder decay", crit4_remainder_decay),
    (5, "c-function asymptotic envelope", crit5_c_function_asymptotics),
    (6, "Harish-Chandra vs Koornwinder", crit6_hc_vs_koornwinder),
    (7, "H3 coefficient pattern", crit7_h3_gamma_pattern),
    (8, "slow-decrease certification", crit8_certify_spaces),
    (9, "exponential growth type", crit9_growth_type),
    (10, "Euclidean delta-sum bounds", crit10_euclid_bounds),
    (11, "Weyl denominator and wall continuity", crit11_weyl_denominator),
    (12, "chamber threshold search", crit12_find_m),
    (13, "normalisation at -i rho", crit13_phi_normalisation),
];

/// Number of criteria.
pub fn criteria_count() -> usize {
    CRITERIA.len()
}

/// Run one criterion by id (1-based).
pub fn run_criterion(id: u32, scale: Scale) -> CriterionResult {
    let (_, name, f) = CRITERIA
        .iter()
        .find(|(cid, _, _)| *cid == id)
        .expect("criterion id");
    match f(scale) {
        Ok(detail) => CriterionResult {
            id,
            name,
            pass: true,
            detail,
        },
        Err(e) => CriterionResult {
            id,
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

/// Run the whole suite.
pub fn run_all(scale: Scale) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|&(id, _, _)| run_criterion(id, scale))
        .collect()
}
