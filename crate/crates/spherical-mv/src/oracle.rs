//! Reference quadrature for the rank-one kernel integrals.
//!
//! Composite Gauss–Legendre panels with an oscillation-aware panel count
//! (at least `oscillation_guard` panels per period of cos(ζs)) and an error
//! estimate from comparing orders g and 2g on the same panels. The integrand
//! of `integral_I` has an endpoint singularity (cosh t − cosh s)^{ℓ−1/2} at
//! s = t when the dimension is even; there the tail [t/2, t] is mapped by
//! s = t − u², which makes the integrand analytic in u.
//!
//! Differences of cosh are always evaluated as
//! cosh a − cosh b = 2 sinh((a+b)/2) sinh((a−b)/2) to avoid cancellation
//! near the endpoint.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gl;
use crate::rootdata::RankOneSpace;
use crate::specfun::{gauss_2f1, HypergeometricParams};

/// Panel/tolerance policy for the quadrature oracle.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Base panel count before oscillation scaling.
    pub panels: usize,
    /// Gauss–Legendre order g; the error estimate compares g with 2g.
    pub nodes_per_panel: usize,
    /// Absolute tolerance on the result.
    pub abs_tol: f64,
    /// Minimum panels per oscillation period 2π/|Re ζ| (≥ 4).
    pub oscillation_guard: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: 8,
            nodes_per_panel: 16,
            abs_tol: 1e-10,
            oscillation_guard: 4.0,
        }
    }
}

impl QuadratureSpec {
    /// Desk-scale budget: panels · nodes_per_panel ≤ 10⁶.
    const NODE_BUDGET: usize = 1_000_000;

    pub fn validate(&self) -> Result<()> {
        if self.panels == 0 || self.nodes_per_panel == 0 {
            return Err(Error::invalid("quadrature spec needs positive panel/node counts"));
        }
        if self.oscillation_guard < 4.0 {
            return Err(Error::invalid("oscillation guard must be at least 4"));
        }
        if self.panels * self.nodes_per_panel > Self::NODE_BUDGET {
            return Err(Error::invalid("quadrature spec exceeds the node budget"));
        }
        Ok(())
    }

    fn initial_panels(&self, t: f64, zeta: Complex64) -> usize {
        let periods = t * zeta.re.abs() / (2.0 * std::f64::consts::PI);
        let osc = (self.oscillation_guard * periods).ceil() as usize;
        self.panels.max(osc).max(1)
    }
}

/// Quadrature output with its order-doubling error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub err_est: f64,
    pub panels: usize,
}

pub(crate) fn cosh_diff(a: f64, b: f64) -> f64 {
    2.0 * (0.5 * (a + b)).sinh() * (0.5 * (a - b)).sinh()
}

/// ∫₀ᵗ cos(ζs)(cosh t − cosh s)^{(n−3)/2} ₂F₁(…) ds, the holomorphic kernel
/// of the rank-one spherical function.
pub fn integral_i(
    space: &RankOneSpace,
    t: f64,
    zeta: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    integral_i_with_err(space, t, zeta, spec).map(|r| r.value)
}

/// Same as [`integral_I`], returning the error estimate and panel count.
pub fn integral_i_with_err(
    space: &RankOneSpace,
    t: f64,
    zeta: Complex64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    check_envelope(t, zeta)?;
    let table_free = SegmentSet::for_space(space, t)?;
    refine(&table_free, zeta, spec, t)
}

/// 𝓘_m(ζ) = ∫₋ₜᵗ cos(ζs)(cosh t − cosh s)^m ds for integer m ≥ 0.
pub fn integral_cal_i(
    m: u32,
    t: f64,
    zeta: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    integral_cali_with_err(m, t, zeta, spec).map(|r| r.value)
}

/// Same as [`integral_calI`], returning the error estimate and panel count.
pub fn integral_cali_with_err(
    m: u32,
    t: f64,
    zeta: Complex64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    if m > 12 {
        return Err(Error::Range {
            what: "integral_calI",
            detail: format!("order m = {m} exceeds 12"),
        });
    }
    check_envelope(t, zeta)?;
    // even integrand: ∫₋ₜᵗ = 2∫₀ᵗ
    let seg = SegmentSet {
        segments: vec![Segment::Direct {
            lo: 0.0,
            hi: t,
            weight: WeightFn::IntegerPower { t, m },
        }],
        scale: 2.0,
    };
    refine(&seg, zeta, spec, t)
}

fn check_envelope(t: f64, zeta: Complex64) -> Result<()> {
    if !(0.0..=5.0).contains(&t) || t == 0.0 {
        return Err(Error::Range {
            what: "oracle",
            detail: format!("t = {t} outside (0, 5]"),
        });
    }
    // keep e^{|Im ζ| t} representable with headroom for the weight factors
    if zeta.im.abs() * t > 600.0 {
        return Err(Error::Range {
            what: "oracle",
            detail: format!("|Im ζ|·t = {:.1} too large", zeta.im.abs() * t),
        });
    }
    Ok(())
}

#[derive(Clone)]
enum WeightFn {
    /// (cosh t − cosh s)^m at integration variable s.
    IntegerPower { t: f64, m: u32 },
    /// (cosh t − cosh s)^{pow} · ₂F₁(…) at s, pow = (n−3)/2 for odd n.
    KernelDirect {
        t: f64,
        pow: f64,
        params: HypergeometricParams,
        cosh_t2: f64,
    },
    /// Same kernel after s = t − u²: weight(u) = 2u (cosh t − cosh(t−u²))^{pow} ₂F₁(…).
    KernelEndpoint {
        t: f64,
        pow: f64,
        params: HypergeometricParams,
        cosh_t2: f64,
    },
}

impl WeightFn {
    fn eval(&self, x: f64) -> Result<f64> {
        match *self {
            WeightFn::IntegerPower { t, m } => Ok(cosh_diff(t, x).powi(m as i32)),
            WeightFn::KernelDirect {
                t,
                pow,
                ref params,
                cosh_t2,
            } => {
                let z = cosh_diff(t, x);
                let f = gauss_2f1(params, z / cosh_t2)?;
                Ok(z.powf(pow) * f)
            }
            WeightFn::KernelEndpoint {
                t,
                pow,
                ref params,
                cosh_t2,
            } => {
                // z = cosh t − cosh(t − u²) = 2 sinh(t − u²/2) sinh(u²/2)
                let z = 2.0 * (t - 0.5 * x * x).sinh() * (0.5 * x * x).sinh();
                let f = gauss_2f1(params, z / cosh_t2)?;
                Ok(2.0 * x * z.powf(pow) * f)
            }
        }
    }

    /// Phase position in the original variable s for a quadrature point x.
    fn phase_arg(&self, x: f64) -> f64 {
        match *self {
            WeightFn::IntegerPower { .. } | WeightFn::KernelDirect { .. } => x,
            WeightFn::KernelEndpoint { t, .. } => t - x * x,
        }
    }
}

#[derive(Clone)]
enum Segment {
    Direct { lo: f64, hi: f64, weight: WeightFn },
}

struct SegmentSet {
    segments: Vec<Segment>,
    scale: f64,
}

impl SegmentSet {
    fn for_space(space: &RankOneSpace, t: f64) -> Result<SegmentSet> {
        let params = HypergeometricParams::for_space(space);
        let cosh_t2 = 2.0 * t.cosh();
        let pow = (space.n as f64 - 3.0) / 2.0;
        if space.is_even() {
            // half-integer power: endpoint substitution on [t/2, t]
            let segments = vec![
                Segment::Direct {
                    lo: 0.0,
                    hi: 0.5 * t,
                    weight: WeightFn::KernelDirect {
                        t,
                        pow,
                        params,
                        cosh_t2,
                    },
                },
                Segment::Direct {
                    lo: 0.0,
                    hi: (0.5 * t).sqrt(),
                    weight: WeightFn::KernelEndpoint {
                        t,
                        pow,
                        params,
                        cosh_t2,
                    },
                },
            ];
            Ok(SegmentSet {
                segments,
                scale: 1.0,
            })
        } else {
            Ok(SegmentSet {
                segments: vec![Segment::Direct {
                    lo: 0.0,
                    hi: t,
                    weight: WeightFn::KernelDirect {
                        t,
                        pow,
                        params,
                        cosh_t2,
                    },
                }],
                scale: 1.0,
            })
        }
    }

    fn eval(&self, zeta: Complex64, panels: usize, order: usize) -> Result<Complex64> {
        let rule = gl::nodes(order);
        let mut total = Complex64::new(0.0, 0.0);
        for seg in &self.segments {
            let Segment::Direct { lo, hi, weight } = seg;
            let h = (hi - lo) / panels as f64;
            let mut seg_acc = Complex64::new(0.0, 0.0);
            for p in 0..panels {
                let mid = lo + (p as f64 + 0.5) * h;
                for &(x, w) in rule.iter() {
                    let s = mid + 0.5 * h * x;
                    let wv = weight.eval(s)?;
                    if wv == 0.0 {
                        continue;
                    }
                    seg_acc += w * wv * (zeta * weight.phase_arg(s)).cos();
                }
            }
            total += seg_acc * 0.5 * h;
        }
        Ok(total * self.scale)
    }
}

fn refine(
    set: &SegmentSet,
    zeta: Complex64,
    spec: &QuadratureSpec,
    t: f64,
) -> Result<QuadResult> {
    let g = spec.nodes_per_panel;
    let mut panels = spec.initial_panels(t, zeta);
    loop {
        let coarse = set.eval(zeta, panels, g)?;
        let fine = set.eval(zeta, panels, 2 * g)?;
        let err = (fine - coarse).norm();
        if err <= spec.abs_tol {
            return Ok(QuadResult {
                value: fine,
                err_est: err,
                panels,
            });
        }
        if panels * 2 * (2 * g) > QuadratureSpec::NODE_BUDGET {
            return Err(Error::Convergence {
                estimate: err,
                tolerance: spec.abs_tol,
            });
        }
        panels *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_rank_one;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn closed_form_h3() {
        // n = 3: power 0, F ≡ 1, so I(ζ) = ∫₀¹ cos(ζs) ds = sin(ζ)/ζ at t = 1.
        let h3 = build_rank_one(2, 0).unwrap();
        let v = integral_i(&h3, 1.0, Complex64::new(2.0, 0.0), &spec()).unwrap();
        let want = (2.0f64).sin() / 2.0;
        assert!((v.re - want).abs() < 1e-12, "{v} vs {want}");
        assert!(v.im.abs() < 1e-13);

        let v0 = integral_i(&h3, 1.0, Complex64::new(0.0, 0.0), &spec()).unwrap();
        assert!((v0.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cali_base_cases() {
        // 𝓘₀(λ) = 2 sin(λt)/λ
        let v = integral_cal_i(0, 1.0, Complex64::new(3.0, 0.0), &spec()).unwrap();
        let want = 2.0 * (3.0f64).sin() / 3.0;
        assert!((v.re - want).abs() < 1e-12);

        // 𝓘₁(0) = 2(cosh 1 − sinh 1)
        let v = integral_cal_i(1, 1.0, Complex64::new(0.0, 0.0), &spec()).unwrap();
        let want = 2.0 * (1.0f64.cosh() - 1.0f64.sinh());
        assert!((v.re - want).abs() < 1e-12);
    }

    #[test]
    fn evenness_in_zeta() {
        let z = Complex64::new(4.3, 1.2);
        for m in [0u32, 2, 5] {
            let a = integral_cal_i(m, 1.4, z, &spec()).unwrap();
            let b = integral_cal_i(m, 1.4, -z, &spec()).unwrap();
            assert!((a - b).norm() <= 2.0 * spec().abs_tol);
        }
    }

    #[test]
    fn imaginary_axis_positive() {
        // purely imaginary ζ ⇒ cos(ζs) = cosh(|ζ|s) > 0 and even weight ⇒ positive value
        let v = integral_cal_i(3, 2.0, Complex64::new(0.0, 1.7), &spec()).unwrap();
        assert!(v.re > 0.0);
        assert!(v.im.abs() < 1e-10);
    }

    #[test]
    fn odd_dimension_matches_cali() {
        // odd n: I = ½ 𝓘_{(n−3)/2}
        for (p, zeta) in [(2i64, 7.0), (4, 3.3)] {
            let space = build_rank_one(p, 0).unwrap();
            let ell = (space.n - 3) / 2;
            let z = Complex64::new(zeta, 0.0);
            let a = integral_i(&space, 1.2, z, &spec()).unwrap();
            let b = integral_cal_i(ell, 1.2, z, &spec()).unwrap();
            assert!((a - b * 0.5).norm() < 3.0 * spec().abs_tol, "p={p}");
        }
    }

    #[test]
    fn refinement_stability() {
        // doubling the base panels moves the result by less than the reported estimate
        let ch2 = build_rank_one(2, 1).unwrap();
        let z = Complex64::new(11.0, 0.5);
        let mut s1 = spec();
        s1.abs_tol = 1e-12;
        let r1 = integral_i_with_err(&ch2, 1.0, z, &s1).unwrap();
        let mut s2 = s1;
        s2.panels = s1.panels * 2;
        let r2 = integral_i_with_err(&ch2, 1.0, z, &s2).unwrap();
        assert!((r1.value - r2.value).norm() <= r1.err_est.max(1e-14) * 4.0 + 1e-13);
    }

    #[test]
    fn even_dimension_endpoint_handled() {
        // n = 2 has an integrable (cosh t − cosh s)^{-1/2} endpoint; the result
        // must be finite and stable under refinement.
        let h2 = build_rank_one(1, 0).unwrap();
        let z = Complex64::new(5.0, 0.0);
        let mut s = spec();
        s.abs_tol = 1e-11;
        let r = integral_i_with_err(&h2, 1.0, z, &s).unwrap();
        assert!(r.value.re.is_finite());
        assert!(r.err_est <= 1e-11);
    }

    #[test]
    fn rejects_out_of_envelope() {
        let h3 = build_rank_one(2, 0).unwrap();
        assert!(integral_i(&h3, 0.0, Complex64::new(1.0, 0.0), &spec()).is_err());
        assert!(integral_i(&h3, 6.0, Complex64::new(1.0, 0.0), &spec()).is_err());
        assert!(integral_cal_i(13, 1.0, Complex64::new(1.0, 0.0), &spec()).is_err());
        let mut bad = spec();
        bad.oscillation_guard = 2.0;
        assert!(integral_i(&h3, 1.0, Complex64::new(1.0, 0.0), &bad).is_err());
    }
}
