//! Interchangeable evaluation routes for the spherical function and its
//! kernel integral, behind one trait and a name-keyed registry.
//!
//! Every route evaluates the same pair of functions for a fixed rank-one
//! space and radius t:
//!
//! * `kernel`: the holomorphic kernel integral I(ζ);
//! * `phi`: the spherical function φ_ζ(exp tH) = prefactor · I(ζ).
//!
//! Routes differ in algorithm and envelope: `oracle` (quadrature, the
//! reference), `recurrence` (odd dimension), `series` (even dimension,
//! large |ζ|), `hc` (Harish-Chandra expansion), `complex` (type-A closed
//! form, H3 only), and `auto` (parity- and envelope-based dispatch). The
//! registry maps the CLI route names onto constructors.

use num_complex::Complex64;

use crate::complexgrp::{phi_complex_regular, ComplexGroupPoint};
use crate::error::{Error, Result};
use crate::hcseries::phi_hc_with_err;
use crate::oracle::{integral_i_with_err, QuadratureSpec};
use crate::rankone::{
    build_bessel_series, cal_i_recurrence, i_even_series, koornwinder_prefactor, BesselSeriesData,
};
use crate::rootdata::{weyl_group_a, RankOneSpace};

/// A route evaluation with its provenance and error estimate.
#[derive(Debug, Clone, Copy)]
pub struct RouteOutput {
    pub value: Complex64,
    pub route: &'static str,
    pub est_error: f64,
}

/// One evaluation strategy for a fixed (space, t).
pub trait PhiRoute: Send + Sync {
    fn name(&self) -> &'static str;
    /// The kernel integral I(ζ).
    fn kernel(&self, zeta: Complex64) -> Result<RouteOutput>;
    /// The spherical function φ_ζ(exp tH).
    fn phi(&self, zeta: Complex64) -> Result<RouteOutput> {
        let pref = self.prefactor()?;
        let out = self.kernel(zeta)?;
        Ok(RouteOutput {
            value: out.value * pref,
            route: out.route,
            est_error: out.est_error * pref.abs(),
        })
    }
    /// The ζ-independent factor linking the two.
    fn prefactor(&self) -> Result<f64>;
}

/// Tunables shared by the route constructors.
#[derive(Debug, Clone, Copy)]
pub struct RouteConfig {
    pub quad: QuadratureSpec,
    /// Bessel-series truncation order.
    pub series_trunc: usize,
    /// Harish-Chandra truncation K.
    pub hc_trunc: usize,
}

impl Default for RouteConfig {
    fn default() -> Self {
        RouteConfig {
            quad: QuadratureSpec::default(),
            series_trunc: 8,
            hc_trunc: 60,
        }
    }
}

struct OracleRoute {
    space: RankOneSpace,
    t: f64,
    quad: QuadratureSpec,
}

impl PhiRoute for OracleRoute {
    fn name(&self) -> &'static str {
        "oracle"
    }
    fn kernel(&self, zeta: Complex64) -> Result<RouteOutput> {
        let r = integral_i_with_err(&self.space, self.t, zeta, &self.quad)?;
        Ok(RouteOutput {
            value: r.value,
            route: "oracle",
            est_error: r.err_est,
        })
    }
    fn prefactor(&self) -> Result<f64> {
        koornwinder_prefactor(&self.space, self.t)
    }
}

struct RecurrenceRoute {
    space: RankOneSpace,
    t: f64,
}

impl PhiRoute for RecurrenceRoute {
    fn name(&self) -> &'static str {
        "recurrence"
    }
    fn kernel(&self, zeta: Complex64) -> Result<RouteOutput> {
        let ell = self.space.ell_odd()?;
        let v = cal_i_recurrence(ell, self.t, zeta)? * 0.5;
        Ok(RouteOutput {
            value: v,
            route: "recurrence",
            est_error: 1e-13 * (1.0 + v.norm()),
        })
    }
    fn prefactor(&self) -> Result<f64> {
        koornwinder_prefactor(&self.space, self.t)
    }
}

struct SeriesRoute {
    t: f64,
    data: BesselSeriesData,
}

impl PhiRoute for SeriesRoute {
    fn name(&self) -> &'static str {
        "series"
    }
    fn kernel(&self, zeta: Complex64) -> Result<RouteOutput> {
        let (v, order) = i_even_series(&self.data, zeta)?;
        let est = if order == 0 {
            1e-12
        } else {
            // magnitude of the last included term as a tail proxy
            let m = self.data.trunc - 1;
            let ratio = self.t / zeta;
            self.data.d[m].abs() * ratio.norm().powi((self.data.ell + m as u32) as i32)
        };
        Ok(RouteOutput {
            value: v,
            route: "series",
            est_error: est,
        })
    }
    fn prefactor(&self) -> Result<f64> {
        koornwinder_prefactor(&self.data.space, self.t)
    }
}

struct HcRoute {
    space: RankOneSpace,
    t: f64,
    k_trunc: usize,
}

impl PhiRoute for HcRoute {
    fn name(&self) -> &'static str {
        "hc"
    }
    fn kernel(&self, zeta: Complex64) -> Result<RouteOutput> {
        let out = self.phi(zeta)?;
        let pref = self.prefactor()?;
        Ok(RouteOutput {
            value: out.value / pref,
            route: "hc",
            est_error: out.est_error / pref.abs(),
        })
    }
    fn phi(&self, zeta: Complex64) -> Result<RouteOutput> {
        let r = phi_hc_with_err(&self.space, self.t, zeta, self.k_trunc)?;
        Ok(RouteOutput {
            value: r.value,
            route: "hc",
            est_error: r.tail_estimate,
        })
    }
    fn prefactor(&self) -> Result<f64> {
        koornwinder_prefactor(&self.space, self.t)
    }
}

struct ComplexRoute {
    t: f64,
    space: RankOneSpace,
}

impl PhiRoute for ComplexRoute {
    fn name(&self) -> &'static str {
        "complex"
    }
    fn kernel(&self, zeta: Complex64) -> Result<RouteOutput> {
        let out = self.phi(zeta)?;
        let pref = self.prefactor()?;
        Ok(RouteOutput {
            value: out.value / pref,
            route: "complex",
            est_error: out.est_error / pref.abs(),
        })
    }
    fn phi(&self, zeta: Complex64) -> Result<RouteOutput> {
        // A₁ model of H³: t = α(H) = H₁ − H₂, λ-scalar = λ₁.
        let w = weyl_group_a(1)?;
        let h = vec![self.t / 2.0, -self.t / 2.0];
        let lam = vec![zeta, -zeta];
        let cp = ComplexGroupPoint::new(w, h, lam)?;
        let r = phi_complex_regular(&cp)?;
        Ok(RouteOutput {
            value: r.value,
            route: "complex",
            est_error: r.err_est,
        })
    }
    fn prefactor(&self) -> Result<f64> {
        koornwinder_prefactor(&self.space, self.t)
    }
}

/// Parity- and envelope-based dispatch: recurrence for odd dimension, the
/// Bessel series for even dimension once |ζ| ≥ 20 and the Bessel argument
/// stays inside its imaginary envelope, the oracle otherwise.
struct AutoRoute {
    space: RankOneSpace,
    t: f64,
    recurrence: Option<RecurrenceRoute>,
    series: Option<SeriesRoute>,
    oracle: OracleRoute,
}

impl AutoRoute {
    fn pick(&self, zeta: Complex64) -> &dyn PhiRoute {
        if let Some(rec) = &self.recurrence {
            return rec;
        }
        if let Some(series) = &self.series {
            if zeta.norm() >= 20.0 && (zeta * self.t).im.abs() <= 9.5 {
                return series;
            }
        }
        &self.oracle
    }
}

impl PhiRoute for AutoRoute {
    fn name(&self) -> &'static str {
        "auto"
    }
    fn kernel(&self, zeta: Complex64) -> Result<RouteOutput> {
        self.pick(zeta).kernel(zeta)
    }
    fn prefactor(&self) -> Result<f64> {
        koornwinder_prefactor(&self.space, self.t)
    }
}

/// A named entry of the route registry.
pub struct RouteSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn(&RankOneSpace, f64, &RouteConfig) -> Result<Box<dyn PhiRoute>>,
}

fn build_oracle(space: &RankOneSpace, t: f64, cfg: &RouteConfig) -> Result<Box<dyn PhiRoute>> {
    Ok(Box::new(OracleRoute {
        space: *space,
        t,
        quad: cfg.quad,
    }))
}

fn build_recurrence(space: &RankOneSpace, t: f64, _cfg: &RouteConfig) -> Result<Box<dyn PhiRoute>> {
    space.ell_odd()?;
    Ok(Box::new(RecurrenceRoute { space: *space, t }))
}

fn build_series(space: &RankOneSpace, t: f64, cfg: &RouteConfig) -> Result<Box<dyn PhiRoute>> {
    let data = build_bessel_series(space, t, cfg.series_trunc)?;
    Ok(Box::new(SeriesRoute { t, data }))
}

fn build_hc(space: &RankOneSpace, t: f64, cfg: &RouteConfig) -> Result<Box<dyn PhiRoute>> {
    Ok(Box::new(HcRoute {
        space: *space,
        t,
        k_trunc: cfg.hc_trunc,
    }))
}

fn build_complex(space: &RankOneSpace, t: f64, _cfg: &RouteConfig) -> Result<Box<dyn PhiRoute>> {
    if (space.p, space.q) != (2, 0) {
        return Err(Error::invalid(
            "the complex-group route models H3 (p, q) = (2, 0) only",
        ));
    }
    Ok(Box::new(ComplexRoute { t, space: *space }))
}

fn build_auto(space: &RankOneSpace, t: f64, cfg: &RouteConfig) -> Result<Box<dyn PhiRoute>> {
    let recurrence = if space.is_even() {
        None
    } else {
        Some(RecurrenceRoute { space: *space, t })
    };
    let series = if space.is_even() {
        Some(SeriesRoute {
            t,
            data: build_bessel_series(space, t, cfg.series_trunc)?,
        })
    } else {
        None
    };
    Ok(Box::new(AutoRoute {
        space: *space,
        t,
        recurrence,
        series,
        oracle: OracleRoute {
            space: *space,
            t,
            quad: cfg.quad,
        },
    }))
}

/// Every registered route, in a stable order.
pub fn registry() -> &'static [RouteSpec] {
    &[
        RouteSpec {
            name: "auto",
            description: "parity- and envelope-based dispatch over the fast routes",
            build: build_auto,
        },
        RouteSpec {
            name: "oracle",
            description: "composite Gauss-Legendre quadrature of the kernel integral",
            build: build_oracle,
        },
        RouteSpec {
            name: "recurrence",
            description: "three-term recurrence (odd dimension)",
            build: build_recurrence,
        },
        RouteSpec {
            name: "series",
            description: "Bessel-function series (even dimension)",
            build: build_series,
        },
        RouteSpec {
            name: "hc",
            description: "Harish-Chandra expansion with the c-function",
            build: build_hc,
        },
        RouteSpec {
            name: "complex",
            description: "type-A complex-group closed form (H3)",
            build: build_complex,
        },
    ]
}

/// Construct a route by registry name.
pub fn build_route(
    name: &str,
    space: &RankOneSpace,
    t: f64,
    cfg: &RouteConfig,
) -> Result<Box<dyn PhiRoute>> {
    for spec in registry() {
        if spec.name == name {
            return (spec.build)(space, t, cfg);
        }
    }
    Err(Error::invalid(format!(
        "unknown route {name:?}; known: {}",
        registry()
            .iter()
            .map(|s| s.name)
            .collect::<Vec<_>>()
            .join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_rank_one;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn registry_names_resolve() {
        let h3 = build_rank_one(2, 0).unwrap();
        let cfg = RouteConfig::default();
        for name in ["auto", "oracle", "recurrence", "hc", "complex"] {
            build_route(name, &h3, 1.0, &cfg).unwrap();
        }
        assert!(build_route("series", &h3, 1.0, &cfg).is_err()); // odd space
        assert!(build_route("nope", &h3, 1.0, &cfg).is_err());

        let h2 = build_rank_one(1, 0).unwrap();
        build_route("series", &h2, 1.0, &cfg).unwrap();
        assert!(build_route("recurrence", &h2, 1.0, &cfg).is_err());
        assert!(build_route("complex", &h2, 1.0, &cfg).is_err());
    }

    #[test]
    fn routes_agree_on_h3() {
        let h3 = build_rank_one(2, 0).unwrap();
        let cfg = RouteConfig::default();
        let z = c64(3.7, 0.4);
        let mut values = Vec::new();
        for name in ["auto", "oracle", "recurrence", "hc", "complex"] {
            let r = build_route(name, &h3, 1.0, &cfg).unwrap();
            values.push((name, r.phi(z).unwrap().value));
        }
        for (name, v) in &values[1..] {
            assert!(
                (v - values[0].1).norm() <= 1e-7 * (1.0 + values[0].1.norm()),
                "{name}: {v} vs {}",
                values[0].1
            );
        }
    }

    #[test]
    fn auto_matches_named_routes_on_even_space() {
        let ch2 = build_rank_one(2, 1).unwrap();
        let cfg = RouteConfig::default();
        let auto = build_route("auto", &ch2, 1.0, &cfg).unwrap();
        let oracle = build_route("oracle", &ch2, 1.0, &cfg).unwrap();
        for z in [c64(0.5, 0.0), c64(25.0, 0.0), c64(60.0, 1.0)] {
            let a = auto.kernel(z).unwrap().value;
            let o = oracle.kernel(z).unwrap().value;
            assert!((a - o).norm() <= 1e-7 * (1.0 + o.norm()), "ζ={z}: {a} vs {o}");
        }
    }

    #[test]
    fn kernel_and_phi_are_consistent() {
        let h5 = build_rank_one(4, 0).unwrap();
        let cfg = RouteConfig::default();
        let r = build_route("auto", &h5, 1.3, &cfg).unwrap();
        let z = c64(6.0, -0.7);
        let k = r.kernel(z).unwrap().value;
        let p = r.phi(z).unwrap().value;
        let pref = koornwinder_prefactor(&h5, 1.3).unwrap();
        assert!((k * pref - p).norm() <= 1e-12 * (1.0 + p.norm()));
    }
}
