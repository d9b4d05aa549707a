//! Complex log-Gamma via the Stirling series with argument shifting, and the
//! reflection formula for the left half plane.
//!
//! The imaginary part is continuous on Re z ≥ 1/2; for Re z < 1/2 the
//! reflection step may shift it by an integer multiple of 2π relative to the
//! principal branch. Every consumer in this crate exponentiates differences
//! of log-Gamma values, which such shifts cannot affect.

use num_complex::Complex64;

use crate::error::{Error, Result};

// B_{2k} / ((2k)(2k−1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

const HALF_LOG_TWO_PI: f64 = 0.918938533204672741780329736406;

/// log Γ(z) for complex z, accurate to at least 12 significant digits for
/// |z| ≤ 10³. Nonpositive integers are poles and are rejected.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-12 {
        return Err(Error::Domain {
            what: "log_gamma",
            z,
        });
    }
    if z.re < 0.5 {
        // Reflection: log Γ(z) = log π − log sin(πz) − log Γ(1−z).
        let lg = log_gamma_right(Complex64::new(1.0, 0.0) - z);
        let ls = log_sin_pi(z);
        Ok(Complex64::new(std::f64::consts::PI.ln(), 0.0) - ls - lg)
    } else {
        Ok(log_gamma_right(z))
    }
}

/// Stirling series with recurrence shifting; requires Re z ≥ 1/2.
fn log_gamma_right(mut z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let lnz = z.ln();
    let mut acc = (z - 0.5) * lnz - z + HALF_LOG_TWO_PI;
    let z2 = z * z;
    let mut zp = z;
    for c in STIRLING {
        acc += c / zp;
        zp *= z2;
    }
    acc + shift
}

/// Overflow-free log sin(πz); exact up to a multiple of 2πi.
fn log_sin_pi(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        // sin(πz) = −e^{−iπz}(1 − e^{2πiz})/(2i); |e^{2πiz}| ≤ 1 here, and
        // log(−1/(2i)) = iπ/2 − log 2.
        let i = Complex64::new(0.0, 1.0);
        let pi = std::f64::consts::PI;
        let w = (Complex64::new(0.0, 2.0 * pi) * z).exp();
        -i * pi * z + (Complex64::new(1.0, 0.0) - w).ln()
            + Complex64::new(-(2.0f64.ln()), pi / 2.0)
    } else {
        log_sin_pi(z.conj()).conj()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lg(re: f64, im: f64) -> Complex64 {
        log_gamma(Complex64::new(re, im)).unwrap()
    }

    fn assert_log_close(got: Complex64, want: Complex64, tol: f64) {
        // Compare up to 2πi: real parts directly, imaginary parts mod 2π.
        assert!((got.re - want.re).abs() <= tol * (1.0 + want.re.abs()), "re: {got} vs {want}");
        let tau = 2.0 * std::f64::consts::PI;
        let d = (got.im - want.im).rem_euclid(tau);
        let d = d.min(tau - d);
        assert!(d <= tol * (1.0 + want.im.abs()), "im: {got} vs {want}");
    }

    #[test]
    fn classical_values() {
        assert!(lg(1.0, 0.0).norm() < 1e-14);
        let want = std::f64::consts::PI.sqrt().ln();
        assert!((lg(0.5, 0.0).re - want).abs() < 1e-14);
        assert!(lg(0.5, 0.0).im.abs() < 1e-14);
    }

    #[test]
    fn reference_grid() {
        // Reference values computed with mpmath at 30 digits.
        let cases = [
            (10.0, 10.0, 8.2361317504487178437, 23.94870341378203736),
            (-2.5, 3.0, -7.4782360420503149704, -5.7261042719103868422),
            (0.1, 100.0, -158.00276162067260533, 359.88831673265500361),
            (1000.0, 0.0, 5905.2204232091812118, 0.0),
            (1.0, 999.0, -1564.8532145455727731, 5901.6333386165495438),
            (-5.5, -2.25, -10.481613661335103803, 14.765174648662994057),
            (3.0, -40.0, -52.689155060822636631, -111.4051324154599655),
        ];
        for (re, im, wre, wim) in cases {
            assert_log_close(lg(re, im), Complex64::new(wre, wim), 1e-12);
        }
    }

    #[test]
    fn poles_are_rejected() {
        for k in 0..5 {
            assert!(log_gamma(Complex64::new(-(k as f64), 0.0)).is_err());
        }
        assert!(log_gamma(Complex64::new(-3.0 + 1e-14, 0.0)).is_err());
        assert!(log_gamma(Complex64::new(-3.0, 1e-6)).is_ok());
    }

    #[test]
    fn recurrence_on_grid() {
        // exp(logΓ(z+1) − logΓ(z)) = z on a grid avoiding poles.
        let mut worst = 0.0f64;
        for i in 0..20 {
            for j in 0..20 {
                let z = Complex64::new(-9.3 + i as f64, -9.7 + j as f64);
                let d = (lg(z.re + 1.0, z.im) - lg(z.re, z.im)).exp();
                let rel = (d - z).norm() / z.norm();
                worst = worst.max(rel);
            }
        }
        assert!(worst < 1e-11, "worst recurrence error {worst:.3e}");
    }

    #[test]
    fn ratio_asymptotics() {
        // |Γ(z)/Γ(z+b)|·|z|^b → 1 along z = x + 3i for b = 3/2.
        let b = 1.5;
        let mut prev = f64::INFINITY;
        for x in [10.0, 100.0, 1000.0] {
            let z = Complex64::new(x, 3.0);
            let r = (lg(z.re, z.im) - log_gamma(z + b).unwrap()).exp();
            let v = r.norm() * z.norm().powf(b);
            let dev = (v - 1.0).abs();
            assert!(dev < prev + 1e-12, "deviation should shrink");
            prev = dev;
        }
        assert!(prev < 5e-4);
    }
}
