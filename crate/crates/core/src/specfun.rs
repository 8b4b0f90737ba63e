//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! For `x <= 2` both functions come from their ascending power series around
//! the logarithmic singularity. For `x > 2` the exponentially scaled pair
//! `e^x K0(x)`, `e^x K1(x)` is obtained together from Steed's evaluation of
//! the second continued fraction (Temme's CF2), which converges quickly for
//! large arguments and never touches `e^{-x}`. The unscaled functions multiply
//! by `e^{-x}` last, so they underflow to exactly zero instead of producing NaN.

use crate::error::{domain, Result};
use crate::quad;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_SWITCH: f64 = 2.0;
const CF2_MAX_ITER: usize = 10_000;

/// A Bessel function value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub value: f64,
    pub est_abs_error: f64,
}

/// Estimated relative error of the scaled evaluations (a few ulps).
const REL_ERR: f64 = 8.0 * f64::EPSILON;

fn check_arg(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(format!("Bessel K requires finite x > 0, got {x}")));
    }
    Ok(())
}

/// `K0(x)`.
pub fn bessel_k0(x: f64) -> Result<BesselEval> {
    check_arg(x)?;
    Ok(unscale(x, k01_scaled(x).0))
}

/// `K1(x)`.
pub fn bessel_k1(x: f64) -> Result<BesselEval> {
    check_arg(x)?;
    Ok(unscale(x, k01_scaled(x).1))
}

/// `e^x K0(x)`.
pub fn bessel_k0e(x: f64) -> Result<f64> {
    check_arg(x)?;
    Ok(k01_scaled(x).0)
}

/// `e^x K1(x)`.
pub fn bessel_k1e(x: f64) -> Result<f64> {
    check_arg(x)?;
    Ok(k01_scaled(x).1)
}

fn unscale(x: f64, scaled: f64) -> BesselEval {
    let value = scaled * (-x).exp();
    if value < f64::MIN_POSITIVE {
        // e^{-x} has left the normal range; report a clean zero
        BesselEval {
            value: 0.0,
            est_abs_error: f64::MIN_POSITIVE,
        }
    } else {
        BesselEval {
            value,
            est_abs_error: REL_ERR * value,
        }
    }
}

/// Scaled pair `(e^x K0(x), e^x K1(x))` for finite `x > 0`. No argument checks.
pub(crate) fn k01_scaled(x: f64) -> (f64, f64) {
    if x <= SERIES_SWITCH {
        let (k0, k1) = k01_series(x);
        let ex = x.exp();
        (k0 * ex, k1 * ex)
    } else {
        k01_cf2_scaled(x)
    }
}

/// Ascending series, accurate for `0 < x <= 2`.
fn k01_series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let log_term = (0.5 * x).ln() + EULER_GAMMA;

    // I0 = sum y^k/(k!)^2, I1 = (x/2) sum y^k/(k!(k+1)!)
    // K0 = -(ln(x/2)+gamma) I0 + sum H_k y^k/(k!)^2
    // K1 = 1/x + ln(x/2) I1 - (x/4) sum (psi(k+1)+psi(k+2)) y^k/(k!(k+1)!)
    let mut t0 = 1.0; // y^k/(k!)^2
    let mut t1 = 1.0; // y^k/(k!(k+1)!)
    let mut harmonic = 0.0; // H_k
    let mut i0 = 0.0;
    let mut i1s = 0.0;
    let mut k0_sum = 0.0;
    let mut k1_sum = 0.0;
    let mut k = 0usize;
    loop {
        i0 += t0;
        i1s += t1;
        k0_sum += harmonic * t0;
        // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
        let psi_pair = 2.0 * harmonic + 1.0 / (k as f64 + 1.0) - 2.0 * EULER_GAMMA;
        k1_sum += psi_pair * t1;
        k += 1;
        let kf = k as f64;
        harmonic += 1.0 / kf;
        t0 *= y / (kf * kf);
        t1 *= y / (kf * (kf + 1.0));
        if t0 < 1e-18 * i0 && k > 2 {
            break;
        }
    }
    let k0 = -log_term * i0 + k0_sum;
    let i1 = 0.5 * x * i1s;
    let k1 = 1.0 / x + (0.5 * x).ln() * i1 - 0.25 * x * k1_sum;
    (k0, k1)
}

/// Steed's algorithm for CF2 at order 0, returning the scaled pair.
fn k01_cf2_scaled(x: f64) -> (f64, f64) {
    let a1 = 0.25; // 1/4 - nu^2 with nu = 0
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..CF2_MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON * 0.5 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// Integral representation `K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt`,
/// evaluated by adaptive quadrature. Independent of the series and continued
/// fraction above; intended for validation only.
pub fn bessel_k_oracle(nu: u32, x: f64, tol: f64) -> Result<f64> {
    if nu > 1 {
        return Err(domain(format!("oracle supports nu in {{0, 1}}, got {nu}")));
    }
    check_arg(x)?;
    if !(tol > 0.0) {
        return Err(domain("oracle tolerance must be positive"));
    }
    let nu = f64::from(nu);
    // integrate e^x K_nu(x) = int exp(-x (cosh t - 1)) cosh(nu t) dt so the
    // integrand stays O(1) for large x; cosh t - 1 = 2 sinh^2(t/2)
    let integrand = |t: f64| {
        let arg = 2.0 * x * (0.5 * t).sinh().powi(2);
        if !arg.is_finite() || arg > 800.0 {
            return 0.0;
        }
        0.5 * ((-arg + nu * t).exp() + (-arg - nu * t).exp())
    };
    let res = quad::integrate_semi_infinite(integrand, 0.0, tol)?;
    if !res.converged {
        return Err(crate::Error::QuadratureNotConverged {
            est_error: res.est_error,
            evaluations: res.evaluations,
        });
    }
    Ok(res.value * (-x).exp())
}
