//! The Aharonov-Bohm phase of a charge circling a flux line between plates.
//!
//! Two routes lead to the same observable.
//!
//! * Mode exchange: the circulation of the effective potential
//!   (see [`crate::fieldcore`]) gives, for a circle of radius `R` at height `z`,
//!   `f = (4R/d) sum_{n odd} sin(k_n z) K1(k_n R)`.
//! * Induced charges: the plates carry a surface charge
//!   `sigma(s) = -(2e/d^2) sum_{n odd} n sin(k_n z) K0(k_n s)` that follows the
//!   particle. The part inside the orbit, `e* = 2 pi int_0^R s sigma(s) ds`,
//!   screens the charge and the phase is `(e + e*) Phi / (hbar c)`.
//!
//! Integrating `sigma` term by term with `int_0^X x K0(x) dx = 1 - X K1(X)`
//! and `sum_{n odd} (4/(n pi)) sin(n pi t) = 1` for `0 < t < 1` gives
//! `e*/e = -1 + (4R/d) sum_{n odd} sin(k_n z) K1(k_n R)`, i.e. `1 + e*/e = f`.
//! [`enclosed_induced_charge`] evaluates the same quantity by quadrature of the
//! `K0` terms instead of the closed form, and [`equivalence_check`] compares
//! the two.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::fieldcore::odd_k1_sum;
use crate::model::{LoopPath, PhaseResult, PlateGeometry, SeriesControl};
use crate::quad;
use crate::series::{
    geometric_tail, sin_pi, sum_modes, weighted_geometric_tail, CompensatedSum, SeriesOutcome,
};
use crate::specfun::{bessel_k0, k01_scaled};

/// Default outer quadrature tolerance for [`loop_phase`].
pub const LOOP_QUAD_TOL: f64 = 1e-10;

fn check_radius(r: f64, what: &str) -> Result<()> {
    if !r.is_finite() || r <= 0.0 {
        return Err(domain(format!("{what} must be finite and > 0, got {r}")));
    }
    Ok(())
}

fn check_interior(g: &PlateGeometry, z: f64) -> Result<f64> {
    let zf = g.z_fraction(z)?;
    if g.on_plate(z) {
        return Err(domain(format!(
            "z = {z} must lie strictly between the plates"
        )));
    }
    Ok(zf)
}

fn phase_from(f: f64, out: SeriesOutcome) -> PhaseResult {
    PhaseResult {
        f,
        terms_used: out.terms_used,
        converged: out.converged,
        est_rel_error: out.est_rel_error,
    }
}

/// Phase ratio for a circular orbit of radius `r` centred on the flux.
pub fn circular_phase(
    g: &PlateGeometry,
    r: f64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<PhaseResult> {
    ctl.validate()?;
    check_radius(r, "loop radius")?;
    g.z_fraction(z)?;
    let (f, out) = odd_k1_sum(g, r, z, 4.0 * r / g.d(), ctl);
    Ok(phase_from(f, out))
}

/// Leading large-`R` behaviour `sqrt(8R/d) sin(pi z/d) exp(-pi R/d)`, set by
/// the lightest mode `n = 1`.
pub fn asymptotic_phase(g: &PlateGeometry, r: f64, z: f64) -> f64 {
    let rd = r / g.d();
    (8.0 * rd).sqrt() * sin_pi(z / g.d()) * (-PI * rd).exp()
}

/// Circulation of the effective potential along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopPhase {
    pub phase: PhaseResult,
    /// Summed quadrature error estimate over all segments (absolute, units of the phase).
    pub quad_est_error: f64,
    /// Number of effective-potential evaluations.
    pub evaluations: usize,
}

/// Phase ratio for an arbitrary closed loop at height `z`, with the default
/// quadrature tolerance.
pub fn loop_phase(
    g: &PlateGeometry,
    path: &LoopPath,
    z: f64,
    ctl: &SeriesControl,
) -> Result<LoopPhase> {
    loop_phase_with(g, path, z, ctl, LOOP_QUAD_TOL)
}

/// [`loop_phase`] with an explicit per-segment relative quadrature tolerance.
///
/// The result is not topological: a loop that does not enclose the flux can
/// still pick up a phase, because the effective potential has nonzero curl.
pub fn loop_phase_with(
    g: &PlateGeometry,
    path: &LoopPath,
    z: f64,
    ctl: &SeriesControl,
    quad_tol: f64,
) -> Result<LoopPhase> {
    if !path.is_closed() {
        return Err(Error::InvalidPath("loop phase needs a closed path".into()));
    }
    path_integral(g, path, z, ctl, quad_tol)
}

/// `(1/Phi) int a . dr` along any path (open or closed), in units of the free-space phase.
pub fn path_integral(
    g: &PlateGeometry,
    path: &LoopPath,
    z: f64,
    ctl: &SeriesControl,
    quad_tol: f64,
) -> Result<LoopPhase> {
    ctl.validate()?;
    g.z_fraction(z)?;
    if !(quad_tol > 0.0 && quad_tol < 1.0) {
        return Err(domain("quadrature tolerance must lie in (0, 1)"));
    }
    let d = g.d();
    let mut total = CompensatedSum::default();
    let mut quad_err = 0.0;
    let mut abs_sum = 0.0;
    let mut evaluations = 0;
    let mut max_terms = 0;
    let mut series_rel = 0.0f64;
    let mut all_converged = true;

    for (p, q) in path.segments() {
        let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
        // a_theta theta_hat . dr = a_theta (x dy - y dx) / rho; the cross term is constant on a segment
        let cross = p[0] * dy - p[1] * dx;
        if cross == 0.0 {
            continue;
        }
        let stats = std::cell::Cell::new((0usize, 0.0f64, true));
        let integrand = |s: f64| {
            let x = p[0] + s * dx;
            let y = p[1] + s * dy;
            let rho = x.hypot(y);
            let (a, out) = odd_k1_sum(g, rho, z, std::f64::consts::FRAC_2_PI, ctl);
            let (t, e, c) = stats.get();
            stats.set((
                t.max(out.terms_used),
                e.max(out.est_rel_error),
                c && out.converged,
            ));
            a / d * cross / rho
        };
        let res = quad::integrate(integrand, 0.0, 1.0, quad_tol, 1e-300)?;
        let (t, e, c) = stats.get();
        max_terms = max_terms.max(t);
        series_rel = series_rel.max(e);
        all_converged &= c && res.converged;
        evaluations += res.evaluations;
        quad_err += res.est_error;
        abs_sum += res.value.abs();
        total.add(res.value);
    }
    let f = total.value();
    let est_abs = quad_err + series_rel * abs_sum;
    let est_rel_error = if est_abs == 0.0 {
        0.0
    } else if f != 0.0 {
        est_abs / f.abs()
    } else {
        f64::INFINITY
    };
    Ok(LoopPhase {
        phase: PhaseResult {
            f,
            terms_used: max_terms,
            converged: all_converged,
            est_rel_error,
        },
        quad_est_error: quad_err,
        evaluations,
    })
}

/// Induced surface charge density at planar distance `s` from the charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedChargeSample {
    /// `sigma d^2 / e`, summed over both plates.
    pub sigma: f64,
    pub s: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub est_rel_error: f64,
}

/// `sigma d^2 / e = -2 sum_{n odd} n sin(k_n z) K0(k_n s)`.
pub fn induced_charge_density(
    g: &PlateGeometry,
    s: f64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<InducedChargeSample> {
    ctl.validate()?;
    check_radius(s, "planar distance s")?;
    let zf = g.z_fraction(z)?;
    if g.on_plate(z) {
        return Ok(InducedChargeSample {
            sigma: 0.0,
            s,
            terms_used: 0,
            converged: true,
            est_rel_error: 0.0,
        });
    }
    let x1 = g.k(1) * s;
    let scale = 2.0 * (-x1).exp();
    let ratio = (-2.0 * x1).exp();
    let out = sum_modes(
        ctl,
        2,
        scale,
        |n| {
            let nf = n as f64;
            let envelope = nf * k01_scaled(nf * x1).0 * (-(nf - 1.0) * x1).exp();
            (sin_pi(nf * zf) * envelope, envelope)
        },
        |n, envelope| {
            envelope * (geometric_tail(ratio) + 2.0 / n as f64 * weighted_geometric_tail(ratio))
        },
    );
    Ok(InducedChargeSample {
        sigma: -scale * out.sum,
        s,
        terms_used: out.terms_used,
        converged: out.converged,
        est_rel_error: out.est_rel_error,
    })
}

/// Net induced charge enclosed by the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCharge {
    /// `e* / e`.
    pub e_star: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// Relative to `|e*|`.
    pub est_rel_error: f64,
}

impl EffectiveCharge {
    fn from_screening(unscreened: f64, out: SeriesOutcome) -> Self {
        let e_star = unscreened - 1.0;
        let abs_err = out.est_rel_error * unscreened.abs();
        Self {
            e_star,
            terms_used: out.terms_used,
            converged: out.converged,
            est_rel_error: if abs_err == 0.0 {
                0.0
            } else {
                abs_err / e_star.abs()
            },
        }
    }
}

/// Closed form `e*/e = -1 + (4R/d) sum_{n odd} sin(k_n z) K1(k_n R)`.
pub fn effective_charge(
    g: &PlateGeometry,
    r: f64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<EffectiveCharge> {
    ctl.validate()?;
    check_radius(r, "orbit radius")?;
    check_interior(g, z)?;
    let (f, out) = odd_k1_sum(g, r, z, 4.0 * r / g.d(), ctl);
    Ok(EffectiveCharge::from_screening(f, out))
}

/// `e*/e = 2 pi int_0^R s sigma(s) ds` evaluated mode by mode with quadrature.
///
/// Each mode contributes `-(4/(n pi)) sin(k_n z) int_0^{k_n R} x K0(x) dx`.
/// Writing the integral as `1 - int_{k_n R}^inf x K0(x) dx`, the constant
/// parts sum to exactly `-1` for `0 < z < d`, and the remaining tails, found
/// by semi-infinite quadrature of `x K0(x)`, decay exponentially in `n`.
pub fn enclosed_induced_charge(
    g: &PlateGeometry,
    r: f64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<EffectiveCharge> {
    let (unscreened, out) = unscreened_fraction_by_quadrature(g, r, z, ctl)?;
    Ok(EffectiveCharge::from_screening(unscreened, out))
}

/// `1 + e*/e` via the induced-charge quadrature route.
fn unscreened_fraction_by_quadrature(
    g: &PlateGeometry,
    r: f64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<(f64, SeriesOutcome)> {
    ctl.validate()?;
    check_radius(r, "orbit radius")?;
    let zf = check_interior(g, z)?;
    let x1 = g.k(1) * r;
    let step = 2.0 * x1;
    let ratio = (-step).exp();
    let quad_tol = (0.1 * ctl.rel_tol).max(1e-14);
    let mut failure: Option<Error> = None;
    let out = sum_modes(
        ctl,
        2,
        1.0,
        |n| {
            let nf = n as f64;
            let x = nf * x1;
            let tail = match outer_moment_k0(x, quad_tol) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            };
            let envelope = 4.0 / (nf * PI) * tail;
            (sin_pi(nf * zf) * envelope, envelope)
        },
        // e^X times the outer moment grows by at most a factor 1 + D/X over a step D
        |n, envelope| {
            let x = n as f64 * x1;
            envelope * (geometric_tail(ratio) + step / x * weighted_geometric_tail(ratio))
        },
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((out.sum, out))
}

/// `int_X^inf x K0(x) dx` by quadrature.
fn outer_moment_k0(x: f64, rel_tol: f64) -> Result<f64> {
    let res = quad::integrate_semi_infinite(
        |t: f64| {
            if t > 0.0 {
                t * bessel_k0(t).map(|k| k.value).unwrap_or(0.0)
            } else {
                0.0
            }
        },
        x,
        rel_tol,
    )?;
    if !res.converged {
        return Err(Error::QuadratureNotConverged {
            est_error: res.est_error,
            evaluations: res.evaluations,
        });
    }
    Ok(res.value)
}

/// Comparison of the mode-exchange phase with the induced-charge phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub qed: PhaseResult,
    /// `e*/e` from the closed form.
    pub e_star_closed: EffectiveCharge,
    /// `e*/e` from quadrature of the induced charge density.
    pub e_star_induced: EffectiveCharge,
    /// `|f - (1 + e*/e)|` with `e*` from the induced-charge route.
    pub discrepancy: f64,
    pub converged: bool,
}

pub fn equivalence_check(
    g: &PlateGeometry,
    r: f64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<EquivalenceReport> {
    let qed = circular_phase(g, r, z, ctl)?;
    let e_star_closed = effective_charge(g, r, z, ctl)?;
    let (unscreened, out) = unscreened_fraction_by_quadrature(g, r, z, ctl)?;
    let e_star_induced = EffectiveCharge::from_screening(unscreened, out);
    Ok(EquivalenceReport {
        qed,
        e_star_closed,
        e_star_induced,
        discrepancy: (qed.f - unscreened).abs(),
        converged: qed.converged && e_star_closed.converged && e_star_induced.converged,
    })
}
