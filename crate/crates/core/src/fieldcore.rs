//! Radiation modes between the plates and the effective vector potential.
//!
//! Between ideal plates the field is expanded in modes
//! `sqrt(2/V) exp(i kappa.rho) sin(k_n z)` (planar polarizations) and
//! `sqrt(2/V) exp(i kappa.rho) cos(k_n z)` (normal polarization), with
//! `omega = c sqrt(kappa^2 + k_n^2)`. Each mode with `n >= 1` behaves as a
//! two-dimensional massive photon of mass gap `k_n`. Exchange of these modes
//! between the charge and the flux line produces an azimuthal effective
//! potential
//!
//! ```text
//! a_theta d / Phi = (2/pi) sum_{n odd} sin(k_n z) K1(k_n rho)
//! ```

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::model::{validate_point, EvalPoint, PlateGeometry, SeriesControl};
use crate::series::{geometric_tail, sin_pi, sum_modes, SeriesOutcome};
use crate::specfun::k01_scaled;

/// Polarization index of a cavity mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    /// lambda = 1, in-plane, `sin(k_n z)` profile.
    Planar1,
    /// lambda = 2, in-plane, `sin(k_n z)` profile.
    Planar2,
    /// lambda = 3, normal to the plates, `cos(k_n z)` profile.
    Normal,
}

impl Polarization {
    pub fn from_index(lambda: u8) -> Result<Self> {
        match lambda {
            1 => Ok(Self::Planar1),
            2 => Ok(Self::Planar2),
            3 => Ok(Self::Normal),
            _ => Err(domain(format!(
                "polarization index must be 1, 2 or 3, got {lambda}"
            ))),
        }
    }
}

/// One mode: planar wavevector (magnitude and direction), vertical index, polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    pub kappa: f64,
    pub kappa_angle: f64,
    pub n: u64,
    pub polarization: Polarization,
}

/// Complex mode amplitude `u(x)` in a box of planar area `box_area` and height `d`.
///
/// Only `n >= 1` is accepted: with the common `sqrt(2/V)` prefactor the
/// `n = 0` normal mode would not be unit-normalized.
pub fn mode_function(
    g: &PlateGeometry,
    m: &ModeSpec,
    x: [f64; 3],
    box_area: f64,
) -> Result<Complex64> {
    if m.n == 0 {
        return Err(domain("mode index n must be >= 1"));
    }
    if !(m.kappa >= 0.0) || !m.kappa.is_finite() || !m.kappa_angle.is_finite() {
        return Err(domain("kappa must be finite and >= 0"));
    }
    if !(box_area > 0.0) || !box_area.is_finite() {
        return Err(domain("box area must be finite and > 0"));
    }
    if !x[0].is_finite() || !x[1].is_finite() {
        return Err(domain("planar position must be finite"));
    }
    let zf = g.z_fraction(x[2])?;
    let volume = box_area * g.d();
    let t = zf * m.n as f64;
    let profile = match m.polarization {
        Polarization::Planar1 | Polarization::Planar2 => sin_pi(t),
        Polarization::Normal => sin_pi(t + 0.5),
    };
    let phase = m.kappa * (x[0] * m.kappa_angle.cos() + x[1] * m.kappa_angle.sin());
    Ok(Complex64::from_polar(
        (2.0 / volume).sqrt() * profile,
        phase,
    ))
}

/// Mode frequency `omega / c = sqrt(kappa^2 + k_n^2)`, in inverse length units.
/// At `kappa = 0` this is the cutoff `k_n`.
pub fn dispersion(g: &PlateGeometry, kappa: f64, n: u64) -> f64 {
    kappa.hypot(g.k(n))
}

/// Effective potential at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    /// `a_theta d / Phi`.
    pub a_theta: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub est_rel_error: f64,
}

/// `a_theta d / Phi` at `p`.
pub fn effective_vector_potential(
    g: &PlateGeometry,
    p: EvalPoint,
    ctl: &SeriesControl,
) -> Result<FieldSample> {
    ctl.validate()?;
    let checked = validate_point(g, p)?;
    if checked.on_axis {
        return Err(Error::OnAxis);
    }
    let (value, out) = odd_k1_sum(g, p.rho, p.z, std::f64::consts::FRAC_2_PI, ctl);
    Ok(FieldSample {
        a_theta: value,
        terms_used: out.terms_used,
        converged: out.converged,
        est_rel_error: out.est_rel_error,
    })
}

/// `prefactor * sum_{n odd} sin(k_n z) K1(k_n rho)` for validated `rho > 0`, `0 <= z <= d`.
pub(crate) fn odd_k1_sum(
    g: &PlateGeometry,
    rho: f64,
    z: f64,
    prefactor: f64,
    ctl: &SeriesControl,
) -> (f64, SeriesOutcome) {
    if g.on_plate(z) {
        return (
            0.0,
            SeriesOutcome {
                sum: 0.0,
                terms_used: 0,
                converged: true,
                est_rel_error: 0.0,
            },
        );
    }
    let zf = z / g.d();
    let x1 = g.k(1) * rho;
    let scale = prefactor * (-x1).exp();
    let ratio = (-2.0 * x1).exp();
    let out = sum_modes(
        ctl,
        2,
        scale.abs(),
        |n| {
            let nf = n as f64;
            let envelope = k01_scaled(nf * x1).1 * (-(nf - 1.0) * x1).exp();
            (sin_pi(nf * zf) * envelope, envelope)
        },
        |_, envelope| envelope * geometric_tail(ratio),
    );
    (scale * out.sum, out)
}
