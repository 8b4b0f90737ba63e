//! Interaction of two point charges between grounded plates.
//!
//! Exchange of the scalar modes gives
//!
//! ```text
//! H2 d / (e1 e2) = 4 sum_{n >= 1} sin(k_n z1) sin(k_n z2) K0(k_n rho)
//! ```
//!
//! which decays like `exp(-pi rho / d)` at large planar separation. Unlike the
//! flux-coupled sums, every `n` contributes. The same energy follows from the
//! classical image construction, which [`image_sum_oracle`] evaluates
//! independently.

use crate::error::{domain, Error, Result};
use crate::model::{PlateGeometry, SeriesControl};
use crate::series::{geometric_tail, sin_pi, sum_modes, CompensatedSum};
use crate::specfun::k01_scaled;

/// Heights of the two charges and their planar separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargePair {
    pub z1: f64,
    pub z2: f64,
    pub rho: f64,
}

impl ChargePair {
    pub fn new(z1: f64, z2: f64, rho: f64) -> Self {
        Self { z1, z2, rho }
    }

    /// The pair with the charges exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.z2, self.z1, self.rho)
    }

    fn validate(&self, g: &PlateGeometry) -> Result<()> {
        g.z_fraction(self.z1)?;
        g.z_fraction(self.z2)?;
        if !self.rho.is_finite() || self.rho < 0.0 {
            return Err(domain(format!(
                "rho must be finite and >= 0, got {}",
                self.rho
            )));
        }
        if self.rho == 0.0 && self.z1 == self.z2 {
            return Err(domain("coincident charges (self-energy is excluded)"));
        }
        Ok(())
    }
}

/// Interaction energy in units of `e1 e2 / d`; positive is repulsive for like charges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionEnergy {
    pub h2: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub est_rel_error: f64,
}

/// Mode-sum interaction energy. Requires `rho > 0`; the coaxial case is only
/// available through [`image_sum_oracle`] because the `K0` series diverges
/// term by term at `rho = 0`.
pub fn screened_coulomb(
    g: &PlateGeometry,
    pair: ChargePair,
    ctl: &SeriesControl,
) -> Result<InteractionEnergy> {
    ctl.validate()?;
    pair.validate(g)?;
    if pair.rho == 0.0 {
        return Err(Error::OnAxis);
    }
    if g.on_plate(pair.z1) || g.on_plate(pair.z2) {
        return Ok(InteractionEnergy {
            h2: 0.0,
            terms_used: 0,
            converged: true,
            est_rel_error: 0.0,
        });
    }
    let z1f = pair.z1 / g.d();
    let z2f = pair.z2 / g.d();
    let x1 = g.k(1) * pair.rho;
    let scale = 4.0 * (-x1).exp();
    let ratio = (-x1).exp();
    let out = sum_modes(
        ctl,
        1,
        scale,
        |n| {
            let nf = n as f64;
            let envelope = k01_scaled(nf * x1).0 * (-(nf - 1.0) * x1).exp();
            (sin_pi(nf * z1f) * sin_pi(nf * z2f) * envelope, envelope)
        },
        |_, envelope| envelope * geometric_tail(ratio),
    );
    Ok(InteractionEnergy {
        h2: scale * out.sum,
        terms_used: out.terms_used,
        converged: out.converged,
        est_rel_error: out.est_rel_error,
    })
}

/// Image-charge evaluation of the same energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageSum {
    /// `raw + tail_correction`, units of `e1 e2 / d`.
    pub value: f64,
    /// Plain sum over image orders `|m| <= n_images`.
    pub raw: f64,
    /// Euler-Maclaurin estimate of the orders `|m| > n_images` (zero when `n_images = 0`).
    pub tail_correction: f64,
    /// Magnitude of the last correction term kept; bounds the remaining error.
    pub est_truncation_error: f64,
}

/// Classical interaction from the image series.
///
/// The charge at `z2` has images `+e2` at `2md + z2` and `-e2` at `2md - z2`
/// for every integer `m`. The energy (in units of `e1 e2 / d`) is
///
/// ```text
/// sum_m d/sqrt(rho^2 + (z1 - 2md - z2)^2) - d/sqrt(rho^2 + (z1 - 2md + z2)^2)
/// ```
///
/// Orders `m` and `-m` are accumulated together. Each difference is formed
/// without cancellation as `(b^2 - a^2) / (a b (a + b))`. The remainder beyond
/// `|m| = n_images` is estimated with the midpoint Euler-Maclaurin formula,
/// using the exact antiderivative and the first two derivative corrections.
pub fn image_sum_oracle(g: &PlateGeometry, pair: ChargePair, n_images: usize) -> Result<ImageSum> {
    pair.validate(g)?;
    let d = g.d();
    let (z1, z2, rho) = (pair.z1 / d, pair.z2 / d, pair.rho / d);
    let rho2 = rho * rho;

    let order = |m: f64| {
        // 1/a - 1/b with a to the positive image, b to the negative image
        let a = (rho2 + (z1 - z2 - 2.0 * m).powi(2)).sqrt();
        let b = (rho2 + (z1 + z2 - 2.0 * m).powi(2)).sqrt();
        4.0 * z2 * (z1 - 2.0 * m) / (a * b * (a + b))
    };

    let mut acc = CompensatedSum::default();
    acc.add(order(0.0));
    for j in 1..=n_images {
        let j = j as f64;
        acc.add(order(j) + order(-j));
    }
    let raw = acc.value();

    if n_images == 0 {
        return Ok(ImageSum {
            value: raw,
            raw,
            tail_correction: 0.0,
            est_truncation_error: f64::INFINITY,
        });
    }

    let x = n_images as f64 + 0.5;
    let (c, e) = (z1 - z2, z1 + z2);
    let (tp, ep) = euler_maclaurin_tail(rho, c, e, x);
    let (tn, en) = euler_maclaurin_tail(rho, -c, -e, x);
    Ok(ImageSum {
        value: raw + (tp + tn),
        raw,
        tail_correction: tp + tn,
        est_truncation_error: ep + en,
    })
}

/// `sum_{j > X - 1/2} F(2j - c) - F(2j - e)` with `F(u) = (rho^2 + u^2)^{-1/2}`,
/// for `X >= 1.5` so both `2X - c` and `2X - e` are positive.
fn euler_maclaurin_tail(rho: f64, c: f64, e: f64, x: f64) -> (f64, f64) {
    let rho2 = rho * rho;
    let uc = 2.0 * x - c;
    let ue = 2.0 * x - e;
    let sc = (uc * uc + rho2).sqrt();
    let se = (ue * ue + rho2).sqrt();
    // int_X^inf = -(1/2) ln((uc + sc) / (ue + se)), formed without cancellation
    let du = e - c;
    let num = du + du * (uc + ue) / (sc + se);
    let integral = -0.5 * (num / (ue + se)).ln_1p();

    let d1 = |u: f64, s: f64| -u / (s * s * s);
    let d3 = |u: f64, s: f64| u * (9.0 * rho2 - 6.0 * u * u) / s.powi(7);
    let h1 = 2.0 * (d1(uc, sc) - d1(ue, se));
    let h3 = 8.0 * (d3(uc, sc) - d3(ue, se));
    let last = 7.0 / 5760.0 * h3;
    (integral + h1 / 24.0 - last, last.abs())
}
