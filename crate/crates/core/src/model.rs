//! Geometry, evaluation points, series control and loop paths.
//!
//! Every public result is dimensionless. Phases are in units of the free-space
//! value `e Phi / (hbar c)`, charges in units of `e`, interaction energies in
//! units of `e1 e2 / d`. Lengths may be given in any unit; only the ratios
//! `rho/d`, `z/d`, `R/d` enter the formulas.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Two ideal conducting plates at `z = 0` and `z = d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateGeometry {
    d: f64,
}

impl PlateGeometry {
    pub fn new(d: f64) -> Result<Self> {
        if !d.is_finite() || d <= 0.0 {
            return Err(domain(format!(
                "plate separation must be finite and > 0, got {d}"
            )));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Vertical wavenumber `k_n = n pi / d`, which is also the mass gap of mode `n`.
    pub fn k(&self, n: u64) -> f64 {
        n as f64 * PI / self.d
    }

    /// Checks `0 <= z <= d` and returns `z / d`.
    pub fn z_fraction(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(domain(format!("non-finite height z = {z}")));
        }
        if !(0.0..=self.d).contains(&z) {
            return Err(Error::OutsidePlates { z, d: self.d });
        }
        Ok(z / self.d)
    }

    /// True when `z` is on one of the plates, where every `sin(k_n z)` vanishes.
    pub fn on_plate(&self, z: f64) -> bool {
        z == 0.0 || z == self.d
    }
}

impl Default for PlateGeometry {
    fn default() -> Self {
        Self { d: 1.0 }
    }
}

/// Cylindrical position of the test charge relative to the flux axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    pub rho: f64,
    pub z: f64,
}

impl EvalPoint {
    pub fn new(rho: f64, z: f64) -> Self {
        Self { rho, z }
    }
}

/// An [`EvalPoint`] that passed [`validate_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckedPoint {
    pub point: EvalPoint,
    /// `rho = 0`: the K1-based formulas are singular here.
    pub on_axis: bool,
}

/// Accepts `rho >= 0` and `0 <= z <= d`, both finite.
pub fn validate_point(g: &PlateGeometry, p: EvalPoint) -> Result<CheckedPoint> {
    if !p.rho.is_finite() || p.rho < 0.0 {
        return Err(domain(format!(
            "rho must be finite and >= 0, got {}",
            p.rho
        )));
    }
    g.z_fraction(p.z)?;
    Ok(CheckedPoint {
        point: p,
        on_axis: p.rho == 0.0,
    })
}

/// Truncation policy shared by all mode sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_terms: usize,
    /// Number of successive small terms required before a sum may stop.
    pub consecutive_small: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_floor: 1e-300,
            max_terms: 200_000,
            consecutive_small: 3,
        }
    }
}

impl SeriesControl {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(domain(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_floor >= 0.0) || !self.abs_floor.is_finite() {
            return Err(domain("abs_floor must be finite and >= 0"));
        }
        if self.max_terms == 0 || self.consecutive_small == 0 {
            return Err(domain("max_terms and consecutive_small must be >= 1"));
        }
        Ok(())
    }
}

/// A polyline in a plane of constant `z`.
///
/// Closed paths join the last vertex back to the first; the first vertex is
/// not repeated at the end.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopPath {
    vertices: Vec<[f64; 2]>,
    closed: bool,
}

impl LoopPath {
    /// A closed loop through `vertices`.
    pub fn closed(vertices: Vec<[f64; 2]>) -> Result<Self> {
        Self::build(vertices, true)
    }

    /// An open polyline; only valid for line integrals, not loop phases.
    pub fn open(vertices: Vec<[f64; 2]>) -> Result<Self> {
        Self::build(vertices, false)
    }

    fn build(vertices: Vec<[f64; 2]>, closed: bool) -> Result<Self> {
        let min = if closed { 3 } else { 2 };
        if vertices.len() < min {
            return Err(Error::InvalidPath(format!(
                "need at least {min} vertices, got {}",
                vertices.len()
            )));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !v[0].is_finite() || !v[1].is_finite() {
                return Err(Error::InvalidPath(format!("vertex {i} is not finite")));
            }
            if v[0] == 0.0 && v[1] == 0.0 {
                return Err(Error::InvalidPath(format!(
                    "vertex {i} lies on the flux axis"
                )));
            }
        }
        let path = Self { vertices, closed };
        for (i, (p, q)) in path.segments().enumerate() {
            if p == q {
                return Err(Error::InvalidPath(format!(
                    "segment {i} is degenerate (repeated vertex)"
                )));
            }
            if segment_hits_origin(p, q) {
                return Err(Error::InvalidPath(format!(
                    "segment {i} crosses the flux axis"
                )));
            }
        }
        Ok(path)
    }

    /// Regular `n`-gon with vertices on the circle of radius `radius`,
    /// counter-clockwise from angle `phase`.
    pub fn regular_polygon(n: usize, radius: f64, phase: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(domain("polygon radius must be finite and > 0"));
        }
        let vertices = (0..n)
            .map(|j| {
                let t = phase + 2.0 * PI * j as f64 / n as f64;
                [radius * t.cos(), radius * t.sin()]
            })
            .collect();
        Self::closed(vertices)
    }

    /// Regular `n`-gon enclosing the same area as the circle of radius
    /// `radius`. Its vertices sit slightly outside the circle and its edge
    /// midpoints slightly inside, so for a smooth field its circulation
    /// differs from the circle's at second order in the radial deviation.
    pub fn area_matched_polygon(n: usize, radius: f64, phase: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidPath(format!(
                "need at least 3 vertices, got {n}"
            )));
        }
        let t = 2.0 * PI / n as f64;
        let scale = (t / t.sin()).sqrt();
        Self::regular_polygon(n, radius * scale, phase)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// The same path traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            closed: self.closed,
        }
    }

    /// The closed path traversed `times` times.
    pub fn repeated(&self, times: usize) -> Result<Self> {
        if times == 0 {
            return Err(Error::InvalidPath("repeat count must be >= 1".into()));
        }
        let vertices = self
            .vertices
            .iter()
            .copied()
            .cycle()
            .take(self.vertices.len() * times)
            .collect();
        Self::build(vertices, self.closed)
    }

    /// Consecutive vertex pairs, including the closing segment when closed.
    pub fn segments(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

fn segment_hits_origin(p: [f64; 2], q: [f64; 2]) -> bool {
    let cross = p[0] * q[1] - p[1] * q[0];
    if cross != 0.0 {
        return false;
    }
    // collinear with the origin: crosses it iff p and q lie on opposite sides
    p[0] * q[0] + p[1] * q[1] <= 0.0
}

/// Dimensionless phase `f = phi_AB / phi0_AB` with convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    pub f: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub est_rel_error: f64,
}
