//! Run configuration shared by all subcommands.

use std::path::PathBuf;

use abplates::{PlateGeometry, SeriesControl};

use crate::error::{config, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A one-dimensional grid, in the same length unit as `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log_spacing: bool,
}

impl Sweep {
    /// Checks ordering and sign. `allow_zero` admits `min = 0` for linear grids.
    pub fn validate(&self, name: &str, allow_zero: bool) -> Result<(), CliError> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(config(format!("{name} range must be finite")));
        }
        let lower_ok = if allow_zero && !self.log_spacing {
            self.min >= 0.0
        } else {
            self.min > 0.0
        };
        if !lower_ok {
            return Err(config(format!(
                "{name} minimum must be > 0, got {}",
                self.min
            )));
        }
        if self.max < self.min {
            return Err(config(format!(
                "{name} range is reversed: min {} > max {}",
                self.min, self.max
            )));
        }
        if self.points == 0 {
            return Err(config("--points must be >= 1"));
        }
        Ok(())
    }

    /// Grid values; the end points are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        if n == 1 {
            return vec![self.min];
        }
        let span = (n - 1) as f64;
        let mut v: Vec<f64> = if self.log_spacing {
            let (a, b) = (self.min.ln(), self.max.ln());
            (0..n)
                .map(|i| (a + (b - a) * i as f64 / span).exp())
                .collect()
        } else {
            (0..n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / span)
                .collect()
        };
        v[0] = self.min;
        v[n - 1] = self.max;
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    PhaseCurve {
        sweep: Sweep,
        z: f64,
    },
    Field {
        rho: Sweep,
        z: Sweep,
        skip_axis: bool,
    },
    Induced {
        sweep: Sweep,
        z: f64,
    },
    Coulomb {
        sweep: Sweep,
        z1: f64,
        z2: f64,
        images: usize,
    },
    Loop {
        path: PathBuf,
        z: f64,
    },
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::PhaseCurve { .. } => "phase-curve",
            Job::Field { .. } => "field",
            Job::Induced { .. } => "induced",
            Job::Coulomb { .. } => "coulomb",
            Job::Loop { .. } => "loop",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub d: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub allow_partial: bool,
    pub job: Job,
}

impl RunConfig {
    pub fn new(job: Job) -> Self {
        let ctl = SeriesControl::default();
        Self {
            d: 1.0,
            rel_tol: ctl.rel_tol,
            max_terms: ctl.max_terms,
            format: Format::Csv,
            output: None,
            allow_partial: false,
            job,
        }
    }

    pub fn geometry(&self) -> Result<PlateGeometry, CliError> {
        Ok(PlateGeometry::new(self.d)?)
    }

    pub fn series(&self) -> Result<SeriesControl, CliError> {
        let ctl = SeriesControl {
            rel_tol: self.rel_tol,
            max_terms: self.max_terms,
            ..SeriesControl::default()
        };
        ctl.validate()?;
        Ok(ctl)
    }
}
