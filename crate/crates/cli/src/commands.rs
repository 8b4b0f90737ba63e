//! One function per subcommand. Each returns a [`Table`] whose rows follow the
//! input grid order; rows are evaluated in parallel.

use abplates::{
    asymptotic_phase, circular_phase, effective_vector_potential, enclosed_induced_charge,
    image_sum_oracle, induced_charge_density, loop_phase, ChargePair, EvalPoint, LoopPath,
    PlateGeometry, SeriesControl,
};
use rayon::prelude::*;

use crate::config::{Job, RunConfig, Sweep};
use crate::error::{config, CliError};
use crate::output::{Cell, Table};
use crate::pathfile::read_path;

type Row = (Vec<Cell>, bool);

fn collect(rows: Vec<Result<Row, CliError>>) -> Result<(Vec<Vec<Cell>>, Vec<bool>), CliError> {
    let mut cells = Vec::with_capacity(rows.len());
    let mut flags = Vec::with_capacity(rows.len());
    for r in rows {
        let (c, ok) = r?;
        cells.push(c);
        flags.push(ok);
    }
    Ok((cells, flags))
}

fn check_height(g: &PlateGeometry, z: f64, name: &str) -> Result<(), CliError> {
    g.z_fraction(z)
        .map(|_| ())
        .map_err(|e| config(format!("{name}: {e}")))
}

fn sweep_params(s: &Sweep, d: f64) -> Vec<(&'static str, Cell)> {
    vec![
        ("min/d", Cell::Real(s.min / d)),
        ("max/d", Cell::Real(s.max / d)),
        ("points", Cell::Int(s.points as u64)),
        (
            "spacing",
            Cell::Text(if s.log_spacing { "log" } else { "linear" }.into()),
        ),
    ]
}

pub fn cmd_phase_curve(
    g: &PlateGeometry,
    ctl: &SeriesControl,
    sweep: &Sweep,
    z: f64,
) -> Result<Table, CliError> {
    sweep.validate("R", false)?;
    check_height(g, z, "--z")?;
    let d = g.d();
    let rows: Vec<_> = sweep
        .values()
        .par_iter()
        .map(|&r| {
            let p = circular_phase(g, r, z, ctl)?;
            let cells = vec![
                Cell::Real(r / d),
                Cell::Real(p.f),
                Cell::Real(asymptotic_phase(g, r, z)),
                Cell::Int(p.terms_used as u64),
                Cell::Flag(p.converged),
            ];
            Ok((cells, p.converged))
        })
        .collect();
    let (rows, converged) = collect(rows)?;
    let mut parameters = vec![("z/d", Cell::Real(z / d))];
    parameters.extend(sweep_params(sweep, d));
    Ok(Table {
        subcommand: "phase-curve",
        conventions: "R in units of d; f is the circular-orbit phase over the free-space AB phase e Phi/(hbar c); f_asymptote = sqrt(8R/d) sin(pi z/d) exp(-pi R/d)",
        parameters,
        columns: vec!["R/d", "f", "f_asymptote", "terms_used", "converged"],
        rows,
        converged,
    })
}

pub fn cmd_field(
    g: &PlateGeometry,
    ctl: &SeriesControl,
    rho: &Sweep,
    heights: &Sweep,
    skip_axis: bool,
) -> Result<Table, CliError> {
    rho.validate("rho", true)?;
    heights.validate("z", true)?;
    let d = g.d();
    let zs = heights.values();
    for &z in &zs {
        check_height(g, z, "z grid")?;
    }
    let mut points = Vec::new();
    for r in rho.values() {
        if r == 0.0 {
            if skip_axis {
                continue;
            }
            return Err(config(
                "rho = 0 lies on the flux axis; raise --r-min or pass --skip-axis",
            ));
        }
        points.extend(zs.iter().map(|&z| (r, z)));
    }
    let rows: Vec<_> = points
        .par_iter()
        .map(|&(r, z)| {
            let s = effective_vector_potential(g, EvalPoint::new(r, z), ctl)?;
            let cells = vec![
                Cell::Real(r / d),
                Cell::Real(z / d),
                Cell::Real(s.a_theta),
                Cell::Int(s.terms_used as u64),
                Cell::Flag(s.converged),
            ];
            Ok((cells, s.converged))
        })
        .collect();
    let (rows, converged) = collect(rows)?;
    let mut parameters = sweep_params(rho, d);
    parameters.extend([
        ("z_min/d", Cell::Real(heights.min / d)),
        ("z_max/d", Cell::Real(heights.max / d)),
        ("z_points", Cell::Int(heights.points as u64)),
    ]);
    Ok(Table {
        subcommand: "field",
        conventions: "rho and z in units of d; a_theta is the azimuthal effective vector potential in units of Phi/d",
        parameters,
        columns: vec!["rho/d", "z/d", "a_theta", "terms_used", "converged"],
        rows,
        converged,
    })
}

pub fn cmd_induced(
    g: &PlateGeometry,
    ctl: &SeriesControl,
    sweep: &Sweep,
    z: f64,
) -> Result<Table, CliError> {
    sweep.validate("s", false)?;
    check_height(g, z, "--z")?;
    if g.on_plate(z) {
        return Err(config("--z must lie strictly between the plates"));
    }
    let d = g.d();
    let rows: Vec<_> = sweep
        .values()
        .par_iter()
        .map(|&s| {
            let sigma = induced_charge_density(g, s, z, ctl)?;
            let inside = enclosed_induced_charge(g, s, z, ctl)?;
            let ok = sigma.converged && inside.converged;
            let cells = vec![
                Cell::Real(s / d),
                Cell::Real(sigma.sigma),
                Cell::Real(inside.e_star),
                Cell::Int(sigma.terms_used.max(inside.terms_used) as u64),
                Cell::Flag(ok),
            ];
            Ok((cells, ok))
        })
        .collect();
    let (rows, converged) = collect(rows)?;
    let mut parameters = vec![("z/d", Cell::Real(z / d))];
    parameters.extend(sweep_params(sweep, d));
    Ok(Table {
        subcommand: "induced",
        conventions: "s in units of d; sigma is the induced surface charge on both plates in units of e/d^2; cumulative = 2 pi int_0^s s' sigma ds' in units of e",
        parameters,
        columns: vec!["s/d", "sigma", "cumulative", "terms_used", "converged"],
        rows,
        converged,
    })
}

/// Symmetric relative difference; zero when both values vanish.
fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn cmd_coulomb(
    g: &PlateGeometry,
    ctl: &SeriesControl,
    sweep: &Sweep,
    z1: f64,
    z2: f64,
    images: usize,
) -> Result<Table, CliError> {
    sweep.validate("rho", false)?;
    check_height(g, z1, "--z1")?;
    check_height(g, z2, "--z2")?;
    if images == 0 {
        return Err(config("--images must be >= 1"));
    }
    let d = g.d();
    let rows: Vec<_> = sweep
        .values()
        .par_iter()
        .map(|&rho| {
            let pair = ChargePair::new(z1, z2, rho);
            let e = abplates::screened_coulomb(g, pair, ctl)?;
            let oracle = image_sum_oracle(g, pair, images)?.value;
            let cells = vec![
                Cell::Real(rho / d),
                Cell::Real(e.h2),
                Cell::Real(oracle),
                Cell::Real(rel_diff(e.h2, oracle)),
                Cell::Int(e.terms_used as u64),
                Cell::Flag(e.converged),
            ];
            Ok((cells, e.converged))
        })
        .collect();
    let (rows, converged) = collect(rows)?;
    let mut parameters = vec![
        ("z1/d", Cell::Real(z1 / d)),
        ("z2/d", Cell::Real(z2 / d)),
        ("images", Cell::Int(images as u64)),
    ];
    parameters.extend(sweep_params(sweep, d));
    Ok(Table {
        subcommand: "coulomb",
        conventions: "rho in units of d; h2 is the mode-sum interaction energy and h2_image_oracle the image-charge sum, both in units of e1 e2/d",
        parameters,
        columns: vec!["rho/d", "h2", "h2_image_oracle", "rel_diff", "terms_used", "converged"],
        rows,
        converged,
    })
}

pub fn cmd_loop(
    g: &PlateGeometry,
    ctl: &SeriesControl,
    path: &LoopPath,
    z: f64,
) -> Result<Table, CliError> {
    check_height(g, z, "--z")?;
    let d = g.d();
    let lp = loop_phase(g, path, z, ctl)?;
    let p = lp.phase;
    Ok(Table {
        subcommand: "loop",
        conventions: "vertex coordinates in the units of d; f is the loop circulation over the free-space AB phase e Phi/(hbar c)",
        parameters: vec![
            ("z/d", Cell::Real(z / d)),
            ("vertices", Cell::Int(path.vertices().len() as u64)),
        ],
        columns: vec![
            "f",
            "est_rel_error",
            "quad_est_error",
            "terms_used",
            "evaluations",
            "converged",
        ],
        rows: vec![vec![
            Cell::Real(p.f),
            Cell::Real(p.est_rel_error),
            Cell::Real(lp.quad_est_error),
            Cell::Int(p.terms_used as u64),
            Cell::Int(lp.evaluations as u64),
            Cell::Flag(p.converged),
        ]],
        converged: vec![p.converged],
    })
}

/// Runs the configured subcommand.
pub fn run(cfg: &RunConfig) -> Result<Table, CliError> {
    let g = cfg.geometry()?;
    let ctl = cfg.series()?;
    let mut table = match &cfg.job {
        Job::PhaseCurve { sweep, z } => cmd_phase_curve(&g, &ctl, sweep, *z)?,
        Job::Field { rho, z, skip_axis } => cmd_field(&g, &ctl, rho, z, *skip_axis)?,
        Job::Induced { sweep, z } => cmd_induced(&g, &ctl, sweep, *z)?,
        Job::Coulomb {
            sweep,
            z1,
            z2,
            images,
        } => cmd_coulomb(&g, &ctl, sweep, *z1, *z2, *images)?,
        Job::Loop { path, z } => cmd_loop(&g, &ctl, &read_path(path)?, *z)?,
    };
    let mut parameters = vec![
        ("d", Cell::Real(cfg.d)),
        ("tol", Cell::Real(cfg.rel_tol)),
        ("max_terms", Cell::Int(cfg.max_terms as u64)),
    ];
    parameters.append(&mut table.parameters);
    table.parameters = parameters;
    Ok(table)
}

/// Runs and renders, applying the partial-output policy: without
/// `allow_partial` any unconverged row turns the whole run into an error.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    let table = run(cfg)?;
    let bad = table.unconverged();
    if bad > 0 && !cfg.allow_partial {
        return Err(CliError::Partial {
            count: bad,
            total: table.rows.len(),
        });
    }
    Ok(table.render(cfg.format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PlateGeometry {
        PlateGeometry::new(1.0).unwrap()
    }

    fn sweep(min: f64, max: f64, points: usize) -> Sweep {
        Sweep {
            min,
            max,
            points,
            log_spacing: false,
        }
    }

    #[test]
    fn field_rows_on_plate_are_zero() {
        let t = cmd_field(
            &unit(),
            &SeriesControl::default(),
            &sweep(0.5, 1.0, 2),
            &sweep(0.0, 1.0, 3),
            false,
        )
        .unwrap();
        assert_eq!(t.rows.len(), 6);
        for row in &t.rows {
            let z = row[1].as_real().unwrap();
            if z == 0.0 || z == 1.0 {
                assert_eq!(row[2], Cell::Real(0.0));
            }
        }
    }

    #[test]
    fn field_axis_policy() {
        let ctl = SeriesControl::default();
        let rho = sweep(0.0, 1.0, 3);
        let z = sweep(0.5, 0.5, 1);
        assert!(matches!(
            cmd_field(&unit(), &ctl, &rho, &z, false),
            Err(CliError::Config(_))
        ));
        let t = cmd_field(&unit(), &ctl, &rho, &z, true).unwrap();
        assert_eq!(t.rows.len(), 2);
    }

    #[test]
    fn coulomb_rows_vanish_for_charge_on_plate() {
        let t = cmd_coulomb(
            &unit(),
            &SeriesControl::default(),
            &sweep(0.5, 2.0, 4),
            0.0,
            0.5,
            200,
        )
        .unwrap();
        for row in &t.rows {
            assert_eq!(row[1], Cell::Real(0.0));
            assert!(row[2].as_real().unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn induced_cumulative_matches_effective_charge() {
        let g = unit();
        let ctl = SeriesControl::default();
        let t = cmd_induced(&g, &ctl, &sweep(1.0, 1.0, 1), 0.5).unwrap();
        let e = abplates::effective_charge(&g, 1.0, 0.5, &ctl)
            .unwrap()
            .e_star;
        assert!((t.rows[0][2].as_real().unwrap() - e).abs() < 1e-9);
    }

    #[test]
    fn unconverged_rows_need_allow_partial() {
        let mut cfg = RunConfig::new(Job::PhaseCurve {
            sweep: sweep(0.01, 0.02, 2),
            z: 0.5,
        });
        cfg.max_terms = 5;
        let err = execute(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        cfg.allow_partial = true;
        assert!(execute(&cfg).unwrap().contains(",false"));
    }

    #[test]
    fn domain_errors_exit_two() {
        let cfg = RunConfig::new(Job::PhaseCurve {
            sweep: sweep(0.0, 0.0, 1),
            z: 0.5,
        });
        assert_eq!(execute(&cfg).unwrap_err().exit_code(), 2);
        let cfg = RunConfig::new(Job::Induced {
            sweep: sweep(1.0, 2.0, 2),
            z: 1.5,
        });
        assert_eq!(execute(&cfg).unwrap_err().exit_code(), 2);
        let mut cfg = RunConfig::new(Job::PhaseCurve {
            sweep: sweep(1.0, 2.0, 2),
            z: 0.5,
        });
        cfg.d = -1.0;
        assert_eq!(execute(&cfg).unwrap_err().exit_code(), 2);
    }
}
