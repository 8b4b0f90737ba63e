#![allow(clippy::excessive_precision)]

use abplates::quad::integrate;
use abplates::{
    effective_vector_potential, mode_function, EvalPoint, ModeSpec, PlateGeometry, Polarization,
    SeriesControl,
};
use std::f64::consts::PI;

fn a_theta(g: &PlateGeometry, rho: f64, z: f64, ctl: &SeriesControl) -> f64 {
    let s = effective_vector_potential(g, EvalPoint::new(rho, z), ctl).unwrap();
    assert!(s.converged);
    s.a_theta
}

#[test]
fn golden_value_mid_plane() {
    // 30-digit term-by-term summation: (2/pi) sum_{odd} sin(n pi/2) K1(n pi/2)
    let expected = 0.156_195_807_101_681_488_684_5;
    let g = PlateGeometry::new(1.0).unwrap();
    let ctl = SeriesControl::with_rel_tol(1e-13);
    let v = a_theta(&g, 0.5, 0.5, &ctl);
    assert!(((v - expected) / expected).abs() < 1e-13, "{v}");
}

#[test]
fn independent_of_length_unit() {
    let ctl = SeriesControl::default();
    let base = a_theta(&PlateGeometry::new(1.0).unwrap(), 0.8, 0.3, &ctl);
    let scaled = a_theta(
        &PlateGeometry::new(7.5).unwrap(),
        0.8 * 7.5,
        0.3 * 7.5,
        &ctl,
    );
    assert!(((base - scaled) / base).abs() < 1e-13);
}

#[test]
fn mid_plane_symmetry() {
    let g = PlateGeometry::new(1.0).unwrap();
    let ctl = SeriesControl::with_rel_tol(1e-13);
    for rho in [0.1, 0.5, 1.0, 2.0] {
        for z in [0.05, 0.2, 0.37, 0.45] {
            let lo = a_theta(&g, rho, z, &ctl);
            let hi = a_theta(&g, rho, 1.0 - z, &ctl);
            assert!(((lo - hi) / lo).abs() < 1e-12, "rho={rho} z={z}");
        }
    }
}

#[test]
fn free_space_recovery() {
    let g = PlateGeometry::new(1.0).unwrap();
    let ctl = SeriesControl::default();
    let rho = 0.01;
    let circulation = 2.0 * PI * rho * a_theta(&g, rho, 0.5, &ctl);
    assert!((circulation - 1.0).abs() < 1e-3, "{circulation}");
}

#[test]
fn exponential_tail() {
    // K1(x) ~ sqrt(pi/2x) e^{-x}: the step ratio is e^{-pi delta/d} sqrt(rho/(rho+delta))
    let g = PlateGeometry::new(1.0).unwrap();
    let ctl = SeriesControl::default();
    let delta = 0.5;
    for rho in [2.0, 3.0, 5.0] {
        let ratio = a_theta(&g, rho + delta, 0.5, &ctl) / a_theta(&g, rho, 0.5, &ctl);
        let expected = (-PI * delta).exp() * (rho / (rho + delta)).sqrt();
        assert!(
            (ratio / expected - 1.0).abs() < 0.05,
            "rho={rho}: {ratio} vs {expected}"
        );
    }
}

#[test]
fn mode_normalization_by_quadrature() {
    // int_box |u|^2 = 1 for n = 1, lambda = 1; |exp(i kappa.rho)| = 1 so the planar
    // integral contributes the box area
    let d = 1.3;
    let g = PlateGeometry::new(d).unwrap();
    let area = 2.0;
    let m = ModeSpec {
        kappa: 2.0,
        kappa_angle: 0.7,
        n: 1,
        polarization: Polarization::Planar1,
    };
    let planar =
        |x: f64, y: f64, z: f64| mode_function(&g, &m, [x, y, z], area).unwrap().norm_sqr();
    let col = integrate(|z| planar(0.3, -0.4, z), 0.0, d, 1e-13, 0.0).unwrap();
    assert!((col.value * area - 1.0).abs() < 1e-10);
    // phase factor really is unimodular across the box
    for (x, y) in [(0.0, 0.0), (1.0, 0.2), (-0.7, 1.1)] {
        assert!((planar(x, y, 0.4 * d) - planar(0.0, 0.0, 0.4 * d)).abs() < 1e-15);
    }
}
