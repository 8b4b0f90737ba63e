use abplates::{image_sum_oracle, screened_coulomb, ChargePair, PlateGeometry, SeriesControl};
use proptest::prelude::*;
use std::f64::consts::{LN_2, PI};

fn unit() -> PlateGeometry {
    PlateGeometry::new(1.0).unwrap()
}

fn h2(z1: f64, z2: f64, rho: f64) -> f64 {
    let e = screened_coulomb(
        &unit(),
        ChargePair::new(z1, z2, rho),
        &SeriesControl::with_rel_tol(1e-12),
    )
    .unwrap();
    assert!(e.converged);
    e.h2
}

#[test]
fn mode_sum_matches_images_on_grid() {
    let heights = [0.25, 0.5, 0.75];
    let mut worst = 0.0f64;
    for i in 0..10 {
        let rho = 0.1 + 4.9 * i as f64 / 9.0;
        for z1 in heights {
            for z2 in heights {
                let series = h2(z1, z2, rho);
                let oracle = image_sum_oracle(&unit(), ChargePair::new(z1, z2, rho), 2000)
                    .unwrap()
                    .value;
                worst = worst.max(((series - oracle) / oracle).abs());
            }
        }
    }
    assert!(worst <= 1e-8, "{worst}");
}

#[test]
fn example_point_against_images() {
    let pair = ChargePair::new(0.5, 0.5, 0.3);
    let oracle = image_sum_oracle(&unit(), pair, 50).unwrap().value;
    assert!(((h2(0.5, 0.5, 0.3) - oracle) / oracle).abs() < 1e-8);
}

#[test]
fn short_distance_is_bare_coulomb_plus_images() {
    // the mirror charges at the two plates contribute -2 ln 2 as rho -> 0
    let v = h2(0.5, 0.5, 0.01);
    assert!((v - (100.0 - 2.0 * LN_2)).abs() < 1e-3, "{v}");
}

#[test]
fn large_distance_decay() {
    let (rho, delta) = (3.0, 0.5);
    let ratio = h2(0.5, 0.5, rho + delta) / h2(0.5, 0.5, rho);
    let expected = (-PI * delta).exp() * (rho / (rho + delta)).sqrt();
    assert!((ratio / expected - 1.0).abs() < 0.05);
}

#[test]
fn oracle_stable_with_few_images() {
    let pair = ChargePair::new(0.5, 0.5, 1.0);
    let at_50 = image_sum_oracle(&unit(), pair, 50).unwrap().value;
    let at_5000 = image_sum_oracle(&unit(), pair, 5000).unwrap().value;
    assert!((at_50 - at_5000).abs() < 1e-10);
}

#[test]
fn oracle_midplane_symmetry() {
    for (z1, z2, rho) in [(0.2, 0.7, 0.4), (0.1, 0.1, 1.5), (0.9, 0.35, 0.0)] {
        let a = image_sum_oracle(&unit(), ChargePair::new(z1, z2, rho), 100)
            .unwrap()
            .value;
        let b = image_sum_oracle(&unit(), ChargePair::new(1.0 - z1, 1.0 - z2, rho), 100)
            .unwrap()
            .value;
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
    }
}

#[test]
fn boundary_vanishing() {
    assert_eq!(h2(0.0, 0.5, 1.0), 0.0);
    assert_eq!(h2(1.0, 0.5, 1.0), 0.0);
    let near = h2(1e-6, 0.5, 1.0);
    assert!(near.abs() < 1e-5 * h2(0.5, 0.5, 1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exchange_and_mirror_symmetry(z1 in 0.01f64..0.99, z2 in 0.01f64..0.99, rho in 0.05f64..6.0) {
        let v = h2(z1, z2, rho);
        let swapped = h2(z2, z1, rho);
        let mirrored = h2(1.0 - z1, 1.0 - z2, rho);
        prop_assert!((v - swapped).abs() <= 1e-12 * v.abs().max(1e-300));
        prop_assert!((v - mirrored).abs() <= 1e-9 * v.abs().max(1e-300));
    }

    #[test]
    fn like_charges_repel_at_equal_height(z in 0.01f64..0.99, rho in 0.05f64..8.0) {
        prop_assert!(h2(z, z, rho) > 0.0);
    }
}
