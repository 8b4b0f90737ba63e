//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use abplates::{
    bessel_k0, bessel_k1, bessel_k_oracle, circular_phase, effective_charge, equivalence_check,
    loop_phase, LoopPath, PlateGeometry, SeriesControl,
};
use common::{bundled_polygon, column, run};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn unit() -> PlateGeometry {
    PlateGeometry::new(1.0).unwrap()
}

fn c1_phase_curve() -> Verdict {
    let args = [
        "phase-curve",
        "--r-min",
        "0.05",
        "--r-max",
        "3",
        "--points",
        "200",
        "--log-spacing",
        "--tol",
        "1e-10",
    ];
    let t = Instant::now();
    let r = column(&args, "R/d");
    let secs = t.elapsed().as_secs_f64();
    let f = column(&args, "f");
    let monotone = f.windows(2).all(|w| w[1] < w[0]);
    let ratio_at = |r: &str| {
        let one = ["phase-curve", "--r-min", r, "--r-max", r, "--points", "1"];
        column(&one, "f")[0] / column(&one, "f_asymptote")[0]
    };
    let (ratio2, ratio5) = (ratio_at("2"), ratio_at("5"));
    let pass = monotone
        && f[0] >= 0.97
        && (0.9..=1.1).contains(&ratio2)
        && (0.97..=1.03).contains(&ratio5)
        && secs < 1.0;
    verdict(
        pass,
        format!(
            "monotone={monotone} f({})={:.6} f/asym at R=2: {ratio2:.4}, at R=5: {ratio5:.4}, {} points in {secs:.3} s",
            r[0],
            f[0],
            r.len()
        ),
    )
}

fn c2_free_space() -> Verdict {
    let a = column(
        &[
            "field", "--r-min", "0.01", "--r-max", "0.01", "--points", "1", "--z", "0.5",
        ],
        "a_theta",
    )[0];
    let circulation = 2.0 * PI * 0.01 * a;
    verdict(
        (circulation - 1.0).abs() <= 1e-3,
        format!("2 pi rho a_theta = {circulation:.8} at rho = 0.01 d"),
    )
}

fn c3_equivalence() -> Verdict {
    let ctl = SeriesControl::with_rel_tol(1e-12);
    let mut worst = 0.0f64;
    let mut all_converged = true;
    for i in 0..10 {
        let r = 0.1 + 3.9 * i as f64 / 9.0;
        for j in 0..10 {
            let z = 0.1 + 0.8 * j as f64 / 9.0;
            let rep = equivalence_check(&unit(), r, z, &ctl).unwrap();
            worst = worst.max(rep.discrepancy);
            all_converged &= rep.converged;
        }
    }
    verdict(
        worst <= 1e-10 && all_converged,
        format!("max |f - (1 + e*/e)| = {worst:.3e} over 100 points"),
    )
}

fn c4_screening() -> Verdict {
    let cum = column(
        &["induced", "--r-min", "8", "--r-max", "8", "--points", "1"],
        "cumulative",
    )[0];
    let far = effective_charge(&unit(), 10.0, 0.5, &SeriesControl::with_rel_tol(1e-12))
        .unwrap()
        .e_star;
    let pass = (cum + 1.0).abs() <= 1e-6 && (far + 1.0).abs() <= 1e-10;
    verdict(
        pass,
        format!(
            "cumulative(8 d) + 1 = {:.3e}, e*(10 d) + 1 = {:.3e}",
            cum + 1.0,
            far + 1.0
        ),
    )
}

fn c5_coulomb() -> Verdict {
    let mut worst = 0.0f64;
    for z1 in ["0.25", "0.5", "0.75"] {
        for z2 in ["0.25", "0.5", "0.75"] {
            let d = column(
                &[
                    "coulomb", "--z1", z1, "--z2", z2, "--r-min", "0.1", "--r-max", "5",
                    "--points", "10",
                ],
                "rel_diff",
            );
            worst = d.into_iter().fold(worst, f64::max);
        }
    }
    // least-squares slope of ln h2 against rho/d
    let args = ["coulomb", "--r-min", "3", "--r-max", "5", "--points", "21"];
    let x = column(&args, "rho/d");
    let y: Vec<f64> = column(&args, "h2").iter().map(|h| h.ln()).collect();
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let slope_err = (slope / -PI - 1.0).abs();
    let pass = worst <= 1e-8 && slope_err <= 0.03;
    verdict(
        pass,
        format!(
            "max rel diff vs images = {worst:.3e} (90 points); d ln h2/d(rho/d) over [3, 5] = {slope:.5} = {:.4} pi, off by {:.2}% (limit 3%)",
            slope / PI,
            100.0 * slope_err
        ),
    )
}

fn c6_special_functions() -> Verdict {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let x = (1e-3f64.ln() + (30.0f64 / 1e-3).ln() * i as f64 / 49.0).exp();
        let k0 = bessel_k0(x).unwrap().value;
        let k1 = bessel_k1(x).unwrap().value;
        worst = worst.max(((k0 - bessel_k_oracle(0, x, 1e-13).unwrap()) / k0).abs());
        worst = worst.max(((k1 - bessel_k_oracle(1, x, 1e-13).unwrap()) / k1).abs());
    }
    let h = 1e-5;
    let mut deriv = 0.0f64;
    for x in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        let g = |t: f64| t * bessel_k1(t).unwrap().value;
        let fd = (g(x + h) - g(x - h)) / (2.0 * h);
        let exact = -x * bessel_k0(x).unwrap().value;
        deriv = deriv.max(((fd - exact) / exact).abs());
    }
    verdict(
        worst <= 1e-10 && deriv <= 1e-6,
        format!(
            "max rel diff vs oracle = {worst:.3e}; derivative identity rel error = {deriv:.3e}"
        ),
    )
}

fn c7_loops() -> Verdict {
    let poly = bundled_polygon();
    let f = column(&["loop", poly.to_str().unwrap()], "f")[0];
    let ctl = SeriesControl::default();
    let circle = circular_phase(&unit(), 1.0, 0.5, &ctl).unwrap().f;
    let rel = ((f - circle) / circle).abs();
    let path = LoopPath::area_matched_polygon(256, 1.0, 0.0).unwrap();
    let fwd = loop_phase(&unit(), &path, 0.5, &ctl).unwrap().phase.f;
    let back = loop_phase(&unit(), &path.reversed(), 0.5, &ctl)
        .unwrap()
        .phase
        .f;
    let twice = loop_phase(&unit(), &path.repeated(2).unwrap(), 0.5, &ctl)
        .unwrap()
        .phase
        .f;
    let (rev, dbl) = ((fwd + back).abs(), (twice - 2.0 * fwd).abs());
    verdict(
        rel <= 1e-6 && rev <= 1e-14 && dbl <= 1e-10,
        format!("256-gon vs circle rel diff = {rel:.3e}; |f + f_rev| = {rev:.1e}; |f_2 - 2f| = {dbl:.1e}"),
    )
}

fn c8_determinism() -> Verdict {
    let poly = bundled_polygon();
    let poly = poly.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["phase-curve", "--log-spacing"],
        vec!["field", "--points", "20", "--z-points", "20"],
        vec!["induced", "--points", "30"],
        vec!["coulomb", "--z1", "0.3", "--z2", "0.6"],
        vec!["loop", poly],
    ];
    let mut differing = Vec::new();
    let mut runs = 0;
    for cmd in &commands {
        for format in ["csv", "json"] {
            let mut args = cmd.clone();
            args.extend(["--format", format]);
            let a = run(&args);
            let b = run(&args);
            runs += 1;
            if !a.status.success() || a.stdout != b.stdout || a.stdout.is_empty() {
                differing.push(format!("{} {format}", cmd[0]));
            }
        }
    }
    verdict(
        differing.is_empty(),
        format!("{runs} command/format pairs run twice; differing: {differing:?}"),
    )
}

fn main() {
    type Check = (&'static str, fn() -> Verdict);
    let criteria: [Check; 8] = [
        ("1 phase curve", c1_phase_curve),
        ("2 free-space limit", c2_free_space),
        ("3 mode-exchange vs induced-charge phase", c3_equivalence),
        ("4 total screening", c4_screening),
        ("5 screened Coulomb", c5_coulomb),
        ("6 special functions", c6_special_functions),
        ("7 loop phase", c7_loops),
        ("8 determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("acceptance {name}: {tag} ({})", v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
