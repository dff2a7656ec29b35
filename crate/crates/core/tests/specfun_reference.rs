//! Bessel values against 40-digit reference values (see tests/data).

use std::f64::consts::{FRAC_2_PI, PI};

use driftless_pk::specfun::{bessel_j, bessel_y, BesselOrder};

#[path = "data/bessel_reference.rs"]
#[allow(clippy::excessive_precision)]
mod reference;

use reference::BESSEL_REFERENCE;

fn tol(v: f64) -> f64 {
    1e-12f64.max(1e-12 * v.abs())
}

#[test]
fn matches_reference_table() {
    let mut worst = 0.0f64;
    for &(x, j0, j1, y0, y1) in BESSEL_REFERENCE {
        let got = [
            bessel_j(BesselOrder::Zero, x).unwrap().value,
            bessel_j(BesselOrder::One, x).unwrap().value,
            bessel_y(BesselOrder::Zero, x).unwrap().value,
            bessel_y(BesselOrder::One, x).unwrap().value,
        ];
        for (g, want) in got.iter().zip([j0, j1, y0, y1]) {
            let err = (g - want).abs();
            worst = worst.max(err / tol(want));
            assert!(
                err <= tol(want),
                "x = {x}: got {g}, want {want}, err {err:e}"
            );
        }
    }
    eprintln!("worst error / tolerance = {worst:.3}");
}

#[test]
fn error_estimates_cover_actual_error() {
    for &(x, j0, _, y0, _) in BESSEL_REFERENCE {
        let r = bessel_j(BesselOrder::Zero, x).unwrap();
        assert!(
            (r.value - j0).abs() <= r.est_abs_error.max(2.0 * f64::EPSILON * j0.abs()) * 4.0,
            "J0 x = {x}"
        );
        let r = bessel_y(BesselOrder::Zero, x).unwrap();
        assert!(
            (r.value - y0).abs() <= r.est_abs_error.max(2.0 * f64::EPSILON * y0.abs()) * 4.0,
            "Y0 x = {x}"
        );
    }
}

#[test]
fn wronskian_pairing() {
    for i in 0..100 {
        let x = 0.05 + (50.0 - 0.05) * (i as f64 + 0.5) / 100.0;
        let j0 = bessel_j(BesselOrder::Zero, x).unwrap().value;
        let j1 = bessel_j(BesselOrder::One, x).unwrap().value;
        let y0 = bessel_y(BesselOrder::Zero, x).unwrap().value;
        let y1 = bessel_y(BesselOrder::One, x).unwrap().value;
        let w = j1 * y0 - j0 * y1;
        assert!(
            (w - FRAC_2_PI / x).abs() <= 1e-10,
            "x = {x}: {w} vs {}",
            2.0 / (PI * x)
        );
    }
}

fn fd1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn fd2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

#[test]
fn derivative_identities() {
    let j0 = |x| bessel_j(BesselOrder::Zero, x).unwrap().value;
    let j1 = |x| bessel_j(BesselOrder::One, x).unwrap().value;
    let y0 = |x| bessel_y(BesselOrder::Zero, x).unwrap().value;
    let y1 = |x| bessel_y(BesselOrder::One, x).unwrap().value;
    for i in 0..40 {
        let x = 0.3 + 1.2 * i as f64;
        assert!((fd1(j0, x, 1e-5) + j1(x)).abs() < 1e-6, "dJ0 at {x}");
        assert!((fd1(y0, x, 1e-5) + y1(x)).abs() < 1e-6, "dY0 at {x}");
    }
}

#[test]
fn order_zero_bessel_equation() {
    let j0 = |x| bessel_j(BesselOrder::Zero, x).unwrap().value;
    let y0 = |x| bessel_y(BesselOrder::Zero, x).unwrap().value;
    for f in [&j0 as &dyn Fn(f64) -> f64, &y0] {
        for i in 0..40 {
            let x = 0.5 + 1.2 * i as f64;
            let h = 1e-3;
            let res = x * x * fd2(f, x, h) + x * fd1(f, x, h) + x * x * f(x);
            let scale = x * x * (f(x).abs() + fd1(f, x, h).abs()).max(1e-3);
            assert!((res / scale).abs() <= 1e-6, "x = {x}: residual {res:e}");
        }
    }
}
