// `J0, J1, Y0, Y1` with their error estimates, and the Wronskian
// `J1 Y0 - J0 Y1 = 2 / (pi x)` as a consistency check.

use std::f64::consts::FRAC_2_PI;

use driftless_pk::error::Result;
use driftless_pk::specfun::{
    bessel_j, bessel_set, bessel_y, small_arg_limit, BesselKind, BesselOrder,
};

pub fn run() -> Result<()> {
    println!("{:>6} {:>20} {:>20} {:>10}", "x", "J0", "Y0", "est. err");
    for x in [0.05, 0.5, 2.404825557695773, 10.0, 14.99, 15.01, 30.0, 50.0] {
        let j = bessel_j(BesselOrder::Zero, x)?;
        let y = bessel_y(BesselOrder::Zero, x)?;
        println!(
            "{x:6.2} {:20.15} {:20.15} {:10.1e}",
            j.value,
            y.value,
            j.est_abs_error.max(y.est_abs_error)
        );
    }

    let mut worst = 0.0f64;
    for i in 1..=100 {
        let x = 0.5 * i as f64;
        let b = bessel_set(x)?;
        worst = worst.max((b.j1 * b.y0 - b.j0 * b.y1 - FRAC_2_PI / x).abs());
    }
    println!("Wronskian error on (0, 50]: {worst:.1e}");

    let x = 1e-3;
    println!(
        "Y1({x}) = {:.10}, leading term -2/(pi x) = {:.10}",
        bessel_y(BesselOrder::One, x)?.value,
        small_arg_limit(BesselKind::Y, 1, x)?
    );
    // outside the supported range the functions refuse rather than guess
    println!("Y0(0) -> {}", bessel_y(BesselOrder::Zero, 0.0).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
