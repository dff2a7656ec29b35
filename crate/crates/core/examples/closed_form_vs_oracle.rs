// Fit the Bessel closed form to an initial state and compare it with a
// direct numerical integration of the same closed loop.

use driftless_pk::closedform::{eval, to_z_frame, ClosedFormSolution};
use driftless_pk::driftless::StateVector;
use driftless_pk::error::Result;
use driftless_pk::nalgebra::Vector2;
use driftless_pk::simulate::{integrate, unicycle_system, GainConfig, IntegratorConfig};

pub fn run() -> Result<()> {
    let (x0, theta0, rho) = (Vector2::new(1.0, 0.0), 1.0, -1.0);
    let sol = ClosedFormSolution::fit(x0, theta0, rho)?;
    println!("C1 = {:.12}, C2 = {:.12}", sol.c1, sol.c2);
    println!("z(0) = {:?}", to_z_frame(x0, theta0).as_slice());

    let q0 = StateVector::new(vec![x0.x, x0.y, theta0])?;
    let cfg = IntegratorConfig::rk4(1e-3, 10.0).with_output_interval(1.0);
    let traj = integrate(unicycle_system(&GainConfig::uniform(rho)), &q0, &cfg)?;

    let mut worst = 0.0f64;
    for (&t, q) in traj.times.iter().zip(&traj.states) {
        let p = eval(&sol, t)?;
        let err = (p.x[0] - q[0]).abs().max((p.x[1] - q[1]).abs());
        worst = worst.max(err);
        println!(
            "t = {t:4.1}  closed form ({:+.8}, {:+.8})  rk4 ({:+.8}, {:+.8})",
            p.x[0], p.x[1], q[0], q[1]
        );
    }
    println!("largest difference: {worst:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
