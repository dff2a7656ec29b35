// Drive a unicycle towards the origin with `u = rho S(q)' q` and watch the
// pseudo-kinetic energy settle.
//
// ```text
// cargo run --example stabilize_unicycle
// ```

use driftless_pk::driftless::{energy_identity, pk_controller, StateVector, UnicycleFields};
use driftless_pk::error::Result;
use driftless_pk::simulate::{integrate, unicycle_system, GainConfig, IntegratorConfig};

pub fn run() -> Result<()> {
    let q0 = StateVector::new(vec![1.0, -0.5, 0.8])?;
    let rho = -1.0;

    let u0 = pk_controller(&q0, &UnicycleFields, rho)?;
    println!("initial controls: v = {:+.4}, omega = {:+.4}", u0[0], u0[1]);

    let cfg = IntegratorConfig::rk4(1e-3, 20.0).with_output_interval(2.0);
    let traj = integrate(unicycle_system(&GainConfig::uniform(rho)), &q0, &cfg)?;

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "t", "x_c", "y_c", "theta", "energy"
    );
    for ((t, q), e) in traj.times.iter().zip(&traj.states).zip(&traj.energy) {
        println!(
            "{t:6.1} {:10.6} {:10.6} {:10.3e} {:10.6}",
            q[0], q[1], q[2], e
        );
    }

    let q_end = traj.final_state().expect("non-empty");
    let identity = energy_identity(&q0, q_end, rho);
    println!(
        "energy {:.9} vs (|rho|/2)(|q0|^2 - |q|^2) = {identity:.9}",
        traj.final_energy().unwrap_or(0.0)
    );
    // x_c goes to zero, y_c settles on a non-zero value
    println!("|q| went from {:.4} to {:.4}", q0.norm(), q_end.norm());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
