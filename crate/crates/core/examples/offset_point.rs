// The offset-point model: controls `(u1, a u2)` act on a point at distance
// `a` from the wheel axis. As `a -> 0` it becomes the unicycle again.

use driftless_pk::driftless::{validate_fields, OffsetUnicycleFields, StateVector};
use driftless_pk::error::Result;
use driftless_pk::simulate::{
    integrate, offset_system, unicycle_system, GainConfig, IntegratorConfig,
};

pub fn run() -> Result<()> {
    let q0 = StateVector::new(vec![1.0, 0.5, 0.8])?;
    let gains = GainConfig::uniform(-1.0);
    let cfg = IntegratorConfig::rk4(1e-3, 15.0).with_output_interval(0.5);
    let base = integrate(unicycle_system(&gains), &q0, &cfg)?;

    for a in [0.5, 0.1, 0.01, 0.001] {
        // the offset fields are not orthonormal, so the energy identity does not apply
        let check = validate_fields(
            &OffsetUnicycleFields::new(a)?,
            std::slice::from_ref(&q0),
            1e-12,
        )?;
        let traj = integrate(offset_system(a, &gains)?, &q0, &cfg)?;
        let dev = traj
            .states
            .iter()
            .zip(&base.states)
            .map(|(p, q)| (p[0] - q[0]).hypot(p[1] - q[1]))
            .fold(0.0, f64::max);
        let q = traj.final_state().expect("non-empty");
        println!(
            "a = {a:<6} X(15) = ({:+.5}, {:+.5})  max distance to unicycle path {dev:.2e}  orthonormal: {}",
            q[0], q[1], check.passed
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
