// A destabilizing attitude gain (`rho_theta > 0`) makes the position
// converge; switching it to `rho_theta < 0` near the origin then brings the
// attitude back.

use driftless_pk::analysis::rho_positive_study;
use driftless_pk::driftless::StateVector;
use driftless_pk::error::Result;
use driftless_pk::simulate::{run_switching, GainConfig, IntegratorConfig};

pub fn run() -> Result<()> {
    let study = rho_positive_study(&StateVector::new(vec![1.0, 0.0, 0.5])?, 15.0)?;
    println!(
        "rho_pos = -1, rho_theta = +1: |X| {:.3} -> {:.3e}, |theta| {} -> {:.3e} (growth rate {:.4})",
        study.x_norm_initial, study.x_norm_final, study.theta_initial, study.theta_final, study.theta_growth_rate
    );

    let gains = GainConfig::switching(-1.0, 1.0, 0.05, -1.0);
    let cfg = IntegratorConfig::rk45(1e-12, 1e-10, 25.0).with_output_interval(2.5);
    let run = run_switching(&StateVector::new(vec![1.0, 1.0, 0.5])?, &gains, &cfg)?;
    println!("switched at t = {:.4}", run.switch_time);
    for (t, q) in run.trajectory.times.iter().zip(&run.trajectory.states) {
        println!(
            "t = {t:7.3}  |X| = {:.3e}  theta = {:+.3e}",
            q[0].hypot(q[1]),
            q[2]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
