// The controller on a system other than the unicycle: a three-input chained
// system in `R^4` with state-dependent, orthonormalized fields.

use driftless_pk::analysis::certify_run;
use driftless_pk::driftless::{closed_loop_field, validate_fields, FnFields, StateVector};
use driftless_pk::error::Result;
use driftless_pk::nalgebra::DMatrix;
use driftless_pk::simulate::{driftless_system, IntegratorConfig};

fn fields(q: &[f64]) -> DMatrix<f64> {
    let raw = DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, q[1], 0.0, q[2], -q[0]]);
    // Gram-Schmidt via QR keeps the span and makes the columns orthonormal
    raw.qr().q().columns(0, 2).into_owned()
}

pub fn run() -> Result<()> {
    let sys = FnFields::new(4, 2, fields);
    let q0 = StateVector::new(vec![0.5, -1.0, 0.8, 0.3])?;
    let samples = [q0.clone(), StateVector::new(vec![2.0, 1.0, -1.0, 0.0])?];
    let report = validate_fields(&sys, &samples, 1e-12)?;
    println!("fields orthonormal at samples: {}", report.passed);

    let qdot = closed_loop_field(&q0, &sys, -1.0)?;
    println!("q'(0) = {:?}", qdot.as_ref());

    let cfg = IntegratorConfig::rk4(1e-3, 30.0).with_output_interval(0.05);
    let (cert, traj) = certify_run(driftless_system(&sys, vec![-1.0, -1.0]), &q0, &cfg, 1e-6)?;
    println!(
        "|q| {:.4} -> {:.4}; energy {:.6}; certificate passed: {} (final |q'| = {:.1e})",
        q0.norm(),
        traj.final_state().expect("non-empty").norm(),
        cert.total_energy,
        cert.passed(),
        cert.final_speed
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
