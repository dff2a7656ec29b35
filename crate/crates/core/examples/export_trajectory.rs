// Write a trajectory as CSV and JSON and read both back.

use driftless_pk::driftless::StateVector;
use driftless_pk::error::Result;
use driftless_pk::io::{
    from_json_str, read_csv, to_csv_string, to_json_string, write_atomic, Metadata,
};
use driftless_pk::simulate::{integrate, unicycle_system, GainConfig, IntegratorConfig};

pub fn run() -> Result<()> {
    let gains = GainConfig::uniform(-1.0);
    let cfg = IntegratorConfig::rk4(1e-3, 5.0).with_output_interval(0.5);
    let traj = integrate(
        unicycle_system(&gains),
        &StateVector::new(vec![1.0, 0.0, 0.5])?,
        &cfg,
    )?;

    let dir = tempfile::tempdir()?;
    let csv_path = dir.path().join("run.csv");
    write_atomic(&csv_path, to_csv_string(&traj)?.as_bytes())?;
    let meta = Metadata::new(serde_json::json!({ "gains": gains, "integrator": cfg }));
    let json_path = dir.path().join("run.json");
    write_atomic(&json_path, to_json_string(&traj, &meta)?.as_bytes())?;

    let csv_text = std::fs::read_to_string(&csv_path)?;
    for line in csv_text.lines().take(3) {
        println!("{line}");
    }
    let back = read_csv(csv_text.as_bytes())?;
    let (from_json, meta_back) = from_json_str(&std::fs::read_to_string(&json_path)?)?;
    println!("csv round trip exact: {}", back == traj);
    println!(
        "json round trip exact: {} (written by {} {})",
        from_json == traj,
        meta_back.tool,
        meta_back.version
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
