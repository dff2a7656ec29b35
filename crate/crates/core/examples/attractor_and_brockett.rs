// Where trajectories end up: on the `y_c` axis at `2 C2 / pi`, and only a
// single line of initial positions (`C2 = 0`) reaches the origin.

use driftless_pk::analysis::{asymptotics, brockett_scan};
use driftless_pk::closedform::{c2_zero_direction, ClosedFormSolution};
use driftless_pk::error::Result;
use driftless_pk::nalgebra::Vector2;

pub fn run() -> Result<()> {
    for x0 in [
        Vector2::new(1.0, 0.0),
        Vector2::new(0.0, 1.0),
        Vector2::new(-1.0, 2.0),
    ] {
        let sol = ClosedFormSolution::fit(x0, 1.0, -1.0)?;
        let a = asymptotics(&sol)?;
        println!(
            "X0 = ({:+.1}, {:+.1}), theta0 = 1 -> X(inf) = ({}, {:+.10})",
            x0.x, x0.y, a.x_infinity[0], a.x_infinity[1]
        );
    }

    let dir = c2_zero_direction(1.0)?;
    let sol = ClosedFormSolution::fit(dir * 2.0, 1.0, -1.0)?;
    println!("along ({:+.6}, {:+.6}): C2 = {:.1e}", dir.x, dir.y, sol.c2);

    let report = brockett_scan(&[-2.0, -0.5, 0.5, 2.0], 36, &[0.5, 1.0, 2.0], 1e-8)?;
    for s in &report.slices {
        println!(
            "theta0 = {:+.1}: C2 changes sign {} times around the circle; roots off the line by {:.1e}",
            s.theta0, s.sign_changes, s.max_root_line_deviation
        );
    }
    println!("single line per attitude: {}", report.single_line);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
