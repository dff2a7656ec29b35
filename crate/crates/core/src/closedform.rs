//! Closed-form trajectories of the unicycle under the single-gain controller.
//!
//! In the rotating frame `Z = R(theta)' X` the position dynamics become
//! `z1' = rho z1 + theta' z2`, `z2' = -theta' z1` with `theta = theta0 e^{rho t}`.
//! Taking `s = |theta|` as the independent variable (time normalised so that
//! `rho = -1`) gives Bessel's equation of order zero for `z1 / theta`, hence
//!
//! ```text
//! z1 = theta [c1 J0(s) + c2 Y0(s)]
//! z2 = -s   [c1 J1(s) + c2 Y1(s)]
//! ```
//!
//! As `t -> inf`, `z1 -> 0` and `z2 -> 2 c2 / pi`, so trajectories end on the
//! `y_c` axis and reach the origin only when `c2 = 0`.

use std::f64::consts::FRAC_2_PI;
use std::ops::Mul;

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::driftless::norm_sq;
use crate::error::{Error, Result};
use crate::simulate::Trajectory;
use crate::specfun::{bessel_set, MAX_ARGUMENT};

/// Planar rotation by `theta` radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation2 {
    pub theta: f64,
}

impl Rotation2 {
    pub fn new(theta: f64) -> Self {
        Rotation2 { theta }
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        let (s, c) = self.theta.sin_cos();
        Matrix2::new(c, -s, s, c)
    }

    pub fn transpose(&self) -> Rotation2 {
        Rotation2 { theta: -self.theta }
    }

    pub fn apply(&self, v: Vector2<f64>) -> Vector2<f64> {
        let (s, c) = self.theta.sin_cos();
        Vector2::new(c * v.x - s * v.y, s * v.x + c * v.y)
    }

    pub fn apply_transpose(&self, v: Vector2<f64>) -> Vector2<f64> {
        let (s, c) = self.theta.sin_cos();
        Vector2::new(c * v.x + s * v.y, -s * v.x + c * v.y)
    }
}

impl Mul for Rotation2 {
    type Output = Rotation2;

    // composing rotations adds their angles
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Rotation2) -> Rotation2 {
        Rotation2::new(self.theta + rhs.theta)
    }
}

/// `Z = R(theta)' X`.
pub fn to_z_frame(x: Vector2<f64>, theta: f64) -> Vector2<f64> {
    Rotation2::new(theta).apply_transpose(x)
}

/// `X = R(theta) Z`.
pub fn from_z_frame(z: Vector2<f64>, theta: f64) -> Vector2<f64> {
    Rotation2::new(theta).apply(z)
}

fn check_attitude(theta0: f64) -> Result<()> {
    if theta0 == 0.0 {
        return Err(Error::DegenerateAttitude);
    }
    if !theta0.is_finite() {
        return Err(Error::argument(
            "theta0",
            format!("must be finite, got {theta0}"),
        ));
    }
    if theta0.abs() > MAX_ARGUMENT {
        return Err(Error::Range {
            function: "closed form",
            x: theta0.abs(),
            limit: MAX_ARGUMENT,
        });
    }
    Ok(())
}

/// Maps `(c1, c2)` to `Z(0)`:
/// `[[theta0 J0(s0), theta0 Y0(s0)], [-s0 J1(s0), -s0 Y1(s0)]]`, `s0 = |theta0|`.
///
/// Its determinant is `2 theta0 / pi` by the Wronskian, so it is invertible
/// for every nonzero attitude.
pub fn basis_matrix(theta0: f64) -> Result<Matrix2<f64>> {
    check_attitude(theta0)?;
    let s = theta0.abs();
    let b = bessel_set(s)?;
    Ok(Matrix2::new(
        theta0 * b.j0,
        theta0 * b.y0,
        -s * b.j1,
        -s * b.y1,
    ))
}

/// Constants `(c1, c2)` reproducing the initial position `x0` at attitude `theta0`.
pub fn fit_constants(x0: Vector2<f64>, theta0: f64) -> Result<(f64, f64)> {
    let b = basis_matrix(theta0)?;
    let z0 = to_z_frame(x0, theta0);
    // Cramer's rule; det = 2 theta0 / pi up to rounding.
    let det = b.determinant();
    let c1 = (z0.x * b[(1, 1)] - b[(0, 1)] * z0.y) / det;
    let c2 = (b[(0, 0)] * z0.y - b[(1, 0)] * z0.x) / det;
    Ok((c1, c2))
}

/// Unit direction of the initial positions with `c2 = 0`, i.e. the only
/// positions (for this attitude) whose trajectories converge to the origin.
pub fn c2_zero_direction(theta0: f64) -> Result<Vector2<f64>> {
    let b = basis_matrix(theta0)?;
    let v = from_z_frame(Vector2::new(b[(0, 0)], b[(1, 0)]), theta0);
    Ok(v / v.norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormSolution {
    pub theta0: f64,
    pub c1: f64,
    pub c2: f64,
    /// Closed-loop gain, `< 0`. Time is rescaled by `|rho|` internally.
    pub rho: f64,
}

impl ClosedFormSolution {
    pub fn new(theta0: f64, c1: f64, c2: f64, rho: f64) -> Result<Self> {
        check_attitude(theta0)?;
        if !(rho < 0.0 && rho.is_finite()) {
            return Err(Error::argument(
                "rho",
                format!("closed form requires rho < 0, got {rho}"),
            ));
        }
        if !(c1.is_finite() && c2.is_finite()) {
            return Err(Error::argument("c", "constants must be finite"));
        }
        Ok(ClosedFormSolution {
            theta0,
            c1,
            c2,
            rho,
        })
    }

    /// Solution through `(x0, y0, theta0)`.
    pub fn fit(x0: Vector2<f64>, theta0: f64, rho: f64) -> Result<Self> {
        let (c1, c2) = fit_constants(x0, theta0)?;
        Self::new(theta0, c1, c2, rho)
    }

    pub fn theta(&self, t: f64) -> f64 {
        self.theta0 * (self.rho * t).exp()
    }

    pub fn initial_state(&self) -> Result<[f64; 3]> {
        let p = eval(self, 0.0)?;
        Ok([p.x[0], p.x[1], p.theta])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormPoint {
    pub t: f64,
    pub theta: f64,
    pub z1: f64,
    pub z2: f64,
    /// Position `(x_c, y_c) = R(theta) (z1, z2)`.
    pub x: [f64; 2],
}

/// Evaluates the closed form at `t >= 0`.
pub fn eval(sol: &ClosedFormSolution, t: f64) -> Result<ClosedFormPoint> {
    if !(t >= 0.0) {
        return Err(Error::argument("t", format!("must be >= 0, got {t}")));
    }
    let theta = sol.theta(t);
    let (z1, z2) = z_components(sol, theta)?;
    let x = from_z_frame(Vector2::new(z1, z2), theta);
    Ok(ClosedFormPoint {
        t,
        theta,
        z1,
        z2,
        x: [x.x, x.y],
    })
}

fn z_components(sol: &ClosedFormSolution, theta: f64) -> Result<(f64, f64)> {
    let s = theta.abs();
    if s == 0.0 {
        // attitude underflowed: the limit values
        return Ok((0.0, FRAC_2_PI * sol.c2));
    }
    let b = bessel_set(s)?;
    let z1 = theta * (sol.c1 * b.j0 + sol.c2 * b.y0);
    let z2 = -s * (sol.c1 * b.j1 + sol.c2 * b.y1);
    Ok((z1, z2))
}

/// Exact solution for `theta == 0`: `x = x0 e^{rho t}`, `y = y0`.
pub fn degenerate_eval(x0: f64, y0: f64, rho: f64, t: f64) -> [f64; 2] {
    [x0 * (rho * t).exp(), y0]
}

fn central_differences(sol: &ClosedFormSolution, t: f64, h: f64) -> Result<[ClosedFormPoint; 3]> {
    if !(h > 0.0) {
        return Err(Error::argument("h", format!("must be > 0, got {h}")));
    }
    if !(t >= 2.0 * h) {
        return Err(Error::argument(
            "t",
            format!("must be >= 2h, got t = {t}, h = {h}"),
        ));
    }
    Ok([eval(sol, t - h)?, eval(sol, t)?, eval(sol, t + h)?])
}

/// `|z1'' - 2 rho z1' + (rho^2 + theta'^2) z1|` with central differences of step `h`.
///
/// For the normalised gain `rho = -1` this is the same as the
/// `rho^2 (1 + theta'^2)` form of the coefficient.
pub fn ode_residual(sol: &ClosedFormSolution, t: f64, h: f64) -> Result<f64> {
    let [m, c, p] = central_differences(sol, t, h)?;
    let d1 = (p.z1 - m.z1) / (2.0 * h);
    let d2 = (p.z1 - 2.0 * c.z1 + m.z1) / (h * h);
    let rho = sol.rho;
    let theta_dot = rho * c.theta;
    Ok((d2 - 2.0 * rho * d1 + (rho * rho + theta_dot * theta_dot) * c.z1).abs())
}

/// Residuals of the first-order rotating-frame system
/// `z1' = rho z1 + theta' z2`, `z2' = -theta' z1`.
pub fn z_system_residual(sol: &ClosedFormSolution, t: f64, h: f64) -> Result<[f64; 2]> {
    let [m, c, p] = central_differences(sol, t, h)?;
    let dz1 = (p.z1 - m.z1) / (2.0 * h);
    let dz2 = (p.z2 - m.z2) / (2.0 * h);
    let theta_dot = sol.rho * c.theta;
    Ok([
        (dz1 - (sol.rho * c.z1 + theta_dot * c.z2)).abs(),
        (dz2 + theta_dot * c.z1).abs(),
    ])
}

/// Samples the closed form at `times`.
///
/// The energy column uses the identity `(|rho| / 2)(|q(0)|^2 - |q(t)|^2)`.
pub fn closed_form_trajectory(sol: &ClosedFormSolution, times: &[f64]) -> Result<Trajectory> {
    let q0 = sol.initial_state()?;
    let mut traj = Trajectory::default();
    for &t in times {
        let p = eval(sol, t)?;
        let q = [p.x[0], p.x[1], p.theta];
        let energy = (0.5 * sol.rho.abs() * (norm_sq(&q0) - norm_sq(&q))).max(0.0);
        traj.push(t, &q, energy);
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn rotation_properties() {
        let r = Rotation2::new(0.7);
        let m = r.matrix();
        assert_abs_diff_eq!(m.determinant(), 1.0, epsilon = 1e-14);
        let id = m.transpose() * m;
        assert!((id - Matrix2::identity()).abs().max() < 1e-14);
        let ab = (Rotation2::new(0.3) * Rotation2::new(1.1)).matrix();
        let prod = Rotation2::new(0.3).matrix() * Rotation2::new(1.1).matrix();
        assert!((ab - prod).abs().max() < 1e-14);
    }

    #[test]
    fn z_frame_examples() {
        let x = Vector2::new(0.4, -2.0);
        assert_eq!(to_z_frame(x, 0.0), x);
        let z = to_z_frame(Vector2::new(1.0, 0.0), FRAC_PI_2);
        assert_abs_diff_eq!(z.x, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(z.y, -1.0);
    }

    #[test]
    fn fit_recovers_constructed_preimage() {
        for theta0 in [1.0, -0.4, 2.7, -3.0, 12.0] {
            let b = basis_matrix(theta0).unwrap();
            let x0 = from_z_frame(b * Vector2::new(1.0, 0.0), theta0);
            let (c1, c2) = fit_constants(x0, theta0).unwrap();
            assert_abs_diff_eq!(c1, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(c2, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn fit_of_origin_is_zero() {
        assert_eq!(fit_constants(Vector2::zeros(), 1.3).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn zero_attitude_is_rejected() {
        assert!(matches!(
            fit_constants(Vector2::new(1.0, 0.0), 0.0),
            Err(Error::DegenerateAttitude)
        ));
        assert!(matches!(
            ClosedFormSolution::new(0.0, 1.0, 0.0, -1.0),
            Err(Error::DegenerateAttitude)
        ));
        assert!(ClosedFormSolution::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ClosedFormSolution::new(60.0, 1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn determinant_is_wronskian() {
        for theta0 in [0.05, 0.5, -1.0, 3.0, 20.0, -45.0] {
            let det = basis_matrix(theta0).unwrap().determinant();
            assert_abs_diff_eq!(
                det,
                2.0 * theta0 / PI,
                epsilon = 1e-12 * (1.0 + theta0.abs())
            );
        }
    }

    #[test]
    fn eval_at_zero_reproduces_fit() {
        let x0 = Vector2::new(0.7, -1.9);
        for theta0 in [1.0, -2.2, 0.01] {
            let sol = ClosedFormSolution::fit(x0, theta0, -1.0).unwrap();
            let p = eval(&sol, 0.0).unwrap();
            assert_abs_diff_eq!(p.x[0], x0.x, epsilon = 1e-12);
            assert_abs_diff_eq!(p.x[1], x0.y, epsilon = 1e-12);
            assert_eq!(p.theta, theta0);
        }
    }

    #[test]
    fn limits_of_pure_solutions() {
        let j = ClosedFormSolution::new(1.0, 1.0, 0.0, -1.0).unwrap();
        let p = eval(&j, 40.0).unwrap();
        assert!(p.z1.abs() < 1e-15 && p.z2.abs() < 1e-15);

        let y = ClosedFormSolution::new(1.0, 0.0, 1.0, -1.0).unwrap();
        let p = eval(&y, 40.0).unwrap();
        assert_abs_diff_eq!(p.z2, FRAC_2_PI, epsilon = 1e-12);
        assert!(p.z1.abs() < 1e-15);
        // beyond underflow of the attitude
        let p = eval(&y, 1e4).unwrap();
        assert_eq!((p.z1, p.z2), (0.0, FRAC_2_PI));
    }

    #[test]
    fn degenerate_solution() {
        let [x, y] = degenerate_eval(1.0, 2.0, -1.0, 1.0);
        assert_abs_diff_eq!(x, (-1.0f64).exp());
        assert_eq!(y, 2.0);
        assert_eq!(degenerate_eval(0.0, 5.0, -3.0, 7.0), [0.0, 5.0]);
    }

    #[test]
    fn residual_examples() {
        let sol = ClosedFormSolution::new(1.0, 0.3, -0.8, -1.0).unwrap();
        let r = ode_residual(&sol, 1.0, 1e-4).unwrap();
        let z1 = eval(&sol, 1.0).unwrap().z1;
        assert!(r <= 1e-5 * z1.abs().max(1.0), "{r}");

        let zero = ClosedFormSolution::new(1.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(ode_residual(&zero, 1.0, 1e-4).unwrap(), 0.0);

        assert!(ode_residual(&sol, 1e-5, 1e-4).is_err());
        assert!(ode_residual(&sol, 1.0, 0.0).is_err());
    }

    #[test]
    fn residual_scales_quadratically() {
        let sol = ClosedFormSolution::new(2.0, 0.7, 0.4, -1.0).unwrap();
        let r1 = ode_residual(&sol, 1.0, 0.02).unwrap();
        let r2 = ode_residual(&sol, 1.0, 0.01).unwrap();
        let ratio = r1 / r2;
        assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
    }

    #[test]
    fn general_gain_is_time_rescaled() {
        let a = ClosedFormSolution::new(1.5, 0.2, 0.9, -1.0).unwrap();
        let b = ClosedFormSolution::new(1.5, 0.2, 0.9, -2.5).unwrap();
        let pa = eval(&a, 2.5).unwrap();
        let pb = eval(&b, 1.0).unwrap();
        assert_abs_diff_eq!(pa.x[0], pb.x[0], epsilon = 1e-15);
        assert_abs_diff_eq!(pa.x[1], pb.x[1], epsilon = 1e-15);
        assert!(ode_residual(&b, 0.5, 1e-3).unwrap() < 1e-5);
    }

    #[test]
    fn c2_zero_direction_gives_zero_c2() {
        for theta0 in [0.5, -1.0, 2.9] {
            let d = c2_zero_direction(theta0).unwrap();
            let (_, c2) = fit_constants(d * 1.7, theta0).unwrap();
            assert!(c2.abs() < 1e-14);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn z_frame_round_trip_preserves_norm(x in -10.0f64..10.0, y in -10.0f64..10.0, theta in -10.0f64..10.0) {
            let v = Vector2::new(x, y);
            let z = to_z_frame(v, theta);
            prop_assert!((z.norm() - v.norm()).abs() < 1e-12);
            let back = from_z_frame(z, theta);
            prop_assert!((back - v).norm() < 1e-12);
        }

        #[test]
        fn rotation_composes(a in -7.0f64..7.0, b in -7.0f64..7.0) {
            let lhs = Rotation2::new(a).matrix() * Rotation2::new(b).matrix();
            let rhs = (Rotation2::new(a) * Rotation2::new(b)).matrix();
            prop_assert!((lhs - rhs).abs().max() < 1e-13);
        }

        #[test]
        fn z_system_is_satisfied(
            theta0 in prop_oneof![-3.0f64..-0.05, 0.05f64..3.0],
            c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, t in 0.1f64..8.0,
        ) {
            let sol = ClosedFormSolution::new(theta0, c1, c2, -1.0).unwrap();
            let [r1, r2] = z_system_residual(&sol, t, 1e-4).unwrap();
            prop_assert!(r1 <= 1e-5 && r2 <= 1e-5, "{r1} {r2}");
        }

        #[test]
        fn z2_agrees_with_quotient_form(
            theta0 in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0],
            c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, t in 0.1f64..3.0,
        ) {
            // z2 = (z1' - rho z1) / theta' where theta' is not small
            let sol = ClosedFormSolution::new(theta0, c1, c2, -1.0).unwrap();
            let h = 1e-5;
            let p = eval(&sol, t).unwrap();
            let dz1 = (eval(&sol, t + h).unwrap().z1 - eval(&sol, t - h).unwrap().z1) / (2.0 * h);
            let quotient = (dz1 + p.z1) / (-p.theta);
            prop_assert!((quotient - p.z2).abs() < 1e-6 * (1.0 + p.z2.abs()) / p.theta.abs());
        }
    }
}
