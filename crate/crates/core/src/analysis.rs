//! Numerical certificates for the stability and asymptotic claims.

use std::f64::consts::{FRAC_2_PI, PI};

use nalgebra::Vector2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closedform::{basis_matrix, c2_zero_direction, fit_constants, ClosedFormSolution};
use crate::driftless::{norm, StateVector};
use crate::error::{Error, Result};
use crate::simulate::{
    integrate, unicycle_system, GainConfig, GuardScope, IntegratorConfig, Trajectory,
};

/// Outcome of [`certify_stability`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityCertificate {
    /// Energy gained over the last 10% of the horizon is below `tol (1 + E_total)`.
    pub energy_bounded: bool,
    /// `|q'|` at the final sample.
    pub final_speed: f64,
    pub norm_monotone: bool,
    pub horizon: f64,
    pub total_energy: f64,
    pub last_decile_increment: f64,
    /// Bounded energy implies `|q'|^2 <= tol (1 + E_total)` at the horizon.
    pub speed_vanishes: bool,
    /// The run was cut short by the divergence guard.
    pub diverged: bool,
}

impl StabilityCertificate {
    pub fn passed(&self) -> bool {
        self.energy_bounded && self.norm_monotone && self.speed_vanishes && !self.diverged
    }
}

/// Certifies a trajectory produced by `field`.
pub fn certify_stability<F>(
    traj: &Trajectory,
    mut field: F,
    tol: f64,
) -> Result<StabilityCertificate>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if !(tol > 0.0) {
        return Err(Error::argument("tol", format!("must be > 0, got {tol}")));
    }
    if traj.len() < 10 {
        return Err(Error::Inconclusive(format!(
            "trajectory has {} samples; at least 10 are needed",
            traj.len()
        )));
    }
    let t0 = traj.times[0];
    let t_end = *traj.times.last().expect("non-empty");
    let horizon = t_end - t0;
    let window_start = t0 + 0.9 * horizon;
    let idx = traj.times.partition_point(|&t| t < window_start);
    if idx >= traj.len() - 1 {
        return Err(Error::Inconclusive(
            "no samples inside the last 10% of the horizon".into(),
        ));
    }
    let total_energy = *traj.energy.last().expect("non-empty");
    let last_decile_increment = total_energy - traj.energy[idx];
    let threshold = tol * (1.0 + total_energy);
    let energy_bounded = last_decile_increment.is_finite() && last_decile_increment < threshold;

    let q_end = traj.final_state().expect("non-empty");
    let mut qdot = vec![0.0; q_end.len()];
    field(t_end, q_end, &mut qdot);
    let final_speed = norm(&qdot);

    let norm_monotone = traj
        .states
        .windows(2)
        .all(|w| w[1].norm() <= w[0].norm() * (1.0 + 1e-12) + 1e-300);

    Ok(StabilityCertificate {
        energy_bounded,
        final_speed,
        norm_monotone,
        horizon,
        total_energy,
        last_decile_increment,
        speed_vanishes: !energy_bounded || final_speed * final_speed <= threshold,
        diverged: false,
    })
}

/// Integrates and certifies, turning a divergence into a failed certificate.
pub fn certify_run<F>(
    field: F,
    q0: &StateVector,
    cfg: &IntegratorConfig,
    tol: f64,
) -> Result<(StabilityCertificate, Trajectory)>
where
    F: FnMut(f64, &[f64], &mut [f64]) + Clone,
{
    match integrate(field.clone(), q0, cfg) {
        Ok(traj) => Ok((certify_stability(&traj, field, tol)?, traj)),
        Err(Error::Divergence { partial, .. }) => {
            let traj = *partial;
            let cert = match certify_stability(&traj, field, tol) {
                Ok(c) => c,
                Err(Error::Inconclusive(_)) => StabilityCertificate {
                    energy_bounded: false,
                    final_speed: f64::INFINITY,
                    norm_monotone: false,
                    horizon: traj.final_time().unwrap_or(0.0),
                    total_energy: traj.final_energy().unwrap_or(f64::INFINITY),
                    last_decile_increment: f64::INFINITY,
                    speed_vanishes: false,
                    diverged: true,
                },
                Err(e) => return Err(e),
            };
            Ok((
                StabilityCertificate {
                    energy_bounded: false,
                    diverged: true,
                    ..cert
                },
                traj,
            ))
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryReport {
    pub runs: usize,
    pub passed: usize,
    pub max_final_speed_sq: f64,
    pub max_identity_error: f64,
    pub all_passed: bool,
    pub certificates: Vec<StabilityCertificate>,
}

/// Random single-gain unicycle runs from `|q0| <= max_norm`.
///
/// Besides the certificates, tracks the relative error of the energy identity
/// `E(T) = (|rho|/2)(|q0|^2 - |q(T)|^2)`.
pub fn stability_battery(
    runs: usize,
    seed: u64,
    max_norm: f64,
    rho: f64,
    cfg: &IntegratorConfig,
    tol: f64,
) -> Result<BatteryReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = unicycle_system(&GainConfig::uniform(rho));
    let mut certificates = Vec::with_capacity(runs);
    let mut max_identity_error = 0.0f64;
    for _ in 0..runs {
        let q0 = random_in_ball(&mut rng, 3, max_norm);
        let (cert, traj) = certify_run(field, &q0, cfg, tol)?;
        if let (Some(qt), Some(e)) = (traj.final_state(), traj.final_energy()) {
            let identity = 0.5 * rho.abs() * (q0.norm().powi(2) - qt.norm().powi(2));
            if identity > 0.0 {
                max_identity_error = max_identity_error.max((e - identity).abs() / identity);
            }
        }
        certificates.push(cert);
    }
    let passed = certificates.iter().filter(|c| c.passed()).count();
    Ok(BatteryReport {
        runs,
        passed,
        max_final_speed_sq: certificates
            .iter()
            .map(|c| c.final_speed * c.final_speed)
            .fold(0.0, f64::max),
        max_identity_error,
        all_passed: passed == runs,
        certificates,
    })
}

/// Uniform sample from the ball of radius `r` in `R^n` (rejection).
pub fn random_in_ball(rng: &mut impl Rng, n: usize, r: f64) -> StateVector {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-r..=r)).collect();
        if norm(&v) <= r {
            return StateVector::new(v).expect("finite sample");
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub z1_limit: f64,
    /// `2 c2 / pi`
    pub z2_limit: f64,
    /// Limit position; `R(0) = I`, so it equals `(z1_limit, z2_limit)`.
    pub x_infinity: [f64; 2],
    /// Whether this solution has `c2 = 0` (within `1e-8`), i.e. converges to the origin.
    pub c2_zero_feasible: bool,
    /// Direction of initial positions with `c2 = 0` at this attitude.
    pub feasible_direction: Option<[f64; 2]>,
}

pub fn asymptotics(sol: &ClosedFormSolution) -> Result<AsymptoticReport> {
    let z2_limit = FRAC_2_PI * sol.c2;
    let dir = c2_zero_direction(sol.theta0)?;
    Ok(AsymptoticReport {
        z1_limit: 0.0,
        z2_limit,
        x_infinity: [0.0, z2_limit],
        c2_zero_feasible: sol.c2.abs() < 1e-8,
        feasible_direction: Some([dir.x, dir.y]),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixedGainReport {
    pub rho_pos: f64,
    pub rho_theta: f64,
    pub horizon: f64,
    pub x_norm_initial: f64,
    pub x_norm_final: f64,
    pub theta_initial: f64,
    pub theta_final: f64,
    /// `theta0 e^{rho_theta T}`
    pub theta_exact_final: f64,
    /// Least-squares slope of `ln |theta|` against time.
    pub theta_growth_rate: f64,
    pub x_norm_monotone: bool,
    pub attitude_growing: bool,
    /// The position guard tripped; this would contradict the convergence claim.
    pub position_diverged: bool,
    /// `(t, |X|, |theta|)` at the recorded samples.
    pub samples: Vec<[f64; 3]>,
}

/// Default settings for [`rho_positive_study_with`].
pub fn rho_positive_config(horizon: f64) -> IntegratorConfig {
    IntegratorConfig::rk45(1e-12, 1e-10, horizon)
        .with_guard(GuardScope::Prefix(2))
        .with_output_interval(0.05)
}

/// Position gain -1, attitude gain +1: the attitude spins up while the
/// wheel-base centre is expected to converge.
pub fn rho_positive_study(q0: &StateVector, horizon: f64) -> Result<MixedGainReport> {
    rho_positive_study_with(
        q0,
        &GainConfig::mixed(-1.0, 1.0),
        &rho_positive_config(horizon),
    )
}

pub fn rho_positive_study_with(
    q0: &StateVector,
    gains: &GainConfig,
    cfg: &IntegratorConfig,
) -> Result<MixedGainReport> {
    if q0.len() != 3 {
        return Err(Error::Dimension {
            what: "unicycle state",
            expected: 3,
            got: q0.len(),
        });
    }
    if !(gains.rho_pos < 0.0 && gains.rho_theta > 0.0) {
        return Err(Error::argument(
            "gains",
            format!(
                "study expects rho_pos < 0 and rho_theta > 0, got {} and {}",
                gains.rho_pos, gains.rho_theta
            ),
        ));
    }
    let (traj, position_diverged) = match integrate(unicycle_system(gains), q0, cfg) {
        Ok(t) => (t, false),
        Err(Error::Divergence { partial, .. }) => (*partial, true),
        Err(e) => return Err(e),
    };
    let x_norm = |q: &StateVector| q[0].hypot(q[1]);
    let samples: Vec<[f64; 3]> = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(&t, q)| [t, x_norm(q), q[2].abs()])
        .collect();
    let q_end = traj.final_state().expect("non-empty");
    let horizon = traj.final_time().unwrap_or(0.0);

    // slope of ln|theta| over samples where theta != 0
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s[2] > 0.0)
        .map(|s| (s[0], s[2].ln()))
        .collect();
    let theta_growth_rate = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let ml = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let cov: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - ml)).sum();
        let var: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
        if var > 0.0 {
            cov / var
        } else {
            0.0
        }
    } else {
        0.0
    };

    Ok(MixedGainReport {
        rho_pos: gains.rho_pos,
        rho_theta: gains.rho_theta,
        horizon,
        x_norm_initial: x_norm(q0),
        x_norm_final: x_norm(q_end),
        theta_initial: q0[2],
        theta_final: q_end[2],
        theta_exact_final: q0[2] * (gains.rho_theta * horizon).exp(),
        theta_growth_rate,
        x_norm_monotone: samples
            .windows(2)
            .all(|w| w[1][1] <= w[0][1] * (1.0 + 1e-9)),
        attitude_growing: q_end[2].abs() > q0[2].abs(),
        position_diverged,
        samples,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrockettSlice {
    pub theta0: f64,
    /// Unit direction of the `c2 = 0` line from the fit matrix.
    pub feasible_direction: [f64; 2],
    /// Sign changes of `c2` around the unit circle of initial positions.
    pub sign_changes: usize,
    /// Roots of `c2` on the unit circle (angles), refined by bisection.
    pub root_angles: Vec<f64>,
    /// Largest `|d(root) x feasible_direction|` over the roots.
    pub max_root_line_deviation: f64,
    pub grid_points: usize,
    pub near_zero_points: usize,
    /// Largest distance of a near-zero grid point from the feasible line.
    pub max_near_zero_distance: f64,
    /// Distance from the line below which `|c2| < tol` is possible.
    pub tube_radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrockettReport {
    pub tol: f64,
    pub grid_points: usize,
    pub near_zero_points: usize,
    pub slices: Vec<BrockettSlice>,
    /// Every slice has exactly one zero line of `c2`, and every near-zero grid
    /// point lies inside the tube around it.
    pub single_line: bool,
}

/// Scans initial positions `r (cos phi, sin phi)` for each attitude and
/// locates where `c2` (the coefficient that keeps the limit off the origin) vanishes.
pub fn brockett_scan(
    theta0s: &[f64],
    directions: usize,
    radii: &[f64],
    tol: f64,
) -> Result<BrockettReport> {
    if directions < 4 {
        return Err(Error::argument("directions", "need at least 4 directions"));
    }
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::argument("radii", "need positive radii"));
    }
    let mut slices = Vec::with_capacity(theta0s.len());
    for &theta0 in theta0s {
        let dir = c2_zero_direction(theta0)?;
        let b = basis_matrix(theta0)?;
        // c2 = (row 2 of B^-1) R' X; its gradient norm bounds the tube width.
        let sigma = Vector2::new(-b[(1, 0)], b[(0, 0)]).norm() / b.determinant().abs();
        let tube_radius = tol / sigma;

        let c2_at = |phi: f64, r: f64| -> Result<f64> {
            Ok(fit_constants(Vector2::new(r * phi.cos(), r * phi.sin()), theta0)?.1)
        };

        let mut near_zero_points = 0;
        let mut max_near_zero_distance = 0.0f64;
        let mut grid_points = 0;
        for j in 0..directions {
            let phi = 2.0 * PI * j as f64 / directions as f64;
            for &r in radii {
                grid_points += 1;
                let c2 = c2_at(phi, r)?;
                if c2.abs() < tol {
                    near_zero_points += 1;
                    let p = Vector2::new(r * phi.cos(), r * phi.sin());
                    let dist = (p.x * dir.y - p.y * dir.x).abs();
                    max_near_zero_distance = max_near_zero_distance.max(dist);
                }
            }
        }

        let mut root_angles = Vec::new();
        let mut prev = c2_at(0.0, 1.0)?;
        for j in 1..=directions {
            let phi = 2.0 * PI * j as f64 / directions as f64;
            let cur = c2_at(phi, 1.0)?;
            if prev == 0.0 || prev.signum() != cur.signum() {
                let mut lo = 2.0 * PI * (j - 1) as f64 / directions as f64;
                let mut hi = phi;
                let mut f_lo = prev;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let f_mid = c2_at(mid, 1.0)?;
                    if f_mid == 0.0 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if f_mid.signum() == f_lo.signum() {
                        lo = mid;
                        f_lo = f_mid;
                    } else {
                        hi = mid;
                    }
                }
                root_angles.push(0.5 * (lo + hi));
            }
            prev = cur;
        }
        let max_root_line_deviation = root_angles
            .iter()
            .map(|a| (a.cos() * dir.y - a.sin() * dir.x).abs())
            .fold(0.0, f64::max);

        slices.push(BrockettSlice {
            theta0,
            feasible_direction: [dir.x, dir.y],
            sign_changes: root_angles.len(),
            root_angles,
            max_root_line_deviation,
            grid_points,
            near_zero_points,
            max_near_zero_distance,
            tube_radius,
        });
    }
    let single_line = slices.iter().all(|s| {
        s.sign_changes == 2
            && s.max_root_line_deviation < 1e-9
            && s.max_near_zero_distance <= s.tube_radius * (1.0 + 1e-6)
    });
    Ok(BrockettReport {
        tol,
        grid_points: slices.iter().map(|s| s.grid_points).sum(),
        near_zero_points: slices.iter().map(|s| s.near_zero_points).sum(),
        slices,
        single_line,
    })
}
