//! Numerical integration of the closed loops.
//!
//! Two explicit integrators are provided: classical fixed-step RK4 and
//! adaptive Dormand–Prince 5(4). Both accumulate the pseudo-kinetic energy
//! `int |q'|^2 dt` with the trapezoidal rule on the field values at step
//! ends, which the steppers need anyway.

use serde::{Deserialize, Serialize};

use crate::driftless::{
    closed_loop_field_with_gains, norm, norm_sq, EnergyAccumulator, OffsetUnicycleFields,
    StateVector, VectorFieldSet,
};
use crate::error::{Error, Result};

/// Feedback gains for the unicycle.
///
/// `rho_pos` multiplies the position feedback (first column), `rho_theta` the
/// attitude feedback. Equal gains give the single-gain controller.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainConfig {
    pub rho_pos: f64,
    pub rho_theta: f64,
    pub switch_enabled: bool,
    /// Position radius that triggers the switch, meters.
    pub switch_radius: f64,
    pub rho_theta_after_switch: f64,
}

impl GainConfig {
    pub fn uniform(rho: f64) -> Self {
        Self::mixed(rho, rho)
    }

    pub fn mixed(rho_pos: f64, rho_theta: f64) -> Self {
        GainConfig {
            rho_pos,
            rho_theta,
            switch_enabled: false,
            switch_radius: 0.0,
            rho_theta_after_switch: rho_theta,
        }
    }

    /// Attitude gain `rho_theta` until `|X| <= radius`, then `rho_theta_after`.
    pub fn switching(rho_pos: f64, rho_theta: f64, radius: f64, rho_theta_after: f64) -> Self {
        GainConfig {
            rho_pos,
            rho_theta,
            switch_enabled: true,
            switch_radius: radius,
            rho_theta_after_switch: rho_theta_after,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rho_pos", self.rho_pos),
            ("rho_theta", self.rho_theta),
            ("rho_theta_after_switch", self.rho_theta_after_switch),
        ] {
            if !v.is_finite() {
                return Err(Error::argument(name, format!("must be finite, got {v}")));
            }
        }
        if self.switch_enabled && !(self.switch_radius > 0.0 && self.switch_radius.is_finite()) {
            return Err(Error::argument(
                "switch_radius",
                format!(
                    "must be > 0 when switching is enabled, got {}",
                    self.switch_radius
                ),
            ));
        }
        Ok(())
    }

    fn column_gains(&self) -> [f64; 2] {
        [self.rho_pos, self.rho_theta]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Method {
    Rk4Fixed { step: f64 },
    Rk45Adaptive { abs_tol: f64, rel_tol: f64 },
}

/// Which components the divergence guard watches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuardScope {
    Full,
    /// The first `n` components only (e.g. the position of the unicycle).
    Prefix(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub method: Method,
    pub t_end: f64,
    pub guard: GuardScope,
    /// Abort once the guarded norm exceeds `guard_factor * |q0|` (or
    /// `guard_factor` when the guarded part of `q0` is zero).
    pub guard_factor: f64,
    /// Minimum spacing between recorded samples; `None` records every step.
    pub output_interval: Option<f64>,
}

impl IntegratorConfig {
    pub const DEFAULT_STEP: f64 = 1e-3;
    pub const DEFAULT_GUARD_FACTOR: f64 = 1e6;

    pub fn rk4(step: f64, t_end: f64) -> Self {
        IntegratorConfig {
            method: Method::Rk4Fixed { step },
            t_end,
            guard: GuardScope::Full,
            guard_factor: Self::DEFAULT_GUARD_FACTOR,
            output_interval: None,
        }
    }

    pub fn rk45(abs_tol: f64, rel_tol: f64, t_end: f64) -> Self {
        IntegratorConfig {
            method: Method::Rk45Adaptive { abs_tol, rel_tol },
            ..Self::rk4(Self::DEFAULT_STEP, t_end)
        }
    }

    pub fn with_guard(mut self, guard: GuardScope) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_output_interval(mut self, dt: f64) -> Self {
        self.output_interval = Some(dt);
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.method {
            Method::Rk4Fixed { step } => {
                if !(step > 0.0 && step.is_finite()) {
                    return Err(Error::argument("step", format!("must be > 0, got {step}")));
                }
            }
            Method::Rk45Adaptive { abs_tol, rel_tol } => {
                if !(abs_tol > 0.0 && rel_tol > 0.0) {
                    return Err(Error::argument(
                        "tolerance",
                        format!("abs_tol and rel_tol must be > 0, got {abs_tol}, {rel_tol}"),
                    ));
                }
            }
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::argument(
                "t_end",
                format!("must be > 0, got {}", self.t_end),
            ));
        }
        if !(self.guard_factor > 1.0) {
            return Err(Error::argument(
                "guard_factor",
                format!("must be > 1, got {}", self.guard_factor),
            ));
        }
        if let Some(dt) = self.output_interval {
            if !(dt > 0.0) {
                return Err(Error::argument(
                    "output_interval",
                    format!("must be > 0, got {dt}"),
                ));
            }
        }
        Ok(())
    }
}

/// Time-stamped states with the accumulated pseudo-kinetic energy.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    pub energy: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> Option<&StateVector> {
        self.states.last()
    }

    pub fn final_time(&self) -> Option<f64> {
        self.times.last().copied()
    }

    pub fn final_energy(&self) -> Option<f64> {
        self.energy.last().copied()
    }

    pub(crate) fn push(&mut self, t: f64, q: &[f64], energy: f64) {
        self.times.push(t);
        self.states
            .push(StateVector::from_vec_unchecked(q.to_vec()));
        self.energy.push(energy);
    }

    /// Checks lengths, strictly increasing times, finite states and monotone energy.
    pub fn check_invariants(&self) -> Result<()> {
        if self.states.len() != self.times.len() || self.energy.len() != self.times.len() {
            return Err(Error::argument("trajectory", "column lengths differ"));
        }
        if let Some(w) = self.times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::argument(
                "trajectory",
                format!("times not strictly increasing at index {}", w + 1),
            ));
        }
        if self.states.iter().any(|q| q.iter().any(|v| !v.is_finite())) {
            return Err(Error::argument("trajectory", "non-finite state"));
        }
        if let Some(w) = self.energy.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::argument(
                "trajectory",
                format!("energy decreases at index {}", w + 1),
            ));
        }
        Ok(())
    }
}

/// Unicycle closed loop:
/// `x' = rho_pos cos(theta) (cos(theta) x + sin(theta) y)`,
/// `y' = rho_pos sin(theta) (cos(theta) x + sin(theta) y)`,
/// `theta' = rho_theta theta`.
pub fn unicycle_field(q: &[f64], gains: &GainConfig) -> Result<StateVector> {
    if q.len() != 3 {
        return Err(Error::Dimension {
            what: "unicycle state",
            expected: 3,
            got: q.len(),
        });
    }
    let mut out = vec![0.0; 3];
    unicycle_rhs(q, gains.rho_pos, gains.rho_theta, &mut out);
    Ok(StateVector::from_vec_unchecked(out))
}

#[inline]
fn unicycle_rhs(q: &[f64], rho_pos: f64, rho_theta: f64, out: &mut [f64]) {
    let (s, c) = q[2].sin_cos();
    let u1 = rho_pos * (c * q[0] + s * q[1]);
    out[0] = u1 * c;
    out[1] = u1 * s;
    out[2] = rho_theta * q[2];
}

/// Autonomous unicycle closed loop in the form expected by [`integrate`].
pub fn unicycle_system(gains: &GainConfig) -> impl Fn(f64, &[f64], &mut [f64]) + Copy {
    let (rp, rt) = (gains.rho_pos, gains.rho_theta);
    move |_t, q, out| unicycle_rhs(q, rp, rt, out)
}

/// Closed loop of an arbitrary driftless system under per-column gains.
///
/// Dimension errors surface as a NaN derivative, which the integrator reports
/// as divergence; validate the fields beforehand.
pub fn driftless_system<'a, V: VectorFieldSet>(
    fields: &'a V,
    gains: Vec<f64>,
) -> impl Fn(f64, &[f64], &mut [f64]) + Clone + 'a {
    move |_t, q, out| match closed_loop_field_with_gains(q, fields, &gains) {
        Ok(f) => out.copy_from_slice(&f),
        Err(_) => out.fill(f64::NAN),
    }
}

/// Offset-point kinematics driven by an explicit input `u = (v, omega)`:
/// `x' = v cos(theta) - a omega sin(theta)`, `y' = v sin(theta) + a omega cos(theta)`,
/// `theta' = omega`.
pub fn offset_field(q: &[f64], a: f64, u: &[f64]) -> Result<StateVector> {
    if !(a >= 0.0) {
        return Err(Error::argument(
            "a",
            format!("offset must be >= 0, got {a}"),
        ));
    }
    if q.len() != 3 {
        return Err(Error::Dimension {
            what: "offset state",
            expected: 3,
            got: q.len(),
        });
    }
    if u.len() != 2 {
        return Err(Error::Dimension {
            what: "offset input",
            expected: 2,
            got: u.len(),
        });
    }
    let (s, c) = q[2].sin_cos();
    Ok(StateVector::from_vec_unchecked(vec![
        u[0] * c - a * u[1] * s,
        u[0] * s + a * u[1] * c,
        u[1],
    ]))
}

/// Offset-point model closed with `u_i = rho_i q' S_i(q)`.
pub fn offset_system(a: f64, gains: &GainConfig) -> Result<impl Fn(f64, &[f64], &mut [f64])> {
    let fields = OffsetUnicycleFields::new(a)?;
    let g = gains.column_gains();
    Ok(move |_t: f64, q: &[f64], out: &mut [f64]| {
        let m = fields.matrix(q);
        let u1 = g[0] * (m[(0, 0)] * q[0] + m[(1, 0)] * q[1]);
        let u2 = g[1] * (m[(0, 1)] * q[0] + m[(1, 1)] * q[1] + q[2]);
        let (s, c) = q[2].sin_cos();
        out[0] = u1 * c - a * u2 * s;
        out[1] = u1 * s + a * u2 * c;
        out[2] = u2;
    })
}

/// Integrates `q' = field(t, q)` from `t = 0` to `cfg.t_end`.
pub fn integrate<F>(field: F, q0: &StateVector, cfg: &IntegratorConfig) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    cfg.validate()?;
    let seg = Segment {
        t0: 0.0,
        t_end: cfg.t_end,
        energy0: 0.0,
        guard_reference: q0,
    };
    Ok(seg.run(field, q0, cfg, None)?.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwitchingRun {
    pub trajectory: Trajectory,
    pub switch_time: f64,
}

/// Attitude gain `rho_theta > 0` until the position enters the ball of radius
/// `switch_radius`, then `rho_theta_after_switch < 0` for the rest of the horizon.
///
/// The crossing time is located by linear interpolation of `|X|` within the
/// step where it happens, and the state at that time is obtained by re-stepping.
pub fn run_switching(
    q0: &StateVector,
    gains: &GainConfig,
    cfg: &IntegratorConfig,
) -> Result<SwitchingRun> {
    gains.validate()?;
    cfg.validate()?;
    if q0.len() != 3 {
        return Err(Error::Dimension {
            what: "unicycle state",
            expected: 3,
            got: q0.len(),
        });
    }
    if !gains.switch_enabled {
        return Err(Error::argument(
            "switch_enabled",
            "switching must be enabled",
        ));
    }
    if !(gains.rho_pos < 0.0) {
        return Err(Error::argument(
            "rho_pos",
            "must be < 0 for the switching strategy",
        ));
    }
    if !(gains.rho_theta > 0.0) {
        return Err(Error::argument(
            "rho_theta",
            "must be > 0 before the switch",
        ));
    }
    if !(gains.rho_theta_after_switch < 0.0) {
        return Err(Error::argument("rho_theta_after_switch", "must be < 0"));
    }
    let radius = gains.switch_radius;
    let mut event = |q: &[f64]| q[0].hypot(q[1]) - radius;

    let before = unicycle_system(gains);
    let first = Segment {
        t0: 0.0,
        t_end: cfg.t_end,
        energy0: 0.0,
        guard_reference: q0,
    };
    let (mut traj, switch_time) = first.run(before, q0, cfg, Some(&mut event))?;
    let Some(switch_time) = switch_time else {
        return Err(Error::SwitchTimeout {
            t_end: cfg.t_end,
            partial: Box::new(traj),
        });
    };

    if switch_time < cfg.t_end {
        let after = unicycle_system(&GainConfig::mixed(
            gains.rho_pos,
            gains.rho_theta_after_switch,
        ));
        let q_switch = traj
            .final_state()
            .cloned()
            .expect("segment records its start");
        let second = Segment {
            t0: switch_time,
            t_end: cfg.t_end,
            energy0: traj.final_energy().unwrap_or(0.0),
            guard_reference: q0,
        };
        let rest = match second.run(after, &q_switch, cfg, None) {
            Ok((rest, _)) => rest,
            Err(e) => return Err(prepend_partial(e, &traj)),
        };
        traj.times.extend_from_slice(&rest.times[1..]);
        traj.states.extend_from_slice(&rest.states[1..]);
        traj.energy.extend_from_slice(&rest.energy[1..]);
    }
    Ok(SwitchingRun {
        trajectory: traj,
        switch_time,
    })
}

fn prepend_partial(err: Error, head: &Trajectory) -> Error {
    let join = |tail: Box<Trajectory>| {
        let mut t = head.clone();
        t.times
            .extend_from_slice(tail.times.get(1..).unwrap_or_default());
        t.states
            .extend_from_slice(tail.states.get(1..).unwrap_or_default());
        t.energy
            .extend_from_slice(tail.energy.get(1..).unwrap_or_default());
        Box::new(t)
    };
    match err {
        Error::Divergence {
            t,
            norm,
            limit,
            partial,
        } => Error::Divergence {
            t,
            norm,
            limit,
            partial: join(partial),
        },
        Error::StepFloor { t, h_min, partial } => Error::StepFloor {
            t,
            h_min,
            partial: join(partial),
        },
        other => other,
    }
}

struct Segment<'a> {
    t0: f64,
    t_end: f64,
    energy0: f64,
    guard_reference: &'a [f64],
}

type Event<'e> = &'e mut dyn FnMut(&[f64]) -> f64;

impl Segment<'_> {
    /// Integrates from `(t0, q0)`; stops early when `event` crosses from
    /// positive to non-positive and returns the crossing time.
    fn run<F>(
        &self,
        mut field: F,
        q0: &[f64],
        cfg: &IntegratorConfig,
        mut event: Option<Event<'_>>,
    ) -> Result<(Trajectory, Option<f64>)>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = q0.len();
        let mut ws = Workspace::new(n);
        let mut traj = Trajectory::default();

        let guarded = |q: &[f64]| match cfg.guard {
            GuardScope::Full => norm(q),
            GuardScope::Prefix(m) => norm(&q[..m.min(q.len())]),
        };
        let reference = guarded(self.guard_reference);
        let limit = if reference > 0.0 {
            cfg.guard_factor * reference
        } else {
            cfg.guard_factor
        };

        let mut t = self.t0;
        let mut y = q0.to_vec();
        let mut k1 = vec![0.0; n];
        field(t, &y, &mut k1);
        let mut acc = EnergyAccumulator::starting_at(t, &k1).with_value(self.energy0);
        traj.push(t, &y, acc.value);
        let mut last_recorded = t;

        let mut g_prev = match event.as_mut() {
            Some(g) => {
                let g0 = g(&y);
                if g0 <= 0.0 {
                    return Ok((traj, Some(t)));
                }
                g0
            }
            None => 0.0,
        };

        let mut y_new = vec![0.0; n];
        let mut k_new = vec![0.0; n];
        let mut h = match cfg.method {
            Method::Rk4Fixed { step } => step,
            Method::Rk45Adaptive { abs_tol, rel_tol } => {
                initial_step(&y, &k1, abs_tol, rel_tol, self.t_end - t)
            }
        };
        let mut step_index: u64 = 0;

        while t < self.t_end {
            // Advance by one accepted step.
            let (t_next, h_used) = match cfg.method {
                Method::Rk4Fixed { step } => {
                    step_index += 1;
                    let target = (self.t0 + step_index as f64 * step).min(self.t_end);
                    let target = if self.t_end - target < 1e-9 * step {
                        self.t_end
                    } else {
                        target
                    };
                    let hh = target - t;
                    rk4_step(&mut field, t, &y, hh, &k1, &mut y_new, &mut ws);
                    field(target, &y_new, &mut k_new);
                    (target, hh)
                }
                Method::Rk45Adaptive { abs_tol, rel_tol } => {
                    let h_min = 16.0 * f64::EPSILON * t.abs().max(1.0);
                    loop {
                        let hh = h.min(self.t_end - t);
                        let err = dp45_step(
                            &mut field, t, &y, hh, &k1, &mut y_new, &mut k_new, abs_tol, rel_tol,
                            &mut ws,
                        );
                        if err <= 1.0 {
                            let grow = if err == 0.0 {
                                5.0
                            } else {
                                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                            };
                            h = hh * grow;
                            let t_next = if self.t_end - (t + hh) <= h_min {
                                self.t_end
                            } else {
                                t + hh
                            };
                            break (t_next, hh);
                        }
                        h = hh * (0.9 * err.powf(-0.2)).clamp(0.2, 0.9);
                        if !err.is_finite() {
                            h = hh * 0.2;
                        }
                        if h < h_min {
                            return Err(Error::StepFloor {
                                t,
                                h_min,
                                partial: Box::new(traj),
                            });
                        }
                    }
                }
            };

            if let Some(g) = event.as_mut() {
                let g_new = g(&y_new);
                if g_new <= 0.0 {
                    let frac = g_prev / (g_prev - g_new);
                    let h_ev = frac * h_used;
                    if h_ev <= 1e-12 * h_used.max(f64::MIN_POSITIVE) {
                        // crossing sits on the previous sample
                        return Ok((traj, Some(t)));
                    }
                    let (t_ev, y_ev) = if frac >= 1.0 {
                        (t_next, y_new.clone())
                    } else {
                        let mut y_ev = vec![0.0; n];
                        match cfg.method {
                            Method::Rk4Fixed { .. } => {
                                rk4_step(&mut field, t, &y, h_ev, &k1, &mut y_ev, &mut ws)
                            }
                            Method::Rk45Adaptive { abs_tol, rel_tol } => {
                                let mut k_ev = vec![0.0; n];
                                dp45_step(
                                    &mut field, t, &y, h_ev, &k1, &mut y_ev, &mut k_ev, abs_tol,
                                    rel_tol, &mut ws,
                                );
                            }
                        }
                        (t + h_ev, y_ev)
                    };
                    field(t_ev, &y_ev, &mut k_new);
                    acc = acc.advance(norm_sq(&k_new), t_ev - t);
                    traj.push(t_ev, &y_ev, acc.value);
                    return Ok((traj, Some(t_ev)));
                }
                g_prev = g_new;
            }

            acc = acc.advance(norm_sq(&k_new), t_next - t);
            t = t_next;
            std::mem::swap(&mut y, &mut y_new);
            std::mem::swap(&mut k1, &mut k_new);

            let size = guarded(&y);
            let finite = y.iter().all(|v| v.is_finite());
            if !finite || size > limit {
                traj.push(t, &y, acc.value);
                return Err(Error::Divergence {
                    t,
                    norm: size,
                    limit,
                    partial: Box::new(traj),
                });
            }

            let due = match cfg.output_interval {
                None => true,
                Some(dt) => t - last_recorded >= dt * (1.0 - 1e-9),
            };
            if due || t >= self.t_end {
                traj.push(t, &y, acc.value);
                last_recorded = t;
            }
        }
        Ok((traj, None))
    }
}

struct Workspace {
    k: [Vec<f64>; 6],
    tmp: Vec<f64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            k: std::array::from_fn(|_| vec![0.0; n]),
            tmp: vec![0.0; n],
        }
    }
}

fn rk4_step<F>(
    f: &mut F,
    t: f64,
    y: &[f64],
    h: f64,
    k1: &[f64],
    out: &mut [f64],
    ws: &mut Workspace,
) where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let [k2, k3, k4, ..] = &mut ws.k;
    let tmp = &mut ws.tmp;
    for i in 0..y.len() {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    f(t + 0.5 * h, tmp, k2);
    for i in 0..y.len() {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    f(t + 0.5 * h, tmp, k3);
    for i in 0..y.len() {
        tmp[i] = y[i] + h * k3[i];
    }
    f(t + h, tmp, k4);
    for i in 0..y.len() {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b* (error weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// One Dormand–Prince step; writes the 5th-order solution and `f` at it, and
/// returns the scaled RMS error estimate.
#[allow(clippy::too_many_arguments)]
fn dp45_step<F>(
    f: &mut F,
    t: f64,
    y: &[f64],
    h: f64,
    k1: &[f64],
    out: &mut [f64],
    k7: &mut [f64],
    abs_tol: f64,
    rel_tol: f64,
    ws: &mut Workspace,
) -> f64
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y.len();
    let [k2, k3, k4, k5, k6, _] = &mut ws.k;
    let tmp = &mut ws.tmp;
    for i in 0..n {
        tmp[i] = y[i] + h * A21 * k1[i];
    }
    f(t + C2 * h, tmp, k2);
    for i in 0..n {
        tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    }
    f(t + C3 * h, tmp, k3);
    for i in 0..n {
        tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    }
    f(t + C4 * h, tmp, k4);
    for i in 0..n {
        tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    }
    f(t + C5 * h, tmp, k5);
    for i in 0..n {
        tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    }
    f(t + h, tmp, k6);
    for i in 0..n {
        out[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    }
    f(t + h, out, k7);
    let mut acc = 0.0;
    for i in 0..n {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = abs_tol + rel_tol * y[i].abs().max(out[i].abs());
        acc += (e / scale).powi(2);
    }
    (acc / n as f64).sqrt()
}

fn initial_step(y: &[f64], f0: &[f64], abs_tol: f64, rel_tol: f64, span: f64) -> f64 {
    let rms = |v: &[f64]| {
        let s: f64 = v
            .iter()
            .zip(y)
            .map(|(a, yi)| (a / (abs_tol + rel_tol * yi.abs())).powi(2))
            .sum();
        (s / v.len() as f64).sqrt()
    };
    let d0 = rms(y);
    let d1 = rms(f0);
    let h = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    h.min(span).max(1e-12)
}
