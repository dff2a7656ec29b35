//! Driftless systems `q' = S(q) u` and the pseudo-kinetic-energy controller.
//!
//! With orthonormal columns `S_i`, the feedback `u_i = rho * q' S_i` turns the
//! closed loop into `q' = rho * P(q) q` where `P = sum S_i S_i'` is an
//! orthogonal projector. For `rho < 0` the norm of `q` can then only decrease
//! and the accumulated energy `int |q'|^2 dt` equals `(rho / 2)(|q(t)|^2 - |q(0)|^2)`.

use std::ops::Deref;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Configuration of a driftless system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector(Vec<f64>);

impl StateVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::argument(
                "state",
                "state vector must have at least one entry",
            ));
        }
        if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::argument(
                "state",
                format!("entry {i} is not finite ({})", entries[i]),
            ));
        }
        Ok(StateVector(entries))
    }

    pub fn zeros(n: usize) -> Self {
        StateVector(vec![0.0; n.max(1)])
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<f64>) -> Self {
        StateVector(entries)
    }
}

impl Deref for StateVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl<const N: usize> TryFrom<[f64; N]> for StateVector {
    type Error = Error;

    fn try_from(value: [f64; N]) -> Result<Self> {
        StateVector::new(value.to_vec())
    }
}

/// Control inputs, one per vector field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ControlVector(Vec<f64>);

impl ControlVector {
    pub fn new(entries: Vec<f64>) -> Self {
        ControlVector(entries)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ControlVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A collection of `k` vector fields on an `n`-dimensional configuration space.
pub trait VectorFieldSet {
    fn state_dim(&self) -> usize;

    fn input_dim(&self) -> usize;

    /// `S(q)` as an `n x k` matrix. Callers guarantee `q.len() == state_dim()`.
    fn matrix(&self, q: &[f64]) -> DMatrix<f64>;
}

impl<T: VectorFieldSet + ?Sized> VectorFieldSet for &T {
    fn state_dim(&self) -> usize {
        (**self).state_dim()
    }

    fn input_dim(&self) -> usize {
        (**self).input_dim()
    }

    fn matrix(&self, q: &[f64]) -> DMatrix<f64> {
        (**self).matrix(q)
    }
}

/// Unicycle kinematics, `q = (x_c, y_c, theta)`:
/// `S_1 = (cos theta, sin theta, 0)`, `S_2 = (0, 0, 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct UnicycleFields;

impl VectorFieldSet for UnicycleFields {
    fn state_dim(&self) -> usize {
        3
    }

    fn input_dim(&self) -> usize {
        2
    }

    fn matrix(&self, q: &[f64]) -> DMatrix<f64> {
        let (s, c) = q[2].sin_cos();
        DMatrix::from_row_slice(3, 2, &[c, 0.0, s, 0.0, 0.0, 1.0])
    }
}

/// Kinematics of a point at distance `a` ahead of the wheel base-line.
///
/// The columns stay orthogonal but the second one has norm `sqrt(1 + a^2)`,
/// so the family is orthonormal only at `a = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OffsetUnicycleFields {
    a: f64,
}

impl OffsetUnicycleFields {
    pub fn new(a: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::argument(
                "a",
                format!("offset must be finite and >= 0, got {a}"),
            ));
        }
        Ok(OffsetUnicycleFields { a })
    }

    pub fn offset(&self) -> f64 {
        self.a
    }
}

impl VectorFieldSet for OffsetUnicycleFields {
    fn state_dim(&self) -> usize {
        3
    }

    fn input_dim(&self) -> usize {
        2
    }

    fn matrix(&self, q: &[f64]) -> DMatrix<f64> {
        let (s, c) = q[2].sin_cos();
        let a = self.a;
        DMatrix::from_row_slice(3, 2, &[c, -a * s, s, a * c, 0.0, 1.0])
    }
}

/// State-independent fields given by a fixed matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantFields(pub DMatrix<f64>);

impl VectorFieldSet for ConstantFields {
    fn state_dim(&self) -> usize {
        self.0.nrows()
    }

    fn input_dim(&self) -> usize {
        self.0.ncols()
    }

    fn matrix(&self, _q: &[f64]) -> DMatrix<f64> {
        self.0.clone()
    }
}

/// Fields defined by a closure.
pub struct FnFields<F> {
    n: usize,
    k: usize,
    f: F,
}

impl<F> FnFields<F>
where
    F: Fn(&[f64]) -> DMatrix<f64>,
{
    pub fn new(n: usize, k: usize, f: F) -> Self {
        FnFields { n, k, f }
    }
}

impl<F> VectorFieldSet for FnFields<F>
where
    F: Fn(&[f64]) -> DMatrix<f64>,
{
    fn state_dim(&self) -> usize {
        self.n
    }

    fn input_dim(&self) -> usize {
        self.k
    }

    fn matrix(&self, q: &[f64]) -> DMatrix<f64> {
        (self.f)(q)
    }
}

fn checked_matrix(fields: &impl VectorFieldSet, q: &[f64]) -> Result<DMatrix<f64>> {
    let n = fields.state_dim();
    let k = fields.input_dim();
    if q.len() != n {
        return Err(Error::Dimension {
            what: "state",
            expected: n,
            got: q.len(),
        });
    }
    let s = fields.matrix(q);
    if s.nrows() != n {
        return Err(Error::Dimension {
            what: "field matrix rows",
            expected: n,
            got: s.nrows(),
        });
    }
    if s.ncols() != k {
        return Err(Error::Dimension {
            what: "field matrix columns",
            expected: k,
            got: s.ncols(),
        });
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleDeviation {
    /// `max_i | |S_i| - 1 |`
    pub norm: f64,
    /// `max_{i != j} |S_i . S_j|`
    pub orthogonality: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub samples: Vec<SampleDeviation>,
    pub max_norm_deviation: f64,
    pub max_orthogonality_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks that the columns of `S(q)` are orthonormal at every sample.
pub fn validate_fields(
    fields: &impl VectorFieldSet,
    samples: &[StateVector],
    tol: f64,
) -> Result<ValidationReport> {
    if samples.is_empty() {
        return Err(Error::argument(
            "samples",
            "at least one sample state is required",
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::argument("tol", format!("must be > 0, got {tol}")));
    }
    let mut out = Vec::with_capacity(samples.len());
    for q in samples {
        let s = checked_matrix(fields, q)?;
        let gram = s.transpose() * &s;
        let mut dev = SampleDeviation {
            norm: 0.0,
            orthogonality: 0.0,
        };
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                if i == j {
                    dev.norm = dev.norm.max((gram[(i, i)].sqrt() - 1.0).abs());
                } else {
                    dev.orthogonality = dev.orthogonality.max(gram[(i, j)].abs());
                }
            }
        }
        out.push(dev);
    }
    let max_norm_deviation = out.iter().map(|d| d.norm).fold(0.0, f64::max);
    let max_orthogonality_deviation = out.iter().map(|d| d.orthogonality).fold(0.0, f64::max);
    Ok(ValidationReport {
        passed: max_norm_deviation <= tol && max_orthogonality_deviation <= tol,
        samples: out,
        max_norm_deviation,
        max_orthogonality_deviation,
        tol,
    })
}

/// `u_i = rho * q' S_i(q)`.
pub fn pk_controller(q: &[f64], fields: &impl VectorFieldSet, rho: f64) -> Result<ControlVector> {
    let gains = vec![rho; fields.input_dim()];
    pk_controller_with_gains(q, fields, &gains)
}

/// Per-column gains `u_i = rho_i * q' S_i(q)`; equal gains give [`pk_controller`].
pub fn pk_controller_with_gains(
    q: &[f64],
    fields: &impl VectorFieldSet,
    gains: &[f64],
) -> Result<ControlVector> {
    let s = checked_matrix(fields, q)?;
    if gains.len() != s.ncols() {
        return Err(Error::Dimension {
            what: "gains",
            expected: s.ncols(),
            got: gains.len(),
        });
    }
    let u = s
        .column_iter()
        .zip(gains)
        .map(|(col, rho)| rho * col.iter().zip(q).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    Ok(ControlVector(u))
}

/// `q' = S(q) u(q)` under [`pk_controller`].
pub fn closed_loop_field(q: &[f64], fields: &impl VectorFieldSet, rho: f64) -> Result<StateVector> {
    let gains = vec![rho; fields.input_dim()];
    closed_loop_field_with_gains(q, fields, &gains)
}

pub fn closed_loop_field_with_gains(
    q: &[f64],
    fields: &impl VectorFieldSet,
    gains: &[f64],
) -> Result<StateVector> {
    let u = pk_controller_with_gains(q, fields, gains)?;
    let s = fields.matrix(q);
    let qdot = &s * nalgebra::DVector::from_column_slice(&u);
    Ok(StateVector(qdot.iter().copied().collect()))
}

/// Running value of `int_0^t |q'|^2 dt`, integrated with the trapezoidal rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyAccumulator {
    pub value: f64,
    pub last_time: f64,
    /// `|q'|^2` at `last_time`, when known.
    pub last_integrand: Option<f64>,
}

impl Default for EnergyAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl EnergyAccumulator {
    pub fn new() -> Self {
        EnergyAccumulator {
            value: 0.0,
            last_time: 0.0,
            last_integrand: None,
        }
    }

    /// Accumulator at `t0` with the integrand `|qdot0|^2` already known.
    pub fn starting_at(t0: f64, qdot0: &[f64]) -> Self {
        EnergyAccumulator {
            value: 0.0,
            last_time: t0,
            last_integrand: Some(norm_sq(qdot0)),
        }
    }

    pub(crate) fn with_value(mut self, value: f64) -> Self {
        self.value = value;
        self
    }

    pub(crate) fn advance(self, integrand: f64, dt: f64) -> Self {
        let left = self.last_integrand.unwrap_or(integrand);
        EnergyAccumulator {
            value: self.value + 0.5 * dt * (left + integrand),
            last_time: self.last_time + dt,
            last_integrand: Some(integrand),
        }
    }
}

/// Adds the interval `[last_time, last_time + dt]` with `|qdot|^2` at its right end.
///
/// Without a stored left-end integrand the interval is integrated with the
/// right-end value alone.
pub fn energy_step(acc: EnergyAccumulator, qdot: &[f64], dt: f64) -> Result<EnergyAccumulator> {
    if !(dt > 0.0) {
        return Err(Error::argument("dt", format!("must be > 0, got {dt}")));
    }
    Ok(acc.advance(norm_sq(qdot), dt))
}

/// Right-hand side of the energy identity, `(rho / 2)(|q(t)|^2 - |q(0)|^2)`.
pub fn energy_identity(q0: &[f64], qt: &[f64], rho: f64) -> f64 {
    0.5 * rho * (norm_sq(qt) - norm_sq(q0))
}

pub(crate) fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    norm_sq(v).sqrt()
}
