//! Pseudo-kinetic-energy feedback for driftless systems `q' = S(q) u`.
//!
//! The controller `u = rho S(q)' q` makes `|q|` non-increasing whenever the
//! columns of `S` are orthonormal, and the energy `int |q'|^2 dt` it spends is
//! tied to the state by `(|rho|/2)(|q(0)|^2 - |q(t)|^2)`. For the unicycle the
//! closed loop has Bessel-function solutions in a frame that rotates with the
//! robot; the crate evaluates them, integrates the closed loop independently,
//! and checks one against the other.
//!
//! * [`driftless`]: state types, vector-field sets, controller, energy.
//! * [`simulate`]: RK4 / Dormand-Prince integration, mixed and switching gains.
//! * [`specfun`]: `J0, J1, Y0, Y1` with error estimates.
//! * [`closedform`]: rotating frame, constant fitting, closed-form trajectories.
//! * [`analysis`]: stability certificates, limits, the `c2 = 0` feasibility scan.
//! * [`io`], [`cli`]: trajectory files and the `driftless-pk` command.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod closedform;
pub mod driftless;
pub mod error;
pub mod io;
pub mod simulate;
pub mod specfun;

pub use nalgebra;
