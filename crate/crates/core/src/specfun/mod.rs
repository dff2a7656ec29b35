//! Bessel functions of the first and second kind for orders -1, 0 and 1.
//!
//! For `|x| <= SERIES_LIMIT` the ascending series are summed in double-double
//! arithmetic, which absorbs the cancellation between large alternating terms
//! (the largest J_0 term near x = 15 is about 1e5). Above the seam the Hankel
//! asymptotic expansion is used, truncated at its smallest term; at x = 15
//! that term is about 3e-15.
//!
//! Arguments are limited to `|x| <= MAX_ARGUMENT`.

mod dd;

use std::f64::consts::{FRAC_1_PI, FRAC_1_SQRT_2, FRAC_2_PI, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use dd::Dd;

/// Switch from the ascending series to the Hankel expansion.
pub const SERIES_LIMIT: f64 = 15.0;

/// Largest supported `|x|`.
pub const MAX_ARGUMENT: f64 = 50.0;

/// Upper edge of the window accepted by [`small_arg_limit`].
pub const SMALL_ARG_WINDOW: f64 = 0.1;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselOrder {
    MinusOne,
    Zero,
    One,
}

impl BesselOrder {
    pub fn as_i32(self) -> i32 {
        match self {
            BesselOrder::MinusOne => -1,
            BesselOrder::Zero => 0,
            BesselOrder::One => 1,
        }
    }
}

impl TryFrom<i32> for BesselOrder {
    type Error = Error;

    fn try_from(n: i32) -> Result<Self> {
        match n {
            -1 => Ok(BesselOrder::MinusOne),
            0 => Ok(BesselOrder::Zero),
            1 => Ok(BesselOrder::One),
            _ => Err(Error::argument(
                "order",
                format!("only -1, 0, 1 are supported, got {n}"),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub est_abs_error: f64,
}

impl EvalResult {
    fn negate(self) -> Self {
        EvalResult {
            value: -self.value,
            est_abs_error: self.est_abs_error,
        }
    }
}

/// `J_0`, `J_1`, `Y_0`, `Y_1` at one positive argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselSet {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
}

/// First-kind Bessel function `J_n(x)`; `J_{-1} = -J_1`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<EvalResult> {
    check_range("bessel_j", x)?;
    let ax = x.abs();
    let (j0, j1) = if ax <= SERIES_LIMIT {
        let s = Series::sum(ax, false);
        (s.j0(), s.j1(ax))
    } else {
        let h = Hankel::new(ax);
        (h.j(0), h.j(1))
    };
    // J_0 is even, J_1 is odd.
    let j1 = if x < 0.0 { j1.negate() } else { j1 };
    Ok(match order {
        BesselOrder::Zero => j0,
        BesselOrder::One => j1,
        BesselOrder::MinusOne => j1.negate(),
    })
}

/// Second-kind Bessel function `Y_n(x)` for `x > 0`; `Y_{-1} = -Y_1`.
pub fn bessel_y(order: BesselOrder, x: f64) -> Result<EvalResult> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "bessel_y",
            x,
        });
    }
    check_range("bessel_y", x)?;
    let (y0, y1) = if x <= SERIES_LIMIT {
        let s = Series::sum(x, true);
        (s.y0(x), s.y1(x))
    } else {
        let h = Hankel::new(x);
        (h.y(0), h.y(1))
    };
    Ok(match order {
        BesselOrder::Zero => y0,
        BesselOrder::One => y1,
        BesselOrder::MinusOne => y1.negate(),
    })
}

/// All four functions at once, sharing one series or expansion. Requires `x > 0`.
pub fn bessel_set(x: f64) -> Result<BesselSet> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "bessel_set",
            x,
        });
    }
    check_range("bessel_set", x)?;
    Ok(if x <= SERIES_LIMIT {
        let s = Series::sum(x, true);
        BesselSet {
            j0: s.j0().value,
            j1: s.j1(x).value,
            y0: s.y0(x).value,
            y1: s.y1(x).value,
        }
    } else {
        let h = Hankel::new(x);
        BesselSet {
            j0: h.j(0).value,
            j1: h.j(1).value,
            y0: h.y(0).value,
            y1: h.y(1).value,
        }
    })
}

fn check_range(function: &'static str, x: f64) -> Result<()> {
    if x.is_nan() {
        return Err(Error::Domain { function, x });
    }
    if x.abs() > MAX_ARGUMENT {
        return Err(Error::Range {
            function,
            x: x.abs(),
            limit: MAX_ARGUMENT,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BesselKind {
    J,
    Y,
}

/// Leading-order behaviour near the origin:
/// `J_n(x) ~ (x/2)^n / n!`, `Y_0(x) ~ (2/pi)(ln(x/2) + gamma)`,
/// `Y_n(x) ~ -(2/x)^n (n-1)! / pi` for `n >= 1`.
pub fn small_arg_limit(kind: BesselKind, n: u32, x: f64) -> Result<f64> {
    let out_of_window = |x: f64| Error::Range {
        function: "small_arg_limit",
        x: x.abs(),
        limit: SMALL_ARG_WINDOW,
    };
    match kind {
        BesselKind::J => {
            if !(x.abs() <= SMALL_ARG_WINDOW) {
                return Err(out_of_window(x));
            }
            Ok((0.5 * x).powi(n as i32) / factorial(n))
        }
        BesselKind::Y => {
            if !(x > 0.0) {
                return Err(Error::Domain {
                    function: "small_arg_limit",
                    x,
                });
            }
            if x > SMALL_ARG_WINDOW {
                return Err(out_of_window(x));
            }
            if n == 0 {
                Ok(FRAC_2_PI * ((0.5 * x).ln() + EULER_GAMMA))
            } else {
                Ok(-(2.0 / x).powi(n as i32) * factorial(n - 1) / PI)
            }
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Partial sums of the ascending series with `t_k = (-x^2/4)^k / (k!)^2`:
/// `s0 = sum t_k`, `s1 = sum t_k / (k+1)`,
/// `h0 = sum_{k>=1} H_k t_k`, `h1 = sum t_k (H_k + H_{k+1}) / (k+1)`.
struct Series {
    s0: Dd,
    s1: Dd,
    h0: Dd,
    h1: Dd,
    /// Largest `|t_k|` seen; bounds the double-double rounding.
    peak: f64,
}

impl Series {
    const MAX_TERMS: usize = 200;

    fn sum(x: f64, with_harmonic: bool) -> Series {
        let q = -Dd::square(x).scale(0.25);
        let mut t = Dd::ONE;
        let mut s = Series {
            s0: Dd::ZERO,
            s1: Dd::ZERO,
            h0: Dd::ZERO,
            h1: Dd::ZERO,
            peak: 1.0,
        };
        // harmonic numbers H_k and H_{k+1}
        let mut hk = Dd::ZERO;
        for k in 0..Self::MAX_TERMS {
            let kf = k as f64;
            if k > 0 {
                t = (t * q).div_f64(kf * kf);
            }
            let hk1 = hk + Dd::recip(kf + 1.0);
            let t_over = t.div_f64(kf + 1.0);
            s.s0 = s.s0 + t;
            s.s1 = s.s1 + t_over;
            if with_harmonic {
                s.h0 = s.h0 + t * hk;
                s.h1 = s.h1 + t_over * (hk + hk1);
            }
            s.peak = s.peak.max(t.abs_hi());
            if k > 0 && t.abs_hi() * (1.0 + 2.0 * hk1.hi) < 1e-34 {
                break;
            }
            hk = hk1;
        }
        s
    }

    fn rounding(&self, value: f64) -> f64 {
        f64::EPSILON * value.abs() + 1e-31 * self.peak
    }

    fn j0(&self) -> EvalResult {
        let value = self.s0.to_f64();
        EvalResult {
            value,
            est_abs_error: self.rounding(value),
        }
    }

    fn j1(&self, x: f64) -> EvalResult {
        let value = self.s1.scale(0.5 * x).to_f64();
        EvalResult {
            value,
            est_abs_error: self.rounding(value),
        }
    }

    fn log_term(x: f64) -> f64 {
        (0.5 * x).ln() + EULER_GAMMA
    }

    fn y0(&self, x: f64) -> EvalResult {
        let a = FRAC_2_PI * Self::log_term(x) * self.s0.to_f64();
        let b = -FRAC_2_PI * self.h0.to_f64();
        let value = a + b;
        EvalResult {
            value,
            est_abs_error: 4.0 * f64::EPSILON * (a.abs() + b.abs()) + 1e-31 * self.peak,
        }
    }

    fn y1(&self, x: f64) -> EvalResult {
        let pole = -FRAC_2_PI / x;
        let a = FRAC_2_PI * Self::log_term(x) * self.s1.scale(0.5 * x).to_f64();
        let b = -0.5 * x * FRAC_1_PI * self.h1.to_f64();
        let value = pole + a + b;
        EvalResult {
            value,
            est_abs_error: 4.0 * f64::EPSILON * (pole.abs() + a.abs() + b.abs())
                + 1e-31 * self.peak,
        }
    }
}

/// Hankel expansion `J_n = A (P cos chi - Q sin chi)`, `Y_n = A (P sin chi + Q cos chi)`,
/// `A = sqrt(2 / (pi x))`, `chi = x - (n/2 + 1/4) pi`.
struct Hankel {
    amplitude: f64,
    sin_x: f64,
    cos_x: f64,
    p: [f64; 2],
    q: [f64; 2],
    tail: [f64; 2],
}

impl Hankel {
    const MAX_TERMS: usize = 120;

    fn new(x: f64) -> Hankel {
        let (sin_x, cos_x) = x.sin_cos();
        let mut h = Hankel {
            amplitude: (FRAC_2_PI / x).sqrt(),
            sin_x,
            cos_x,
            p: [0.0; 2],
            q: [0.0; 2],
            tail: [0.0; 2],
        };
        for n in 0..2 {
            let (p, q, tail) = Self::pq(n as f64, x);
            h.p[n] = p;
            h.q[n] = q;
            h.tail[n] = tail;
        }
        h
    }

    /// Sums `P`, `Q` up to the smallest term; returns the first omitted term as tail.
    fn pq(nu: f64, x: f64) -> (f64, f64, f64) {
        let mu = 4.0 * nu * nu;
        let mut p: f64 = 0.0;
        let mut q: f64 = 0.0;
        // a_k(nu) / x^k with alternating sign folded in per P/Q convention
        let mut term = 1.0;
        let mut last = f64::INFINITY;
        for k in 0..Self::MAX_TERMS {
            if k > 0 {
                let odd = (2 * k - 1) as f64;
                term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
            }
            if term.abs() >= last || term.abs() < 1e-18 * (p.abs() + q.abs()) {
                return (p, q, term.abs());
            }
            last = term.abs();
            // k = 0,1,2,3,... -> P +, Q +, P -, Q -, ...
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p += sign * term;
            } else {
                q += sign * term;
            }
        }
        (p, q, last)
    }

    /// `(cos chi, sin chi)` for order `n`, from `sin x`, `cos x` directly.
    fn phase(&self, n: usize) -> (f64, f64) {
        let (s, c) = (self.sin_x, self.cos_x);
        match n {
            0 => ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2),
            _ => ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2),
        }
    }

    fn error(&self, n: usize, value: f64) -> f64 {
        self.amplitude * self.tail[n] + 4.0 * f64::EPSILON * (value.abs() + self.amplitude)
    }

    fn j(&self, n: usize) -> EvalResult {
        let (c, s) = self.phase(n);
        let value = self.amplitude * (self.p[n] * c - self.q[n] * s);
        EvalResult {
            value,
            est_abs_error: self.error(n, value),
        }
    }

    fn y(&self, n: usize) -> EvalResult {
        let (c, s) = self.phase(n);
        let value = self.amplitude * (self.p[n] * s + self.q[n] * c);
        EvalResult {
            value,
            est_abs_error: self.error(n, value),
        }
    }
}
