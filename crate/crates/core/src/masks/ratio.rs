//! Ratio kernels behind the sinh and exponential masks.
//!
//! Both ratios are `0/0` at a vanishing shape parameter and the sinh ratio
//! becomes a sine ratio with poles when `λ < 0`. Small arguments switch to
//! a truncated Taylor series; large ones use an exponentially scaled form.

use serde::{Deserialize, Serialize};

use crate::error::{NuccError, Result};

/// Above this argument the overflow-free exponential forms are used.
const LARGE_ARG: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioKernelConfig {
    /// Series branch is taken when `|λ| h²` (or `|γ| h`) is below this.
    pub series_threshold: f64,
    /// Minimum `|sin(θ h)|` accepted on the trigonometric branch.
    pub sin_denominator_guard: f64,
    /// Cap on `|λ|`; `|γ|` for the exponential variant is capped at its root.
    pub lambda_cap: f64,
}

impl Default for RatioKernelConfig {
    fn default() -> Self {
        Self {
            series_threshold: 1e-6,
            sin_denominator_guard: 1e-10,
            lambda_cap: 1e6,
        }
    }
}

impl RatioKernelConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = [
            self.series_threshold,
            self.sin_denominator_guard,
            self.lambda_cap,
        ]
        .iter()
        .all(|v| v.is_finite() && *v > 0.0);
        if ok {
            Ok(())
        } else {
            Err(NuccError::InvalidConfig(
                "ratio kernel thresholds must be positive and finite".into(),
            ))
        }
    }
}

fn check_inputs(name: &str, param: f64, h: f64, c: f64) -> Result<()> {
    if !param.is_finite() || !h.is_finite() || h <= 0.0 || !(0.0..=1.0).contains(&c) {
        return Err(NuccError::ParameterOutOfRange(format!(
            "{name}(param={param}, h={h}, c={c})"
        )));
    }
    Ok(())
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(NuccError::ParameterOutOfRange(format!("{name} overflowed")))
    }
}

/// `sinh(c γ h) / sinh(γ h)` with `γ = √λ`.
///
/// Negative `λ` gives `sin(c θ h) / sin(θ h)` with `θ = √(-λ)`; `λ = 0` gives `c`.
pub fn sinh_ratio(lambda: f64, h: f64, c: f64, cfg: &RatioKernelConfig) -> Result<f64> {
    check_inputs("sinh_ratio", lambda, h, c)?;
    let x2 = lambda * h * h;
    if x2.abs() < cfg.series_threshold {
        let c2 = c * c;
        let first = c * (c2 - 1.0) / 6.0;
        let second = c * (c2 - 1.0) * (3.0 * c2 - 7.0) / 360.0;
        return Ok(c + x2 * (first + x2 * second));
    }
    if lambda > 0.0 {
        let x = lambda.sqrt() * h;
        let r = if x > LARGE_ARG {
            ((c - 1.0) * x).exp() * (-(-2.0 * c * x).exp_m1()) / (-(-2.0 * x).exp_m1())
        } else {
            (c * x).sinh() / x.sinh()
        };
        finite("sinh_ratio", r)
    } else {
        let x = (-lambda).sqrt() * h;
        let s = x.sin();
        if s.abs() < cfg.sin_denominator_guard {
            return Err(NuccError::TrigonometricSingularity { arg: x });
        }
        finite("sinh_ratio", (c * x).sin() / s)
    }
}

/// `(e^{c γ h} - 1) / (e^{γ h} - 1)`, with limit `c` at `γ = 0`.
pub fn exp_ratio(gamma: f64, h: f64, c: f64, cfg: &RatioKernelConfig) -> Result<f64> {
    check_inputs("exp_ratio", gamma, h, c)?;
    let y = gamma * h;
    if y.abs() < cfg.series_threshold {
        return Ok(c + y * (c * (c - 1.0) / 2.0 + y * c * (c - 1.0) * (2.0 * c - 1.0) / 12.0));
    }
    let r = if y > LARGE_ARG {
        ((c - 1.0) * y).exp() * (-(-c * y).exp_m1()) / (-(-y).exp_m1())
    } else {
        (c * y).exp_m1() / y.exp_m1()
    };
    finite("exp_ratio", r)
}
