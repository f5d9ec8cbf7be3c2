//! Approximation-order tables and the smoothness probe.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::fit::order_estimate;
use crate::error::{NuccError, Result};
use crate::seq::{forward_difference, second_difference, Boundary, GridSpec, LevelSequence};
use crate::subdivision::{refine_step, RefinementState, SchemeConfig, Variant};

/// Scaled one-dimensional Franke function.
pub fn franke_1d(t: f64) -> f64 {
    let s = 9.0 * t / 8.0;
    0.75 * (-(s - 2.0).powi(2) / 4.0).exp()
        + 0.75 * (-(s + 1.0).powi(2) / 49.0).exp()
        + 0.5 * (-(s - 7.0).powi(2) / 4.0).exp()
        - 0.2 * (-(s - 4.0).powi(2)).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderTableRow {
    pub k0: u32,
    pub max_error: f64,
    /// `log2(E_{k0-1} / E_{k0})`; absent on the first row.
    pub est_order: Option<f64>,
}

impl OrderTableRow {
    pub fn density(&self) -> f64 {
        GridSpec::new(0, self.k0).spacing()
    }
}

/// Max error of the scheme against `f` for each initial density `2^{-k0}`.
///
/// For each `k0` the samples `f(2^{-k0}(n - 1/2))` covering `domain` are
/// refined `eval_level` times with `scheme_cfg.at_density(k0)` and open ends.
/// The error is read at the final grid, skipping `2 * eval_level` indices on
/// each side.
pub fn order_table(
    f: impl Fn(f64) -> f64,
    scheme_cfg: &SchemeConfig,
    k0_range: RangeInclusive<u32>,
    domain: (f64, f64),
    eval_level: u32,
) -> Result<Vec<OrderTableRow>> {
    if k0_range.is_empty() {
        return Err(NuccError::InvalidConfig("empty k0 range".into()));
    }
    if eval_level == 0 {
        return Err(NuccError::InvalidConfig(
            "eval_level must be positive".into(),
        ));
    }
    let (lo, hi) = domain;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(NuccError::DomainTooSmall(format!("[{lo}, {hi}]")));
    }
    let skip = 2 * eval_level as usize;
    let mut rows: Vec<OrderTableRow> = Vec::new();
    for k0 in k0_range {
        let scale = GridSpec::new(0, k0).spacing().recip();
        let n_lo = (lo * scale + 0.5).ceil() as i64;
        let n_hi = (hi * scale + 0.5).floor() as i64;
        if n_hi - n_lo + 1 < 4 {
            return Err(NuccError::DomainTooSmall(format!(
                "fewer than 4 samples in [{lo}, {hi}] at k0 = {k0}"
            )));
        }
        let cfg = scheme_cfg
            .at_density(k0)
            .with_boundary(Boundary::ReplicateEnd);
        let f0 = LevelSequence::sample(&f, n_lo..=n_hi, k0, Boundary::ReplicateEnd)?;
        let mut state = RefinementState::initial(f0, &cfg)?;
        for _ in 0..eval_level {
            state = refine_step(&state, &cfg)?;
        }
        let fin = &state.f;
        if fin.len() <= 2 * skip {
            return Err(NuccError::DomainTooSmall(format!(
                "boundary exclusion leaves no points at k0 = {k0}"
            )));
        }
        let max_error = fin
            .iter_points()
            .skip(skip)
            .take(fin.len() - 2 * skip)
            .map(|(_, t, v)| (v - f(t)).abs())
            .fold(0.0, f64::max);
        if !max_error.is_finite() {
            return Err(NuccError::ParameterOutOfRange(format!(
                "non-finite error at k0 = {k0}"
            )));
        }
        let est_order = rows.last().map(|p| order_estimate(p.max_error, max_error));
        rows.push(OrderTableRow {
            k0,
            max_error,
            est_order,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessLevel {
    pub level: u32,
    /// `‖∇f^k‖_∞`.
    pub max_first_difference: f64,
    /// `‖∇f^k - hold(∇f^{k-1})‖_∞`, each coarse difference repeated twice.
    pub increment: Option<f64>,
    /// `increment_k / increment_{k-1}`.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub levels: Vec<SmoothnessLevel>,
    /// `(t, f^L)` at the final level.
    pub limit: Vec<[f64; 2]>,
    /// `(t, ∇f^L)` at midpoints of the final grid.
    pub first_derivative: Vec<[f64; 2]>,
    /// `(t, Δf^L)` at the final grid.
    pub second_derivative: Vec<[f64; 2]>,
}

const PROBE_HALF_WIDTH: i64 = 8;

/// Refines the Kronecker delta and tracks its first divided differences.
///
/// The probe runs with `|ε| = 1` on a periodic window wide enough that the
/// delta never meets its periodic copies, and uses the sinh-ratio masks at
/// every rule (the variant switch is disabled).
pub fn smoothness_probe(scheme_cfg: &SchemeConfig, levels: u32) -> Result<SmoothnessReport> {
    probe_from(scheme_cfg, levels, |j| if j == 0 { 1.0 } else { 0.0 })
}

pub(crate) fn probe_from(
    scheme_cfg: &SchemeConfig,
    levels: u32,
    init: impl Fn(i64) -> f64,
) -> Result<SmoothnessReport> {
    if levels < 4 {
        return Err(NuccError::InvalidConfig(
            "smoothness probe needs at least 4 levels".into(),
        ));
    }
    let mut cfg = scheme_cfg.with_boundary(Boundary::Periodic);
    cfg.eps.magnitude = 1.0;
    cfg.variant = Variant::Primary;
    cfg.density_scaled = false;

    let values = (-PROBE_HALF_WIDTH..PROBE_HALF_WIDTH).map(init).collect();
    let f0 = LevelSequence::new(values, -PROBE_HALF_WIDTH, 0, 0, Boundary::Periodic)?;
    let mut state = RefinementState::initial(f0, &cfg)?;
    let mut grad = forward_difference(&state.f)?;
    let mut out = vec![SmoothnessLevel {
        level: 0,
        max_first_difference: grad.max_abs(),
        increment: None,
        ratio: None,
    }];
    for _ in 0..levels {
        state = refine_step(&state, &cfg)?;
        let next = forward_difference(&state.f)?;
        let increment = next
            .iter_points()
            .map(|(i, _, v)| (v - grad.get((i + 1).div_euclid(2))).abs())
            .fold(0.0, f64::max);
        let prev_inc = out.last().and_then(|l| l.increment);
        out.push(SmoothnessLevel {
            level: state.level,
            max_first_difference: next.max_abs(),
            increment: Some(increment),
            ratio: prev_inc.map(|p| increment / p),
        });
        grad = next;
    }

    let g = state.f.grid();
    let h = g.spacing();
    let limit = state.f.iter_points().map(|(_, t, v)| [t, v]).collect();
    // ∇f_i sits halfway between t_{i-1} and t_i
    let first_derivative = grad
        .iter_points()
        .map(|(_, t, v)| [t - 0.5 * h, v])
        .collect();
    let second_derivative = second_difference(&state.f)?
        .iter_points()
        .map(|(_, t, v)| [t, v])
        .collect();
    Ok(SmoothnessReport {
        levels: out,
        limit,
        first_derivative,
        second_derivative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::Scheme;
    use approx::assert_abs_diff_eq;

    #[test]
    fn franke_values() {
        // the first bump is centred where 9t/8 = 2
        let t = 16.0 / 9.0;
        let rest =
            0.75 * (-9.0f64 / 49.0).exp() + 0.5 * (-25.0f64 / 4.0).exp() - 0.2 * (-4.0f64).exp();
        assert_abs_diff_eq!(franke_1d(t), 0.75 + rest, epsilon = 1e-15);
        // all four Gaussians decay
        assert!(franke_1d(1e3).abs() < 1e-300);
        assert!(franke_1d(-1e3).abs() < 1e-300);
        let f0 =
            0.75 * (-1.0f64).exp() + 0.75 * (-1.0f64 / 49.0).exp() + 0.5 * (-49.0f64 / 4.0).exp()
                - 0.2 * (-16.0f64).exp();
        assert_abs_diff_eq!(franke_1d(0.0), f0, epsilon = 1e-15);
        assert_abs_diff_eq!(franke_1d(0.0), 1.010761, epsilon = 1e-6);
    }

    #[test]
    fn affine_function_is_reproduced() {
        let cfg = SchemeConfig::new(Scheme::Nucc);
        let rows = order_table(|t| 0.3 * t + 2.0, &cfg, 0..=3, (-2.0, 8.0), 6).unwrap();
        for r in rows {
            assert!(r.max_error < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn order_table_input_errors() {
        let cfg = SchemeConfig::new(Scheme::Chaikin);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=2;
        assert!(matches!(
            order_table(franke_1d, &cfg, empty, (-2.0, 8.0), 4),
            Err(NuccError::InvalidConfig(_))
        ));
        assert!(matches!(
            order_table(franke_1d, &cfg, 0..=1, (0.0, 1.5), 4),
            Err(NuccError::DomainTooSmall(_))
        ));
    }

    #[test]
    fn zero_data_gives_zero_probe() {
        let r = probe_from(&SchemeConfig::new(Scheme::Nucc), 6, |_| 0.0).unwrap();
        assert!(r.levels.iter().all(|l| l.max_first_difference == 0.0));
        assert!(r.limit.iter().all(|p| p[1] == 0.0));
        assert!(r.second_derivative.iter().all(|p| p[1] == 0.0));
    }

    #[test]
    fn probe_needs_four_levels() {
        assert!(smoothness_probe(&SchemeConfig::new(Scheme::Chaikin), 3).is_err());
    }

    #[test]
    fn chaikin_probe_halves() {
        let r = smoothness_probe(&SchemeConfig::new(Scheme::Chaikin), 10).unwrap();
        for l in &r.levels[3..] {
            assert_abs_diff_eq!(l.ratio.unwrap(), 0.5, epsilon = 1e-9);
        }
        assert_eq!(r.limit.len(), 16 << 10);
    }
}
