//! Mask coefficients for the corner-cutting family.
//!
//! Every rule here has four nonzero coefficients `a_{-2}, a_{-1}, a_0, a_1`.
//! With dual parametrization the level-`k+1` values are
//!
//! ```text
//! f_{2j}   = a_0 f_j + a_{-2} f_{j+1}
//! f_{2j+1} = a_1 f_j + a_{-1} f_{j+1}
//! ```
//!
//! Chaikin uses the constant mask `(1/4, 3/4, 3/4, 1/4)`. The exponential
//! B-spline and the non-uniform masks replace these by ratios that
//! reproduce a two-dimensional space of exponentials at each new point.

mod oracle;
mod ratio;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::seq::pow2;

pub use oracle::mask_oracle;
pub use ratio::{exp_ratio, sinh_ratio, RatioKernelConfig};

/// Distance kept from the open band `chaikin ± 1/4` when clamping.
pub const CLAMP_MARGIN: f64 = 1e-9;

/// Width of the admissible band around each Chaikin coefficient.
pub const CLAMP_HALF_WIDTH: f64 = 0.25;

/// The four coefficients of the rule at index `j`, level `level`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaskQuad {
    pub a_m2: f64,
    pub a_m1: f64,
    pub a_0: f64,
    pub a_1: f64,
    pub j: i64,
    pub level: u32,
}

impl MaskQuad {
    pub fn new(a_m2: f64, a_m1: f64, a_0: f64, a_1: f64) -> Self {
        Self {
            a_m2,
            a_m1,
            a_0,
            a_1,
            j: 0,
            level: 0,
        }
    }

    pub fn at(mut self, j: i64, level: u32) -> Self {
        self.j = j;
        self.level = level;
        self
    }

    /// Coefficients ordered by exponent `-2, -1, 0, 1`.
    pub fn coeffs(&self) -> [f64; 4] {
        [self.a_m2, self.a_m1, self.a_0, self.a_1]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    /// `Σ_n |a_n - chaikin_n|`.
    pub fn l1_deviation_from_chaikin(&self) -> f64 {
        let ch = chaikin_mask().coeffs();
        self.coeffs()
            .iter()
            .zip(ch)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    /// `max_n |a_n - chaikin_n|`.
    pub fn max_deviation_from_chaikin(&self) -> f64 {
        let ch = chaikin_mask().coeffs();
        self.coeffs()
            .iter()
            .zip(ch)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Whether every entry lies strictly inside `chaikin_n ± 1/4`.
    pub fn within_chaikin_band(&self) -> bool {
        let ch = chaikin_mask().coeffs();
        self.coeffs()
            .iter()
            .zip(ch)
            .all(|(a, b)| (a - b).abs() < CLAMP_HALF_WIDTH)
    }

    /// Projects each entry into `[chaikin_n - 1/4 + m, chaikin_n + 1/4 - m]`.
    pub fn clamped(&self) -> Self {
        let ch = chaikin_mask();
        let w = CLAMP_HALF_WIDTH - CLAMP_MARGIN;
        let p = |a: f64, c: f64| a.clamp(c - w, c + w);
        Self {
            a_m2: p(self.a_m2, ch.a_m2),
            a_m1: p(self.a_m1, ch.a_m1),
            a_0: p(self.a_0, ch.a_0),
            a_1: p(self.a_1, ch.a_1),
            ..*self
        }
    }

    pub(crate) fn from_pairs(even: RulePair, odd: RulePair) -> Self {
        Self::new(even.right, odd.right, even.left, odd.left)
    }
}

/// Weights of one rule: `left` multiplies `f_j`, `right` multiplies `f_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RulePair {
    pub left: f64,
    pub right: f64,
}

/// Position of the new point between `t_j` and `t_{j+1}`, as the weight
/// Chaikin puts on `f_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn right_weight(self) -> f64 {
        match self {
            Parity::Even => 0.25,
            Parity::Odd => 0.75,
        }
    }

    pub(crate) fn chaikin(self) -> RulePair {
        let r = self.right_weight();
        RulePair {
            left: 1.0 - r,
            right: r,
        }
    }

    /// Rule reproducing `e^{±γ t}`, `λ = γ²`.
    pub(crate) fn sinh_rule(
        self,
        lambda: f64,
        h: f64,
        cfg: &RatioKernelConfig,
    ) -> Result<RulePair> {
        let r = self.right_weight();
        Ok(RulePair {
            left: sinh_ratio(lambda, h, 1.0 - r, cfg)?,
            right: sinh_ratio(lambda, h, r, cfg)?,
        })
    }

    /// Rule reproducing `1` and `e^{γ t}`.
    pub(crate) fn exp_rule(self, gamma: f64, h: f64, cfg: &RatioKernelConfig) -> Result<RulePair> {
        let right = exp_ratio(gamma, h, self.right_weight(), cfg)?;
        Ok(RulePair {
            left: 1.0 - right,
            right,
        })
    }
}

/// Squared shape parameter `λ = γ²`; `λ < 0` means `γ` is pure imaginary.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ShapeParam(pub f64);

impl ShapeParam {
    pub const ZERO: ShapeParam = ShapeParam(0.0);

    /// Clamps into `[-cap, cap]`; NaN maps to zero.
    pub fn capped(lambda: f64, cap: f64) -> Self {
        if lambda.is_nan() {
            Self(0.0)
        } else {
            Self(lambda.clamp(-cap, cap))
        }
    }

    pub fn lambda(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EpsilonSign {
    /// `ε` takes the sign of the value it is added to (`sign(0) = +1`).
    MatchLocalValue,
    FixedPositive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonPolicy {
    pub magnitude: f64,
    pub sign_mode: EpsilonSign,
}

impl EpsilonPolicy {
    pub fn new(magnitude: f64, sign_mode: EpsilonSign) -> Self {
        Self {
            magnitude,
            sign_mode,
        }
    }

    /// `|ε| = 2^{-2 k0}`, sign matched to the local value.
    pub fn for_density(k0: u32) -> Self {
        Self::new(pow2(-2 * k0 as i32), EpsilonSign::MatchLocalValue)
    }

    /// `ε` to add to `value`.
    pub fn signed_for(&self, value: f64) -> f64 {
        match self.sign_mode {
            EpsilonSign::MatchLocalValue if value < 0.0 => -self.magnitude,
            _ => self.magnitude,
        }
    }
}

pub fn chaikin_mask() -> MaskQuad {
    MaskQuad::new(0.25, 0.75, 0.75, 0.25)
}

/// Level-`k` mask of the degree-2 exponential B-spline reproducing `e^{±γ t}`.
pub fn exp_bspline_mask(gamma: f64, k: u32, cfg: &RatioKernelConfig) -> Result<MaskQuad> {
    let lambda = gamma * gamma;
    let h = pow2(-(k as i32));
    let outer = sinh_ratio(lambda, h, 0.25, cfg)?;
    let inner = sinh_ratio(lambda, h, 0.75, cfg)?;
    Ok(MaskQuad::new(outer, inner, inner, outer).at(0, k))
}

/// `λ = d / (f + ε)`, capped at `cfg.lambda_cap`.
pub fn shape_param_primary(
    d_val: f64,
    f_val: f64,
    eps: &EpsilonPolicy,
    cfg: &RatioKernelConfig,
) -> ShapeParam {
    ShapeParam::capped(d_val / (f_val + eps.signed_for(f_val)), cfg.lambda_cap)
}

/// `γ = d / (∇f + ε)`, capped at `√lambda_cap`. Returns `γ` itself, not its square.
pub fn shape_param_alternative(
    d_val: f64,
    grad_val: f64,
    eps: &EpsilonPolicy,
    cfg: &RatioKernelConfig,
) -> f64 {
    let g = d_val / (grad_val + eps.signed_for(grad_val));
    if g.is_nan() {
        return 0.0;
    }
    let cap = cfg.lambda_cap.sqrt();
    g.clamp(-cap, cap)
}

/// Sinh-ratio mask with separate shape parameters for the even and odd rule.
///
/// A rule whose sine denominator falls under the guard falls back to its
/// Chaikin weights.
pub fn nucc_mask(
    lambda_even: ShapeParam,
    lambda_odd: ShapeParam,
    k: u32,
    clamp: bool,
    cfg: &RatioKernelConfig,
) -> MaskQuad {
    let h = pow2(-(k as i32));
    let rule = |p: Parity, lam: ShapeParam| {
        p.sinh_rule(lam.0, h, cfg).unwrap_or_else(|e| {
            log::debug!("level {k}: {e}; using Chaikin weights");
            p.chaikin()
        })
    };
    let m = MaskQuad::from_pairs(
        rule(Parity::Even, lambda_even),
        rule(Parity::Odd, lambda_odd),
    )
    .at(0, k);
    if clamp {
        m.clamped()
    } else {
        m
    }
}

/// Exponential-ratio mask reproducing `{1, e^{γ t}}`; each rule sums to one.
pub fn nucc_mask_alternative(
    gamma_even: f64,
    gamma_odd: f64,
    k: u32,
    cfg: &RatioKernelConfig,
) -> MaskQuad {
    let h = pow2(-(k as i32));
    let rule = |p: Parity, g: f64| {
        p.exp_rule(g, h, cfg).unwrap_or_else(|e| {
            log::debug!("level {k}: {e}; using Chaikin weights");
            p.chaikin()
        })
    };
    MaskQuad::from_pairs(rule(Parity::Even, gamma_even), rule(Parity::Odd, gamma_odd)).at(0, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn k() -> RatioKernelConfig {
        RatioKernelConfig::default()
    }

    fn eps(m: f64) -> EpsilonPolicy {
        EpsilonPolicy::new(m, EpsilonSign::MatchLocalValue)
    }

    #[test]
    fn chaikin_coefficients_and_symbol_values() {
        let c = chaikin_mask();
        assert_eq!(c.coeffs(), [0.25, 0.75, 0.75, 0.25]);
        assert_eq!(c.coeffs().iter().sum::<f64>(), 2.0);
        assert_eq!(c.a_m2 - c.a_m1 + c.a_0 - c.a_1, 0.0);
    }

    #[test]
    fn exp_bspline_matches_closed_form() {
        let m = exp_bspline_mask(0.5, 0, &k()).unwrap();
        let s = 0.5f64.sinh();
        assert_abs_diff_eq!(m.a_m2, 0.125f64.sinh() / s, epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_m1, 0.375f64.sinh() / s, epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_m2, 0.240505, epsilon = 1e-6);
        assert_abs_diff_eq!(m.a_m1, 0.736624, epsilon = 1e-6);
        assert_eq!(m.a_0, m.a_m1);
        assert_eq!(m.a_1, m.a_m2);

        let far = exp_bspline_mask(0.5, 20, &k()).unwrap();
        assert!(far.max_deviation_from_chaikin() < 1e-9);
        assert_eq!(
            exp_bspline_mask(0.0, 3, &k()).unwrap().coeffs(),
            chaikin_mask().coeffs()
        );
    }

    #[test]
    fn primary_shape_parameter_examples() {
        assert_eq!(
            shape_param_primary(0.0, 5.0, &eps(0.01), &k()).lambda(),
            0.0
        );
        assert_abs_diff_eq!(
            shape_param_primary(2.0, 2.0, &eps(1.0), &k()).lambda(),
            2.0 / 3.0,
            epsilon = 1e-16
        );
        assert_eq!(
            shape_param_primary(-4.0, 1.0, &eps(1.0), &k()).lambda(),
            -2.0
        );
        // sign(0) = +1, negative values get a negative epsilon
        assert_eq!(shape_param_primary(1.0, 0.0, &eps(0.5), &k()).lambda(), 2.0);
        assert_eq!(
            shape_param_primary(1.0, -1.0, &eps(1.0), &k()).lambda(),
            -0.5
        );
        // capped
        assert_eq!(
            shape_param_primary(1e12, 0.0, &eps(1e-3), &k()).lambda(),
            1e6
        );
    }

    #[test]
    fn fixed_positive_epsilon_cancellation_maps_to_zero_or_cap() {
        let e = EpsilonPolicy::new(1.0, EpsilonSign::FixedPositive);
        assert_eq!(shape_param_primary(0.0, -1.0, &e, &k()).lambda(), 0.0);
        assert_eq!(shape_param_primary(1.0, -1.0, &e, &k()).lambda(), 1e6);
    }

    #[test]
    fn alternative_shape_parameter_examples() {
        assert_eq!(shape_param_alternative(0.0, 3.0, &eps(0.01), &k()), 0.0);
        assert_eq!(shape_param_alternative(1.0, 0.0, &eps(1.0), &k()), 1.0);
        assert_eq!(shape_param_alternative(2.0, 1.0, &eps(1.0), &k()), 1.0);
        assert_eq!(shape_param_alternative(1e9, 0.0, &eps(1e-9), &k()), 1e3);
    }

    #[test]
    fn nucc_mask_examples() {
        for lvl in [0, 3, 11] {
            let m = nucc_mask(ShapeParam::ZERO, ShapeParam::ZERO, lvl, true, &k());
            assert_eq!(m.coeffs(), chaikin_mask().coeffs());
        }
        let m = nucc_mask(ShapeParam(1.0), ShapeParam(1.0), 0, false, &k());
        let s = 1f64.sinh();
        let outer = 0.25f64.sinh() / s;
        let inner = 0.75f64.sinh() / s;
        assert_abs_diff_eq!(m.a_m2, outer, epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_m1, inner, epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_0, inner, epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_1, outer, epsilon = 1e-15);
        assert_abs_diff_eq!(outer, 0.214952, epsilon = 1e-6);

        // λ_even = 4, λ_odd = 0 at k = 2: γ h = 2 · 1/4
        let m = nucc_mask(ShapeParam(4.0), ShapeParam::ZERO, 2, false, &k());
        assert_abs_diff_eq!(m.a_0, (0.375f64).sinh() / 0.5f64.sinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_m2, (0.125f64).sinh() / 0.5f64.sinh(), epsilon = 1e-15);
        assert_eq!((m.a_m1, m.a_1), (0.75, 0.25));
    }

    #[test]
    fn nucc_mask_falls_back_at_sine_poles() {
        let pi = std::f64::consts::PI;
        let m = nucc_mask(ShapeParam(-(pi * pi)), ShapeParam(1.0), 0, false, &k());
        assert_eq!((m.a_m2, m.a_0), (0.25, 0.75));
        assert_ne!(m.a_m1, 0.75);
    }

    #[test]
    fn clamping_keeps_band() {
        let m = nucc_mask(ShapeParam(-9.0), ShapeParam(-9.0), 0, false, &k());
        assert!(!m.within_chaikin_band());
        let c = nucc_mask(ShapeParam(-9.0), ShapeParam(-9.0), 0, true, &k());
        assert!(c.within_chaikin_band());
        assert!(c.is_finite());
    }

    #[test]
    fn alternative_mask_examples() {
        assert_eq!(
            nucc_mask_alternative(0.0, 0.0, 4, &k()).coeffs(),
            chaikin_mask().coeffs()
        );
        let m = nucc_mask_alternative(1.0, 1.0, 0, &k());
        let e1 = std::f64::consts::E - 1.0;
        assert_abs_diff_eq!(m.a_m2, (0.25f64.exp() - 1.0) / e1, epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_m1, (0.75f64.exp() - 1.0) / e1, epsilon = 1e-15);
        assert_abs_diff_eq!(m.a_m1, 0.650068, epsilon = 1e-6);
    }

    #[test]
    fn deviation_from_chaikin_decays_per_level() {
        for lam in [-3.0, 0.5, 4.0] {
            let dev = |lvl| {
                nucc_mask(ShapeParam(lam), ShapeParam(lam), lvl, false, &k())
                    .max_deviation_from_chaikin()
            };
            for k in 4..12 {
                let r = dev(k) / dev(k + 1);
                assert!((3.5..=4.5).contains(&r), "lambda {lam}, k {k}: {r}");
            }
        }
        for g in [-2.0, 0.7, 5.0] {
            let dev = |lvl| nucc_mask_alternative(g, g, lvl, &k()).max_deviation_from_chaikin();
            for k in 6..14 {
                let r = dev(k) / dev(k + 1);
                assert!((1.8..=2.2).contains(&r), "gamma {g}, k {k}: {r}");
            }
        }
    }

    proptest! {
        #[test]
        fn alternative_rules_sum_to_one(
            ge in -50.0f64..50.0,
            go in -50.0f64..50.0,
            lvl in 0u32..16,
        ) {
            let m = nucc_mask_alternative(ge, go, lvl, &k());
            prop_assert!((m.a_m2 + m.a_0 - 1.0).abs() <= 1e-15);
            prop_assert!((m.a_m1 + m.a_1 - 1.0).abs() <= 1e-15);
        }

        #[test]
        fn clamped_masks_always_in_band(le in -1e4f64..1e4, lo in -1e4f64..1e4, lvl in 0u32..4) {
            let m = nucc_mask(ShapeParam(le), ShapeParam(lo), lvl, true, &k());
            prop_assert!(m.within_chaikin_band());
        }
    }
}
