//! The refinement engine.
//!
//! One step maps `f^k` on window `[a, b]` to `f^{k+1}`:
//!
//! * `Periodic`: child window `[2a, 2b + 1]`, every `j` in `[a, b]` emits two values.
//! * `ReplicateEnd`: child window `[2a, 2b - 1]`, only `j` in `[a, b - 1]` emits.
//!
//! The auxiliary sequence `d^k` starts as `Δf^0` and is advanced with plain
//! Chaikin steps. It only feeds the data-adaptive shape parameters.

use serde::{Deserialize, Serialize};

use crate::error::{NuccError, Result};
use crate::masks::{
    chaikin_mask, exp_bspline_mask, nucc_mask, shape_param_alternative, shape_param_primary,
    EpsilonPolicy, MaskQuad, Parity, RatioKernelConfig, RulePair, ShapeParam,
};
use crate::seq::{pow2, second_difference, Boundary, LevelSequence};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Scheme {
    Chaikin,
    /// Degree-2 exponential B-spline with a fixed real `γ`.
    ExpBSpline {
        gamma: f64,
    },
    /// Non-uniform corner cutting with data-adaptive shape parameters.
    Nucc,
}

/// Which NUCC rule family is used at each `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Variant {
    /// Sinh-ratio rule where `|f|` clears the threshold, then the
    /// exponential-ratio rule where `|∇f|` does, else Chaikin.
    #[default]
    Auto,
    Primary,
    Alternative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub eps: EpsilonPolicy,
    /// Switching level for [`Variant::Auto`].
    pub variant_threshold: f64,
    pub variant: Variant,
    pub clamp: bool,
    /// Fixed `λ` for every rule, bypassing the data-adaptive choice.
    pub fixed_lambda: Option<f64>,
    pub boundary: Boundary,
    pub kernel: RatioKernelConfig,
    /// When set, [`SchemeConfig::at_density`] rescales `|ε|` to
    /// `eps_scale · 2^{-2 k0}` and the variant threshold to
    /// `threshold_scale · 2^{-2 k0}`.
    pub density_scaled: bool,
    pub eps_scale: f64,
    pub threshold_scale: f64,
}

/// `eps_scale` under which `ε` only guards against a zero denominator.
///
/// The variant switch already keeps `|f| ≥ 2^{-2 k0}` on the sinh branch, so
/// `ε` is not needed to bound `λ`; a full-size `ε` biases `λ` by `ε / f`,
/// which shows up as an `O(2^{-4 k0})` error term on coarse data.
pub const NEGLIGIBLE_EPS_SCALE: f64 = 1e-12;

impl SchemeConfig {
    /// Defaults for level-0 data with `k0 = 0`.
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            eps: EpsilonPolicy::for_density(0),
            variant_threshold: 1.0,
            variant: Variant::Auto,
            clamp: true,
            fixed_lambda: None,
            boundary: Boundary::ReplicateEnd,
            kernel: RatioKernelConfig::default(),
            density_scaled: true,
            eps_scale: 1.0,
            threshold_scale: 1.0,
        }
    }

    /// Curve mode: `k0 = 0`, `|ε| = 1`, no density rescaling.
    pub fn for_curve(scheme: Scheme) -> Self {
        Self {
            density_scaled: false,
            ..Self::new(scheme)
        }
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn at_density(&self, k0: u32) -> Self {
        let mut cfg = *self;
        if self.density_scaled {
            let s = pow2(-2 * k0 as i32);
            cfg.eps.magnitude = self.eps_scale * s;
            cfg.variant_threshold = self.threshold_scale * s;
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        let bad = |m: &str| Err(NuccError::InvalidConfig(m.into()));
        if !(self.eps.magnitude.is_finite() && self.eps.magnitude > 0.0) {
            return bad("epsilon magnitude must be positive");
        }
        if !(self.eps_scale.is_finite() && self.eps_scale > 0.0) {
            return bad("epsilon scale must be positive");
        }
        if !(self.threshold_scale.is_finite() && self.threshold_scale >= 0.0) {
            return bad("threshold scale must be non-negative");
        }
        if !(self.variant_threshold.is_finite() && self.variant_threshold >= 0.0) {
            return bad("variant threshold must be non-negative");
        }
        if let Scheme::ExpBSpline { gamma } = self.scheme {
            if !gamma.is_finite() {
                return bad("exponential B-spline gamma must be finite");
            }
        }
        if matches!(self.fixed_lambda, Some(l) if !l.is_finite()) {
            return bad("fixed lambda must be finite");
        }
        Ok(())
    }
}

/// Current data `f^k` and auxiliary sequence `d^k` at level `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementState {
    pub f: LevelSequence,
    pub d: LevelSequence,
    pub level: u32,
}

impl RefinementState {
    /// Level-0 state with `d^0 = Δf^0`.
    ///
    /// A two-value open sequence has no second difference; its `d^0` is zero.
    pub fn initial(f0: LevelSequence, cfg: &SchemeConfig) -> Result<Self> {
        cfg.validate()?;
        if f0.level() != 0 {
            return Err(NuccError::InvalidConfig(format!(
                "initial data must be at level 0, got {}",
                f0.level()
            )));
        }
        let f = f0.with_boundary(cfg.boundary);
        let d = if f.boundary() == Boundary::ReplicateEnd && f.len() == 2 {
            LevelSequence::new(
                vec![0.0; 2],
                f.first_index(),
                0,
                f.base_density_exp(),
                cfg.boundary,
            )?
        } else {
            second_difference(&f)?
        };
        Ok(Self { f, d, level: 0 })
    }
}

/// Child window bounds for one step.
fn rule_range(f: &LevelSequence) -> Result<(i64, i64)> {
    let a = f.first_index();
    match f.boundary() {
        Boundary::Periodic => Ok((a, f.last_index())),
        Boundary::ReplicateEnd => {
            if f.len() < 2 {
                return Err(NuccError::InsufficientSupport {
                    op: "refine_step",
                    needed: 2,
                    got: f.len(),
                });
            }
            Ok((a, f.last_index() - 1))
        }
    }
}

fn apply(f: &LevelSequence, masks: &[MaskQuad], j0: i64) -> LevelSequence {
    let mut out = Vec::with_capacity(2 * masks.len());
    for (i, m) in masks.iter().enumerate() {
        let j = j0 + i as i64;
        let (l, r) = (f.get(j), f.get(j + 1));
        out.push(m.a_0 * l + m.a_m2 * r);
        out.push(m.a_1 * l + m.a_m1 * r);
    }
    f.with_values(out, 2 * j0, f.level() + 1)
}

/// One Chaikin step.
pub fn chaikin_step(f: &LevelSequence) -> Result<LevelSequence> {
    let (a, b) = rule_range(f)?;
    let c = chaikin_mask();
    let masks: Vec<MaskQuad> = (a..=b).map(|j| c.at(j, f.level())).collect();
    Ok(apply(f, &masks, a))
}

fn adaptive_rule(
    p: Parity,
    f_val: f64,
    d_val: f64,
    grad: f64,
    h: f64,
    cfg: &SchemeConfig,
) -> RulePair {
    let k = &cfg.kernel;
    let primary = || {
        let lam = shape_param_primary(d_val, f_val, &cfg.eps, k);
        p.sinh_rule(lam.lambda(), h, k)
    };
    let alternative = || {
        let g = shape_param_alternative(d_val, grad, &cfg.eps, k);
        p.exp_rule(g, h, k)
    };
    let rule = match cfg.variant {
        Variant::Primary => primary(),
        Variant::Alternative => alternative(),
        Variant::Auto if f_val.abs() >= cfg.variant_threshold => primary(),
        Variant::Auto if grad.abs() >= cfg.variant_threshold => alternative(),
        Variant::Auto => Ok(p.chaikin()),
    };
    rule.unwrap_or_else(|e| {
        log::debug!("{e}; using Chaikin weights");
        p.chaikin()
    })
}

/// Masks used at every `j` of one step.
pub fn level_masks(state: &RefinementState, cfg: &SchemeConfig) -> Result<Vec<MaskQuad>> {
    let (a, b) = rule_range(&state.f)?;
    let k = state.level;
    let masks = match cfg.scheme {
        Scheme::Chaikin => {
            let c = chaikin_mask();
            (a..=b).map(|j| c.at(j, k)).collect()
        }
        Scheme::ExpBSpline { gamma } => {
            // γ acts on the physical variable; data of density 2^{-k0} sees γ 2^{-k0}
            let g = gamma * pow2(-(state.f.base_density_exp() as i32));
            let m = exp_bspline_mask(g, k, &cfg.kernel)?;
            (a..=b).map(|j| m.at(j, k)).collect()
        }
        Scheme::Nucc => match cfg.fixed_lambda {
            Some(lam) => {
                let lam = ShapeParam::capped(lam, cfg.kernel.lambda_cap);
                let m = nucc_mask(lam, lam, k, cfg.clamp, &cfg.kernel);
                (a..=b).map(|j| m.at(j, k)).collect()
            }
            None => {
                let (f, d) = (&state.f, &state.d);
                let h = pow2(-(k as i32));
                let scale = pow2(k as i32);
                (a..=b)
                    .map(|j| {
                        let grad = scale * (f.get(j + 1) - f.get(j));
                        let even = adaptive_rule(Parity::Even, f.get(j), d.get(j), grad, h, cfg);
                        let odd =
                            adaptive_rule(Parity::Odd, f.get(j + 1), d.get(j + 1), grad, h, cfg);
                        let m = MaskQuad::from_pairs(even, odd).at(j, k);
                        if cfg.clamp {
                            m.clamped()
                        } else {
                            m
                        }
                    })
                    .collect()
            }
        },
    };
    Ok(masks)
}

/// Advances `state` by one level, returning the masks that were applied.
pub fn refine_step_traced(
    state: &RefinementState,
    cfg: &SchemeConfig,
) -> Result<(RefinementState, Vec<MaskQuad>)> {
    let masks = level_masks(state, cfg)?;
    let (a, _) = rule_range(&state.f)?;
    let f = apply(&state.f, &masks, a);
    let d = chaikin_step(&state.d)?;
    let next = RefinementState {
        f,
        d,
        level: state.level + 1,
    };
    Ok((next, masks))
}

pub fn refine_step(state: &RefinementState, cfg: &SchemeConfig) -> Result<RefinementState> {
    refine_step_traced(state, cfg).map(|(s, _)| s)
}

/// Refines `f0` by `levels` steps.
pub fn run(f0: LevelSequence, cfg: &SchemeConfig, levels: u32) -> Result<RefinementState> {
    run_traced(f0, cfg, levels).map(|(s, _)| s)
}

/// Like [`run`], also returning the masks of each level.
pub fn run_traced(
    f0: LevelSequence,
    cfg: &SchemeConfig,
    levels: u32,
) -> Result<(RefinementState, Vec<Vec<MaskQuad>>)> {
    if levels == 0 {
        return Err(NuccError::InvalidConfig("levels must be at least 1".into()));
    }
    let mut state = RefinementState::initial(f0, cfg)?;
    let mut trace = Vec::with_capacity(levels as usize);
    for _ in 0..levels {
        let (next, masks) = refine_step_traced(&state, cfg)?;
        state = next;
        trace.push(masks);
    }
    Ok((state, trace))
}

/// `sup_j max(|a_{-2}| + |a_0|, |a_{-1}| + |a_1|)`.
pub fn operator_norm(masks: &[MaskQuad]) -> f64 {
    masks.iter().fold(0.0, |acc, m| {
        acc.max((m.a_m2.abs() + m.a_0.abs()).max(m.a_m1.abs() + m.a_1.abs()))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlPolygon {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

impl ControlPolygon {
    pub fn new(points: Vec<[f64; 2]>, closed: bool) -> Result<Self> {
        let needed = if closed { 3 } else { 2 };
        if points.len() < needed {
            return Err(NuccError::InsufficientSupport {
                op: "ControlPolygon::new",
                needed,
                got: points.len(),
            });
        }
        Ok(Self { points, closed })
    }

    fn boundary(&self) -> Boundary {
        if self.closed {
            Boundary::Periodic
        } else {
            Boundary::ReplicateEnd
        }
    }
}

/// Refines each coordinate of a polygon independently with `k0 = 0`.
pub fn refine_curve(
    poly: &ControlPolygon,
    cfg: &SchemeConfig,
    levels: u32,
) -> Result<ControlPolygon> {
    let poly = ControlPolygon::new(poly.points.clone(), poly.closed)?;
    let cfg = cfg.with_boundary(poly.boundary()).at_density(0);
    let coord = |axis: usize| -> Result<Vec<f64>> {
        let v = poly.points.iter().map(|p| p[axis]).collect();
        let seq = LevelSequence::new(v, 0, 0, 0, cfg.boundary)?;
        Ok(run(seq, &cfg, levels)?.f.into_values())
    };
    let xs = coord(0)?;
    let ys = coord(1)?;
    let points = xs.into_iter().zip(ys).map(|(x, y)| [x, y]).collect();
    Ok(ControlPolygon {
        points,
        closed: poly.closed,
    })
}
