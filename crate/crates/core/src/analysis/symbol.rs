//! Laurent symbols of local masks and level-wise diagnostics.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::fit::decay_exponent;
use crate::masks::MaskQuad;

/// `a(z) = Σ_n a_n z^n` with finite support.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LaurentSymbol {
    pub coeffs: BTreeMap<i32, f64>,
}

impl LaurentSymbol {
    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().map(|(&n, &a)| a * z.powi(n)).sum()
    }
}

/// Symbol with exponents `-2, -1, 0, 1`.
pub fn symbol_from_mask(m: &MaskQuad) -> LaurentSymbol {
    let coeffs = (-2..=1).zip(m.coeffs()).collect();
    LaurentSymbol { coeffs }
}

/// `|D_1(z)| = |a^{j}(z) - z a^{j-1}(z)|` for `z = ±1`.
pub fn property_a_d1(sym_j: &LaurentSymbol, sym_jm1: &LaurentSymbol, z: f64) -> f64 {
    debug_assert!(z == 1.0 || z == -1.0);
    (sym_j.eval(z) - z * sym_jm1.eval(z)).abs()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDiagnostic {
    pub level: u32,
    /// `sup_j Σ_n |a^{j,k}_n - chaikin_n|`.
    pub ae_deviation: f64,
    pub ae_partial_sum: f64,
    /// `sup_j max_{z=±1} |D^{j,k}_1(z)|` over neighbouring rules.
    pub property_a: f64,
    /// `sup_j max(|a(1) - 2|, |a(-1)|)`.
    pub partition_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub levels: Vec<LevelDiagnostic>,
    pub fit_levels: (u32, u32),
    pub ae_decay_exponent: Option<f64>,
    pub property_a_decay_exponent: Option<f64>,
}

/// Profile fitted over levels `3..` (or every level for short traces).
pub fn asymptotic_equivalence_profile(trace: &[Vec<MaskQuad>]) -> DiagnosticReport {
    let last = trace.len().saturating_sub(1) as u32;
    let first = if last >= 4 { 3 } else { 0 };
    asymptotic_equivalence_profile_over(trace, first..=last)
}

/// `trace[k]` holds the masks used to go from level `k` to `k + 1`.
pub fn asymptotic_equivalence_profile_over(
    trace: &[Vec<MaskQuad>],
    fit_levels: RangeInclusive<u32>,
) -> DiagnosticReport {
    let mut partial = 0.0;
    let levels: Vec<LevelDiagnostic> = trace
        .iter()
        .enumerate()
        .map(|(k, masks)| {
            let ae = masks
                .iter()
                .map(MaskQuad::l1_deviation_from_chaikin)
                .fold(0.0, f64::max);
            partial += ae;
            let syms: Vec<LaurentSymbol> = masks.iter().map(symbol_from_mask).collect();
            let property_a = masks
                .windows(2)
                .zip(syms.windows(2))
                .filter(|(m, _)| m[1].j == m[0].j + 1)
                .map(|(_, s)| {
                    property_a_d1(&s[1], &s[0], 1.0).max(property_a_d1(&s[1], &s[0], -1.0))
                })
                .fold(0.0, f64::max);
            let partition_error = syms
                .iter()
                .map(|s| (s.eval(1.0) - 2.0).abs().max(s.eval(-1.0).abs()))
                .fold(0.0, f64::max);
            LevelDiagnostic {
                level: k as u32,
                ae_deviation: ae,
                ae_partial_sum: partial,
                property_a,
                partition_error,
            }
        })
        .collect();
    let pick = |sel: fn(&LevelDiagnostic) -> f64| -> Vec<(f64, f64)> {
        levels
            .iter()
            .filter(|l| fit_levels.contains(&l.level))
            .map(|l| (f64::from(l.level), sel(l)))
            .collect()
    };
    DiagnosticReport {
        ae_decay_exponent: decay_exponent(&pick(|l| l.ae_deviation)),
        property_a_decay_exponent: decay_exponent(&pick(|l| l.property_a)),
        fit_levels: (*fit_levels.start(), *fit_levels.end()),
        levels,
    }
}
