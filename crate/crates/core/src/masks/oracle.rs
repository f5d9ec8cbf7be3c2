use crate::error::{NuccError, Result};

/// Solves the local reproduction system for the Lagrange weights.
///
/// Given the values of two basis functions at `t_j`, `t_{j+1}` and at the
/// new point `t̄`, returns `(L_0(t̄), L_1(t̄))` with
/// `L_0 φ_n(t_j) + L_1 φ_n(t_{j+1}) = φ_n(t̄)` for `n = 0, 1`.
///
/// Plain 2×2 elimination, independent of the closed-form ratio kernels.
pub fn mask_oracle(
    phi0_vals: (f64, f64),
    phi1_vals: (f64, f64),
    phi0_at_tbar: f64,
    phi1_at_tbar: f64,
) -> Result<(f64, f64)> {
    let (a, b) = phi0_vals;
    let (c, d) = phi1_vals;
    let det = a * d - b * c;
    let scale = [a, b, c, d].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !det.is_finite() || det.abs() <= 1e-14 * scale * scale {
        return Err(NuccError::DegenerateSystem { det });
    }
    let l0 = (phi0_at_tbar * d - b * phi1_at_tbar) / det;
    let l1 = (a * phi1_at_tbar - phi0_at_tbar * c) / det;
    Ok((l0, l1))
}
