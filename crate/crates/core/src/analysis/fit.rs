/// `log2(prev / this)`: the observed order between two consecutive rows.
pub fn order_estimate(prev_error: f64, this_error: f64) -> f64 {
    (prev_error / this_error).log2()
}

/// Least-squares decay exponent `p` of `value ≈ C 2^{-p level}`.
///
/// Non-positive or non-finite values are skipped; `None` if fewer than two
/// points remain.
pub fn decay_exponent(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, v)| x.is_finite() && v.is_finite() && *v > 0.0)
        .map(|&(x, v)| (x, v.log2()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(-sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn order_from_table_rows() {
        // proposed column, densities 2^{-1} and 2^{-2}
        assert_abs_diff_eq!(order_estimate(6.2276e-3, 6.2632e-4), 3.3, epsilon = 0.02);
        // exponential B-spline column, densities 2^{-5} and 2^{-6}
        assert_abs_diff_eq!(order_estimate(9.8297e-5, 2.4576e-5), 2.0, epsilon = 0.01);
    }

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (3..13)
            .map(|k| (k as f64, 5.0 * 2f64.powi(-2 * k)))
            .collect();
        assert_abs_diff_eq!(decay_exponent(&pts).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(decay_exponent(&[(1.0, 0.0), (2.0, 0.0)]), None);
        assert_eq!(decay_exponent(&[(1.0, 1.0)]), None);
        assert_eq!(decay_exponent(&[(1.0, 1.0), (1.0, 2.0)]), None);
    }
}
