/// `ln cosh^(2n)(rho/2) - ln(pi^2 + rho^2)`, i.e. the log of
/// `((1 + e^rho)^2 / (4 e^rho))^n / (pi^2 + rho^2)`.
fn log_ratio(n: u32, rho: f64) -> f64 {
    // ln cosh x = x + ln((1 + e^{-2x}) / 2), stable for large x
    let x = 0.5 * rho;
    let lc = x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2;
    2.0 * n as f64 * lc - (std::f64::consts::PI.powi(2) + rho * rho).ln()
}

/// `C(n) = inf_{rho >= 0} ((1 + e^rho)^2 / (4 e^rho))^n / (pi^2 + rho^2)`.
///
/// Minimized over a logarithmic grid on `[1e-8, 100]` together with `rho = 0`,
/// then refined by golden-section search around the best grid node.
pub fn hyperbolic_weight_constant(n: u32) -> f64 {
    const NODES: usize = 400;
    let (lo, hi) = (1e-8f64.ln(), 100f64.ln());
    let grid: Vec<f64> = std::iter::once(0.0)
        .chain((0..NODES).map(|i| (lo + (hi - lo) * i as f64 / (NODES - 1) as f64).exp()))
        .collect();
    let (best, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &r)| (i, log_ratio(n, r)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("grid is nonempty");
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(grid.len() - 1)];
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        if b - a <= 1e-14 * b.max(1.0) {
            break;
        }
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if log_ratio(n, c) < log_ratio(n, d) {
            b = d;
        } else {
            a = c;
        }
    }
    let refined = log_ratio(n, 0.5 * (a + b));
    refined.min(log_ratio(n, grid[best])).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_by_origin_value() {
        let top = 1.0 / std::f64::consts::PI.powi(2);
        for n in 2..=10 {
            let c = hyperbolic_weight_constant(n);
            assert!(c > 0.0 && c <= top * (1.0 + 1e-15), "n = {n}: {c}");
        }
        assert!(hyperbolic_weight_constant(3) <= hyperbolic_weight_constant(4));
    }

    #[test]
    fn ratio_matches_direct_formula() {
        for &r in &[0.0, 0.3, 2.0, 9.0] {
            let direct = ((1.0 + f64::exp(r)).powi(2) / (4.0 * f64::exp(r))).powi(5)
                / (std::f64::consts::PI.powi(2) + r * r);
            assert!((log_ratio(5, r).exp() / direct - 1.0).abs() < 1e-13);
        }
    }
}
