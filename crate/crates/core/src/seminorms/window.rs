use serde::Serialize;

/// Range of an equivalence-ratio table and the drift verdict on its tail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioWindow {
    pub lo: f64,
    pub hi: f64,
    /// largest c with every ratio in [c, 1/c]
    pub c: f64,
    /// local log-log slopes over the last five grid points
    pub tail_slopes: Vec<f64>,
    pub degenerate: bool,
}

/// `points` are (grid coordinate, ratio) pairs in increasing coordinate order.
pub fn ratio_window(points: &[(f64, f64)]) -> RatioWindow {
    let lo = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let c = if lo > 0.0 && hi.is_finite() { lo.min(1.0 / hi) } else { 0.0 };
    let tail = &points[points.len().saturating_sub(5)..];
    let tail_slopes: Vec<f64> = tail
        .windows(2)
        .map(|w| (w[1].1 / w[0].1).ln() / (w[1].0 / w[0].0).ln())
        .collect();
    let drifting = match (tail_slopes.first(), tail_slopes.last()) {
        (Some(first), Some(last)) => !last.is_finite() || (last.abs() > 0.05 && last.abs() >= 0.9 * first.abs()),
        _ => false,
    };
    RatioWindow { lo, hi, c, tail_slopes, degenerate: c <= 0.0 || !c.is_finite() || drifting }
}
