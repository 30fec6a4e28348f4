//! Gauss–Legendre rules and an adaptive two-rule integrator.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

type Rule = Arc<(Vec<f64>, Vec<f64>)>;

static RULES: Lazy<RwLock<HashMap<usize, Rule>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Nodes and weights of the m-point rule on [−1, 1].
pub fn gauss_legendre(m: usize) -> Rule {
    if let Some(r) = RULES.read().get(&m) {
        return r.clone();
    }
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { z } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = m as f64 * (z * pm - pm1) / (z * z - 1.0);
            let dz = pm / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    let r = Arc::new((x, w));
    RULES.write().insert(m, r.clone());
    r
}

fn apply<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, m: usize) -> (f64, f64) {
    let rule = gauss_legendre(m);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let (mut v, mut av) = (0.0, 0.0);
    for (x, w) in rule.0.iter().zip(&rule.1) {
        let y = w * f(c + h * x);
        v += y;
        av += y.abs();
    }
    (v * h, av * h.abs())
}

/// Adaptive integral of a smooth f on [a, b]; returns (value, error estimate).
/// Panels are bisected until the 20- and 30-point rules agree to `tol` (absolute,
/// halved per bisection) or to the roundoff level of the panel.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
        let (lo, _) = apply(f, a, b, 20);
        let (hi, abs) = apply(f, a, b, 30);
        let diff = (hi - lo).abs();
        if diff <= tol || diff <= 64.0 * f64::EPSILON * abs || depth >= 14 {
            return (hi, diff);
        }
        let m = 0.5 * (a + b);
        let (v1, e1) = rec(f, a, m, 0.5 * tol, depth + 1);
        let (v2, e2) = rec(f, m, b, 0.5 * tol, depth + 1);
        (v1 + v2, e1 + e2)
    }
    rec(f, a, b, tol, 0)
}
