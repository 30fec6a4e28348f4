use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::logcase::{log_case_expansion_auto, LogCaseExpansion};
use super::pochhammer;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 10_000_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Above this t the positive-term series is replaced by the expansion around t = 1.
pub(crate) const LOG_CASE_FROM: f64 = 0.95;

fn positive_integer(x: f64) -> Option<usize> {
    (x >= 1.0 && x == x.floor() && x < 1e6).then_some(x as usize)
}

/// ₂F₁(a,b;c;t) on [0,1) with a certified bound on the absolute error.
pub fn gauss_2f1_bounded(a: f64, b: f64, c: f64, t: f64, tol: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!("₂F₁ needs t in [0,1), got {t}")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("₂F₁ lower parameter {c} is a nonpositive integer")));
    }
    let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if !terminating && t > LOG_CASE_FROM {
        if let (Some(p), Some(q)) = (positive_integer(a), positive_integer(b)) {
            if let Some(n) = positive_integer(c - a - b) {
                let exp = cached_log_case(n, p, q)?;
                let norm = 1.0 / gauss_value_at_one(p, q, n);
                let (v, e) = exp.eval_with_error(t);
                return Ok((v / norm, e / norm));
            }
        }
    }
    series_2f1(a, b, c, t, tol)
}

fn series_2f1(a: f64, b: f64, c: f64, t: f64, tol: f64) -> Result<(f64, f64)> {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 0..MAX_TERMS {
        sum += term;
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * t;
        if term == 0.0 {
            return Ok((sum, 0.0));
        }
        let big_k = kf + 1.0;
        if a + big_k > 0.0 && b + big_k > 0.0 && c + big_k > 0.0 {
            let rho = t * ((a + big_k) / (big_k + 1.0)).max(1.0) * ((b + big_k) / (c + big_k)).max(1.0);
            if rho < 1.0 {
                let tail = term.abs() / (1.0 - rho);
                if tail <= tol {
                    return Ok((sum, tail));
                }
            }
        }
    }
    Err(Error::Convergence(format!("₂F₁({a},{b};{c};{t}) after {MAX_TERMS} terms")))
}

/// ₂F₁(a,b;c;t) to absolute accuracy `tol`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, t: f64, tol: f64) -> Result<f64> {
    gauss_2f1_bounded(a, b, c, t, tol).map(|(v, _)| v)
}

/// ₂F₁(p,q;p+q+n;1) = Γ(p+q+n)Γ(n)/(Γ(p+n)Γ(q+n)).
pub fn gauss_value_at_one(p: usize, q: usize, n: usize) -> f64 {
    pochhammer((q + n) as f64, p) / pochhammer(n as f64, p)
}

static LOG_CASE: Lazy<RwLock<HashMap<(usize, usize, usize), Arc<LogCaseExpansion>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

pub(crate) fn cached_log_case(n: usize, p: usize, q: usize) -> Result<Arc<LogCaseExpansion>> {
    if let Some(e) = LOG_CASE.read().get(&(n, p, q)) {
        return Ok(e.clone());
    }
    let e = Arc::new(log_case_expansion_auto(n, p, q, 1e-16)?);
    LOG_CASE.write().entry((n, p, q)).or_insert_with(|| e.clone());
    Ok(e)
}

/// Normalized F̃(t) = ₂F₁(p,q;p+q+n;t)/₂F₁(p,q;p+q+n;1) on [0,1], with error bound.
pub fn normalized_2f1(n: usize, p: usize, q: usize, t: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("normalized ₂F₁ needs t in [0,1], got {t}")));
    }
    if p == 0 || q == 0 || t == 1.0 {
        return Ok((1.0, 0.0));
    }
    let norm = 1.0 / gauss_value_at_one(p, q, n);
    if t <= LOG_CASE_FROM {
        let (v, e) = gauss_2f1_bounded(p as f64, q as f64, (p + q + n) as f64, t, 1e-17)?;
        return Ok((norm * v, norm * (e + 4.0 * f64::EPSILON * v)));
    }
    let (v, e) = cached_log_case(n, p, q)?.eval_with_error(t);
    if e > 1e-14 && t <= 0.999 {
        let (a, b, c) = (p as f64, q as f64, (p + q + n) as f64);
        let (dv, de) = series_2f1(a, b, c, t, 1e-17)?;
        let de = norm * (de + 4.0 * f64::EPSILON * dv);
        if de < e {
            return Ok((norm * dv, de));
        }
    }
    Ok((v, e))
}

/// [F̃, F̃′, F̃″] at t ∈ [0, 0.95] by the derivative rule d/dt ₂F₁(a,b;c) = (ab/c)₂F₁(a+1,b+1;c+1).
pub fn normalized_2f1_derivs(n: usize, p: usize, q: usize, t: f64) -> Result<[f64; 3]> {
    if !(0.0..=0.95).contains(&t) {
        return Err(Error::Domain(format!("derivatives available on [0,0.95], got {t}")));
    }
    if p == 0 || q == 0 {
        return Ok([1.0, 0.0, 0.0]);
    }
    let norm = 1.0 / gauss_value_at_one(p, q, n);
    let (a, b, c) = (p as f64, q as f64, (p + q + n) as f64);
    let f0 = gauss_2f1(a, b, c, t, 1e-17)?;
    let f1 = a * b / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, t, 1e-17)?;
    let f2 = a * b * (a + 1.0) * (b + 1.0) / (c * (c + 1.0)) * gauss_2f1(a + 2.0, b + 2.0, c + 2.0, t, 1e-17)?;
    Ok([norm * f0, norm * f1, norm * f2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminating_and_closed_forms() {
        assert_eq!(gauss_2f1(3.0, 0.0, 5.0, 0.7, 1e-14).unwrap(), 1.0);
        let v = gauss_2f1(-1.0, 2.5, 4.0, 0.3, 1e-14).unwrap();
        assert!((v - (1.0 - 2.5 * 0.3 / 4.0)).abs() < 1e-15);
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5, 1e-14).unwrap();
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn rejects_t_at_one() {
        assert!(gauss_2f1(1.0, 1.0, 2.0, 1.0, 1e-12).is_err());
        assert!(gauss_2f1(1.0, 1.0, -2.0, 0.2, 1e-12).is_err());
    }

    #[test]
    fn value_at_one_examples() {
        assert_eq!(gauss_value_at_one(0, 3, 2), 1.0);
        assert!((gauss_value_at_one(1, 1, 2) - 1.5).abs() < 1e-15);
        assert!((gauss_value_at_one(1, 1, 1) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn log_path_matches_closed_form() {
        // ₂F₁(1,1;3;t) = 2[(1−t)log(1−t) + t]/t²
        for &t in &[0.6f64, 0.9, 0.99, 0.999_9] {
            let exact = 2.0 * ((1.0 - t) * (1.0 - t).ln() + t) / (t * t);
            let v = gauss_2f1(1.0, 1.0, 3.0, t, 1e-14).unwrap();
            assert!((v - exact).abs() < 1e-12, "t={t}: {v} vs {exact}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-4;
        let t = 0.4;
        let d = normalized_2f1_derivs(2, 2, 1, t).unwrap();
        let f = |x: f64| normalized_2f1(2, 2, 1, x).unwrap().0;
        assert!(((f(t + h) - f(t - h)) / (2.0 * h) - d[1]).abs() < 1e-7);
        assert!(((f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h) - d[2]).abs() < 1e-5);
    }
}
