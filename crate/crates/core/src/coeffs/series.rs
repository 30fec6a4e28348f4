use std::cell::{Cell, RefCell};

use crate::error::{Error, Result};
use crate::specfun::quad::integrate;
use crate::specfun::{gamma, gauss_value_at_one, normalized_2f1, pochhammer};

/// Power series of G_pq(t) = t^{p+q+n−1} F̃(t)² around t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GpqSeries {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    /// coefficient of t^{leading_exponent + k} at index k
    pub coefficients: Vec<f64>,
    pub leading_exponent: usize,
    /// sup over [0, 1 − delta] of the omitted part
    pub tail_bound: f64,
    pub delta: f64,
}

fn normalized_coeffs(n: usize, p: usize, q: usize, len: usize) -> Vec<f64> {
    let (nf, pf, qf) = (n as f64, p as f64, q as f64);
    let mut out = Vec::with_capacity(len);
    let mut a = 1.0 / gauss_value_at_one(p, q, n);
    for k in 0..len {
        out.push(a);
        let kf = k as f64;
        a *= (pf + kf) * (qf + kf) / ((pf + qf + nf + kf) * (kf + 1.0));
    }
    out
}

pub fn g_pq(n: usize, p: usize, q: usize, degree: usize) -> Result<GpqSeries> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be ≥ 1".into()));
    }
    let delta: f64 = 0.5;
    let a = normalized_coeffs(n, p, q, degree + 2);
    let mut coefficients = vec![0.0; degree + 1];
    for (i, ai) in a.iter().take(degree + 1).enumerate() {
        for (j, aj) in a.iter().take(degree + 1 - i).enumerate() {
            coefficients[i + j] += ai * aj;
        }
    }
    // g_k ≤ 2 sup_{i ≥ k/2} ã_i since Σ ã_i = 1; ã is nonincreasing from index m0 on.
    let m0 = ((p * q) as f64 - (p + q + n) as f64) / (n as f64 + 1.0);
    let half = degree.div_ceil(2);
    if (half as f64) < m0 {
        return Err(Error::Convergence(format!("degree {degree} too small for a certified tail")));
    }
    let t = 1.0 - delta;
    let tail_bound = if p == 0 || q == 0 { 0.0 } else { 2.0 * a[half.min(a.len() - 1)] * t.powi(degree as i32 + 1) / (1.0 - t) };
    Ok(GpqSeries { n, p, q, coefficients, leading_exponent: p + q + n - 1, tail_bound, delta })
}

impl GpqSeries {
    pub fn eval(&self, t: f64) -> f64 {
        let s = self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * t + c);
        s * t.powi(self.leading_exponent as i32)
    }
}

/// (s+1)_n/Γ(n).
pub fn prefactor(n: usize, s: f64) -> f64 {
    pochhammer(s + 1.0, n) / gamma(n as f64)
}

pub(crate) fn g_value(n: usize, p: usize, q: usize, t: f64) -> Result<(f64, f64)> {
    let (f, e) = normalized_2f1(n, p, q, t)?;
    let w = t.powi((p + q + n - 1) as i32);
    Ok((w * f * f, w * e * (2.0 * f.abs() + e)))
}

/// C_pq(s) by quadrature of (s+1)_n/Γ(n) ∫₀¹ G_pq(t)(1−t)^s dt, s > −1.
pub fn c_pq(n: usize, p: usize, q: usize, s: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be ≥ 1".into()));
    }
    if s <= -1.0 || !s.is_finite() {
        return Err(Error::Domain(format!("direct path needs s > −1, got {s}; use the continuation")));
    }
    if p == 0 && q == 0 {
        return Ok((1.0, 0.0));
    }
    let pref = prefactor(n, s);
    let fail = RefCell::new(None);
    let g_err = Cell::new(0.0f64);
    let integrand = |t: f64, z: f64| -> f64 {
        match g_value(n, p, q, t) {
            Ok((g, e)) => {
                g_err.set(g_err.get().max(e));
                g * z.powf(s)
            }
            Err(err) => {
                fail.borrow_mut().get_or_insert(err);
                0.0
            }
        }
    };
    let tol = 1e-13;
    let (mut value, mut err) = integrate(&|t: f64| integrand(t, 1.0 - t), 0.0, 0.5, tol);
    let mut hi: f64 = 0.5;
    let mut panels = 0;
    loop {
        let lo = hi * 0.5;
        let (v, e) = integrate(&|z: f64| integrand(1.0 - z, z), lo, hi, tol);
        value += v;
        err += e;
        hi = lo;
        panels += 1;
        let (g_edge, ge) = g_value(n, p, q, 1.0 - hi)?;
        let scale = hi.powf(s + 1.0) / (s + 1.0);
        let width = (1.0 - g_edge + ge).max(0.0) * scale;
        if pref.abs() * width < 1e-11 || panels >= 400 {
            if pref.abs() * width >= 1e-9 {
                return Err(Error::Budget(format!("endpoint enclosure too wide at s = {s}")));
            }
            value += 0.5 * (1.0 + g_edge) * scale;
            err += 0.5 * width;
            break;
        }
    }
    if let Some(e) = fail.into_inner() {
        return Err(e);
    }
    let g_err = g_err.get();
    let weight = 1.0 / (s + 1.0);
    err += g_err * weight;
    Ok((pref * value, pref.abs() * err))
}
