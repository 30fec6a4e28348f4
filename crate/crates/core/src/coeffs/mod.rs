//! The coefficient functions C_pq(s), their continuation past s = −1, and the
//! holomorphic, pluriharmonic and harmonic coefficient families.

mod continued;
mod meromorphic;
mod series;

pub use continued::{c_pq_continued, continued, ContinuedCpq, DEFAULT_BIG_N, SPLIT_DELTA};
pub use meromorphic::{incomplete_log_moment, lemma_pb, MeromorphicEval, Pole, SingularSum};
pub use series::{c_pq, g_pq, prefactor, GpqSeries};

use crate::error::{Error, Result};
use crate::specfun::{gamma, pochhammer};

fn factorial(k: usize) -> f64 {
    gamma(k as f64 + 1.0)
}

/// (n)_p/(n+s+1)_p.
pub fn c_p0_closed(n: usize, p: usize, s: f64) -> Result<f64> {
    let den = pochhammer(n as f64 + s + 1.0, p);
    if den == 0.0 {
        return Err(Error::Pole(format!("C_{p}0 has a pole at s = {s}")));
    }
    Ok(pochhammer(n as f64, p) / den)
}

/// lim (n+s+1)·C_p0(s) at s = −n−1, i.e. (n)_p/Γ(p).
pub fn c_p0_residue(n: usize, p: usize) -> f64 {
    if p == 0 {
        return 0.0;
    }
    pochhammer(n as f64, p) / gamma(p as f64)
}

pub fn c_circ(n: usize, p: usize) -> f64 {
    p as f64 * pochhammer(n as f64, p) / factorial(p)
}

pub fn c_cici(n: usize, p: usize, q: usize) -> f64 {
    if p == 0 || q == 0 {
        return 0.0;
    }
    let g = gamma(n as f64);
    pochhammer(p as f64, n) * pochhammer(q as f64, n) / (g * g)
}

/// (n/2)_p/(n/2+s+1)_p.
pub fn harm_coeff(n: usize, p: usize, s: f64) -> Result<f64> {
    let h = n as f64 / 2.0;
    let den = pochhammer(h + s + 1.0, p);
    if den == 0.0 {
        return Err(Error::Pole(format!("harmonic coefficient of degree {p} has a pole at s = {s}")));
    }
    Ok(pochhammer(h, p) / den)
}

pub fn harm_sq(n: usize, p: usize) -> f64 {
    p as f64 * pochhammer(n as f64 / 2.0, p) / factorial(p)
}

/// C_pq(s) by whichever path applies: 1 for p = q = 0, the closed form when
/// pq = 0, quadrature for s > −1 and the continuation otherwise.
pub fn c_pq_auto(n: usize, p: usize, q: usize, s: f64) -> Result<(f64, f64)> {
    if p == 0 && q == 0 {
        return Ok((1.0, 0.0));
    }
    if p == 0 || q == 0 {
        let v = c_p0_closed(n, p.max(q), s)?;
        return Ok((v, 4.0 * f64::EPSILON * v.abs() * (p + q) as f64));
    }
    if s > -1.0 {
        c_pq(n, p, q, s)
    } else {
        continued(n, p, q)?.eval(s)
    }
}

/// Rows (p, q, C_pq(s)·[(p+1)(q+1)]^{s+1}) for 1 ≤ p, q ≤ max_pq; an
/// empirical table only.
pub fn uniform_bound_probe(n: usize, s: f64, max_pq: usize) -> Result<Vec<(usize, usize, f64)>> {
    let mut out = Vec::new();
    for p in 1..=max_pq {
        for q in 1..=max_pq {
            let (c, _) = c_pq_auto(n, p, q, s)?;
            out.push((p, q, c * (((p + 1) * (q + 1)) as f64).powf(s + 1.0)));
        }
    }
    Ok(out)
}
