use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::meromorphic::{MeromorphicEval, Pole, SingularSum};
use super::series::{g_value, prefactor};
use crate::error::{Error, Result};
use crate::specfun::quad::integrate;
use crate::specfun::{gamma, log_case_expansion_delta, LogCaseExpansion};

pub const SPLIT_DELTA: f64 = 0.5;
/// Split points tried in order; the first with acceptable conditioning is kept.
const DELTA_LADDER: [f64; 6] = [0.5, 0.25, 0.1, 0.05, 0.02, 0.01];
pub const DEFAULT_BIG_N: usize = 40;
const EXPANSION_DEGREE: usize = 160;

/// C_pq(s) continued to s ≤ −1: (s+1)_n/Γ(n) times the regular integral over
/// [0, 1−δ] plus three singular sums built from F̃ = A₀ + A₁ zⁿ log(1/z).
#[derive(Debug, Clone)]
pub struct ContinuedCpq {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub delta: f64,
    pub expansion: Arc<LogCaseExpansion>,
    /// B₀, B₁, B₂ with m = 0, 1, 2 and shifts 0, n, 2n
    pub pieces: [SingularSum; 3],
}

fn poly_mul(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn binomial_row(power: usize, sign: f64, len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    let mut c = 1.0;
    for (k, slot) in out.iter_mut().enumerate().take(power + 1) {
        *slot = c;
        c *= sign * (power - k) as f64 / (k + 1) as f64;
    }
    out
}

fn eval_at(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &x| acc * z + x)
}

impl ContinuedCpq {
    pub fn new(n: usize, p: usize, q: usize) -> Result<Self> {
        Self::with_big_n(n, p, q, DEFAULT_BIG_N)
    }

    pub fn with_big_n(n: usize, p: usize, q: usize, big_n: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Domain("continuation needs p, q ≥ 1; use the closed form for pq = 0".into()));
        }
        let mut best: Option<(f64, Self)> = None;
        for delta in DELTA_LADDER {
            let (c, conditioning) = Self::with_delta(n, p, q, big_n, delta)?;
            if conditioning * f64::EPSILON < 1e-13 {
                return Ok(c);
            }
            if best.as_ref().is_none_or(|(b, _)| conditioning < *b) {
                best = Some((conditioning, c));
            }
        }
        Ok(best.expect("ladder is nonempty").1)
    }

    /// Continuation with split point 1 − δ, and the largest majorant sum Σ|B_j|δ^j.
    pub fn with_delta(n: usize, p: usize, q: usize, big_n: usize, delta: f64) -> Result<(Self, f64)> {
        let exp = log_case_expansion_delta(n, p, q, EXPANSION_DEGREE, delta)?;
        let len = EXPANSION_DEGREE + 1;
        let power = p + q + n - 1;
        let damp = binomial_row(power, -1.0, len);
        let damp_major = binomial_row(power, 1.0, len);
        let abs = |v: &[f64]| v.iter().map(|x| x.abs()).collect::<Vec<_>>();
        let (a0_abs, a1_abs) = (abs(&exp.a0), abs(&exp.a1));
        let a0_hat = eval_at(&a0_abs, delta) + exp.a0_tail;
        let a1_hat = eval_at(&a1_abs, delta) + exp.a1_tail;
        let whole = (1.0 + delta).powi(power as i32);
        let build = |x: &[f64], y: &[f64], xa: &[f64], ya: &[f64], full: f64, factor: f64, m: u32| -> Result<SingularSum> {
            let coeffs: Vec<f64> = poly_mul(&damp, &poly_mul(x, y, len), len).into_iter().map(|c| factor * c).collect();
            let major = poly_mul(&damp_major, &poly_mul(xa, ya, len), len);
            let tail = (factor * (whole * full - eval_at(&major, delta))).max(0.0);
            let noise = major.iter().map(|c| 4.0 * len as f64 * f64::EPSILON * factor * c).collect();
            Ok(SingularSum::new(coeffs, tail, delta, m, big_n, (m as usize * n) as f64)?.with_coeff_err(noise))
        };
        let b0 = build(&exp.a0, &exp.a0, &a0_abs, &a0_abs, a0_hat * a0_hat, 1.0, 0)?;
        let b1 = build(&exp.a0, &exp.a1, &a0_abs, &a1_abs, a0_hat * a1_hat, 2.0, 1)?;
        let b2 = build(&exp.a1, &exp.a1, &a1_abs, &a1_abs, a1_hat * a1_hat, 1.0, 2)?;
        let conditioning = whole * (a0_hat * a0_hat + 2.0 * a0_hat * a1_hat + a1_hat * a1_hat);
        Ok((ContinuedCpq { n, p, q, delta, expansion: Arc::new(exp), pieces: [b0, b1, b2] }, conditioning))
    }

    /// ∫₀^{1−δ} G(t)(1−t)^s dt.
    fn regular(&self, s: f64) -> Result<(f64, f64)> {
        let (n, p, q) = (self.n, self.p, self.q);
        let mut worst: f64 = 0.0;
        for t in [0.25, 0.5, 1.0 - self.delta] {
            worst = worst.max(g_value(n, p, q, t)?.1);
        }
        let (v, e) = integrate(&|t: f64| g_value(n, p, q, t).map(|(g, _)| g).unwrap_or(f64::NAN) * (1.0 - t).powf(s), 0.0, 1.0 - self.delta, 1e-14);
        if !v.is_finite() {
            return Err(Error::Convergence("regular quadrature".into()));
        }
        let weight = self.delta.powf(s.min(0.0));
        Ok((v, e + worst * weight))
    }

    pub fn eval(&self, s: f64) -> Result<(f64, f64)> {
        let n = self.n;
        let (mut inner, mut err) = self.regular(s)?;
        let (v, e) = self.pieces[0].eval_from(s, n)?;
        inner += v;
        err += e;
        for piece in &self.pieces[1..] {
            let (v, e) = piece.eval(s)?;
            inner += v;
            err += e;
        }
        let pref = prefactor(n, s);
        let mut value = pref * inner;
        err *= pref.abs();
        // B₀ terms j < n: the pole at s = −j−1 cancels against (s+1)_n.
        let gn = gamma(n as f64);
        for j in 0..n {
            let others: f64 = (0..n).filter(|&i| i != j).map(|i| s + 1.0 + i as f64).product();
            let t = self.pieces[0].coeffs[j] * self.delta.powf(s + j as f64 + 1.0) * others / gn;
            value += t;
            let noise = self.pieces[0].coeff_err[j] * self.delta.powf(s + j as f64 + 1.0) * others.abs() / gn;
            err += 4.0 * f64::EPSILON * t.abs() + noise;
        }
        Ok((value, err))
    }

    /// Double poles at −n−1−j and triple poles at −2n−1−j for j < n.
    pub fn pole_ledger(&self) -> Vec<Pole> {
        let n = self.n;
        let mut out = Vec::new();
        for (m, piece) in [(1usize, &self.pieces[1]), (2, &self.pieces[2])] {
            let fact = if m == 2 { 2.0 } else { 1.0 };
            for j in 0..n {
                let loc = -((m * n + j + 1) as f64);
                out.push(Pole { location: loc, order: m as u32 + 1, strength: prefactor(n, loc) * fact * piece.coeffs[j] });
            }
        }
        out
    }
}

static CACHE: Lazy<RwLock<HashMap<(usize, usize, usize), Arc<ContinuedCpq>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

pub fn continued(n: usize, p: usize, q: usize) -> Result<Arc<ContinuedCpq>> {
    if let Some(c) = CACHE.read().get(&(n, p, q)) {
        return Ok(c.clone());
    }
    let c = Arc::new(ContinuedCpq::new(n, p, q)?);
    CACHE.write().entry((n, p, q)).or_insert_with(|| c.clone());
    Ok(c)
}

/// The meromorphic continuation of C_pq(s), p, q ≥ 1.
pub fn c_pq_continued(n: usize, p: usize, q: usize) -> Result<MeromorphicEval> {
    let c = continued(n, p, q)?;
    let note = format!("values certified for s > {}; triple poles listed for bookkeeping", -((2 * n + 1) as f64));
    Ok(MeromorphicEval::new(c.pole_ledger(), note, move |s| c.eval(s)))
}
