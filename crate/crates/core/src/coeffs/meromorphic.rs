use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub location: f64,
    pub order: u32,
    /// limit of (s − location)^order · f(s)
    pub strength: f64,
}

type Evaluator = Arc<dyn Fn(f64) -> Result<(f64, f64)> + Send + Sync>;

/// A real-meromorphic function given by its pole ledger and an evaluator
/// returning (value, error bound) away from the poles.
#[derive(Clone)]
pub struct MeromorphicEval {
    pub poles: Vec<Pole>,
    pub domain_note: String,
    evaluator: Evaluator,
}

impl fmt::Debug for MeromorphicEval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeromorphicEval")
            .field("poles", &self.poles)
            .field("domain_note", &self.domain_note)
            .finish_non_exhaustive()
    }
}

impl MeromorphicEval {
    pub fn new<F>(poles: Vec<Pole>, domain_note: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> Result<(f64, f64)> + Send + Sync + 'static,
    {
        MeromorphicEval { poles, domain_note: domain_note.into(), evaluator: Arc::new(f) }
    }

    pub fn eval(&self, s: f64) -> Result<(f64, f64)> {
        if let Some(p) = self.poles.iter().find(|p| p.location == s) {
            return Err(Error::Pole(format!("s = {} is a pole of order {}", s, p.order)));
        }
        (self.evaluator)(s)
    }

    pub fn value(&self, s: f64) -> Result<f64> {
        self.eval(s).map(|(v, _)| v)
    }

    pub fn pole_at(&self, location: f64) -> Option<&Pole> {
        self.poles.iter().find(|p| (p.location - location).abs() < 1e-12)
    }

    /// ε^order · f(s₀ + ε) with its error bound.
    pub fn laurent_probe(&self, pole: &Pole, eps: f64) -> Result<(f64, f64)> {
        let (v, e) = self.eval(pole.location + eps)?;
        let w = eps.powi(pole.order as i32);
        Ok((v * w, e * w.abs()))
    }
}

/// ∫₀^δ z^{σ−1} logᵐ(1/z) dz for σ > 0.
pub fn incomplete_log_moment(sigma: f64, m: u32, delta: f64) -> f64 {
    let ell = (1.0 / delta).ln();
    let mut total = 0.0;
    let mut falling = 1.0;
    for k in 0..=m {
        total += falling * ell.powi((m - k) as i32) / sigma.powi(k as i32 + 1);
        falling *= (m - k) as f64;
    }
    total * delta.powf(sigma)
}

/// |J_m(σ)| ≤ δ^σ · Σ_k m!/(m−k)! ℓ^{m−k}/σ_min^{k+1} for σ ≥ σ_min > 0.
fn moment_majorant(sigma_min: f64, m: u32, delta: f64) -> f64 {
    let ell = (1.0 / delta).ln();
    let mut total = 0.0;
    let mut falling = 1.0;
    for k in 0..=m {
        total += falling * ell.powi((m - k) as i32) / sigma_min.powi(k as i32 + 1);
        falling *= (m - k) as f64;
    }
    total
}

/// The continuation of ∫₀^δ F(z) logᵐ(1/z) z^{s+shift} dz from its power
/// series F = Σ F_j z^j: coefficients below `big_n` carry the poles, the rest
/// are summed in closed form, and `coeff_tail` bounds Σ_{j ≥ len} |F_j| δ^j.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSum {
    pub coeffs: Vec<f64>,
    pub coeff_tail: f64,
    pub delta: f64,
    pub m: u32,
    pub big_n: usize,
    pub shift: f64,
    /// absolute error bounds of the stored coefficients (empty if exact)
    pub coeff_err: Vec<f64>,
}

impl SingularSum {
    pub fn new(coeffs: Vec<f64>, coeff_tail: f64, delta: f64, m: u32, big_n: usize, shift: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::Domain(format!("delta {delta} not in (0,1]")));
        }
        if big_n > coeffs.len() {
            return Err(Error::Budget(format!("big_n = {big_n} exceeds the {} available coefficients", coeffs.len())));
        }
        if delta == 1.0 && coeff_tail != 0.0 {
            return Err(Error::Domain("a coefficient tail needs delta < 1".into()));
        }
        Ok(SingularSum { coeffs, coeff_tail, delta, m, big_n, shift, coeff_err: Vec::new() })
    }

    fn sigma(&self, s: f64, j: usize) -> f64 {
        s + self.shift + j as f64 + 1.0
    }

    /// Σ_{j ≥ start} F_j J_m(σ_j) plus the coefficient tail, as (value, error).
    pub fn eval_from(&self, s: f64, start: usize) -> Result<(f64, f64)> {
        let mut value = 0.0;
        let mut abs = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate().skip(start) {
            if c == 0.0 {
                continue;
            }
            let sigma = self.sigma(s, j);
            if sigma == 0.0 {
                return Err(Error::Pole(format!("s = {s}")));
            }
            if sigma < 0.0 && j >= self.big_n {
                return Err(Error::Domain(format!("s = {s} lies outside the continuation window")));
            }
            let moment = incomplete_log_moment(sigma, self.m, self.delta);
            let t = c * moment;
            value += t;
            abs += t.abs() + self.coeff_err.get(j).map_or(0.0, |e| e * moment.abs());
        }
        let mut err = 8.0 * f64::EPSILON * abs;
        if self.coeff_tail > 0.0 {
            let sigma_min = self.sigma(s, self.coeffs.len());
            if sigma_min <= 0.0 {
                return Err(Error::Domain(format!("s = {s} lies outside the continuation window")));
            }
            let lead = self.delta.powf(s + self.shift + 1.0);
            err += lead * moment_majorant(sigma_min, self.m, self.delta) * self.coeff_tail;
        }
        Ok((value, err))
    }

    pub fn with_coeff_err(mut self, coeff_err: Vec<f64>) -> Self {
        self.coeff_err = coeff_err;
        self
    }

    pub fn eval(&self, s: f64) -> Result<(f64, f64)> {
        self.eval_from(s, 0)
    }

    pub fn poles(&self) -> Vec<Pole> {
        let fact = (1..=self.m).map(f64::from).product::<f64>();
        self.coeffs[..self.big_n]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(j, &c)| Pole { location: -self.shift - j as f64 - 1.0, order: self.m + 1, strength: fact * c })
            .collect()
    }

    pub fn into_meromorphic(self) -> MeromorphicEval {
        let poles = self.poles();
        let lo = -self.shift - self.coeffs.len() as f64 - 1.0;
        let note = format!("valid for s > {lo}");
        MeromorphicEval::new(poles, note, move |s| self.eval(s))
    }
}

/// Continuation of ∫_{1−δ}^1 F(1−t) logᵐ(1/(1−t)) (1−t)^s dt from the power
/// series of F around 0; coefficients beyond the slice are taken as zero.
pub fn lemma_pb(f_coeffs: &[f64], delta: f64, m: u32, big_n: usize) -> Result<MeromorphicEval> {
    Ok(SingularSum::new(f_coeffs.to_vec(), 0.0, delta, m, big_n, 0.0)?.into_meromorphic())
}
