use super::{digamma_half_integer, gamma, pochhammer};
use crate::error::{Error, Result};

/// F̃(t) = A₀(z) + A₁(z)·zⁿ·log(1/z), z = 1 − t, for the normalized
/// ₂F₁(p,q;p+q+n;t) with p, q ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LogCaseExpansion {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    /// coefficients of A₀ in powers of z, indices 0..=truncation_degree
    pub a0: Vec<f64>,
    /// coefficients of A₁ in powers of z, indices 0..=truncation_degree
    pub a1: Vec<f64>,
    pub truncation_degree: usize,
    /// sup over z ∈ (0, δ] of the omitted part of F̃
    pub tail_bound: f64,
    /// Σ_{j>degree} |a0_j| δ^j
    pub a0_tail: f64,
    /// Σ_{j>degree} |a1_j| δ^j
    pub a1_tail: f64,
    pub delta: f64,
}

/// sup over 0 < z ≤ δ of zⁿ log(1/z).
pub fn sup_zn_log(n: usize, delta: f64) -> f64 {
    let nf = n as f64;
    if delta < (-1.0 / nf).exp() {
        delta.powi(n as i32) * (1.0 / delta).ln()
    } else {
        1.0 / (nf * std::f64::consts::E)
    }
}

fn e_coefficients(n: usize, p: usize, q: usize, len: usize) -> Vec<f64> {
    let (nf, pf, qf) = (n as f64, p as f64, q as f64);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut e = Vec::with_capacity(len);
    let mut cur = sign * pochhammer(pf, n) * pochhammer(qf, n) / (gamma(nf + 1.0) * gamma(nf));
    for j in 0..len {
        e.push(cur);
        let jf = j as f64;
        cur *= (nf + pf + jf) * (nf + qf + jf) / ((jf + 1.0) * (jf + nf + 1.0));
    }
    e
}

fn h_second(n: usize, p: usize, q: usize, j: usize) -> f64 {
    let psi = |k: usize| digamma_half_integer(k as f64).expect("positive integer argument");
    psi(j + 1) + psi(j + n + 1) - psi(j + n + p) - psi(j + n + q)
}

/// Bound on Σ_{j≥J} |E_j| δ^j from the monotone ratio of consecutive E_j.
fn e_tail(n: usize, p: usize, q: usize, e_j: f64, big_j: usize, delta: f64) -> Option<f64> {
    let jf = big_j as f64;
    let (nf, pf, qf) = (n as f64, p as f64, q as f64);
    let rho = (nf + pf + jf) * (nf + qf + jf) / ((jf + 1.0) * (jf + nf + 1.0)) * delta;
    (rho < 1.0).then(|| e_j.abs() * delta.powi(big_j as i32) / (1.0 - rho))
}

/// Builds A₀, A₁ truncated at `degree` with tails certified on z ∈ (0, 1/2].
pub fn log_case_expansion(n: usize, p: usize, q: usize, degree: usize) -> Result<LogCaseExpansion> {
    log_case_expansion_delta(n, p, q, degree, 0.5)
}

pub fn log_case_expansion_delta(
    n: usize,
    p: usize,
    q: usize,
    degree: usize,
    delta: f64,
) -> Result<LogCaseExpansion> {
    if p == 0 || q == 0 {
        return Err(Error::Domain("logarithmic case needs p, q ≥ 1".into()));
    }
    if n == 0 {
        return Err(Error::Domain("dimension n must be ≥ 1".into()));
    }
    if degree < n {
        return Err(Error::Domain(format!("degree {degree} below n = {n}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta {delta} not in (0,1)")));
    }
    let e = e_coefficients(n, p, q, degree + 2);
    let a1: Vec<f64> = e[..=degree].to_vec();
    let mut a0 = vec![0.0; degree + 1];
    let (pf, qf) = (p as f64, q as f64);
    let mut head = 1.0;
    for (j, slot) in a0.iter_mut().enumerate().take(n) {
        *slot = head;
        let jf = j as f64;
        head *= (pf + jf) * (qf + jf) / ((1.0 - n as f64 + jf) * (jf + 1.0));
    }
    for j in 0..=degree - n {
        a0[n + j] += e[j] * h_second(n, p, q, j);
    }
    let a1_tail = e_tail(n, p, q, e[degree + 1], degree + 1, delta)
        .ok_or_else(|| Error::Convergence("log-case tail ratio ≥ 1; raise the degree".into()))?;
    let first_missing = degree + 1 - n;
    let e_first = e_coefficients(n, p, q, first_missing + 1)[first_missing];
    let a0_tail = h_second(n, p, q, first_missing).abs()
        * delta.powi(n as i32)
        * e_tail(n, p, q, e_first, first_missing, delta)
            .ok_or_else(|| Error::Convergence("log-case tail ratio ≥ 1; raise the degree".into()))?;
    let tail_bound = a0_tail + a1_tail * sup_zn_log(n, delta);
    Ok(LogCaseExpansion {
        n,
        p,
        q,
        a0,
        a1,
        truncation_degree: degree,
        tail_bound,
        a0_tail,
        a1_tail,
        delta,
    })
}

/// Smallest power-of-two degree (≥ 32) whose certified tail is below `tol`.
pub fn log_case_expansion_auto(n: usize, p: usize, q: usize, tol: f64) -> Result<LogCaseExpansion> {
    let mut degree = 32;
    loop {
        if let Ok(e) = log_case_expansion(n, p, q, degree) {
            if e.tail_bound <= tol || degree >= 4096 {
                return Ok(e);
            }
        }
        if degree >= 4096 {
            return Err(Error::Convergence(format!("log-case expansion n={n} p={p} q={q}")));
        }
        degree *= 2;
    }
}

fn horner_abs(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &x| acc * z + x.abs())
}

fn horner(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &x| acc * z + x)
}

impl LogCaseExpansion {
    pub fn a0_at(&self, z: f64) -> f64 {
        horner(&self.a0, z)
    }

    pub fn a1_at(&self, z: f64) -> f64 {
        horner(&self.a1, z)
    }

    /// Truncated F̃(t); valid with `tail_bound` for 1 − δ ≤ t ≤ 1.
    pub fn eval(&self, t: f64) -> f64 {
        self.eval_with_error(t).0
    }

    /// F̃(t) with the tail bound plus a roundoff estimate from the absolute series.
    pub fn eval_with_error(&self, t: f64) -> (f64, f64) {
        let z = 1.0 - t;
        if z <= 0.0 {
            return (self.a0[0], 0.0);
        }
        let weight = z.powi(self.n as i32) * (1.0 / z).ln();
        let value = self.a0_at(z) + self.a1_at(z) * weight;
        let abs = horner_abs(&self.a0, z) + horner_abs(&self.a1, z) * weight;
        (value, self.tail_bound + 16.0 * f64::EPSILON * abs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gauss_2f1, gauss_value_at_one};

    #[test]
    fn a1_leading_coefficient() {
        let e = log_case_expansion(2, 1, 1, 40).unwrap();
        assert!((e.a1[0] - 2.0).abs() < 1e-15);
        let e = log_case_expansion(3, 2, 1, 40).unwrap();
        // (−1)³ Γ(5)Γ(4)/(3!·Γ(3)·Γ(2)·Γ(1)) = −144/12
        assert!((e.a1[0] + 12.0).abs() < 1e-13);
    }

    #[test]
    fn matches_direct_series_at_0_9() {
        let e = log_case_expansion_auto(2, 1, 1, 1e-15).unwrap();
        let direct = gauss_2f1(1.0, 1.0, 4.0, 0.9, 1e-16).unwrap() / gauss_value_at_one(1, 1, 2);
        assert!((e.eval(0.9) - direct).abs() < 1e-9);
    }

    #[test]
    fn tail_decreases_with_degree() {
        let t: Vec<f64> = [20, 40, 80].iter().map(|&d| log_case_expansion(2, 2, 3, d).unwrap().tail_bound).collect();
        assert!(t[0] > t[1] && t[1] > t[2]);
    }

    #[test]
    fn rejects_non_log_case() {
        assert!(log_case_expansion(2, 0, 1, 10).is_err());
    }

    #[test]
    fn value_at_endpoint_is_one() {
        let e = log_case_expansion(3, 2, 2, 60).unwrap();
        assert_eq!(e.eval(1.0), 1.0);
    }
}
