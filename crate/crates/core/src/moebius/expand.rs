use num_complex::Complex64;

use super::RationalComposite;
use crate::error::{Error, Result};
use crate::polyalg::{ComplexPoly, MultiIndex};
use crate::specfun::{gamma, pochhammer};

/// Truncated expansion of a RationalComposite on the closed ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub poly: ComplexPoly,
    /// sup-norm bound on the omitted part over the closed ball
    pub tail: f64,
    pub degree: usize,
}

#[derive(Clone, Copy)]
enum Weight {
    Unit,
    /// √((P)_n/Γ(n)) for bidegree component P
    Cici(usize),
}

impl Weight {
    fn at(self, deg: usize) -> f64 {
        match self {
            Weight::Unit => 1.0,
            Weight::Cici(n) => (pochhammer(deg as f64, n) / gamma(n as f64)).sqrt(),
        }
    }

    /// sup over P ≥ deg of w(P+1)/w(P)
    fn ratio_bound(self, deg: usize) -> f64 {
        match self {
            Weight::Unit => 1.0,
            Weight::Cici(n) if deg > 0 => ((deg + n) as f64 / deg as f64).sqrt(),
            Weight::Cici(_) => f64::INFINITY,
        }
    }
}

/// Terms u_k = C(k+r−1, k) a^k w(offset+k) for k ≤ L and a bound on Σ_{k>L} u_k.
fn factor_series(a: f64, r: usize, offset: usize, w: Weight) -> Result<(Vec<f64>, f64)> {
    if r == 0 || a == 0.0 {
        return Ok((vec![w.at(offset)], 0.0));
    }
    let mut terms = Vec::new();
    let mut binom = 1.0;
    let mut sum = 0.0;
    for k in 0..200_000usize {
        let t = binom * w.at(offset + k);
        terms.push(t);
        sum += t;
        let rho = a * (k + r) as f64 / (k + 1) as f64 * w.ratio_bound(offset + k);
        if k >= 8 && rho < 1.0 && t * rho / (1.0 - rho) <= 1e-30 * sum.max(f64::MIN_POSITIVE) {
            return Ok((terms, t * rho / (1.0 - rho)));
        }
        binom *= a * (k + r) as f64 / (k + 1) as f64;
    }
    Err(Error::Budget(format!("expansion series at a = {a} did not settle")))
}

/// Σ_{k+l>K} u_k v_l without cancellation, from suffix sums.
fn omitted(u: &(Vec<f64>, f64), v: &(Vec<f64>, f64), big_k: usize) -> f64 {
    let mut suffix = vec![0.0; u.0.len() + 1];
    suffix[u.0.len()] = u.1;
    for k in (0..u.0.len()).rev() {
        suffix[k] = suffix[k + 1] + u.0[k];
    }
    let total_u = suffix[0];
    let mut acc = v.1 * total_u;
    for (l, &vl) in v.0.iter().enumerate() {
        let from = if l > big_k { 0 } else { big_k - l + 1 };
        acc += vl * suffix[from.min(u.0.len())];
    }
    acc * (1.0 + 1e-12)
}

fn span(g: &RationalComposite, degree: usize) -> Result<usize> {
    let (dp, dq) = g.numerator.degree_bounds();
    let deg = dp + dq;
    if degree < deg {
        return Err(Error::Budget(format!("cutoff {degree} below the numerator degree {deg}")));
    }
    Ok(degree - deg)
}

/// Polynomial of total degree ≤ `degree` from the geometric expansion of both
/// denominators; tail = Σ|ν|·Σ_{k+l>K} C(k+p′−1,k)C(l+q′−1,l)a^{k+l}.
pub fn expand_boundary(g: &RationalComposite, degree: usize) -> Result<Expansion> {
    let a = g.a_f64();
    if !(0.0..1.0).contains(&a) {
        return Err(Error::Domain(format!("a = {a} not in [0,1)")));
    }
    let big_k = span(g, degree)?;
    let n = g.dim();
    let (p1, q1) = (g.hol_denom_power, g.antihol_denom_power);
    let coeff = |r: usize, k: usize| if r == 0 { (k == 0) as u8 as f64 } else { pochhammer(r as f64, k) / gamma(k as f64 + 1.0) * a.powi(k as i32) };
    let mut poly = ComplexPoly::zero(n);
    for ((al, be), c) in g.numerator.terms() {
        for k in 0..=big_k {
            let ck = coeff(p1, k);
            if ck == 0.0 {
                continue;
            }
            for l in 0..=big_k - k {
                let cl = coeff(q1, l);
                if cl == 0.0 {
                    continue;
                }
                let mut a2 = al.clone();
                let mut b2 = be.clone();
                a2.0[0] += k as u32;
                b2.0[0] += l as u32;
                poly.add_term(MultiIndex::from_slice(a2.as_slice()), MultiIndex::from_slice(b2.as_slice()), c * Complex64::new(ck * cl, 0.0));
            }
        }
    }
    Ok(Expansion { poly, tail: sup_tail(g, degree)?, degree })
}

/// Sup-norm bound on g minus its expansion of total degree ≤ `degree`.
pub fn sup_tail(g: &RationalComposite, degree: usize) -> Result<f64> {
    let big_k = span(g, degree)?;
    let a = g.a_f64();
    let u = factor_series(a, g.hol_denom_power, 0, Weight::Unit)?;
    let v = factor_series(a, g.antihol_denom_power, 0, Weight::Unit)?;
    let mass: f64 = g.numerator.terms().values().map(|c| c.norm()).sum();
    Ok(mass * omitted(&u, &v, big_k))
}

/// Bound on ‖g − expansion‖_∘∘. Each omitted monomial of bidegree (P, Q) has
/// sphere norm ≤ 1 and splits into cells (P−j, Q−j) whose weights are at most
/// (P)_n(Q)_n/Γ(n)², so its ∘∘ norm is at most that weight's square root.
pub fn cici_tail(g: &RationalComposite, degree: usize) -> Result<f64> {
    let big_k = span(g, degree)?;
    let a = g.a_f64();
    let n = g.dim();
    let mut acc = 0.0;
    for ((al, be), c) in g.numerator.terms() {
        let u = factor_series(a, g.hol_denom_power, al.order() as usize, Weight::Cici(n))?;
        let v = factor_series(a, g.antihol_denom_power, be.order() as usize, Weight::Cici(n))?;
        acc += c.norm() * omitted(&u, &v, big_k);
    }
    Ok(acc)
}
