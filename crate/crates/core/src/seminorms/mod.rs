//! Weighted Bergman, Hardy and Dirichlet-type seminorms on Peter–Weyl cells,
//! and the tangential and radial sums behind the equivalence theorems.

mod report;
mod tangential;
mod window;

pub use crate::realharm::{dirichlet_sq, theorem_pj_sums};
pub use report::{Cell, SeminormReport};
pub use tangential::{spectral_tangential_sum, tangential_eigenvalue, tangential_sum, tangential_word_sum, MAX_WORD_DIM, MAX_WORD_LENGTH};
pub use window::{ratio_window, RatioWindow};

use serde::Serialize;

use crate::coeffs::{c_cici, c_circ, c_p0_closed, c_pq_auto};
use crate::error::{Error, Result};
use crate::harmonics::PWDecomposition;
use crate::specfun::normalized_2f1;

struct Acc {
    value: f64,
    err: f64,
    abs: f64,
    cells: Vec<Cell>,
}

impl Acc {
    fn new() -> Self {
        Acc { value: 0.0, err: 0.0, abs: 0.0, cells: Vec::new() }
    }

    fn push(&mut self, p: usize, q: usize, weight: f64, weight_err: f64, norm: f64) {
        let t = weight * norm;
        self.value += t;
        self.abs += t.abs();
        self.err += weight_err * norm;
        self.cells.push(Cell::Bigraded(p, q));
    }

    fn report(self, name: &str) -> SeminormReport {
        let err = self.err + 16.0 * f64::EPSILON * self.abs;
        SeminormReport::new(name, self.value.max(0.0), err, self.cells)
    }
}

fn cell_sum(name: &str, f: &PWDecomposition, weight: impl Fn(usize, usize) -> Result<(f64, f64)>) -> Result<SeminormReport> {
    let mut acc = Acc::new();
    for ((p, q), norm) in f.cell_norms() {
        let (w, e) = weight(p, q)?;
        acc.push(p, q, w, e, norm.re);
    }
    Ok(acc.report(name))
}

/// Σ C_pq(s)‖f_pq‖²_∂B.
pub fn norm_s(f: &PWDecomposition, s: f64) -> Result<SeminormReport> {
    let n = f.n;
    if s <= -(n as f64) - 1.0 {
        return Err(Error::Domain(format!("norm_s needs s > −n−1, got {s}")));
    }
    let mut r = cell_sum(&format!("norm_s(s={s})"), f, |p, q| c_pq_auto(n, p, q, s))?;
    if f.tail_bound > 0.0 {
        if s < -1.0 {
            return Err(Error::Budget(format!("no tail bound for omitted cells at s = {s} < −1")));
        }
        // C_pq(s) ≤ C_pq(−1) = 1 on s ≥ −1
        r.error_bound += f.tail_bound * f.tail_bound;
        r = r.with_note("omitted cells bounded by the Hardy tail");
    }
    Ok(r)
}

/// Σ ‖f_pq‖²_∂B, the boundary-value norm.
pub fn hardy_norm(f: &PWDecomposition) -> SeminormReport {
    let r = cell_sum("hardy", f, |_, _| Ok((1.0, 0.0))).expect("unit weights");
    if f.tail_bound > 0.0 {
        let mut r = r.with_note("omitted cells bounded by the Hardy tail");
        r.error_bound += f.tail_bound * f.tail_bound;
        return r;
    }
    r
}

/// ‖f_r‖²_∂B for f_r(ζ) = f(rζ), 0 ≤ r < 1.
pub fn hardy_profile(f: &PWDecomposition, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("radius {r} not in [0,1)")));
    }
    let t = r * r;
    let mut acc = 0.0;
    for ((p, q), norm) in f.cell_norms() {
        let g = if p * q == 0 { 1.0 } else { normalized_2f1(f.n, p, q, t)?.0 };
        acc += g * g * t.powi((p + q) as i32) * norm.re;
    }
    Ok(acc)
}

/// Σ (p)_n(q)_n/Γ(n)² ‖f_pq‖²; pluriharmonic cells carry weight zero.
pub fn dirichlet_cici(f: &PWDecomposition) -> Result<SeminormReport> {
    if f.n == 1 {
        return Err(Error::TrivialSpace);
    }
    let n = f.n;
    cell_sum("dirichlet_cici", f, |p, q| Ok((c_cici(n, p, q), 0.0)))
}

/// Σ p(n)_p/p! ‖f_p‖² over the pluriharmonic cells.
pub fn dirichlet_circ(f: &PWDecomposition) -> SeminormReport {
    let n = f.n;
    let r = cell_sum("dirichlet_circ", f, |p, q| Ok((if p * q == 0 { c_circ(n, p + q) } else { 0.0 }, 0.0)))
        .expect("closed-form weights");
    if f.is_pluriharmonic() {
        r
    } else {
        r.with_note("cells with pq > 0 ignored")
    }
}

/// Σ_words ‖𝓛…𝓛 (Qf)‖² with words of length n, divided by ‖f‖²_∘∘.
pub fn theorem_pf_ratio(f: &PWDecomposition) -> Result<f64> {
    let n = f.n;
    if n < 2 {
        return Err(Error::Domain("n ≥ 2 required".into()));
    }
    let q = crate::harmonics::project(f, crate::harmonics::Projection::Q);
    let den = dirichlet_cici(f)?.value;
    if den == 0.0 {
        return Err(Error::InvalidInput("a function with nonzero Q-part".into()));
    }
    Ok(spectral_tangential_sum(&q, n).value / den)
}

/// Brute-force word sum of length n on Qf over ‖f‖²_∘∘.
pub fn theorem_pf_word_ratio(f: &PWDecomposition) -> Result<f64> {
    let q = crate::harmonics::project(f, crate::harmonics::Projection::Q);
    let den = dirichlet_cici(f)?.value;
    if den == 0.0 {
        return Err(Error::InvalidInput("a function with nonzero Q-part".into()));
    }
    Ok(tangential_word_sum(&q.to_poly(), f.n)?.re / den)
}

/// Cell ratio of theorem_pf_ratio on H^{pq}.
pub fn pf_cell_ratio(n: usize, p: usize, q: usize) -> f64 {
    tangential_eigenvalue(n, p, q).powi(n as i32) / c_cici(n, p, q)
}

fn pluriharmonic_only(f: &PWDecomposition) -> Result<()> {
    if f.is_pluriharmonic() {
        Ok(())
    } else {
        Err(Error::InvalidInput("pluriharmonic".into()))
    }
}

/// ‖𝓝^m f‖²_{2m−n−1} = Σ p^{2m} C_p0(2m−n−1)‖f_p‖².
pub fn radial_seminorm(f: &PWDecomposition, m: usize) -> Result<SeminormReport> {
    let n = f.n;
    if 2 * m <= n {
        return Err(Error::Domain(format!("need 2m > n, got m = {m}, n = {n}")));
    }
    pluriharmonic_only(f)?;
    let s = 2.0 * m as f64 - n as f64 - 1.0;
    cell_sum(&format!("radial(m={m})"), f, |p, q| {
        let d = p + q;
        Ok(((d as f64).powi(2 * m as i32) * c_p0_closed(n, d, s)?, 0.0))
    })
}

/// Both tangential sums for pluriharmonic f: words of length n in Hardy norm,
/// and words of length n+k+1 in ‖·‖_k.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhSums {
    pub hardy: SeminormReport,
    pub weighted: SeminormReport,
}

pub fn theorem_ph_sums(f: &PWDecomposition, k: usize) -> Result<PhSums> {
    let n = f.n;
    if n < 2 {
        return Err(Error::Domain("n ≥ 2 required".into()));
    }
    pluriharmonic_only(f)?;
    let lam = |d: usize| (2 * n - 2) as f64 * d as f64;
    let hardy = cell_sum("ph_hardy", f, |p, q| Ok((lam(p + q).powi(n as i32), 0.0)))?;
    let m = n + k + 1;
    let weighted = cell_sum(&format!("ph_weighted(k={k})"), f, |p, q| {
        Ok((lam(p + q).powi(m as i32) * c_p0_closed(n, p + q, k as f64)?, 0.0))
    })?;
    Ok(PhSums { hardy, weighted })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MPrimeRow {
    pub eps: f64,
    pub scaled: f64,
    pub ratio: f64,
}

/// ε²‖f‖²_{−n−1+ε} and its ratio to ‖f‖²_∘∘ along a sequence of ε; a table only.
pub fn m_prime_probe(f: &PWDecomposition, eps: &[f64]) -> Result<Vec<MPrimeRow>> {
    let q = crate::harmonics::project(f, crate::harmonics::Projection::Q);
    let den = dirichlet_cici(&q)?.value;
    eps.iter()
        .map(|&e| {
            let scaled = e * e * norm_s(&q, -(f.n as f64) - 1.0 + e)?.value;
            Ok(MPrimeRow { eps: e, scaled, ratio: scaled / den })
        })
        .collect()
}
