use crate::error::{Error, Result};
use crate::harmonics::PWDecomposition;
use crate::polyalg::{norm_sq_sphere, Coeff, ComplexPoly};

use super::{Cell, SeminormReport};

pub const MAX_WORD_LENGTH: usize = 4;
pub const MAX_WORD_DIM: usize = 3;

/// 4pq + (2n−2)(p+q).
pub fn tangential_eigenvalue(n: usize, p: usize, q: usize) -> f64 {
    (4 * p * q + (2 * n - 2) * (p + q)) as f64
}

fn operators(n: usize) -> Vec<(usize, usize, bool)> {
    let mut out = Vec::with_capacity(2 * n * (n - 1));
    for conj in [false, true] {
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    out.push((j, k, conj));
                }
            }
        }
    }
    out
}

/// Σ over the (2n(n−1))^m words of ‖𝓛_{j1}…𝓛_{jm} f‖²_∂B, exact in the
/// coefficient field. Words sharing a prefix share the intermediate polynomial.
pub fn tangential_word_sum<C: Coeff>(f: &ComplexPoly<C>, m: usize) -> Result<C> {
    let n = f.dim();
    if m > MAX_WORD_LENGTH || (m > 0 && n > MAX_WORD_DIM) {
        return Err(Error::Budget(format!("word sum with m = {m}, n = {n} exceeds m ≤ {MAX_WORD_LENGTH}, n ≤ {MAX_WORD_DIM}")));
    }
    let ops = operators(n);
    fn walk<C: Coeff>(g: &ComplexPoly<C>, depth: usize, ops: &[(usize, usize, bool)]) -> C {
        if g.is_zero() {
            return C::zero();
        }
        if depth == 0 {
            return norm_sq_sphere(g);
        }
        ops.iter().fold(C::zero(), |acc, &(j, k, c)| acc + walk(&g.tangential_unchecked(j, k, c), depth - 1, ops))
    }
    Ok(walk(f, m, &ops))
}

/// Σ_pq [4pq+(2n−2)(p+q)]^m ‖f_pq‖².
pub fn spectral_tangential_sum(f: &PWDecomposition, m: usize) -> SeminormReport {
    let mut value = 0.0;
    let mut cells = Vec::new();
    for ((p, q), norm) in f.cell_norms() {
        value += tangential_eigenvalue(f.n, p, q).powi(m as i32) * norm.re;
        cells.push(Cell::Bigraded(p, q));
    }
    SeminormReport::new(format!("tangential_spectral(m={m})"), value.max(0.0), 16.0 * f64::EPSILON * value.abs(), cells)
}

/// Brute-force word sum with the spectral value recorded alongside.
pub fn tangential_sum(f: &ComplexPoly, m: usize) -> Result<SeminormReport> {
    let brute = tangential_word_sum(f, m)?.re;
    let pw = crate::harmonics::peter_weyl_all(f);
    let spectral = spectral_tangential_sum(&pw, m);
    let scale = brute.abs().max(spectral.value).max(1.0);
    Ok(SeminormReport::new(format!("tangential(m={m})"), brute.max(0.0), 64.0 * f64::EPSILON * scale, spectral.cells_used)
        .with_note(format!("spectral {:.17e}", spectral.value)))
}
