//! Harmonic polynomials on ℝⁿ: orthonormal bases of the degree-p harmonics,
//! zonal harmonics, weighted norms on the real ball and the tangential word
//! sums.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::Serialize;

use crate::coeffs::{harm_coeff, harm_sq};
use crate::error::{Error, Result};
use crate::polyalg::{real_ball_inner, real_sphere_inner, Coeff, MultiIndex, Rational, RealPoly};
use crate::seminorms::{ratio_window, Cell, RatioWindow, SeminormReport};

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicBasis {
    pub n: usize,
    pub p: usize,
    pub elements: Vec<RealPoly>,
}

/// Σ_k c_k |x|^{2k} Δ^k f for f homogeneous of degree d.
pub fn real_harmonic_projection<C: Coeff>(f: &RealPoly<C>, d: usize) -> RealPoly<C> {
    let n = f.dim() as i64;
    let mut out = f.clone();
    let mut lap = f.laplacian();
    let mut c = Rational::one();
    let mut k = 0i64;
    while !lap.is_zero() {
        c = -c / Rational::from_integer(BigInt::from(2 * (k + 1) * (n + 2 * d as i64 - 2 * k - 4)));
        let mut term = lap.scale(&C::from_rational(&c));
        for _ in 0..=k {
            term = term.times_norm_sq();
        }
        out = &out + &term;
        lap = lap.laplacian();
        k += 1;
    }
    out
}

/// Harmonic projections of the degree-p monomials with α₁ ≤ 1.
pub fn rational_harmonic_basis(n: usize, p: usize) -> Result<Vec<RealPoly<Rational>>> {
    if n < 2 {
        return Err(Error::Domain("real harmonic bases need n ≥ 2".into()));
    }
    Ok(MultiIndex::all_of_order(n, p as u32)
        .into_iter()
        .filter(|a| a.0[0] <= 1)
        .map(|a| real_harmonic_projection(&RealPoly::monomial(a.as_slice(), Rational::one()), p))
        .collect())
}

static BASES: Lazy<RwLock<HashMap<(usize, usize), Arc<HarmonicBasis>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Orthonormal basis of the degree-p harmonics under the normalized sphere measure.
pub fn harmonic_basis(n: usize, p: usize) -> Result<Arc<HarmonicBasis>> {
    if let Some(b) = BASES.read().get(&(n, p)) {
        return Ok(b.clone());
    }
    let mut elements: Vec<RealPoly> = Vec::new();
    for v in rational_harmonic_basis(n, p)? {
        let mut w = v.map_coeffs(|c| c.to_c64().re);
        if p == 0 {
            elements.push(w);
            continue;
        }
        for _ in 0..2 {
            for e in &elements {
                let proj = real_sphere_inner(&w, e)?;
                w = &w - &e.scale(&proj);
            }
        }
        let norm = real_sphere_inner(&w, &w)?.sqrt();
        if norm < 1e-12 {
            return Err(Error::Convergence(format!("dependent spanning set in degree {p}, n={n}")));
        }
        elements.push(w.scale(&(1.0 / norm)));
    }
    let basis = Arc::new(HarmonicBasis { n, p, elements });
    BASES.write().entry((n, p)).or_insert_with(|| basis.clone());
    Ok(basis)
}

/// Z_p(x, y) = Σ e(x)e(y) over an orthonormal basis of degree p.
pub fn zonal(n: usize, p: usize, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch(n, x.len().max(y.len())));
    }
    let b = harmonic_basis(n, p)?;
    Ok(b.elements.iter().map(|e| e.eval(x) * e.eval(y)).sum())
}

pub fn is_harmonic<C: Coeff>(f: &RealPoly<C>) -> bool {
    f.laplacian().max_abs_coeff() <= 1e-12 * f.max_abs_coeff().max(1.0)
}

/// Degree-graded split of a harmonic polynomial.
pub fn harm_decompose<C: Coeff>(f: &RealPoly<C>) -> Result<BTreeMap<usize, RealPoly<C>>> {
    let parts = f.homogeneous_parts();
    for g in parts.values() {
        if !is_harmonic(g) {
            return Err(Error::InvalidInput("harmonic".into()));
        }
    }
    Ok(parts.into_iter().filter(|(_, g)| !g.is_zero()).collect())
}

fn cell_norms(f: &RealPoly) -> Result<BTreeMap<usize, f64>> {
    harm_decompose(f)?.into_iter().map(|(p, g)| Ok((p, real_sphere_inner(&g, &g)?))).collect()
}

fn weighted(name: &str, f: &RealPoly, weight: impl Fn(usize) -> Result<f64>) -> Result<SeminormReport> {
    let mut value = 0.0;
    let mut abs = 0.0;
    let mut cells = Vec::new();
    for (p, norm) in cell_norms(f)? {
        let t = weight(p)? * norm;
        value += t;
        abs += t.abs();
        cells.push(Cell::Degree(p));
    }
    Ok(SeminormReport::new(name, value, 16.0 * f64::EPSILON * abs, cells))
}

/// Σ_p (n/2)_p/(n/2+s+1)_p ‖f_p‖².
pub fn harm_norm_s(f: &RealPoly, s: f64) -> Result<SeminormReport> {
    let n = f.dim();
    if s < -(n as f64) / 2.0 - 1.0 {
        return Err(Error::Domain(format!("s = {s} below the harmonic Wallach point")));
    }
    weighted(&format!("harm_norm_s(s={s})"), f, |p| harm_coeff(n, p, s))
}

/// Σ_p p(n/2)_p/p! ‖f_p‖².
pub fn dirichlet_sq(f: &RealPoly) -> Result<SeminormReport> {
    let n = f.dim();
    weighted("dirichlet_sq", f, |p| Ok(harm_sq(n, p)))
}

/// Ordered pairs (j, k), j ≠ k, 0-based.
pub fn real_tangential_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..n).filter(move |&k| k != j).map(move |k| (j, k))).collect()
}

/// All X_{j1}…X_{jm} f over words in the n(n−1) fields, built level by level.
pub fn real_words<C: Coeff>(f: &RealPoly<C>, m: usize) -> Vec<RealPoly<C>> {
    let pairs = real_tangential_pairs(f.dim());
    let mut level = vec![f.clone()];
    for _ in 0..m {
        level = level.iter().flat_map(|g| pairs.iter().map(move |&(j, k)| g.tangential_unchecked(j, k))).collect();
    }
    level
}

/// Σ over words of ‖X_{j1}…X_{jm} f‖²_{∂bⁿ}, exact in the coefficient field.
pub fn real_word_sum_sphere<C: Coeff>(f: &RealPoly<C>, m: usize) -> Result<C> {
    real_words(f, m).iter().try_fold(C::zero(), |acc, g| Ok(acc + real_sphere_inner(g, g)?))
}

/// Σ_p [2p(p+n−2)]^m ‖f_p‖²_{∂bⁿ}.
pub fn real_spectral_sum_sphere<C: Coeff>(f: &RealPoly<C>, m: usize) -> Result<C> {
    let n = f.dim() as i64;
    let mut acc = C::zero();
    for (p, g) in harm_decompose(f)? {
        let lam = 2 * p as i64 * (p as i64 + n - 2);
        acc = acc + C::from_i64(lam.pow(m as u32)) * real_sphere_inner(&g, &g)?;
    }
    Ok(acc)
}

/// Spectral form of Σ_words ‖X…f‖²_s at s = 2m − n/2 − 1.
pub fn theorem_pj_sums(f: &RealPoly, m: usize) -> Result<SeminormReport> {
    let n = f.dim();
    if 4 * m <= n {
        return Err(Error::Domain(format!("need 4m > n, got m = {m}, n = {n}")));
    }
    let s = 2.0 * m as f64 - n as f64 / 2.0 - 1.0;
    let nf = n as f64;
    weighted(&format!("pj_sum(m={m})"), f, |p| {
        let lam = 2.0 * p as f64 * (p as f64 + nf - 2.0);
        Ok(lam.powi(m as i32) * harm_coeff(n, p, s)?)
    })
}

/// Brute-force Σ_words ‖X_{j1}…X_{jm} f‖²_s with exact ball moments.
pub fn real_word_sum_ball(f: &RealPoly, m: usize, s: f64) -> Result<f64> {
    real_words(f, m).iter().try_fold(0.0, |acc, g| Ok(acc + real_ball_inner(g, g, s)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PjRow {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PjIdentityCheck {
    pub n: usize,
    pub m: usize,
    pub degree: usize,
    pub word_sum: f64,
    pub spectral_sum: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PjReport {
    pub rows: Vec<PjRow>,
    pub windows: Vec<(usize, usize, RatioWindow)>,
    pub identity: Vec<PjIdentityCheck>,
    /// the sphere identity for m = 1 checked in exact arithmetic
    pub exact_identity_holds: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PjGrid {
    pub cases: Vec<(usize, usize)>,
    pub p_max: usize,
    pub identity_degree: usize,
}

impl Default for PjGrid {
    fn default() -> Self {
        PjGrid { cases: vec![(2, 1), (3, 1), (4, 2), (5, 2)], p_max: 10, identity_degree: 3 }
    }
}

/// Ratio of the word-sum weight [2p(p+n−2)]^m (n/2)_p/(n/2+s+1)_p at
/// s = 2m−n/2−1 to p(n/2)_p/p!.
pub fn pj_ratio(n: usize, m: usize, p: usize) -> Result<f64> {
    let s = 2.0 * m as f64 - n as f64 / 2.0 - 1.0;
    let lam = 2.0 * p as f64 * (p as f64 + n as f64 - 2.0);
    Ok(lam.powi(m as i32) * harm_coeff(n, p, s)? / harm_sq(n, p))
}

pub fn theorem_pj_verify(grid: &PjGrid) -> Result<PjReport> {
    let mut rows = Vec::new();
    let mut windows = Vec::new();
    let mut identity = Vec::new();
    let mut exact = true;
    let mut pass = true;
    for &(n, m) in &grid.cases {
        if 4 * m <= n {
            return Err(Error::Domain(format!("need 4m > n, got m = {m}, n = {n}")));
        }
        let mut pts = Vec::new();
        for p in 1..=grid.p_max {
            let ratio = pj_ratio(n, m, p)?;
            rows.push(PjRow { n, m, p, ratio });
            pts.push((p as f64, ratio));
        }
        let w = ratio_window(&pts);
        pass &= !w.degenerate;
        windows.push((n, m, w));
        if n <= 3 && m == 1 {
            let s = 2.0 * m as f64 - n as f64 / 2.0 - 1.0;
            for d in 0..=grid.identity_degree {
                for e in &rational_harmonic_basis(n, d)? {
                    exact &= real_word_sum_sphere(e, 1)? == real_spectral_sum_sphere(e, 1)?;
                }
                let b = harmonic_basis(n, d)?;
                let f = b.elements.iter().enumerate().fold(RealPoly::zero(n), |acc, (i, e)| &acc + &e.scale(&(1.0 + i as f64)));
                let word_sum = real_word_sum_ball(&f, m, s)?;
                let spectral_sum = theorem_pj_sums(&f, m)?.value;
                let defect = (word_sum - spectral_sum).abs();
                pass &= defect <= 1e-9 * (1.0 + spectral_sum.abs());
                identity.push(PjIdentityCheck { n, m, degree: d, word_sum, spectral_sum, defect });
            }
        }
    }
    pass &= exact;
    Ok(PjReport { rows, windows, identity, exact_identity_holds: exact, pass })
}
