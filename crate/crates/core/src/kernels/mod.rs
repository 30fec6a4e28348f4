//! Reproducing kernels: closed forms for the holomorphic scale and truncated
//! Peter–Weyl series for the M-harmonic, Dirichlet-type and real harmonic
//! spaces, with Gram-matrix positivity checks.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::coeffs::{c_cici, c_pq_auto};
use crate::error::{Error, Result};
use crate::harmonics::kpq_kernel;
use crate::realharm::zonal;
use crate::specfun::pochhammer;

fn inner(x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    for p in [x, y] {
        let r: f64 = p.iter().map(|c| c.norm_sqr()).sum();
        if r >= 1.0 {
            return Err(Error::Domain(format!("point with |z|² = {r} not inside the ball")));
        }
    }
    Ok(x.iter().zip(y).map(|(a, b)| a * b.conj()).sum())
}

/// (1 − ⟨x,y⟩)^{−s−n−1}.
pub fn k_hol(x: &[Complex64], y: &[Complex64], n: usize, s: f64) -> Result<Complex64> {
    let w = inner(x, y)?;
    Ok((Complex64::new(1.0, 0.0) - w).powf(-s - n as f64 - 1.0))
}

/// log 1/(1 − ⟨x,y⟩).
pub fn k_hol_circ(x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
    let w = inner(x, y)?;
    Ok(-(Complex64::new(1.0, 0.0) - w).ln())
}

/// log 1/|1 − ⟨x,y⟩|².
pub fn k_circ(x: &[Complex64], y: &[Complex64]) -> Result<f64> {
    let w = inner(x, y)?;
    Ok(-(Complex64::new(1.0, 0.0) - w).norm_sqr().ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    MharmonicS,
    Cici,
    Circ,
    HarmonicS,
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mharmonic" | "mharmonic_s" | "s" => Ok(KernelFamily::MharmonicS),
            "cici" => Ok(KernelFamily::Cici),
            "circ" => Ok(KernelFamily::Circ),
            "harmonic" | "harmonic_s" | "harm" => Ok(KernelFamily::HarmonicS),
            other => Err(Error::InvalidInput(format!("a kernel family name (got {other:?})"))),
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            KernelFamily::MharmonicS => "mharmonic_s",
            KernelFamily::Cici => "cici",
            KernelFamily::Circ => "circ",
            KernelFamily::HarmonicS => "harmonic_s",
        };
        f.write_str(name)
    }
}

/// Partial sum of a Peter–Weyl kernel series over cells with p+q ≤ cutoff
/// (p ≤ cutoff for the real harmonic family).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedKernel {
    pub family: KernelFamily,
    pub n: usize,
    pub s: Option<f64>,
    pub cutoff: usize,
    pub tail_note: String,
    /// (p, q) → coefficient of K_pq; q = 0 for the real family
    pub weights: Vec<((usize, usize), f64)>,
}

pub fn k_s_truncated(n: usize, s: f64, cutoff: usize) -> Result<TruncatedKernel> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be ≥ 1".into()));
    }
    if s <= -(n as f64) - 1.0 {
        return Err(Error::Domain(format!("s = {s} at or below −n−1")));
    }
    let mut weights = Vec::new();
    for total in 0..=cutoff {
        for p in 0..=total {
            let q = total - p;
            if n == 1 && p * q > 0 {
                continue;
            }
            let (c, _) = c_pq_auto(n, p, q, s)?;
            weights.push(((p, q), 1.0 / c));
        }
    }
    Ok(TruncatedKernel {
        family: KernelFamily::MharmonicS,
        n,
        s: Some(s),
        cutoff,
        tail_note: format!("cells with p+q ≤ {cutoff}; no tail estimate"),
        weights,
    })
}

pub fn k_cici_truncated(n: usize, cutoff: usize) -> Result<TruncatedKernel> {
    if n == 1 {
        return Err(Error::TrivialSpace);
    }
    if n == 0 {
        return Err(Error::Domain("dimension n must be ≥ 1".into()));
    }
    let mut weights = Vec::new();
    for total in 2..=cutoff {
        for p in 1..total {
            weights.push(((p, total - p), 1.0 / c_cici(n, p, total - p)));
        }
    }
    Ok(TruncatedKernel {
        family: KernelFamily::Cici,
        n,
        s: None,
        cutoff,
        tail_note: format!("cells with p, q ≥ 1 and p+q ≤ {cutoff}; no tail estimate"),
        weights,
    })
}

/// Σ_{1 ≤ p ≤ cutoff} (p−1)!/(n)_p (K_p0 + K_0p) = Σ (⟨z,w⟩^p + conj)/p truncated.
pub fn k_circ_truncated(n: usize, cutoff: usize) -> Result<TruncatedKernel> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be ≥ 1".into()));
    }
    let mut weights = Vec::new();
    for p in 1..=cutoff {
        let w = crate::specfun::gamma(p as f64) / pochhammer(n as f64, p);
        weights.push(((p, 0), w));
        weights.push(((0, p), w));
    }
    Ok(TruncatedKernel {
        family: KernelFamily::Circ,
        n,
        s: None,
        cutoff,
        tail_note: format!("pluriharmonic cells of degree ≤ {cutoff}; no tail estimate"),
        weights,
    })
}

/// Σ_{p ≤ cutoff} (n/2+s+1)_p/(n/2)_p Z_p on the real ball bⁿ.
pub fn k_harm_truncated(n: usize, s: f64, cutoff: usize) -> Result<TruncatedKernel> {
    if n < 2 {
        return Err(Error::Domain("real harmonic kernels need n ≥ 2".into()));
    }
    let h = n as f64 / 2.0;
    if s < -h - 1.0 {
        return Err(Error::Domain(format!("s = {s} below −n/2−1")));
    }
    let weights = (0..=cutoff).map(|p| ((p, 0), pochhammer(h + s + 1.0, p) / pochhammer(h, p))).collect();
    Ok(TruncatedKernel {
        family: KernelFamily::HarmonicS,
        n,
        s: Some(s),
        cutoff,
        tail_note: format!("degrees p ≤ {cutoff}; no tail estimate"),
        weights,
    })
}

pub fn truncated_kernel(family: KernelFamily, n: usize, s: Option<f64>, cutoff: usize) -> Result<TruncatedKernel> {
    let need = || s.ok_or_else(|| Error::InvalidInput(format!("given a weight s for family {family}")));
    match family {
        KernelFamily::MharmonicS => k_s_truncated(n, need()?, cutoff),
        KernelFamily::Cici => k_cici_truncated(n, cutoff),
        KernelFamily::Circ => k_circ_truncated(n, cutoff),
        KernelFamily::HarmonicS => k_harm_truncated(n, need()?, cutoff),
    }
}

fn real_point(z: &[Complex64]) -> Result<Vec<f64>> {
    if z.iter().any(|c| c.im != 0.0) {
        return Err(Error::InvalidInput("a real point for the real harmonic family".into()));
    }
    Ok(z.iter().map(|c| c.re).collect())
}

impl TruncatedKernel {
    fn cell(&self, z: &[Complex64], w: &[Complex64], p: usize, q: usize) -> Result<Complex64> {
        if self.family == KernelFamily::HarmonicS {
            let (x, y) = (real_point(z)?, real_point(w)?);
            return Ok(Complex64::new(zonal(self.n, p, &x, &y)?, 0.0));
        }
        kpq_kernel(z, w, self.n, p, q)
    }

    fn check(&self, z: &[Complex64], w: &[Complex64]) -> Result<()> {
        if z.len() != self.n || w.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, z.len().max(w.len())));
        }
        inner(z, w).map(|_| ())
    }

    pub fn eval(&self, z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
        self.check(z, w)?;
        let mut acc = Complex64::zero();
        for &((p, q), c) in &self.weights {
            acc += self.cell(z, w, p, q)? * c;
        }
        Ok(acc)
    }

    pub fn eval_real(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let w: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.eval(&z, &w)?.re)
    }

    /// The cells with p+q = level (p = level for the real family).
    pub fn shell(&self, z: &[Complex64], w: &[Complex64], level: usize) -> Result<Complex64> {
        self.check(z, w)?;
        let mut acc = Complex64::zero();
        for &((p, q), c) in self.weights.iter().filter(|((p, q), _)| p + q == level) {
            acc += self.cell(z, w, p, q)? * c;
        }
        Ok(acc)
    }
}

pub fn gram_matrix(k: &TruncatedKernel, points: &[Vec<Complex64>]) -> Result<DMatrix<Complex64>> {
    let m = points.len();
    let mut g = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = k.eval(&points[i], &points[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
        g[(i, i)] = Complex64::new(g[(i, i)].re, 0.0);
    }
    Ok(g)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(g: &DMatrix<Complex64>) -> f64 {
    g.clone().symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub family: KernelFamily,
    pub n: usize,
    pub s: Option<f64>,
    pub cutoff: usize,
    pub points: usize,
    pub seed: u64,
    pub min_eig: f64,
}

/// Gram check on `count` seeded points: in the complex ball for the complex
/// families, in the real ball for the harmonic family; radii below 0.9.
pub fn gram_check(k: &TruncatedKernel, count: usize, seed: u64) -> Result<GramReport> {
    let points: Vec<Vec<Complex64>> = if k.family == KernelFamily::HarmonicS {
        crate::sampling::real_ball_points(k.n, count, seed, 0.9)
            .into_iter()
            .map(|x| x.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
            .collect()
    } else {
        crate::sampling::ball_points(k.n, count, seed, 0.9)
    };
    let g = gram_matrix(k, &points)?;
    Ok(GramReport { family: k.family, n: k.n, s: k.s, cutoff: k.cutoff, points: count, seed, min_eig: min_eigenvalue(&g) })
}
