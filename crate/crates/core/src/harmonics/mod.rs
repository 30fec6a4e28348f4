//! Bigraded spherical harmonics H^{pq}: bases, zonal kernels, radial profiles,
//! solid M-harmonic extensions and the Peter–Weyl projections.

mod fischer;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

pub use fischer::{fischer_components, harmonic_projection, peter_weyl, peter_weyl_all};

use crate::error::{Error, Result};
use crate::polyalg::{norm_sq_sphere, sphere_inner, Coeff, ComplexPoly, MultiIndex, Rational};
use crate::specfun::{normalized_2f1, normalized_2f1_derivs};

/// Orthonormal basis of H^{pq} in the canonical monomial order.
#[derive(Debug, Clone)]
pub struct HpqBasis {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub elements: Vec<ComplexPoly>,
    pub dim: usize,
}

/// One Peter–Weyl cell: boundary harmonic h of bidegree (p,q), extended by S^{pq}.
#[derive(Debug, Clone, PartialEq)]
pub struct BigradedComponent<C: Coeff = Complex64> {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub boundary: ComplexPoly<C>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PWDecomposition<C: Coeff = Complex64> {
    pub n: usize,
    pub components: BTreeMap<(usize, usize), BigradedComponent<C>>,
    /// L²(∂Bₙ) bound on the omitted cells
    pub tail_bound: f64,
}

fn ensure_space(n: usize, p: usize, q: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("dimension must be ≥ 1".into()));
    }
    if n == 1 && p * q != 0 {
        return Err(Error::TrivialSpace);
    }
    Ok(())
}

/// Harmonic projections of the monomials z^α z̄^β of bidegree (p,q) with α₁β₁ = 0.
/// These span H^{pq} and are linearly independent; coefficients are exact.
pub fn rational_basis(n: usize, p: usize, q: usize) -> Result<Vec<ComplexPoly<Rational>>> {
    ensure_space(n, p, q)?;
    let mut out = Vec::new();
    for a in MultiIndex::all_of_order(n, p as u32) {
        for b in MultiIndex::all_of_order(n, q as u32) {
            if a.0[0] > 0 && b.0[0] > 0 {
                continue;
            }
            let m = ComplexPoly::monomial(a.as_slice(), b.as_slice(), Rational::one());
            out.push(harmonic_projection(&m, p, q));
        }
    }
    Ok(out)
}

static BASES: Lazy<RwLock<HashMap<(usize, usize, usize), Arc<HpqBasis>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Orthonormal basis of H^{pq} (memoized).
pub fn build_basis(n: usize, p: usize, q: usize) -> Result<Arc<HpqBasis>> {
    if let Some(b) = BASES.read().get(&(n, p, q)) {
        return Ok(b.clone());
    }
    let spanning = rational_basis(n, p, q)?;
    if p + q == 0 {
        let basis = Arc::new(HpqBasis { n, p, q, elements: vec![ComplexPoly::one(n)], dim: 1 });
        BASES.write().entry((n, p, q)).or_insert_with(|| basis.clone());
        return Ok(basis);
    }
    let mut elements: Vec<ComplexPoly> = Vec::with_capacity(spanning.len());
    for v in spanning {
        let mut w = v.to_float();
        for _ in 0..2 {
            for e in &elements {
                let proj = sphere_inner(&w, e)?;
                w = &w - &e.scale(&proj);
            }
        }
        let norm = norm_sq_sphere(&w).re.sqrt();
        if norm < 1e-12 {
            return Err(Error::Convergence(format!("dependent spanning set for H^({p},{q}), n={n}")));
        }
        elements.push(w.scale(&Complex64::new(1.0 / norm, 0.0)).pruned(1e-15));
    }
    let dim = elements.len();
    let basis = Arc::new(HpqBasis { n, p, q, elements, dim });
    BASES.write().entry((n, p, q)).or_insert_with(|| basis.clone());
    Ok(basis)
}

/// dim H^{pq} by rank of D = Σ∂_j∂̄_j from bidegree (p,q) to (p−1,q−1), exact elimination.
pub fn harmonic_dimension_by_elimination(n: usize, p: usize, q: usize) -> usize {
    let src: Vec<(MultiIndex, MultiIndex)> = MultiIndex::all_of_order(n, p as u32)
        .into_iter()
        .flat_map(|a| MultiIndex::all_of_order(n, q as u32).into_iter().map(move |b| (a.clone(), b)))
        .collect();
    if p == 0 || q == 0 {
        return src.len();
    }
    let dst: Vec<(MultiIndex, MultiIndex)> = MultiIndex::all_of_order(n, p as u32 - 1)
        .into_iter()
        .flat_map(|a| MultiIndex::all_of_order(n, q as u32 - 1).into_iter().map(move |b| (a.clone(), b)))
        .collect();
    let row_of: HashMap<_, _> = dst.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut m = vec![vec![BigRational::zero(); src.len()]; dst.len()];
    for (col, (a, b)) in src.iter().enumerate() {
        let img: ComplexPoly<Rational> = ComplexPoly::monomial(a.as_slice(), b.as_slice(), Rational::one()).box_d();
        for (k, v) in img.terms() {
            m[row_of[k]][col] = v.clone();
        }
    }
    src.len() - rank(&mut m)
}

fn rank(m: &mut [Vec<BigRational>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let pv = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pv;
            for k in c..cols {
                let sub = &f * &m[r][k];
                m[i][k] -= sub;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Zonal kernel H^{pq}(w) = Σ_k c_k w^{|p−q|+k} w̄^k (p ≥ q), conjugated variable for p < q.
#[derive(Debug, Clone, PartialEq)]
pub struct HpqKernel {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub coeffs: Vec<Rational>,
}

fn factorial(k: usize) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn hpq_kernel(n: usize, p: usize, q: usize) -> Result<HpqKernel> {
    ensure_space(n, p, q)?;
    let (hi, lo) = (p.max(q), p.min(q));
    if hi == 0 {
        return Ok(HpqKernel { n, p, q, coeffs: vec![Rational::one()] });
    }
    let sign = if lo % 2 == 0 { 1 } else { -1 };
    let pref = BigRational::new(
        BigInt::from(sign * (n + hi + lo - 1) as i64) * factorial(n + hi - 2),
        factorial(n - 1) * factorial(lo) * factorial(hi - lo),
    );
    let mut coeffs = Vec::with_capacity(lo + 1);
    let mut c = pref;
    for k in 0..=lo {
        coeffs.push(c.clone());
        let kk = k as i64;
        c = c * BigRational::new(
            BigInt::from((kk - lo as i64) * (n as i64 + hi as i64 - 1 + kk)),
            BigInt::from((hi as i64 - lo as i64 + 1 + kk) * (kk + 1)),
        );
    }
    Ok(HpqKernel { n, p, q, coeffs })
}

impl HpqKernel {
    fn shift(&self) -> u32 {
        self.p.abs_diff(self.q) as u32
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let w = if self.p >= self.q { w } else { w.conj() };
        let t = w.norm_sqr();
        let mut acc = Complex64::zero();
        let mut tk = 1.0;
        for c in &self.coeffs {
            acc += c.to_c64() * tk;
            tk *= t;
        }
        acc * w.powu(self.shift())
    }

    /// H^{pq}(1), equal to dim H^{pq}.
    pub fn trace(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, c| a + c)
    }

    /// ζ ↦ H^{pq}(⟨ζ, ξ⟩) as a polynomial in ζ, ζ̄.
    pub fn as_poly_in(&self, xi: &[Complex64]) -> ComplexPoly {
        let n = xi.len();
        let mut w = ComplexPoly::zero(n);
        for (j, x) in xi.iter().enumerate() {
            w.add_term(MultiIndex::unit(n, j), MultiIndex::zeros(n), x.conj());
        }
        if self.p < self.q {
            w = w.conj();
        }
        let wbar = w.conj();
        let ww = &w * &wbar;
        let mut base = (0..self.shift()).fold(ComplexPoly::one(n), |acc, _| &acc * &w);
        let mut out = ComplexPoly::zero(n);
        for c in &self.coeffs {
            out = &out + &base.scale(&c.to_c64());
            base = &base * &ww;
        }
        out
    }
}

static KERNELS: Lazy<RwLock<HashMap<(usize, usize, usize), Arc<HpqKernel>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

pub(crate) fn cached_kernel(n: usize, p: usize, q: usize) -> Result<Arc<HpqKernel>> {
    if let Some(k) = KERNELS.read().get(&(n, p, q)) {
        return Ok(k.clone());
    }
    let k = Arc::new(hpq_kernel(n, p, q)?);
    KERNELS.write().entry((n, p, q)).or_insert_with(|| k.clone());
    Ok(k)
}

/// S^{pq}(r) = F̃(r²)·r^{p+q}.
pub fn radial_profile(n: usize, p: usize, q: usize, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("radius {r} outside [0,1]")));
    }
    Ok(normalized_2f1(n, p, q, r * r)?.0 * r.powi((p + q) as i32))
}

fn norm2(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}

fn check_interior(z: &[Complex64]) -> Result<f64> {
    let t = norm2(z);
    if t >= 1.0 {
        return Err(Error::Domain(format!("point with |z|² = {t} not inside the ball")));
    }
    Ok(t)
}

/// K^{pq}(z,w) = S^{pq}(|z|)S^{pq}(|w|)H^{pq}(⟨ζ,ξ⟩).
pub fn kpq_kernel(z: &[Complex64], w: &[Complex64], n: usize, p: usize, q: usize) -> Result<Complex64> {
    if z.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch(n, z.len().max(w.len())));
    }
    check_interior(z)?;
    check_interior(w)?;
    let k = cached_kernel(n, p, q)?;
    if p + q == 0 {
        return Ok(Complex64::one());
    }
    let (r, rr) = (norm2(z).sqrt(), norm2(w).sqrt());
    if r == 0.0 || rr == 0.0 {
        return Ok(Complex64::zero());
    }
    let inner: Complex64 = z.iter().zip(w).map(|(a, b)| a * b.conj()).sum::<Complex64>() / (r * rr);
    let s1 = radial_profile(n, p, q, r)?;
    let s2 = radial_profile(n, p, q, rr)?;
    Ok(k.eval(inner) * s1 * s2)
}

/// Checks bihomogeneity and harmonicity and wraps the boundary as a Peter–Weyl cell.
pub fn solid_extend<C: Coeff>(boundary: &ComplexPoly<C>) -> Result<BigradedComponent<C>> {
    let n = boundary.dim();
    let (p, q) = if boundary.is_zero() {
        (0, 0)
    } else {
        boundary.bihomogeneous().ok_or_else(|| Error::InvalidInput("bihomogeneous".into()))?
    };
    let lap = boundary.box_d();
    if lap.max_abs_coeff() > 1e-10 * boundary.max_abs_coeff().max(1.0) {
        return Err(Error::InvalidInput("harmonic".into()));
    }
    ensure_space(n, p, q)?;
    Ok(BigradedComponent { n, p, q, boundary: boundary.clone() })
}

impl<C: Coeff> BigradedComponent<C> {
    pub fn norm_sq(&self) -> C {
        norm_sq_sphere(&self.boundary)
    }

    /// u(z) = F̃(|z|²)·h(z), the M-harmonic extension.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        let t = check_interior(z)?;
        Ok(self.boundary.eval(z) * normalized_2f1(self.n, self.p, self.q, t)?.0)
    }

    /// Value and complex Hessian u_{jk̄} = ∂_j∂̄_k u at an interior point with |z|² ≤ 0.95.
    pub fn value_and_hessian(&self, z: &[Complex64]) -> Result<(Complex64, DMatrix<Complex64>)> {
        let n = self.n;
        let t = check_interior(z)?;
        let [f0, f1, f2] = normalized_2f1_derivs(n, self.p, self.q, t)?;
        let h = self.boundary.to_float();
        let hv = h.eval(z);
        let dh: Vec<ComplexPoly> = (0..n).map(|j| h.wirtinger(j, false)).collect::<Result<_>>()?;
        let dbh: Vec<ComplexPoly> = (0..n).map(|k| h.wirtinger(k, true)).collect::<Result<_>>()?;
        let hj: Vec<Complex64> = dh.iter().map(|d| d.eval(z)).collect();
        let hk: Vec<Complex64> = dbh.iter().map(|d| d.eval(z)).collect();
        let mut hess = DMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                let hjk = dh[j].wirtinger(k, true)?.eval(z);
                let delta = if j == k { 1.0 } else { 0.0 };
                hess[(j, k)] = f2 * z[j].conj() * z[k] * hv
                    + f1 * delta * hv
                    + f1 * z[k] * hj[j]
                    + f1 * z[j].conj() * hk[k]
                    + f0 * hjk;
            }
        }
        Ok((hv * f0, hess))
    }

    /// Δ̃u at z from the exact Hessian.
    pub fn invariant_laplacian_at(&self, z: &[Complex64]) -> Result<Complex64> {
        let (_, hess) = self.value_and_hessian(z)?;
        Ok(invariant_laplacian_from_hessian(z, &hess))
    }
}

/// 4(1−|z|²) Σ (δ_jk − z_j z̄_k) u_{jk̄}
pub fn invariant_laplacian_from_hessian(z: &[Complex64], hess: &DMatrix<Complex64>) -> Complex64 {
    let n = z.len();
    let mut acc = Complex64::zero();
    for j in 0..n {
        for k in 0..n {
            let delta = if j == k { 1.0 } else { 0.0 };
            acc += (Complex64::new(delta, 0.0) - z[j] * z[k].conj()) * hess[(j, k)];
        }
    }
    acc * 4.0 * (1.0 - norm2(z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// cell (0,0)
    Pi0,
    /// cells (p,0)
    Hol,
    /// cells (0,q)
    AntiHol,
    /// pluriharmonic part Π + Π̄ − Π₀
    P,
    /// I − P
    Q,
}

impl Projection {
    pub fn keeps(self, p: usize, q: usize) -> bool {
        match self {
            Projection::Pi0 => p == 0 && q == 0,
            Projection::Hol => q == 0,
            Projection::AntiHol => p == 0,
            Projection::P => p * q == 0,
            Projection::Q => p * q != 0,
        }
    }
}

impl std::str::FromStr for Projection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pi0" => Ok(Projection::Pi0),
            "hol" => Ok(Projection::Hol),
            "antihol" => Ok(Projection::AntiHol),
            "p" => Ok(Projection::P),
            "q" => Ok(Projection::Q),
            other => Err(Error::InvalidInput(format!("a projection name (pi0|hol|antihol|P|Q), got {other}"))),
        }
    }
}

/// Cell selection on a decomposition.
pub fn project<C: Coeff>(f: &PWDecomposition<C>, which: Projection) -> PWDecomposition<C> {
    let components = f.components.iter().filter(|(k, _)| which.keeps(k.0, k.1)).map(|(k, v)| (*k, v.clone())).collect();
    PWDecomposition { n: f.n, components, tail_bound: f.tail_bound }
}

/// Projection of the boundary values of a polynomial, returned as the sum of kept cells.
pub fn project_poly<C: Coeff>(f: &ComplexPoly<C>, which: Projection) -> ComplexPoly<C> {
    project(&peter_weyl_all(f), which).to_poly()
}

impl<C: Coeff> PWDecomposition<C> {
    pub fn cell_norms(&self) -> BTreeMap<(usize, usize), C> {
        self.components.iter().map(|(k, c)| (*k, c.norm_sq())).collect()
    }

    pub fn to_float(&self) -> PWDecomposition {
        let components = self
            .components
            .iter()
            .map(|(k, c)| (*k, BigradedComponent { n: c.n, p: c.p, q: c.q, boundary: c.boundary.to_float() }))
            .collect();
        PWDecomposition { n: self.n, components, tail_bound: self.tail_bound }
    }

    /// True when every cell with pq > 0 is absent.
    pub fn is_pluriharmonic(&self) -> bool {
        self.components.keys().all(|(p, q)| p * q == 0)
    }

    /// u(z) = Σ F̃_pq(|z|²) h_pq(z).
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.components.values().map(|c| c.eval(z)).sum()
    }
}

/// Quick magnitude check used by callers that need harmonic input.
pub fn is_harmonic<C: Coeff>(f: &ComplexPoly<C>, tol: f64) -> bool {
    f.box_d().max_abs_coeff() <= tol * f.max_abs_coeff().max(1.0)
}

