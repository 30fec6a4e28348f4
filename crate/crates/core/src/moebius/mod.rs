//! Automorphisms of the ball: the geodesic symmetries φ_a, exact composition
//! of polynomials with φ_a, certified expansion, and invariance checks.

mod expand;

pub use expand::{cici_tail, expand_boundary, sup_tail, Expansion};

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeffs::c_cici;
use crate::error::{Error, Result};
use crate::harmonics::{invariant_laplacian_from_hessian, peter_weyl_all, BigradedComponent, PWDecomposition};
use crate::polyalg::{rotate, sphere_inner, Coeff, ComplexPoly, MultiIndex, Rational};

fn check_a(a: f64) -> Result<()> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::Domain(format!("a = {a} not in [0,1)")));
    }
    Ok(())
}

fn norm2(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}

/// Geodesic symmetry exchanging 0 and (a,0,…,0):
/// φ_a(z) = (a − z₁, −√(1−a²) z′)/(1 − a z₁).
pub fn phi_a(a: f64, z: &[Complex64]) -> Result<Vec<Complex64>> {
    check_a(a)?;
    if z.is_empty() {
        return Err(Error::Domain("empty point".into()));
    }
    if norm2(z) > 1.0 + 1e-12 {
        return Err(Error::Domain("point outside the closed ball".into()));
    }
    let s = (1.0 - a * a).sqrt();
    let den = 1.0 - a * z[0];
    let mut out = Vec::with_capacity(z.len());
    out.push((a - z[0]) / den);
    out.extend(z[1..].iter().map(|w| -s * w / den));
    Ok(out)
}

/// J[(l, j)] = ∂(φ_a)_l/∂z_j.
pub fn phi_a_jacobian(a: f64, z: &[Complex64]) -> Result<DMatrix<Complex64>> {
    check_a(a)?;
    let n = z.len();
    let s = (1.0 - a * a).sqrt();
    let den = 1.0 - a * z[0];
    let mut j = DMatrix::zeros(n, n);
    j[(0, 0)] = Complex64::new(a * a - 1.0, 0.0) / (den * den);
    for l in 1..n {
        j[(l, 0)] = -s * a * z[l] / (den * den);
        j[(l, l)] = Complex64::new(-s, 0.0) / den;
    }
    Ok(j)
}

/// U∘φ_a∘V.
#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusMap {
    pub a: f64,
    pub u: DMatrix<Complex64>,
    pub v: DMatrix<Complex64>,
}

fn unitary_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - DMatrix::<Complex64>::identity(n, n)).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

impl MoebiusMap {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        check_a(a)?;
        Ok(MoebiusMap { a, u: DMatrix::identity(n, n), v: DMatrix::identity(n, n) })
    }

    pub fn with_unitaries(a: f64, u: DMatrix<Complex64>, v: DMatrix<Complex64>) -> Result<Self> {
        check_a(a)?;
        if u.shape() != v.shape() || u.nrows() != u.ncols() {
            return Err(Error::DimensionMismatch(u.nrows(), v.nrows()));
        }
        for m in [&u, &v] {
            let d = unitary_defect(m);
            if d > 1e-12 {
                return Err(Error::NotUnitary(d));
            }
        }
        Ok(MoebiusMap { a, u, v })
    }

    pub fn n(&self) -> usize {
        self.u.nrows()
    }

    pub fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        if z.len() != self.n() {
            return Err(Error::DimensionMismatch(self.n(), z.len()));
        }
        let vz = &self.v * nalgebra::DVector::from_column_slice(z);
        let w = phi_a(self.a, vz.as_slice())?;
        Ok((&self.u * nalgebra::DVector::from_vec(w)).as_slice().to_vec())
    }
}

/// numerator / ((1 − a z₁)^{p′} (1 − a z̄₁)^{q′}).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalComposite<C: Coeff = Complex64> {
    pub numerator: ComplexPoly<C>,
    pub hol_denom_power: usize,
    pub antihol_denom_power: usize,
    pub a: C,
}

fn linear<C: Coeff>(n: usize, c0: C, j: usize, cj: C, bar: bool) -> ComplexPoly<C> {
    let mut p = ComplexPoly::constant(n, c0);
    let e = MultiIndex::unit(n, j);
    if bar {
        p.add_term(MultiIndex::zeros(n), e, cj);
    } else {
        p.add_term(e, MultiIndex::zeros(n), cj);
    }
    p
}

fn compose_with<C: Coeff>(f: &ComplexPoly<C>, a: C, s: C) -> RationalComposite<C> {
    let n = f.dim();
    let (pp, qq) = f.degree_bounds();
    // φ₁ numerator a − z₁, φ_j numerator −s z_j, denominator 1 − a z₁
    let base = |j: usize, bar: bool| -> ComplexPoly<C> {
        if j == 0 {
            linear(n, a.clone(), 0, -C::one(), bar)
        } else {
            linear(n, C::zero(), j, -s.clone(), bar)
        }
    };
    let den = |bar: bool| linear(n, C::one(), 0, -a.clone(), bar);
    let mut cache: HashMap<(usize, bool, u32), ComplexPoly<C>> = HashMap::new();
    let mut power = |j: usize, bar: bool, e: u32| -> ComplexPoly<C> {
        cache
            .entry((j, bar, e))
            .or_insert_with(|| {
                let b = if j == usize::MAX { den(bar) } else { base(j, bar) };
                (0..e).fold(ComplexPoly::one(n), |acc, _| &acc * &b)
            })
            .clone()
    };
    let mut out = ComplexPoly::zero(n);
    for ((al, be), c) in f.terms() {
        let mut m = ComplexPoly::constant(n, c.clone());
        for j in 0..n {
            if al.0[j] > 0 {
                m = &m * &power(j, false, al.0[j]);
            }
            if be.0[j] > 0 {
                m = &m * &power(j, true, be.0[j]);
            }
        }
        let (dp, dq) = (pp - al.order() as usize, qq - be.order() as usize);
        if dp > 0 {
            m = &m * &power(usize::MAX, false, dp as u32);
        }
        if dq > 0 {
            m = &m * &power(usize::MAX, true, dq as u32);
        }
        out = &out + &m;
    }
    RationalComposite { numerator: out, hol_denom_power: pp, antihol_denom_power: qq, a }
}

/// f∘φ_a over the common denominator (1 − a z₁)^{p′}(1 − a z̄₁)^{q′}, with p′, q′
/// the holomorphic and antiholomorphic degrees of f.
pub fn compose_rational(f: &ComplexPoly, a: f64) -> Result<RationalComposite> {
    check_a(a)?;
    let s = (1.0 - a * a).sqrt();
    Ok(compose_with(f, Complex64::new(a, 0.0), Complex64::new(s, 0.0)))
}

/// Exact composition for rational a with √(1−a²) = s rational.
pub fn compose_rational_exact(f: &ComplexPoly<Rational>, a: Rational, s: Rational) -> Result<RationalComposite<Rational>> {
    if a < Rational::zero() || a >= Rational::one() || s < Rational::zero() {
        return Err(Error::Domain(format!("a = {a} not in [0,1) or s < 0")));
    }
    if a.clone() * a.clone() + s.clone() * s.clone() != Rational::one() {
        return Err(Error::Domain(format!("a² + s² ≠ 1 for a = {a}, s = {s}")));
    }
    Ok(compose_with(f, a, s))
}

impl<C: Coeff> RationalComposite<C> {
    pub fn dim(&self) -> usize {
        self.numerator.dim()
    }

    pub fn a_f64(&self) -> f64 {
        self.a.to_c64().re
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let a = self.a.to_c64();
        let num = self.numerator.to_float().eval(z);
        let dh = (Complex64::one() - a * z[0]).powu(self.hol_denom_power as u32);
        let da = (Complex64::one() - a * z[0].conj()).powu(self.antihol_denom_power as u32);
        num / (dh * da)
    }

    /// Exact ∂_j or ∂̄_j; the matching denominator power rises by one.
    pub fn wirtinger(&self, j: usize, conjugated: bool) -> Result<Self> {
        let n = self.dim();
        let dn = self.numerator.wirtinger(j, conjugated)?;
        let den = linear(n, C::one(), 0, -self.a.clone(), conjugated);
        let mut num = &den * &dn;
        let power = if conjugated { self.antihol_denom_power } else { self.hol_denom_power };
        if j == 0 && power > 0 {
            num = &num + &self.numerator.scale(&(self.a.clone() * C::from_i64(power as i64)));
        }
        let (hp, ap) = if conjugated {
            (self.hol_denom_power, self.antihol_denom_power + 1)
        } else {
            (self.hol_denom_power + 1, self.antihol_denom_power)
        };
        Ok(RationalComposite { numerator: num, hol_denom_power: hp, antihol_denom_power: ap, a: self.a.clone() })
    }

    /// u_{jk̄} = ∂_j∂̄_k at z.
    pub fn hessian_at(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>> {
        let n = self.dim();
        let mut h = DMatrix::zeros(n, n);
        for j in 0..n {
            let dj = self.wirtinger(j, false)?;
            for k in 0..n {
                h[(j, k)] = dj.wirtinger(k, true)?.eval(z);
            }
        }
        Ok(h)
    }

    pub fn invariant_laplacian_at(&self, z: &[Complex64]) -> Result<Complex64> {
        Ok(invariant_laplacian_from_hessian(z, &self.hessian_at(z)?))
    }
}

/// Σ_pq (p)_n(q)_n/Γ(n)² ⟨f_pq, g_pq⟩.
pub fn cici_pairing(f: &PWDecomposition, g: &PWDecomposition) -> Result<Complex64> {
    let n = f.n;
    let mut acc = Complex64::zero();
    for (k, cf) in &f.components {
        if let Some(cg) = g.components.get(k) {
            let w = c_cici(n, k.0, k.1);
            if w != 0.0 {
                acc += sphere_inner(&cf.boundary, &cg.boundary)? * w;
            }
        }
    }
    Ok(acc)
}

/// Relative size of the certified error at which the invariance check gives up.
pub const PK_TAIL_BUDGET: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PkReport {
    pub n: usize,
    pub a: f64,
    pub degree: usize,
    /// ⟨f, g⟩_∘∘ as (re, im)
    pub original: (f64, f64),
    /// ⟨f∘φ, g∘φ⟩_∘∘ from the truncated expansions
    pub composed: (f64, f64),
    pub defect: f64,
    /// weighted tail plus roundoff
    pub error_bound: f64,
    pub tail_f: f64,
    pub tail_g: f64,
    pub pass: bool,
}

fn composed_cells(f: &ComplexPoly, map: &MoebiusMap, degree: usize) -> Result<(PWDecomposition, f64, usize)> {
    let fu = rotate(f, &map.u.adjoint())?;
    let comp = compose_rational(&fu, map.a)?;
    let e = expand_boundary(&comp, degree)?;
    let tail = cici_tail(&comp, degree)?;
    let poly = rotate(&e.poly, &map.v.adjoint())?;
    let terms = poly.len();
    Ok((peter_weyl_all(&poly), tail, terms))
}

/// ⟨f∘φ, g∘φ⟩_∘∘ against ⟨f, g⟩_∘∘ for φ = U∘φ_a∘V, with f, g boundary polynomials.
pub fn theorem_pk_check_map(f: &ComplexPoly, g: &ComplexPoly, map: &MoebiusMap, degree: usize) -> Result<PkReport> {
    let n = f.dim();
    if n < 2 {
        return Err(Error::TrivialSpace);
    }
    if g.dim() != n || map.n() != n {
        return Err(Error::DimensionMismatch(n, g.dim()));
    }
    let (pf, pg) = (peter_weyl_all(f), peter_weyl_all(g));
    let original = cici_pairing(&pf, &pg)?;
    let (cf, tail_f, nf) = composed_cells(f, map, degree)?;
    let (cg, tail_g, ng) = composed_cells(g, map, degree)?;
    let composed = cici_pairing(&cf, &cg)?;
    let norm_f = cici_pairing(&cf, &cf)?.re.max(0.0).sqrt();
    let norm_g = cici_pairing(&cg, &cg)?.re.max(0.0).sqrt();
    let scale = (norm_f + tail_f) * (norm_g + tail_g);
    let roundoff = (nf + ng) as f64 * 64.0 * f64::EPSILON * (norm_f * norm_f + norm_g * norm_g + original.norm());
    let error_bound = tail_f * norm_g + norm_f * tail_g + tail_f * tail_g + roundoff;
    if !error_bound.is_finite() || error_bound > PK_TAIL_BUDGET * (scale + 1.0) {
        return Err(Error::Budget(format!("weighted tail {error_bound:e} at a = {}, D = {degree}", map.a)));
    }
    let defect = (composed - original).norm();
    Ok(PkReport {
        n,
        a: map.a,
        degree,
        original: (original.re, original.im),
        composed: (composed.re, composed.im),
        defect,
        error_bound,
        tail_f,
        tail_g,
        pass: defect <= error_bound,
    })
}

pub fn theorem_pk_check(f: &ComplexPoly, g: &ComplexPoly, a: f64, degree: usize) -> Result<PkReport> {
    theorem_pk_check_map(f, g, &MoebiusMap::new(f.dim(), a)?, degree)
}

/// max |Δ̃(f∘φ_a) − (Δ̃f)∘φ_a| over the points, by exact differentiation of f∘φ_a.
pub fn mh_commutation_check(f: &ComplexPoly, a: f64, points: &[Vec<Complex64>]) -> Result<f64> {
    let comp = compose_rational(f, a)?;
    let lap = f.invariant_laplacian();
    let mut worst = 0.0f64;
    for z in points {
        let lhs = comp.invariant_laplacian_at(z)?;
        let rhs = lap.eval(&phi_a(a, z)?);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Same check for a solid harmonic u = F̃(|z|²)h, via the chain rule through
/// the holomorphic map φ_a.
pub fn mh_commutation_check_solid(u: &BigradedComponent, a: f64, points: &[Vec<Complex64>]) -> Result<f64> {
    let mut worst = 0.0f64;
    for z in points {
        let w = phi_a(a, z)?;
        let jac = phi_a_jacobian(a, z)?;
        let (_, h) = u.value_and_hessian(&w)?;
        let pulled = jac.transpose() * h * jac.map(|c| c.conj());
        let lhs = invariant_laplacian_from_hessian(z, &pulled);
        let rhs = u.invariant_laplacian_at(&w)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}
