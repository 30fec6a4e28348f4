use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};


use super::{Coeff, MultiIndex};
use crate::error::{Error, Result};

/// Sparse real polynomial on ℝⁿ.
#[derive(Clone, PartialEq)]
pub struct RealPoly<C: Coeff = f64> {
    dim: usize,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Coeff> RealPoly<C> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        RealPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::zeros(dim), c);
        p
    }

    pub fn monomial(alpha: &[u32], c: C) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(MultiIndex::from_slice(alpha), c);
        p
    }

    pub fn x(dim: usize, j: usize) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::unit(dim, j), C::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> RealPoly<D> {
        let mut out = RealPoly::zero(self.dim);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), f(c));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|a| a.order() as usize).max().unwrap_or(0)
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Self> {
        let mut out: BTreeMap<usize, Self> = BTreeMap::new();
        for (a, c) in &self.terms {
            out.entry(a.order() as usize).or_insert_with(|| Self::zero(self.dim)).terms.insert(a.clone(), c.clone());
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "point dimension");
        self.terms
            .iter()
            .map(|(a, c)| c.to_c64().re * a.0.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product::<f64>())
            .sum()
    }

    pub(crate) fn d_unchecked(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            if a.0[j] > 0 {
                out.add_term(a.lowered(j), c.clone() * C::from_i64(a.0[j] as i64));
            }
        }
        out
    }

    pub(crate) fn times_var(&self, j: usize) -> Self {
        RealPoly { dim: self.dim, terms: self.terms.iter().map(|(a, c)| (a.bumped(j), c.clone())).collect() }
    }

    pub fn partial(&self, j: usize) -> Result<Self> {
        if j >= self.dim {
            return Err(Error::IndexOutOfRange { index: j, dim: self.dim });
        }
        Ok(self.d_unchecked(j))
    }

    pub(crate) fn tangential_unchecked(&self, j: usize, k: usize) -> Self {
        &self.d_unchecked(k).times_var(j) - &self.d_unchecked(j).times_var(k)
    }

    /// X_jk = x_j∂_k − x_k∂_j (0-based indices).
    pub fn real_tangential(&self, j: usize, k: usize) -> Result<Self> {
        for i in [j, k] {
            if i >= self.dim {
                return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
            }
        }
        if j == k {
            return Err(Error::EqualIndices(j));
        }
        Ok(self.tangential_unchecked(j, k))
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            for j in 0..self.dim {
                if a.0[j] >= 2 {
                    let f = C::from_i64(a.0[j] as i64 * (a.0[j] as i64 - 1));
                    out.add_term(a.lowered(j).lowered(j), c.clone() * f);
                }
            }
        }
        out
    }

    pub fn times_norm_sq(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            for j in 0..self.dim {
                out.add_term(a.bumped(j).bumped(j), c.clone());
            }
        }
        out
    }

    /// Euler operator E = Σ x_j∂_j.
    pub fn euler(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.clone() * C::from_i64(a.order() as i64));
        }
        out
    }

    /// Δ_sph f = |x|²Δf − E(E+n−2)f.
    pub fn spherical_laplacian(&self) -> Self {
        let shift = self.dim as i64 - 2;
        let mut radial = Self::zero(self.dim);
        for (a, c) in &self.terms {
            let d = a.order() as i64;
            radial.add_term(a.clone(), c.clone() * C::from_i64(d * (d + shift)));
        }
        &self.laplacian().times_norm_sq() - &radial
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }
}

/// ∫_{S^{n−1}} f g dσ, exact in the coefficient field.
pub fn real_sphere_inner<C: Coeff>(f: &RealPoly<C>, g: &RealPoly<C>) -> Result<C> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch(f.dim, g.dim));
    }
    let mut acc = C::zero();
    for (a, u) in &f.terms {
        for (b, v) in &g.terms {
            let m = a.plus(b);
            if m.0.iter().all(|e| e % 2 == 0) {
                acc = acc + u.clone() * v.clone() * C::real_sphere_moment(f.dim, m.as_slice());
            }
        }
    }
    Ok(acc)
}

/// ∫_{bⁿ} f g dρ_s for the probability measure ∝ (1−|x|²)^s dx, s > −1.
pub fn real_ball_inner(f: &RealPoly, g: &RealPoly, s: f64) -> Result<f64> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch(f.dim, g.dim));
    }
    if s <= -1.0 {
        return Err(Error::Domain(format!("ball measure needs s > −1, got {s}")));
    }
    let half_n = f.dim as f64 / 2.0;
    let mut acc = 0.0;
    for (a, u) in &f.terms {
        for (b, v) in &g.terms {
            let m = a.plus(b);
            let mom = f64::real_sphere_moment(f.dim, m.as_slice());
            if mom == 0.0 {
                continue;
            }
            let k = (m.order() / 2) as usize;
            let radial = crate::specfun::pochhammer(half_n, k) / crate::specfun::pochhammer(half_n + s + 1.0, k);
            acc += u * v * mom * radial;
        }
    }
    Ok(acc)
}

impl<C: Coeff> Add for &RealPoly<C> {
    type Output = RealPoly<C>;
    fn add(self, rhs: Self) -> RealPoly<C> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &RealPoly<C> {
    type Output = RealPoly<C>;
    fn sub(self, rhs: Self) -> RealPoly<C> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &RealPoly<C> {
    type Output = RealPoly<C>;
    fn mul(self, rhs: Self) -> RealPoly<C> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = RealPoly::zero(self.dim);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.plus(b), c.clone() * d.clone());
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for RealPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealPoly(dim={}, ", self.dim)?;
        f.debug_map().entries(self.terms.iter().map(|(a, c)| (a.to_string(), c))).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for RealPoly {
    /// One term per line: `α|value`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, c) in &self.terms {
            writeln!(f, "{a}|{c:?}")?;
        }
        Ok(())
    }
}

impl RealPoly {
    pub fn parse(text: &str, dim_hint: Option<usize>) -> Result<Self> {
        let mut out: Option<RealPoly> = dim_hint.map(RealPoly::zero);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (idx, val) = line.split_once('|').ok_or(Error::Parse { line: i + 1, msg: "expected α|value".into() })?;
            let v: std::result::Result<Vec<u32>, _> = idx.split(',').map(|x| x.trim().parse::<u32>()).collect();
            let a = MultiIndex::from_slice(&v.map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?);
            let c: f64 = val.trim().parse().map_err(|e: std::num::ParseFloatError| Error::Parse { line: i + 1, msg: e.to_string() })?;
            let p = out.get_or_insert_with(|| RealPoly::zero(a.len()));
            if a.len() != p.dim {
                return Err(Error::DimensionMismatch(p.dim, a.len()));
            }
            p.add_term(a, c);
        }
        out.ok_or(Error::Parse { line: 0, msg: "no terms and no dimension".into() })
    }
}

