use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use smallvec::SmallVec;

use super::{Coeff, MultiIndex};
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

pub type Monomial = (MultiIndex, MultiIndex);

/// Sparse polynomial in z and z̄ on ℂⁿ; terms keyed by (α, β) for z^α z̄^β.
#[derive(Clone, PartialEq)]
pub struct ComplexPoly<C: Coeff = Complex64> {
    dim: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> ComplexPoly<C> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        ComplexPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::zeros(dim), MultiIndex::zeros(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, C::one())
    }

    /// c·z^α z̄^β
    pub fn monomial(alpha: &[u32], beta: &[u32], c: C) -> Self {
        assert_eq!(alpha.len(), beta.len(), "multi-index lengths differ");
        let mut p = Self::zero(alpha.len());
        p.add_term(MultiIndex::from_slice(alpha), MultiIndex::from_slice(beta), c);
        p
    }

    /// The coordinate z_j (0-based).
    pub fn z(dim: usize, j: usize) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::unit(dim, j), MultiIndex::zeros(dim), C::one());
        p
    }

    /// The coordinate z̄_j (0-based).
    pub fn zbar(dim: usize, j: usize) -> Self {
        Self::z(dim, j).conj()
    }

    /// |z|² = Σ z_j z̄_j
    pub fn norm_sq_poly(dim: usize) -> Self {
        let mut p = Self::zero(dim);
        for j in 0..dim {
            p.add_term(MultiIndex::unit(dim, j), MultiIndex::unit(dim, j), C::one());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, MultiIndex, C)>>(dim: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (a, b, c) in terms {
            if a.len() != dim || b.len() != dim {
                return Err(Error::DimensionMismatch(dim, a.len().max(b.len())));
            }
            p.add_term(a, b, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &[u32], beta: &[u32]) -> C {
        self.terms
            .get(&(MultiIndex::from_slice(alpha), MultiIndex::from_slice(beta)))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Adds c·z^α z̄^β, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, alpha: MultiIndex, beta: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((alpha, beta)) {
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
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Complex conjugate: z^α z̄^β ↦ z^β z̄^α with conjugated coefficient.
    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.conj())).collect();
        ComplexPoly { dim: self.dim, terms }
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> ComplexPoly<D> {
        let mut out = ComplexPoly::zero(self.dim);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(c));
        }
        out
    }

    pub fn to_float(&self) -> ComplexPoly {
        self.map_coeffs(|c| c.to_c64())
    }

    /// (max |α|, max |β|) over the terms.
    pub fn degree_bounds(&self) -> (usize, usize) {
        self.terms.keys().fold((0, 0), |(p, q), (a, b)| (p.max(a.order() as usize), q.max(b.order() as usize)))
    }

    pub fn bihomogeneous(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|(a, b)| (a.order() as usize, b.order() as usize));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Split into bihomogeneous slices keyed by (p, q).
    pub fn slices(&self) -> BTreeMap<(usize, usize), Self> {
        let mut out: BTreeMap<(usize, usize), Self> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            out.entry((a.order() as usize, b.order() as usize))
                .or_insert_with(|| Self::zero(self.dim))
                .terms
                .insert((a.clone(), b.clone()), c.clone());
        }
        out
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.dim, "point dimension");
        let zb: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
        self.terms
            .iter()
            .map(|((a, b), c)| {
                let mut m = c.to_c64();
                for j in 0..self.dim {
                    m *= z[j].powu(a.0[j]) * zb[j].powu(b.0[j]);
                }
                m
            })
            .sum()
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.dim {
            Err(Error::IndexOutOfRange { index: j, dim: self.dim })
        } else {
            Ok(())
        }
    }

    pub(crate) fn d_unchecked(&self, j: usize, conjugated: bool) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            let e = if conjugated { b.0[j] } else { a.0[j] };
            if e == 0 {
                continue;
            }
            let v = c.clone() * C::from_i64(e as i64);
            if conjugated {
                out.add_term(a.clone(), b.lowered(j), v);
            } else {
                out.add_term(a.lowered(j), b.clone(), v);
            }
        }
        out
    }

    /// Multiply by z_j (or z̄_j).
    pub(crate) fn times_var(&self, j: usize, conjugated: bool) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let key = if conjugated { (a.clone(), b.bumped(j)) } else { (a.bumped(j), b.clone()) };
                (key, c.clone())
            })
            .collect();
        ComplexPoly { dim: self.dim, terms }
    }

    /// ∂f/∂z_j, or ∂f/∂z̄_j when `conjugated` (0-based j).
    pub fn wirtinger(&self, j: usize, conjugated: bool) -> Result<Self> {
        self.check_index(j)?;
        Ok(self.d_unchecked(j, conjugated))
    }

    pub(crate) fn tangential_unchecked(&self, j: usize, k: usize, conjugated: bool) -> Self {
        let first = self.d_unchecked(k, conjugated).times_var(j, !conjugated);
        let second = self.d_unchecked(j, conjugated).times_var(k, !conjugated);
        &first - &second
    }

    /// L_jk = z̄_j∂_k − z̄_k∂_j, or L̄_jk = z_j∂̄_k − z_k∂̄_j when `conjugated`.
    pub fn tangential(&self, j: usize, k: usize, conjugated: bool) -> Result<Self> {
        self.check_index(j)?;
        self.check_index(k)?;
        if j == k {
            return Err(Error::EqualIndices(j));
        }
        Ok(self.tangential_unchecked(j, k, conjugated))
    }

    fn weight_terms<F: Fn(i64, i64) -> i64>(&self, w: F) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            let f = w(a.order() as i64, b.order() as i64);
            out.add_term(a.clone(), b.clone(), c.clone() * C::from_i64(f));
        }
        out
    }

    /// R = Σ (z_j∂_j − z̄_j∂̄_j)
    pub fn reeb(&self) -> Self {
        self.weight_terms(|p, q| p - q)
    }

    /// N = Σ (z_j∂_j + z̄_j∂̄_j)
    pub fn radial_n(&self) -> Self {
        self.weight_terms(|p, q| p + q)
    }

    /// Σ_j ∂_j∂̄_j (a quarter of the Euclidean Laplacian).
    pub fn box_d(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            for j in 0..self.dim {
                if a.0[j] > 0 && b.0[j] > 0 {
                    let f = C::from_i64(a.0[j] as i64 * b.0[j] as i64);
                    out.add_term(a.lowered(j), b.lowered(j), c.clone() * f);
                }
            }
        }
        out
    }

    /// Euclidean Laplacian 4Σ ∂_j∂̄_j.
    pub fn euclidean_laplacian(&self) -> Self {
        self.box_d().scale(&C::from_i64(4))
    }

    /// Multiply by |z|².
    pub fn times_norm_sq(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            for j in 0..self.dim {
                out.add_term(a.bumped(j), b.bumped(j), c.clone());
            }
        }
        out
    }

    /// Δ̃f = 4(1−|z|²) Σ_{j,k} (δ_jk − z_j z̄_k) ∂_j∂̄_k f
    pub fn invariant_laplacian(&self) -> Self {
        let mut inner = self.box_d();
        for j in 0..self.dim {
            let dj = self.d_unchecked(j, false);
            for k in 0..self.dim {
                let djk = dj.d_unchecked(k, true);
                inner = &inner - &djk.times_var(j, false).times_var(k, true);
            }
        }
        let damped = &inner - &inner.times_norm_sq();
        damped.scale(&C::from_i64(4))
    }

    /// Δ_sph f = |z|²Δf − E(E+2n−2)f with E the radial derivative N.
    pub fn spherical_laplacian(&self) -> Self {
        let shift = 2 * self.dim as i64 - 2;
        let radial = self.weight_terms(|p, q| (p + q) * (p + q + shift));
        &self.euclidean_laplacian().times_norm_sq() - &radial
    }

    /// Drop coefficients whose modulus is at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        let terms = self.terms.iter().filter(|(_, c)| c.abs_f64() > tol).map(|(k, c)| (k.clone(), c.clone())).collect();
        ComplexPoly { dim: self.dim, terms }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }
}

fn diff_key(a: &MultiIndex, b: &MultiIndex) -> SmallVec<[i64; 4]> {
    a.0.iter().zip(&b.0).map(|(x, y)| *x as i64 - *y as i64).collect()
}

/// ⟨f, g⟩ = ∫_{∂Bₙ} f ḡ dσ, exact in the coefficient field.
pub fn sphere_inner<C: Coeff>(f: &ComplexPoly<C>, g: &ComplexPoly<C>) -> Result<C> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch(f.dim, g.dim));
    }
    let n = f.dim;
    // z^α z̄^β · conj(z^γ z̄^δ) integrates to a nonzero moment iff α − β = γ − δ.
    let mut groups: HashMap<SmallVec<[i64; 4]>, Vec<(&MultiIndex, &MultiIndex, &C)>> = HashMap::new();
    for ((c, d), v) in &g.terms {
        groups.entry(diff_key(c, d)).or_default().push((c, d, v));
    }
    let mut acc = C::zero();
    for ((a, b), u) in &f.terms {
        if let Some(group) = groups.get(&diff_key(a, b)) {
            for (_, d, v) in group {
                let mom = C::sphere_moment(n, a.plus(d).as_slice());
                acc = acc + u.clone() * v.conj() * mom;
            }
        }
    }
    Ok(acc)
}

pub fn norm_sq_sphere<C: Coeff>(f: &ComplexPoly<C>) -> C {
    sphere_inner(f, f).expect("same dimension")
}

/// ⟨f, g⟩_s = ∫_{Bₙ} f ḡ dμ_s, via ∫ z^α z̄^β dμ_s = δ_αβ α!/(n+s+1)_{|α|}.
pub fn ball_inner(f: &ComplexPoly, g: &ComplexPoly, s: f64) -> Result<Complex64> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch(f.dim, g.dim));
    }
    if s <= -1.0 {
        return Err(Error::Domain(format!("ball measure needs s > −1, got {s}")));
    }
    let base = f.dim as f64 + s + 1.0;
    let mut groups: HashMap<SmallVec<[i64; 4]>, Vec<(&MultiIndex, &Complex64)>> = HashMap::new();
    for ((c, d), v) in &g.terms {
        groups.entry(diff_key(c, d)).or_default().push((d, v));
    }
    let mut acc = Complex64::zero();
    for ((a, b), u) in &f.terms {
        if let Some(group) = groups.get(&diff_key(a, b)) {
            for (d, v) in group {
                let m = a.plus(d);
                let order = m.order() as f64;
                let ln = m.0.iter().map(|&x| ln_gamma(x as f64 + 1.0)).sum::<f64>() + ln_gamma(base)
                    - ln_gamma(base + order);
                acc += u * v.conj() * ln.exp();
            }
        }
    }
    Ok(acc)
}

/// f∘U⁻¹ for a unitary U: z ↦ U*z substituted into f.
pub fn rotate(f: &ComplexPoly, u: &DMatrix<Complex64>) -> Result<ComplexPoly> {
    let n = f.dim;
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch(n, u.nrows()));
    }
    let defect = (u.adjoint() * u - DMatrix::<Complex64>::identity(n, n)).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if defect > 1e-12 {
        return Err(Error::NotUnitary(defect));
    }
    // (U*z)_j = Σ_k conj(U_kj) z_k
    let lin: Vec<ComplexPoly> = (0..n)
        .map(|j| {
            let mut p = ComplexPoly::zero(n);
            for k in 0..n {
                p.add_term(MultiIndex::unit(n, k), MultiIndex::zeros(n), u[(k, j)].conj());
            }
            p
        })
        .collect();
    let lin_bar: Vec<ComplexPoly> = lin.iter().map(|p| p.conj()).collect();
    let mut cache: HashMap<(usize, bool, u32), ComplexPoly> = HashMap::new();
    let mut power = |j: usize, bar: bool, e: u32| -> ComplexPoly {
        cache
            .entry((j, bar, e))
            .or_insert_with(|| {
                let base = if bar { &lin_bar[j] } else { &lin[j] };
                (0..e).fold(ComplexPoly::one(n), |acc, _| &acc * base)
            })
            .clone()
    };
    let mut out = ComplexPoly::zero(n);
    for ((a, b), c) in &f.terms {
        let mut m = ComplexPoly::constant(n, *c);
        for j in 0..n {
            if a.0[j] > 0 {
                m = &m * &power(j, false, a.0[j]);
            }
            if b.0[j] > 0 {
                m = &m * &power(j, true, b.0[j]);
            }
        }
        out = &out + &m;
    }
    Ok(out)
}

impl<C: Coeff> Add for &ComplexPoly<C> {
    type Output = ComplexPoly<C>;
    fn add(self, rhs: Self) -> ComplexPoly<C> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &ComplexPoly<C> {
    type Output = ComplexPoly<C>;
    fn sub(self, rhs: Self) -> ComplexPoly<C> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &ComplexPoly<C> {
    type Output = ComplexPoly<C>;
    fn mul(self, rhs: Self) -> ComplexPoly<C> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = ComplexPoly::zero(self.dim);
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &rhs.terms {
                out.add_term(a.plus(x), b.plus(y), c.clone() * d.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &ComplexPoly<C> {
    type Output = ComplexPoly<C>;
    fn neg(self) -> ComplexPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> fmt::Debug for ComplexPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexPoly(dim={}, ", self.dim)?;
        f.debug_map().entries(self.terms.iter().map(|((a, b), c)| (format!("{a}|{b}"), c))).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for ComplexPoly {
    /// One term per line: `α|β|re|im`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((a, b), c) in &self.terms {
            writeln!(f, "{a}|{b}|{:?}|{:?}", c.re, c.im)?;
        }
        Ok(())
    }
}

fn parse_index(s: &str, line: usize) -> Result<MultiIndex> {
    let v: std::result::Result<Vec<u32>, _> = s.split(',').map(|x| x.trim().parse::<u32>()).collect();
    v.map(|v| MultiIndex::from_slice(&v)).map_err(|e| Error::Parse { line, msg: e.to_string() })
}

impl ComplexPoly {
    /// Parses the `α|β|re|im` format; blank lines and `#` comments are skipped.
    /// An input without terms yields the zero polynomial of dimension `dim_hint`.
    pub fn parse(text: &str, dim_hint: Option<usize>) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split('|').collect();
            if parts.len() != 4 {
                return Err(Error::Parse { line: i + 1, msg: "expected α|β|re|im".into() });
            }
            let a = parse_index(parts[0], i + 1)?;
            let b = parse_index(parts[1], i + 1)?;
            let num = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() });
            terms.push((a, b, Complex64::new(num(parts[2])?, num(parts[3])?)));
        }
        let dim = match (terms.first(), dim_hint) {
            (Some((a, _, _)), _) => a.len(),
            (None, Some(d)) => d,
            (None, None) => return Err(Error::Parse { line: 0, msg: "no terms and no dimension".into() }),
        };
        Self::from_terms(dim, terms)
    }
}
