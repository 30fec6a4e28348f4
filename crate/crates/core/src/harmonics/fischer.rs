use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{BigradedComponent, PWDecomposition};
use crate::polyalg::{norm_sq_sphere, Coeff, ComplexPoly};

/// Projection of a bihomogeneous (p,q) polynomial onto its harmonic part along |z|²·P_{p−1,q−1}:
/// H(f) = Σ_k c_k |z|^{2k} D^k f with D = Σ ∂_j∂̄_j, c₀ = 1, c_{k+1} = −c_k/((k+1)(n+p+q−k−2)).
pub fn harmonic_projection<C: Coeff>(f: &ComplexPoly<C>, p: usize, q: usize) -> ComplexPoly<C> {
    let n = f.dim() as i64;
    let mut out = f.clone();
    let mut dk = f.clone();
    let mut ck = BigRational::one();
    for k in 0..p.min(q) {
        dk = dk.box_d();
        if dk.is_zero() {
            break;
        }
        let denom = (k as i64 + 1) * (n + p as i64 + q as i64 - k as i64 - 2);
        ck = -ck / BigRational::from_integer(denom.into());
        let mut term = dk.clone();
        for _ in 0..=k {
            term = term.times_norm_sq();
        }
        out = &out + &term.scale(&C::from_rational(&ck));
    }
    out
}

/// f = Σ_j |z|^{2j} h_j with h_j harmonic of bidegree (p−j, q−j); returns the h_j.
pub fn fischer_components<C: Coeff>(f: &ComplexPoly<C>, p: usize, q: usize) -> Vec<ComplexPoly<C>> {
    let n = f.dim() as i64;
    let mut out = Vec::with_capacity(p.min(q) + 1);
    let mut dj = f.clone();
    let mut jfact = BigInt::one();
    for j in 0..=p.min(q) {
        if j > 0 {
            dj = dj.box_d();
            jfact *= BigInt::from(j);
        }
        if dj.is_zero() {
            out.push(ComplexPoly::zero(f.dim()));
            continue;
        }
        let base = n + (p + q) as i64 - 2 * j as i64;
        let poch = (0..j as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(base + i));
        let scale = BigRational::new(BigInt::one(), &jfact * poch);
        let h = harmonic_projection(&dj, p - j, q - j);
        out.push(h.scale(&C::from_rational(&scale)));
    }
    out
}

/// Peter–Weyl cells of a polynomial restricted to the sphere, keeping p ≤ pmax, q ≤ qmax.
pub fn peter_weyl<C: Coeff>(f: &ComplexPoly<C>, pmax: usize, qmax: usize) -> PWDecomposition<C> {
    let n = f.dim();
    let mut cells: BTreeMap<(usize, usize), ComplexPoly<C>> = BTreeMap::new();
    for ((sp, sq), slice) in f.slices() {
        for (j, h) in fischer_components(&slice, sp, sq).into_iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let key = (sp - j, sq - j);
            let entry = cells.entry(key).or_insert_with(|| ComplexPoly::zero(n));
            *entry = &*entry + &h;
        }
    }
    let mut omitted = 0.0;
    let mut components = BTreeMap::new();
    for ((p, q), h) in cells {
        if h.is_zero() {
            continue;
        }
        if p > pmax || q > qmax {
            omitted += norm_sq_sphere(&h).to_c64().re;
            continue;
        }
        components.insert((p, q), BigradedComponent { n, p, q, boundary: h });
    }
    PWDecomposition { n, components, tail_bound: omitted.max(0.0).sqrt() }
}

/// peter_weyl without a cell cap.
pub fn peter_weyl_all<C: Coeff>(f: &ComplexPoly<C>) -> PWDecomposition<C> {
    peter_weyl(f, usize::MAX, usize::MAX)
}

impl<C: Coeff> PWDecomposition<C> {
    /// Sum of the cell boundary polynomials (the restriction of the source to the sphere).
    pub fn to_poly(&self) -> ComplexPoly<C> {
        self.components.values().fold(ComplexPoly::zero(self.n), |acc, c| &acc + &c.boundary)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn zero_of(n: usize) -> Self {
        PWDecomposition { n, components: BTreeMap::new(), tail_bound: 0.0 }
    }
}
