use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::specfun::ln_gamma;

/// Coefficient field for polynomials: double-precision complex or real, or exact rationals.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// ∫_{S^{2n−1}} |ζ^α|² dσ = (n−1)! α! / (n−1+|α|)!
    fn sphere_moment(n: usize, alpha: &[u32]) -> Self;
    /// ∫_{S^{n−1}} x^α dσ; zero unless every entry is even.
    fn real_sphere_moment(n: usize, alpha: &[u32]) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
}

fn ln_sphere_moment(n: usize, alpha: &[u32]) -> f64 {
    let order: u32 = alpha.iter().sum();
    alpha.iter().map(|&a| ln_gamma(a as f64 + 1.0)).sum::<f64>() + ln_gamma(n as f64)
        - ln_gamma(n as f64 + order as f64)
}

fn ln_real_sphere_moment(n: usize, alpha: &[u32]) -> Option<f64> {
    if alpha.iter().any(|a| a % 2 == 1) {
        return None;
    }
    let half = 0.5f64;
    let k: u32 = alpha.iter().map(|a| a / 2).sum();
    let num: f64 = alpha.iter().map(|&a| ln_gamma((a / 2) as f64 + half) - ln_gamma(half)).sum();
    Some(num + ln_gamma(n as f64 / 2.0) - ln_gamma(n as f64 / 2.0 + k as f64))
}

const EXACT: f64 = 9007199254740992.0;

/// num/den from integer factor lists; one rounding when both products are exact.
fn ratio_of_products(num: impl Iterator<Item = u64> + Clone, den: impl Iterator<Item = u64> + Clone) -> Option<f64> {
    let a = num.clone().try_fold(1.0f64, |acc, x| Some(acc * x as f64).filter(|v| *v < EXACT))?;
    let b = den.clone().try_fold(1.0f64, |acc, x| Some(acc * x as f64).filter(|v| *v < EXACT))?;
    Some(a / b)
}

fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl Coeff for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn sphere_moment(n: usize, alpha: &[u32]) -> Self {
        let order: u64 = alpha.iter().map(|&a| a as u64).sum();
        let num = alpha.iter().flat_map(|&a| 1..=a as u64);
        ratio_of_products(num, (n as u64)..(n as u64 + order)).unwrap_or_else(|| ln_sphere_moment(n, alpha).exp())
    }
    fn real_sphere_moment(n: usize, alpha: &[u32]) -> Self {
        if alpha.iter().any(|a| a % 2 == 1) {
            return 0.0;
        }
        // Π (2k_i−1)!! / Π_{i<K} (n+2i)
        let k: u64 = alpha.iter().map(|&a| a as u64 / 2).sum();
        let num = alpha.iter().flat_map(|&a| (0..a as u64 / 2).map(|i| 2 * i + 1));
        ratio_of_products(num, (0..k).map(|i| n as u64 + 2 * i))
            .unwrap_or_else(|| ln_real_sphere_moment(n, alpha).map_or(0.0, f64::exp))
    }
}

impl Coeff for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn sphere_moment(n: usize, alpha: &[u32]) -> Self {
        Complex64::new(f64::sphere_moment(n, alpha), 0.0)
    }
    fn real_sphere_moment(n: usize, alpha: &[u32]) -> Self {
        Complex64::new(f64::real_sphere_moment(n, alpha), 0.0)
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn sphere_moment(n: usize, alpha: &[u32]) -> Self {
        let order: u32 = alpha.iter().sum();
        let num = alpha.iter().fold(factorial(n as u32 - 1), |acc, &a| acc * factorial(a));
        BigRational::new(num, factorial(n as u32 - 1 + order))
    }
    fn real_sphere_moment(n: usize, alpha: &[u32]) -> Self {
        if alpha.iter().any(|a| a % 2 == 1) {
            return BigRational::zero();
        }
        // (1/2)_k = (2k)! / (4^k k!), (n/2)_K = Π_{i<K} (n + 2i)/2
        let mut v = BigRational::one();
        let mut total = 0u32;
        for &a in alpha {
            let k = a / 2;
            total += k;
            v *= BigRational::new(factorial(2 * k), factorial(k) * BigInt::from(4u32).pow(k));
        }
        for i in 0..total {
            v *= BigRational::new(BigInt::from(2), BigInt::from(n as u32 + 2 * i));
        }
        v
    }
}
