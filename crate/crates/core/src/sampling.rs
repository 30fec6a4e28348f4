//! Seeded point sets on the sphere and in the ball.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_direction<R: rand::Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
            .collect();
        let r: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if r > 1e-8 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

/// Uniform points on S^{2n−1} ⊂ ℂⁿ.
pub fn sphere_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = rng(seed);
    (0..count).map(|_| gaussian_direction(&mut rng, n)).collect()
}

/// Points in the ball with radius uniform in [0, rmax).
pub fn ball_points(n: usize, count: usize, seed: u64, rmax: f64) -> Vec<Vec<Complex64>> {
    let mut rng = rng(seed);
    let radius = Uniform::new(0.0, rmax);
    (0..count)
        .map(|_| {
            let r = radius.sample(&mut rng);
            gaussian_direction(&mut rng, n).into_iter().map(|c| c * r).collect()
        })
        .collect()
}

/// Points in the real ball bⁿ with radius uniform in [0, rmax).
pub fn real_ball_points(n: usize, count: usize, seed: u64, rmax: f64) -> Vec<Vec<f64>> {
    let mut rng = rng(seed);
    let radius = Uniform::new(0.0, rmax);
    (0..count)
        .map(|_| {
            let r = radius.sample(&mut rng);
            let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
            v.into_iter().map(|x| x * r / norm).collect()
        })
        .collect()
}

/// Points on the real sphere S^{n−1}.
pub fn real_sphere_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
            v.into_iter().map(|x| x / norm).collect()
        })
        .collect()
}
