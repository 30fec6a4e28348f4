use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln|Γ(x)| by the Lanczos approximation, reflected for x < 1/2.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(x). Exact factorials for small positive integers.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() {
        if x <= 0.0 {
            return f64::NAN;
        }
        if x <= 30.0 {
            let mut f = 1.0;
            let mut k = 2.0;
            while k < x {
                f *= k;
                k += 1.0;
            }
            return f;
        }
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    ln_gamma(x).exp()
}

/// Rising factorial (x)_m = x(x+1)…(x+m−1).
pub fn pochhammer(x: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// H_k = 1 + 1/2 + … + 1/k, H_0 = 0.
pub fn harmonic_number(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const DIGAMMA_HALF: f64 = -1.963_510_026_021_423_5;

/// ψ(x) for x a positive integer or half-integer, by recurrence from ψ(1) and ψ(1/2).
pub fn digamma_half_integer(x: f64) -> Option<f64> {
    let twice = 2.0 * x;
    if x <= 0.0 || twice != twice.round() {
        return None;
    }
    let (mut v, mut y) = if x == x.floor() { (-EULER_GAMMA, 1.0) } else { (DIGAMMA_HALF, 0.5) };
    while y < x {
        v += 1.0 / y;
        y += 1.0;
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(5.0), 24.0);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((ln_gamma(100.0) - 359.134_205_369_575_4).abs() < 1e-10);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(2.0, 3), 24.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
    }

    #[test]
    fn digamma_table() {
        assert!((digamma_half_integer(1.0).unwrap() + EULER_GAMMA).abs() < 1e-16);
        // ψ(4) = 1 + 1/2 + 1/3 − γ
        assert!((digamma_half_integer(4.0).unwrap() - (11.0 / 6.0 - EULER_GAMMA)).abs() < 1e-15);
        // ψ(3/2) = ψ(1/2) + 2
        assert!((digamma_half_integer(1.5).unwrap() - (DIGAMMA_HALF + 2.0)).abs() < 1e-15);
        assert!(digamma_half_integer(0.3).is_none());
    }
}
