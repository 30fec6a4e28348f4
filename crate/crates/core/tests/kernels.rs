use mharm::harmonics::kpq_kernel;
use mharm::kernels::*;
use mharm::sampling::{ball_points, DEFAULT_SEED};
use mharm::specfun::harmonic_number;
use mharm::Error;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pairs(n: usize, count: usize, seed: u64, rmax: f64) -> Vec<(Vec<Complex64>, Vec<Complex64>)> {
    let pts = ball_points(n, 2 * count, seed, rmax);
    pts.chunks(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

#[test]
fn closed_form_examples() {
    let y = [Complex64::new(0.3, -0.2), Complex64::new(0.1, 0.4)];
    let zero = [c(0.0), c(0.0)];
    assert_eq!(k_hol(&y, &y, 2, -3.0).unwrap(), c(1.0));
    assert_eq!(k_hol(&zero, &y, 2, 0.7).unwrap(), c(1.0));
    let half = [c(0.5)];
    assert!((k_hol(&half, &half, 1, 0.0).unwrap() - c(16.0 / 9.0)).norm() < 1e-15);
    assert_eq!(k_circ(&zero, &y).unwrap(), 0.0);
    for (x, w) in pairs(2, 10, 3, 0.95) {
        assert!((k_circ(&x, &w).unwrap() - k_circ(&w, &x).unwrap()).abs() < 1e-15);
        assert!((k_circ(&x, &w).unwrap() - 2.0 * k_hol_circ(&x, &w).unwrap().re).abs() < 1e-14);
    }
    assert!(k_hol(&[c(1.0), c(0.0)], &y, 2, 0.0).is_err());
}

#[test]
fn difference_quotient_tends_to_log_kernel() {
    let n = 2;
    for (x, y) in pairs(n, 10, DEFAULT_SEED, 0.9) {
        let target = k_hol_circ(&x, &y).unwrap();
        let d: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&e| ((k_hol(&x, &y, n, -3.0 + e).unwrap() - 1.0) / e - target).norm())
            .collect();
        assert!(d[0] > 5.0 * d[1] && d[1] > 5.0 * d[2] && d[2] < 1e-5, "{d:?}");
    }
}

#[test]
fn truncated_trivial_cases() {
    let z = [Complex64::new(0.2, 0.1), Complex64::new(-0.3, 0.2)];
    let w = [Complex64::new(0.1, 0.5), Complex64::new(0.0, -0.1)];
    let zero = [c(0.0), c(0.0)];
    assert_eq!(k_s_truncated(2, 0.5, 0).unwrap().eval(&z, &w).unwrap(), c(1.0));
    for cutoff in [0, 3, 7] {
        assert_eq!(k_s_truncated(2, -1.5, cutoff).unwrap().eval(&zero, &zero).unwrap(), c(1.0));
        assert_eq!(k_cici_truncated(2, cutoff).unwrap().eval(&zero, &zero).unwrap(), c(0.0));
    }
    assert!(k_s_truncated(2, -3.0, 3).is_err());
    assert!(matches!(k_cici_truncated(1, 4), Err(Error::TrivialSpace)));
    assert_eq!(Error::TrivialSpace.to_string(), "space trivial for n=1");
    let x = [0.3, -0.2, 0.5];
    let y = [0.1, 0.6, -0.2];
    assert_eq!(k_harm_truncated(3, 0.0, 0).unwrap().eval_real(&x, &y).unwrap(), 1.0);
    assert!((k_harm_truncated(3, -2.5, 6).unwrap().eval_real(&x, &y).unwrap() - 1.0).abs() < 1e-15);
    assert!(k_harm_truncated(3, -2.6, 2).is_err());
}

#[test]
fn holomorphic_cells_sum_to_closed_form() {
    let n = 2;
    let k = k_s_truncated(n, 0.4, 40).unwrap();
    for (x, y) in pairs(n, 5, 8, 0.6) {
        let hol: Complex64 = k
            .weights
            .iter()
            .filter(|((_, q), _)| *q == 0)
            .map(|&((p, q), w)| kpq_kernel(&x, &y, n, p, q).unwrap() * w)
            .sum();
        assert!((hol - k_hol(&x, &y, n, 0.4).unwrap()).norm() < 1e-10);
    }
}

#[test]
fn hermitian_symmetry() {
    let kernels = [k_s_truncated(2, 0.0, 5).unwrap(), k_cici_truncated(2, 5).unwrap(), k_s_truncated(3, -1.5, 4).unwrap()];
    for k in &kernels {
        for (x, y) in pairs(k.n, 100, 5, 0.9) {
            let a = k.eval(&x, &y).unwrap();
            let b = k.eval(&y, &x).unwrap();
            assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
            assert!(k.eval(&x, &x).unwrap().im.abs() < 1e-12);
            assert!(k.eval(&x, &x).unwrap().re >= 0.0);
        }
    }
    let h = k_harm_truncated(3, 0.0, 5).unwrap();
    let pts = mharm::sampling::real_ball_points(3, 20, 5, 0.9);
    for w in pts.chunks(2) {
        assert!((h.eval_real(&w[0], &w[1]).unwrap() - h.eval_real(&w[1], &w[0]).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn shells_are_increments() {
    let (n, s) = (2, 0.0);
    let k8 = k_s_truncated(n, s, 8).unwrap();
    let k7 = k_s_truncated(n, s, 7).unwrap();
    for (x, y) in pairs(n, 6, 12, 0.9) {
        let diff = k8.eval(&x, &y).unwrap() - k7.eval(&x, &y).unwrap();
        assert!((diff - k8.shell(&x, &y, 8).unwrap()).norm() < 1e-10);
    }
}

#[test]
fn partial_sums_are_cauchy() {
    let (x, y) = pairs(2, 1, 21, 0.6).remove(0);
    let vals: Vec<Complex64> = [4, 8, 12, 16].iter().map(|&c| k_s_truncated(2, 0.0, c).unwrap().eval(&x, &y).unwrap()).collect();
    let d: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    assert!(d[0] > d[1] && d[1] > d[2] && d[2] < 1e-3, "{d:?}");
}

#[test]
fn gram_matrices_are_psd() {
    let checks = [
        k_s_truncated(2, 0.0, 8).unwrap(),
        k_s_truncated(2, -1.5, 8).unwrap(),
        k_cici_truncated(2, 6).unwrap(),
        k_harm_truncated(3, 0.0, 8).unwrap(),
        k_harm_truncated(3, -2.0, 8).unwrap(),
    ];
    for k in &checks {
        let r = gram_check(k, 15, DEFAULT_SEED).unwrap();
        assert!(r.min_eig >= -1e-8, "{r:?}");
    }
}

/// With ε = n+s+1, the second difference (K_s − 1 − εK_∘)/ε² converges to
/// ½K_∘∘ + Σ_p H_{p−1}/p (⟨z,w⟩^p + conj) cell by cell.
#[test]
fn second_difference_limit() {
    let (n, cutoff) = (2, 6);
    let circ = k_circ_truncated(n, cutoff).unwrap();
    let cici = k_cici_truncated(n, cutoff).unwrap();
    for (x, y) in pairs(n, 5, DEFAULT_SEED, 0.9) {
        let w: Complex64 = x.iter().zip(&y).map(|(a, b)| a * b.conj()).sum();
        let extra: Complex64 = (1..=cutoff).map(|p| (w.powu(p as u32) + w.conj().powu(p as u32)) * (harmonic_number(p - 1) / p as f64)).sum();
        let target = cici.eval(&x, &y).unwrap() * 0.5 + extra;
        let k_c = circ.eval(&x, &y).unwrap();
        let d: Vec<f64> = [1e-2, 1e-3]
            .iter()
            .map(|&e| {
                let ks = k_s_truncated(n, -3.0 + e, cutoff).unwrap().eval(&x, &y).unwrap();
                let first = (ks - 1.0) / e;
                assert!((first - k_c).norm() < 50.0 * e);
                ((ks - 1.0 - k_c * e) / (e * e) - target).norm()
            })
            .collect();
        assert!(d[0] > 5.0 * d[1] && d[1] < 1e-5, "{d:?}");
    }
}
