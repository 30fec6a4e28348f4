use mharm::coeffs::{harm_coeff, harm_sq};
use mharm::polyalg::{real_ball_inner, real_sphere_inner, Rational, RealPoly};
use mharm::realharm::*;
use mharm::sampling::real_sphere_points;
use num_traits::One;
use proptest::prelude::*;

fn x(n: usize, j: usize) -> RealPoly {
    RealPoly::x(n, j)
}

#[test]
fn decompose_examples() {
    let d = harm_decompose(&x(3, 0)).unwrap();
    assert_eq!(d.keys().copied().collect::<Vec<_>>(), vec![1]);
    let f = &(&x(3, 0) * &x(3, 0)) - &(&x(3, 1) * &x(3, 1));
    assert_eq!(harm_decompose(&f).unwrap().keys().copied().collect::<Vec<_>>(), vec![2]);
    let g = &RealPoly::constant(3, 1.0) + &x(3, 0);
    assert_eq!(harm_decompose(&g).unwrap().keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    assert!(harm_decompose(&(&x(3, 0) * &x(3, 0))).is_err());
}

#[test]
fn basis_dimensions_and_orthonormality() {
    for p in 0..6 {
        assert_eq!(harmonic_basis(3, p).unwrap().elements.len(), 2 * p + 1);
        assert_eq!(harmonic_basis(2, p).unwrap().elements.len(), if p == 0 { 1 } else { 2 });
    }
    for (n, p) in [(3, 3), (4, 2), (5, 2)] {
        let b = harmonic_basis(n, p).unwrap();
        for (i, e) in b.elements.iter().enumerate() {
            assert!(e.laplacian().max_abs_coeff() < 1e-12);
            for (j, f) in b.elements.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((real_sphere_inner(e, f).unwrap() - want).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn spherical_laplacian_eigenvalues_exact() {
    for n in 2..=4 {
        for p in 0..=4 {
            let lam = -((p * (p + n - 2)) as i64);
            for e in rational_harmonic_basis(n, p).unwrap() {
                assert_eq!(e.spherical_laplacian(), e.scale(&Rational::from_integer(lam.into())));
            }
        }
    }
    // n=3, p=2: −6
    let f = &(&x(3, 0) * &x(3, 0)) - &(&x(3, 1) * &x(3, 1));
    assert_eq!(f.spherical_laplacian(), f.scale(&-6.0));
}

#[test]
fn zonal_reproduces_exactly_and_pointwise() {
    let (n, p) = (3, 2);
    let b = harmonic_basis(n, p).unwrap();
    for y in real_sphere_points(n, 10, 42) {
        let z = b.elements.iter().fold(RealPoly::zero(n), |acc, e| &acc + &e.scale(&e.eval(&y)));
        for f in &b.elements {
            assert!((real_sphere_inner(f, &z).unwrap() - f.eval(&y)).abs() < 1e-12);
        }
        // Z_p(y, y) = dim on the sphere
        assert!((zonal(n, p, &y, &y).unwrap() - 5.0).abs() < 1e-9);
    }
    let pts = real_sphere_points(4, 4, 9);
    let f = &(&x(4, 0) * &x(4, 1)) + &(&x(4, 2) * &x(4, 3));
    for y in &pts {
        let z = harmonic_basis(4, 2).unwrap().elements.iter().fold(RealPoly::zero(4), |acc, e| &acc + &e.scale(&e.eval(y)));
        assert!((real_sphere_inner(&f, &z).unwrap() - f.eval(y)).abs() < 1e-9);
    }
}

#[test]
fn harm_norm_examples() {
    for s in [-0.5, 0.0, 3.0] {
        assert_eq!(harm_norm_s(&RealPoly::constant(3, 1.0), s).unwrap().value, 1.0);
    }
    assert!((harm_norm_s(&x(3, 0), 0.0).unwrap().value - 0.2).abs() < 1e-15);
    let f = &(&(&x(3, 0) * &x(3, 1)) + &x(3, 2)) + &RealPoly::constant(3, 0.5);
    for s in [0.0, 1.0] {
        let direct = real_ball_inner(&f, &f, s).unwrap();
        assert!((harm_norm_s(&f, s).unwrap().value - direct).abs() < 1e-10);
    }
    assert!(harm_norm_s(&x(3, 0), -3.0).is_err());
}

#[test]
fn dirichlet_sq_residue() {
    for (n, p) in [(2, 2), (3, 2), (4, 3)] {
        let h = n as f64 / 2.0;
        let d: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&e| (e * harm_coeff(n, p, -h - 1.0 + e).unwrap() - harm_sq(n, p)).abs())
            .collect();
        assert!(d[0] > 5.0 * d[1] && d[1] > 5.0 * d[2] && d[2] < 1e-2, "{d:?}");
    }
    // degree 1 is exact: ε·(n/2)/ε
    assert!((1e-3 * harm_coeff(3, 1, -2.5 + 1e-3).unwrap() - 1.5).abs() < 1e-12);
    assert!((dirichlet_sq(&x(2, 0)).unwrap().value - 0.5).abs() < 1e-15);
}

#[test]
fn word_sum_identity_exact() {
    for d in 0..=4 {
        for e in rational_harmonic_basis(3, d).unwrap() {
            assert_eq!(real_word_sum_sphere(&e, 1).unwrap(), real_spectral_sum_sphere(&e, 1).unwrap());
        }
    }
    let e = rational_harmonic_basis(3, 2).unwrap().remove(1);
    assert_eq!(real_word_sum_sphere(&e, 2).unwrap(), real_spectral_sum_sphere(&e, 2).unwrap());
    let _ = Rational::one();
}

#[test]
fn pj_sum_examples() {
    let v = theorem_pj_sums(&x(2, 0), 1).unwrap().value;
    assert!((v - 2.0 * 0.5 * 0.5).abs() < 1e-15);
    assert_eq!(theorem_pj_sums(&RealPoly::constant(3, 2.0), 1).unwrap().value, 0.0);
    assert!(theorem_pj_sums(&x(4, 0), 1).is_err());
    let f = &(&x(3, 0) * &x(3, 1)) + &x(3, 2);
    let brute = real_word_sum_ball(&f, 1, -0.5).unwrap();
    assert!((brute - theorem_pj_sums(&f, 1).unwrap().value).abs() < 1e-12);
}

#[test]
fn pj_verification_passes() {
    let r = theorem_pj_verify(&PjGrid::default()).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(r.exact_identity_holds);
    for (_, _, w) in &r.windows {
        assert!(w.c > 0.01 && !w.degenerate);
    }
}

#[test]
fn sphere_moment_monte_carlo() {
    // ∫ x₁²x₂² dσ on S² = 1/15, ∫ x₁⁴ = 1/5
    let pts = real_sphere_points(3, 200_000, 42);
    let m22: f64 = pts.iter().map(|p| p[0] * p[0] * p[1] * p[1]).sum::<f64>() / pts.len() as f64;
    let m4: f64 = pts.iter().map(|p| p[0].powi(4)).sum::<f64>() / pts.len() as f64;
    let f22 = &(&x(3, 0) * &x(3, 0)) * &(&x(3, 1) * &x(3, 1));
    let exact = real_sphere_inner(&f22, &RealPoly::constant(3, 1.0)).unwrap();
    assert!((exact - 1.0 / 15.0).abs() < 1e-15);
    assert!((m22 - exact).abs() < 3e-3);
    assert!((m4 - 0.2).abs() < 3e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval_and_weighted_norm(coeffs in prop::collection::vec(-3i32..4, 1..10), s in 0.0f64..2.0) {
        let mut f = RealPoly::zero(3);
        for (i, &c) in coeffs.iter().enumerate() {
            let p = i % 4;
            let b = harmonic_basis(3, p).unwrap();
            f = &f + &b.elements[i % b.elements.len()].scale(&(c as f64));
        }
        let direct = real_ball_inner(&f, &f, s).unwrap();
        let cells = harm_norm_s(&f, s).unwrap();
        prop_assert!((direct - cells.value).abs() < 1e-9 * (1.0 + direct));
        let parts = harm_decompose(&f).unwrap();
        let total: f64 = parts.values().map(|g| real_sphere_inner(g, g).unwrap()).sum();
        prop_assert!((total - real_sphere_inner(&f, &f).unwrap()).abs() < 1e-9 * (1.0 + total));
    }
}
