use mharm::polyalg::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

type Q = Rational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn wirtinger_examples() {
    let z1: ComplexPoly = ComplexPoly::z(2, 0);
    let z1sq = &z1 * &z1;
    assert_eq!(z1sq.wirtinger(0, false).unwrap(), z1.scale(&c(2.0, 0.0)));
    assert!(z1.wirtinger(0, true).unwrap().is_zero());
    let f = &z1 * &ComplexPoly::zbar(2, 1);
    assert_eq!(f.wirtinger(0, false).unwrap(), ComplexPoly::zbar(2, 1));
    assert!(f.wirtinger(2, false).is_err());
}

#[test]
fn tangential_examples() {
    let z2: ComplexPoly = ComplexPoly::z(2, 1);
    assert_eq!(z2.tangential(0, 1, false).unwrap(), ComplexPoly::zbar(2, 0));
    assert!(ComplexPoly::<Complex64>::zbar(2, 0).tangential(0, 1, false).unwrap().is_zero());
    assert_eq!(ComplexPoly::<Complex64>::zbar(2, 1).tangential(0, 1, true).unwrap(), ComplexPoly::z(2, 0));
    assert!(z2.tangential(1, 1, false).is_err());
}

#[test]
fn reeb_and_radial_examples() {
    let z1: ComplexPoly<Q> = ComplexPoly::z(2, 0);
    let sq = &z1 * &z1;
    assert_eq!(sq.reeb(), sq.scale(&q(2, 1)));
    let m = &z1 * &ComplexPoly::zbar(2, 1);
    assert_eq!(m.radial_n(), m.scale(&q(2, 1)));
    assert!(m.reeb().is_zero());
}

#[test]
fn invariant_laplacian_examples() {
    let z1: ComplexPoly<Q> = ComplexPoly::z(2, 0);
    assert!(z1.invariant_laplacian().is_zero());
    assert!(ComplexPoly::<Q>::constant(2, q(7, 1)).invariant_laplacian().is_zero());
    // Δ̃(z₁z̄₂) = 4(1−|z|²)(0 − z₁z̄₂) by direct expansion: only j=1,k=2 contributes.
    let f = &z1 * &ComplexPoly::zbar(2, 1);
    let expected = (&f.times_norm_sq() - &f).scale(&q(4, 1));
    assert_eq!(f.invariant_laplacian(), expected);
}

#[test]
fn sphere_and_ball_examples() {
    let one: ComplexPoly<Q> = ComplexPoly::one(2);
    assert_eq!(sphere_inner(&one, &one).unwrap(), Q::one());
    let z1: ComplexPoly<Q> = ComplexPoly::z(2, 0);
    let z2: ComplexPoly<Q> = ComplexPoly::z(2, 1);
    assert!(sphere_inner(&z1, &z2).unwrap().is_zero());
    assert_eq!(sphere_inner(&z1, &z1).unwrap(), q(1, 2));
    assert!(sphere_inner(&z1, &ComplexPoly::z(3, 0)).is_err());

    let f: ComplexPoly = ComplexPoly::z(2, 0);
    for s in [0.0, 0.5, 3.0] {
        let v = ball_inner(&ComplexPoly::one(2), &ComplexPoly::one(2), s).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);
    }
    assert!((ball_inner(&f, &f, 0.0).unwrap().re - 1.0 / 3.0).abs() < 1e-14);
    assert!(ball_inner(&f, &f.conj(), 0.0).unwrap().norm() < 1e-15);
    assert!(ball_inner(&f, &f, -1.0).is_err());
}

#[test]
fn sphere_moment_monte_carlo_oracle() {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let n_samples = 200_000;
    let mut acc = 0.0;
    for _ in 0..n_samples {
        let g: Vec<f64> = (0..4).map(|_| {
            let (u1, u2): (f64, f64) = (rng.gen::<f64>().max(1e-300), rng.gen());
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        }).collect();
        let r2: f64 = g.iter().map(|x| x * x).sum();
        acc += (g[0] * g[0] + g[1] * g[1]) / r2;
    }
    // ⟨z₁, z₁⟩ on S³
    assert!((acc / n_samples as f64 - 0.5).abs() < 5e-3);
}

#[test]
fn rotation_examples() {
    let f: ComplexPoly = &ComplexPoly::z(2, 0) * &ComplexPoly::zbar(2, 1);
    let id = DMatrix::<Complex64>::identity(2, 2);
    assert_eq!(rotate(&f, &id).unwrap(), f);
    let swap = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    assert_eq!(rotate(&ComplexPoly::z(2, 0), &swap).unwrap(), ComplexPoly::z(2, 1));
    let bad = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    assert!(rotate(&f, &bad).is_err());
}

#[test]
fn real_examples() {
    let x2: RealPoly<Q> = RealPoly::x(2, 1);
    assert_eq!(x2.real_tangential(0, 1).unwrap(), RealPoly::x(2, 0));
    assert!(x2.real_tangential(0, 0).is_err());
    let x1: RealPoly<Q> = RealPoly::x(3, 0);
    assert_eq!(real_sphere_inner(&x1, &x1).unwrap(), q(1, 3));
    assert!(real_sphere_inner(&x1, &RealPoly::x(3, 1)).unwrap().is_zero());
}

#[test]
fn serialization_roundtrip() {
    let mut f: ComplexPoly = ComplexPoly::zero(2);
    f.add_term(MultiIndex::from_slice(&[1, 0]), MultiIndex::from_slice(&[0, 2]), c(0.25, -1e-20));
    f.add_term(MultiIndex::from_slice(&[0, 0]), MultiIndex::from_slice(&[0, 0]), c(3.0, 0.0));
    let text = f.to_string();
    assert_eq!(text, "0,0|0,0|3.0|0.0\n1,0|0,2|0.25|-1e-20\n");
    assert_eq!(ComplexPoly::parse(&text, None).unwrap(), f);
    assert!(ComplexPoly::parse("1,0|0|1|0", None).is_err());
}

fn random_exact(dim: usize, seed: &[(u8, u8, u8, u8, i8)]) -> ComplexPoly<Q> {
    let mut f = ComplexPoly::zero(dim);
    for &(a0, a1, b0, b1, v) in seed {
        let mut a = vec![0u32; dim];
        let mut b = vec![0u32; dim];
        a[0] = (a0 % 3) as u32;
        a[dim - 1] += (a1 % 3) as u32;
        b[0] = (b0 % 3) as u32;
        b[dim - 1] += (b1 % 3) as u32;
        f.add_term(MultiIndex::from_slice(&a), MultiIndex::from_slice(&b), q(v as i64, 1 + (a0 as i64 % 4)));
    }
    f
}

fn term_strategy() -> impl Strategy<Value = Vec<(u8, u8, u8, u8, i8)>> {
    prop::collection::vec(any::<(u8, u8, u8, u8, i8)>(), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sphere_inner_hermitian_and_positive(a in term_strategy(), b in term_strategy(), dim in 2usize..4) {
        let f = random_exact(dim, &a);
        let g = random_exact(dim, &b);
        prop_assert_eq!(sphere_inner(&f, &g).unwrap(), sphere_inner(&g, &f).unwrap());
        let nf = norm_sq_sphere(&f);
        prop_assert!(nf >= Q::zero());
        prop_assert_eq!(nf.is_zero(), f.is_zero());
    }

    #[test]
    fn adjoint_identity(a in term_strategy(), b in term_strategy(), dim in 2usize..4) {
        let f = random_exact(dim, &a);
        let g = random_exact(dim, &b);
        for j in 0..dim {
            for k in 0..dim {
                if j == k { continue; }
                let lhs = sphere_inner(&f.tangential(j, k, false).unwrap(), &g).unwrap();
                let rhs = -sphere_inner(&f, &g.tangential(j, k, true).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn spherical_laplacian_operator_identity(a in term_strategy(), dim in 2usize..4) {
        let f = random_exact(dim, &a);
        let mut rhs = -&f.reeb().reeb();
        for j in 0..dim {
            for k in 0..dim {
                if j == k { continue; }
                let llbar = f.tangential(j, k, true).unwrap().tangential(j, k, false).unwrap();
                let lbarl = f.tangential(j, k, false).unwrap().tangential(j, k, true).unwrap();
                rhs = &(&rhs + &llbar) + &lbarl;
            }
        }
        prop_assert_eq!(f.spherical_laplacian(), rhs);
    }

    #[test]
    fn grading_of_operators(a0 in 0u32..3, a1 in 0u32..3, b0 in 0u32..3, b1 in 0u32..3) {
        let f: ComplexPoly<Q> = ComplexPoly::monomial(&[a0, a1], &[b0, b1], Q::one());
        let (p, qd) = (a0 + a1, b0 + b1);
        let d = f.wirtinger(0, false).unwrap();
        if let Some(bd) = d.bihomogeneous() { prop_assert_eq!(bd, (p as usize - 1, qd as usize)); }
        let (p, qd) = (p as i64, qd as i64);
        let shifted = [
            (f.tangential(0, 1, false).unwrap(), (p - 1, qd + 1)),
            (f.tangential(0, 1, true).unwrap(), (p + 1, qd - 1)),
            (f.reeb(), (p, qd)),
        ];
        for (g, expect) in shifted {
            if let Some((gp, gq)) = g.bihomogeneous() {
                prop_assert_eq!((gp as i64, gq as i64), expect);
                prop_assert_eq!(gp as i64 + gq as i64, p + qd);
            }
        }
    }

    #[test]
    fn real_tangential_squares(seed in prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..6), 1..6)) {
        let mut f: RealPoly<Q> = RealPoly::zero(3);
        for (a, b, cc, v) in seed {
            f.add_term(MultiIndex::from_slice(&[a, b, cc]), q(v, 1));
        }
        let mut lhs = RealPoly::zero(3);
        for j in 0..3 {
            for k in 0..3 {
                if j != k {
                    lhs = &lhs + &f.real_tangential(j, k).unwrap().real_tangential(j, k).unwrap();
                }
            }
        }
        prop_assert_eq!(lhs, f.spherical_laplacian().scale(&q(2, 1)));
    }

    #[test]
    fn rotation_preserves_sphere_norm(a in term_strategy(), theta in 0.0f64..6.3, phi in 0.0f64..6.3) {
        let f = random_exact(2, &a).to_float();
        let u = DMatrix::from_row_slice(2, 2, &[
            c(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), phi),
            -Complex64::from_polar(theta.sin(), -phi), c(theta.cos(), 0.0),
        ]);
        let g = rotate(&f, &u).unwrap();
        prop_assert!((norm_sq_sphere(&g) - norm_sq_sphere(&f)).norm() < 1e-10 * (1.0 + norm_sq_sphere(&f).norm()));
        prop_assert_eq!(g.bihomogeneous(), f.bihomogeneous());
    }
}
