//! One PASS/FAIL line per acceptance criterion. Criteria that fail for
//! mathematical reasons are listed in EXPECTED_FAIL; the run fails if the
//! set of failing criteria differs from that list in either direction.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use mharm::coeffs::{c_p0_closed, c_pq, c_pq_auto};
use mharm::harmonics::{build_basis, hpq_kernel, peter_weyl_all, rational_basis};
use mharm::polyalg::{real_ball_inner, ComplexPoly, Rational, RealPoly};
use mharm::realharm::{harm_norm_s, harmonic_basis, rational_harmonic_basis, real_spectral_sum_sphere, real_word_sum_sphere};
use mharm::sampling::{sphere_points, DEFAULT_SEED};
use mharm::seminorms::{spectral_tangential_sum, tangential_sum};
use mharm::verify::{self, Suite, VerifyConfig};
use num_complex::Complex64;
use num_traits::ToPrimitive;

const EXPECTED_FAIL: [u32; 3] = [3, 4, 8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let mut exact = true;
    let mut float_dev = 0.0f64;
    for n in [2usize, 3] {
        for p in 0..=4usize {
            for q in 0..=4usize {
                let lam = -(((p + q) * (p + q + 2 * n - 2)) as i64);
                let r = (p as i64) - (q as i64);
                for e in rational_basis(n, p, q).unwrap() {
                    exact &= e.spherical_laplacian() == e.scale(&Rational::from_integer(lam.into()));
                    exact &= e.reeb() == e.scale(&Rational::from_integer(r.into()));
                }
                for e in &build_basis(n, p, q).unwrap().elements {
                    let d1 = (&e.spherical_laplacian() - &e.scale(&Complex64::new(lam as f64, 0.0))).max_abs_coeff();
                    let d2 = (&e.reeb() - &e.scale(&Complex64::new(r as f64, 0.0))).max_abs_coeff();
                    float_dev = float_dev.max(d1).max(d2);
                }
            }
        }
    }
    outcome(exact && float_dev <= 1e-10, format!("exact={exact} float_max_dev={float_dev:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut dims_ok = true;
    for n in [2usize, 3] {
        let pts = sphere_points(n, 100, DEFAULT_SEED);
        for p in 0..=4usize {
            for q in 0..=4usize {
                let b = build_basis(n, p, q).unwrap();
                let k = hpq_kernel(n, p, q).unwrap();
                dims_ok &= k.trace().to_f64() == Some(b.dim as f64);
                for w in pts.chunks(2) {
                    let (z, x) = (&w[0], &w[1]);
                    let lhs: Complex64 = b.elements.iter().map(|e| e.eval(z) * e.eval(x).conj()).sum();
                    let inner: Complex64 = z.iter().zip(x).map(|(a, b)| a * b.conj()).sum();
                    worst = worst.max((lhs - k.eval(inner)).norm());
                }
            }
        }
    }
    outcome(worst <= 1e-9 && dims_ok, format!("max_defect={worst:.2e} dims_match={dims_ok}"))
}

fn cell_mixture(n: usize) -> ComplexPoly {
    let mut f = ComplexPoly::zero(n);
    for p in 0..=3usize {
        for q in 0..=3usize {
            let b = build_basis(n, p, q).unwrap();
            let w = Complex64::new(1.0 + p as f64, 0.5 * q as f64 - 0.3);
            f = &f + &b.elements[(p + 2 * q) % b.dim].scale(&w);
        }
    }
    f
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [2usize, 3] {
        let f = cell_mixture(n);
        let pw = peter_weyl_all(&f);
        for m in 0..=2usize {
            let brute = tangential_sum(&f, m).unwrap().value;
            let spectral = spectral_tangential_sum(&pw, m).value;
            let rel = (brute - spectral).abs() / spectral.abs().max(1.0);
            pass &= rel <= 1e-9;
            parts.push(format!("n={n} m={m} rel={rel:.1e}"));
        }
    }
    outcome(pass, parts.join(" "))
}

fn suite(s: Suite) -> verify::VerifyReport {
    verify::run(s, &VerifyConfig::default()).unwrap()
}

fn criterion_4() -> Outcome {
    let r = suite(Suite::Pc);
    let parts: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.name.ends_with(" strength") && !c.name.contains("ledger"))
        .map(|c| format!("{}={:.7} (target {})", c.name, c.value, c.target.unwrap()))
        .collect();
    outcome(r.pass, parts.join(" "))
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2usize, 3] {
        for p in 1..=5 {
            for s in [0.0, 1.0, 2.0] {
                let closed = c_p0_closed(n, p, s).unwrap();
                let (quad, _) = c_pq(n, p, 0, s).unwrap();
                worst = worst.max((closed - quad).abs());
            }
        }
    }
    let one = (0..40).all(|i| c_pq_auto(2, 0, 0, -2.9 + 0.15 * i as f64).unwrap().0 == 1.0);
    outcome(worst <= 1e-10 && one, format!("max_dev={worst:.2e} C00_exact={one}"))
}

fn criterion_6() -> Outcome {
    let n = 2;
    let grid: Vec<f64> = (0..60).map(|i| -2.9 + 0.1 * i as f64).chain([3.0]).collect();
    let mut positive = true;
    let mut monotone = true;
    let mut evals = 0;
    for p in 0..=3 {
        for q in 0..=3 {
            let vals: Vec<(f64, f64)> = grid.iter().map(|&s| c_pq_auto(n, p, q, s).unwrap()).collect();
            evals += vals.len();
            positive &= vals.iter().all(|v| v.0 > 0.0);
            monotone &= vals.windows(2).all(|w| w[1].0 <= w[0].0 + w[0].1 + w[1].1);
        }
    }
    outcome(positive && monotone, format!("points={evals} positive={positive} nonincreasing={monotone}"))
}

fn criterion_7() -> Outcome {
    let r = suite(Suite::Psd);
    let parts: Vec<String> = r.checks.iter().map(|c| format!("{}: {:.2e}", c.name, c.value)).collect();
    outcome(r.pass, parts.join("; "))
}

fn criterion_8() -> Outcome {
    let r = suite(Suite::Limits);
    let ratio = |prefix: &str| r.checks.iter().find(|c| c.name.starts_with(prefix) && c.name.ends_with("ratio")).unwrap();
    let first = ratio("first difference");
    let second = ratio("second difference -> K_cici worst");
    let pass = first.pass && second.pass;
    outcome(pass, format!("first-order decade ratio {:.2} ({}); second difference decade ratio {:.3} ({})", first.value, first.pass, second.value, second.pass))
}

fn criterion_9() -> Outcome {
    let r = suite(Suite::Pk);
    let parts: Vec<String> = r.checks.iter().map(|c| format!("{} -> {:.12} ± {:.1e}", c.name, c.value, c.error)).collect();
    outcome(r.pass, parts.join("; "))
}

fn criterion_10() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for s in [Suite::Pf, Suite::Ph, Suite::Pi, Suite::Pj] {
        let r = suite(s);
        let c = r.tables.iter().map(|t| t.window.c).fold(f64::INFINITY, f64::min);
        let degenerate = r.tables.iter().filter(|t| t.window.degenerate).count();
        pass &= r.pass && c > 0.0 && degenerate == 0;
        parts.push(format!("{s}: tables={} min_c={c:.3e} degenerate={degenerate}", r.tables.len()));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_11() -> Outcome {
    let n = 3;
    let mut wl = true;
    let mut wk = true;
    for d in 0..=3usize {
        for e in rational_harmonic_basis(n, d).unwrap() {
            wl &= real_word_sum_sphere(&e, 1).unwrap() == real_spectral_sum_sphere(&e, 1).unwrap();
            let lam = -((d * (d + n - 2)) as i64);
            wk &= e.spherical_laplacian() == e.scale(&Rational::from_integer(lam.into()));
        }
    }
    for m in [2usize, 4] {
        for d in 0..=4usize {
            for e in rational_harmonic_basis(m, d).unwrap() {
                let lam = -((d * (d + m - 2)) as i64);
                wk &= e.spherical_laplacian() == e.scale(&Rational::from_integer(lam.into()));
            }
        }
    }
    let mut f = RealPoly::zero(n);
    for d in 0..=3usize {
        for (i, e) in harmonic_basis(n, d).unwrap().elements.iter().enumerate() {
            f = &f + &e.scale(&(0.5 + d as f64 - 0.3 * i as f64));
        }
    }
    let mut worst = 0.0f64;
    for s in [0.0, 1.0] {
        let a = harm_norm_s(&f, s).unwrap().value;
        let b = real_ball_inner(&f, &f, s).unwrap();
        worst = worst.max((a - b).abs() / b.abs().max(1.0));
    }
    outcome(wl && wk && worst <= 1e-10, format!("WL_exact={wl} WK_exact={wk} harm_norm_s_vs_ball={worst:.2e}"))
}

fn criterion_12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mharm");
    let mut same = true;
    for s in Suite::ALL {
        let name = s.to_string();
        let run = || Command::new(bin).args(["verify", &name]).output().expect("binary runs").stdout;
        let (a, b) = (run(), run());
        same &= !a.is_empty() && a == b;
    }
    outcome(same, format!("suites={} byte_identical={same}", Suite::ALL.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Duration); 12] = [
        (1, "eigenvalue identities", criterion_1, Duration::from_secs(30)),
        (2, "kernel reproduction", criterion_2, Duration::MAX),
        (3, "tangential word-sum identity", criterion_3, Duration::from_secs(120)),
        (4, "double-pole strength", criterion_4, Duration::from_secs(60)),
        (5, "closed-form family", criterion_5, Duration::MAX),
        (6, "positivity and monotonicity", criterion_6, Duration::MAX),
        (7, "PSD Gram matrices", criterion_7, Duration::MAX),
        (8, "limit laws", criterion_8, Duration::MAX),
        (9, "Moebius invariance", criterion_9, Duration::from_secs(300)),
        (10, "equivalence windows", criterion_10, Duration::MAX),
        (11, "real-case toolkit", criterion_11, Duration::MAX),
        (12, "determinism", criterion_12, Duration::MAX),
    ];
    let mut failed = BTreeSet::new();
    for (id, title, run, budget) in criteria {
        let t0 = Instant::now();
        let mut o = run();
        let took = t0.elapsed();
        if took > budget {
            o.pass = false;
            o.detail.push_str(&format!(" runtime over budget {budget:?}"));
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id:>2} ({title}) [{:.2}s]: {}", took.as_secs_f64(), o.detail);
        if !o.pass {
            failed.insert(id);
        }
    }
    let expected: BTreeSet<u32> = EXPECTED_FAIL.into_iter().collect();
    println!("failing: {failed:?}; expected: {expected:?}");
    if failed != expected {
        eprintln!("acceptance outcome differs from the recorded analysis");
        std::process::exit(1);
    }
}
