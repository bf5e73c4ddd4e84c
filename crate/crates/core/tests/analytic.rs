//! q-analytic polynomials, the complex Hermite realization and q-grids.

use num_complex::Complex64;
use qfock_core::qcomplex::*;
use qfock_core::qcore::q_number;
use qfock_core::util::factorial;
use qfock_core::QContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(q: f64) -> QContext {
    QContext::new(q).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Running product `prod_{l < n} (x + i s q^l y)`.
fn product_oracle(n: usize, x: f64, y: f64, q: f64, sign: f64) -> Complex64 {
    (0..n).fold(c(1.0, 0.0), |acc, l| acc * c(x, sign * q.powi(l as i32) * y))
}

#[test]
fn monomial_examples() {
    let k = ctx(0.5);
    assert_eq!(zq_monomial(0, &k), BivarPoly::one());
    assert!((zq_monomial(2, &k).eval(1.0, 1.0) - c(0.5, 1.5)).norm() < 1e-15);
    let k = ctx(0.7);
    let p = zq_monomial(5, &k);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let (x, y) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        assert!((p.eval(x, y) - product_oracle(5, x, y, 0.7, 1.0)).norm() < 1e-12);
    }
}

#[test]
fn conjugate_monomials() {
    let k = ctx(0.5);
    let one = zq_conjugate_monomial(1, &k);
    assert_eq!(one.coeff(1, 0), c(1.0, 0.0));
    assert_eq!(one.coeff(0, 1), c(0.0, -1.0));
    assert_eq!(zq_conjugate_monomial(3, &k), zq_monomial(3, &k).conj());
    let v = zq_conjugate_monomial(4, &k).eval(1.0, -1.0);
    assert!((v - product_oracle(4, 1.0, -1.0, 0.5, -1.0)).norm() < 1e-15);
    assert!((v - zq_monomial(4, &k).eval(1.0, -1.0).conj()).norm() < 1e-15);
}

#[test]
fn derivative_examples() {
    let k = ctx(0.5);
    assert!(dz(&BivarPoly::one(), &k).is_zero());
    // x^2 y -> ([2] x y - i [1]_{1/q} x^2) / 2
    let p = BivarPoly::monomial(2, 1, c(1.0, 0.0));
    let d = dz(&p, &k);
    assert!((d.coeff(1, 1) - c(0.75, 0.0)).norm() < 1e-15);
    assert!((d.coeff(2, 0) - c(0.0, -0.5)).norm() < 1e-15);
    let dbar = dzbar(&BivarPoly::monomial(0, 3, c(1.0, 0.0)), &k);
    // [3]_{1/q} at q = 1/2 is 1 + 2 + 4
    assert!((dbar.coeff(0, 2) - c(0.0, 3.5)).norm() < 1e-14);
}

#[test]
fn analytic_identities_exact() {
    for q in [0.3, 0.5, 0.9] {
        let k = ctx(q);
        for n in 0..=30 {
            let p = zq_monomial(n, &k);
            assert!(dzbar(&p, &k).max_abs() < 1e-12 * dz(&p, &k).max_abs().max(1.0), "q = {q}, n = {n}");
            if n > 0 {
                let want = zq_monomial(n - 1, &k).scale(q_number(n as f64, &k).into());
                assert!(dz(&p, &k).max_abs_diff(&want) < 1e-12 * want.max_abs(), "q = {q}, n = {n}");
            }
        }
    }
}

/// `C_{i,j}` by enumerating subsets: the factor `l` contributes `A_l z` when
/// `l` is in the subset, `B_l zbar` otherwise.
fn subset_oracle(n: usize, q: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    for mask in 0u32..(1 << n) {
        let mut prod = 1.0;
        for l in 1..=n {
            let ql = q.powi(l as i32);
            prod *= if mask & (1 << (l - 1)) != 0 { (1.0 + ql) / 2.0 } else { (1.0 - ql) / 2.0 };
        }
        out[mask.count_ones() as usize] += prod;
    }
    out
}

#[test]
fn expansion_coefficients() {
    let k = ctx(0.5);
    let one = zq_expansion_coeffs(1, &k);
    assert!((one.coeff(1, 0) - c(0.75, 0.0)).norm() < 1e-15);
    assert!((one.coeff(0, 1) - c(0.25, 0.0)).norm() < 1e-15);
    for q in [0.3, 0.5, 0.8] {
        let k = ctx(q);
        for n in 1..=8 {
            let e = zq_expansion_coeffs(n, &k);
            for (i, want) in subset_oracle(n, q).into_iter().enumerate() {
                assert!((e.coeff(i as u32, (n - i) as u32).re - want).abs() < 1e-14);
            }
        }
        for n in 1..=15 {
            let s: Complex64 = zq_expansion_coeffs(n, &k).terms().map(|(_, v)| v).sum();
            assert!((s - 1.0).norm() < 1e-12);
        }
    }
}

#[test]
fn expansion_matches_product() {
    let k = ctx(0.3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 0..=12 {
        let e = zq_in_zbar(n, &k);
        for _ in 0..10 {
            let (x, y) = (rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
            let want = product_oracle(n, x, y, 0.3, 1.0);
            assert!((e.eval(c(x, y)) - want).norm() < 1e-12 * c(x, y).norm().powi(n as i32).max(1.0));
        }
    }
}

#[test]
fn domination_examples() {
    let k = ctx(0.5);
    let r = modulus_domination_check(2, &[(0.0, 1.0)], &k);
    assert!(r.passed());
    assert!((zq_value(2, c(0.0, 1.0), &k).norm() - 0.5).abs() < 1e-15);
    // equality on the real axis
    for n in 0..6 {
        assert!((zq_value(n, c(1.3, 0.0), &k).norm() - 1.3f64.powi(n as i32)).abs() < 1e-14);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples: Vec<_> = (0..1000).map(|_| (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))).collect();
    for n in 0..=10 {
        assert!(modulus_domination_check(n, &samples, &k).passed());
    }
}

#[test]
fn complex_hermite_examples() {
    assert_eq!(complex_hermite(0, 0), ZBarBasisPoly::one());
    let h11 = complex_hermite(1, 1);
    assert_eq!(h11, ZBarBasisPoly::from_terms([((1, 1), c(1.0, 0.0)), ((0, 0), c(-1.0, 0.0))]));
    assert_eq!(complex_hermite(2, 0), ZBarBasisPoly::monomial(2, 0, c(1.0, 0.0)));
    let pi = std::f64::consts::PI;
    assert!((gaussian_inner(&h11, &h11) - pi).norm() < 1e-14);
    assert!(gaussian_inner(&complex_hermite(1, 0), &complex_hermite(0, 1)).norm() < 1e-15);
    let z = ZBarBasisPoly::z();
    assert!((gaussian_inner(&z, &z) - pi).norm() < 1e-14);
    for (p, r) in [(3, 2), (6, 6), (0, 5)] {
        let h = complex_hermite(p, r);
        let want = pi * factorial(p) * factorial(r);
        assert!((gaussian_inner(&h, &h) - want).norm() < 1e-12 * want);
    }
}

#[test]
fn mixed_gram_examples() {
    let pi = std::f64::consts::PI;
    for q in [0.2, 0.7] {
        let g = mixed_basis_gram(1, &ctx(q));
        assert_eq!(g.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { pi } else { 0.0 };
                assert!((g.matrix[i][j] - want).norm() < 1e-14);
            }
        }
    }
    let g = mixed_basis_gram(4, &ctx(0.5));
    assert_eq!(g.dim(), 15);
    assert!(g.is_full_rank() && g.min_eigenvalue > 0.0);
    for q in [0.3, 0.5, 0.9] {
        for n in 1..=6 {
            let g = mixed_basis_gram(n, &ctx(q));
            assert!(g.min_eigenvalue > 1e-10 * g.trace, "q = {q}, N = {n}");
        }
    }
}

#[test]
fn mixed_gram_near_classical() {
    let near = mixed_basis_gram(3, &ctx(0.999));
    let classical = monomial_gram(3);
    let mut worst_abs: f64 = 0.0;
    let mut worst_scaled: f64 = 0.0;
    for i in 0..near.dim() {
        for j in 0..near.dim() {
            let d = (near.matrix[i][j] - classical.matrix[i][j]).norm();
            let scale = (classical.matrix[i][i].re * classical.matrix[j][j].re).sqrt();
            worst_abs = worst_abs.max(d);
            worst_scaled = worst_scaled.max(d / scale);
        }
    }
    // 0.0564... from an exact rational computation of both Gram matrices
    assert!((worst_abs - 0.0564262963392).abs() < 1e-9, "{worst_abs}");
    assert!(worst_scaled < 1e-2);
    // the deviation is first order in 1 - q
    let closer = mixed_basis_gram(3, &ctx(0.9999));
    let gap = (0..closer.dim())
        .flat_map(|i| (0..closer.dim()).map(move |j| (i, j)))
        .map(|(i, j)| (closer.matrix[i][j] - classical.matrix[i][j]).norm())
        .fold(0.0, f64::max);
    assert!(gap < 1e-2 && (worst_abs / gap - 10.0).abs() < 0.1);
}

#[test]
fn elliptic_variable() {
    let w = EllipticVariable::new(2.0, 3.0, 2.0).unwrap();
    assert_eq!(w.modulus_sq(), 9.0 + 16.0);
    assert_eq!(w.r_p(), 5.0);
    assert_eq!(w.value(), c(3.0, 4.0));
    let back = EllipticVariable::from_polar(2.0, w.r_p(), w.phi()).unwrap();
    assert!((back.x - 3.0).abs() < 1e-14 && (back.y - 2.0).abs() < 1e-14);
    assert!(EllipticVariable::new(0.0, 1.0, 1.0).is_err());
    assert!(EllipticVariable::new(-1.0, 1.0, 1.0).is_err());
    for p in [0.3, 0.9, 2.0] {
        for n in 1..=6 {
            assert!(elliptic_family_gram(n, p).unwrap().is_full_rank());
        }
    }
}

#[test]
fn grid_examples() {
    let k = ctx(0.5);
    let g = qgrid_generate(&[(0.3, 0.7)], 0, &k);
    assert_eq!(g.len(), 1);
    assert_eq!((g.points[0].x, g.points[0].y), (0.3, 0.7));

    let g = qgrid_generate(&[(1.0, 1.0)], 1, &k);
    let mut pts: Vec<_> = g.points.iter().map(|p| (p.x, p.y)).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(pts, vec![(0.5, 1.0), (0.5, 2.0), (1.0, 1.0), (1.0, 2.0)]);

    let fig = qgrid_generate(&reference_seed_set(), 6, &ctx(0.6));
    assert_eq!(fig.raw_count(), 9 * 49);
    assert_eq!(fig.len(), 441);
}

#[test]
fn grid_deduplicates_related_seeds() {
    let k = ctx(0.6);
    let g = qgrid_generate(&[(1.0, 1.0), (0.6, 1.0)], 2, &k);
    assert_eq!(g.raw_count(), 18);
    assert_eq!(g.len(), 12);
}

#[test]
fn grid_closure() {
    let k = ctx(0.5);
    let depth = 4;
    let g = qgrid_generate(&[(1.0, 2.0), (-0.7, 0.4)], depth, &k);
    for p in &g.points {
        if p.b1 < depth {
            assert!(g.contains(p.seed, p.b1 + 1, p.b2));
        }
        if p.b2 < depth {
            assert!(g.contains(p.seed, p.b1, p.b2 + 1));
        }
    }
    let csv = g.to_csv();
    assert!(csv.starts_with("seed,b1,b2,x,y\n"));
    assert_eq!(csv.lines().count(), g.len() + 1);
}
