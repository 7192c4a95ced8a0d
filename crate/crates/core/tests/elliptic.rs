use hyperbilliards::elliptic::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn pythagorean_identities_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let k: f64 = rng.gen_range(0.0..0.999);
        let u: f64 = rng.gen_range(-10.0..10.0);
        let (s, c, d) = jacobi_sn_cn_dn(u, k).unwrap();
        worst = worst
            .max((s * s + c * c - 1.0).abs())
            .max((k * k * s * s + d * d - 1.0).abs());
    }
    assert!(worst <= 1e-11, "worst {worst:e}");
}

#[test]
fn addition_and_reflection_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..2000 {
        let k: f64 = rng.gen_range(0.01..0.99);
        let (z, w): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (sz, cz, dz) = jacobi_sn_cn_dn(z, k).unwrap();
        let (sw, cw, dw) = jacobi_sn_cn_dn(w, k).unwrap();
        let lhs = jacobi_sn_cn_dn(z + w, k).unwrap().0;
        let rhs = (sz * cw * dw + sw * cz * dz) / (1.0 - k * k * sz * sz * sw * sw);
        assert!((lhs - rhs).abs() < 1e-10);
        let kk = complete_k(k).unwrap();
        let refl = jacobi_sn_cn_dn(kk - z, k).unwrap().0;
        assert!((refl - cz / dz).abs() < 1e-10);
    }
}

/// Adaptive Simpson on the defining integral after t = sin φ.
fn k_by_simpson(k: f64) -> f64 {
    fn simpson(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = (f((a + m) / 2.0), f((m + b) / 2.0));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
        if depth == 0 || (left + right - whole).abs() < 15.0 * eps {
            return left + right + (left + right - whole) / 15.0;
        }
        simpson(f, a, m, fa, lm, fm, eps / 2.0, depth - 1)
            + simpson(f, m, b, fm, rm, fb, eps / 2.0, depth - 1)
    }
    let f = move |p: f64| 1.0 / (1.0 - k * k * p.sin().powi(2)).sqrt();
    let b = std::f64::consts::FRAC_PI_2;
    simpson(&f, 0.0, b, f(0.0), f(b / 2.0), f(b), 1e-13, 40)
}

#[test]
fn k_against_direct_quadrature() {
    for &k in &[0.05, 0.3, 0.7, 0.95, 0.999] {
        assert!(
            (complete_k(k).unwrap() - k_by_simpson(k)).abs() < 1e-10,
            "κ = {k}"
        );
    }
}

#[test]
fn akhiezer_bounded_on_e_and_equioscillates() {
    for &(n, m, k) in &[
        (3, 2, 0.8),
        (3, 1, 0.8),
        (4, 1, 0.6),
        (5, 2, 0.9),
        (6, 3, 0.5),
    ] {
        let a = AkhiezerParams::new(n, m, k).unwrap();
        let grid = |lo: f64, hi: f64| (0..=4000).map(move |i| lo + (hi - lo) * i as f64 / 4000.0);
        let mut max: f64 = 0.0;
        for x in grid(-1.0, a.alpha).chain(grid(a.beta, 1.0)) {
            max = max.max(a.ta(x).abs());
        }
        assert!(max <= a.l + 1e-9, "({n},{m}) max {max} vs L {}", a.l);
        // Alternation count: sign changes of TA ∓ L between consecutive extrema.
        let count = |lo: f64, hi: f64| {
            let xs: Vec<f64> = grid(lo, hi).collect();
            let mut hits: Vec<f64> = Vec::new();
            for x in xs {
                let v = a.ta(x);
                if (v.abs() - a.l).abs() < 1e-5 * a.l {
                    let s = v.signum();
                    if hits.last() != Some(&s) {
                        hits.push(s);
                    }
                }
            }
            hits.len()
        };
        assert_eq!(count(-1.0, a.alpha), n - m + 1, "left ({n},{m})");
        assert_eq!(count(a.beta, 1.0), m + 1, "right ({n},{m})");
        // Exterior critical point.
        let c = a.coefficients();
        let dp = |x: f64| {
            c.iter()
                .enumerate()
                .skip(1)
                .map(|(j, cj)| j as f64 * cj * x.powi(j as i32 - 1))
                .sum::<f64>()
        };
        let (mut lo, mut hi) = (a.alpha, a.beta);
        for _ in 0..200 {
            let mid = (lo + hi) / 2.0;
            if dp(lo).signum() == dp(mid).signum() {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!(
            ((lo + hi) / 2.0 - a.c).abs() < 1e-8,
            "({n},{m}) crit {} vs {}",
            (lo + hi) / 2.0,
            a.c
        );
    }
}
