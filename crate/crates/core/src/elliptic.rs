//! Jacobi elliptic functions, complete integrals, theta functions, the
//! Akhiezer polynomials `TA_n` and quartic-root integrals.
//!
//! Theta functions use the classical argument `z`; callers working in the
//! `u` variable of `sn u` pass `z = πu / (2K)`, which
//! [`EllipticModulus::theta_u`] does for them.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

fn check_kappa(kappa: f64) -> Result<()> {
    if !(0.0..1.0).contains(&kappa) {
        return Err(Error::ModulusOutOfRange(kappa));
    }
    Ok(())
}

/// Arithmetic-geometric mean.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (an, bn) = ((a + b) / 2.0, (a * b).sqrt());
        if (an - bn).abs() <= 1e-16 * an {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// `K(κ) = π / (2 agm(1, κ'))`.
pub fn complete_k(kappa: f64) -> Result<f64> {
    check_kappa(kappa)?;
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - kappa * kappa).sqrt()))
}

/// Complete integral of the second kind.
pub fn complete_e(kappa: f64) -> Result<f64> {
    check_kappa(kappa)?;
    let kp2 = 1.0 - kappa * kappa;
    Ok(carlson_rf(0.0, kp2, 1.0) - kappa * kappa / 3.0 * carlson_rd(0.0, kp2, 1.0))
}

/// Carlson's symmetric `R_F(x, y, z)` by duplication.
pub fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    for _ in 0..100 {
        let mu = (x + y + z) / 3.0;
        let (dx, dy, dz) = (1.0 - x / mu, 1.0 - y / mu, 1.0 - z / mu);
        let e = dx.abs().max(dy.abs()).max(dz.abs());
        if e < 1e-4 {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mu.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let l = sx * (sy + sz) + sy * sz;
        x = (x + l) / 4.0;
        y = (y + l) / 4.0;
        z = (z + l) / 4.0;
    }
    1.0 / ((x + y + z) / 3.0).sqrt()
}

/// Carlson's `R_D(x, y, z)` by duplication.
pub fn carlson_rd(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    let mut sum = 0.0;
    let mut fac = 1.0;
    for _ in 0..100 {
        let mu = (x + y + 3.0 * z) / 5.0;
        let (dx, dy, dz) = (1.0 - x / mu, 1.0 - y / mu, 1.0 - z / mu);
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let s = 1.0
                + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
                + dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea));
            return 3.0 * sum + fac * s / (mu * mu.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let l = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + l));
        fac /= 4.0;
        x = (x + l) / 4.0;
        y = (y + l) / 4.0;
        z = (z + l) / 4.0;
    }
    3.0 * sum
}

/// Incomplete integral of the first kind `F(φ, κ)` for `|φ| ≤ π/2`.
pub fn incomplete_f(phi: f64, kappa: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    s * carlson_rf(c * c, 1.0 - kappa * kappa * s * s, 1.0)
}

/// `(sn u, cn u, dn u)` by the descending Landen transformation.
pub fn jacobi_sn_cn_dn(u: f64, kappa: f64) -> Result<(f64, f64, f64)> {
    check_kappa(kappa)?;
    if kappa == 0.0 {
        return Ok((u.sin(), u.cos(), 1.0));
    }
    let mut a = vec![1.0];
    let mut c = vec![kappa];
    let mut b = (1.0 - kappa * kappa).sqrt();
    while c.last().unwrap().abs() > 1e-16 && a.len() < 40 {
        let an = *a.last().unwrap();
        a.push((an + b) / 2.0);
        c.push((an - b) / 2.0);
        b = (an * b).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for i in (1..=n).rev() {
        phi = (phi + (c[i] / a[i] * phi.sin()).asin()) / 2.0;
    }
    let (sn, cn) = phi.sin_cos();
    // dn stays positive on the real line.
    Ok((sn, cn, (1.0 - kappa * kappa * sn * sn).sqrt()))
}

/// Modulus with its complete integrals and nome.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipticModulus {
    pub kappa: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "K_prime")]
    pub kp: f64,
    pub q: f64,
}

impl EllipticModulus {
    pub fn new(kappa: f64) -> Result<Self> {
        check_kappa(kappa)?;
        if kappa == 0.0 {
            return Err(Error::ModulusOutOfRange(kappa));
        }
        let k = complete_k(kappa)?;
        let kp = complete_k((1.0 - kappa * kappa).sqrt())?;
        Ok(Self {
            kappa,
            k,
            kp,
            q: (-PI * kp / k).exp(),
        })
    }

    pub fn sn_cn_dn(&self, u: f64) -> (f64, f64, f64) {
        jacobi_sn_cn_dn(u, self.kappa).expect("modulus already validated")
    }

    /// Theta functions at `z = πu/(2K)`, derivatives taken in `u`.
    pub fn theta_u(&self, u: f64) -> Theta {
        let s = PI / (2.0 * self.k);
        let mut t = theta_functions(s * u, self.q).expect("nome already validated");
        t.d = t.d.map(|d| d * s);
        t
    }

    fn theta_uc(&self, u: Complex64, which: usize) -> Complex64 {
        theta_complex(u * (PI / (2.0 * self.k)), self.q, which)
    }
}

/// `θ0, θ1, θ2, θ3` and their derivatives, indexed 0..=3.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Theta {
    pub th: [f64; 4],
    pub d: [f64; 4],
}

impl Theta {
    /// Logarithmic derivative `θ_i'/θ_i`.
    pub fn log_derivative(&self, i: usize) -> f64 {
        self.d[i] / self.th[i]
    }
}

/// Theta functions by their q-series, summed until terms drop below `1e-17`.
pub fn theta_functions(z: f64, q: f64) -> Result<Theta> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::NomeOutOfRange(q));
    }
    let mut th = [1.0, 0.0, 0.0, 1.0];
    let mut d = [0.0; 4];
    for n in 0..200 {
        let nf = n as f64;
        let qh = q.powf((nf + 0.5) * (nf + 0.5));
        let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
        let k = 2.0 * nf + 1.0;
        let (s, c) = (k * z).sin_cos();
        th[1] += 2.0 * sgn * qh * s;
        d[1] += 2.0 * sgn * qh * k * c;
        th[2] += 2.0 * qh * c;
        d[2] -= 2.0 * qh * k * s;
        let mut small = qh * k < 1e-17;
        if n >= 1 {
            let qn = q.powf(nf * nf);
            let (s2, c2) = (2.0 * nf * z).sin_cos();
            th[3] += 2.0 * qn * c2;
            d[3] -= 4.0 * nf * qn * s2;
            th[0] += 2.0 * sgn * qn * c2;
            d[0] -= 4.0 * sgn * nf * qn * s2;
            small &= qn * nf < 1e-17;
        }
        if small {
            break;
        }
    }
    Ok(Theta { th, d })
}

/// Theta function `θ_which` at a complex argument.
pub fn theta_complex(z: Complex64, q: f64, which: usize) -> Complex64 {
    let mut acc = if which == 0 || which == 3 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    };
    for n in 0..200 {
        let nf = n as f64;
        let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = match which {
            1 => 2.0 * sgn * q.powf((nf + 0.5).powi(2)) * (z * (2.0 * nf + 1.0)).sin(),
            2 => 2.0 * q.powf((nf + 0.5).powi(2)) * (z * (2.0 * nf + 1.0)).cos(),
            3 if n > 0 => 2.0 * q.powf(nf * nf) * (z * (2.0 * nf)).cos(),
            0 if n > 0 => 2.0 * sgn * q.powf(nf * nf) * (z * (2.0 * nf)).cos(),
            _ => Complex64::new(0.0, 0.0),
        };
        acc += term;
        if n > 2 && term.norm() < 1e-17 * acc.norm().max(1e-300) {
            break;
        }
    }
    acc
}

/// Data of the Akhiezer polynomial `TA_n(·, m, κ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AkhiezerParams {
    pub n: usize,
    pub m: usize,
    pub modulus: EllipticModulus,
    pub alpha: f64,
    pub beta: f64,
    /// Uniform norm on `[-1, α] ∪ [β, 1]`.
    pub l: f64,
    /// Modulus recovered from `α, β`.
    pub kappa_nm: f64,
    pub tau1: f64,
    /// Interior critical point `(α+β)/2 − τ₁`.
    pub c: f64,
}

impl AkhiezerParams {
    pub fn new(n: usize, m: usize, kappa: f64) -> Result<Self> {
        if !(0 < m && m < n) {
            return Err(Error::ParameterOutOfRange(format!(
                "need 0 < m < n, got n = {n}, m = {m}"
            )));
        }
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::ParameterOutOfRange(format!(
                "κ = {kappa} not in (0,1)"
            )));
        }
        let md = EllipticModulus::new(kappa)?;
        let sig = m as f64 / n as f64 * md.k;
        let (s, c, dn) = md.sn_cn_dn(sig);
        let alpha = 1.0 - 2.0 * s * s;
        let s2 = md.sn_cn_dn((n - m) as f64 / n as f64 * md.k).0;
        let beta = 2.0 * s2 * s2 - 1.0;
        let t0 = md.theta_u(0.0);
        let ts = md.theta_u(sig);
        let l = 2f64.powi(1 - n as i32)
            * (t0.th[0] * t0.th[3] / (ts.th[0] * ts.th[3])).powi(2 * n as i32);
        let kappa_nm = (2.0 * (beta - alpha) / ((1.0 - alpha) * (1.0 + beta))).sqrt();
        let sn2 = md.sn_cn_dn(2.0 * sig).0;
        let tau1 = -1.0 + 2.0 * s * c / dn * (1.0 / sn2 - ts.log_derivative(0));
        Ok(Self {
            n,
            m,
            modulus: md,
            alpha,
            beta,
            l,
            kappa_nm,
            tau1,
            c: (alpha + beta) / 2.0 - tau1,
        })
    }

    /// `u` with `x_{n,m}(u) = x`, on the branch keeping `TA_n` real.
    fn u_of_x(&self, x: f64) -> Complex64 {
        let md = &self.modulus;
        let m2 = md.kappa * md.kappa;
        let kp = (1.0 - m2).sqrt();
        let s = md.sn_cn_dn(self.m as f64 / self.n as f64 * md.k).0.powi(2);
        let den = x - 1.0 + 2.0 * s;
        if den == 0.0 {
            return Complex64::new(0.0, md.kp);
        }
        let big_s = s * (x + 1.0) / den;
        if big_s < 0.0 {
            Complex64::new(0.0, incomplete_f((-big_s).sqrt().atan(), kp))
        } else if big_s <= 1.0 {
            Complex64::new(incomplete_f(big_s.sqrt().asin(), md.kappa), 0.0)
        } else if big_s <= 1.0 / m2 {
            let t = ((1.0 - 1.0 / big_s) / (1.0 - m2)).sqrt().min(1.0);
            Complex64::new(md.k, incomplete_f(t.asin(), kp))
        } else {
            Complex64::new(
                incomplete_f((1.0 / (m2 * big_s).sqrt()).asin(), md.kappa),
                md.kp,
            )
        }
    }

    /// `v_{n,m}(u) = θ₁(u − σ) / θ₁(u + σ)` with `σ = mK/n`.
    pub fn v(&self, x: f64) -> Complex64 {
        let u = self.u_of_x(x);
        let sig = Complex64::new(self.m as f64 / self.n as f64 * self.modulus.k, 0.0);
        self.modulus.theta_uc(u - sig, 1) / self.modulus.theta_uc(u + sig, 1)
    }

    /// `TA_n(x) = (L/2)(vⁿ + v⁻ⁿ)`, monic of degree `n`.
    pub fn ta(&self, x: f64) -> f64 {
        let vn = self.v(x).powi(self.n as i32);
        (self.l / 2.0 * (vn + vn.inv())).re
    }

    /// Monomial coefficients, lowest first, by interpolation at Chebyshev
    /// nodes of `[-1, 1]`.
    pub fn coefficients(&self) -> Vec<f64> {
        let n = self.n;
        let xs: Vec<f64> = (0..=n)
            .map(|i| ((2 * i + 1) as f64 * PI / (2 * n + 2) as f64).cos())
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&x| self.ta(x)).collect();
        newton_to_monomial(&xs, &ys)
    }
}

/// Convenience wrapper for a single evaluation.
pub fn akhiezer_ta(n: usize, m: usize, kappa: f64, x: f64) -> Result<f64> {
    Ok(AkhiezerParams::new(n, m, kappa)?.ta(x))
}

/// Interpolating polynomial through `(xs, ys)` in monomial form.
pub fn newton_to_monomial(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
        }
    }
    let mut c = vec![0.0; n];
    for k in (0..n).rev() {
        // c <- c * (x - xs[k]) + dd[k]
        let mut next = vec![0.0; n];
        for i in 0..n - 1 {
            next[i + 1] += c[i];
            next[i] -= c[i] * xs[k];
        }
        next[0] += dd[k];
        c = next;
    }
    c
}

/// Interval of integration for [`quartic_integral`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticInterval {
    /// `(-∞, c0]`
    Lower,
    /// `[c0, c1]`
    First,
    /// `[c1, c2]`
    Inner,
    /// `[c2, c3]`
    Third,
    /// `[c3, ∞)`
    Tail,
}

/// `∫ ds / √|(s−c0)(s−c1)(s−c2)(s−c3)|` over one of the root intervals.
/// Endpoint singularities are removed by `s = mid + half·sin θ`; the
/// infinite end by `s = c3 + σ²`, `σ = h tan ψ`.
pub fn quartic_integral(roots: [f64; 4], interval: QuarticInterval) -> Result<f64> {
    let mut c = roots;
    c.sort_by(f64::total_cmp);
    if c.windows(2)
        .any(|w| w[1] - w[0] <= 1e-14 * w[1].abs().max(1.0))
        || c.iter().any(|x| !x.is_finite())
    {
        return Err(Error::CoincidentRoots);
    }
    let val = match interval {
        QuarticInterval::First => finite(c[0], c[1], c[2], c[3]),
        QuarticInterval::Inner => finite(c[1], c[2], c[0], c[3]),
        QuarticInterval::Third => finite(c[2], c[3], c[0], c[1]),
        QuarticInterval::Tail => tail(c[3], c[2], c[1], c[0]),
        QuarticInterval::Lower => tail(-c[0], -c[1], -c[2], -c[3]),
    };
    Ok(val)
}

fn finite(lo: f64, hi: f64, r1: f64, r2: f64) -> f64 {
    let mid = (lo + hi) / 2.0;
    let half = (hi - lo) / 2.0;
    let f = |t: f64| {
        let s = mid + half * t.sin();
        1.0 / ((s - r1) * (s - r2)).abs().sqrt()
    };
    let scale = f(0.0) * PI;
    quadrature::double_exponential::integrate(f, -FRAC_PI_2, FRAC_PI_2, 1e-15 * scale).integral
}

/// `∫_{e}^{∞}` with `e` the largest root and `r1, r2, r3` the others.
fn tail(e: f64, r1: f64, r2: f64, r3: f64) -> f64 {
    let h = (e - r1).abs().max(1e-300).sqrt();
    let f = |psi: f64| {
        let (sp, cp) = psi.sin_cos();
        if cp <= 0.0 {
            return 0.0;
        }
        let sigma = h * sp / cp;
        let s = e + sigma * sigma;
        let g = ((s - r1) * (s - r2) * (s - r3)).abs().sqrt();
        2.0 * h / (cp * cp) / g
    };
    let scale = 2.0 / ((e - r2) * (e - r3)).abs().sqrt();
    quadrature::double_exponential::integrate(f, 0.0, FRAC_PI_2, 1e-15 * scale).integral
}
