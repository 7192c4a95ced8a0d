//! Polynomial Pell equations behind the periodicity conditions: Chebyshev
//! and even Akhiezer polynomials, Pell pairs built from the vanishing
//! combinations of the Cayley coefficient sequences, the transverse
//! 3-periodic Zolotarev solve, light-like period 4 and degenerate caustics.

use crate::conditions::{coeff_sequence, periodicity_condition, FamilyTag, NuArg, Reciprocals};
use crate::elliptic::complete_k;
use crate::error::{Error, Result};
use crate::exact::linalg::nullspace;
use crate::exact::ring::{approximate, int, to_f64, Rational};
use crate::exact::RatPoly;
use crate::minkowski::{ConfocalFamily, TableKind};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// `T_m(x)` by the three-term recurrence.
pub fn chebyshev_t(m: usize, x: f64) -> f64 {
    let (mut t0, mut t1) = (1.0, x);
    if m == 0 {
        return t0;
    }
    for _ in 1..m {
        (t0, t1) = (t1, 2.0 * x * t1 - t0);
    }
    t1
}

fn recurrence(m: usize, first: RatPoly) -> RatPoly {
    let two_x = RatPoly::from_ints(&[0, 2]);
    let (mut t0, mut t1) = (RatPoly::one(), first);
    if m == 0 {
        return t0;
    }
    for _ in 1..m {
        let t2 = two_x.mul(&t1).sub(&t0);
        t0 = t1;
        t1 = t2;
    }
    t1
}

/// `T_m` as an exact polynomial.
pub fn chebyshev_t_poly(m: usize) -> RatPoly {
    recurrence(m, RatPoly::x())
}

/// Second-kind `U_m` as an exact polynomial.
pub fn chebyshev_u_poly(m: usize) -> RatPoly {
    recurrence(m, RatPoly::from_ints(&[0, 2]))
}

/// `T_m² − (x² − 1) U_{m−1}²`, identically 1.
pub fn chebyshev_pell_residual(m: usize) -> RatPoly {
    let t = chebyshev_t_poly(m);
    let u = if m == 0 {
        RatPoly::zero()
    } else {
        chebyshev_u_poly(m - 1)
    };
    t.mul(&t)
        .sub(&RatPoly::from_ints(&[-1, 0, 1]).mul(&u).mul(&u))
}

/// `A_{2m}(x; α) = ((1−α²)^m / 2^{2m−1}) T_m((2x² − 1 − α²)/(1 − α²))`.
pub fn akhiezer_even(m: usize, alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let w = 1.0 - alpha * alpha;
    let y = (2.0 * x * x - 1.0 - alpha * alpha) / w;
    Ok(w.powi(m as i32) / 2f64.powi(2 * m as i32 - 1) * chebyshev_t(m, y))
}

/// `Π (s − r)`.
pub fn poly_from_roots(roots: &[Rational]) -> RatPoly {
    roots.iter().fold(RatPoly::one(), |acc, r| {
        acc.mul(&RatPoly::new(vec![-r.clone(), int(1)]))
    })
}

fn ser_poly<S: Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeff_strings())
}

fn ser_rats<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Solution of `p̂² − T q̂² = 1` with `T(s) = Π (s − r_i)` over the
/// reciprocal roots `1/a, 1/b, 1/c, 1/ν`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PellPair {
    pub n: usize,
    #[serde(serialize_with = "ser_poly")]
    pub p_hat: RatPoly,
    #[serde(serialize_with = "ser_poly")]
    pub q_hat: RatPoly,
    /// Reciprocal roots, in the order `1/a, 1/b, 1/c, 1/ν`.
    #[serde(serialize_with = "ser_rats")]
    pub quartic_roots: Vec<Rational>,
    /// True when `ν` was rational and the identity was checked exactly.
    pub exact: bool,
    /// Largest coefficient of `p̂² − T q̂² − 1` relative to those of `p̂²`.
    pub residual: f64,
    /// Dimension of the solution space; above 1 the first basis vector is used.
    pub nullity: usize,
}

impl PellPair {
    pub fn quartic(&self) -> RatPoly {
        poly_from_roots(&self.quartic_roots)
    }

    /// Exact `p̂² − T q̂²`.
    pub fn identity_lhs(&self) -> RatPoly {
        self.p_hat
            .mul(&self.p_hat)
            .sub(&self.quartic().mul(&self.q_hat).mul(&self.q_hat))
    }

    pub fn holds_exactly(&self) -> bool {
        self.identity_lhs() == RatPoly::one()
    }
}

fn f64_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Relative coefficient residual of `p̂² − T q̂² − 1` with `T` in doubles.
fn float_residual(p: &RatPoly, q: &RatPoly, roots: &[f64]) -> f64 {
    let t = roots
        .iter()
        .fold(vec![1.0], |acc, r| f64_mul(&acc, &[-r, 1.0]));
    let (pf, qf) = (p.to_f64_coeffs(), q.to_f64_coeffs());
    let p2 = f64_mul(&pf, &pf);
    let tq2 = f64_mul(&t, &f64_mul(&qf, &qf));
    let len = p2.len().max(tq2.len());
    let scale = p2.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (0..len)
        .map(|i| {
            let v = p2.get(i).copied().unwrap_or(0.0)
                - tq2.get(i).copied().unwrap_or(0.0)
                - if i == 0 { 1.0 } else { 0.0 };
            v.abs() / scale
        })
        .fold(0.0, f64::max)
}

/// Builds `(p̂_n, q̂_{n−2})` from the vanishing combination of the
/// coefficient sequence. Rational `ν` gives an exact identity; a float `ν`
/// is replaced by a close rational, the last (now inconsistent) equation is
/// dropped and the identity is checked to `1e-8`.
pub fn pell_from_periodicity(n: usize, fam: &ConfocalFamily, nu: &NuArg) -> Result<PellPair> {
    if n < 3 {
        return Err(Error::UnsupportedPeriod(format!(
            "Pell pairs need n >= 3, got {n}"
        )));
    }
    let [a, b, c] = fam
        .exact()
        .cloned()
        .ok_or_else(|| Error::InvalidFamily("exact (rational) parameters required".into()))?;
    let (nu_r, exact, nu_f) = match nu {
        NuArg::Exact(r) => {
            let rep = periodicity_condition(n, fam, nu)?;
            if rep.exact_zero != Some(true) {
                return Err(Error::NotPeriodic(format!(
                    "ν = {r} does not satisfy the n = {n} condition"
                )));
            }
            (r.clone(), true, to_f64(r))
        }
        NuArg::Float(v) => (approximate(*v, 1_000_000_000_000), false, *v),
        NuArg::Symbolic => return Err(Error::InvalidRange("Pell pairs need a concrete ν".into())),
    };
    if nu_r.is_zero() {
        return Err(Error::InvalidRange("ν = 0 is a branch point".into()));
    }
    let one = Rational::one();
    let mu = &one / &nu_r;
    let inv = Reciprocals {
        a: &one / &a,
        b: &one / &b,
        c: &one / &c,
        mu: mu.clone(),
    };
    let m = n / 2;
    let even = n.is_multiple_of(2);
    let (tag, dq) = if even {
        (FamilyTag::B, m - 2)
    } else {
        (FamilyTag::D, m - 1)
    };
    let neq = if even { 2 * m } else { 2 * m + 1 };
    let s = coeff_sequence(tag, &inv, neq)?;
    let cols = (m + 1) + (dq + 1);
    let rows = if exact { neq } else { neq - 1 };
    let mat: Vec<Vec<Rational>> = (0..rows)
        .map(|k| {
            let mut row = vec![Rational::zero(); cols];
            if k <= m {
                row[k] = one.clone();
            }
            for j in 0..=dq.min(k) {
                row[m + 1 + j] = -s.coeff(k - j).clone();
            }
            row
        })
        .collect();
    let ns = nullspace(&mat, cols);
    let Some(sol) = ns.first() else {
        return Err(Error::NotPeriodic(format!(
            "no vanishing combination for n = {n}"
        )));
    };
    // Coefficients are in X = 1/s, highest power of s first.
    let p_big = RatPoly::new(sol[..=m].to_vec()).reverse(m);
    let q_big = RatPoly::new(sol[m + 1..].to_vec()).reverse(dq);
    let pi3 = poly_from_roots(&[inv.a.clone(), inv.b.clone(), inv.c.clone()]);
    let d = RatPoly::new(vec![-mu.clone(), one.clone()]);
    let (lead, kpoly) = if even {
        let p2 = p_big.mul(&p_big);
        let t = pi3.mul(&d);
        (p2.clone(), p2.sub(&t.mul(&q_big).mul(&q_big)))
    } else {
        let dp2 = d.mul(&p_big).mul(&p_big);
        // (s − μ)P² + Π(1/a_i − s) Q², the cubic taken with its sign flipped.
        (dp2.clone(), dp2.sub(&pi3.mul(&q_big).mul(&q_big)))
    };
    let k = kpoly.coeff(0);
    if k.is_zero() {
        return Err(Error::NormalizationFailure(format!(
            "degenerate constant for n = {n}"
        )));
    }
    if exact && !kpoly.is_constant() {
        return Err(Error::NormalizationFailure(
            "P² − TQ² is not constant".into(),
        ));
    }
    let two_k = int(2) / &k;
    let p_hat = lead.scale(&two_k).sub(&RatPoly::one());
    let q_hat = p_big.mul(&q_big).scale(&two_k);
    let roots = vec![inv.a.clone(), inv.b.clone(), inv.c.clone(), mu];
    let float_roots = [to_f64(&inv.a), to_f64(&inv.b), to_f64(&inv.c), 1.0 / nu_f];
    let residual = float_residual(&p_hat, &q_hat, &float_roots);
    let pair = PellPair {
        n,
        p_hat,
        q_hat,
        quartic_roots: roots,
        exact,
        residual,
        nullity: ns.len(),
    };
    if exact && !pair.holds_exactly() {
        return Err(Error::NormalizationFailure(
            "Pell identity fails after normalization".into(),
        ));
    }
    if !exact && residual > 1e-8 {
        return Err(Error::NotPeriodic(format!(
            "Pell residual {residual:e} exceeds 1e-8"
        )));
    }
    Ok(pair)
}

/// Light-like period-4 data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LightlikePell {
    pub table: TableKind,
    /// The quadratic inside `T₂`.
    #[serde(serialize_with = "ser_poly")]
    pub y: RatPoly,
    #[serde(serialize_with = "ser_poly")]
    pub p_hat: RatPoly,
    #[serde(serialize_with = "ser_poly")]
    pub q_hat: RatPoly,
    /// `p̂² − s Π(s − 1/a_i) q̂² = 1` holds exactly.
    pub identity_holds: bool,
    /// The same identity with `s Π(1/a_i − s)`, as printed, holds.
    pub printed_sign_holds: bool,
}

/// `p̂₄ = T₂(y)` with the collared or transverse quadratic `y(s)`; `q̂₂` is
/// solved from the light-like Pell equation.
pub fn lightlike_period4_pell(fam: &ConfocalFamily) -> Result<LightlikePell> {
    let [a, b, c] = fam
        .exact()
        .cloned()
        .ok_or_else(|| Error::InvalidFamily("exact (rational) parameters required".into()))?;
    let two = int(2);
    let y = match fam.kind() {
        TableKind::Collared => {
            if !(b < &two * &a) || c != &a * &b / (&b - &a) {
                return Err(Error::ConstraintViolated(format!(
                    "collared light-like period 4 needs a < b < 2a and c = ab/(b−a); got ({a}, {b}, {c})"
                )));
            }
            let d = &b - &a;
            RatPoly::new(vec![
                (&b - &a) / &d,
                -&two * &b * &b / &d,
                &two * &a * &b * &b / &d,
            ])
        }
        TableKind::Transverse => {
            if b != &a * &c / (&a - &c) {
                return Err(Error::ConstraintViolated(format!(
                    "transverse light-like period 4 needs b = ac/(a−c); got ({a}, {b}, {c})"
                )));
            }
            let d = &c - &a;
            RatPoly::new(vec![
                -int(1),
                -&two * &a * &a / &d,
                &two * &a * &a * &c / &d,
            ])
        }
    };
    let p_hat = chebyshev_t_poly(2).compose(&y);
    let one = Rational::one();
    let t = poly_from_roots(&[Rational::zero(), &one / &a, &one / &b, &one / &c]);
    let num = p_hat.mul(&p_hat).sub(&RatPoly::one());
    let q_hat = num
        .div_exact(&t)
        .and_then(|q2| q2.sqrt())
        .unwrap_or_else(RatPoly::zero);
    let identity_holds =
        !q_hat.is_zero() && p_hat.mul(&p_hat).sub(&t.mul(&q_hat).mul(&q_hat)) == RatPoly::one();
    let printed = t.neg();
    let printed_sign_holds = num.div_exact(&printed).and_then(|q2| q2.sqrt()).is_some();
    Ok(LightlikePell {
        table: fam.kind(),
        y,
        p_hat,
        q_hat,
        identity_holds,
        printed_sign_holds,
    })
}

/// Transverse 3-periodic Zolotarev data, `m = 2` branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZolotarevSolveState {
    #[serde(rename = "Y")]
    pub y: f64,
    pub kappa2: f64,
    pub l_hat: f64,
    pub m_hat: f64,
    pub nu: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `G_3(ν)` divided by the sum of its term magnitudes.
    pub caustic_residual: f64,
    /// `|sn(K(κ)/3) − Y|`.
    pub sn_residual: f64,
    /// Admissible roots of the quadratic with the opposite linear sign.
    pub opposite_sign_roots: usize,
}

fn g3_relative(a: f64, b: f64, c: f64, nu: f64) -> f64 {
    let (p, q, r) = (a + b + c, a * b + a * c + b * c, a * b * c);
    let t = [
        3.0 * r * r,
        -2.0 * q * r * nu,
        (4.0 * p * r - q * q) * nu * nu,
    ];
    (t[0] + t[1] + t[2]).abs() / t.iter().map(|x| x.abs()).sum::<f64>()
}

fn real_quadratic(a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    if a2 == 0.0 {
        return if a1 == 0.0 { vec![] } else { vec![-a0 / a1] };
    }
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (a1 + a1.signum() * disc.sqrt());
    let mut v = vec![q / a2];
    if q != 0.0 {
        v.push(a0 / q);
    }
    v
}

fn admissible_y(y: f64) -> Option<f64> {
    let k2 = (2.0 * y - 1.0) / (y.powi(3) * (2.0 - y));
    (y > 0.5 && y < 1.0 && k2 > 0.0 && k2 < 1.0).then_some(k2)
}

/// Solves `(a−b)c + 2b(c−a)Y + a(b−c)Y² = 0` for `Y = sn(K/3) ∈ (1/2, 1)`
/// and derives `κ², ν, l̂, m̂, α, β`.
pub fn zolotarev_transverse_period3(fam: &ConfocalFamily) -> Result<ZolotarevSolveState> {
    if fam.kind() != TableKind::Transverse {
        return Err(Error::InvalidFamily("transverse family required".into()));
    }
    let (a, b, c) = (fam.a, fam.b, fam.c);
    let opposite = real_quadratic(a * (b - c), -2.0 * b * (c - a), (a - b) * c)
        .into_iter()
        .filter(|&y| admissible_y(y).is_some())
        .count();
    let mut best: Option<ZolotarevSolveState> = None;
    for y in real_quadratic(a * (b - c), 2.0 * b * (c - a), (a - b) * c) {
        let Some(k2) = admissible_y(y) else { continue };
        let nu = a * b * y * (2.0 - y) / (a - b * (1.0 - y) * (1.0 - y));
        let kappa = k2.sqrt();
        let kk = complete_k(kappa)?;
        let sn = crate::elliptic::jacobi_sn_cn_dn(kk / 3.0, kappa)?.0;
        let st = ZolotarevSolveState {
            y,
            kappa2: k2,
            l_hat: 1.0 / (2.0 * c * (y * y - 1.0)),
            m_hat: (a + c - 2.0 * c * y * y) / (2.0 * a * c * (1.0 - y * y)),
            nu,
            alpha: 1.0 - 4.0 * y + 2.0 * y * y,
            beta: 1.0 - 2.0 * y * y,
            caustic_residual: g3_relative(a, b, c, nu),
            sn_residual: (sn - y).abs(),
            opposite_sign_roots: opposite,
        };
        if !(-1.0 < st.alpha && st.alpha < st.beta && st.beta < 1.0) {
            continue;
        }
        if best.as_ref().is_none_or(|b| st.sn_residual < b.sn_residual) {
            best = Some(st);
        }
    }
    best.ok_or_else(|| Error::NoAdmissibleRoot(format!("no Y in (1/2, 1) for ({a}, {b}, {c})")))
}

/// Caustic-equation residuals of the `m = 1` branch
/// `(a−b)c − 2(a−b)cY + (bc+ac−ab)Y² = 0`, `ν = abY²/(a − b + bY²)`, one per
/// real root.
pub fn zolotarev_m1_residuals(fam: &ConfocalFamily) -> Vec<f64> {
    let (a, b, c) = (fam.a, fam.b, fam.c);
    real_quadratic(b * c + a * c - a * b, -2.0 * (a - b) * c, (a - b) * c)
        .into_iter()
        .map(|y| g3_relative(a, b, c, a * b * y * y / (a - b + b * y * y)))
        .collect()
}

/// Degenerate caustic `ν = b` on a collared table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegenerateCausticReport {
    pub m: usize,
    #[serde(serialize_with = "ser_poly")]
    pub p_hat: RatPoly,
    #[serde(serialize_with = "ser_poly")]
    pub q_hat: RatPoly,
    /// `p̂² − (s − 1/a)(s − 1/c) q̂² = 1` exactly.
    pub pell_holds: bool,
    /// `y(1/b) = (2ac − b(a+c)) / (b(c−a))`.
    pub x0: f64,
    /// `(2ac − b(a+c)) / (c−a)`, the value without the `1/b`.
    pub x0_printed: f64,
    /// `k` with `x₀ = cos(kπ/m)`, if any.
    pub k: Option<usize>,
    /// `q̂(1/b) = 0` exactly.
    pub q_vanishes: bool,
}

/// `p̂_m(s) = T_m(y)`, `y = (2acs − (a+c))/(c−a)`, with the one-interval
/// Pell pair and the condition `x₀ = cos(kπ/m)`.
pub fn degenerate_caustic_conditions(
    fam: &ConfocalFamily,
    m: usize,
) -> Result<DegenerateCausticReport> {
    if fam.kind() != TableKind::Collared {
        return Err(Error::NotCollared);
    }
    if m < 1 {
        return Err(Error::UnsupportedPeriod("m must be positive".into()));
    }
    let [a, b, c] = fam
        .exact()
        .cloned()
        .ok_or_else(|| Error::InvalidFamily("exact (rational) parameters required".into()))?;
    let d = &c - &a;
    let y = RatPoly::new(vec![-(&a + &c) / &d, int(2) * &a * &c / &d]);
    let p_hat = chebyshev_t_poly(m).compose(&y);
    let q_hat = chebyshev_u_poly(m - 1)
        .compose(&y)
        .scale(&(int(2) * &a * &c / &d));
    let one = Rational::one();
    let t = poly_from_roots(&[&one / &a, &one / &c]);
    let pell_holds = p_hat.mul(&p_hat).sub(&t.mul(&q_hat).mul(&q_hat)) == RatPoly::one();
    let num = int(2) * &a * &c - &b * (&a + &c);
    let x0 = to_f64(&(&num / (&b * &d)));
    let x0_printed = to_f64(&(&num / &d));
    let k =
        (1..m).find(|&k| (x0 - (k as f64 * std::f64::consts::PI / m as f64).cos()).abs() <= 1e-10);
    let q_vanishes = q_hat.eval(&(&one / &b)).is_zero();
    Ok(DegenerateCausticReport {
        m,
        p_hat,
        q_hat,
        pell_holds,
        x0,
        x0_printed,
        k,
        q_vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    fn fam(a: Rational, b: Rational, c: Rational) -> ConfocalFamily {
        ConfocalFamily::from_rationals(a, b, c).unwrap()
    }

    #[test]
    fn chebyshev() {
        assert_eq!(chebyshev_t_poly(2), RatPoly::from_ints(&[-1, 0, 2]));
        assert_eq!(chebyshev_t(7, 1.0), 1.0);
        assert!((chebyshev_t(3, 0.5) + 1.0).abs() < 1e-15);
        for m in 0..8 {
            assert_eq!(chebyshev_pell_residual(m), RatPoly::one());
        }
    }

    #[test]
    fn akhiezer_even_values() {
        let al: f64 = 0.3;
        let a2 = akhiezer_even(1, al, 0.7).unwrap();
        assert!((a2 - (2.0 * 0.49 - 1.0 - al * al) / 2.0).abs() < 1e-15);
        let a6 = akhiezer_even(3, al, 1.0).unwrap();
        assert!((a6.abs() - (1.0 - al * al).powi(3) / 32.0).abs() < 1e-15);
        assert_eq!(
            akhiezer_even(3, al, -0.4).unwrap(),
            akhiezer_even(3, al, 0.4).unwrap()
        );
        assert!(akhiezer_even(2, 1.2, 0.0).is_err());
    }

    #[test]
    fn pell_exact_period4() {
        let f = fam(int(1), int(2), int(3));
        let p = pell_from_periodicity(4, &f, &NuArg::Exact(rat(6, 7))).unwrap();
        assert!(p.exact && p.holds_exactly());
        assert_eq!((p.p_hat.degree(), p.q_hat.degree()), (Some(4), Some(2)));
        let p = pell_from_periodicity(4, &f, &NuArg::Exact(int(-6))).unwrap();
        assert!(p.holds_exactly());
        assert!(matches!(
            pell_from_periodicity(4, &f, &NuArg::Exact(int(-5))),
            Err(Error::NotPeriodic(_))
        ));
    }

    #[test]
    fn pell_float_period3() {
        let f = fam(int(1), int(2), int(3));
        let nu = (132.0 + 7488f64.sqrt()) / 46.0;
        let p = pell_from_periodicity(3, &f, &NuArg::Float(nu)).unwrap();
        assert!(!p.exact && p.residual <= 1e-8, "{}", p.residual);
        assert_eq!((p.p_hat.degree(), p.q_hat.degree()), (Some(3), Some(1)));
    }

    #[test]
    fn lightlike_collared() {
        let f = fam(int(1), rat(3, 2), int(3));
        let l = lightlike_period4_pell(&f).unwrap();
        assert!(l.identity_holds && !l.printed_sign_holds);
        // q̂₂ = ±4ab²y/(b−a) = ±18y
        assert!(l.q_hat == l.y.scale(&int(18)) || l.q_hat == l.y.scale(&int(-18)));
        assert!(matches!(
            lightlike_period4_pell(&fam(int(1), int(3), rat(3, 2) * int(3))),
            Err(Error::ConstraintViolated(_))
        ));
    }

    #[test]
    fn lightlike_transverse() {
        let l = lightlike_period4_pell(&fam(int(1), int(-2), int(2))).unwrap();
        assert!(l.identity_holds);
    }

    #[test]
    fn zolotarev_sample() {
        let f = ConfocalFamily::new(0.9, -1.4, 2.45).unwrap();
        let z = zolotarev_transverse_period3(&f).unwrap();
        assert!(z.caustic_residual <= 1e-9 && z.sn_residual <= 1e-9);
        assert!(f.b < z.nu && z.nu < 0.0);
        assert_eq!(z.opposite_sign_roots, 0);
        assert!(zolotarev_m1_residuals(&f).iter().all(|&r| r >= 1e-3));
    }

    #[test]
    fn degenerate_harmonic_b() {
        let (a, c) = (int(1), int(3));
        let b = int(2) * &a * &c / (&a + &c);
        let r = degenerate_caustic_conditions(&fam(a, b, c), 2).unwrap();
        assert!(r.pell_holds && r.q_vanishes);
        assert_eq!(r.k, Some(1));
        assert!(r.x0.abs() < 1e-15);
        let r = degenerate_caustic_conditions(&fam(int(1), rat(11, 10), int(3)), 3).unwrap();
        assert!(r.pell_holds && r.k.is_none() && !r.q_vanishes);
    }
}
