use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rational = BigRational;

/// Minimal commutative-ring interface used by the generic series and
/// determinant code. `try_div` is exact division when it exists.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn try_div(&self, other: &Self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
}

impl Ring for Rational {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

/// Floating coefficients, used for numeric determinant evaluation.
impl Ring for f64 {
    fn zero_el() -> Self {
        0.0
    }
    fn one_el() -> Self {
        1.0
    }
    fn is_zero_el(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * to_f64(r)
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        (*other != 0.0).then(|| self / other)
    }
    fn from_rational(r: Rational) -> Self {
        to_f64(&r)
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Converts a rational to the nearest double, robust to numerators and
/// denominators far outside the f64 range.
pub fn to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    // Shift both to ~60 significant bits.
    let ns = (nb - 60).max(0);
    let ds = (db - 60).max(0);
    let n = (r.numer() >> ns as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> ds as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((ns - ds) as i32)
}

/// Exact conversion of a finite double to a rational.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn approximate(x: f64, max_den: u64) -> Rational {
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let ai = a as u128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as u128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return int(0);
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        -r
    } else {
        r
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn pow(r: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

/// Parses "p/q", an integer, or a terminating decimal ("0.125", "-3e-2")
/// into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Rational::from_integer(n));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => (-1, m),
        None => (1, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    let digits = format!("{ip}{fp}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if sign < 0 { -r } else { r })
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("6/7"), Some(rat(6, 7)));
        assert_eq!(parse_rational("-6"), Some(int(-6)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-1.5e1"), Some(int(-15)));
        assert_eq!(parse_rational("3/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn huge_rationals_convert() {
        let big = pow(&int(10), 400) / pow(&int(10), 399);
        assert!((to_f64(&big) - 10.0).abs() < 1e-12);
        let tiny = Rational::new(BigInt::from(3), num_traits::pow(BigInt::from(10), 320));
        assert!(to_f64(&tiny) < 1e-300);
    }

    #[test]
    fn sqrt_and_approx() {
        assert_eq!(rational_sqrt(&rat(9, 49)), Some(rat(3, 7)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(approximate(0.857142857142857, 1000), rat(6, 7));
        assert_eq!(approximate(-6.0, 10), int(-6));
    }
}
