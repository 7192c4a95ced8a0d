use super::ring::{int, to_f64, Rational, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense univariate polynomial over the rationals, lowest degree first.
/// The coefficient vector never carries a trailing zero, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `x^d * self(1/x)` for `d >= deg`: the coefficient reversal used by the
    /// `s = 1/X` substitution.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.degree().is_none_or(|k| k <= d));
        let mut v = vec![Rational::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[d - i] = c.clone();
        }
        Self::new(v)
    }

    /// Primitive integer polynomial with positive leading coefficient, and the
    /// rational factor `f` such that `self = f * primitive`.
    pub fn primitive_part(&self) -> (Rational, Self) {
        if self.is_zero() {
            return (Rational::zero(), Self::zero());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        let sign = if self.leading().is_negative() { -1 } else { 1 };
        let g = g * BigInt::from(sign);
        let prim = Self::new(
            ints.iter()
                .map(|i| Rational::from_integer(i / &g))
                .collect(),
        );
        (Rational::new(g, l), prim)
    }

    /// Resultant over Q by the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> Rational {
        if self.is_zero() || o.is_zero() {
            return Rational::zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = Rational::one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                return acc * super::ring::pow(&b.leading(), da as u32);
            }
            let r = a.divrem(&b).1;
            if r.is_zero() {
                return Rational::zero();
            }
            let dr = r.degree().unwrap();
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc *= super::ring::pow(&b.leading(), (da - dr) as u32);
            a = b;
            b = r;
        }
    }

    /// `Disc(P) = (-1)^{d(d-1)/2} Res(P, P') / lc(P)`.
    pub fn discriminant(&self) -> Rational {
        let d = self.degree().expect("discriminant of zero polynomial");
        if d == 0 {
            return Rational::zero();
        }
        let r = self.resultant(&self.derivative()) / self.leading();
        if (d * (d - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Square-free part (product of distinct irreducible factors, monic).
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Exact square root as a polynomial over Q, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = self.degree().unwrap();
        if d % 2 == 1 {
            return None;
        }
        let lead = super::ring::rational_sqrt(&self.leading())?;
        let k = d / 2;
        // Top-down coefficient recovery.
        let mut r = vec![Rational::zero(); k + 1];
        r[k] = lead.clone();
        let two_lead = &lead * int(2);
        for i in (0..k).rev() {
            // coefficient of x^{k+i} in r^2
            let mut s = Rational::zero();
            for j in (i + 1)..=k {
                let l = k + i - j;
                if l > i && l <= k {
                    s += &r[j] * &r[l];
                }
            }
            r[i] = (self.coeff(k + i) - s) / &two_lead;
        }
        let cand = Self::new(r);
        (cand.mul(&cand) == *self).then_some(cand)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match i {
                0 => format!("{mag}"),
                _ => {
                    let coef = if mag.is_one() {
                        String::new()
                    } else {
                        format!("{mag}*")
                    };
                    let pw = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    format!("{coef}{pw}")
                }
            };
            parts.push((sign, body));
        }
        let mut out = String::new();
        for (k, (s, b)) in parts.iter().enumerate() {
            if k == 0 {
                if *s == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {s} "));
            }
            out.push_str(b);
        }
        out
    }

    /// Coefficients rendered as rational strings ("p/q" or "p").
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self.display_in("x"))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Ring for RatPoly {
    fn zero_el() -> Self {
        RatPoly::zero()
    }
    fn one_el() -> Self {
        RatPoly::one()
    }
    fn is_zero_el(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn scale(&self, r: &Rational) -> Self {
        RatPoly::scale(self, r)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        self.div_exact(o)
    }
    fn from_rational(r: Rational) -> Self {
        RatPoly::constant(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    fn from_roots(rs: &[Rational]) -> RatPoly {
        rs.iter()
            .fold(RatPoly::one(), |acc, r| acc.mul(&RatPoly::linear_root(r)))
    }

    /// Product formula oracle: lc^{2d-2} * prod_{i<j} (r_i - r_j)^2.
    fn disc_by_roots(lc: &Rational, rs: &[Rational]) -> Rational {
        let d = rs.len() as u32;
        let mut acc = crate::exact::ring::pow(lc, 2 * d - 2);
        for i in 0..rs.len() {
            for j in (i + 1)..rs.len() {
                let diff = &rs[i] - &rs[j];
                acc *= &diff * &diff;
            }
        }
        acc
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            RatPoly::from_ints(&[108, -132, 23]).discriminant(),
            int(7488)
        );
        assert_eq!(RatPoly::from_ints(&[-1, 0, 1]).discriminant(), int(4));
        assert_eq!(RatPoly::from_ints(&[1, -2, 1]).discriminant(), int(0));
    }

    #[test]
    fn discriminant_matches_product_formula() {
        let roots = [rat(1, 2), int(-3), rat(7, 5), int(4), rat(-2, 9)];
        for k in 2..=roots.len() {
            let lc = rat(3, 2);
            let p = from_roots(&roots[..k]).scale(&lc);
            assert_eq!(
                p.discriminant(),
                disc_by_roots(&lc, &roots[..k]),
                "degree {k}"
            );
        }
    }

    #[test]
    fn divrem_and_gcd() {
        let a = from_roots(&[int(1), int(2), rat(1, 3)]);
        let b = from_roots(&[int(2), int(5)]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(a.gcd(&b), RatPoly::linear_root(&int(2)));
    }

    #[test]
    fn primitive_part_and_sqrt() {
        let p = RatPoly::new(vec![rat(-3, 4), rat(3, 2)]);
        let (f, prim) = p.primitive_part();
        assert_eq!(prim, RatPoly::from_ints(&[-1, 2]));
        assert_eq!(prim.scale(&f), p);
        let s = RatPoly::from_ints(&[1, -3, 2]).scale(&rat(2, 3));
        assert_eq!(s.mul(&s).sqrt(), Some(s.clone()));
        assert_eq!(RatPoly::from_ints(&[1, 0, 2]).sqrt(), None);
    }

    #[test]
    fn compose_and_reverse() {
        let p = RatPoly::from_ints(&[-1, 0, 2]); // 2x^2 - 1
        let q = RatPoly::from_ints(&[1, 1]); // x + 1
        assert_eq!(p.compose(&q), RatPoly::from_ints(&[1, 4, 2]));
        assert_eq!(
            RatPoly::from_ints(&[1, 2]).reverse(3),
            RatPoly::from_ints(&[0, 0, 2, 1])
        );
    }
}
