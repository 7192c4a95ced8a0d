use super::ring::{rat, Rational, Ring};
use crate::error::{Error, Result};

/// Power series truncated after `X^order`, over any coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C: Ring> {
    coeffs: Vec<C>,
}

impl<C: Ring> TruncSeries<C> {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero_el());
        TruncSeries { coeffs }
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one_el(), order)
    }

    /// `1 - r X`
    pub fn one_minus(r: &C, order: usize) -> Self {
        Self::new(vec![C::one_el(), r.neg_ref()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new(
            (0..=n)
                .map(|i| self.coeffs[i].add_ref(&o.coeffs[i]))
                .collect(),
            n,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new(
            (0..=n)
                .map(|i| self.coeffs[i].sub_ref(&o.coeffs[i]))
                .collect(),
            n,
        )
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(
            self.coeffs.iter().map(|c| c.scale(r)).collect(),
            self.order(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![C::zero_el(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero_el() {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] = out[i + j].add_ref(&self.coeffs[i].mul_ref(&o.coeffs[j]));
            }
        }
        Self::new(out, n)
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero_el() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(C::one_el().try_div(c0).ok_or(Error::DivisionByZero)?);
        for k in 1..=n {
            let mut s = C::zero_el();
            for j in 1..=k {
                s = s.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
            }
            out.push(s.neg_ref().try_div(c0).ok_or(Error::DivisionByZero)?);
        }
        Ok(Self::new(out, n))
    }

    /// Square root with constant term 1 of a series whose constant term is 1.
    pub fn sqrt(&self) -> Result<Self> {
        if self.coeffs[0] != C::one_el() {
            return Err(Error::NotNormalized);
        }
        let n = self.order();
        let half = rat(1, 2);
        let mut out = vec![C::one_el()];
        for k in 1..=n {
            let mut s = self.coeffs[k].clone();
            for j in 1..k {
                s = s.sub_ref(&out[j].mul_ref(&out[k - j]));
            }
            out.push(s.scale(&half));
        }
        Ok(Self::new(out, n))
    }

    /// `(1 - r X)^{-1}` without a division: the geometric series.
    pub fn geometric(r: &C, order: usize) -> Self {
        let mut out = vec![C::one_el()];
        for k in 1..=order {
            out.push(out[k - 1].mul_ref(r));
        }
        Self::new(out, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::int;

    fn s(v: &[(i64, i64)], order: usize) -> TruncSeries<Rational> {
        TruncSeries::new(v.iter().map(|&(n, d)| rat(n, d)).collect(), order)
    }

    #[test]
    fn products() {
        let p = s(&[(1, 1), (1, 1)], 3).mul(&s(&[(1, 1), (-1, 1)], 3));
        assert_eq!(p, s(&[(1, 1), (0, 1), (-1, 1)], 3));
        let u = s(&[(1, 1), (1, 1), (1, 1)], 2);
        assert_eq!(u.mul(&u), s(&[(1, 1), (2, 1), (3, 1)], 2));
        assert_eq!(u.mul(&TruncSeries::one(2)), u);
    }

    #[test]
    fn inverse() {
        let g = s(&[(1, 1), (-1, 1)], 5).inv().unwrap();
        assert!(g.coeffs().iter().all(|c| *c == int(1)));
        assert_eq!(s(&[(2, 1)], 0).inv().unwrap(), s(&[(1, 2)], 0));
        assert_eq!(s(&[(0, 1), (1, 1)], 3).inv(), Err(Error::ZeroConstantTerm));
        assert_eq!(TruncSeries::geometric(&int(1), 5), g);
    }

    #[test]
    fn square_root() {
        let r = s(&[(1, 1), (1, 1)], 4).sqrt().unwrap();
        assert_eq!(r, s(&[(1, 1), (1, 2), (-1, 8), (1, 16), (-5, 128)], 4));
        assert_eq!(
            TruncSeries::<Rational>::one(3).sqrt().unwrap(),
            TruncSeries::one(3)
        );
        assert_eq!(s(&[(4, 1), (1, 1)], 3).sqrt(), Err(Error::NotNormalized));
    }
}
