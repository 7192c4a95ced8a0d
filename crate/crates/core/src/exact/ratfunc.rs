use super::poly::RatPoly;
use super::ring::{Rational, Ring};
use num_traits::{One, Zero};
use std::fmt;

/// Reduced quotient of two rational polynomials with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    /// Panics on a zero denominator.
    pub fn new(num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: RatPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        let lc = d.leading();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        RatFunc {
            num: p,
            den: RatPoly::one(),
        }
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        (!o.num.is_zero()).then(|| Self::new(self.num.mul(&o.den), self.den.mul(&o.num)))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Ring for RatFunc {
    fn zero_el() -> Self {
        RatFunc::from_poly(RatPoly::zero())
    }
    fn one_el() -> Self {
        RatFunc::from_poly(RatPoly::one())
    }
    fn is_zero_el(&self) -> bool {
        self.num.is_zero()
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
        if r.is_zero() {
            return Self::zero_el();
        }
        RatFunc {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        self.div(o)
    }
    fn from_rational(r: Rational) -> Self {
        RatFunc::from_poly(RatPoly::constant(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::{int, rat};
    use crate::exact::series::TruncSeries;

    #[test]
    fn canonical_form() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2 after reduction
        let f = RatFunc::new(
            RatPoly::from_ints(&[-1, 0, 1]),
            RatPoly::from_ints(&[-2, 2]),
        );
        assert_eq!(f.den(), &RatPoly::one());
        assert_eq!(f.num(), &RatPoly::new(vec![rat(1, 2), rat(1, 2)]));
        let g = f.mul(&RatFunc::new(RatPoly::one(), RatPoly::from_ints(&[1, 1])));
        assert_eq!(g, RatFunc::from_poly(RatPoly::constant(rat(1, 2))));
    }

    #[test]
    fn series_over_rational_functions() {
        // sqrt(1 - X/(1 - t)) at t = 1/2 equals sqrt(1 - 2X)
        let t = RatPoly::x();
        let r = RatFunc::new(RatPoly::one(), RatPoly::one().sub(&t));
        let u = TruncSeries::one_minus(&r, 4).sqrt().unwrap();
        let direct = TruncSeries::one_minus(&int(2), 4).sqrt().unwrap();
        for i in 0..=4 {
            assert_eq!(u.coeff(i).eval(&rat(1, 2)).unwrap(), *direct.coeff(i));
        }
    }
}
