use super::poly::RatPoly;
use super::ring::{int, sign, to_f64, Rational};
use num_traits::{One, Signed, Zero};

/// Yun's square-free factorization: `p = lc * prod f_i^i`, each `f_i` monic
/// and square-free. Only factors of positive degree are returned.
pub fn square_free_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let mut b = p.div_exact(&a).unwrap().monic();
    let mut c = dp
        .div_exact(&a)
        .unwrap()
        .scale(&(Rational::one() / p.leading()));
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).unwrap();
        if b.is_constant() {
            break;
        }
        c = d.div_exact(&a).unwrap();
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].divrem(&chain[n - 1]).1.neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Sign variations at `x`, with `None` meaning minus or plus infinity.
    fn var_at(&self, x: Bound<'_>) -> usize {
        match x {
            Bound::At(x) => Self::variations(self.chain.iter().map(|p| sign(&p.eval(x)))),
            Bound::NegInf => Self::variations(self.chain.iter().map(|p| {
                let s = sign(&p.leading());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })),
            Bound::PosInf => Self::variations(self.chain.iter().map(|p| sign(&p.leading()))),
        }
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: Bound<'_>, hi: Bound<'_>) -> usize {
        self.var_at(lo).saturating_sub(self.var_at(hi))
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Bound<'a> {
    NegInf,
    At(&'a Rational),
    PosInf,
}

/// Isolating interval `[lo, hi]` holding exactly one root of a factor, with
/// the root's multiplicity in the original polynomial.
#[derive(Clone, Debug)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
    factor: RatPoly,
}

impl RootInterval {
    /// Bisects in exact arithmetic until the width drops below `tol`, and
    /// returns the midpoint as a double.
    pub fn refine(&self, tol: f64) -> f64 {
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        if lo == hi {
            return to_f64(&lo);
        }
        let f = &self.factor;
        let tol = super::ring::from_f64(tol).unwrap_or_else(|| int(0));
        let mut slo = sign(&f.eval(&lo));
        if slo == 0 {
            return to_f64(&lo);
        }
        if sign(&f.eval(&hi)) == 0 {
            return to_f64(&hi);
        }
        let two = int(2);
        for _ in 0..400 {
            if &hi - &lo <= tol {
                break;
            }
            let mid = (&lo + &hi) / &two;
            let sm = sign(&f.eval(&mid));
            if sm == 0 {
                return to_f64(&mid);
            }
            if sm == slo {
                lo = mid;
                slo = sm;
            } else {
                hi = mid;
            }
        }
        to_f64(&((lo + hi) / two))
    }
}

fn cauchy_bound(p: &RatPoly) -> Rational {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    (m + Rational::one()).ceil()
}

/// Isolates every distinct real root of `p`, sorted ascending.
pub fn isolate_real_roots(p: &RatPoly) -> Vec<RootInterval> {
    let mut out = Vec::new();
    for (f, mult) in square_free_decomposition(p) {
        let chain = SturmChain::new(&f);
        let b = cauchy_bound(&f);
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = chain.count(Bound::At(&lo), Bound::At(&hi));
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(RootInterval {
                    lo,
                    hi,
                    multiplicity: mult,
                    factor: f.clone(),
                });
                continue;
            }
            let mid = (&lo + &hi) / int(2);
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Real roots refined to `tol`, with multiplicities.
pub fn real_roots(p: &RatPoly, tol: f64) -> Vec<(f64, usize)> {
    isolate_real_roots(p)
        .iter()
        .map(|r| (r.refine(tol), r.multiplicity))
        .collect()
}

/// Distinct real roots of `p` strictly inside `(lo, hi)`.
pub fn count_roots_open(p: &RatPoly, lo: &Rational, hi: &Rational) -> usize {
    if p.is_zero() || p.is_constant() {
        return 0;
    }
    let sf = p.square_free();
    let n = SturmChain::new(&sf).count(Bound::At(lo), Bound::At(hi));
    if sf.eval(hi).is_zero() {
        n - 1
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    #[test]
    fn yun_factorization() {
        // (x-1)^2 (x+2)^3 (2x-1)
        let p = RatPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&RatPoly::from_ints(&[2, 1]).pow(3))
            .mul(&RatPoly::from_ints(&[-1, 2]));
        let d = square_free_decomposition(&p);
        let degs: Vec<(usize, usize)> = d.iter().map(|(f, m)| (f.degree().unwrap(), *m)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn roots_of_g3_instance() {
        let p = RatPoly::from_ints(&[108, -132, 23]);
        let r = real_roots(&p, 1e-13);
        assert_eq!(r.len(), 2);
        let exact = (132.0 + 7488f64.sqrt()) / 46.0;
        assert!((r[1].0 - exact).abs() < 1e-12);
    }

    #[test]
    fn open_interval_count() {
        let p = RatPoly::from_ints(&[0, -1, 0, 1]); // x^3 - x
        assert_eq!(count_roots_open(&p, &int(-1), &int(1)), 1);
        assert_eq!(count_roots_open(&p, &rat(-3, 2), &int(2)), 3);
        assert_eq!(count_roots_open(&p, &int(-2), &int(-1)), 0);
    }
}
