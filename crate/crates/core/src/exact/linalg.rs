use super::ring::{Rational, Ring};
use num_traits::{One, Zero};

/// Fraction-free (Bareiss) determinant. Works over any ring with exact
/// division, so polynomial entries stay polynomial.
pub fn determinant<C: Ring>(m: &[Vec<C>]) -> C {
    let n = m.len();
    if n == 0 {
        return C::one_el();
    }
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut sign_flip = false;
    let mut prev = C::one_el();
    for k in 0..n - 1 {
        if a[k][k].is_zero_el() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero_el()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return C::zero_el(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .mul_ref(&a[k][k])
                    .sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = t.try_div(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        d.neg_ref()
    } else {
        d
    }
}

/// Hankel matrix `[s[offset + i + j]]` of the given size.
pub fn hankel<C: Ring>(s: &[C], offset: usize, size: usize) -> Vec<Vec<C>> {
    (0..size)
        .map(|i| (0..size).map(|j| s[offset + i + j].clone()).collect())
        .collect()
}

/// Basis of the right nullspace of a rational matrix (reduced row echelon).
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::RatPoly;
    use crate::exact::ring::{int, rat};

    fn m(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    /// Cofactor expansion oracle.
    fn det_cofactor(a: &[Vec<Rational>]) -> Rational {
        if a.len() == 1 {
            return a[0][0].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..a.len() {
            let minor: Vec<Vec<Rational>> = a[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let t = &a[0][j] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += t
            } else {
                acc -= t
            }
        }
        acc
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = m(&[
            &[0, 2, -1, 3],
            &[4, 1, 0, 2],
            &[-2, 5, 7, 1],
            &[3, 3, -4, 0],
        ]);
        assert_eq!(determinant(&a), det_cofactor(&a));
        let h = hankel(&[int(1), int(2), int(3), int(5), int(8)], 0, 3);
        assert_eq!(determinant(&h), det_cofactor(&h));
    }

    #[test]
    fn polynomial_entries() {
        // det [[x, 1], [1, x]] = x^2 - 1
        let x = RatPoly::x();
        let a = vec![vec![x.clone(), RatPoly::one()], vec![RatPoly::one(), x]];
        assert_eq!(determinant(&a), RatPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn nullspace_basis() {
        let a = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let dot: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
        let full = vec![vec![int(1), rat(1, 2)], vec![int(0), int(1)]];
        assert!(nullspace(&full, 2).is_empty());
    }
}
