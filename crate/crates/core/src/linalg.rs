//! Exact solution of square integer systems by fraction-free (Bareiss)
//! elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Solution x = num / den of a nonsingular system A x = b, with den > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSolution {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl RationalSolution {
    /// The solution as integers, if every entry is integral.
    pub fn integral(&self) -> Option<Vec<BigInt>> {
        self.num
            .iter()
            .map(|n| {
                let (q, r) = n.div_rem(&self.den);
                r.is_zero().then_some(q)
            })
            .collect()
    }
}

/// Solves A x = b for square A. Returns None when A is singular.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<RationalSolution> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    // Back substitution over the rationals with common denominator det.
    let det = m[n - 1][n - 1].clone();
    let mut x = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        // m[i][i] * x_i = det * rhs_i - sum_j m[i][j] * x_j, all scaled by det.
        let mut acc = &m[i][n] * &det;
        for j in i + 1..n {
            acc -= &m[i][j] * &x[j];
        }
        x[i] = acc / &m[i][i];
    }
    let (num, den) = if det.is_negative() { (x.into_iter().map(|v| -v).collect(), -det) } else { (x, det) };
    Some(RationalSolution { num, den })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn vecb(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integral_solution() {
        let a = big(&[&[2, 1, -1], &[-3, -1, 2], &[-2, 1, 2]]);
        let s = solve(&a, &vecb(&[8, -11, -3])).unwrap();
        assert_eq!(s.integral().unwrap(), vecb(&[2, 3, -1]));
    }

    #[test]
    fn fractional_and_singular() {
        let a = big(&[&[2, 0], &[0, 3]]);
        let s = solve(&a, &vecb(&[1, 1])).unwrap();
        assert!(s.integral().is_none());
        assert_eq!(&s.num[0] * BigInt::from(2), s.den);
        assert!(solve(&big(&[&[1, 2], &[2, 4]]), &vecb(&[1, 2])).is_none());
    }

    #[test]
    fn needs_pivoting() {
        let a = big(&[&[0, 1], &[1, 0]]);
        assert_eq!(solve(&a, &vecb(&[5, 7])).unwrap().integral().unwrap(), vecb(&[7, 5]));
    }
}
