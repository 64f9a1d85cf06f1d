//! Prime-field arithmetic and small dense linear algebra over `F_p`.

use crate::error::{Error, Result};

/// `F_p` for a prime `p < 2^32`, so products fit in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn smallest_prime_at_least(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Default field order for a code with `colors` evaluation points.
pub fn default_field_order(colors: usize) -> u64 {
    smallest_prime_at_least(257u64.max(colors as u64))
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Solves the square system `a x = b` by Gaussian elimination.
    /// Returns `None` when `a` is singular.
    pub fn solve(&self, mut a: Vec<Vec<u64>>, mut b: Vec<u64>) -> Option<Vec<u64>> {
        let n = a.len();
        assert_eq!(b.len(), n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let inv = self.inv(a[col][col])?;
            for c in col..n {
                a[col][c] = self.mul(a[col][c], inv);
            }
            b[col] = self.mul(b[col], inv);
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in col..n {
                        a[r][c] = self.sub(a[r][c], self.mul(f, a[col][c]));
                    }
                    b[r] = self.sub(b[r], self.mul(f, b[col]));
                }
            }
        }
        Some(b)
    }

    /// Rank of a (not necessarily square) matrix.
    pub fn rank(&self, mut a: Vec<Vec<u64>>) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = self.inv(a[rank][col]).expect("nonzero pivot");
            for r in 0..rows {
                if r != rank && a[r][col] != 0 {
                    let f = self.mul(a[r][col], inv);
                    for c in col..cols {
                        a[r][c] = self.sub(a[r][c], self.mul(f, a[rank][c]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(257));
        assert!(is_prime(251));
        assert!(!is_prime(256));
        assert!(!is_prime(1));
        assert_eq!(smallest_prime_at_least(258), 263);
        assert_eq!(default_field_order(8), 257);
        assert_eq!(default_field_order(300), 307);
        assert_eq!(default_field_order(263), 263);
    }

    #[test]
    fn rejects_composite_orders() {
        assert_eq!(PrimeField::new(256), Err(Error::NotPrime(256)));
    }

    #[test]
    fn inverse_and_solve() {
        let f = PrimeField::new(257).unwrap();
        for a in 1..257 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        let a = vec![vec![1, 1], vec![1, 2]];
        let x = f.solve(a, vec![5, 8]).unwrap();
        assert_eq!(x, vec![2, 3]);
        assert_eq!(f.solve(vec![vec![1, 2], vec![2, 4]], vec![1, 2]), None);
        assert_eq!(f.rank(vec![vec![1, 2], vec![2, 4]]), 1);
    }
}
