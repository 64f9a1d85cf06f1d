//! Exact rational helpers shared by the rate formulas and the output formats.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

/// Renders a rational as `p/q` in lowest terms, always with a denominator.
pub fn to_exact(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a plain integer.
pub fn parse_exact(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering with six significant digits, trailing zeros trimmed.
pub fn to_decimal(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let x = to_f64(r);
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if r.is_negative() && !s.starts_with('-') {
        s.insert(0, '-');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn exact_rendering_reduces() {
        assert_eq!(to_exact(&frac(68, 60)), "17/15");
        assert_eq!(to_exact(&int(5)), "5/1");
        assert_eq!(to_exact(&int(0)), "0/1");
        assert_eq!(parse_exact("68/60"), Some(frac(17, 15)));
        assert_eq!(parse_exact("7"), Some(int(7)));
        assert_eq!(parse_exact("1/0"), None);
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(to_decimal(&frac(68, 60)), "1.13333");
        assert_eq!(to_decimal(&frac(5, 16)), "0.3125");
        assert_eq!(to_decimal(&int(100)), "100");
        assert_eq!(to_decimal(&frac(8, 3)), "2.66667");
        assert_eq!(to_decimal(&int(0)), "0");
    }
}
