use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::compositions::composition_count_max_below;
use super::placement::{check_multiplier, placement_set_count};
use crate::error::{Error, Result};
use crate::ratio::{frac, int};

/// Rate of the scheme with shared-link reduction, a fixed reference value
/// for `(K, L, w) = (8, 2, 2)`.
pub const REFERENCE_SR_RATE: (i64, i64) = (5, 3);
/// Rate of the scheme with placement exploiting the access structure, a
/// fixed reference value for `(K, L, w) = (8, 2, 2)`.
pub const REFERENCE_SPE_RATE: (i64, i64) = (7, 6);

/// Worst-case delivery rate at memory `M = wN/K`:
///
/// `sum over b in B of min{2(K - wL) + w - 1 - max(b), K} / (|S| (w + 1))`
///
/// where `B` are the weak `(w+1)`-compositions of `K - wL - 1`. The sum is
/// grouped by the largest part, counted without enumerating `B`.
pub fn rate_new(k: usize, l: usize, w: usize) -> Result<BigRational> {
    check_multiplier(k, l, w)?;
    if w * l == k {
        return Ok(BigRational::zero());
    }
    let n = k - w * l - 1;
    let m = w + 1;
    let mut total = BigInt::zero();
    let mut below = BigInt::zero();
    for top in 0..=n {
        let upto = BigInt::from(composition_count_max_below(n, m, top + 1));
        let count = &upto - &below;
        below = upto;
        if count.is_zero() {
            continue;
        }
        let per_column = (2 * (k - w * l) + w - 1 - top).min(k);
        total += count * BigInt::from(per_column);
    }
    let subfiles = BigInt::from(placement_set_count(k, l, w)?);
    Ok(BigRational::new(total, subfiles * BigInt::from(m)))
}

/// `(K - wL) / (1 + w)`.
pub fn rate_hkd(k: usize, l: usize, w: usize) -> Result<BigRational> {
    check_multiplier(k, l, w)?;
    Ok(frac(k - w * l, 1 + w))
}

/// `K (1 - LM/N)^2`, defined for `0 <= LM <= N`.
pub fn rate_rk(n: usize, k: usize, l: usize, memory: &BigRational) -> Result<BigRational> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidNetwork("N and K must be positive".into()));
    }
    let load = memory * int(l) / int(n);
    if load < BigRational::zero() || load > int(1) {
        return Err(Error::MemoryOutOfRange(crate::ratio::to_exact(memory)));
    }
    let gap = int(1) - load;
    Ok(int(k) * &gap * &gap)
}

/// Exact `w = 1` rate when `2L + 1 >= K`: `(K-L)(5K-5L+2) / 8K`, plus one
/// in the numerator when `K - L - 1` is even.
pub fn rate_closed_form_large_l(k: usize, l: usize) -> Result<BigRational> {
    if l == 0 || l > k || 2 * l + 1 < k {
        return Err(Error::ClosedFormRegime { k, l });
    }
    let d = k - l;
    if d == 0 {
        return Ok(BigRational::zero());
    }
    let mut num = d * (5 * d + 2);
    if (d - 1).is_multiple_of(2) {
        num += 1;
    }
    Ok(frac(num, 8 * k))
}

/// `5(K-L)(K-L+1) / 8K`, an upper bound on the `w = 1` rate for `2L >= K`.
pub fn rate_closed_form_bound(k: usize, l: usize) -> BigRational {
    let d = k.saturating_sub(l);
    frac(5 * d * (d + 1), 8 * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_rates() {
        assert_eq!(rate_new(8, 2, 2).unwrap(), frac(68, 60));
        assert_eq!(rate_new(8, 4, 1).unwrap(), frac(11, 8));
        assert_eq!(rate_new(9, 4, 1).unwrap(), frac(17, 9));
        assert_eq!(rate_new(8, 2, 1).unwrap(), frac(23, 8));
        assert_eq!(rate_new(8, 2, 3).unwrap(), frac(5, 16));
        assert_eq!(rate_new(8, 2, 4).unwrap(), int(0));
        assert_eq!(rate_hkd(8, 2, 2).unwrap(), frac(4, 3));
        assert_eq!(rate_hkd(40, 4, 4).unwrap(), frac(24, 5));
        assert_eq!(rate_rk(8, 8, 2, &frac(2, 1)).unwrap(), int(2));
        assert_eq!(rate_rk(100, 100, 1, &int(50)).unwrap(), int(25));
        assert_eq!(rate_rk(8, 8, 2, &int(4)).unwrap(), int(0));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(rate_new(8, 2, 5), Err(Error::InvalidMultiplier { .. })));
        assert!(matches!(rate_rk(8, 8, 2, &int(5)), Err(Error::MemoryOutOfRange(_))));
        assert!(matches!(rate_closed_form_large_l(9, 3), Err(Error::ClosedFormRegime { .. })));
        assert!(matches!(rate_closed_form_large_l(10, 4), Err(Error::ClosedFormRegime { .. })));
    }

    #[test]
    fn closed_form_branches() {
        assert_eq!(rate_closed_form_large_l(8, 4).unwrap(), frac(11, 8));
        assert_eq!(rate_closed_form_large_l(9, 4).unwrap(), frac(17, 9));
        // K - L = 1 puts K - L - 1 = 0 on the even branch
        assert_eq!(rate_closed_form_large_l(9, 8).unwrap(), frac(1, 9));
        assert_eq!(rate_new(9, 8, 1).unwrap(), frac(1, 9));
    }
}
