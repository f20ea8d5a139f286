use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Floor of the k-th root of a nonnegative integer: r with r^k <= n < (r+1)^k.
pub fn integer_nth_root_floor(n: &BigInt, k: u32) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Domain("nth root of a negative integer".into()));
    }
    if k == 0 {
        return Err(Error::Domain("zeroth root".into()));
    }
    Ok(n.nth_root(k))
}

pub fn integer_sqrt_floor(n: &BigInt) -> Result<BigInt> {
    integer_nth_root_floor(n, 2)
}

/// Smallest r >= 0 with r^q >= num/den, i.e. the ceiling of (num/den)^(1/q).
/// Requires num >= 0, den >= 1.
pub fn ceil_qth_root_of_ratio(num: &BigInt, den: &BigInt, q: u32) -> Result<BigInt> {
    if num.is_negative() || !den.is_positive() {
        return Err(Error::Domain("ratio root needs num >= 0 and den >= 1".into()));
    }
    if num.is_zero() {
        return Ok(BigInt::zero());
    }
    // floor over the integer quotient equals floor of the real root.
    let r0 = (num / den).nth_root(q);
    if num <= &(r0.pow(q) * den) {
        Ok(r0)
    } else {
        Ok(r0 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn exact_power() {
        let n = BigInt::from(10).pow(6);
        assert_eq!(integer_nth_root_floor(&n, 6).unwrap(), BigInt::from(10));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(integer_nth_root_floor(&BigInt::from(26), 3).unwrap(), BigInt::from(2));
        assert_eq!(integer_nth_root_floor(&BigInt::from(27), 3).unwrap(), BigInt::from(3));
        let r = integer_nth_root_floor(&BigInt::from(10).pow(13), 6).unwrap();
        assert!(r.pow(6) <= BigInt::from(10).pow(13));
        assert!((&r + BigInt::one()).pow(6) > BigInt::from(10).pow(13));
    }

    #[test]
    fn ceil_ratio_root() {
        // ceil((9/10 * 10)^1) = 9
        assert_eq!(
            ceil_qth_root_of_ratio(&BigInt::from(90), &BigInt::from(10), 1).unwrap(),
            BigInt::from(9)
        );
        // ceil(26^(1/3)) = 3, ceil(27^(1/3)) = 3
        assert_eq!(ceil_qth_root_of_ratio(&BigInt::from(26), &BigInt::from(1), 3).unwrap(), BigInt::from(3));
        assert_eq!(ceil_qth_root_of_ratio(&BigInt::from(27), &BigInt::from(1), 3).unwrap(), BigInt::from(3));
        // ceil((1/8)^(1/3)) = 1/2 rounded up = 1
        assert_eq!(ceil_qth_root_of_ratio(&BigInt::from(1), &BigInt::from(8), 3).unwrap(), BigInt::from(1));
    }
}
