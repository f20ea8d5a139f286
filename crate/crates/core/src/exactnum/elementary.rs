use super::dyadic::Dyadic;
use super::interval::{DyadicInterval, GUARD_BITS};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Series kernel: atanh(z) for an interval z inside [0, 0.35], with a
/// rigorous tail bound. atanh(z) = sum z^(2k+1)/(2k+1).
fn atanh_series(z: &DyadicInterval, work: u32) -> DyadicInterval {
    debug_assert!(z.lo().signum() >= 0);
    debug_assert!(z.hi().cmp_rational(&BigRational::new(BigInt::from(35), BigInt::from(100))).is_le());
    if z.hi().is_zero() {
        return DyadicInterval::point(Dyadic::zero(), work);
    }
    let zsq = z.square();
    let mut power = z.clone();
    let mut sum = z.clone();
    let threshold = Dyadic::power_of_two(-(work as i64 + 2));
    let mut k: u64 = 1;
    loop {
        power = power.mul(&zsq);
        let term = power.div_uint(2 * k + 1);
        sum = sum.add(&term);
        if term.hi().abs() < threshold || k > 4 * work as u64 {
            // Tail: sum_{j>k} z^(2j+1)/(2j+1) <= z^(2k+3)/((2k+3)(1-z^2))
            // and 1/(1-z^2) <= 8/7 for z <= 0.35.
            let next = power.mul(&zsq);
            let bound = next.div_uint(2 * k + 3).mul(&DyadicInterval::enclose_rational(
                &BigRational::new(BigInt::from(8), BigInt::from(7)),
                work,
            ));
            let tail = DyadicInterval::new(Dyadic::zero(), bound.hi().clone(), work);
            sum = sum.add(&tail);
            return sum;
        }
        k += 1;
    }
}

/// Enclosure of ln 2 = 2 atanh(1/3), cached per working precision.
pub fn ln2(precision: u32) -> DyadicInterval {
    static CACHE: OnceLock<Mutex<HashMap<u32, DyadicInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&precision) {
        return v.clone();
    }
    let work = precision + GUARD_BITS;
    let third = DyadicInterval::enclose_rational(&BigRational::new(BigInt::from(1), BigInt::from(3)), work);
    let v = atanh_series(&third, work).scale_int(2);
    cache.lock().unwrap().insert(precision, v.clone());
    v
}

/// Two-sided enclosure of ln(x) for a positive dyadic point.
///
/// Writes x = m' * 2^E with m' in [1, 2), evaluates 2 atanh((m'-1)/(m'+1))
/// and adds E ln 2. All steps are interval arithmetic, so the result
/// contains the exact logarithm.
pub fn ln_point(x: &Dyadic, precision: u32) -> Result<DyadicInterval> {
    if x.signum() <= 0 {
        return Err(Error::Domain("log of a nonpositive value".into()));
    }
    let work = precision + GUARD_BITS;
    let nb = x.mantissa_bits() as i64;
    let e = x.exponent() + nb - 1;
    // m' = m / 2^(nb-1), z = (m - 2^(nb-1)) / (m + 2^(nb-1)) in [0, 1/3).
    let half_den = BigInt::from(1) << ((nb - 1) as u64);
    let z = BigRational::new(x.mantissa() - &half_den, x.mantissa() + &half_den);
    debug_assert!(!z.is_negative());
    let zi = DyadicInterval::enclose_rational(&z, work);
    let series = atanh_series(&zi, work).scale_int(2);
    let result = if e == 0 {
        series
    } else {
        series.add(&ln2(precision).scale_bigint(&BigInt::from(e)))
    };
    Ok(result)
}

/// Directed enclosure of sqrt(x) for a nonnegative dyadic point, via the
/// integer square root at a scaled exponent.
pub fn sqrt_point(x: &Dyadic, precision: u32) -> Result<DyadicInterval> {
    match x.signum() {
        -1 => Err(Error::Domain("sqrt of a negative value".into())),
        0 => Ok(DyadicInterval::point(Dyadic::zero(), precision)),
        _ => {
            let mut m = x.mantissa().clone();
            let mut e = x.exponent();
            if e % 2 != 0 {
                m <<= 1u64;
                e -= 1;
            }
            let target = 2 * (precision as i64 + GUARD_BITS as i64 + 1);
            let k = ((target - m.bits() as i64 + 1) / 2).max(0);
            let s = (&m << ((2 * k) as u64)).sqrt();
            let lo = Dyadic::new(s.clone(), e / 2 - k);
            let hi = Dyadic::new(s + 1, e / 2 - k);
            Ok(DyadicInterval::new(lo, hi, precision))
        }
    }
}

impl DyadicInterval {
    /// Interval logarithm; requires a strictly positive lower endpoint.
    pub fn ln(&self) -> Result<DyadicInterval> {
        if self.lo().signum() <= 0 {
            return Err(Error::Domain("log requires a strictly positive interval".into()));
        }
        let p = self.precision();
        let lo_encl = ln_point(self.lo(), p)?;
        if self.is_point() {
            return Ok(lo_encl);
        }
        let hi_encl = ln_point(self.hi(), p)?;
        Ok(DyadicInterval::new(lo_encl.lo().clone(), hi_encl.hi().clone(), p))
    }

    /// Interval square root; requires a nonnegative lower endpoint.
    pub fn sqrt(&self) -> Result<DyadicInterval> {
        if self.lo().signum() < 0 {
            return Err(Error::Domain("sqrt requires a nonnegative interval".into()));
        }
        let p = self.precision();
        let lo_encl = sqrt_point(self.lo(), p)?;
        if self.is_point() {
            return Ok(lo_encl);
        }
        let hi_encl = sqrt_point(self.hi(), p)?;
        Ok(DyadicInterval::new(lo_encl.lo().clone(), hi_encl.hi().clone(), p))
    }
}
