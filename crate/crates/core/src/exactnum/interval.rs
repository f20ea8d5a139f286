use super::dyadic::{Dyadic, RoundDir};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;
/// Extra bits carried through elementary-function kernels.
pub const GUARD_BITS: u32 = 8;
/// Hard ceiling for precision escalation.
pub const PRECISION_CAP: u32 = 8192;

/// Closed interval with exact dyadic endpoints and outward rounding.
///
/// Every operation returns an interval containing the exact image of its
/// operand intervals; endpoints are rounded outward to `precision`
/// significant bits afterward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
    precision: u32,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        assert!(precision >= 4);
        DyadicInterval { lo, hi, precision }
    }

    pub fn point(d: Dyadic, precision: u32) -> Self {
        DyadicInterval::new(d.clone(), d, precision)
    }

    pub fn from_int(n: i64, precision: u32) -> Self {
        DyadicInterval::point(Dyadic::from_int(n), precision)
    }

    pub fn from_bigint(n: &BigInt, precision: u32) -> Self {
        DyadicInterval::point(Dyadic::from_bigint(n), precision)
    }

    /// Encloses a rational; exact when the denominator is a power of two,
    /// otherwise of width `2^-(bits + GUARD_BITS)`.
    pub fn enclose_rational(x: &BigRational, bits: u32) -> Self {
        let den = x.denom();
        debug_assert!(den.is_positive());
        if (den & (den - BigInt::from(1))).is_zero() {
            let k = den.trailing_zeros().unwrap_or(0);
            return DyadicInterval::point(Dyadic::new(x.numer().clone(), -(k as i64)), bits);
        }
        let scale = bits + GUARD_BITS;
        let lo = Dyadic::from_rational(x, scale, RoundDir::Down);
        let hi = &lo + &Dyadic::power_of_two(-(scale as i64));
        DyadicInterval::new(lo, hi, bits)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        DyadicInterval::new(self.lo.clone(), self.hi.clone(), precision)
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).half()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        self.lo.cmp_rational(x) != std::cmp::Ordering::Greater
            && self.hi.cmp_rational(x) != std::cmp::Ordering::Less
    }

    pub fn contains(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &DyadicInterval) -> Self {
        DyadicInterval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.precision.max(other.precision),
        )
    }

    fn rounded(lo: Dyadic, hi: Dyadic, precision: u32) -> Self {
        DyadicInterval::new(
            lo.round(precision, RoundDir::Down),
            hi.round(precision, RoundDir::Up),
            precision,
        )
    }

    pub fn neg(&self) -> Self {
        DyadicInterval::new(-&self.hi, -&self.lo, self.precision)
    }

    pub fn add(&self, other: &DyadicInterval) -> Self {
        let p = self.precision.max(other.precision);
        DyadicInterval::rounded(&self.lo + &other.lo, &self.hi + &other.hi, p)
    }

    pub fn sub(&self, other: &DyadicInterval) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &DyadicInterval) -> Self {
        let p = self.precision.max(other.precision);
        let c1 = &self.lo * &other.lo;
        let c2 = &self.lo * &other.hi;
        let c3 = &self.hi * &other.lo;
        let c4 = &self.hi * &other.hi;
        let lo = c1.clone().min(c2.clone()).min(c3.clone()).min(c4.clone());
        let hi = c1.max(c2).max(c3).max(c4);
        DyadicInterval::rounded(lo, hi, p)
    }

    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = a.clone().max(b.clone());
        let lo = if self.contains_zero() { Dyadic::zero() } else { a.min(b) };
        DyadicInterval::rounded(lo, hi, self.precision)
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let hi = self.hi.clone().max(-&self.lo);
            DyadicInterval::new(Dyadic::zero(), hi, self.precision)
        }
    }

    /// Exact scaling by an integer.
    pub fn scale_bigint(&self, n: &BigInt) -> Self {
        let a = Dyadic::from_bigint(n);
        let x = &self.lo * &a;
        let y = &self.hi * &a;
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        DyadicInterval::rounded(lo, hi, self.precision)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_bigint(&BigInt::from(n))
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        self.add(&DyadicInterval::enclose_rational(x, self.precision))
    }

    /// Directed quotient of dyadics at `bits` significant result bits.
    fn div_dyadic(num: &Dyadic, den: &Dyadic, bits: u32, dir: RoundDir) -> Dyadic {
        debug_assert!(!den.is_zero());
        let extra = bits as i64 + GUARD_BITS as i64 + 2
            + (den.mantissa_bits() as i64 - num.mantissa_bits() as i64).max(0);
        let shifted = num.mantissa() << (extra as u64);
        let q = match (dir, den.signum() > 0) {
            (RoundDir::Down, true) => shifted.div_floor(den.mantissa()),
            (RoundDir::Up, true) => -((-shifted).div_floor(den.mantissa())),
            (RoundDir::Down, false) => (-shifted).div_floor(&-den.mantissa()),
            (RoundDir::Up, false) => -(shifted.div_floor(&-den.mantissa())),
        };
        Dyadic::new(q, num.exponent() - den.exponent() - extra)
    }

    /// Interval division; the denominator must exclude zero.
    pub fn div(&self, other: &DyadicInterval) -> Result<Self> {
        if other.contains_zero() {
            if other.is_point() {
                return Err(Error::Domain("division by exact zero".into()));
            }
            return Err(Error::NeedsPrecision {
                bits: self.precision.max(other.precision),
                context: "denominator interval contains zero".into(),
            });
        }
        let p = self.precision.max(other.precision);
        let ends = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (n, d) in ends {
            let down = Self::div_dyadic(n, d, p, RoundDir::Down);
            let up = Self::div_dyadic(n, d, p, RoundDir::Up);
            lo = Some(match lo {
                Some(c) => c.min(down),
                None => down,
            });
            hi = Some(match hi {
                Some(c) => c.max(up),
                None => up,
            });
        }
        Ok(DyadicInterval::new(lo.unwrap(), hi.unwrap(), p))
    }

    /// Directed division by a small positive integer.
    pub fn div_uint(&self, n: u64) -> Self {
        let d = Dyadic::from_int(n as i64);
        let lo = Self::div_dyadic(&self.lo, &d, self.precision, RoundDir::Down);
        let hi = Self::div_dyadic(&self.hi, &d, self.precision, RoundDir::Up);
        DyadicInterval::new(lo, hi, self.precision)
    }

    pub fn to_f64_mid(&self) -> f64 {
        self.midpoint().to_f64()
    }
}
