use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Rounding direction on the real line: `Down` toward -inf, `Up` toward +inf.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundDir {
    Down,
    Up,
}

impl RoundDir {
    fn flip(self) -> Self {
        match self {
            RoundDir::Down => RoundDir::Up,
            RoundDir::Up => RoundDir::Down,
        }
    }
}

/// Exact dyadic rational `mantissa * 2^exponent`; mantissa odd or zero.
///
/// Arithmetic is exact; precision control happens only through explicit
/// `round` calls, so a `Dyadic` never silently loses information.
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
        } else if let Some(tz) = self.mantissa.trailing_zeros() {
            if tz > 0 {
                self.mantissa >>= tz;
                self.exponent += tz as i64;
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    /// `2^e`.
    pub fn power_of_two(e: i64) -> Self {
        Dyadic { mantissa: BigInt::from(1), exponent: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// -1, 0, or 1.
    pub fn signum(&self) -> i8 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Significant bits of the mantissa.
    pub fn mantissa_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn double(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + 1 }
    }

    pub fn half(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent - 1 }
    }

    /// Directed rounding to at most `bits` significant mantissa bits.
    pub fn round(&self, bits: u32, dir: RoundDir) -> Self {
        let nb = self.mantissa.bits();
        if nb <= bits as u64 {
            return self.clone();
        }
        let shift = nb - bits as u64;
        let m = match dir {
            // BigInt shr is a floor (toward -inf) for negative values too;
            // pinned by a unit test.
            RoundDir::Down => &self.mantissa >> shift,
            RoundDir::Up => -((-&self.mantissa) >> shift),
        };
        Dyadic::new(m, self.exponent + shift as i64)
    }

    /// Largest integer <= self.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << (self.exponent as u64)
        } else {
            &self.mantissa >> ((-self.exponent) as u64)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << (self.exponent as u64))
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::from(1) << ((-self.exponent) as u64))
        }
    }

    /// Directed dyadic approximation of a rational at scale `2^-scale_bits`.
    pub fn from_rational(x: &BigRational, scale_bits: u32, dir: RoundDir) -> Self {
        let num = x.numer() << (scale_bits as u64);
        let q = match dir {
            RoundDir::Down => num.div_floor(x.denom()),
            RoundDir::Up => -((-num).div_floor(x.denom())),
        };
        Dyadic::new(q, -(scale_bits as i64))
    }

    /// Exact comparison with a rational (denominator positive).
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        // m*2^e vs n/d  <=>  m*d*2^e vs n
        let lhs_base = &self.mantissa * x.denom();
        if self.exponent >= 0 {
            (lhs_base << (self.exponent as u64)).cmp(x.numer())
        } else {
            lhs_base.cmp(&(x.numer() << ((-self.exponent) as u64)))
        }
    }

    /// Lossy conversion for plots and summaries; saturates on overflow.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = self.mantissa.bits() as i64;
        // Split off the top 64 bits so the shift fits an f64 exponent.
        let keep = 64.min(nb);
        let drop = nb - keep;
        let top = (&self.mantissa >> (drop as u64)).to_f64().unwrap_or(f64::NAN);
        let e = self.exponent + drop;
        if e > i32::MAX as i64 {
            return if top > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < i32::MIN as i64 {
            return 0.0;
        }
        top * (e as f64).exp2()
    }

    /// Directed decimal rendering with `sig` significant digits.
    ///
    /// The printed value is <= self for `Down` and >= self for `Up`, and the
    /// output is canonical: parsing it back and re-rendering reproduces the
    /// same bytes.
    pub fn to_decimal(&self, sig: usize, dir: RoundDir) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.signum() < 0;
        let magdir = if neg { dir.flip() } else { dir };
        let m = self.mantissa.abs();
        let e = self.exponent;
        // First estimate of floor(log10 |self|), corrected by the loop below.
        let bitlen = e + m.bits() as i64 - 1;
        let mut d = (bitlen as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigInt::from(10);
        let low = ten.pow(sig as u32 - 1);
        let high = ten.pow(sig as u32);
        let digits = loop {
            let k = sig as i64 - 1 - d;
            let mut num = m.clone();
            let mut den = BigInt::from(1);
            if k >= 0 {
                num *= ten.pow(k as u32);
            } else {
                den *= ten.pow((-k) as u32);
            }
            if e >= 0 {
                num <<= e as u64;
            } else {
                den <<= (-e) as u64;
            }
            let q = match magdir {
                RoundDir::Down => num.div_floor(&den),
                RoundDir::Up => -((-num).div_floor(&den)),
            };
            if q >= high {
                d += 1;
                continue;
            }
            if q < low {
                d -= 1;
                continue;
            }
            break q.to_string();
        };
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if (-5..=17).contains(&d) {
            if d >= 0 {
                let split = d as usize + 1;
                out.push_str(&digits[..split]);
                let frac = digits[split..].trim_end_matches('0');
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(frac);
                }
            } else {
                out.push_str("0.");
                for _ in 0..(-d - 1) {
                    out.push('0');
                }
                out.push_str(digits.trim_end_matches('0'));
            }
        } else {
            out.push_str(&digits[..1]);
            let frac = digits[1..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
            out.push('e');
            out.push_str(&d.to_string());
        }
        out
    }
}

/// Parse the decimal forms emitted by `to_decimal`: optional sign, digits,
/// optional fraction, optional e-exponent. Returns `None` on anything else.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (mant_str, exp) = match s.split_once(['e', 'E']) {
        Some((m, x)) => (m, x.parse::<i64>().ok()?),
        None => (s, 0i64),
    };
    let (int_part, frac_part) = match mant_str.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant_str, ""),
    };
    let (sign, int_digits) = match int_part.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
    };
    if int_digits.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_digits.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_digits}{frac_part}");
    let mant: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(mant * ten.pow(scale as u32))
    } else {
        BigRational::new(mant, ten.pow((-scale) as u32))
    };
    Some(value * BigRational::from_integer(BigInt::from(sign)))
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, 0) => Ordering::Equal,
            _ => (self - other).signum().cmp(&0),
        }
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (m, e) = if self.exponent >= rhs.exponent {
            let shift = (self.exponent - rhs.exponent) as u64;
            ((&self.mantissa << shift) + &rhs.mantissa, rhs.exponent)
        } else {
            let shift = (rhs.exponent - self.exponent) as u64;
            (&self.mantissa + (&rhs.mantissa << shift), self.exponent)
        };
        Dyadic::new(m, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}
