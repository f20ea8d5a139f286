//! Exact arithmetic in Q(sqrt 3) and exact SL2(Z) reduction.
//!
//! The limit points of the shape family live on a curve defined over
//! Q(sqrt 3), so their reduced representatives can be computed without any
//! interval arithmetic at all: every comparison below is a sign of an
//! element of the field, decided by rational arithmetic.

use crate::error::{Error, Result};
use crate::exactnum::DyadicInterval;
use crate::regshape::reduce::{Mat2, UpperHalfPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Interval enclosure of sqrt 3 at the given precision.
pub fn sqrt3_interval(precision: u32) -> DyadicInterval {
    DyadicInterval::from_int(3, precision)
        .sqrt()
        .expect("square root of a positive constant")
}

fn three() -> BigRational {
    BigRational::from_integer(BigInt::from(3))
}

/// The field element a + b sqrt3 with rational a, b. All comparisons are
/// exact: sqrt 3 is irrational, so a nonzero element never has norm zero
/// and never equals an integer unless b = 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Sqrt3 {
    a: BigRational,
    b: BigRational,
}

impl Sqrt3 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Sqrt3 { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Sqrt3 {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational part.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of sqrt 3.
    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn neg(&self) -> Self {
        Sqrt3 {
            a: -&self.a,
            b: -&self.b,
        }
    }

    pub fn add(&self, rhs: &Sqrt3) -> Self {
        Sqrt3 {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }

    pub fn sub(&self, rhs: &Sqrt3) -> Self {
        Sqrt3 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }

    pub fn mul(&self, rhs: &Sqrt3) -> Self {
        Sqrt3 {
            a: &self.a * &rhs.a + three() * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Field norm a^2 - 3 b^2; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - three() * &self.b * &self.b
    }

    pub fn div(&self, rhs: &Sqrt3) -> Self {
        debug_assert!(!rhs.is_zero());
        let n = rhs.norm();
        let inv = Sqrt3 {
            a: &rhs.a / &n,
            b: -&rhs.b / &n,
        };
        self.mul(&inv)
    }

    /// Exact sign. When a and b disagree in sign the decision reduces to
    /// comparing a^2 with 3 b^2: the larger side dominates.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        if rational_sign(&self.norm()) > 0 {
            sa
        } else {
            sb
        }
    }

    pub fn cmp_exact(&self, rhs: &Sqrt3) -> std::cmp::Ordering {
        self.sub(rhs).signum().cmp(&0)
    }

    /// floor(a + b sqrt3), via integer square-root brackets of sqrt 3.
    /// Terminates because the bracket width |b| / 2^j shrinks to zero and
    /// the value is irrational (hence not an integer) whenever b != 0.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let mut j: u64 = 16;
        loop {
            let s = (BigInt::from(3) << (2 * j)).sqrt();
            let pow = BigInt::one() << j;
            let root_lo = BigRational::new(s.clone(), pow.clone());
            let root_hi = BigRational::new(s + BigInt::one(), pow);
            let (lo, hi) = if self.b.is_positive() {
                (&self.a + &self.b * &root_lo, &self.a + &self.b * &root_hi)
            } else {
                (&self.a + &self.b * &root_hi, &self.a + &self.b * &root_lo)
            };
            let floor_lo = lo.floor().to_integer();
            if floor_lo == hi.floor().to_integer() {
                return floor_lo;
            }
            j *= 2;
        }
    }

    /// Interval enclosure, exact in the rational part up to outward
    /// rounding of the final sum.
    pub fn to_interval(&self, precision: u32) -> DyadicInterval {
        let a = DyadicInterval::enclose_rational(&self.a, precision);
        if self.b.is_zero() {
            return a;
        }
        let b = DyadicInterval::enclose_rational(&self.b, precision);
        a.add(&b.mul(&sqrt3_interval(precision)))
    }
}

fn rational_sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for Sqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt3", self.a, self.b)
        }
    }
}

/// Exact point x + iy of the upper half plane with coordinates in
/// Q(sqrt 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoint {
    pub x: Sqrt3,
    pub y: Sqrt3,
}

impl ExactPoint {
    pub fn new(x: Sqrt3, y: Sqrt3) -> Result<Self> {
        if y.signum() <= 0 {
            return Err(Error::Domain(
                "exact point must have positive imaginary part".into(),
            ));
        }
        Ok(ExactPoint { x, y })
    }

    pub fn to_upper_half(&self, precision: u32) -> Result<UpperHalfPoint> {
        UpperHalfPoint::new(self.x.to_interval(precision), self.y.to_interval(precision))
    }
}

/// Exact Mobius action of an integer matrix on an exact point.
pub fn apply_exact(g: &Mat2, p: &ExactPoint) -> Result<ExactPoint> {
    let a = Sqrt3::from_rational(BigRational::from_integer(g.m[0][0].clone()));
    let b = Sqrt3::from_rational(BigRational::from_integer(g.m[0][1].clone()));
    let c = Sqrt3::from_rational(BigRational::from_integer(g.m[1][0].clone()));
    let d = Sqrt3::from_rational(BigRational::from_integer(g.m[1][1].clone()));
    let det = Sqrt3::from_rational(BigRational::from_integer(g.det()));
    let cx_d = c.mul(&p.x).add(&d);
    let den = cx_d.square().add(&c.mul(&p.y).square());
    if den.is_zero() {
        return Err(Error::Domain("Mobius denominator vanishes".into()));
    }
    let ax_b = a.mul(&p.x).add(&b);
    let x = ax_b.mul(&cx_d).add(&a.mul(&c).mul(&p.y.square())).div(&den);
    let y = p.y.mul(&det).div(&den);
    ExactPoint::new(x, y)
}

/// Exact reduction into the fundamental domain: Re in [-1/2, 1/2), and on
/// the arc |tau| = 1 the representative with Re >= 0 (so the corner orbit
/// is represented by 1/2 + i sqrt3/2). Returns the reduced point and the
/// matrix g with g . input = reduced.
pub fn reduce_exact(p: &ExactPoint) -> Result<(ExactPoint, Mat2)> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut x = p.x.clone();
    let mut y = p.y.clone();
    let mut g = Mat2::identity();
    for _ in 0..10_000 {
        let n = x.add(&Sqrt3::from_rational(half.clone())).floor();
        if !n.is_zero() {
            x = x.sub(&Sqrt3::from_rational(BigRational::from_integer(n.clone())));
            g = Mat2::t_pow(&-n).mul(&g);
        }
        let nsq = x.square().add(&y.square());
        match nsq.sub(&Sqrt3::one()).signum() {
            1 => {
                let tau = ExactPoint::new(x, y)?;
                return Ok((tau, g));
            }
            0 => {
                // On the arc the inversion fixes y and negates x.
                if x.signum() < 0 {
                    x = x.neg();
                    g = Mat2::s().mul(&g);
                }
                let tau = ExactPoint::new(x, y)?;
                return Ok((tau, g));
            }
            _ => {
                let new_x = x.neg().div(&nsq);
                let new_y = y.div(&nsq);
                x = new_x;
                y = new_y;
                g = Mat2::s().mul(&g);
            }
        }
    }
    Err(Error::Inconsistency(
        "exact reduction failed to terminate".into(),
    ))
}

/// The exact limit of the reduced shape family at escape rate alpha,
/// before and after reduction.
#[derive(Clone, Debug)]
pub struct LimitShape {
    pub alpha: BigRational,
    pub alpha_prime: BigRational,
    pub tau: ExactPoint,
    pub reduced: ExactPoint,
    pub g: Mat2,
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if !alpha.is_positive() || *alpha >= quarter {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1/4), got {alpha}"
        )));
    }
    Ok(())
}

fn alpha_prime_of(alpha: &BigRational) -> BigRational {
    // (1 + alpha/2) / (3 alpha)
    let two = BigRational::from_integer(BigInt::from(2));
    (BigRational::one() + alpha / &two) / (three() * alpha)
}

/// Basis of the limit lattice: omega1 = (alpha', sqrt3/6) and
/// omega2 = (1/2, sqrt3/2), as vectors in the plane with Q(sqrt 3)
/// coordinates. The shape point is omega2 / omega1 as a complex ratio.
pub fn limit_basis(alpha: &BigRational) -> Result<[(Sqrt3, Sqrt3); 2]> {
    check_alpha(alpha)?;
    let ap = alpha_prime_of(alpha);
    let sixth = BigRational::new(BigInt::one(), BigInt::from(6));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok([
        (
            Sqrt3::from_rational(ap),
            Sqrt3::new(BigRational::zero(), sixth),
        ),
        (
            Sqrt3::from_rational(half.clone()),
            Sqrt3::new(BigRational::zero(), half),
        ),
    ])
}

/// The exact shape limit at escape rate alpha in (0, 1/4):
/// tau = ((a'/2 + 1/4) + i sqrt3 (a'/2 - 1/12)) / (a'^2 + 1/12)
/// with a' = (1 + alpha/2) / (3 alpha), reduced into the fundamental
/// domain.
pub fn limit_shape(alpha: &BigRational) -> Result<LimitShape> {
    check_alpha(alpha)?;
    let ap = alpha_prime_of(alpha);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let twelfth = BigRational::new(BigInt::one(), BigInt::from(12));
    let den = &ap * &ap + &twelfth;
    let x = (&ap * &half + &quarter) / &den;
    let y_coeff = (&ap * &half - &twelfth) / &den;
    let tau = ExactPoint::new(
        Sqrt3::from_rational(x),
        Sqrt3::new(BigRational::zero(), y_coeff),
    )?;
    let (reduced, g) = reduce_exact(&tau)?;
    Ok(LimitShape {
        alpha: alpha.clone(),
        alpha_prime: ap,
        tau,
        reduced,
        g,
    })
}
