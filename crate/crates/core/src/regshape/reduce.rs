//! SL2(Z) reduction of interval-valued points of the upper half plane,
//! plus hyperbolic and quotient distances.

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicInterval};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::OnceLock;

/// Integer 2x2 matrix acting on H by Mobius transformations. Determinant
/// is always +1 for the matrices produced here.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[BigInt; 2]; 2],
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 {
            m: [
                [BigInt::one(), BigInt::zero()],
                [BigInt::zero(), BigInt::one()],
            ],
        }
    }

    /// S: tau -> -1/tau.
    pub fn s() -> Self {
        Mat2 {
            m: [
                [BigInt::zero(), BigInt::from(-1)],
                [BigInt::one(), BigInt::zero()],
            ],
        }
    }

    /// T^n: tau -> tau + n.
    pub fn t_pow(n: &BigInt) -> Self {
        Mat2 {
            m: [
                [BigInt::one(), n.clone()],
                [BigInt::zero(), BigInt::one()],
            ],
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Mat2 {
            m: [
                [
                    &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                    &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
                ],
                [
                    &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                    &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
                ],
            ],
        }
    }

    pub fn det(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    /// Normalize the sign ambiguity g ~ -g (identical Mobius action): make
    /// the first nonzero entry in row-major order positive.
    pub fn sign_normalized(&self) -> Self {
        let entries = [&self.m[0][0], &self.m[0][1], &self.m[1][0], &self.m[1][1]];
        for e in entries {
            match e.sign() {
                num_bigint::Sign::Plus => return self.clone(),
                num_bigint::Sign::Minus => {
                    return Mat2 {
                        m: [
                            [-&self.m[0][0], -&self.m[0][1]],
                            [-&self.m[1][0], -&self.m[1][1]],
                        ],
                    }
                }
                num_bigint::Sign::NoSign => continue,
            }
        }
        self.clone()
    }

    /// Interval Mobius action. Fails with a precision request when the
    /// denominator |c tau + d|^2 cannot be bounded away from zero.
    pub fn apply_interval(&self, p: &UpperHalfPoint) -> Result<UpperHalfPoint> {
        let prec = p.x.precision();
        let a = DyadicInterval::from_bigint(&self.m[0][0], prec);
        let b = DyadicInterval::from_bigint(&self.m[0][1], prec);
        let c = DyadicInterval::from_bigint(&self.m[1][0], prec);
        let d = DyadicInterval::from_bigint(&self.m[1][1], prec);
        let cx_d = c.mul(&p.x).add(&d);
        let cy = c.mul(&p.y);
        let den = cx_d.square().add(&cy.square());
        if den.contains_zero() {
            return Err(Error::NeedsPrecision {
                bits: prec,
                context: "Mobius denominator not separated from zero".into(),
            });
        }
        let ax_b = a.mul(&p.x).add(&b);
        let num_x = ax_b.mul(&cx_d).add(&a.mul(&c).mul(&p.y.square()));
        let det = DyadicInterval::from_bigint(&self.det(), prec);
        let num_y = p.y.mul(&det);
        UpperHalfPoint::new(num_x.div(&den)?, num_y.div(&den)?)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

/// Interval point x + iy with the imaginary part certified positive.
#[derive(Clone, Debug)]
pub struct UpperHalfPoint {
    x: DyadicInterval,
    y: DyadicInterval,
}

impl UpperHalfPoint {
    pub fn new(x: DyadicInterval, y: DyadicInterval) -> Result<Self> {
        if !y.is_strictly_positive() {
            return Err(Error::NeedsPrecision {
                bits: y.precision(),
                context: "imaginary part not certified positive".into(),
            });
        }
        Ok(UpperHalfPoint { x, y })
    }

    pub fn x(&self) -> &DyadicInterval {
        &self.x
    }

    pub fn y(&self) -> &DyadicInterval {
        &self.y
    }
}

/// A point of the standard fundamental domain together with the matrix
/// that carried the input there: g . input = tau.
#[derive(Clone, Debug)]
pub struct ReducedShape {
    pub tau: UpperHalfPoint,
    pub g: Mat2,
}

const HALF_EXP: i64 = -1;

fn half() -> Dyadic {
    Dyadic::power_of_two(HALF_EXP)
}

/// Classic translate-and-invert reduction, run on intervals. Every branch
/// is certified: translations use exact dyadic arithmetic, and inversion
/// is taken only when |tau| < 1 is certain. Points whose orbit touches the
/// unit circle exactly cannot be decided at any finite precision and
/// escalate instead (the exact Q(sqrt3) reducer handles those).
pub fn reduce_in_domain(tau: &UpperHalfPoint, max_steps: u32) -> Result<ReducedShape> {
    let prec = tau.x.precision();
    let mut x = tau.x.clone();
    let mut y = tau.y.clone();
    let mut g = Mat2::identity();
    let one = DyadicInterval::from_int(1, prec);
    for _ in 0..max_steps {
        let n = (&x.midpoint() + &half()).floor_bigint();
        if !n.is_zero() {
            x = x.sub(&DyadicInterval::from_bigint(&n, prec));
            g = Mat2::t_pow(&-n).mul(&g);
        }
        let nsq = x.square().add(&y.square());
        if nsq.lo() > one.lo() {
            // Inside the open region |tau| > 1; the translation must also
            // be certified: x in [-1/2, 1/2).
            let minus_half = -&half();
            if x.lo() >= &minus_half && x.hi() < &half() {
                let tau = UpperHalfPoint::new(x, y)?;
                return Ok(ReducedShape { tau, g });
            }
            return Err(Error::NeedsPrecision {
                bits: prec,
                context: "reduced point straddles a translation boundary".into(),
            });
        }
        if nsq.hi() < one.lo() {
            // |tau| < 1 certified: invert. nsq.lo > 0 since y is positive.
            x = x.neg().div(&nsq)?;
            y = y.div(&nsq)?;
            g = Mat2::s().mul(&g);
            continue;
        }
        return Err(Error::NeedsPrecision {
            bits: prec,
            context: "orbit not separated from the unit circle".into(),
        });
    }
    Err(Error::NeedsPrecision {
        bits: prec,
        context: "reduction step budget exhausted".into(),
    })
}

/// Interval enclosure of the hyperbolic distance
/// d(p, q) = arcosh(1 + (|p-q|^2) / (2 Im p Im q)).
pub fn hyperbolic_distance(p: &UpperHalfPoint, q: &UpperHalfPoint) -> Result<DyadicInterval> {
    let prec = p.x.precision().max(q.x.precision());
    let dx = p.x.sub(&q.x);
    let dy = p.y.sub(&q.y);
    let num = dx.square().add(&dy.square());
    let den = p.y.mul(&q.y).scale_int(2);
    let u = num.div(&den)?.add(&DyadicInterval::from_int(1, prec));
    // True u >= 1; clamp the rounding slack so sqrt and ln stay in domain.
    let u_clamped = clamp_lo(&u, &Dyadic::one());
    let s_arg = clamp_lo(
        &u_clamped.square().sub(&DyadicInterval::from_int(1, prec)),
        &Dyadic::zero(),
    );
    let s = s_arg.sqrt()?;
    let arg = clamp_lo(&u_clamped.add(&s), &Dyadic::one());
    arg.ln()
}

fn clamp_lo(v: &DyadicInterval, floor: &Dyadic) -> DyadicInterval {
    if v.lo() < floor {
        let hi = if v.hi() < floor { floor.clone() } else { v.hi().clone() };
        DyadicInterval::new(floor.clone(), hi, v.precision())
    } else {
        v.clone()
    }
}

/// Words of length <= 3 in {S, T, T^-1}, sign-normalized and deduplicated.
fn short_words() -> &'static Vec<Mat2> {
    static WORDS: OnceLock<Vec<Mat2>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let gens = [
            Mat2::s(),
            Mat2::t_pow(&BigInt::one()),
            Mat2::t_pow(&BigInt::from(-1)),
        ];
        let mut frontier = vec![Mat2::identity()];
        let mut all: Vec<Mat2> = vec![Mat2::identity()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &frontier {
                for gen in &gens {
                    let cand = gen.mul(w).sign_normalized();
                    if !all.contains(&cand) {
                        all.push(cand.clone());
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        all
    })
}

/// Upper bound for the distance between p and q in the quotient
/// SL2(Z)\H: the minimum of d(g p, q) over all short words g. Exact for
/// points near the fundamental domain (where the minimizing element is a
/// short word); always an upper bound for the quotient distance.
pub fn modular_distance(p: &UpperHalfPoint, q: &UpperHalfPoint) -> Result<DyadicInterval> {
    let mut best: Option<DyadicInterval> = None;
    for g in short_words() {
        let moved = match g.apply_interval(p) {
            Ok(m) => m,
            Err(Error::NeedsPrecision { .. }) => continue,
            Err(e) => return Err(e),
        };
        let d = hyperbolic_distance(&moved, q)?;
        best = Some(match best {
            None => d,
            Some(b) => {
                let lo = if d.lo() < b.lo() { d.lo().clone() } else { b.lo().clone() };
                let hi = if d.hi() < b.hi() { d.hi().clone() } else { b.hi().clone() };
                DyadicInterval::new(lo, hi, b.precision())
            }
        });
    }
    best.ok_or_else(|| Error::Inconsistency("no word evaluated in the quotient distance".into()))
}
