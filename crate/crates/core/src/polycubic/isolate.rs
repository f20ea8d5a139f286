//! Certified isolation of the three real roots of a totally real cubic.
//!
//! Every enclosure carries exact dyadic endpoints together with the strict
//! signs of f there, so membership is a checkable certificate rather than a
//! floating-point estimate. Isolation separates the roots by sampling near
//! the two critical points with integer square-root brackets; no Sturm
//! sequences or floating point are involved.

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicInterval, RoundDir};
use crate::polycubic::MonicCubic;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// One real root bracketed by exact dyadic endpoints with certified strict
/// sign change: sign(f(lo)) = sign_lo, sign(f(hi)) = sign_hi, and
/// sign_lo * sign_hi = -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    lo: Dyadic,
    hi: Dyadic,
    sign_lo: i8,
    sign_hi: i8,
}

impl RootEnclosure {
    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn sign_lo(&self) -> i8 {
        self.sign_lo
    }

    pub fn sign_hi(&self) -> i8 {
        self.sign_hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).half()
    }

    /// True iff the bracket lies strictly right of zero.
    pub fn is_strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        !self.lo.cmp_rational(x).is_gt() && !self.hi.cmp_rational(x).is_lt()
    }

    /// Interval view of the enclosure, endpoints rounded outward.
    pub fn to_interval(&self, precision: u32) -> DyadicInterval {
        DyadicInterval::new(
            self.lo.round(precision, RoundDir::Down),
            self.hi.round(precision, RoundDir::Up),
            precision,
        )
    }
}

/// The three real roots in ascending order.
#[derive(Clone, Debug)]
pub struct RootEnclosures {
    ascending: [RootEnclosure; 3],
}

impl RootEnclosures {
    pub fn ascending(&self) -> &[RootEnclosure; 3] {
        &self.ascending
    }

    pub fn into_ascending(self) -> [RootEnclosure; 3] {
        self.ascending
    }

    pub(crate) fn from_ascending(ascending: [RootEnclosure; 3]) -> Self {
        debug_assert!(ascending[0].hi <= ascending[1].lo);
        debug_assert!(ascending[1].hi <= ascending[2].lo);
        RootEnclosures { ascending }
    }
}

/// Exponent e with 2^e <= d, for d > 0.
fn floor_log2(d: &Dyadic) -> i64 {
    debug_assert!(d.signum() > 0);
    d.exponent() + d.mantissa_bits() as i64 - 1
}

/// Exponent e with 2^e <= x, for a positive rational x.
fn floor_log2_rational(x: &BigRational) -> i64 {
    debug_assert!(x.is_positive());
    let a = x.numer().bits() as i64;
    let b = x.denom().bits() as i64;
    // numer >= 2^(a-1) and denom < 2^b, so x > 2^(a-1-b).
    a - 1 - b
}

/// Isolate the three real roots of f. Fails with NotTotallyReal when the
/// discriminant is not positive. The returned brackets are disjoint, each
/// of width at most 1/256, with certified sign changes.
pub fn isolate_real_roots(f: &MonicCubic) -> Result<RootEnclosures> {
    let disc = f.discriminant();
    if !disc.is_positive() {
        return Err(Error::NotTotallyReal { disc });
    }
    let bound = f.root_bound();
    let neg_b = Dyadic::from_bigint(&-&bound);
    let pos_b = Dyadic::from_bigint(&bound);
    if f.sign_at(&neg_b) >= 0 || f.sign_at(&pos_b) <= 0 {
        return Err(Error::Inconsistency(
            "cubic root bound failed its sign check".into(),
        ));
    }
    // f' = 3X^2 + 2pX + q has two distinct real roots exactly when
    // p^2 - 3q > 0, which positive discriminant forces.
    let delta = &f.p * &f.p - BigInt::from(3) * &f.q;
    if !delta.is_positive() {
        return Err(Error::Inconsistency(
            "positive discriminant with degenerate critical points".into(),
        ));
    }

    let mut j: usize = 3;
    for _ in 0..24 {
        if let Some((m1, m2)) = separating_samples(f, &delta, j) {
            let e1 = RootEnclosure {
                lo: neg_b.clone(),
                hi: m1.clone(),
                sign_lo: -1,
                sign_hi: 1,
            };
            let e2 = RootEnclosure {
                lo: m1,
                hi: m2.clone(),
                sign_lo: 1,
                sign_hi: -1,
            };
            let e3 = RootEnclosure {
                lo: m2,
                hi: pos_b.clone(),
                sign_lo: -1,
                sign_hi: 1,
            };
            let polish = BigRational::new(BigInt::one(), BigInt::from(256));
            return Ok(RootEnclosures {
                ascending: [
                    refine_root(f, &e1, &polish),
                    refine_root(f, &e2, &polish),
                    refine_root(f, &e3, &polish),
                ],
            });
        }
        j *= 2;
    }
    Err(Error::Inconsistency(
        "critical-point separation did not converge".into(),
    ))
}

/// Try to produce dyadic points m1 < m2 near the two critical points with
/// f(m1) > 0 > f(m2). The critical points are bracketed through the integer
/// square root of delta * 4^j; both brackets have width 1/(3 * 2^j) and the
/// sampled grid at scale j+4 is fine enough to land strictly inside.
///
/// Because delta >= 1, the critical points are at least 2/3 apart, so for
/// j >= 3 a sample with the correct strict sign is separated from the outer
/// roots and certifies membership in the correct component.
fn separating_samples(f: &MonicCubic, delta: &BigInt, j: usize) -> Option<(Dyadic, Dyadic)> {
    let s_delta = (delta << (2 * j)).sqrt();
    let two_j = BigInt::one() << j;
    let three_two_j = BigInt::from(3) * &two_j;
    let neg_p_two_j = -&f.p * &two_j;

    let sample_above = |bracket_lo: BigRational| -> Dyadic {
        // Smallest grid point at scale j+4 strictly above bracket_lo; the
        // grid spacing 2^-(j+4) is below the bracket width 1/(3*2^j).
        let scale = (j + 4) as i64;
        let scaled = bracket_lo * BigRational::from_integer(BigInt::one() << (j + 4));
        let k = scaled.floor().to_integer() + 1;
        Dyadic::new(k, -scale)
    };

    let lo1 = BigRational::new(&neg_p_two_j - &s_delta - 1, three_two_j.clone());
    let m1 = sample_above(lo1);
    if f.sign_at(&m1) <= 0 {
        return None;
    }
    let lo2 = BigRational::new(&neg_p_two_j + &s_delta, three_two_j);
    let m2 = sample_above(lo2);
    if f.sign_at(&m2) >= 0 {
        return None;
    }
    if m1 < m2 {
        Some((m1, m2))
    } else {
        None
    }
}

/// Shrink an enclosure by dyadic bisection until its width is at most
/// target_width. The input bracket must contain exactly one simple root; the
/// sign invariants are preserved exactly. A bisection midpoint that hits the
/// root exactly yields a symmetric bracket around it.
pub fn refine_root(f: &MonicCubic, enc: &RootEnclosure, target_width: &BigRational) -> RootEnclosure {
    debug_assert!(target_width.is_positive());
    debug_assert_eq!(enc.sign_lo * enc.sign_hi, -1);
    let mut lo = enc.lo.clone();
    let mut hi = enc.hi.clone();
    while (&hi - &lo).cmp_rational(target_width).is_gt() {
        let mid = (&lo + &hi).half();
        let s = f.sign_at(&mid);
        if s == 0 {
            let e = floor_log2_rational(target_width) - 1;
            return bracket_exact_root(f, &mid, &lo, &hi, enc.sign_lo, enc.sign_hi, e);
        }
        if s == enc.sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootEnclosure {
        lo,
        hi,
        sign_lo: enc.sign_lo,
        sign_hi: enc.sign_hi,
    }
}

/// Shrink an enclosure until its width is at most 2^-bits times the root
/// magnitude. The bracket must contain exactly one simple nonzero root.
pub fn refine_root_relative(f: &MonicCubic, enc: &RootEnclosure, bits: u32) -> RootEnclosure {
    debug_assert_eq!(enc.sign_lo * enc.sign_hi, -1);
    let mut lo = enc.lo.clone();
    let mut hi = enc.hi.clone();
    loop {
        if lo.signum() * hi.signum() > 0 {
            let lo_abs = lo.abs();
            let hi_abs = hi.abs();
            let near = if lo_abs < hi_abs { lo_abs } else { hi_abs };
            let target = floor_log2(&near) - bits as i64;
            if (&hi - &lo) <= Dyadic::power_of_two(target) {
                return RootEnclosure {
                    lo,
                    hi,
                    sign_lo: enc.sign_lo,
                    sign_hi: enc.sign_hi,
                };
            }
        }
        let mid = (&lo + &hi).half();
        let s = f.sign_at(&mid);
        if s == 0 {
            let e = floor_log2(&mid.abs()) - bits as i64 - 1;
            return bracket_exact_root(f, &mid, &lo, &hi, enc.sign_lo, enc.sign_hi, e);
        }
        if s == enc.sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// The bisection midpoint is itself the root (necessarily simple, since the
/// bracket contains one root). Return mid +- w for a power of two w small
/// enough to stay inside the old bracket and below the requested scale, so
/// the endpoint signs still match.
fn bracket_exact_root(
    f: &MonicCubic,
    mid: &Dyadic,
    lo: &Dyadic,
    hi: &Dyadic,
    sign_lo: i8,
    sign_hi: i8,
    max_exp: i64,
) -> RootEnclosure {
    let left_gap = mid - lo;
    let right_gap = hi - mid;
    let e = floor_log2(&left_gap)
        .min(floor_log2(&right_gap))
        .min(max_exp)
        - 1;
    let w = Dyadic::power_of_two(e);
    let new_lo = mid - &w;
    let new_hi = mid + &w;
    debug_assert_eq!(f.sign_at(&new_lo), sign_lo);
    debug_assert_eq!(f.sign_at(&new_hi), sign_hi);
    RootEnclosure {
        lo: new_lo,
        hi: new_hi,
        sign_lo,
        sign_hi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(p: i64, q: i64, r: i64) -> MonicCubic {
        MonicCubic::new(BigInt::from(p), BigInt::from(q), BigInt::from(r))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn assert_in_window(e: &RootEnclosure, lo: BigRational, hi: BigRational) {
        assert!(e.lo().cmp_rational(&lo).is_ge(), "lo {:?} below {}", e.lo(), lo);
        assert!(e.hi().cmp_rational(&hi).is_le(), "hi {:?} above {}", e.hi(), hi);
    }

    #[test]
    fn isolates_family_member() {
        // a = 2, t = 10: roots near 0.04546, 0.49389, -44.53935.
        let f = cubic(44, -24, 1);
        let roots = isolate_real_roots(&f).unwrap();
        let [r1, r2, r3] = roots.ascending();
        assert_in_window(r1, rat(-45, 1), rat(-44, 1));
        assert_in_window(r2, rat(0, 1), rat(1, 16));
        assert_in_window(r3, rat(1, 16), rat(1, 2));
        for r in roots.ascending() {
            assert_eq!(r.sign_lo() * r.sign_hi(), -1);
            assert!(r.width().cmp_rational(&rat(1, 256)).is_le());
        }
    }

    #[test]
    fn isolates_classic_cyclic_cubic() {
        // X^3 - 3X + 1, discriminant 81; middle root 0.34729635533386...
        let f = cubic(0, -3, 1);
        let roots = isolate_real_roots(&f).unwrap();
        let [r1, r2, r3] = roots.ascending();
        assert_in_window(r1, rat(-2, 1), rat(-1, 1));
        assert!(r2.contains_rational(&rat(34729635, 100000000)));
        assert_in_window(r3, rat(3, 2), rat(8, 5));
    }

    #[test]
    fn rejects_complex_pair() {
        let f = cubic(-1, 0, 1);
        match isolate_real_roots(&f) {
            Err(Error::NotTotallyReal { disc }) => assert_eq!(disc, BigInt::from(-23)),
            other => panic!("expected NotTotallyReal, got {:?}", other),
        }
    }

    #[test]
    fn refinement_narrows_without_losing_the_root() {
        let f = cubic(0, -3, 1);
        let roots = isolate_real_roots(&f).unwrap();
        let mid = &roots.ascending()[1];
        let tight = refine_root(&f, mid, &BigRational::new(BigInt::one(), BigInt::from(1) << 80));
        assert!(tight.width() <= Dyadic::power_of_two(-80));
        // The root is 2 cos(4 pi / 9) = 0.3472963553338606977034...; check
        // overlap with a one-ulp bracket around the 19-digit truncation.
        let ref_lo = BigRational::new(
            "3472963553338606977".parse().unwrap(),
            "10000000000000000000".parse().unwrap(),
        );
        let ref_hi = BigRational::new(
            "3472963553338606978".parse().unwrap(),
            "10000000000000000000".parse().unwrap(),
        );
        assert!(tight.lo().cmp_rational(&ref_hi).is_le());
        assert!(tight.hi().cmp_rational(&ref_lo).is_ge());
        assert!(tight.lo() >= mid.lo() && tight.hi() <= mid.hi());
    }

    #[test]
    fn refinement_handles_exact_dyadic_root() {
        // (X - 1/2)(X^2 - 3) has a dyadic root at 1/2 but is not monic with
        // integer coefficients; instead use (X - 2)(X - 4)(X + 1) whose root
        // 2 is hit by bisection of [1, 3].
        let f = cubic(-5, 2, 8);
        let enc = RootEnclosure {
            lo: Dyadic::from_int(1),
            hi: Dyadic::from_int(3),
            sign_lo: f.sign_at(&Dyadic::from_int(1)),
            sign_hi: f.sign_at(&Dyadic::from_int(3)),
        };
        assert_eq!(enc.sign_lo * enc.sign_hi, -1);
        let tight = refine_root(&f, &enc, &rat(1, 1024));
        assert!(tight.contains_rational(&rat(2, 1)));
        assert!(tight.width().cmp_rational(&rat(1, 1024)).is_le());
    }

    #[test]
    fn relative_refinement_reaches_tiny_roots() {
        // a = 2, t = 1000: theta1 is near 1/1012, far below the initial
        // absolute polish width.
        let f = cubic(2024, -1014, 1);
        let roots = isolate_real_roots(&f).unwrap();
        let r = refine_root_relative(&f, &roots.ascending()[1], 64);
        assert!(r.is_strictly_positive());
        let w = r.width();
        let lo = r.lo();
        // width <= |root| * 2^-64 up to one bit of slack.
        assert!(w.double() <= Dyadic::power_of_two(super::floor_log2(&lo.abs()) - 63));
    }
}
