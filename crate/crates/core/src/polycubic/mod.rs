//! Monic integer cubics: exact evaluation, discriminants, rational-root
//! irreducibility testing, and certified real-root isolation.

pub mod isolate;

pub use isolate::{isolate_real_roots, refine_root, refine_root_relative, RootEnclosure, RootEnclosures};

use crate::exactnum::Dyadic;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// X^3 + p X^2 + q X + r with exact integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MonicCubic {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
}

impl MonicCubic {
    pub fn new(p: BigInt, q: BigInt, r: BigInt) -> Self {
        MonicCubic { p, q, r }
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let p = BigRational::from_integer(self.p.clone());
        let q = BigRational::from_integer(self.q.clone());
        let r = BigRational::from_integer(self.r.clone());
        ((x + p) * x + q) * x + r
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        ((x + &self.p) * x + &self.q) * x + &self.r
    }

    /// Exact dyadic Horner evaluation.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        let p = Dyadic::from_bigint(&self.p);
        let q = Dyadic::from_bigint(&self.q);
        let r = Dyadic::from_bigint(&self.r);
        let mut acc = x + &p;
        acc = &acc * x;
        acc = &acc + &q;
        acc = &acc * x;
        &acc + &r
    }

    /// Sign of f at a dyadic point, computed exactly.
    pub fn sign_at(&self, x: &Dyadic) -> i8 {
        self.eval_dyadic(x).signum()
    }

    pub fn sign_at_rational(&self, x: &BigRational) -> i8 {
        let v = self.eval_rational(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// f' = 3X^2 + 2pX + q evaluated exactly.
    pub fn derivative_at_rational(&self, x: &BigRational) -> BigRational {
        let p = BigRational::from_integer(self.p.clone());
        let q = BigRational::from_integer(self.q.clone());
        (x * BigRational::from_integer(BigInt::from(3)) + p * BigRational::from_integer(BigInt::from(2))) * x + q
    }

    /// 18pqr - 4p^3 r + p^2 q^2 - 4q^3 - 27r^2, the squared Vandermonde of
    /// the roots.
    pub fn discriminant(&self) -> BigInt {
        let MonicCubic { p, q, r } = self;
        BigInt::from(18) * p * q * r - BigInt::from(4) * p * p * p * r + p * p * q * q
            - BigInt::from(4) * q * q * q
            - BigInt::from(27) * r * r
    }

    /// Cauchy-style bound: all real roots lie strictly inside (-B, B).
    pub fn root_bound(&self) -> BigInt {
        BigInt::one() + self.p.abs().max(self.q.abs()).max(self.r.abs())
    }

    /// All integer roots, found by isolating real roots to width below one
    /// and testing the integer candidates exactly. A rational root of a
    /// monic integer polynomial is an integer, so this decides rational
    /// roots as well.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let mut found = Vec::new();
        let push_candidates = |lo: &Dyadic, hi: &Dyadic, out: &mut Vec<BigInt>| {
            let a = lo.floor_bigint();
            let b = hi.floor_bigint() + 1;
            let mut n = a;
            while n <= b {
                if self.eval_bigint(&n).is_zero() && !out.contains(&n) {
                    out.push(n.clone());
                }
                n += 1;
            }
        };
        let disc = self.discriminant();
        if disc.is_positive() {
            if let Ok(enclosures) = isolate::isolate_real_roots(self) {
                for e in enclosures.ascending() {
                    let e = isolate::refine_root(self, e, &BigRational::new(BigInt::one(), BigInt::from(4)));
                    push_candidates(e.lo(), e.hi(), &mut found);
                }
            }
            return found;
        }
        // One real root (disc < 0) or a repeated root (disc = 0): bisect the
        // Cauchy bracket; with a repeated root present fall back to scanning
        // near both critical points as well.
        let bound = self.root_bound();
        let mut lo = Dyadic::from_bigint(&-&bound);
        let mut hi = Dyadic::from_bigint(&bound);
        if self.sign_at(&lo) < 0 && self.sign_at(&hi) > 0 {
            while (&hi - &lo).cmp_rational(&BigRational::new(BigInt::one(), BigInt::from(2))).is_gt() {
                let mid = (&lo + &hi).half();
                match self.sign_at(&mid) {
                    0 => {
                        lo = mid.clone();
                        hi = mid;
                        break;
                    }
                    s if s < 0 => lo = mid,
                    _ => hi = mid,
                }
            }
            push_candidates(&lo.clone(), &hi.clone(), &mut found);
        }
        if disc.is_zero() {
            // Repeated roots are roots of gcd(f, f'); just scan the full
            // integer range of stationary values via the quadratic formula
            // bracket on f' = 3X^2 + 2pX + q.
            let delta = &self.p * &self.p - BigInt::from(3) * &self.q;
            if !delta.is_negative() {
                let s = delta.sqrt();
                for cand_num in [-&self.p - &s, -&self.p + &s] {
                    for off in [-1i64, 0, 1] {
                        let n: BigInt = (&cand_num + BigInt::from(3 * off)) / 3;
                        if self.eval_bigint(&n).is_zero() && !found.contains(&n) {
                            found.push(n);
                        }
                    }
                }
            }
        }
        found.sort();
        found
    }

    /// True iff f has no rational root; for a cubic this is irreducibility
    /// over the rationals.
    pub fn irreducible_over_q(&self) -> bool {
        if self.r.is_zero() {
            return false;
        }
        if self.r.abs().is_one() {
            // Integer roots divide r, so only +-1 can occur.
            return !self.eval_bigint(&BigInt::one()).is_zero()
                && !self.eval_bigint(&BigInt::from(-1)).is_zero();
        }
        if self.discriminant().is_zero() {
            // A repeated root of an integer monic cubic is rational.
            return false;
        }
        self.integer_roots().is_empty()
    }
}

impl fmt::Debug for MonicCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^3 + ({})X^2 + ({})X + ({})", self.p, self.q, self.r)
    }
}

impl fmt::Display for MonicCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
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

    #[test]
    fn evaluation_examples() {
        let f = cubic(44, -24, 1);
        assert_eq!(f.eval_rational(&rat(1, 1)), rat(22, 1));
        assert_eq!(f.eval_rational(&rat(-1, 1)), rat(68, 1));
        assert_eq!(f.eval_rational(&rat(0, 1)), rat(1, 1));
        assert_eq!(f.eval_rational(&rat(1, 2)), rat(1, 8));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(cubic(0, -3, 1).discriminant(), BigInt::from(81));
        assert_eq!(cubic(44, -24, 1).discriminant(), BigInt::from(810661));
        assert_eq!(cubic(-1, 0, 1).discriminant(), BigInt::from(-23));
    }

    #[test]
    fn rational_root_testing() {
        assert!(cubic(44, -24, 1).irreducible_over_q());
        assert!(!cubic(-1, 0, 0).irreducible_over_q());
        assert!(!cubic(0, 0, -1).irreducible_over_q());
        // (X-1)(X-2)(X-3) = X^3 - 6X^2 + 11X - 6
        assert!(!cubic(-6, 11, -6).irreducible_over_q());
        // (X-2)^2 (X+1) = X^3 - 3X^2 + 0X + 4
        assert!(!cubic(-3, 0, 4).irreducible_over_q());
        // X^3 - 2 has no rational root.
        assert!(cubic(0, 0, -2).irreducible_over_q());
        // X^3 - 4X + 2, irreducible with |r| = 2 and three real roots.
        assert!(cubic(0, -4, 2).irreducible_over_q());
    }

    #[test]
    fn integer_roots_found_exactly() {
        let f = cubic(-6, 11, -6);
        assert_eq!(
            f.integer_roots(),
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]
        );
        let g = cubic(0, 0, -8);
        assert_eq!(g.integer_roots(), vec![BigInt::from(2)]);
        let h = cubic(-3, 0, 4);
        assert_eq!(h.integer_roots(), vec![BigInt::from(-1), BigInt::from(2)]);
    }
}
