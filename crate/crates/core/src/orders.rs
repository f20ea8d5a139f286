//! The two-parameter family of totally real cubic orders Z[theta] whose
//! unit group is generated by the linear units theta and a theta - b.
//!
//! Construction is exact end to end: coefficient integrality is verified
//! rather than assumed, irreducibility comes with closed-form witnesses,
//! and the root labels theta1 (smallest magnitude), theta2 (nearest b/a),
//! theta3 (the remaining root) are certified by disjoint enclosures.

use crate::error::{Error, Result};
use crate::exactnum::{ceil_qth_root_of_ratio, integer_nth_root_floor};
use crate::polycubic::{
    isolate_real_roots, refine_root, MonicCubic, RootEnclosure, RootEnclosures,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// True iff a^3 = 1 (mod b) and b^3 = 1 (mod a). Both arguments must be
/// nonzero; every congruence mod 1 holds.
pub fn is_mutually_cubic(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let a_cubed = a * a * a;
    let b_cubed = b * b * b;
    (a_cubed - BigInt::one()).is_multiple_of(b) && (b_cubed - BigInt::one()).is_multiple_of(a)
}

/// Validated parameters (a, b, t) of a family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub a: BigInt,
    pub b: BigInt,
    pub t: BigInt,
}

impl FamilyParams {
    pub fn new(a: BigInt, b: BigInt, t: BigInt) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidParameter("a must be positive".into()));
        }
        if b.is_zero() {
            return Err(Error::InvalidParameter("b must be nonzero".into()));
        }
        if !a.gcd(&b).is_one() {
            return Err(Error::NotCoprime { a, b });
        }
        if !is_mutually_cubic(&a, &b) {
            return Err(Error::NotMutuallyCubic { a, b });
        }
        Ok(FamilyParams { a, b, t })
    }
}

/// X^3 + ((a^3-1)^2 - b^3)/(a b^2) X^2 + tX(aX - b) - a(a^3-1)/b X + 1,
/// with both rational coefficients verified integral.
pub fn family_polynomial(params: &FamilyParams) -> Result<MonicCubic> {
    let FamilyParams { a, b, t } = params;
    let a3 = a * a * a;
    let shifted = &a3 - BigInt::one();
    let p_num = &shifted * &shifted - b * b * b;
    let p_den = a * b * b;
    let (p_quot, p_rem) = p_num.div_rem(&p_den);
    if !p_rem.is_zero() {
        return Err(Error::NonIntegralCoefficient {
            power: 2,
            num: p_num,
            den: p_den,
        });
    }
    let q_num = -(a * &shifted);
    let (q_quot, q_rem) = q_num.div_rem(b);
    if !q_rem.is_zero() {
        return Err(Error::NonIntegralCoefficient {
            power: 1,
            num: q_num,
            den: b.clone(),
        });
    }
    Ok(MonicCubic::new(p_quot + t * a, q_quot - t * b, BigInt::one()))
}

/// The b = 1 member: X^3 + a^2(a^3-2) X^2 - a(a^3-1) X + 1 + tX(aX - 1).
pub fn ft_polynomial(a: &BigInt, t: &BigInt) -> MonicCubic {
    let a2 = a * a;
    let a3 = &a2 * a;
    MonicCubic::new(
        &a2 * (&a3 - BigInt::from(2)) + t * a,
        -(a * (&a3 - BigInt::one())) - t,
        BigInt::one(),
    )
}

/// Irreducibility verdict for a b = 1 member, together with the exact
/// values f(1) and f(-1) used as witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityWitness {
    pub irreducible: bool,
    pub at_one: BigInt,
    pub at_minus_one: BigInt,
}

/// Evaluate the witnesses for f = ft_polynomial(a, t) and cross-check them
/// against the closed forms
///   f(1)  = a^5 - a^4 - 2a^2 + a + t(a - 1) + 2,
///   f(-1) = a^5 + a^4 - 2a^2 - a + t(a + 1).
/// A mismatch means the construction itself is broken.
pub fn irreducibility_witness(f: &MonicCubic, a: &BigInt, t: &BigInt) -> Result<IrreducibilityWitness> {
    let at_one = f.eval_bigint(&BigInt::one());
    let at_minus_one = f.eval_bigint(&BigInt::from(-1));
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a5 = &a4 * a;
    let closed_one = &a5 - &a4 - BigInt::from(2) * &a2 + a + t * (a - BigInt::one()) + BigInt::from(2);
    let closed_minus = &a5 + &a4 - BigInt::from(2) * &a2 - a + t * (a + BigInt::one());
    if at_one != closed_one || at_minus_one != closed_minus {
        return Err(Error::Inconsistency(
            "witness values disagree with their closed forms".into(),
        ));
    }
    Ok(IrreducibilityWitness {
        irreducible: f.irreducible_over_q(),
        at_one,
        at_minus_one,
    })
}

/// A certified order Z[theta1]: validated parameters, the defining
/// polynomial, its positive discriminant, and labeled disjoint root
/// enclosures. labels[i] is the index of theta(i+1) in ascending order.
#[derive(Clone, Debug)]
pub struct CubicOrder {
    params: FamilyParams,
    poly: MonicCubic,
    disc: BigInt,
    roots: RootEnclosures,
    labels: [usize; 3],
}

impl CubicOrder {
    pub fn new(params: FamilyParams) -> Result<Self> {
        let poly = family_polynomial(&params)?;
        if params.b.is_one() {
            let witness = irreducibility_witness(&poly, &params.a, &params.t)?;
            if !witness.irreducible {
                return Err(Error::Reducible);
            }
        } else if !poly.irreducible_over_q() {
            return Err(Error::Reducible);
        }
        let disc = poly.discriminant();
        let isolated = isolate_real_roots(&poly)?;
        // Make every enclosure sign-definite (theta1 sits within 1/(ta) of
        // zero, well inside the isolation polish width for large t).
        let [e0, e1, e2] = isolated.into_ascending();
        let refined = [
            crate::polycubic::refine_root_relative(&poly, &e0, 8),
            crate::polycubic::refine_root_relative(&poly, &e1, 8),
            crate::polycubic::refine_root_relative(&poly, &e2, 8),
        ];
        let target = BigRational::new(params.b.clone(), params.a.clone());
        let labels = label_roots(&poly, &refined, &target)?;
        let order = CubicOrder {
            params,
            poly,
            disc,
            roots: RootEnclosures::from_ascending(refined),
            labels,
        };
        if order.params.b.is_one() {
            let ok = order.theta1().is_strictly_positive()
                && order.theta2().is_strictly_positive()
                && order.theta3().is_strictly_negative();
            if !ok {
                return Err(Error::Domain(
                    "b = 1 member with unexpected root sign pattern".into(),
                ));
            }
        }
        Ok(order)
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn poly(&self) -> &MonicCubic {
        &self.poly
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn roots(&self) -> &RootEnclosures {
        &self.roots
    }

    /// Root of smallest absolute value.
    pub fn theta1(&self) -> &RootEnclosure {
        &self.roots.ascending()[self.labels[0]]
    }

    /// Root nearest b/a.
    pub fn theta2(&self) -> &RootEnclosure {
        &self.roots.ascending()[self.labels[1]]
    }

    /// The remaining root.
    pub fn theta3(&self) -> &RootEnclosure {
        &self.roots.ascending()[self.labels[2]]
    }

    /// The same order with every root enclosure shrunk to relative width
    /// 2^-bits. Labels are preserved; refinement never widens.
    pub fn with_refined_roots(&self, bits: u32) -> Self {
        let asc = self.roots.ascending();
        let refined = [
            crate::polycubic::refine_root_relative(&self.poly, &asc[0], bits),
            crate::polycubic::refine_root_relative(&self.poly, &asc[1], bits),
            crate::polycubic::refine_root_relative(&self.poly, &asc[2], bits),
        ];
        CubicOrder {
            params: self.params.clone(),
            poly: self.poly.clone(),
            disc: self.disc.clone(),
            roots: RootEnclosures::from_ascending(refined),
            labels: self.labels,
        }
    }
}

/// Certified labeling. Returns [i1, i2, i3]: ascending indices of the root
/// of smallest magnitude, the root nearest target among the remaining two,
/// and the last root. Separation always terminates for irreducible f: a
/// magnitude or distance tie would force a rational root.
fn label_roots(
    poly: &MonicCubic,
    enclosures: &[RootEnclosure; 3],
    target: &BigRational,
) -> Result<[usize; 3]> {
    let mut current: [RootEnclosure; 3] = enclosures.clone();
    let mut width = BigRational::new(BigInt::one(), BigInt::from(512));

    let abs_bracket = |e: &RootEnclosure| -> (BigRational, BigRational) {
        let lo = e.lo().to_rational();
        let hi = e.hi().to_rational();
        if !lo.is_negative() {
            (lo, hi)
        } else if !hi.is_positive() {
            (-hi, -lo)
        } else {
            (BigRational::zero(), (-lo).max(hi))
        }
    };
    let dist_bracket = |e: &RootEnclosure| -> (BigRational, BigRational) {
        let lo = e.lo().to_rational() - target;
        let hi = e.hi().to_rational() - target;
        if !lo.is_negative() {
            (lo, hi)
        } else if !hi.is_positive() {
            (-hi, -lo)
        } else {
            (BigRational::zero(), (-lo).max(hi))
        }
    };

    for _ in 0..64 {
        let abs: Vec<(BigRational, BigRational)> = current.iter().map(&abs_bracket).collect();
        let smallest = (0..3).find(|&i| {
            (0..3).all(|j| j == i || abs[i].1 < abs[j].0)
        });
        if let Some(i1) = smallest {
            let rest: Vec<usize> = (0..3).filter(|&j| j != i1).collect();
            let d0 = dist_bracket(&current[rest[0]]);
            let d1 = dist_bracket(&current[rest[1]]);
            if d0.1 < d1.0 {
                return Ok([i1, rest[0], rest[1]]);
            }
            if d1.1 < d0.0 {
                return Ok([i1, rest[1], rest[0]]);
            }
        }
        for e in current.iter_mut() {
            *e = refine_root(poly, e, &width);
        }
        width /= BigRational::from_integer(BigInt::from(2));
    }
    Err(Error::Inconsistency(
        "root labeling failed to separate magnitudes and distances".into(),
    ))
}

/// Exact norms of the two candidate units: N(theta) = -r and
/// N(a theta - b) = -a^3 f(b/a). Errors unless both are +-1.
pub fn unit_norm_check(order: &CubicOrder) -> Result<(BigRational, BigRational)> {
    let FamilyParams { a, b, .. } = order.params();
    let norm_theta = BigRational::from_integer(-order.poly().r.clone());
    let at_ba = order.poly().eval_rational(&BigRational::new(b.clone(), a.clone()));
    let norm_linear = -BigRational::from_integer(a * a * a) * at_ba;
    let one = BigRational::one();
    if norm_theta != one && norm_theta != -one.clone() {
        return Err(Error::NotAUnit {
            element: "theta".into(),
            norm: norm_theta.to_string(),
        });
    }
    if norm_linear != one && norm_linear != -one {
        return Err(Error::NotAUnit {
            element: format!("{}*theta-{}", a, b),
            norm: norm_linear.to_string(),
        });
    }
    Ok((norm_theta, norm_linear))
}

/// Growth schedule a_t = ceil(c t^alpha) with its Diophantine exponent k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSchedule {
    alpha: BigRational,
    c: BigRational,
    k: u32,
}

impl AlphaSchedule {
    /// Requires 0 < alpha < 1/4 and 0 < c < 1.
    pub fn new(alpha: BigRational, c: BigRational) -> Result<Self> {
        if !alpha.is_positive() || alpha >= BigRational::new(BigInt::one(), BigInt::from(4)) {
            return Err(Error::InvalidParameter(
                "alpha must lie strictly between 0 and 1/4".into(),
            ));
        }
        if !c.is_positive() || c >= BigRational::one() {
            return Err(Error::InvalidParameter(
                "c must lie strictly between 0 and 1".into(),
            ));
        }
        let k = choose_k(&alpha)?;
        Ok(AlphaSchedule { alpha, c, k })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Largest integer k <= 1/alpha - 3, clamped to at least 1; the largest
/// admissible exponent gives the tightest root bound a^-k.
pub fn choose_k(alpha: &BigRational) -> Result<u32> {
    if !alpha.is_positive() || alpha >= &BigRational::new(BigInt::one(), BigInt::from(4)) {
        return Err(Error::InvalidParameter(
            "alpha must lie strictly between 0 and 1/4".into(),
        ));
    }
    let num = alpha.numer();
    let den = alpha.denom();
    let k = (den - BigInt::from(3) * num).div_floor(num).max(BigInt::one());
    k.to_u32()
        .ok_or_else(|| Error::InvalidParameter("k does not fit in u32".into()))
}

/// The scheduled a_t, plus whether it landed inside [c t^alpha, t^alpha].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduledA {
    pub a_t: BigInt,
    pub in_range: bool,
}

/// a_t = ceil(c t^alpha), exactly: for alpha = p/q this is the ceiling of
/// the q-th root of c^q t^p. in_range is false when a_t overshoots
/// floor(t^alpha), which happens only for small t.
pub fn schedule_a(t: &BigInt, sched: &AlphaSchedule) -> Result<ScheduledA> {
    schedule_a_with(t, sched.alpha(), sched.c())
}

/// As schedule_a, but accepts any 0 < alpha < 1 and 0 < c <= 1, so exact
/// powers like c = 1 can be exercised directly.
pub fn schedule_a_with(t: &BigInt, alpha: &BigRational, c: &BigRational) -> Result<ScheduledA> {
    if t < &BigInt::one() {
        return Err(Error::InvalidParameter("schedule requires t >= 1".into()));
    }
    if !alpha.is_positive() || alpha >= &BigRational::one() {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1)".into()));
    }
    if !c.is_positive() || c > &BigRational::one() {
        return Err(Error::InvalidParameter("c must lie in (0, 1]".into()));
    }
    let p = alpha
        .numer()
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("alpha numerator too large".into()))?;
    let q = alpha
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("alpha denominator too large".into()))?;
    let t_pow = t.pow(p);
    let num = c.numer().pow(q) * &t_pow;
    let den = c.denom().pow(q);
    let a_t = ceil_qth_root_of_ratio(&num, &den, q)?;
    let cap = integer_nth_root_floor(&t_pow, q)?;
    Ok(ScheduledA {
        in_range: a_t <= cap,
        a_t,
    })
}

/// Sign pattern of the root-location bound |theta1| <= a^-k and
/// a^-1 - a^-k <= theta2 <= a^-1, decided by exact rational evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBoundCheck {
    pub holds: bool,
    /// sign of f(a^-k); negative brackets theta1 inside (0, a^-k).
    pub sign_at_small: i8,
    /// sign of f(a^-1); always positive since f(a^-1) = a^-3 exactly.
    pub sign_at_inverse: i8,
    /// sign of f(a^-1 - a^-k); negative brackets theta2 from the left.
    pub sign_at_left: i8,
}

/// Decide the root-location bound for a b = 1 member at exponent k. Also
/// recomputes the exact identity f(a^-1) = a^-3 and refuses on mismatch.
pub fn verify_root_bound(order: &CubicOrder, k: u32) -> Result<RootBoundCheck> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let FamilyParams { a, b, .. } = order.params();
    if !b.is_one() {
        return Err(Error::Domain("root bound applies to b = 1 members".into()));
    }
    let inv = BigRational::new(BigInt::one(), a.clone());
    let inv_k = BigRational::new(BigInt::one(), a.pow(k));
    let at_inverse = order.poly().eval_rational(&inv);
    if at_inverse != BigRational::new(BigInt::one(), a.pow(3)) {
        return Err(Error::Inconsistency(
            "f(1/a) differs from its exact value 1/a^3".into(),
        ));
    }
    let sign_at_small = order.poly().sign_at_rational(&inv_k);
    let sign_at_inverse = 1i8;
    let sign_at_left = order.poly().sign_at_rational(&(&inv - &inv_k));
    Ok(RootBoundCheck {
        holds: sign_at_small < 0 && sign_at_left < 0,
        sign_at_small,
        sign_at_inverse,
        sign_at_left,
    })
}
