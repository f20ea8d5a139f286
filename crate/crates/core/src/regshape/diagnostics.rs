//! Taylor gap diagnostics for the b = 1 members.
//!
//! With c = 1/a and h = theta2 - c, the exact expansion of f at c gives
//! 0 = f(c) + f'(c) h + h^2 (f''(c)/2 + h), so the second gap
//! delta2 = -f(c) - f'(c) h equals h^2 (f''(c)/2 + h). The first gap uses
//! the closed forms f(c) = a^-3 and f'(c) = t + a^4 - 3a + 3a^-2.

use crate::error::{Error, Result};
use crate::exactnum::DyadicInterval;
use crate::orders::CubicOrder;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// The four gap quantities of a b = 1 member at one precision.
#[derive(Clone, Debug)]
pub struct TaylorDiagnostics {
    /// theta1 * (t + a(a^3 - 1)) - 1.
    pub delta1: DyadicInterval,
    /// -f(1/a) - f'(1/a) (theta2 - 1/a).
    pub delta2: DyadicInterval,
    /// t * theta1.
    pub eps1: DyadicInterval,
    /// t * (a theta2 - 1).
    pub eps2: DyadicInterval,
}

pub fn taylor_diagnostics(order: &CubicOrder, precision: u32) -> Result<TaylorDiagnostics> {
    let params = order.params();
    if params.b != BigInt::one() {
        return Err(Error::Domain(
            "gap diagnostics are defined for the b = 1 members".into(),
        ));
    }
    let a = &params.a;
    let t = &params.t;
    let theta1 = order.theta1().to_interval(precision);
    let theta2 = order.theta2().to_interval(precision);

    let eps1 = theta1.scale_bigint(t);
    let eps2 = theta2
        .scale_bigint(a)
        .sub(&DyadicInterval::from_int(1, precision))
        .scale_bigint(t);

    let growth = t + a * (a.pow(3) - BigInt::one());
    let delta1 = theta1
        .scale_bigint(&growth)
        .sub(&DyadicInterval::from_int(1, precision));

    // f(1/a) = a^-3 and f'(1/a) = t + a^4 - 3a + 3a^-2, both exact.
    let a_rat = BigRational::from_integer(a.clone());
    let inv_a = a_rat.recip();
    let f_at = &inv_a * &inv_a * &inv_a;
    let fprime_at = BigRational::from_integer(t + a.pow(4) - BigInt::from(3) * a)
        + BigRational::from_integer(BigInt::from(3)) * &inv_a * &inv_a;
    let h = theta2.add_rational(&-&inv_a);
    let delta2 = DyadicInterval::enclose_rational(&-&f_at, precision)
        .sub(&DyadicInterval::enclose_rational(&fprime_at, precision).mul(&h));

    Ok(TaylorDiagnostics {
        delta1,
        delta2,
        eps1,
        eps2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::FamilyParams;

    fn diagnostics(a: i64, t: i64, bits: u32) -> TaylorDiagnostics {
        let params = FamilyParams::new(a.into(), 1.into(), t.into()).unwrap();
        let order = CubicOrder::new(params).unwrap().with_refined_roots(bits);
        taylor_diagnostics(&order, bits).unwrap()
    }

    fn assert_close(iv: &DyadicInterval, target: f64, tol: f64) {
        let mid = iv.to_f64_mid();
        assert!(
            (mid - target).abs() < tol,
            "midpoint {mid} not within {tol} of {target}"
        );
    }

    #[test]
    fn worked_instance_gaps() {
        let d = diagnostics(2, 10, 160);
        assert_close(&d.eps1, 0.4545924268, 1e-9);
        assert_close(&d.eps2, -0.1221166918, 1e-9);
        assert_close(&d.delta1, 0.0910218242, 1e-9);
        assert_close(&d.delta2, 0.0016960677, 1e-9);
        assert!(d.eps1.is_strictly_positive());
        assert!(d.eps2.is_strictly_negative());
        assert!(d.delta1.is_strictly_positive());
    }

    #[test]
    fn second_gap_matches_the_taylor_tail() {
        // delta2 = h^2 (3/a + p + h) exactly, h = theta2 - 1/a.
        for (a, t) in [(2i64, 10i64), (3, 50), (5, 1000)] {
            let params = FamilyParams::new(a.into(), 1.into(), t.into()).unwrap();
            let order = CubicOrder::new(params).unwrap().with_refined_roots(200);
            let d = taylor_diagnostics(&order, 200).unwrap();
            let inv_a = BigRational::new(BigInt::one(), BigInt::from(a));
            let h = order.theta2().to_interval(200).add_rational(&-&inv_a);
            let half_fpp = BigRational::from_integer(order.poly().p.clone())
                + BigRational::from_integer(BigInt::from(3)) * &inv_a;
            let tail = h
                .square()
                .mul(&h.add_rational(&half_fpp));
            assert!(d.delta2.overlaps(&tail), "a={a} t={t}");
        }
    }

    #[test]
    fn general_members_are_rejected() {
        let params = FamilyParams::new(2.into(), 7.into(), 1.into()).unwrap();
        let order = CubicOrder::new(params).unwrap();
        assert!(matches!(
            taylor_diagnostics(&order, 96),
            Err(Error::Domain(_))
        ));
    }
}
