//! End-to-end drivers: from an order to a certified fundamental pair and
//! a reduced shape point, escalating precision until every comparison in
//! the chain is decided.

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicInterval};
use crate::orders::{unit_norm_check, CubicOrder};
use crate::regshape::logemb::{
    cusick_certify, cusick_ratio_upper, log_embedding, regulator_pair, Certificate, CusickOutcome,
    LinearUnit, LogEmbedding,
};
use crate::regshape::plane::{basis_to_tau, PlaneBasis};
use crate::regshape::reduce::{reduce_in_domain, ReducedShape, UpperHalfPoint};
use num_rational::BigRational;

const START_BITS: u32 = 128;
const CAP_BITS: u32 = 8192;
const ROOT_GUARD_BITS: u32 = 24;
const REDUCE_STEPS: u32 = 256;

/// A fully certified shape record at the precision that decided it.
#[derive(Clone, Debug)]
pub struct ShapeComputation {
    pub tau: UpperHalfPoint,
    pub reduced: ReducedShape,
    pub rprime: DyadicInterval,
    pub ratio_upper: Dyadic,
    pub certificate: Certificate,
    pub precision_bits: u32,
}

/// Certification result; Undecided is reported, not turned into an error,
/// so callers can surface it as an inconclusive record.
#[derive(Clone, Debug)]
pub struct CertifyResult {
    pub rprime: DyadicInterval,
    pub ratio_upper: Dyadic,
    pub outcome: CusickOutcome,
    pub precision_bits: u32,
}

enum AttemptFail {
    Escalate(String),
    Fatal(Error),
}

fn classify(e: Error) -> AttemptFail {
    match e {
        Error::NeedsPrecision { context, .. } => AttemptFail::Escalate(context),
        other => AttemptFail::Fatal(other),
    }
}

#[derive(Clone, Copy)]
enum Route {
    Similarity,
    Gram,
}

fn embeddings_at(
    order: &CubicOrder,
    prec: u32,
) -> std::result::Result<(LogEmbedding, LogEmbedding), AttemptFail> {
    let refined = order.with_refined_roots(prec + ROOT_GUARD_BITS);
    let params = refined.params();
    let theta = LinearUnit::theta();
    let linear = LinearUnit::new(params.a.clone(), params.b.clone());
    let l1 = log_embedding(&refined, &theta, prec).map_err(classify)?;
    let l2 = log_embedding(&refined, &linear, prec).map_err(classify)?;
    Ok((l1, l2))
}

fn precision_schedule() -> impl Iterator<Item = u32> {
    std::iter::successors(Some(START_BITS), |p| {
        if *p < CAP_BITS {
            Some((*p * 2).min(CAP_BITS))
        } else {
            None
        }
    })
}

/// Certify the pair (theta, a theta - b) as fundamental. FailedThreshold
/// is definitive at the precision where the comparison resolved; a pair
/// still Undecided at the precision cap is reported as such.
pub fn certify_order(order: &CubicOrder) -> Result<CertifyResult> {
    unit_norm_check(order)?;
    let mut last: Option<CertifyResult> = None;
    for prec in precision_schedule() {
        let (l1, l2) = match embeddings_at(order, prec) {
            Ok(pair) => pair,
            Err(AttemptFail::Escalate(_)) => continue,
            Err(AttemptFail::Fatal(e)) => return Err(e),
        };
        let rprime = regulator_pair(&l1, &l2);
        let outcome = cusick_certify(order.disc(), &rprime)?;
        let ratio_upper = cusick_ratio_upper(order.disc(), &rprime)?;
        let result = CertifyResult {
            rprime,
            ratio_upper,
            outcome,
            precision_bits: prec,
        };
        if outcome != CusickOutcome::Undecided {
            return Ok(result);
        }
        last = Some(result);
    }
    last.ok_or_else(|| Error::PrecisionExhausted {
        cap: CAP_BITS,
        context: "no certification attempt produced embeddings".into(),
    })
}

/// Compute the reduced shape of the unit lattice via the planar
/// similarity. Requires the certificate to hold: a pair that definitively
/// fails the threshold is an error, not a record.
pub fn shape_of_order(order: &CubicOrder, eps: &BigRational) -> Result<ShapeComputation> {
    shape_with_route(order, eps, Route::Similarity)
}

/// Same computation through the Gram matrix of the log embeddings,
/// bypassing the similarity; an independent route for cross-checking.
pub fn shape_via_gram(order: &CubicOrder, eps: &BigRational) -> Result<ShapeComputation> {
    shape_with_route(order, eps, Route::Gram)
}

fn shape_with_route(
    order: &CubicOrder,
    eps: &BigRational,
    route: Route,
) -> Result<ShapeComputation> {
    unit_norm_check(order)?;
    let mut last_context = String::from("no attempt ran");
    for prec in precision_schedule() {
        match attempt_shape(order, prec, eps, route) {
            Ok(shape) => return Ok(shape),
            Err(AttemptFail::Escalate(ctx)) => last_context = ctx,
            Err(AttemptFail::Fatal(e)) => return Err(e),
        }
    }
    Err(Error::PrecisionExhausted {
        cap: CAP_BITS,
        context: last_context,
    })
}

fn attempt_shape(
    order: &CubicOrder,
    prec: u32,
    eps: &BigRational,
    route: Route,
) -> std::result::Result<ShapeComputation, AttemptFail> {
    let (l1, l2) = embeddings_at(order, prec)?;
    let rprime = regulator_pair(&l1, &l2);
    let certificate = match cusick_certify(order.disc(), &rprime).map_err(AttemptFail::Fatal)? {
        CusickOutcome::Certified => Certificate::CertifiedFundamental,
        CusickOutcome::FailedThreshold => {
            return Err(AttemptFail::Fatal(Error::NotCertified(format!(
                "candidate pair fails the regulator threshold for disc {}",
                order.disc()
            ))));
        }
        CusickOutcome::Undecided => {
            return Err(AttemptFail::Escalate(
                "certificate comparison undecided".into(),
            ));
        }
    };
    let ratio_upper = cusick_ratio_upper(order.disc(), &rprime).map_err(AttemptFail::Fatal)?;
    let tau = match route {
        Route::Similarity => {
            let basis = PlaneBasis::from_embeddings(&l1, &l2);
            let (tau, _swapped) = basis_to_tau(&basis).map_err(classify)?;
            tau
        }
        Route::Gram => gram_tau(&l1, &l2)?,
    };
    let reduced = reduce_in_domain(&tau, REDUCE_STEPS).map_err(classify)?;
    let wx = reduced.tau.x().width().to_rational();
    let wy = reduced.tau.y().width().to_rational();
    if &wx > eps || &wy > eps {
        return Err(AttemptFail::Escalate(format!(
            "reduced point wider than eps at {prec} bits"
        )));
    }
    Ok(ShapeComputation {
        tau,
        reduced,
        rprime,
        ratio_upper,
        certificate,
        precision_bits: prec,
    })
}

fn dot3(u: &LogEmbedding, v: &LogEmbedding) -> DyadicInterval {
    u.components[0]
        .mul(&v.components[0])
        .add(&u.components[1].mul(&v.components[1]))
        .add(&u.components[2].mul(&v.components[2]))
}

/// tau from the Gram matrix: x = G12/G11, y = sqrt(det G)/G11. The Gram
/// matrix of the 3D log vectors is twice the planar one, and the ratio
/// cancels the factor.
fn gram_tau(l1: &LogEmbedding, l2: &LogEmbedding) -> std::result::Result<UpperHalfPoint, AttemptFail> {
    let g11 = dot3(l1, l1);
    let g12 = dot3(l1, l2);
    let g22 = dot3(l2, l2);
    if !g11.is_strictly_positive() {
        return Err(AttemptFail::Escalate(
            "Gram diagonal not certified positive".into(),
        ));
    }
    let disc2 = g11.mul(&g22).sub(&g12.square());
    if !disc2.is_strictly_positive() {
        return Err(AttemptFail::Escalate(
            "Gram determinant not certified positive".into(),
        ));
    }
    let y = disc2.sqrt().map_err(classify)?.div(&g11).map_err(classify)?;
    let x = g12.div(&g11).map_err(classify)?;
    UpperHalfPoint::new(x, y).map_err(classify)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::FamilyParams;
    use crate::regshape::reduce::Mat2;
    use num_bigint::BigInt;

    fn order(a: i64, b: i64, t: i64) -> CubicOrder {
        let params = FamilyParams::new(a.into(), b.into(), t.into()).unwrap();
        CubicOrder::new(params).unwrap()
    }

    fn default_eps() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(1u64 << 30))
    }

    fn close(iv: &DyadicInterval, t: f64, tol: f64) -> bool {
        (iv.to_f64_mid() - t).abs() < tol
    }

    #[test]
    fn worked_instance_shape() {
        let shape = shape_of_order(&order(2, 1, 10), &default_eps()).unwrap();
        assert_eq!(shape.certificate, Certificate::CertifiedFundamental);
        assert_eq!(shape.precision_bits, START_BITS);
        assert!(close(&shape.tau.x(), 0.837541, 5e-4));
        assert!(close(&shape.tau.y(), 0.959357, 5e-4));
        assert!(close(&shape.reduced.tau.x(), 0.171595, 5e-4));
        assert!(close(&shape.reduced.tau.y(), 1.013306, 5e-4));
        let st_inv = Mat2 {
            m: [
                [BigInt::from(0), BigInt::from(-1)],
                [BigInt::from(1), BigInt::from(-1)],
            ],
        };
        assert_eq!(shape.reduced.g, st_inv);
        assert!(close(&shape.rprime, 13.5499, 1e-3));
        assert!((shape.ratio_upper.to_f64() - 0.09075).abs() < 5e-4);
    }

    #[test]
    fn gram_route_agrees_with_similarity() {
        for (a, b, t) in [(2i64, 1i64, 10i64), (3, 1, 100), (2, 7, 100)] {
            let ord = order(a, b, t);
            let s1 = shape_of_order(&ord, &default_eps()).unwrap();
            let s2 = shape_via_gram(&ord, &default_eps()).unwrap();
            assert_eq!(s1.reduced.g, s2.reduced.g, "({a},{b},{t})");
            assert!(s1.reduced.tau.x().overlaps(s2.reduced.tau.x()));
            assert!(s1.reduced.tau.y().overlaps(s2.reduced.tau.y()));
            assert!(s1.rprime.overlaps(&s2.rprime));
        }
    }

    #[test]
    fn threshold_failure_is_fatal_for_shapes() {
        let err = shape_of_order(&order(1, 1, 4), &default_eps()).unwrap_err();
        assert!(matches!(err, Error::NotCertified(_)));
    }

    #[test]
    fn certification_reports_definitive_failure() {
        let res = certify_order(&order(1, 1, 4)).unwrap();
        assert_eq!(res.outcome, CusickOutcome::FailedThreshold);
        assert_eq!(res.precision_bits, START_BITS);
        assert!(res.ratio_upper.to_f64() > 0.125);
    }

    #[test]
    fn certification_of_the_worked_instance() {
        let res = certify_order(&order(2, 1, 10)).unwrap();
        assert_eq!(res.outcome, CusickOutcome::Certified);
        assert!((res.ratio_upper.to_f64() - 0.09075).abs() < 5e-4);
    }

    #[test]
    fn large_t_member_reduces_near_the_corner() {
        let t = BigInt::from(10u64).pow(12);
        let params = FamilyParams::new(2.into(), 1.into(), t).unwrap();
        let ord = CubicOrder::new(params).unwrap();
        let shape = shape_of_order(&ord, &default_eps()).unwrap();
        assert_eq!(shape.certificate, Certificate::CertifiedFundamental);
        // Fixed a, growing t: the reduced point approaches the corner.
        assert!(close(&shape.reduced.tau.x(), 0.5, 0.1));
        assert!(close(&shape.reduced.tau.y(), 0.866, 0.1));
    }
}
