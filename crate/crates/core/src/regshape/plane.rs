//! The similarity carrying the trace-zero plane to R^2, and the shape
//! point of a plane basis.
//!
//! The map (x1, x2, x3) -> (-x1 - x2/2, -(sqrt3/2) x2) restricts to a
//! similarity on the plane x1 + x2 + x3 = 0; it sends (-1, 0, 1) to
//! (1, 0) and (0, -1, 1) to (1/2, sqrt3/2), so a unit lattice maps to a
//! plane lattice of the same shape.

use crate::error::{Error, Result};
use crate::exactnum::DyadicInterval;
use crate::regshape::qsqrt3::sqrt3_interval;
use crate::regshape::reduce::UpperHalfPoint;

/// Image of a log-embedding vector under the similarity.
pub fn similarity_to_plane(v: &[DyadicInterval; 3]) -> (DyadicInterval, DyadicInterval) {
    let prec = v[0].precision().max(v[1].precision()).max(v[2].precision());
    let half_x2 = v[1].div_uint(2);
    let x = v[0].neg().sub(&half_x2);
    let y = v[1]
        .neg()
        .mul(&sqrt3_interval(prec))
        .div_uint(2);
    (x, y)
}

/// Ordered basis (v, w) of a plane lattice.
#[derive(Clone, Debug)]
pub struct PlaneBasis {
    pub v: (DyadicInterval, DyadicInterval),
    pub w: (DyadicInterval, DyadicInterval),
}

impl PlaneBasis {
    pub fn from_embeddings(
        lambda1: &crate::regshape::logemb::LogEmbedding,
        lambda2: &crate::regshape::logemb::LogEmbedding,
    ) -> Self {
        PlaneBasis {
            v: similarity_to_plane(&lambda1.components),
            w: similarity_to_plane(&lambda2.components),
        }
    }

    pub fn det(&self) -> DyadicInterval {
        self.v.0.mul(&self.w.1).sub(&self.v.1.mul(&self.w.0))
    }
}

/// Shape point tau = w / v as a complex ratio, orientation corrected: if
/// the basis is negatively oriented the two vectors are exchanged, which
/// conjugates the ratio back into the upper half plane. Returns the point
/// and whether the exchange happened.
pub fn basis_to_tau(basis: &PlaneBasis) -> Result<(UpperHalfPoint, bool)> {
    match ratio(&basis.v, &basis.w)? {
        Some(p) => Ok((p, false)),
        None => match ratio(&basis.w, &basis.v)? {
            Some(p) => Ok((p, true)),
            None => Err(Error::NeedsPrecision {
                bits: basis.v.0.precision(),
                context: "basis orientation not certified either way".into(),
            }),
        },
    }
}

/// w / v when its imaginary part is certified positive; None when it is
/// certified negative; a precision request when the denominator or the
/// orientation cannot be decided.
fn ratio(
    v: &(DyadicInterval, DyadicInterval),
    w: &(DyadicInterval, DyadicInterval),
) -> Result<Option<UpperHalfPoint>> {
    let den = v.0.square().add(&v.1.square());
    if den.contains_zero() {
        return Err(Error::NeedsPrecision {
            bits: den.precision(),
            context: "basis vector not separated from zero".into(),
        });
    }
    let y_num = w.1.mul(&v.0).sub(&w.0.mul(&v.1));
    if y_num.is_strictly_negative() {
        return Ok(None);
    }
    if !y_num.is_strictly_positive() {
        return Err(Error::NeedsPrecision {
            bits: den.precision(),
            context: "orientation of the basis not certified".into(),
        });
    }
    let x = w.0.mul(&v.0).add(&w.1.mul(&v.1)).div(&den)?;
    let y = y_num.div(&den)?;
    Ok(Some(UpperHalfPoint::new(x, y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{CubicOrder, FamilyParams};
    use crate::regshape::logemb::{log_embedding, LinearUnit};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn points(vals: [i64; 3], prec: u32) -> [DyadicInterval; 3] {
        vals.map(|v| DyadicInterval::from_int(v, prec))
    }

    #[test]
    fn defining_relations() {
        let (x, y) = similarity_to_plane(&points([-1, 0, 1], 128));
        assert!(x.is_point() && x.contains_rational(&rat(1, 1)));
        assert!(y.is_point() && y.contains_rational(&rat(0, 1)));

        let (x, y) = similarity_to_plane(&points([0, -1, 1], 128));
        assert!(x.is_point() && x.contains_rational(&rat(1, 2)));
        // y encloses sqrt3/2: 4 y^2 = 3.
        let y2 = y.square().scale_int(4);
        assert!(y2.contains_rational(&rat(3, 1)));
        assert!(y.width().to_rational() < rat(1, 1i64 << 60));
    }

    #[test]
    fn lengths_are_preserved_on_the_trace_zero_plane() {
        // |(-1, 0, 1)| and its image scale identically; the similarity
        // multiplies trace-zero lengths by 1/sqrt2, so compare pairs.
        let (x1, y1) = similarity_to_plane(&points([-1, 0, 1], 160));
        let (x2, y2) = similarity_to_plane(&points([1, -2, 1], 160));
        // Source lengths^2: 2 and 6; image lengths^2 must be 1 and 3.
        let l1 = x1.square().add(&y1.square());
        let l2 = x2.square().add(&y2.square());
        assert!(l1.contains_rational(&rat(1, 1)));
        assert!(l2.contains_rational(&rat(3, 1)));
    }

    #[test]
    fn worked_instance_basis_and_shape() {
        let params = FamilyParams::new(2.into(), 1.into(), 10.into()).unwrap();
        let order = CubicOrder::new(params).unwrap().with_refined_roots(160);
        let l1 = log_embedding(&order, &LinearUnit::theta(), 160).unwrap();
        let l2 = log_embedding(&order, &LinearUnit::new(2, 1), 160).unwrap();
        let basis = PlaneBasis::from_embeddings(&l1, &l2);
        let close = |iv: &DyadicInterval, t: f64| (iv.to_f64_mid() - t).abs() < 5e-4;
        assert!(close(&basis.v.0, 3.44366));
        assert!(close(&basis.v.1, 0.610926));
        assert!(close(&basis.w.0, 2.29807));
        assert!(close(&basis.w.1, 3.81528));
        assert!(basis.det().is_strictly_positive());

        let (tau, swapped) = basis_to_tau(&basis).unwrap();
        assert!(!swapped);
        assert!(close(tau.x(), 0.837541));
        assert!(close(tau.y(), 0.959357));

        let flipped = PlaneBasis {
            v: basis.w.clone(),
            w: basis.v.clone(),
        };
        let (tau2, swapped2) = basis_to_tau(&flipped).unwrap();
        assert!(swapped2);
        assert!(tau.x().overlaps(tau2.x()));
        assert!(tau.y().overlaps(tau2.y()));
    }

    #[test]
    fn degenerate_basis_asks_for_precision() {
        let v = (
            DyadicInterval::from_int(1, 64),
            DyadicInterval::from_int(0, 64),
        );
        let basis = PlaneBasis {
            v: v.clone(),
            w: v,
        };
        assert!(matches!(
            basis_to_tau(&basis),
            Err(crate::Error::NeedsPrecision { .. })
        ));
    }
}
