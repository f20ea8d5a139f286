//! Log embeddings of linear units and the regulator certificate.
//!
//! A linear unit s*theta - u is embedded as the vector of logs of the
//! absolute values of its three conjugates, ordered by the root labels.
//! The certificate compares the candidate regulator against the threshold
//! (ln(D/4))^2 / 8: below it, no proper subgroup of the unit group can
//! contain the candidate pair, so the pair is fundamental.

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicInterval};
use crate::orders::CubicOrder;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// The element s*theta - u of the order, with integer s, u.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearUnit {
    pub s: BigInt,
    pub u: BigInt,
}

impl LinearUnit {
    pub fn new(s: impl Into<BigInt>, u: impl Into<BigInt>) -> Self {
        LinearUnit {
            s: s.into(),
            u: u.into(),
        }
    }

    /// theta itself.
    pub fn theta() -> Self {
        LinearUnit::new(1, 0)
    }

    /// Value s*x - u on an interval enclosure of a conjugate of theta.
    pub fn value_on(&self, x: &DyadicInterval) -> DyadicInterval {
        let prec = x.precision();
        x.scale_bigint(&self.s)
            .sub(&DyadicInterval::from_bigint(&self.u, prec))
    }
}

impl fmt::Display for LinearUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*theta - {}", self.s, self.u)
    }
}

/// Interval enclosure of (ln|sigma_1 e|, ln|sigma_2 e|, ln|sigma_3 e|),
/// components ordered by the root labels theta^(1), theta^(2), theta^(3).
#[derive(Clone, Debug)]
pub struct LogEmbedding {
    pub components: [DyadicInterval; 3],
}

/// Embed a linear unit. Fails with a precision request when some
/// conjugate's enclosure is not sign-definite at this precision.
pub fn log_embedding(
    order: &CubicOrder,
    unit: &LinearUnit,
    precision: u32,
) -> Result<LogEmbedding> {
    let roots = [order.theta1(), order.theta2(), order.theta3()];
    let mut components = Vec::with_capacity(3);
    for root in roots {
        let v = unit.value_on(&root.to_interval(precision));
        if v.contains_zero() {
            return Err(Error::NeedsPrecision {
                bits: precision,
                context: format!("conjugate of {unit} not separated from zero"),
            });
        }
        components.push(v.abs().ln()?);
    }
    Ok(LogEmbedding {
        components: components.try_into().expect("three components"),
    })
}

/// Sum of the three components; encloses ln|N(e)|, so for a unit it
/// encloses zero.
pub fn trace_sum(emb: &LogEmbedding) -> DyadicInterval {
    emb.components[0]
        .add(&emb.components[1])
        .add(&emb.components[2])
}

/// Candidate regulator |det| of the first two coordinates of the pair.
pub fn regulator_pair(e1: &LogEmbedding, e2: &LogEmbedding) -> DyadicInterval {
    let d = e1.components[0]
        .mul(&e2.components[1])
        .sub(&e1.components[1].mul(&e2.components[0]));
    d.abs()
}

/// Status attached to an emitted record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    CertifiedFundamental,
    Inconclusive,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::CertifiedFundamental => write!(f, "CertifiedFundamental"),
            Certificate::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Three-way outcome of the threshold comparison. Certified and
/// FailedThreshold are definitive; Undecided asks for more precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CusickOutcome {
    Certified,
    FailedThreshold,
    Undecided,
}

impl CusickOutcome {
    pub fn to_certificate(self) -> Certificate {
        match self {
            CusickOutcome::Certified => Certificate::CertifiedFundamental,
            _ => Certificate::Inconclusive,
        }
    }
}

/// ln(disc/4) at the given precision. Requires disc > 16 so the threshold
/// is meaningful (and positive).
pub fn cusick_threshold(disc: &BigInt, precision: u32) -> Result<DyadicInterval> {
    if *disc <= BigInt::from(16) {
        return Err(Error::CertificateNotApplicable { disc: disc.clone() });
    }
    let quarter = BigRational::new(disc.clone(), BigInt::from(4));
    DyadicInterval::enclose_rational(&quarter, precision).ln()
}

/// Compare 8 * R' against L^2 with exact dyadic endpoint products, so the
/// decision never depends on interval division.
pub fn cusick_certify(disc: &BigInt, rprime: &DyadicInterval) -> Result<CusickOutcome> {
    let threshold = cusick_threshold(disc, rprime.precision())?;
    let eight = Dyadic::from_int(8);
    let hi8 = &eight * rprime.hi();
    let lo8 = &eight * rprime.lo();
    if rprime.lo().signum() > 0
        && threshold.lo().signum() > 0
        && hi8 < threshold.lo() * threshold.lo()
    {
        return Ok(CusickOutcome::Certified);
    }
    if lo8 >= threshold.hi() * threshold.hi() {
        return Ok(CusickOutcome::FailedThreshold);
    }
    Ok(CusickOutcome::Undecided)
}

/// Upper endpoint of R' / L^2, the quantity reported in records. The
/// certificate itself never divides; this is for display only.
pub fn cusick_ratio_upper(disc: &BigInt, rprime: &DyadicInterval) -> Result<Dyadic> {
    let threshold = cusick_threshold(disc, rprime.precision())?;
    Ok(rprime.div(&threshold.square())?.hi().clone())
}
