//! Experiment drivers: t-sweeps at a fixed pair, alpha-sweeps with the
//! scheduled a_t, slope estimation across decades of t, and the exact
//! cusp-escape table.
//!
//! Every driver emits `SweepRecord` rows in deterministic (alpha, t)
//! order; per-record failures become status codes and never abort the
//! rest of a sweep.

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicInterval};
use crate::orders::{schedule_a, AlphaSchedule, CubicOrder, FamilyParams, ScheduledA};
use crate::regshape::diagnostics::{taylor_diagnostics, TaylorDiagnostics};
use crate::regshape::logemb::Certificate;
use crate::regshape::qsqrt3::{limit_shape, ExactPoint, LimitShape, Sqrt3};
use crate::regshape::reduce::modular_distance;
use crate::regshape::shape::{certify_order, shape_of_order};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::fmt;

/// Working precision for record diagnostics unless a caller asks for more.
pub const DEFAULT_RECORD_BITS: u32 = 128;

const DIAG_CAP_BITS: u32 = 8192;

/// Parameters of one experiment run.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub alphas: Vec<BigRational>,
    pub c: BigRational,
    pub t_grid: Vec<BigInt>,
    pub eps: BigRational,
    pub fixed_pairs: Vec<(BigInt, BigInt)>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            alphas: vec![
                rat(1, 5),
                rat(1, 6),
                rat(1, 8),
                rat(1, 10),
                rat(1, 20),
                rat(1, 100),
            ],
            c: rat(9, 10),
            t_grid: vec![pow10(6), pow10(12), pow10(24), pow10(48)],
            eps: BigRational::new(BigInt::one(), BigInt::one() << 30),
            fixed_pairs: vec![(BigInt::from(2), BigInt::one())],
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let quarter = rat(1, 4);
        for alpha in &self.alphas {
            if !alpha.is_positive() || *alpha >= quarter {
                return Err(Error::InvalidParameter(format!(
                    "alpha must lie in (0, 1/4), got {alpha}"
                )));
            }
        }
        if !self.c.is_positive() || self.c >= BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "c must lie in (0, 1), got {}",
                self.c
            )));
        }
        if self.t_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "t grid must be strictly increasing".into(),
            ));
        }
        if !self.eps.is_positive() {
            return Err(Error::InvalidParameter("eps must be positive".into()));
        }
        Ok(())
    }
}

/// Certificate status or failure code carried by a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecordStatus {
    Cert(Certificate),
    Failed(&'static str),
    NotAttempted,
}

impl RecordStatus {
    pub fn is_error(&self) -> bool {
        matches!(self, RecordStatus::Failed(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, RecordStatus::Cert(Certificate::Inconclusive))
    }
}

impl fmt::Display for RecordStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordStatus::Cert(c) => write!(f, "{c}"),
            RecordStatus::Failed(code) => write!(f, "{code}"),
            RecordStatus::NotAttempted => Ok(()),
        }
    }
}

/// One experiment row. Absent fields stay empty in serialized output;
/// which fields are present depends on the driver that built the record.
#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub alpha: Option<BigRational>,
    pub t: Option<BigInt>,
    pub a_t: Option<BigInt>,
    pub k: Option<u32>,
    pub disc: Option<BigInt>,
    pub eps1: Option<DyadicInterval>,
    pub eps2: Option<DyadicInterval>,
    pub delta1: Option<DyadicInterval>,
    pub reg: Option<DyadicInterval>,
    pub cusick_ratio_hi: Option<Dyadic>,
    pub status: RecordStatus,
    pub tau: Option<(Dyadic, Dyadic)>,
    pub reduced: Option<(Dyadic, Dyadic)>,
    pub g: Option<[BigInt; 4]>,
    pub dist_to_limit: Option<DyadicInterval>,
}

impl SweepRecord {
    fn blank() -> Self {
        SweepRecord {
            alpha: None,
            t: None,
            a_t: None,
            k: None,
            disc: None,
            eps1: None,
            eps2: None,
            delta1: None,
            reg: None,
            cusick_ratio_hi: None,
            status: RecordStatus::NotAttempted,
            tau: None,
            reduced: None,
            g: None,
            dist_to_limit: None,
        }
    }
}

fn order_for(a: &BigInt, b: &BigInt, t: &BigInt) -> Result<CubicOrder> {
    let params = FamilyParams::new(a.clone(), b.clone(), t.clone())?;
    CubicOrder::new(params)
}

/// Diagnostics with sign-definite enclosures: the gaps are nonzero for
/// every irreducible member, so doubling the refinement eventually
/// separates them; at the cap the wide enclosures are returned as-is.
fn diagnostics_definite(order: &CubicOrder, start_bits: u32) -> Result<TaylorDiagnostics> {
    let mut bits = start_bits;
    loop {
        let refined = order.with_refined_roots(bits + 24);
        let d = taylor_diagnostics(&refined, bits)?;
        let definite = !d.eps1.contains_zero()
            && !d.eps2.contains_zero()
            && !d.delta1.contains_zero()
            && !d.delta2.contains_zero();
        if definite || bits >= DIAG_CAP_BITS {
            return Ok(d);
        }
        bits = (bits * 2).min(DIAG_CAP_BITS);
    }
}

fn fill_diagnostics(rec: &mut SweepRecord, order: &CubicOrder, bits: u32) {
    if order.params().b != BigInt::one() {
        return;
    }
    if let Ok(d) = diagnostics_definite(order, bits) {
        rec.eps1 = Some(d.eps1);
        rec.eps2 = Some(d.eps2);
        rec.delta1 = Some(d.delta1);
    }
}

/// Where a record measures its distance-to-limit from.
enum DistTarget {
    /// The corner 1/2 + i sqrt3/2, the fixed-pair limit.
    Corner,
    /// The exact reduced limit point of an alpha family.
    Limit(ExactPoint),
}

impl DistTarget {
    fn exact_point(&self) -> Result<ExactPoint> {
        match self {
            DistTarget::Corner => ExactPoint::new(
                Sqrt3::from_rational(rat(1, 2)),
                Sqrt3::new(BigRational::zero(), rat(1, 2)),
            ),
            DistTarget::Limit(p) => Ok(p.clone()),
        }
    }
}

fn fill_shape(
    rec: &mut SweepRecord,
    order: &CubicOrder,
    eps: &BigRational,
    target: &DistTarget,
) -> Result<()> {
    let shape = shape_of_order(order, eps)?;
    rec.reg = Some(shape.rprime.clone());
    rec.cusick_ratio_hi = Some(shape.ratio_upper.clone());
    rec.status = RecordStatus::Cert(shape.certificate);
    rec.tau = Some((shape.tau.x().midpoint(), shape.tau.y().midpoint()));
    rec.reduced = Some((
        shape.reduced.tau.x().midpoint(),
        shape.reduced.tau.y().midpoint(),
    ));
    let m = &shape.reduced.g.m;
    rec.g = Some([
        m[0][0].clone(),
        m[0][1].clone(),
        m[1][0].clone(),
        m[1][1].clone(),
    ]);
    let prec = shape.reduced.tau.x().precision();
    let target_point = target.exact_point()?.to_upper_half(prec)?;
    rec.dist_to_limit = Some(modular_distance(&shape.reduced.tau, &target_point)?);
    Ok(())
}

/// Construct-only record: discriminant and gap diagnostics, no
/// certification.
pub fn family_record(a: &BigInt, b: &BigInt, t: &BigInt, bits: u32) -> SweepRecord {
    let mut rec = SweepRecord::blank();
    rec.t = Some(t.clone());
    rec.a_t = Some(a.clone());
    match order_for(a, b, t) {
        Ok(order) => {
            rec.disc = Some(order.disc().clone());
            fill_diagnostics(&mut rec, &order, bits);
        }
        Err(e) => rec.status = RecordStatus::Failed(e.short_code()),
    }
    rec
}

/// Certification record: regulator, ratio, and certificate status; no
/// shape. A definitive threshold failure is an Inconclusive certificate
/// here, not an error.
pub fn certify_record(a: &BigInt, b: &BigInt, t: &BigInt, bits: u32) -> SweepRecord {
    let mut rec = SweepRecord::blank();
    rec.t = Some(t.clone());
    rec.a_t = Some(a.clone());
    match order_for(a, b, t) {
        Ok(order) => {
            rec.disc = Some(order.disc().clone());
            fill_diagnostics(&mut rec, &order, bits);
            match certify_order(&order) {
                Ok(res) => {
                    rec.reg = Some(res.rprime);
                    rec.cusick_ratio_hi = Some(res.ratio_upper);
                    rec.status = RecordStatus::Cert(res.outcome.to_certificate());
                }
                Err(e) => rec.status = RecordStatus::Failed(e.short_code()),
            }
        }
        Err(e) => rec.status = RecordStatus::Failed(e.short_code()),
    }
    rec
}

/// Full-pipeline record for an explicit member; distance is measured to
/// the fixed-pair limit at the corner.
pub fn shape_record(a: &BigInt, b: &BigInt, t: &BigInt, eps: &BigRational, bits: u32) -> SweepRecord {
    member_record(a, b, t, eps, bits, &DistTarget::Corner)
}

fn member_record(
    a: &BigInt,
    b: &BigInt,
    t: &BigInt,
    eps: &BigRational,
    bits: u32,
    target: &DistTarget,
) -> SweepRecord {
    let mut rec = SweepRecord::blank();
    rec.t = Some(t.clone());
    rec.a_t = Some(a.clone());
    match order_for(a, b, t) {
        Ok(order) => {
            rec.disc = Some(order.disc().clone());
            fill_diagnostics(&mut rec, &order, bits);
            if let Err(e) = fill_shape(&mut rec, &order, eps, target) {
                rec.status = RecordStatus::Failed(e.short_code());
            }
        }
        Err(e) => rec.status = RecordStatus::Failed(e.short_code()),
    }
    rec
}

/// t-sweep at a fixed mutually cubic pair; distances are measured to the
/// corner 1/2 + i sqrt3/2.
pub fn t_sweep_fixed(
    a: &BigInt,
    b: &BigInt,
    t_grid: &[BigInt],
    eps: &BigRational,
) -> Result<Vec<SweepRecord>> {
    t_sweep_fixed_with(a, b, t_grid, eps, DEFAULT_RECORD_BITS)
}

pub fn t_sweep_fixed_with(
    a: &BigInt,
    b: &BigInt,
    t_grid: &[BigInt],
    eps: &BigRational,
    bits: u32,
) -> Result<Vec<SweepRecord>> {
    // Pair validity is a precondition of the sweep, not a per-record
    // failure; t = 1 is always a valid probe value.
    FamilyParams::new(a.clone(), b.clone(), BigInt::one())?;
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "t grid must be strictly increasing".into(),
        ));
    }
    Ok(t_grid
        .par_iter()
        .map(|t| member_record(a, b, t, eps, bits, &DistTarget::Corner))
        .collect())
}

/// Scheduled alpha-sweep: for each (alpha, t) in order, a_t from the
/// schedule, then the full pipeline with distance to the exact limit
/// point of that alpha.
pub fn alpha_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    alpha_sweep_with(config, DEFAULT_RECORD_BITS)
}

pub fn alpha_sweep_with(config: &SweepConfig, bits: u32) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let mut jobs: Vec<(BigRational, AlphaSchedule, LimitShape, BigInt)> = Vec::new();
    for alpha in &config.alphas {
        let sched = AlphaSchedule::new(alpha.clone(), config.c.clone())?;
        let limit = limit_shape(alpha)?;
        for t in &config.t_grid {
            jobs.push((alpha.clone(), sched.clone(), limit.clone(), t.clone()));
        }
    }
    Ok(jobs
        .par_iter()
        .map(|(alpha, sched, limit, t)| alpha_record(alpha, sched, limit, t, &config.eps, bits))
        .collect())
}

fn alpha_record(
    alpha: &BigRational,
    sched: &AlphaSchedule,
    limit: &LimitShape,
    t: &BigInt,
    eps: &BigRational,
    bits: u32,
) -> SweepRecord {
    let mut rec = SweepRecord::blank();
    rec.alpha = Some(alpha.clone());
    rec.t = Some(t.clone());
    rec.k = Some(sched.k());
    let scheduled = match schedule_a(t, sched) {
        Ok(s) => s,
        Err(e) => {
            rec.status = RecordStatus::Failed(e.short_code());
            return rec;
        }
    };
    let ScheduledA { a_t, in_range } = scheduled;
    rec.a_t = Some(a_t.clone());
    if !in_range {
        rec.status = RecordStatus::Failed("schedule-out-of-range");
        return rec;
    }
    let target = DistTarget::Limit(limit.reduced.clone());
    match order_for(&a_t, &BigInt::one(), t) {
        Ok(order) => {
            rec.disc = Some(order.disc().clone());
            fill_diagnostics(&mut rec, &order, bits);
            if let Err(e) = fill_shape(&mut rec, &order, eps, &target) {
                rec.status = RecordStatus::Failed(e.short_code());
            }
        }
        Err(e) => rec.status = RecordStatus::Failed(e.short_code()),
    }
    rec
}

/// Least-squares slope of ln|value| against ln t.
#[derive(Clone, Debug)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
    /// Indices of input points whose value interval contained zero.
    pub excluded: Vec<usize>,
}

/// Fit ln|v| = slope * ln t + intercept over points whose value interval
/// excludes zero. Requires at least 3 usable points spanning at least 10
/// decades of t. A constant series reports slope exactly 0.
pub fn exponent_fit(points: &[(BigInt, DyadicInterval)]) -> Result<ExponentFit> {
    let mut excluded = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut t_min: Option<&BigInt> = None;
    let mut t_max: Option<&BigInt> = None;
    for (i, (t, v)) in points.iter().enumerate() {
        if v.contains_zero() {
            excluded.push(i);
            continue;
        }
        if *t < BigInt::one() {
            return Err(Error::InvalidParameter("t values must be >= 1".into()));
        }
        let y = v.abs().ln()?.midpoint().to_f64();
        let x = t.to_f64().unwrap_or(f64::MAX).ln();
        xs.push(x);
        ys.push(y);
        t_min = Some(t_min.map_or(t, |m| if t < m { t } else { m }));
        t_max = Some(t_max.map_or(t, |m| if t > m { t } else { m }));
    }
    if xs.len() < 3 {
        return Err(Error::Domain(format!(
            "exponent fit needs at least 3 nonzero points, got {}",
            xs.len()
        )));
    }
    let (t_min, t_max) = (t_min.unwrap(), t_max.unwrap());
    if t_max < &(t_min * pow10(10)) {
        return Err(Error::Domain(
            "exponent fit needs t values spanning at least 10 decades".into(),
        ));
    }
    if ys.windows(2).all(|w| w[0] == w[1]) {
        return Ok(ExponentFit {
            slope: 0.0,
            intercept: ys[0],
            max_residual: 0.0,
            excluded,
        });
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0f64, f64::max);
    Ok(ExponentFit {
        slope,
        intercept,
        max_residual,
        excluded,
    })
}

/// One row of the exact cusp-escape table.
#[derive(Clone, Debug)]
pub struct CuspEscapeRow {
    pub alpha: BigRational,
    pub alpha_prime: BigRational,
    pub reduced: ExactPoint,
}

/// Exact reduced limit points for a list of alphas. The reduced height
/// sqrt3/(6 alpha) grows without bound as alpha decreases: the limit set
/// escapes to the cusp.
pub fn cusp_escape_table(alphas: &[BigRational]) -> Result<Vec<CuspEscapeRow>> {
    alphas
        .iter()
        .map(|alpha| {
            limit_shape(alpha).map(|ls| CuspEscapeRow {
                alpha: ls.alpha,
                alpha_prime: ls.alpha_prime,
                reduced: ls.reduced,
            })
        })
        .collect()
}
