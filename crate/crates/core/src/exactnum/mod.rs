//! Numeric substrate: exact dyadic rationals, outward-rounded intervals,
//! certified log and sqrt, and exact integer roots.

pub mod dyadic;
pub mod elementary;
pub mod interval;
pub mod introot;

pub use dyadic::{parse_decimal, Dyadic, RoundDir};
pub use elementary::{ln2, ln_point, sqrt_point};
pub use interval::{DyadicInterval, DEFAULT_PRECISION, GUARD_BITS, PRECISION_CAP};
pub use introot::{ceil_qth_root_of_ratio, integer_nth_root_floor, integer_sqrt_floor};
