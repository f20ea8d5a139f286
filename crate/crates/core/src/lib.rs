//! Exact constructions for totally real cubic orders with linear unit
//! systems, their certified regulators, and the shapes of their unit
//! lattices on the modular surface.
//!
//! Everything downstream of integer input is certified: real roots come as
//! dyadic sign-change brackets, logarithms and square roots as directed
//! rounded intervals, and every reported quantity either encloses the true
//! value or the computation refuses with an explicit error. Floating point
//! appears only in diagnostics (slope fits, SVG coordinates), never in a
//! certificate.
//!
//! Module map:
//! - [`exactnum`]: dyadic rationals, outward-rounded interval arithmetic,
//!   certified ln and sqrt, integer root helpers.
//! - [`polycubic`]: monic integer cubics, discriminants, rational-root
//!   irreducibility, certified real-root isolation.
//! - [`orders`]: the two-parameter family of totally real cubic orders,
//!   parameter schedules, irreducibility and root-location witnesses.
//! - [`regshape`]: logarithmic embeddings, regulator bounds, the
//!   fundamentality certificate, reduction to the modular surface, and the
//!   exact limit shapes in Q(sqrt 3).
//! - [`sweeps`]: parameter sweeps, cusp-escape tables, exponent fits.

pub mod error;
pub mod exactnum;
pub mod orders;
pub mod polycubic;
pub mod regshape;
pub mod sweeps;

pub use error::{Error, Result};
