//! Regulators and unit-lattice shapes.
//!
//! Log embeddings of certified units, the Cusick-style fundamentality
//! certificate, the similarity carrying the trace-zero plane to R^2, and
//! SL2(Z) reduction of the resulting lattice shape, both on intervals and
//! exactly over Q(sqrt 3) for the limit points.

pub mod diagnostics;
pub mod logemb;
pub mod plane;
pub mod qsqrt3;
pub mod reduce;
pub mod shape;

pub use shape::{certify_order, shape_of_order, shape_via_gram, CertifyResult, ShapeComputation};

pub use diagnostics::{taylor_diagnostics, TaylorDiagnostics};
pub use plane::{basis_to_tau, similarity_to_plane, PlaneBasis};

pub use logemb::{
    cusick_certify, cusick_ratio_upper, cusick_threshold, log_embedding, regulator_pair,
    trace_sum, Certificate, CusickOutcome, LinearUnit, LogEmbedding,
};
pub use qsqrt3::{
    apply_exact, limit_basis, limit_shape, reduce_exact, sqrt3_interval, ExactPoint, LimitShape,
    Sqrt3,
};
pub use reduce::{
    hyperbolic_distance, modular_distance, reduce_in_domain, Mat2, ReducedShape, UpperHalfPoint,
};
