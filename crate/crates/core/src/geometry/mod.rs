//! Chern connection, torsion, curvature and weighted gradient fields of
//! Hermitian metrics given by exact rational data.

pub mod conformal;
pub mod connection;
pub mod metric;
pub mod multiradial;
pub mod weight;

pub use conformal::{conformal_metric, ConformalPair, Tripod};
pub use connection::{ChernConnection, Ricci, Tensor3};
pub use metric::{identity, Matrix, MetricField};
pub use multiradial::{
    assemble_inverse, metric_from_potential, multiradial_inverse_correction, MultiRadialPotential, RadialProfile,
    RadialTable,
};
pub use weight::{
    euler_field, fields_equal, gradient_field, gradient_minus_torsion, is_gradient_minus_torsion_holomorphic,
    is_real_holomorphic_gradient, one_minus_r, one_plus_r, raise, torsion_sharp, WeightField,
};
