//! The positive cone `Ω` as a symmetric space: connection, transport,
//! curvature, Thompson metric and Finsler lengths of paths.

mod connection;
mod metric;
mod path;
mod point;

pub use connection::{
    christoffel, curvature, curvature_bracket, geodesic, geodesic_between, geodesic_velocity,
    killing_field, killing_flow, log_map, mu, mu_star, parallel_transport,
    parallel_transport_rk4, spray, TRANSPORT_RK4_STEPS,
};
pub use metric::{
    finsler_norm, lie_velocity, lie_velocity_direct, thompson_distance,
    thompson_distance_reverse, velocity_norms,
};
pub use path::{
    curve_lengths, path_length, path_lengths, Derivative, SampledPath, SinePerturbation,
    FD_STEP, SIMPSON_INTERVALS,
};
pub use point::{ConePoint, Tangent};
