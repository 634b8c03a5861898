//! Geometry of the structure group: left-invariant spray, geodesics,
//! transport, the Euclidean metric, Finsler lengths, the quotient onto the
//! cone and horizontal lifts.

mod competitors;
mod element;
mod lift;
mod metric;
mod quotient;
mod spray;
mod transport;

pub use competitors::{derivation_below, explore_aut_path, CompetitorLength, rescale_derivation, GroupPerturbation, AUT_RADIUS};
pub use element::{GroupElement, GroupTangent};
pub use lift::{
    geodesic_lift, horizontal_lift, horizontal_lift_path, quotient_distance_bounds, LiftResult, LIFT_ABORT_TOL, LIFT_STEPS,
};
pub use metric::{
    covariant_derivative_body, euclidean_inner, euclidean_metric, finsler_norm_at, group_path_length,
    GroupPath, PATH_OPNORM_STARTS,
};
pub use quotient::{quotient_map, quotient_norm, section};
pub use spray::{
    christoffel_body, christoffel_body_split, group_christoffel, group_geodesic, group_geodesic_body,
    group_geodesic_velocity, group_spray, spray_body, spray_body_split,
};
pub use transport::{
    group_parallel_transport, group_parallel_transport_rk4, transport_generator, GROUP_RK4_STEPS,
};
