//! Construction kit and numerical laboratory for surface homeomorphisms
//! assembled from derived-from-Anosov plugs: DA surgery on the torus and
//! the quotient sphere, connected-sum gluing through an annulus inversion,
//! trapping regions and box coverings of the hyperbolic attractors, an
//! anomalous plug with a connected, non-locally-connected stable set, and
//! a numerical evidence suite for the expansivity hierarchy.

pub mod anosov;
pub mod numerics;
pub mod plug;
pub mod error;
pub mod surface;
pub mod vec2;

pub use anosov::{anosov_apply, anosov_make, quotient_map, AnosovMap, Direction};
pub use error::{Error, Result};
pub use surface::{
    sphere_dist, sphere_project, torus_dist, torus_reduce, MetricParams, SpherePoint, TorusPoint,
};
pub use vec2::{v2, Mat2, Vec2};
