//! Geometry of two-dimensional normed planes.
//!
//! The unit ball `M` of a norm is described by [`UnitBall`]; its gauge is
//! the norm. On top of it the crate builds
//!
//! * tangent segments from exterior points to convex bodies and the
//!   equal-tangent test ([`tangency`]),
//! * the Busemann, Glogovskij and billiard angular bisectors together with
//!   billiard reflection on a line ([`bisectors`]),
//! * the slope fields and conic families whose solutions single out
//!   ellipses ([`ode_verify`]),
//! * billiard trajectories, Birkhoff altitudes and pedal triangles
//!   ([`billiards`]).
//!
//! Sweeps over many independent inputs take an [`Exec`] policy and run on
//! rayon when the `parallel` feature is enabled.

pub mod billiards;
pub mod bisectors;
pub mod error;
pub mod exec;
pub mod geom;
pub mod minkowski;
pub mod ode_verify;
pub mod rng;
pub mod scalar;
pub mod tangency;

pub use error::{Error, Result};
pub use exec::Exec;
pub use geom::{line_intersect, AffineMap, Line, Mat2, Ray, Vec2};
pub use minkowski::{BoundaryPoint, Harmonic, RayDistance, UnitBall, Violation};
pub use tangency::PlacedBody;
