//! Radius bounds for convex bodies with a lower bound on the base angle of
//! their boundary, in the flat and round model spaces.
//!
//! A body is a finite intersection of metric balls. For such a body the
//! crate computes the inner radius `a`, the soul, the radius from the soul
//! `b`, the global radius `Rad`, and checks
//!
//! ```text
//! a ≤ Rad ≤ b ≤ bound_b(κ, a, A) ≤ R(κ, A)
//! ```
//!
//! together with the equality cases, the comparison ODE behind the bound and
//! the boundary-volume bound in the plane and in space.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`).

pub mod body;
pub mod comparison;
pub mod error;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod solver;
pub mod spaceform;
pub mod strata;
pub mod verify;

pub use body::{make_ball, make_cutthetip, BaseAngleEstimate, Ball, Body, BoundarySample};
pub use comparison::{
    bound_b, comparison_solution, first_zero, ode_compare, ComparisonOutcome, ComparisonProfile,
    ComparisonSolution, FirstZero, Forcing,
};
pub use error::{Error, Result};
pub use generate::{generate_body, GenConfig};
pub use io::{parse_body, write_body, BodyDescriptor};
pub use scalar::Scalar;
pub use solver::{global_radius, inner_radius, radius_from_soul, summarize, GeometrySummary, SolverOptions};
pub use spaceform::{md_general, sphere_volume, Curvature, Point, SpaceForm};
pub use verify::{
    check_rigidity, extract_profile, verify_body, verify_chain, ChainResult, RigidityFinding,
    VerificationReport, VerifyOptions,
};

pub type Point64 = Point<f64>;
pub type Point32 = Point<f32>;
pub type Ball64 = Ball<f64>;
pub type Ball32 = Ball<f32>;
pub type Body64 = Body<f64>;
pub type Body32 = Body<f32>;
pub type GeometrySummary64 = GeometrySummary<f64>;
pub type GeometrySummary32 = GeometrySummary<f32>;
pub type ChainResult64 = ChainResult<f64>;
pub type ComparisonProfile64 = ComparisonProfile<f64>;
pub type VerificationReport64 = VerificationReport<f64>;
