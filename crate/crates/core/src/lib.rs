//! Numerical differential geometry for rotational surfaces in
//! Lorentz-Minkowski 3-space with signature (+, +, -).
//!
//! The engine has three layers:
//!
//! * a small Minkowski vector/matrix kernel ([`minkowski`]),
//! * truncated bivariate Taylor jets of total degree 3 ([`jet`]) that drive
//!   every derivative in the pipeline, so no closed-form derivative is ever
//!   trusted as input,
//! * surface charts ([`surface`]) and the curvature / Laplace-Beltrami
//!   pipeline on top of them ([`curvature`], [`beltrami`]).
//!
//! [`audit`] grades a registry of transcribed closed-form reference
//! expressions against the pipeline and renders a deterministic report;
//! [`mesh`] exports sampled surfaces as OBJ or CSV.

pub mod audit;
pub mod beltrami;
pub mod curvature;
mod error;
pub mod jet;
pub mod mesh;
pub mod minkowski;
mod scalar;
pub mod surface;

pub use error::{GeomError, JetError};
pub use jet::{JVec3, Jet2};
pub use minkowski::{CausalCharacter, LMat3, LVec3};
pub use scalar::Scalar;
pub use surface::{ParametricSurface, ProfileCurve};

/// Version string stamped into audit reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
