//! Parameter estimation for the one-dimensional heat equation from a single
//! interior measurement.
//!
//! Two classical field problems reduce to the same dimensionless equation
//! `I(a) = c`, where
//!
//! ```text
//! I(a) = (i/pi) ∮_C exp(-a k²) / (k cos k) dk,   a > 0,  c ∈ (0, 1),
//! ```
//!
//! with `C` the hyperbola `k(r) = 2 sinh r + i cosh r`. `I` is a strictly
//! increasing bijection from `(0, ∞)` onto `(0, 1)`, so the measurement `c`
//! determines `a` uniquely; the physical unknown (drain half-spacing `L`,
//! drainage time `T`, or soil diffusivity `D₀`) then follows from the
//! definition of `a`.
//!
//! The crate provides three independent layers:
//!
//! * numerical ground truth — contour quadrature ([`contour`]), exact series
//!   representations ([`series`]) and bracketed root finding ([`oracle`]);
//! * closed-form and semi-closed-form inversion schemes valid for large `a`
//!   ([`invert_large`]) and small `a` ([`invert_small`]);
//! * the three piecewise composite solvers and relative-error reporting
//!   ([`composite`]), plus the physical front ends ([`physics`], [`cli`]).

pub mod cli;
pub mod composite;
pub mod contour;
pub mod error;
pub mod invert_large;
pub mod invert_small;
pub mod oracle;
pub mod physics;
pub mod rational;
pub mod series;
pub mod specfn;

pub use composite::{CompositeId, CompositeScheme, ErrorReport};
pub use contour::{DimensionlessPair, QuadratureSpec};
pub use error::{Error, Result};
pub use oracle::{RootFindSpec, SolverId};
