//! Non-uniform corner-cutting subdivision.
//!
//! A level-dependent, position-dependent perturbation of Chaikin's
//! corner-cutting scheme. Each local rule reproduces a two-dimensional
//! space of exponentials whose shape parameter is estimated from the data
//! (`γ² ≈ f''/f`), which lifts the approximation order from two to three
//! while keeping the `C¹` limit of the quadratic B-spline.
//!
//! * [`seq`]: sequences on index windows, dual grids, difference operators.
//! * [`masks`]: mask coefficients, shape parameters and a linear-system oracle.
//! * [`subdivision`]: the refinement engine and curve refinement.
//! * [`analysis`]: symbol diagnostics, order tables, smoothness probe.
//! * [`cli`]: the command-line front end.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod masks;
pub mod seq;
pub mod subdivision;

pub use error::{NuccError, Result};
pub use masks::{EpsilonPolicy, EpsilonSign, MaskQuad, RatioKernelConfig, ShapeParam};
pub use seq::{Boundary, GridSpec, LevelSequence};
pub use subdivision::{
    ControlPolygon, RefinementState, Scheme, SchemeConfig, Variant, NEGLIGIBLE_EPS_SCALE,
};
