//! Numerical toolkit for graph surfaces `z = f(x, y)` in the product space
//! H² × R, with H² in the upper half-plane model and metric
//! `g = (dx² + dy²)/y² + dz²`.
//!
//! The crate is organised bottom-up:
//!
//! * [`ambient`]: metric, orthonormal left-invariant frame, Christoffel symbols,
//!   covariant derivatives and geodesic curvature of curves in H².
//! * [`shape`]: fundamental forms, mean curvature, minimal-surface residual,
//!   shape operator, umbilicity and totally-geodesic residuals, Gauss map rank,
//!   vertical surfaces.
//! * [`catalog`]: closed-form minimal, totally geodesic and umbilical families
//!   with analytic third-order jets.
//! * [`pde`]: damped Newton solver for the Dirichlet problem of the
//!   minimal-surface equation on rectangles.
//! * [`variational`]: area functional, area-comparison witness, induced and
//!   flat Laplacians, level-curve identity.
//! * [`io`] and [`cli`]: file formats (CSV, OBJ, reports), job configuration
//!   and the `h2r` command-line front end.
//!
//! Data-parallel loops go through [`exec::Exec`], which uses rayon when the
//! `parallel` feature is enabled and plain iterators otherwise.

pub mod ambient;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exec;
pub mod io;
pub mod pde;
pub mod sampling;
pub mod series;
pub mod shape;
pub mod variational;

pub use ambient::{DomainPoint, FrameVector};
pub use catalog::{Family, SolutionSpec};
pub use error::{Error, Result};
pub use exec::Exec;
pub use shape::{Jet2, Jet3};
