//! Numerical toolkit for the geometric probability that three i.i.d. uniform
//! points in a convex body form an acute triangle.
//!
//! The crate is organized around the probability functional `p(S)` and the
//! analytic apparatus that controls it near the disk:
//!
//! - [`geom`], [`triangle`], [`region`]: convex-region representations,
//!   triangle classification, and metric primitives (area, perimeter,
//!   Hausdorff distance, height profiles).
//! - [`disk`]: closed forms for the unit disk — the conditional acute mass
//!   `A2(θ)`, its Fourier coefficients, the constant `L`, the exact `p(D)`,
//!   and the acute-locus area for arbitrary vertex pairs.
//! - [`estimator`]: deterministic, chunked Monte Carlo estimation of `p(S)`
//!   and the largest-angle CDF `F_S(φ)`.
//! - [`quadp`]: a reduced-dimension quadrature path for `p(S)` that integrates
//!   the acute-locus area over pairs of vertices.
//! - [`variation`]: Fourier decomposition of boundary perturbations, the
//!   spectral second variation, re-embedding normalization, the canonical
//!   homotopy, and the parabolic barrier check.
//! - [`isoperim`]: the height-partition upper bound on `p(S)` and the
//!   isoperimetric-ratio threshold test.
//! - [`ball3`]: three-dimensional analytics — the acute mass on the 3-ball,
//!   its Legendre coefficients, and the sign-pattern verification.
//!
//! The crate is `no_std` (with `alloc`); all operations are pure and types are
//! immutable after construction, so everything is safe to share across threads.
//! Parallel drivers live in the companion CLI crate and are built from the
//! chunk/slice APIs exposed here, which fix the reduction order so results are
//! bit-identical regardless of thread count.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod ball3;
pub mod disk;
pub mod error;
pub mod estimator;
pub mod fourier;
pub mod geom;
pub mod isoperim;
pub mod math;
pub mod quad;
pub mod quadp;
pub mod region;
pub mod rng;
pub mod triangle;
pub mod variation;

pub use error::{Error, Result};
pub use estimator::{CdfEstimate, Estimate};
pub use fourier::FourierSeries;
pub use geom::{Point2, Point3, Similarity2};
pub use region::{ConvexRegion, FramedRegion, HeightProfile};
pub use triangle::{classify_triangle, classify_triangle_3d, TriangleClass, TriangleKind};
