//! Exact-arithmetic invariants of rank 2 ACM bundles on complete
//! intersection Calabi-Yau threefolds.
//!
//! The crate computes line bundle cohomology on complete intersections,
//! Euler characteristics of rank 2 bundles via Riemann-Roch, minimal free
//! resolution shapes of arithmetically Gorenstein curves and their paired
//! bundles, curve invariants through Hilbert polynomials, the restriction
//! construction that produces new bundles on hypersurface sections, and the
//! full classification table of admissible Chern classes on the five CICY
//! threefold types. Everything is exact integer and rational arithmetic.

pub mod classify;
pub mod cohomology;
pub mod fixtures;
pub mod grr;
pub mod hilbert;
pub mod interchange;
pub mod model;
pub mod resolutions;

pub use model::{make_cicy, Cicy, CompleteIntersection, FreeResolution, GradedFreeModule};
