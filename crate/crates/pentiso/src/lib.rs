#![forbid(unsafe_code)]
//! Geometry and combinatorics of small-perimeter unit-area pentagons.
//!
//! The library has three layers. `geom` holds the metric core: the
//! cotangent perimeter formula for polygons circumscribed about a circle,
//! explicit constructions, and the inscribed-pentagon family used for edge
//! bounds. `optimize` runs the constrained extremal searches (bisection,
//! golden section, case enumerations) together with an independent grid
//! oracle. `combinatorics`, `torus`, and `equilateral` cover vertex-figure
//! enumeration, exact-rational counting arguments, doubly periodic meshes
//! with their disk truncation statistics, and the equilateral special
//! cases. `claims` ties every reported constant to a reproducible
//! computation and renders a pass/fail report.

pub mod claims;
pub mod combinatorics;
pub mod equilateral;
pub mod geom;
pub mod optimize;
pub mod torus;
