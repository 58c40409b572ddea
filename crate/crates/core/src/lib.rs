//! Convex figures that share a diameter with a circle.
//!
//! Figures are closed boundaries made of straight segments and exact circular
//! arcs ([`geometry`]). On top of that sit the named figures built on the
//! diameter `KL` ([`shapes`]), the area outside the reference disc and its
//! fraction μ ([`measures`]), the radial-integral area bound
//! ([`littlewood`]), a seeded search for the μ-maximizing convex figure
//! ([`optimizer`]), and an independent Monte Carlo oracle ([`oracle`]).

pub mod error;
pub mod fuzz;
pub mod geometry;
pub mod littlewood;
pub mod measures;
pub mod optimizer;
pub mod oracle;
pub mod report;
pub mod shapes;

pub use error::{Error, Result};
pub use geometry::{Circle, Edge, Figure, Location, Orientation, Point, Tolerance};
