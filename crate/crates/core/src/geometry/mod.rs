//! Plane geometry on figures bounded by straight segments and circular arcs.

mod circle;
mod classify;
mod diameter;
mod edge;
mod figure;
pub mod hull;
mod json;
mod point;
mod simple;
mod tolerance;

pub use circle::Circle;
pub use classify::Classifier;
pub use diameter::diameter_candidates;
pub use edge::{Arc, Edge, Orientation};
pub use figure::{Figure, Location};
pub use hull::{convex_hull, convex_hull_with};
pub use json::Real17;
pub use point::{orient, Point};
pub use tolerance::Tolerance;
