//! Figure JSON: `{"edges": [{"kind": "segment", ...} | {"kind": "arc", ...}]}`.
//!
//! Reals are written with 17 significant digits so documents round-trip
//! bit-exactly.

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use super::edge::{Arc, Edge, Orientation};
use super::{Figure, Point, Tolerance};
use crate::error::Result;

/// An `f64` serialized in scientific notation with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real17(pub f64);

impl Serialize for Real17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom("non-finite real"));
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Real17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(Real17)
    }
}

type Pt = [Real17; 2];

fn pt(p: Point) -> Pt {
    [Real17(p.x), Real17(p.y)]
}

fn unpt([x, y]: Pt) -> Point {
    Point::new(x.0, y.0)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum EdgeDoc {
    Segment {
        start: Pt,
        end: Pt,
    },
    Arc {
        start: Pt,
        end: Pt,
        center: Pt,
        radius: Real17,
        orientation: Orientation,
        #[serde(default)]
        full_turn: bool,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct FigureDoc {
    edges: Vec<EdgeDoc>,
}

impl From<&Edge> for EdgeDoc {
    fn from(e: &Edge) -> Self {
        match e {
            Edge::Segment { start, end } => EdgeDoc::Segment {
                start: pt(*start),
                end: pt(*end),
            },
            Edge::Arc(a) => EdgeDoc::Arc {
                start: pt(a.start),
                end: pt(a.end),
                center: pt(a.center),
                radius: Real17(a.radius),
                orientation: a.orientation,
                full_turn: a.full_turn,
            },
        }
    }
}

impl From<EdgeDoc> for Edge {
    fn from(d: EdgeDoc) -> Self {
        match d {
            EdgeDoc::Segment { start, end } => Edge::segment(unpt(start), unpt(end)),
            EdgeDoc::Arc {
                start,
                end,
                center,
                radius,
                orientation,
                full_turn,
            } => Edge::Arc(Arc {
                start: unpt(start),
                end: unpt(end),
                center: unpt(center),
                radius: radius.0,
                orientation,
                full_turn,
            }),
        }
    }
}

impl Serialize for Figure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FigureDoc {
            edges: self.edges().iter().map(EdgeDoc::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Figure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = FigureDoc::deserialize(d)?;
        Figure::new(doc.edges.into_iter().map(Edge::from).collect()).map_err(serde::de::Error::custom)
    }
}

impl Figure {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_with_tolerance(s, &Tolerance::default())
    }

    pub fn from_json_with_tolerance(s: &str, tol: &Tolerance) -> Result<Self> {
        let doc: FigureDoc = serde_json::from_str(s)?;
        Figure::with_tolerance(doc.edges.into_iter().map(Edge::from).collect(), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_have_17_digits() {
        let sq = Figure::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 0.5),
        ])
        .unwrap();
        let s = sq.to_json().unwrap();
        assert!(s.contains("5.0000000000000000e-1"), "{s}");
        assert!(s.contains("\"kind\": \"segment\""));
    }

    #[test]
    fn parses_hand_written_arc() {
        let s = r#"{"edges":[
            {"kind":"segment","start":[-1,0],"end":[1,0]},
            {"kind":"arc","start":[1,0],"end":[-1,0],"center":[0,0],"radius":1,"orientation":"ccw","full_turn":false}
        ]}"#;
        let f = Figure::from_json(s).unwrap();
        assert!((f.area() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_document() {
        let open = r#"{"edges":[{"kind":"segment","start":[0,0],"end":[1,0]}]}"#;
        assert!(Figure::from_json(open).is_err());
        assert!(Figure::from_json(r#"{"edges":[{"kind":"spline"}]}"#).is_err());
    }
}
