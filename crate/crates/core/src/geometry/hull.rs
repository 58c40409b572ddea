//! Convex hulls (monotone chain) and rotating-calipers diameter for point
//! sets, plus the hull of a mixed segment/arc figure.

use std::cmp::Ordering;

use super::edge::{Arc, Edge, Orientation};
use super::point::orient;
use super::{Figure, Point, Tolerance};
use crate::error::Result;

/// Indices of the convex hull of `pts`, counter-clockwise, starting from the
/// lowest-leftmost point. Collinear points are dropped.
pub fn convex_hull_indices(pts: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| {
        pts[a]
            .x
            .partial_cmp(&pts[b].x)
            .unwrap_or(Ordering::Equal)
            .then(pts[a].y.partial_cmp(&pts[b].y).unwrap_or(Ordering::Equal))
    });
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && orient(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= 0.0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

pub fn convex_hull_points(pts: &[Point]) -> Vec<Point> {
    convex_hull_indices(pts).into_iter().map(|i| pts[i]).collect()
}

/// Largest distance between two points of a convex polygon given in
/// counter-clockwise order, by rotating calipers.
pub fn convex_polygon_diameter(hull: &[Point]) -> f64 {
    let n = hull.len();
    match n {
        0 | 1 => return 0.0,
        2 => return hull[0].distance(hull[1]),
        _ => {}
    }
    let mut best = 0.0f64;
    let mut j = 1;
    for i in 0..n {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        while orient(a, b, hull[(j + 1) % n]).abs() > orient(a, b, hull[j]).abs() {
            j = (j + 1) % n;
        }
        best = best.max(a.distance(hull[j])).max(b.distance(hull[j]));
    }
    best
}

/// Diameter of an arbitrary point set.
pub fn point_set_diameter(pts: &[Point]) -> f64 {
    convex_polygon_diameter(&convex_hull_points(pts))
}

#[derive(Clone, Copy)]
struct Sample {
    p: Point,
    /// Source edge, or `usize::MAX` for extra points.
    edge: usize,
    /// Index along the source edge (0 is its start).
    k: usize,
}

/// Convex hull of `f`, keeping convex arc pieces that lie on the hull as
/// exact arcs.
pub fn convex_hull(f: &Figure, tol: &Tolerance) -> Result<Figure> {
    convex_hull_with(f, &[], tol)
}

/// Convex hull of `f` together with the extra points `extra`.
pub fn convex_hull_with(f: &Figure, extra: &[Point], tol: &Tolerance) -> Result<Figure> {
    let edges = f.edges();
    let m = edges.len();
    let mut chords = vec![0usize; m];
    let mut samples = Vec::new();
    for (e, edge) in edges.iter().enumerate() {
        samples.push(Sample {
            p: edge.start(),
            edge: e,
            k: 0,
        });
        if let Edge::Arc(a) = edge {
            let n = a.chords_for_sagitta(tol.arc_max_sagitta);
            chords[e] = n;
            samples.extend(a.interior_samples(n).enumerate().map(|(k, p)| Sample {
                p,
                edge: e,
                k: k + 1,
            }));
        }
    }
    samples.extend(extra.iter().map(|&p| Sample {
        p,
        edge: usize::MAX,
        k: 0,
    }));

    let pts: Vec<Point> = samples.iter().map(|s| s.p).collect();
    let hull: Vec<Sample> = convex_hull_indices(&pts)
        .into_iter()
        .map(|i| samples[i])
        .collect();
    let h = hull.len();

    // which source arc (if any) the hull edge from `a` to `b` is a chord of
    let chord_of = |a: &Sample, b: &Sample| -> Option<usize> {
        if a.edge == usize::MAX {
            return None;
        }
        let arc = edges[a.edge].as_arc()?;
        if arc.orientation != Orientation::Ccw {
            return None;
        }
        let next = (a.edge + 1) % m;
        let consecutive = (b.edge == a.edge && b.k == a.k + 1)
            || (a.k + 1 == chords[a.edge] && b.edge == next && b.k == 0);
        consecutive.then_some(a.edge)
    };
    let tags: Vec<Option<usize>> = (0..h).map(|i| chord_of(&hull[i], &hull[(i + 1) % h])).collect();

    if tags.iter().all(|t| t.is_some() && *t == tags[0]) {
        if let Some(a) = edges[tags[0].unwrap()].as_arc() {
            if a.full_turn {
                return Ok(f.clone());
            }
        }
    }

    // start at a hull vertex where a run of chords begins (or any segment)
    let first = (0..h)
        .find(|&i| tags[i].is_none() || tags[(i + h - 1) % h] != tags[i])
        .unwrap_or(0);
    let mut out = Vec::new();
    let mut i = first;
    let mut done = 0;
    while done < h {
        let start = hull[i].p;
        match tags[i] {
            None => {
                out.push(Edge::segment(start, hull[(i + 1) % h].p));
                i = (i + 1) % h;
                done += 1;
            }
            Some(e) => {
                let mut j = i;
                while done < h && tags[j] == Some(e) {
                    j = (j + 1) % h;
                    done += 1;
                    if j == i {
                        break;
                    }
                }
                let arc = edges[e].as_arc().unwrap();
                out.push(Edge::Arc(Arc {
                    start,
                    end: hull[j].p,
                    full_turn: false,
                    ..*arc
                }));
                i = j;
            }
        }
    }
    Figure::with_tolerance(out, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 0.5),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(0.5, 0.0),
        ];
        let h = convex_hull_points(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(h[0], Point::new(0.0, 0.0));
    }

    #[test]
    fn calipers_match_brute_force() {
        let n = 37;
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                Point::new(2.0 * t.cos(), 0.7 * t.sin() + 0.1 * (3.0 * t).cos())
            })
            .collect();
        let brute = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| a.distance(*b)))
            .fold(0.0, f64::max);
        assert!((point_set_diameter(&pts) - brute).abs() < 1e-15);
    }
}
