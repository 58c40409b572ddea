//! Self-intersection test for closed polylines.
//!
//! Segments are bucketed into a uniform grid so that fine discretizations of
//! smooth boundaries are checked in roughly linear time.

use super::point::orient;
use super::Point;

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test (touching counts).
pub(crate) fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Returns the first pair of non-adjacent intersecting edges of the closed
/// polyline through `pts`, or a fold-back between adjacent edges.
pub(crate) fn find_self_intersection(pts: &[Point]) -> Option<(usize, usize)> {
    let n = pts.len();
    if n < 3 {
        return Some((0, 0));
    }
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);

    // adjacent edges may only share their common vertex
    for i in 0..n {
        let (a, b) = seg(i);
        let (_, c) = seg((i + 1) % n);
        let u = b - a;
        let v = c - b;
        if u.cross(v).abs() <= 1e-14 * u.norm() * v.norm() && u.dot(v) < 0.0 {
            return Some((i, (i + 1) % n));
        }
    }
    if n == 3 {
        return None;
    }

    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let g = ((n as f64).sqrt().ceil() as usize).clamp(1, 512);
    let w = ((hi.x - lo.x) / g as f64).max(f64::MIN_POSITIVE);
    let h = ((hi.y - lo.y) / g as f64).max(f64::MIN_POSITIVE);
    let cell = |x: f64, lo: f64, w: f64| (((x - lo) / w) as usize).min(g - 1);

    let mut grid: Vec<Vec<usize>> = vec![Vec::new(); g * g];
    for i in 0..n {
        let (a, b) = seg(i);
        let (cx0, cx1) = (cell(a.x.min(b.x), lo.x, w), cell(a.x.max(b.x), lo.x, w));
        let (cy0, cy1) = (cell(a.y.min(b.y), lo.y, h), cell(a.y.max(b.y), lo.y, h));
        for cy in cy0..=cy1 {
            for cx in cx0..=cx1 {
                grid[cy * g + cx].push(i);
            }
        }
    }

    let adjacent = |i: usize, j: usize| (i + 1) % n == j || (j + 1) % n == i;
    for bucket in &grid {
        for (k, &i) in bucket.iter().enumerate() {
            let (a, b) = seg(i);
            for &j in &bucket[k + 1..] {
                if adjacent(i, j) {
                    continue;
                }
                let (c, d) = seg(j);
                if segments_intersect(a, b, c, d) {
                    return Some((i.min(j), i.max(j)));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn square_is_simple() {
        let sq = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
        assert_eq!(find_self_intersection(&sq), None);
    }

    #[test]
    fn bowtie_is_not_simple() {
        let bow = [p(0.0, 0.0), p(1.0, 1.0), p(1.0, 0.0), p(0.0, 1.0)];
        assert!(find_self_intersection(&bow).is_some());
    }

    #[test]
    fn touching_vertex_is_not_simple() {
        // two triangles meeting at (1, 1)
        let pts = [p(0.0, 0.0), p(1.0, 1.0), p(2.0, 0.0), p(2.0, 2.0), p(1.0, 1.0), p(0.0, 2.0)];
        assert!(find_self_intersection(&pts).is_some());
    }

    #[test]
    fn spike_is_not_simple() {
        let pts = [p(0.0, 0.0), p(2.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)];
        assert!(find_self_intersection(&pts).is_some());
    }

    #[test]
    fn fine_circle_is_simple() {
        let n = 20_000;
        let pts: Vec<Point> = (0..n)
            .map(|k| Point::polar(std::f64::consts::TAU * k as f64 / n as f64))
            .collect();
        assert_eq!(find_self_intersection(&pts), None);
    }
}
