//! Simple polygons: validation, ear-clipping triangulation and convex clipping.

use super::predicates::{orient2d, P2};
use crate::error::{Error, Result};

pub(crate) fn signed_area(v: &[P2]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        let (p, q) = (v[i], v[(i + 1) % n]);
        s += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * s
}

fn on_segment(p: P2, q: P2, r: P2) -> bool {
    r[0] >= p[0].min(q[0]) && r[0] <= p[0].max(q[0]) && r[1] >= p[1].min(q[1]) && r[1] <= p[1].max(q[1])
}

/// Closed-segment intersection test with exact orientation signs.
pub(crate) fn segments_intersect(p1: P2, p2: P2, q1: P2, q2: P2) -> bool {
    let d1 = orient2d(q1, q2, p1);
    let d2 = orient2d(q1, q2, p2);
    let d3 = orient2d(p1, p2, q1);
    let d4 = orient2d(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

pub(crate) fn validate(v: &[P2]) -> Result<()> {
    let n = v.len();
    if n < 3 {
        return Err(Error::InvalidShape("polygon needs at least 3 vertices".into()));
    }
    if v.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(Error::InvalidShape("polygon vertex is not finite".into()));
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a1, a2) = (v[i], v[(i + 1) % n]);
            let (b1, b2) = (v[j], v[(j + 1) % n]);
            if adjacent {
                // adjacent edges may only share their common vertex
                let shared = if j == i + 1 { a2 } else { a1 };
                let (other_a, other_b) = if j == i + 1 { (a1, b2) } else { (a2, b1) };
                if orient2d(other_a, shared, other_b) == 0.0 {
                    let dot = (other_a[0] - shared[0]) * (other_b[0] - shared[0])
                        + (other_a[1] - shared[1]) * (other_b[1] - shared[1]);
                    if dot > 0.0 {
                        return Err(Error::InvalidShape("polygon folds back on itself".into()));
                    }
                }
            } else if segments_intersect(a1, a2, b1, b2) {
                return Err(Error::InvalidShape(format!("polygon edges {i} and {j} intersect")));
            }
        }
    }
    if signed_area(v) <= 0.0 {
        return Err(Error::InvalidShape("polygon must be counterclockwise with positive area".into()));
    }
    Ok(())
}

fn in_triangle(a: P2, b: P2, c: P2, p: P2) -> bool {
    orient2d(a, b, p) >= 0.0 && orient2d(b, c, p) >= 0.0 && orient2d(c, a, p) >= 0.0
}

/// Ear clipping for a counterclockwise simple polygon.
pub(crate) fn triangulate(v: &[P2]) -> Vec<[P2; 3]> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    let mut tris = Vec::with_capacity(v.len().saturating_sub(2));
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ip, ic, inx) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (v[ip], v[ic], v[inx]);
            if orient2d(a, b, c) <= 0.0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| j != ip && j != ic && j != inx && in_triangle(a, b, c, v[j]));
            if !blocked {
                tris.push([a, b, c]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            // only collinear vertices remain unclippable; dropping one loses no area
            let m = idx.len();
            let k = (0..m)
                .find(|&k| orient2d(v[idx[(k + m - 1) % m]], v[idx[k]], v[idx[(k + 1) % m]]) == 0.0)
                .unwrap_or(0);
            idx.remove(k);
        }
    }
    if idx.len() == 3 {
        let t = [v[idx[0]], v[idx[1]], v[idx[2]]];
        if orient2d(t[0], t[1], t[2]) > 0.0 {
            tris.push(t);
        }
    }
    tris
}

/// Area of the intersection of two counterclockwise triangles.
pub(crate) fn triangle_overlap(subject: &[P2; 3], clip: &[P2; 3]) -> f64 {
    let mut poly: Vec<P2> = subject.to_vec();
    for i in 0..3 {
        if poly.is_empty() {
            return 0.0;
        }
        let (e0, e1) = (clip[i], clip[(i + 1) % 3]);
        let input = std::mem::take(&mut poly);
        let n = input.len();
        for j in 0..n {
            let cur = input[j];
            let prev = input[(j + n - 1) % n];
            let sc = orient2d(e0, e1, cur);
            let sp = orient2d(e0, e1, prev);
            if sc >= 0.0 {
                if sp < 0.0 {
                    poly.push(crossing(prev, cur, sp, sc));
                }
                poly.push(cur);
            } else if sp >= 0.0 {
                poly.push(crossing(prev, cur, sp, sc));
            }
        }
    }
    if poly.len() < 3 {
        return 0.0;
    }
    signed_area(&poly).max(0.0)
}

fn crossing(p: P2, q: P2, sp: f64, sq: f64) -> P2 {
    let t = sp / (sp - sq);
    [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
}

/// Crossing-number point-in-polygon test.
pub(crate) fn contains(v: &[P2], p: P2) -> bool {
    let n = v.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (v[i], v[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if p[0] < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn point_segment_distance(p: P2, a: P2, b: P2) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
    ((p[0] - a[0] - t * dx).powi(2) + (p[1] - a[1] - t * dy).powi(2)).sqrt()
}

/// Distance between two polygons (0 when they touch or overlap).
pub(crate) fn distance(u: &[P2], v: &[P2]) -> f64 {
    if contains(u, v[0]) || contains(v, u[0]) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..u.len() {
        let (a1, a2) = (u[i], u[(i + 1) % u.len()]);
        for j in 0..v.len() {
            let (b1, b2) = (v[j], v[(j + 1) % v.len()]);
            if segments_intersect(a1, a2, b1, b2) {
                return 0.0;
            }
            best = best
                .min(point_segment_distance(a1, b1, b2))
                .min(point_segment_distance(a2, b1, b2))
                .min(point_segment_distance(b1, a1, a2))
                .min(point_segment_distance(b2, a1, a2));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_bowtie_and_clockwise() {
        assert!(validate(&[[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]).is_err());
        assert!(validate(&[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).is_err());
        assert!(validate(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).is_ok());
    }

    #[test]
    fn triangulation_preserves_area() {
        let l_shape = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]];
        let tris = triangulate(&l_shape);
        assert_eq!(tris.len(), 4);
        let total: f64 = tris.iter().map(|t| signed_area(t)).sum();
        assert_relative_eq!(total, 3.0, max_relative = 1e-15);
        // collinear midpoint on an edge
        let sq = [[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let total: f64 = triangulate(&sq).iter().map(|t| signed_area(t)).sum();
        assert_relative_eq!(total, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn clipping_identical_and_shared_edge() {
        let t = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        assert_relative_eq!(triangle_overlap(&t, &t), 0.5, max_relative = 1e-15);
        let s = [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!(triangle_overlap(&t, &s).abs() < 1e-15);
        let shifted = [[0.5, 0.0], [1.5, 0.0], [0.5, 1.0]];
        assert_relative_eq!(triangle_overlap(&t, &shifted), 0.125, max_relative = 1e-14);
    }
}
